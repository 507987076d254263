#include "mas/model.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <utility>

namespace mas {
namespace {

template <typename T>
std::vector<std::size_t> OrderById(const std::vector<T>& items) {
  std::vector<std::size_t> order(items.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return NaturalCompare(items[a].id.text, items[b].id.text) < 0;
  });
  return order;
}

std::string Quote(std::string_view s) {
  std::string out = "'";
  out.append(s);
  out += '\'';
  return out;
}

std::string Where(const Span& span) {
  return "line " + std::to_string(span.line);
}

}  // namespace

std::optional<std::uint32_t> MissionModel::find(Kind kind,
                                                 const Identifier& id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end() || it->second.kind != kind) return std::nullopt;
  return it->second.index;
}

std::optional<LossRef> MissionModel::find_loss(const Identifier& id) const {
  if (auto i = find(Kind::kLoss, id)) return LossRef{*i};
  return std::nullopt;
}
std::optional<HazardRef> MissionModel::find_hazard(const Identifier& id) const {
  if (auto i = find(Kind::kHazard, id)) return HazardRef{*i};
  return std::nullopt;
}
std::optional<LevelRef> MissionModel::find_level(const Identifier& id) const {
  if (auto i = find(Kind::kLevel, id)) return LevelRef{*i};
  return std::nullopt;
}
std::optional<ActionRef> MissionModel::find_action(const Identifier& id) const {
  if (auto i = find(Kind::kAction, id)) return ActionRef{*i};
  return std::nullopt;
}
std::optional<ConstraintRef> MissionModel::find_constraint(
    const Identifier& id) const {
  if (auto i = find(Kind::kConstraint, id)) return ConstraintRef{*i};
  return std::nullopt;
}
std::optional<ScenarioRef> MissionModel::find_scenario(
    const Identifier& id) const {
  if (auto i = find(Kind::kScenario, id)) return ScenarioRef{*i};
  return std::nullopt;
}

void MissionModel::BuildIndexes() {
  by_id_.clear();
  auto index = [this](const auto& items, Kind kind) {
    for (std::uint32_t i = 0; i < items.size(); ++i) {
      by_id_.emplace(items[i].id, IndexEntry{kind, i});
    }
  };
  index(losses_, Kind::kLoss);
  index(hazards_, Kind::kHazard);
  index(levels_, Kind::kLevel);
  index(actions_, Kind::kAction);
  index(constraints_, Kind::kConstraint);
  index(scenarios_, Kind::kScenario);

  environment_.reset();
  for (std::uint32_t i = 0; i < levels_.size(); ++i) {
    if (levels_[i].is_environment) environment_ = LevelRef{i};
  }

  hazards_by_loss_.assign(losses_.size(), {});
  for (std::uint32_t h = 0; h < hazards_.size(); ++h) {
    for (LossRef l : hazards_[h].leads_to) {
      hazards_by_loss_[l.index].push_back(HazardRef{h});
    }
  }

  ucas_by_hazard_.assign(hazards_.size(), {});
  ucas_by_action_.assign(actions_.size(), {});
  cells_.assign(actions_.size(), {});
  for (std::uint32_t u = 0; u < ucas_.size(); ++u) {
    const auto& uca = ucas_[u];
    ucas_by_action_[uca.action.index].push_back(UcaRef{u});
    cells_[uca.action.index][CategoryIndex(uca.category)] = UcaRef{u};
    for (HazardRef h : uca.hazards) {
      ucas_by_hazard_[h.index].push_back(UcaRef{u});
    }
  }

  constraints_by_action_.assign(actions_.size(), {});
  for (std::uint32_t c = 0; c < constraints_.size(); ++c) {
    constraints_by_action_[constraints_[c].action.index].push_back(
        ConstraintRef{c});
  }
}

Checked<MissionModel> Resolve(const RawModel& raw) {
  std::vector<Diagnostic> diags;
  auto error = [&](Code code, std::string message, const Span& span) {
    diags.push_back(Diagnostic{code, std::move(message), span});
  };

  // Global identifier table, first declaration (by position) wins.
  enum class Kind { kLoss, kHazard, kLevel, kAction, kConstraint, kScenario };
  struct Decl {
    const RawName* name;
    Kind kind;
    std::size_t index;
  };
  std::vector<Decl> decls;
  for (std::size_t i = 0; i < raw.losses.size(); ++i)
    decls.push_back({&raw.losses[i].id, Kind::kLoss, i});
  for (std::size_t i = 0; i < raw.hazards.size(); ++i)
    decls.push_back({&raw.hazards[i].id, Kind::kHazard, i});
  for (std::size_t i = 0; i < raw.levels.size(); ++i)
    decls.push_back({&raw.levels[i].id, Kind::kLevel, i});
  for (std::size_t i = 0; i < raw.actions.size(); ++i)
    decls.push_back({&raw.actions[i].id, Kind::kAction, i});
  for (std::size_t i = 0; i < raw.constraints.size(); ++i)
    decls.push_back({&raw.constraints[i].id, Kind::kConstraint, i});
  for (std::size_t i = 0; i < raw.scenarios.size(); ++i)
    decls.push_back({&raw.scenarios[i].id, Kind::kScenario, i});
  std::stable_sort(decls.begin(), decls.end(), [](const Decl& a, const Decl& b) {
    return a.name->span.begin < b.name->span.begin;
  });

  std::map<std::string, Decl> table;
  for (const auto& d : decls) {
    auto [it, inserted] = table.emplace(d.name->text, d);
    if (!inserted) {
      error(Code::kE102,
            "duplicate identifier " + Quote(d.name->text) +
                " (first declared at " + Where(it->second.name->span) + ")",
            d.name->span);
    }
  }
  auto declared = [&](const RawName& name, Kind kind) {
    auto it = table.find(name.text);
    return it != table.end() && it->second.kind == kind;
  };

  {
    std::map<std::int64_t, const RawLoss*> priorities;
    for (const auto& loss : raw.losses) {
      auto [it, inserted] = priorities.emplace(loss.priority, &loss);
      if (!inserted) {
        error(Code::kE102,
              "duplicate loss priority " + std::to_string(loss.priority) +
                  " (also used by " + Quote(it->second->id.text) + ")",
              loss.span);
      }
    }
  }

  for (const auto& hazard : raw.hazards) {
    for (const auto& ref : hazard.leads_to) {
      if (!declared(ref, Kind::kLoss)) {
        error(Code::kE101,
              "unknown loss " + Quote(ref.text) + " in leads_to of hazard " +
                  Quote(hazard.id.text),
              ref.span);
      }
    }
  }

  for (const auto& action : raw.actions) {
    for (const RawName* end : {&action.from, &action.to}) {
      if (!declared(*end, Kind::kLevel)) {
        error(Code::kE101,
              "unknown level " + Quote(end->text) + " in control action " +
                  Quote(action.id.text),
              end->span);
      }
    }
    std::array<const RawUca*, 4> seen{};
    for (const auto& uca : action.ucas) {
      auto& slot = seen[CategoryIndex(uca.category)];
      if (slot != nullptr) {
        error(Code::kE102,
              "duplicate UCA " + Quote(action.id.text + "/" +
                                       std::string(CategoryKeyword(uca.category))) +
                  " (first declared at " + Where(slot->span) + ")",
              uca.span);
      } else {
        slot = &uca;
      }
      for (const auto& ref : uca.hazards) {
        if (!declared(ref, Kind::kHazard)) {
          error(Code::kE101,
                "unknown hazard " + Quote(ref.text) + " in UCA " +
                    Quote(action.id.text + "/" +
                          std::string(CategoryKeyword(uca.category))),
                ref.span);
        }
      }
    }
  }

  for (const auto& constraint : raw.constraints) {
    if (!declared(constraint.action, Kind::kAction)) {
      error(Code::kE101,
            "unknown control action " + Quote(constraint.action.text) +
                " in constraint " + Quote(constraint.id.text),
            constraint.action.span);
    }
  }

  if (!diags.empty()) {
    SortDiagnostics(diags);
    return Checked<MissionModel>::Failure(std::move(diags));
  }

  MissionModel m;
  m.mission_name_ = raw.mission_name;
  m.mission_statement_ = raw.statement;
  m.system_description_ = raw.system;
  m.span_ = raw.span;

  std::map<std::string, std::uint32_t> loss_ix, hazard_ix, level_ix, action_ix;

  for (std::size_t i : OrderById(raw.losses)) {
    const auto& r = raw.losses[i];
    loss_ix[r.id.text] = static_cast<std::uint32_t>(m.losses_.size());
    m.losses_.push_back(Loss{Identifier(r.id.text),
                             static_cast<int>(r.priority), r.description,
                             r.span});
  }

  auto sorted_refs = [](const std::vector<RawName>& names,
                        const std::map<std::string, std::uint32_t>& ix,
                        auto tag) {
    using R = decltype(tag);
    std::vector<R> refs;
    for (const auto& n : names) refs.push_back(R{ix.at(n.text)});
    std::sort(refs.begin(), refs.end());
    refs.erase(std::unique(refs.begin(), refs.end()), refs.end());
    return refs;
  };

  for (std::size_t i : OrderById(raw.hazards)) {
    const auto& r = raw.hazards[i];
    hazard_ix[r.id.text] = static_cast<std::uint32_t>(m.hazards_.size());
    m.hazards_.push_back(Hazard{Identifier(r.id.text), r.name, r.worst_case,
                                sorted_refs(r.leads_to, loss_ix, LossRef{}),
                                r.span, r.loss_summary});
  }

  for (std::size_t i = 0; i < raw.levels.size(); ++i) {
    const auto& r = raw.levels[i];
    level_ix[r.id.text] = static_cast<std::uint32_t>(i);
    m.levels_.push_back(FunctionalLevel{Identifier(r.id.text), r.display_name,
                                        static_cast<int>(i), r.is_environment,
                                        r.span});
  }

  const auto action_order = OrderById(raw.actions);
  for (std::size_t i : action_order) {
    const auto& r = raw.actions[i];
    action_ix[r.id.text] = static_cast<std::uint32_t>(m.actions_.size());
    m.actions_.push_back(ControlAction{Identifier(r.id.text), r.title,
                                       LevelRef{level_ix.at(r.from.text)},
                                       LevelRef{level_ix.at(r.to.text)},
                                       r.span});
  }

  for (std::size_t i : action_order) {
    const auto& r = raw.actions[i];
    std::vector<const RawUca*> ucas;
    for (const auto& u : r.ucas) ucas.push_back(&u);
    std::stable_sort(ucas.begin(), ucas.end(),
                     [](const RawUca* a, const RawUca* b) {
                       return a->category < b->category;
                     });
    for (const RawUca* u : ucas) {
      m.ucas_.push_back(UnsafeControlAction{
          ActionRef{action_ix.at(r.id.text)}, u->category,
          sorted_refs(u->hazards, hazard_ix, HazardRef{}), u->context,
          u->justified_absent, u->span});
    }
  }

  for (std::size_t i : OrderById(raw.constraints)) {
    const auto& r = raw.constraints[i];
    m.constraints_.push_back(SafetyConstraint{
        Identifier(r.id.text), ActionRef{action_ix.at(r.action.text)}, r.text,
        r.span});
  }

  for (std::size_t i : OrderById(raw.scenarios)) {
    const auto& r = raw.scenarios[i];
    CausalScenario s{Identifier(r.id.text),
                     Identifier(r.action.text),
                     std::nullopt,
                     r.category,
                     r.element,
                     r.attack,
                     r.description,
                     r.span};
    if (auto it = action_ix.find(r.action.text); it != action_ix.end()) {
      s.action = ActionRef{it->second};
    }
    m.scenarios_.push_back(std::move(s));
  }

  m.BuildIndexes();
  return Checked<MissionModel>{std::move(m), {}};
}

RawModel ToRaw(const MissionModel& model) {
  RawModel raw;
  raw.mission_name = model.mission_name();
  raw.statement = model.mission_statement();
  raw.system = model.system_description();
  raw.span = model.span();

  auto name = [](const Identifier& id, const Span& span) {
    return RawName{id.str(), span};
  };

  for (const auto& l : model.losses()) {
    raw.losses.push_back(RawLoss{name(l.id, l.span), l.priority,
                                 l.description, l.span});
  }
  for (const auto& h : model.hazards()) {
    RawHazard r{name(h.id, h.span), h.name, h.worst_case_environment, {},
                h.span, h.loss_summary};
    for (LossRef l : h.leads_to) {
      r.leads_to.push_back(name(model.get(l).id, h.span));
    }
    raw.hazards.push_back(std::move(r));
  }
  for (const auto& lv : model.levels()) {
    raw.levels.push_back(RawLevel{name(lv.id, lv.span), lv.display_name,
                                  lv.is_environment, lv.span});
  }
  for (std::uint32_t a = 0; a < model.actions().size(); ++a) {
    const auto& act = model.actions()[a];
    RawAction r{name(act.id, act.span),
                act.title,
                name(model.get(act.source).id, act.span),
                name(model.get(act.target).id, act.span),
                {},
                act.span};
    for (UcaRef u : model.ucas_of(ActionRef{a})) {
      const auto& uca = model.get(u);
      RawUca ru{uca.category, uca.justified_absent, {}, uca.context, uca.span};
      for (HazardRef h : uca.hazards) {
        ru.hazards.push_back(name(model.get(h).id, uca.span));
      }
      r.ucas.push_back(std::move(ru));
    }
    raw.actions.push_back(std::move(r));
  }
  for (const auto& c : model.constraints()) {
    raw.constraints.push_back(RawConstraint{
        name(c.id, c.span), name(model.get(c.action).id, c.span), c.text,
        c.span});
  }
  for (const auto& s : model.scenarios()) {
    raw.scenarios.push_back(RawScenario{name(s.id, s.span),
                                        name(s.action_id, s.span), s.category,
                                        s.element, s.attack_class,
                                        s.description, s.span});
  }
  return raw;
}

std::optional<ElementRef> Lookup(const MissionModel& model,
                                 const Identifier& id) {
  auto it = model.by_id_.find(id);
  if (it == model.by_id_.end()) return std::nullopt;
  const auto i = it->second.index;
  switch (it->second.kind) {
    case MissionModel::Kind::kLoss:
      return ElementRef{&model.losses_[i]};
    case MissionModel::Kind::kHazard:
      return ElementRef{&model.hazards_[i]};
    case MissionModel::Kind::kLevel:
      return ElementRef{&model.levels_[i]};
    case MissionModel::Kind::kAction:
      return ElementRef{&model.actions_[i]};
    case MissionModel::Kind::kConstraint:
      return ElementRef{&model.constraints_[i]};
    case MissionModel::Kind::kScenario:
      return ElementRef{&model.scenarios_[i]};
  }
  return std::nullopt;
}

int LossWeight(const MissionModel& model, LossRef loss) {
  // Rank of the priority among all priorities, so non-contiguous priorities
  // still give weights n..1.  For priorities 1..n this is n - priority + 1.
  const int priority = model.get(loss).priority;
  int more_severe = 0;
  for (const auto& l : model.losses()) {
    if (l.priority < priority) ++more_severe;
  }
  return static_cast<int>(model.losses().size()) - more_severe;
}

bool StructurallyEqual(const MissionModel& a, const MissionModel& b) {
  if (a.mission_name() != b.mission_name() ||
      a.mission_statement() != b.mission_statement() ||
      a.system_description() != b.system_description()) {
    return false;
  }
  auto same = [](auto xs, auto ys, auto eq) {
    return std::equal(xs.begin(), xs.end(), ys.begin(), ys.end(), eq);
  };
  return same(a.losses(), b.losses(),
              [](const Loss& x, const Loss& y) {
                return x.id == y.id && x.priority == y.priority &&
                       x.description == y.description;
              }) &&
         same(a.hazards(), b.hazards(),
              [](const Hazard& x, const Hazard& y) {
                return x.id == y.id && x.name == y.name &&
                       x.worst_case_environment == y.worst_case_environment &&
                       x.leads_to == y.leads_to &&
                       x.loss_summary == y.loss_summary;
              }) &&
         same(a.levels(), b.levels(),
              [](const FunctionalLevel& x, const FunctionalLevel& y) {
                return x.id == y.id && x.display_name == y.display_name &&
                       x.rank == y.rank && x.is_environment == y.is_environment;
              }) &&
         same(a.actions(), b.actions(),
              [](const ControlAction& x, const ControlAction& y) {
                return x.id == y.id && x.title == y.title &&
                       x.source == y.source && x.target == y.target;
              }) &&
         same(a.ucas(), b.ucas(),
              [](const UnsafeControlAction& x, const UnsafeControlAction& y) {
                return x.action == y.action && x.category == y.category &&
                       x.hazards == y.hazards && x.context == y.context &&
                       x.justified_absent == y.justified_absent;
              }) &&
         same(a.constraints(), b.constraints(),
              [](const SafetyConstraint& x, const SafetyConstraint& y) {
                return x.id == y.id && x.action == y.action && x.text == y.text;
              }) &&
         same(a.scenarios(), b.scenarios(),
              [](const CausalScenario& x, const CausalScenario& y) {
                return x.id == y.id && x.action_id == y.action_id &&
                       x.action == y.action && x.category == y.category &&
                       x.element == y.element &&
                       x.attack_class == y.attack_class &&
                       x.description == y.description;
              });
}

std::string UcaName(const MissionModel& model, const UnsafeControlAction& uca) {
  std::string name = model.get(uca.action).id.str();
  name += '/';
  name.append(CategoryKeyword(uca.category));
  return name;
}

}  // namespace mas
