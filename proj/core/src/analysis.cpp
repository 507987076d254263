#include "mas/analysis.hpp"

#include <algorithm>

namespace mas {
namespace {

std::string Quote(std::string_view s) {
  return "'" + std::string(s) + "'";
}

template <typename R>
void SortUnique(std::vector<R>& refs) {
  std::sort(refs.begin(), refs.end());
  refs.erase(std::unique(refs.begin(), refs.end()), refs.end());
}

void CheckLevels(const MissionModel& m, std::vector<Diagnostic>& out) {
  const auto levels = m.levels();
  if (levels.empty()) {
    out.push_back({Code::kE107, "model declares no functional levels", m.span()});
    return;
  }
  const FunctionalLevel* first_env = nullptr;
  for (const auto& lv : levels) {
    if (!lv.is_environment) continue;
    if (first_env != nullptr) {
      out.push_back({Code::kE107,
                     "second environment level " + Quote(lv.id.str()) +
                         "; at most one level may be the environment",
                     lv.span});
      continue;
    }
    first_env = &lv;
    if (lv.rank + 1 != static_cast<int>(levels.size())) {
      out.push_back({Code::kE107,
                     "environment level " + Quote(lv.id.str()) +
                         " must be the lowest level",
                     lv.span});
    }
  }
  const bool all_environment =
      std::all_of(levels.begin(), levels.end(),
                  [](const FunctionalLevel& lv) { return lv.is_environment; });
  if (all_environment) {
    out.push_back({Code::kE107, "model declares no non-environment level",
                   m.span()});
  }
}

}  // namespace

std::vector<Diagnostic> ScenarioCheck(const MissionModel& m) {
  std::vector<Diagnostic> out;
  for (const auto& s : m.scenarios()) {
    const std::string uca_name =
        s.action_id.str() + "/" + std::string(CategoryKeyword(s.category));
    if (!s.action) {
      out.push_back({Code::kE106,
                     "scenario " + Quote(s.id.str()) +
                         " references unknown control action " +
                         Quote(s.action_id.str()),
                     s.span});
      continue;
    }
    auto cell = m.cell(*s.action, s.category);
    if (!cell) {
      out.push_back({Code::kE106,
                     "scenario " + Quote(s.id.str()) + " references UCA " +
                         Quote(uca_name) + " which is not declared",
                     s.span});
    } else if (m.get(*cell).justified_absent) {
      out.push_back({Code::kE106,
                     "scenario " + Quote(s.id.str()) + " references UCA " +
                         Quote(uca_name) + " which is marked as ruled out",
                     s.span});
    }
  }
  return out;
}

std::vector<Diagnostic> Validate(const MissionModel& m) {
  std::vector<Diagnostic> out;
  CheckLevels(m, out);

  for (const auto& h : m.hazards()) {
    if (h.leads_to.empty()) {
      out.push_back({Code::kE103,
                     "hazard " + Quote(h.id.str()) + " leads to no loss",
                     h.span});
    }
  }

  for (const auto& a : m.actions()) {
    const auto& src = m.get(a.source);
    const auto& dst = m.get(a.target);
    if (src.is_environment || dst.is_environment) {
      out.push_back({Code::kE105,
                     "control action " + Quote(a.id.str()) +
                         " involves the environment level " +
                         Quote(src.is_environment ? src.id.str() : dst.id.str()),
                     a.span});
    } else if (dst.rank != src.rank + 1) {
      out.push_back({Code::kE104,
                     "control action " + Quote(a.id.str()) + " goes from " +
                         Quote(src.id.str()) + " to " + Quote(dst.id.str()) +
                         "; the target must be the level directly below",
                     a.span});
    }
  }

  auto scenario = ScenarioCheck(m);
  out.insert(out.end(), scenario.begin(), scenario.end());

  for (const auto& gap : CategoryCoverage(m)) {
    const auto& a = m.get(gap.action);
    out.push_back({Code::kW201,
                   "control action " + Quote(a.id.str()) +
                       " has no UCA for category " +
                       Quote(CategoryKeyword(gap.category)),
                   a.span});
  }

  for (std::uint32_t l = 0; l < m.losses().size(); ++l) {
    if (m.hazards_leading_to(LossRef{l}).empty()) {
      const auto& loss = m.losses()[l];
      out.push_back({Code::kW202,
                     "loss " + Quote(loss.id.str()) + " is not linked by any hazard",
                     loss.span});
    }
  }

  for (std::uint32_t a = 0; a < m.actions().size(); ++a) {
    if (m.constraints_of(ActionRef{a}).empty()) {
      const auto& act = m.actions()[a];
      out.push_back({Code::kW203,
                     "control action " + Quote(act.id.str()) +
                         " has no safety constraint",
                     act.span});
    }
  }

  for (std::uint32_t h = 0; h < m.hazards().size(); ++h) {
    if (m.ucas_citing(HazardRef{h}).empty()) {
      const auto& hz = m.hazards()[h];
      out.push_back({Code::kW204,
                     "hazard " + Quote(hz.id.str()) + " is not cited by any UCA",
                     hz.span});
    }
  }

  SortDiagnostics(out);
  return out;
}

TraceChain TraceDown(const MissionModel& m, LossRef loss) {
  TraceChain chain;
  chain.direction = TraceChain::Direction::kDown;
  chain.root = loss;
  chain.losses = {loss};
  const auto hazards = m.hazards_leading_to(loss);
  chain.hazards.assign(hazards.begin(), hazards.end());
  for (HazardRef h : chain.hazards) {
    for (UcaRef u : m.ucas_citing(h)) {
      if (m.get(u).live()) chain.ucas.push_back(u);
    }
  }
  SortUnique(chain.ucas);
  for (UcaRef u : chain.ucas) chain.control_actions.push_back(m.get(u).action);
  SortUnique(chain.control_actions);
  for (ActionRef a : chain.control_actions) {
    const auto cs = m.constraints_of(a);
    chain.constraints.insert(chain.constraints.end(), cs.begin(), cs.end());
  }
  SortUnique(chain.constraints);
  SortUnique(chain.hazards);
  return chain;
}

TraceChain TraceUp(const MissionModel& m, ActionRef action) {
  TraceChain chain;
  chain.direction = TraceChain::Direction::kUp;
  chain.root = action;
  chain.control_actions = {action};
  for (UcaRef u : m.ucas_of(action)) {
    const auto& uca = m.get(u);
    if (!uca.live()) continue;
    chain.ucas.push_back(u);
    chain.hazards.insert(chain.hazards.end(), uca.hazards.begin(),
                         uca.hazards.end());
  }
  SortUnique(chain.ucas);
  SortUnique(chain.hazards);
  for (HazardRef h : chain.hazards) {
    const auto& leads = m.get(h).leads_to;
    chain.losses.insert(chain.losses.end(), leads.begin(), leads.end());
  }
  SortUnique(chain.losses);
  const auto cs = m.constraints_of(action);
  chain.constraints.assign(cs.begin(), cs.end());
  SortUnique(chain.constraints);
  return chain;
}

Checked<TraceChain> TraceDown(const MissionModel& m, const Identifier& loss_id) {
  auto loss = m.find_loss(loss_id);
  if (!loss) {
    return Checked<TraceChain>::Failure(
        Diagnostic{Code::kE101, "unknown loss " + Quote(loss_id.str()), {}});
  }
  return Checked<TraceChain>{TraceDown(m, *loss), {}};
}

Checked<TraceChain> TraceUp(const MissionModel& m, const Identifier& action_id) {
  auto action = m.find_action(action_id);
  if (!action) {
    return Checked<TraceChain>::Failure(Diagnostic{
        Code::kE101, "unknown control action " + Quote(action_id.str()), {}});
  }
  return Checked<TraceChain>{TraceUp(m, *action), {}};
}

UcaMatrix BuildUcaMatrix(const MissionModel& m) {
  UcaMatrix matrix;
  matrix.rows.reserve(m.actions().size());
  for (std::uint32_t a = 0; a < m.actions().size(); ++a) {
    UcaMatrix::Row row;
    row.action = ActionRef{a};
    for (auto c : kAllCategories) {
      auto& cell = row.cells[CategoryIndex(c)];
      cell.uca = m.cell(row.action, c);
      if (cell.uca) {
        cell.state = m.get(*cell.uca).justified_absent
                         ? UcaMatrix::CellState::kJustifiedAbsent
                         : UcaMatrix::CellState::kUca;
      }
    }
    matrix.rows.push_back(row);
  }
  return matrix;
}

std::vector<CoverageGap> CategoryCoverage(const MissionModel& m) {
  std::vector<CoverageGap> gaps;
  for (std::uint32_t a = 0; a < m.actions().size(); ++a) {
    for (auto c : kAllCategories) {
      if (!m.cell(ActionRef{a}, c)) gaps.push_back({ActionRef{a}, c});
    }
  }
  return gaps;
}

std::vector<CriticalityScore> CriticalityRank(const MissionModel& m) {
  std::vector<CriticalityScore> scores;
  for (std::uint32_t a = 0; a < m.actions().size(); ++a) {
    CriticalityScore s;
    s.action = ActionRef{a};
    s.reachable_losses = TraceUp(m, s.action).losses;
    for (LossRef l : s.reachable_losses) s.score += LossWeight(m, l);
    scores.push_back(std::move(s));
  }
  // Actions are stored ascending by id, so a stable sort on score alone
  // leaves ties in identifier order.
  std::stable_sort(scores.begin(), scores.end(),
                   [](const CriticalityScore& x, const CriticalityScore& y) {
                     return x.score > y.score;
                   });
  return scores;
}

Checked<std::vector<ScenarioSkeleton>> ScenarioSkeletons(
    const MissionModel& m, const Identifier& action_id) {
  auto action = m.find_action(action_id);
  if (!action) {
    return Checked<std::vector<ScenarioSkeleton>>::Failure(Diagnostic{
        Code::kE101, "unknown control action " + Quote(action_id.str()), {}});
  }
  std::vector<ScenarioSkeleton> out;
  for (UcaRef u : m.ucas_of(*action)) {
    if (!m.get(u).live()) continue;
    for (auto e : AllLoopElements()) out.push_back({u, e});
  }
  return Checked<std::vector<ScenarioSkeleton>>{std::move(out), {}};
}

}  // namespace mas
