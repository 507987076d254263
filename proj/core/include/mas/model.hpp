#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "mas/diagnostic.hpp"
#include "mas/identifier.hpp"
#include "mas/raw_model.hpp"
#include "mas/vocabulary.hpp"

namespace mas {

// Checked link to an element of a MissionModel.  The index is only
// meaningful for the model that produced it.
template <typename Tag>
struct Ref {
  std::uint32_t index = 0;

  friend auto operator<=>(const Ref&, const Ref&) = default;
};

using LossRef = Ref<struct LossTag>;
using HazardRef = Ref<struct HazardTag>;
using LevelRef = Ref<struct LevelTag>;
using ActionRef = Ref<struct ActionTag>;
using UcaRef = Ref<struct UcaTag>;
using ConstraintRef = Ref<struct ConstraintTag>;
using ScenarioRef = Ref<struct ScenarioTag>;

struct Loss {
  Identifier id;
  int priority = 1;  // 1 is the most severe
  std::string description;
  Span span;
};

struct Hazard {
  Identifier id;
  std::string name;
  std::string worst_case_environment;
  std::vector<LossRef> leads_to;  // ascending by loss id
  Span span;
  // Optional wording for the "Associated Losses" column; when empty the
  // column quotes the loss descriptions.
  std::string loss_summary;
};

struct FunctionalLevel {
  Identifier id;
  std::string display_name;
  int rank = 0;  // 0 is the top of the hierarchy
  bool is_environment = false;
  Span span;
};

struct ControlAction {
  Identifier id;
  std::string title;
  LevelRef source;
  LevelRef target;
  Span span;
};

struct UnsafeControlAction {
  ActionRef action;
  UcaCategory category = UcaCategory::kNotProvided;
  std::vector<HazardRef> hazards;  // ascending by hazard id
  // The hazardous context, or the justification when justified_absent.
  std::string context;
  bool justified_absent = false;
  Span span;

  bool live() const { return !justified_absent; }
};

struct SafetyConstraint {
  Identifier id;
  ActionRef action;
  std::string text;
  Span span;
};

// A causal scenario keeps the name of its UCA's action even when no such
// action exists; whether it points at a live UCA is a validation question.
struct CausalScenario {
  Identifier id;
  Identifier action_id;
  std::optional<ActionRef> action;
  UcaCategory category = UcaCategory::kNotProvided;
  LoopElement element = LoopElement::kController;
  std::string attack_class;
  std::string description;
  Span span;
};

using ElementRef =
    std::variant<const Loss*, const Hazard*, const FunctionalLevel*,
                 const ControlAction*, const SafetyConstraint*,
                 const CausalScenario*>;

// Resolved, immutable mission model.
//
// Collections are stored in canonical order: losses, hazards, actions,
// constraints and scenarios ascending by id; levels by rank; UCAs by
// (action id, category).  Consequently ref order equals id order.
class MissionModel {
 public:
  const std::string& mission_name() const { return mission_name_; }
  const std::string& mission_statement() const { return mission_statement_; }
  const std::string& system_description() const { return system_description_; }
  const Span& span() const { return span_; }

  std::span<const Loss> losses() const { return losses_; }
  std::span<const Hazard> hazards() const { return hazards_; }
  std::span<const FunctionalLevel> levels() const { return levels_; }
  std::span<const ControlAction> actions() const { return actions_; }
  std::span<const UnsafeControlAction> ucas() const { return ucas_; }
  std::span<const SafetyConstraint> constraints() const { return constraints_; }
  std::span<const CausalScenario> scenarios() const { return scenarios_; }

  const Loss& get(LossRef r) const { return losses_.at(r.index); }
  const Hazard& get(HazardRef r) const { return hazards_.at(r.index); }
  const FunctionalLevel& get(LevelRef r) const { return levels_.at(r.index); }
  const ControlAction& get(ActionRef r) const { return actions_.at(r.index); }
  const UnsafeControlAction& get(UcaRef r) const { return ucas_.at(r.index); }
  const SafetyConstraint& get(ConstraintRef r) const {
    return constraints_.at(r.index);
  }
  const CausalScenario& get(ScenarioRef r) const {
    return scenarios_.at(r.index);
  }

  std::optional<LossRef> find_loss(const Identifier& id) const;
  std::optional<HazardRef> find_hazard(const Identifier& id) const;
  std::optional<LevelRef> find_level(const Identifier& id) const;
  std::optional<ActionRef> find_action(const Identifier& id) const;
  std::optional<ConstraintRef> find_constraint(const Identifier& id) const;
  std::optional<ScenarioRef> find_scenario(const Identifier& id) const;

  std::optional<LevelRef> environment_level() const { return environment_; }

  // Reverse indexes.
  std::span<const HazardRef> hazards_leading_to(LossRef loss) const {
    return hazards_by_loss_.at(loss.index);
  }
  std::span<const UcaRef> ucas_citing(HazardRef hazard) const {
    return ucas_by_hazard_.at(hazard.index);
  }
  std::span<const UcaRef> ucas_of(ActionRef action) const {
    return ucas_by_action_.at(action.index);
  }
  std::span<const ConstraintRef> constraints_of(ActionRef action) const {
    return constraints_by_action_.at(action.index);
  }
  std::optional<UcaRef> cell(ActionRef action, UcaCategory category) const {
    return cells_.at(action.index)[CategoryIndex(category)];
  }

 private:
  friend Checked<MissionModel> Resolve(const RawModel& raw);

  enum class Kind { kLoss, kHazard, kLevel, kAction, kConstraint, kScenario };
  struct IndexEntry {
    Kind kind;
    std::uint32_t index;
  };
  friend std::optional<ElementRef> Lookup(const MissionModel&,
                                          const Identifier&);

  std::optional<std::uint32_t> find(Kind kind, const Identifier& id) const;
  void BuildIndexes();

  std::string mission_name_;
  std::string mission_statement_;
  std::string system_description_;
  Span span_;

  std::vector<Loss> losses_;
  std::vector<Hazard> hazards_;
  std::vector<FunctionalLevel> levels_;
  std::vector<ControlAction> actions_;
  std::vector<UnsafeControlAction> ucas_;
  std::vector<SafetyConstraint> constraints_;
  std::vector<CausalScenario> scenarios_;

  std::unordered_map<Identifier, IndexEntry> by_id_;
  std::optional<LevelRef> environment_;
  std::vector<std::vector<HazardRef>> hazards_by_loss_;
  std::vector<std::vector<UcaRef>> ucas_by_hazard_;
  std::vector<std::vector<UcaRef>> ucas_by_action_;
  std::vector<std::vector<ConstraintRef>> constraints_by_action_;
  std::vector<std::array<std::optional<UcaRef>, 4>> cells_;
};

// Turns a parsed model into a MissionModel.  Fails with E101 for every
// unknown reference and E102 for every duplicate identifier (including a
// repeated loss priority or a second UCA for the same action and category).
Checked<MissionModel> Resolve(const RawModel& raw);

// Inverse of Resolve, up to declaration order and spans.
RawModel ToRaw(const MissionModel& model);

// The unique element with exactly this id, if any.  UCAs have no id of their
// own and are not reachable through lookup.
std::optional<ElementRef> Lookup(const MissionModel& model,
                                 const Identifier& id);

// (number of losses) - priority + 1; the priority-1 loss weighs most.
int LossWeight(const MissionModel& model, LossRef loss);

// Equality of content, ignoring source spans.
bool StructurallyEqual(const MissionModel& a, const MissionModel& b);

// "CA1.2/provided"
std::string UcaName(const MissionModel& model, const UnsafeControlAction& uca);

}  // namespace mas
