#pragma once

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "mas/diagnostic.hpp"
#include "mas/model.hpp"

namespace mas {

// Every finding of the model, sorted by declaration position then code.
// Errors are E103-E107; warnings W201-W204.
std::vector<Diagnostic> Validate(const MissionModel& model);

// E106 for each scenario whose (action, category) has no live UCA.
std::vector<Diagnostic> ScenarioCheck(const MissionModel& model);

// Linkage from a loss down to constraints, or from a control action up to
// losses.  Every set is ascending by identifier (UCAs by action id, then
// category order).
struct TraceChain {
  enum class Direction { kDown, kUp };

  Direction direction = Direction::kDown;
  std::variant<LossRef, ActionRef> root;
  std::vector<LossRef> losses;
  std::vector<HazardRef> hazards;
  std::vector<UcaRef> ucas;
  std::vector<ActionRef> control_actions;
  std::vector<ConstraintRef> constraints;

  friend bool operator==(const TraceChain&, const TraceChain&) = default;
};

// Hazards leading to the loss, live UCAs citing them, their actions and those
// actions' constraints.  Fails with E101 when `loss_id` is not a loss.
Checked<TraceChain> TraceDown(const MissionModel& model,
                              const Identifier& loss_id);

// The action's live UCAs, their hazards, those hazards' losses and the
// action's constraints.  Fails with E101 when `action_id` is not an action.
Checked<TraceChain> TraceUp(const MissionModel& model,
                            const Identifier& action_id);

TraceChain TraceDown(const MissionModel& model, LossRef loss);
TraceChain TraceUp(const MissionModel& model, ActionRef action);

struct UcaMatrix {
  enum class CellState { kGap, kJustifiedAbsent, kUca };
  struct Cell {
    CellState state = CellState::kGap;
    std::optional<UcaRef> uca;
  };
  struct Row {
    ActionRef action;
    std::array<Cell, 4> cells;  // indexed by CategoryIndex
  };

  std::vector<Row> rows;  // ascending by action id

  std::size_t cell_count() const { return rows.size() * 4; }
};

UcaMatrix BuildUcaMatrix(const MissionModel& model);

struct CoverageGap {
  ActionRef action;
  UcaCategory category;

  friend bool operator==(const CoverageGap&, const CoverageGap&) = default;
};

// (action, category) pairs with neither a UCA nor a justified-absent marker,
// ascending by (action id, category order).
std::vector<CoverageGap> CategoryCoverage(const MissionModel& model);

struct CriticalityScore {
  ActionRef action;
  std::vector<LossRef> reachable_losses;
  int score = 0;  // sum of LossWeight over reachable_losses

  friend bool operator==(const CriticalityScore&,
                         const CriticalityScore&) = default;
};

// One score per control action, descending by score, ties by ascending id.
std::vector<CriticalityScore> CriticalityRank(const MissionModel& model);

struct ScenarioSkeleton {
  UcaRef uca;
  LoopElement element;

  friend bool operator==(const ScenarioSkeleton&,
                         const ScenarioSkeleton&) = default;
};

// Live UCAs of the action crossed with all 15 loop elements, ordered by
// (category, element ordinal).  Fails with E101 for an unknown action.
Checked<std::vector<ScenarioSkeleton>> ScenarioSkeletons(
    const MissionModel& model, const Identifier& action_id);

}  // namespace mas
