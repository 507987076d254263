#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace mas {

// The four circumstances under which a control action becomes unsafe.  The
// declaration order is the fixed column order of every UCA matrix.
enum class UcaCategory {
  kNotProvided,
  kProvided,
  kWrongTimingOrOrder,
  kWrongDuration,
};

inline constexpr std::array<UcaCategory, 4> kAllCategories = {
    UcaCategory::kNotProvided,
    UcaCategory::kProvided,
    UcaCategory::kWrongTimingOrOrder,
    UcaCategory::kWrongDuration,
};

constexpr std::size_t CategoryIndex(UcaCategory c) {
  return static_cast<std::size_t>(c);
}

// DSL keyword: not_provided, provided, wrong_timing, wrong_duration.
std::string_view CategoryKeyword(UcaCategory c);
std::optional<UcaCategory> CategoryFromKeyword(std::string_view keyword);
// Column heading used in the hazard-action table.
std::string_view CategoryHeading(UcaCategory c);

// Entities of the generic control loop, numbered 1-15.
enum class LoopElement {
  kController = 1,
  kActuator,
  kControlledProcess,
  kSensor,
  kProcessModel,
  kControlAlgorithm,
  kControlActionLink,
  kFeedbackToHigher,
  kControlInput,
  kControllerOutput,
  kExternalInput,
  kAlternateControlActions,
  kExternalProcessInput,
  kProcessDisturbance,
  kProcessOutput,
};

inline constexpr std::size_t kLoopElementCount = 15;

constexpr int Ordinal(LoopElement e) { return static_cast<int>(e); }

// All elements in ordinal order.
const std::array<LoopElement, kLoopElementCount>& AllLoopElements();

// snake_case DSL spelling, e.g. "controlled_process".
std::string_view ElementKeyword(LoopElement e);
std::optional<LoopElement> ElementFromKeyword(std::string_view keyword);
// Human label, e.g. "Feedback to higher level controller".
std::string_view ElementLabel(LoopElement e);

}  // namespace mas
