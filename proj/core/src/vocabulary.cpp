#include "mas/vocabulary.hpp"

namespace mas {
namespace {

struct CategoryInfo {
  std::string_view keyword;
  std::string_view heading;
};

constexpr std::array<CategoryInfo, 4> kCategories = {{
    {"not_provided", "Not Providing Causes Hazard"},
    {"provided", "Providing Causes Hazard"},
    {"wrong_timing", "Incorrect Timing or Order"},
    {"wrong_duration", "Stopped Too Early or Applied Too Long"},
}};

struct ElementInfo {
  std::string_view keyword;
  std::string_view label;
};

constexpr std::array<ElementInfo, kLoopElementCount> kElements = {{
    {"controller", "Controller"},
    {"actuator", "Actuator"},
    {"controlled_process", "Controlled Process"},
    {"sensor", "Sensor"},
    {"process_model", "Process Model"},
    {"control_algorithm", "Control Algorithm"},
    {"control_action_link", "Control Action"},
    {"feedback_to_higher", "Feedback to higher level controller"},
    {"control_input", "Control input (setpoint) or other commands"},
    {"controller_output", "Controller output"},
    {"external_input", "External input"},
    {"alternate_control_actions", "Alternate control actions"},
    {"external_process_input", "External process input"},
    {"process_disturbance", "Process disturbance"},
    {"process_output", "Process output"},
}};

constexpr std::array<LoopElement, kLoopElementCount> MakeAllElements() {
  std::array<LoopElement, kLoopElementCount> all{};
  for (std::size_t i = 0; i < kLoopElementCount; ++i) {
    all[i] = static_cast<LoopElement>(i + 1);
  }
  return all;
}

constexpr auto kAllElements = MakeAllElements();

}  // namespace

std::string_view CategoryKeyword(UcaCategory c) {
  return kCategories[CategoryIndex(c)].keyword;
}

std::string_view CategoryHeading(UcaCategory c) {
  return kCategories[CategoryIndex(c)].heading;
}

std::optional<UcaCategory> CategoryFromKeyword(std::string_view keyword) {
  for (auto c : kAllCategories) {
    if (CategoryKeyword(c) == keyword) return c;
  }
  return std::nullopt;
}

const std::array<LoopElement, kLoopElementCount>& AllLoopElements() {
  return kAllElements;
}

std::string_view ElementKeyword(LoopElement e) {
  return kElements[Ordinal(e) - 1].keyword;
}

std::string_view ElementLabel(LoopElement e) {
  return kElements[Ordinal(e) - 1].label;
}

std::optional<LoopElement> ElementFromKeyword(std::string_view keyword) {
  for (auto e : kAllElements) {
    if (ElementKeyword(e) == keyword) return e;
  }
  return std::nullopt;
}

}  // namespace mas
