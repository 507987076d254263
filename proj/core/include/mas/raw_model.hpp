#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mas/diagnostic.hpp"
#include "mas/vocabulary.hpp"

namespace mas {

// Unresolved model as written in a source file: every cross reference is
// still a name, and every name keeps the span where it was written.

struct RawName {
  std::string text;
  Span span;
};

struct RawLoss {
  RawName id;
  std::int64_t priority = 0;
  std::string description;
  Span span;
};

struct RawHazard {
  RawName id;
  std::string name;
  std::string worst_case;
  std::vector<RawName> leads_to;
  Span span;
  std::string loss_summary;
};

struct RawLevel {
  RawName id;
  std::string display_name;
  bool is_environment = false;
  Span span;
};

struct RawUca {
  UcaCategory category = UcaCategory::kNotProvided;
  bool justified_absent = false;
  std::vector<RawName> hazards;
  std::string context;
  Span span;
};

struct RawAction {
  RawName id;
  std::string title;
  RawName from;
  RawName to;
  std::vector<RawUca> ucas;
  Span span;
};

struct RawConstraint {
  RawName id;
  RawName action;
  std::string text;
  Span span;
};

struct RawScenario {
  RawName id;
  RawName action;
  UcaCategory category = UcaCategory::kNotProvided;
  LoopElement element = LoopElement::kController;
  std::string attack;
  std::string description;
  Span span;
};

struct RawModel {
  std::string mission_name;
  std::string statement;
  std::string system;
  Span span;

  std::vector<RawLoss> losses;
  std::vector<RawHazard> hazards;
  std::vector<RawLevel> levels;  // declaration order is rank order
  std::vector<RawAction> actions;
  std::vector<RawConstraint> constraints;
  std::vector<RawScenario> scenarios;
};

}  // namespace mas
