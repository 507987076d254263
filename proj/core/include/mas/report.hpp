#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "mas/analysis.hpp"
#include "mas/model.hpp"

namespace mas {

enum class Format { kMarkdown, kCsv, kDot };

std::string_view FormatName(Format format);
std::optional<Format> FormatFromName(std::string_view name);
// "md", "csv", "dot"
std::string_view FileExtension(Format format);

// Emitted text.  The body uses LF line endings and ends with exactly one
// newline.
struct Document {
  std::string name;  // file stem, e.g. "hazards"
  Format format = Format::kMarkdown;
  std::string body;
};

// Losses, hazards, UCA matrix and safety constraints, in that order.
// `format` must be markdown or csv.
std::array<Document, 4> EmitTables(const MissionModel& model, Format format);

// One node per level, control/feedback edges between adjacent
// non-environment levels and a disturbance edge out of the environment.
Document EmitHierarchyDot(const MissionModel& model);

// The generic control loop with its fifteen numbered entities.
Document EmitLoopDot();

Document EmitTraceReport(const MissionModel& model, const TraceChain& chain,
                         Format format);

// Stand-alone UCA matrix table (the third document of EmitTables).
Document EmitMatrix(const MissionModel& model, Format format);

// Text of a UCA cell as it appears in the tables: "H1, H2: context",
// "none: justification", or empty for a gap.
std::string UcaCellText(const MissionModel& model,
                        const std::optional<UcaRef>& uca);

}  // namespace mas
