#include "mas/diagnostic.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace mas {
namespace {

constexpr std::array<std::pair<Code, std::string_view>, 16> kNames = {{
    {Code::kP001, "P001"}, {Code::kP002, "P002"}, {Code::kP003, "P003"},
    {Code::kP004, "P004"}, {Code::kP005, "P005"}, {Code::kE101, "E101"},
    {Code::kE102, "E102"}, {Code::kE103, "E103"}, {Code::kE104, "E104"},
    {Code::kE105, "E105"}, {Code::kE106, "E106"}, {Code::kE107, "E107"},
    {Code::kW201, "W201"}, {Code::kW202, "W202"}, {Code::kW203, "W203"},
    {Code::kW204, "W204"},
}};

}  // namespace

std::string_view CodeName(Code code) {
  return kNames[static_cast<std::size_t>(code)].second;
}

std::optional<Code> CodeFromName(std::string_view name) {
  for (const auto& [code, text] : kNames) {
    if (text == name) return code;
  }
  return std::nullopt;
}

Severity SeverityOf(Code code) {
  return CodeName(code).front() == 'W' ? Severity::kWarning : Severity::kError;
}

std::string_view SeverityName(Severity severity) {
  return severity == Severity::kError ? "error" : "warning";
}

std::string FormatDiagnostic(std::string_view file, const Diagnostic& d) {
  std::string out;
  out.append(file);
  out += ':';
  out += std::to_string(d.span.line);
  out += ':';
  out += std::to_string(d.span.column);
  out += ": ";
  out.append(SeverityName(d.severity()));
  out += '[';
  out.append(CodeName(d.code));
  out += "]: ";
  out += d.message;
  return out;
}

bool HasErrors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.is_error(); });
}

void SortDiagnostics(std::vector<Diagnostic>& diagnostics) {
  std::stable_sort(diagnostics.begin(), diagnostics.end(),
                   [](const Diagnostic& a, const Diagnostic& b) {
                     if (a.span.begin != b.span.begin) {
                       return a.span.begin < b.span.begin;
                     }
                     return a.code < b.code;
                   });
}

}  // namespace mas
