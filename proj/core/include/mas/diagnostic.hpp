#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mas {

// Location of a construct in a .mas source.  Offsets are bytes; line and
// column are 1-based, column counted in code points.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t line = 1;
  std::size_t column = 1;

  friend bool operator==(const Span&, const Span&) = default;
};

enum class Severity { kError, kWarning };

// Diagnostic catalog.  P0xx come from the lexer and parser, E1xx are
// semantic errors and W2xx are warnings.
enum class Code {
  kP001,  // unterminated string literal
  kP002,  // illegal character
  kP003,  // unexpected token
  kP004,  // unknown UCA category keyword
  kP005,  // missing required field or block
  kE101,  // unknown reference
  kE102,  // duplicate identifier
  kE103,  // hazard leads to no loss
  kE104,  // control action between non-adjacent levels
  kE105,  // control action touching the environment level
  kE106,  // scenario without a live UCA
  kE107,  // unusable level structure
  kW201,  // UCA category not covered
  kW202,  // loss referenced by no hazard
  kW203,  // control action without a safety constraint
  kW204,  // hazard referenced by no UCA
};

std::string_view CodeName(Code code);
std::optional<Code> CodeFromName(std::string_view name);
Severity SeverityOf(Code code);
std::string_view SeverityName(Severity severity);

struct Diagnostic {
  Code code;
  std::string message;
  Span span;

  Severity severity() const { return SeverityOf(code); }
  bool is_error() const { return severity() == Severity::kError; }

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

// `file:line:col: severity[CODE]: message`
std::string FormatDiagnostic(std::string_view file, const Diagnostic& d);

bool HasErrors(const std::vector<Diagnostic>& diagnostics);

// Orders by source position, then by code.  Stable for equal keys.
void SortDiagnostics(std::vector<Diagnostic>& diagnostics);

// A value or the diagnostics explaining why there is none.  When the value is
// present the diagnostics hold only warnings (or nothing).
template <typename T>
struct Checked {
  std::optional<T> value;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return value.has_value(); }
  explicit operator bool() const { return ok(); }
  const T& operator*() const& { return *value; }
  T& operator*() & { return *value; }
  T&& operator*() && { return std::move(*value); }
  const T* operator->() const { return &*value; }

  static Checked Failure(std::vector<Diagnostic> diagnostics) {
    return Checked{std::nullopt, std::move(diagnostics)};
  }
  static Checked Failure(Diagnostic diagnostic) {
    std::vector<Diagnostic> d;
    d.push_back(std::move(diagnostic));
    return Failure(std::move(d));
  }
};

}  // namespace mas
