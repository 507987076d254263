#pragma once

#include <compare>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace mas {

// Name of a model element.  Element ids follow the letters-then-digits
// scheme with an optional dotted suffix (L1, H3, CA1.4, SC1.2).  Functional
// levels use the looser word form (mission_req, autopilot).
//
// Equality is exact and case-sensitive.  Ordering is "natural": digit runs
// compare numerically so CA1.2 sorts before CA1.10.
class Identifier {
 public:
  Identifier() = default;
  explicit Identifier(std::string text) : text_(std::move(text)) {}

  // Strips interior whitespace ("CA 1.1" -> "CA1.1") and checks the element
  // id pattern.
  static std::optional<Identifier> Parse(std::string_view text);

  static bool IsElementId(std::string_view text);
  static bool IsWord(std::string_view text);

  const std::string& str() const { return text_; }
  bool empty() const { return text_.empty(); }

  friend bool operator==(const Identifier& a, const Identifier& b) {
    return a.text_ == b.text_;
  }
  friend std::strong_ordering operator<=>(const Identifier& a,
                                          const Identifier& b);

 private:
  std::string text_;
};

// Natural ordering on raw strings; the same order Identifier uses.
std::strong_ordering NaturalCompare(std::string_view a, std::string_view b);

}  // namespace mas

template <>
struct std::hash<mas::Identifier> {
  std::size_t operator()(const mas::Identifier& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};
