#include "mas/identifier.hpp"

#include <algorithm>

namespace mas {
namespace {

bool IsDigit(char c) { return c >= '0' && c <= '9'; }
bool IsAlpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

std::string_view TrimZeros(std::string_view digits) {
  while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
  return digits;
}

}  // namespace

std::strong_ordering NaturalCompare(std::string_view a, std::string_view b) {
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (IsDigit(a[i]) && IsDigit(b[j])) {
      std::size_t ei = i;
      while (ei < a.size() && IsDigit(a[ei])) ++ei;
      std::size_t ej = j;
      while (ej < b.size() && IsDigit(b[ej])) ++ej;
      auto na = TrimZeros(a.substr(i, ei - i));
      auto nb = TrimZeros(b.substr(j, ej - j));
      if (na.size() != nb.size()) return na.size() <=> nb.size();
      if (auto c = na.compare(nb); c != 0) {
        return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
      }
      i = ei;
      j = ej;
      continue;
    }
    auto ca = static_cast<unsigned char>(a[i]);
    auto cb = static_cast<unsigned char>(b[j]);
    if (ca != cb) return ca <=> cb;
    ++i;
    ++j;
  }
  if (auto c = (a.size() - i) <=> (b.size() - j); c != 0) return c;
  // Numerically equal ("CA01" vs "CA1"); fall back to bytes for a total order.
  int c = a.compare(b);
  if (c == 0) return std::strong_ordering::equal;
  return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

std::strong_ordering operator<=>(const Identifier& a, const Identifier& b) {
  return NaturalCompare(a.text_, b.text_);
}

bool Identifier::IsElementId(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && IsAlpha(text[i])) ++i;
  if (i == 0) return false;
  std::size_t digits = i;
  while (i < text.size() && IsDigit(text[i])) ++i;
  if (i == digits) return false;
  while (i < text.size()) {
    if (text[i] != '.') return false;
    ++i;
    std::size_t start = i;
    while (i < text.size() && IsDigit(text[i])) ++i;
    if (i == start) return false;
  }
  return true;
}

bool Identifier::IsWord(std::string_view text) {
  if (text.empty() || !(IsAlpha(text[0]) || text[0] == '_')) return false;
  return std::all_of(text.begin(), text.end(), [](char c) {
    return IsAlpha(c) || IsDigit(c) || c == '_';
  });
}

std::optional<Identifier> Identifier::Parse(std::string_view text) {
  std::string compact;
  compact.reserve(text.size());
  for (char c : text) {
    if (c != ' ' && c != '\t') compact.push_back(c);
  }
  if (!IsElementId(compact)) return std::nullopt;
  return Identifier(std::move(compact));
}

}  // namespace mas
