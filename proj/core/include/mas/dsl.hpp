#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mas/diagnostic.hpp"
#include "mas/model.hpp"
#include "mas/raw_model.hpp"

namespace mas {

enum class TokenKind {
  kKeyword,
  kIdentifier,
  kString,
  kInteger,
  kPunctuation,
  kEndOfFile,
};

std::string_view TokenKindName(TokenKind kind);

// `text` is the exact source slice, so a string token keeps its quotes and
// escape sequences.  Integers may carry a dotted suffix ("1.1") so that a
// split identifier such as "CA 1.1" can be rejoined by the parser.
struct Token {
  TokenKind kind;
  std::string_view text;
  Span span;
};

// Reserved words of the .mas format.
bool IsKeyword(std::string_view word);

// Splits `source` into tokens, skipping whitespace and `#` comments.  The
// returned tokens view into `source`.  Fails with P001/P002.
Checked<std::vector<Token>> Tokenize(std::string_view source);

// Decodes a string token's text (quotes and escapes removed).
std::string DecodeString(std::string_view token_text);
// Quotes and escapes `text` for a .mas source.
std::string EncodeString(std::string_view text);

// Parses a whole .mas source.  Errors carry P0xx codes; the parser resumes
// at the next top-level declaration so one run can report several.
Checked<RawModel> Parse(std::string_view source);

// Parse followed by Resolve.
Checked<MissionModel> Load(std::string_view source);

// Canonical text of a model.  serialize(parse(serialize(m))) == serialize(m).
std::string Serialize(const MissionModel& model);

}  // namespace mas
