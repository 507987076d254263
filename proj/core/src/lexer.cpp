#include <algorithm>
#include <array>

#include "mas/dsl.hpp"

namespace mas {
namespace {

constexpr std::array<std::string_view, 24> kKeywords = {
    "mission", "statement", "system",      "loss",      "priority",
    "hazard",  "worst_case", "leads_to",   "level",     "environment",
    "action",  "from",       "to",         "uca",       "hazards",
    "context", "none",       "constraint", "for",       "scenario",
    "element", "attack",     "description", "loss_summary",
};

bool IsDigit(unsigned char c) { return c >= '0' && c <= '9'; }
bool IsWordStart(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool IsWordChar(unsigned char c) { return IsWordStart(c) || IsDigit(c); }
bool IsContinuation(unsigned char c) { return (c & 0xC0) == 0x80; }

class Lexer {
 public:
  explicit Lexer(std::string_view source) : src_(source) {}

  Checked<std::vector<Token>> Run() {
    if (src_.substr(0, 3) == "\xEF\xBB\xBF") {
      Span s = Here();
      for (int i = 0; i < 3; ++i) Advance();
      s.end = pos_;
      Error(Code::kP002, "byte-order mark is not allowed", s);
    }
    while (!AtEnd()) {
      const auto c = Peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        Advance();
      } else if (c == '#') {
        while (!AtEnd() && Peek() != '\n') Advance();
      } else if (c == '"') {
        LexString();
      } else if (IsWordStart(c)) {
        LexWord();
      } else if (IsDigit(c)) {
        LexNumber();
      } else if (c == '{' || c == '}' || c == '[' || c == ']' || c == ',' ||
                 c == ':' || c == '/') {
        Span s = Here();
        Advance();
        Emit(TokenKind::kPunctuation, s);
      } else {
        Span s = Here();
        Advance();
        while (!AtEnd() && IsContinuation(Peek())) Advance();
        s.end = pos_;
        Error(Code::kP002,
              "illegal character '" + std::string(src_.substr(s.begin, s.end - s.begin)) +
                  "'",
              s);
      }
    }
    Span eof = Here();
    tokens_.push_back(Token{TokenKind::kEndOfFile, src_.substr(pos_, 0), eof});
    if (!diags_.empty()) {
      return Checked<std::vector<Token>>::Failure(std::move(diags_));
    }
    return Checked<std::vector<Token>>{std::move(tokens_), {}};
  }

 private:
  bool AtEnd() const { return pos_ >= src_.size(); }
  unsigned char Peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size()
               ? static_cast<unsigned char>(src_[pos_ + ahead])
               : 0;
  }
  Span Here() const { return Span{pos_, pos_, line_, column_}; }

  void Advance() {
    const auto c = static_cast<unsigned char>(src_[pos_++]);
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else if (!IsContinuation(c)) {
      ++column_;
    }
  }

  void Emit(TokenKind kind, Span span) {
    span.end = pos_;
    tokens_.push_back(
        Token{kind, src_.substr(span.begin, span.end - span.begin), span});
  }

  void Error(Code code, std::string message, Span span) {
    diags_.push_back(Diagnostic{code, std::move(message), span});
  }

  void LexString() {
    Span s = Here();
    Advance();  // opening quote
    while (true) {
      if (AtEnd() || Peek() == '\n') {
        s.end = pos_;
        Error(Code::kP001, "unterminated string literal", s);
        return;
      }
      const auto c = Peek();
      if (c == '"') {
        Advance();
        Emit(TokenKind::kString, s);
        return;
      }
      if (c == '\\') {
        Span esc = Here();
        Advance();
        const auto e = Peek();
        if (e == '"' || e == '\\' || e == 'n' || e == 't' || e == 'r') {
          Advance();
        } else if (!AtEnd() && e != '\n') {
          Advance();
          esc.end = pos_;
          Error(Code::kP002, "invalid escape sequence in string literal", esc);
        }
        continue;
      }
      Advance();
    }
  }

  void LexWord() {
    Span s = Here();
    while (!AtEnd() && IsWordChar(Peek())) Advance();
    const bool dotted = ConsumeDottedSuffix();
    auto text = src_.substr(s.begin, pos_ - s.begin);
    Emit(!dotted && IsKeyword(text) ? TokenKind::kKeyword : TokenKind::kIdentifier,
         s);
  }

  void LexNumber() {
    Span s = Here();
    while (!AtEnd() && IsDigit(Peek())) Advance();
    ConsumeDottedSuffix();
    Emit(TokenKind::kInteger, s);
  }

  // (\.[0-9]+)*
  bool ConsumeDottedSuffix() {
    bool any = false;
    while (Peek() == '.' && IsDigit(Peek(1))) {
      Advance();
      while (!AtEnd() && IsDigit(Peek())) Advance();
      any = true;
    }
    return any;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
  std::vector<Token> tokens_;
  std::vector<Diagnostic> diags_;
};

}  // namespace

std::string_view TokenKindName(TokenKind kind) {
  switch (kind) {
    case TokenKind::kKeyword:
      return "keyword";
    case TokenKind::kIdentifier:
      return "identifier";
    case TokenKind::kString:
      return "string";
    case TokenKind::kInteger:
      return "integer";
    case TokenKind::kPunctuation:
      return "punctuation";
    case TokenKind::kEndOfFile:
      return "end of file";
  }
  return "token";
}

bool IsKeyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

Checked<std::vector<Token>> Tokenize(std::string_view source) {
  return Lexer(source).Run();
}

std::string DecodeString(std::string_view text) {
  if (text.size() >= 2 && text.front() == '"' && text.back() == '"') {
    text = text.substr(1, text.size() - 2);
  }
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\\' && i + 1 < text.size()) {
      switch (text[++i]) {
        case 'n':
          out += '\n';
          break;
        case 't':
          out += '\t';
          break;
        case 'r':
          out += '\r';
          break;
        default:
          out += text[i];
      }
    } else {
      out += text[i];
    }
  }
  return out;
}

std::string EncodeString(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      case '\r':
        out += "\\r";
        break;
      default:
        out += c;
    }
  }
  out += '"';
  return out;
}

}  // namespace mas
