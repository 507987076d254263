#include <climits>
#include <initializer_list>

#include "mas/dsl.hpp"

namespace mas {
namespace {

// Thrown after a diagnostic has been recorded; caught at the enclosing
// top-level declaration, which then resynchronizes.
struct SyntaxError {};

bool IsTopLevelKeyword(std::string_view w) {
  return w == "statement" || w == "system" || w == "loss" || w == "hazard" ||
         w == "level" || w == "action" || w == "constraint" || w == "scenario";
}

std::string Describe(const Token& t) {
  switch (t.kind) {
    case TokenKind::kEndOfFile:
      return "end of file";
    case TokenKind::kString:
      return "string literal";
    case TokenKind::kKeyword:
      return "keyword '" + std::string(t.text) + "'";
    case TokenKind::kIdentifier:
      return "identifier '" + std::string(t.text) + "'";
    case TokenKind::kInteger:
      return "integer '" + std::string(t.text) + "'";
    case TokenKind::kPunctuation:
      return "'" + std::string(t.text) + "'";
  }
  return "token";
}

std::string CategoryList() {
  std::string out;
  for (auto c : kAllCategories) {
    if (!out.empty()) out += ", ";
    out.append(CategoryKeyword(c));
  }
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Checked<RawModel> Run() {
    RawModel model;
    ParseFile(model);
    if (!diags_.empty()) return Checked<RawModel>::Failure(std::move(diags_));
    return Checked<RawModel>{std::move(model), {}};
  }

 private:
  const Token& Peek(std::size_t ahead = 0) const {
    const auto i = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }
  const Token& Next() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  bool AtEof() const { return Peek().kind == TokenKind::kEndOfFile; }
  std::size_t LastEnd() const {
    return pos_ == 0 ? 0 : tokens_[pos_ - 1].span.end;
  }

  bool IsPunct(const Token& t, std::string_view p) const {
    return t.kind == TokenKind::kPunctuation && t.text == p;
  }
  bool IsKeyword(const Token& t, std::string_view k) const {
    return t.kind == TokenKind::kKeyword && t.text == k;
  }

  [[noreturn]] void Fail(Code code, std::string message, const Span& span) {
    diags_.push_back(Diagnostic{code, std::move(message), span});
    throw SyntaxError{};
  }

  [[noreturn]] void Unexpected(std::initializer_list<std::string_view> expected) {
    std::string list;
    for (auto e : expected) {
      if (!list.empty()) list += ", ";
      list.append(e);
    }
    Fail(Code::kP003,
         "unexpected " + Describe(Peek()) + "; expected " +
             (expected.size() > 1 ? "one of " : "") + list,
         Peek().span);
  }

  const Token& ExpectPunct(std::string_view p) {
    if (!IsPunct(Peek(), p)) {
      std::string quoted = "'" + std::string(p) + "'";
      Unexpected({quoted});
    }
    return Next();
  }

  const Token& ExpectKeyword(std::string_view k) {
    if (!IsKeyword(Peek(), k)) {
      std::string quoted = "'" + std::string(k) + "'";
      Unexpected({quoted});
    }
    return Next();
  }

  void Open() {
    ExpectPunct("{");
    ++nesting_;
  }
  void Close() {
    ExpectPunct("}");
    --nesting_;
  }

  std::string ExpectString() {
    if (Peek().kind != TokenKind::kString) Unexpected({"string literal"});
    return DecodeString(Next().text);
  }

  // Element id, rejoining a split form such as `CA 1.1`.
  RawName ExpectElementId() {
    const Token& first = Peek();
    if (first.kind != TokenKind::kIdentifier) {
      Unexpected({"identifier (e.g. L1, H2, CA1.3)"});
    }
    Next();
    std::string text(first.text);
    Span span = first.span;
    const Token& more = Peek();
    if (more.kind == TokenKind::kInteger && more.span.line == first.span.line &&
        text.find_first_of("0123456789") == std::string::npos) {
      Next();
      text.append(more.text);
      span.end = more.span.end;
    }
    if (!Identifier::IsElementId(text)) {
      Fail(Code::kP003,
           "malformed identifier '" + text +
               "'; expected letters followed by digits (e.g. L1, CA1.3)",
           span);
    }
    return RawName{std::move(text), span};
  }

  RawName ExpectWord() {
    const Token& t = Peek();
    if (t.kind != TokenKind::kIdentifier || !Identifier::IsWord(t.text)) {
      Unexpected({"level name"});
    }
    Next();
    return RawName{std::string(t.text), t.span};
  }

  std::vector<RawName> ExpectIdList(bool allow_empty) {
    ExpectPunct("[");
    std::vector<RawName> ids;
    if (IsPunct(Peek(), "]")) {
      if (!allow_empty) Unexpected({"identifier"});
      Next();
      return ids;
    }
    ids.push_back(ExpectElementId());
    while (IsPunct(Peek(), ",")) {
      Next();
      ids.push_back(ExpectElementId());
    }
    ExpectPunct("]");
    return ids;
  }

  UcaCategory ExpectCategory() {
    const Token& t = Peek();
    if (t.kind != TokenKind::kIdentifier) {
      Unexpected({"UCA category"});
    }
    auto category = CategoryFromKeyword(t.text);
    if (!category) {
      Fail(Code::kP004,
           "unknown UCA category '" + std::string(t.text) +
               "'; expected one of " + CategoryList(),
           t.span);
    }
    Next();
    return *category;
  }

  // `name:` at the start of a block field; duplicates are rejected.
  void FieldColon(bool& seen, const Token& name) {
    if (seen) {
      Fail(Code::kP003, "duplicate field '" + std::string(name.text) + "'",
           name.span);
    }
    seen = true;
    ExpectPunct(":");
  }

  void MissingField(std::string_view block, std::string_view field,
                    const Span& at) {
    Fail(Code::kP005,
         std::string(block) + " is missing required field '" +
             std::string(field) + "'",
         at);
  }

  Span Finish(Span start) const {
    start.end = LastEnd();
    return start;
  }

  void ParseFile(RawModel& model) {
    if (AtEof()) {
      diags_.push_back(Diagnostic{Code::kP005, "missing 'mission' block",
                                  Peek().span});
      return;
    }
    try {
      model.span = ExpectKeyword("mission").span;
      model.mission_name = ExpectString();
      ExpectPunct("{");
    } catch (const SyntaxError&) {
      return;
    }

    bool have_statement = false;
    bool have_system = false;
    while (!IsPunct(Peek(), "}") && !AtEof()) {
      nesting_ = 0;
      try {
        const Token& t = Peek();
        if (IsKeyword(t, "statement")) {
          Next();
          FieldColon(have_statement, t);
          model.statement = ExpectString();
        } else if (IsKeyword(t, "system")) {
          Next();
          FieldColon(have_system, t);
          model.system = ExpectString();
        } else if (IsKeyword(t, "loss")) {
          model.losses.push_back(ParseLoss());
        } else if (IsKeyword(t, "hazard")) {
          model.hazards.push_back(ParseHazard());
        } else if (IsKeyword(t, "level")) {
          model.levels.push_back(ParseLevel());
        } else if (IsKeyword(t, "action")) {
          model.actions.push_back(ParseAction());
        } else if (IsKeyword(t, "constraint")) {
          model.constraints.push_back(ParseConstraint());
        } else if (IsKeyword(t, "scenario")) {
          model.scenarios.push_back(ParseScenario());
        } else {
          Unexpected({"'statement'", "'system'", "'loss'", "'hazard'",
                      "'level'", "'action'", "'constraint'", "'scenario'",
                      "'}'"});
        }
      } catch (const SyntaxError&) {
        Recover();
      }
    }

    if (AtEof()) {
      diags_.push_back(Diagnostic{
          Code::kP003, "unexpected end of file; expected '}' to close 'mission'",
          Peek().span});
      return;
    }
    const Token& close = Next();
    if (!have_statement) {
      diags_.push_back(Diagnostic{
          Code::kP005, "mission is missing required field 'statement'",
          close.span});
    }
    if (!have_system) {
      diags_.push_back(Diagnostic{
          Code::kP005, "mission is missing required field 'system'",
          close.span});
    }
    if (!AtEof()) {
      diags_.push_back(Diagnostic{
          Code::kP003,
          "unexpected " + Describe(Peek()) + " after the mission block",
          Peek().span});
    }
  }

  // Skips to the next top-level declaration or to the brace closing the
  // mission block.
  void Recover() {
    int depth = nesting_;
    while (!AtEof()) {
      const Token& t = Peek();
      if (t.kind == TokenKind::kKeyword && IsTopLevelKeyword(t.text)) break;
      if (IsPunct(t, "{")) {
        ++depth;
      } else if (IsPunct(t, "}")) {
        if (depth == 0) break;
        --depth;
      }
      Next();
    }
    nesting_ = 0;
  }

  RawLoss ParseLoss() {
    RawLoss loss;
    Span start = Next().span;
    loss.id = ExpectElementId();
    ExpectKeyword("priority");
    const Token& p = Peek();
    if (p.kind != TokenKind::kInteger ||
        p.text.find('.') != std::string_view::npos || p.text.size() > 9 ||
        std::stoll(std::string(p.text)) < 1) {
      Unexpected({"positive integer priority"});
    }
    loss.priority = std::stoll(std::string(Next().text));
    loss.description = ExpectString();
    loss.span = Finish(start);
    return loss;
  }

  RawHazard ParseHazard() {
    RawHazard hazard;
    Span start = Next().span;
    hazard.id = ExpectElementId();
    hazard.name = ExpectString();
    Open();
    bool have_worst = false;
    bool have_leads = false;
    bool have_summary = false;
    while (!IsPunct(Peek(), "}")) {
      const Token& t = Peek();
      if (IsKeyword(t, "loss_summary")) {
        Next();
        FieldColon(have_summary, t);
        hazard.loss_summary = ExpectString();
      } else if (IsKeyword(t, "worst_case")) {
        Next();
        FieldColon(have_worst, t);
        hazard.worst_case = ExpectString();
      } else if (IsKeyword(t, "leads_to")) {
        Next();
        FieldColon(have_leads, t);
        hazard.leads_to = ExpectIdList(/*allow_empty=*/true);
      } else {
        Unexpected({"'worst_case'", "'leads_to'", "'loss_summary'", "'}'"});
      }
    }
    if (!have_worst) MissingField("hazard", "worst_case", Peek().span);
    if (!have_leads) MissingField("hazard", "leads_to", Peek().span);
    Close();
    hazard.span = Finish(start);
    return hazard;
  }

  RawLevel ParseLevel() {
    RawLevel level;
    Span start = Next().span;
    level.id = ExpectWord();
    level.display_name = ExpectString();
    if (IsKeyword(Peek(), "environment")) {
      Next();
      level.is_environment = true;
    }
    level.span = Finish(start);
    return level;
  }

  RawAction ParseAction() {
    RawAction action;
    Span start = Next().span;
    action.id = ExpectElementId();
    action.title = ExpectString();
    ExpectKeyword("from");
    action.from = ExpectWord();
    ExpectKeyword("to");
    action.to = ExpectWord();
    Open();
    while (!IsPunct(Peek(), "}")) {
      if (!IsKeyword(Peek(), "uca")) Unexpected({"'uca'", "'}'"});
      action.ucas.push_back(ParseUca());
    }
    Close();
    action.span = Finish(start);
    return action;
  }

  RawUca ParseUca() {
    RawUca uca;
    Span start = Next().span;
    uca.category = ExpectCategory();
    if (IsKeyword(Peek(), "none")) {
      Next();
      uca.justified_absent = true;
      uca.context = ExpectString();
      uca.span = Finish(start);
      return uca;
    }
    if (!IsPunct(Peek(), "{")) Unexpected({"'none'", "'{'"});
    Open();
    bool have_hazards = false;
    bool have_context = false;
    while (!IsPunct(Peek(), "}")) {
      const Token& t = Peek();
      if (IsKeyword(t, "hazards")) {
        Next();
        FieldColon(have_hazards, t);
        uca.hazards = ExpectIdList(/*allow_empty=*/false);
      } else if (IsKeyword(t, "context")) {
        Next();
        FieldColon(have_context, t);
        uca.context = ExpectString();
      } else {
        Unexpected({"'hazards'", "'context'", "'}'"});
      }
    }
    if (!have_hazards) MissingField("uca", "hazards", Peek().span);
    if (!have_context) MissingField("uca", "context", Peek().span);
    Close();
    uca.span = Finish(start);
    return uca;
  }

  RawConstraint ParseConstraint() {
    RawConstraint constraint;
    Span start = Next().span;
    constraint.id = ExpectElementId();
    ExpectKeyword("for");
    constraint.action = ExpectElementId();
    constraint.text = ExpectString();
    constraint.span = Finish(start);
    return constraint;
  }

  RawScenario ParseScenario() {
    RawScenario scenario;
    Span start = Next().span;
    scenario.id = ExpectElementId();
    Open();
    bool have_uca = false;
    bool have_element = false;
    bool have_attack = false;
    bool have_description = false;
    while (!IsPunct(Peek(), "}")) {
      const Token& t = Peek();
      if (IsKeyword(t, "uca")) {
        Next();
        FieldColon(have_uca, t);
        scenario.action = ExpectElementId();
        ExpectPunct("/");
        scenario.category = ExpectCategory();
      } else if (IsKeyword(t, "element")) {
        Next();
        FieldColon(have_element, t);
        const Token& e = Peek();
        auto element = e.kind == TokenKind::kIdentifier
                           ? ElementFromKeyword(e.text)
                           : std::nullopt;
        if (!element) {
          std::string list;
          for (auto el : AllLoopElements()) {
            if (!list.empty()) list += ", ";
            list.append(ElementKeyword(el));
          }
          Fail(Code::kP003,
               "unexpected " + Describe(e) + "; expected a control-loop element (" +
                   list + ")",
               e.span);
        }
        Next();
        scenario.element = *element;
      } else if (IsKeyword(t, "attack")) {
        Next();
        FieldColon(have_attack, t);
        scenario.attack = ExpectString();
      } else if (IsKeyword(t, "description")) {
        Next();
        FieldColon(have_description, t);
        scenario.description = ExpectString();
      } else {
        Unexpected({"'uca'", "'element'", "'attack'", "'description'", "'}'"});
      }
    }
    if (!have_uca) MissingField("scenario", "uca", Peek().span);
    if (!have_element) MissingField("scenario", "element", Peek().span);
    if (!have_attack) MissingField("scenario", "attack", Peek().span);
    if (!have_description) MissingField("scenario", "description", Peek().span);
    Close();
    scenario.span = Finish(start);
    return scenario;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int nesting_ = 0;
  std::vector<Diagnostic> diags_;
};

}  // namespace

Checked<RawModel> Parse(std::string_view source) {
  auto tokens = Tokenize(source);
  if (!tokens) return Checked<RawModel>::Failure(std::move(tokens.diagnostics));
  return Parser(std::move(*tokens)).Run();
}

Checked<MissionModel> Load(std::string_view source) {
  auto raw = Parse(source);
  if (!raw) return Checked<MissionModel>::Failure(std::move(raw.diagnostics));
  return Resolve(*raw);
}

}  // namespace mas
