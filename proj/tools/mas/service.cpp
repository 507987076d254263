#include "service.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <system_error>

#include "json.hpp"
#include "mas/analysis.hpp"
#include "mas/dsl.hpp"
#include "mas/report.hpp"

namespace mas::cli {
namespace {

using nlohmann::json;

struct HttpError {
  int status;
  std::string message;
  std::vector<Diagnostic> diagnostics;
};

json DiagnosticsJson(const std::vector<Diagnostic>& diags) {
  json out = json::array();
  for (const auto& d : diags) {
    out.push_back({{"code", CodeName(d.code)},
                   {"severity", SeverityName(d.severity())},
                   {"message", d.message},
                   {"line", d.span.line},
                   {"column", d.span.column}});
  }
  return out;
}

HttpResponse JsonResponse(int status, const json& body) {
  return HttpResponse{status, body.dump(2) + "\n", "application/json"};
}

HttpResponse ErrorResponse(const HttpError& e) {
  json body = {{"error", e.message}};
  if (!e.diagnostics.empty()) body["diagnostics"] = DiagnosticsJson(e.diagnostics);
  return JsonResponse(e.status, body);
}

template <typename Refs>
json IdList(const MissionModel& m, const Refs& refs) {
  json out = json::array();
  for (auto r : refs) out.push_back(m.get(r).id.str());
  return out;
}

json UcaJson(const MissionModel& m, const UnsafeControlAction& u) {
  return {{"id", UcaName(m, u)},
          {"action", m.get(u.action).id.str()},
          {"category", CategoryKeyword(u.category)},
          {"hazards", IdList(m, u.hazards)},
          {"context", u.context},
          {"justified_absent", u.justified_absent}};
}

json ModelJson(const MissionModel& m) {
  json j;
  j["mission_name"] = m.mission_name();
  j["mission_statement"] = m.mission_statement();
  j["system_description"] = m.system_description();
  j["losses"] = json::array();
  for (const auto& l : m.losses()) {
    j["losses"].push_back({{"id", l.id.str()},
                           {"priority", l.priority},
                           {"description", l.description}});
  }
  j["hazards"] = json::array();
  for (const auto& h : m.hazards()) {
    j["hazards"].push_back({{"id", h.id.str()},
                            {"name", h.name},
                            {"worst_case_environment", h.worst_case_environment},
                            {"leads_to", IdList(m, h.leads_to)},
                            {"loss_summary", h.loss_summary}});
  }
  j["levels"] = json::array();
  for (const auto& lv : m.levels()) {
    j["levels"].push_back({{"id", lv.id.str()},
                           {"display_name", lv.display_name},
                           {"rank", lv.rank},
                           {"is_environment", lv.is_environment}});
  }
  j["control_actions"] = json::array();
  for (const auto& a : m.actions()) {
    j["control_actions"].push_back({{"id", a.id.str()},
                                    {"title", a.title},
                                    {"source_level", m.get(a.source).id.str()},
                                    {"target_level", m.get(a.target).id.str()}});
  }
  j["ucas"] = json::array();
  for (const auto& u : m.ucas()) j["ucas"].push_back(UcaJson(m, u));
  j["constraints"] = json::array();
  for (const auto& c : m.constraints()) {
    j["constraints"].push_back({{"id", c.id.str()},
                                {"action", m.get(c.action).id.str()},
                                {"text", c.text}});
  }
  j["scenarios"] = json::array();
  for (const auto& s : m.scenarios()) {
    j["scenarios"].push_back({{"id", s.id.str()},
                              {"action", s.action_id.str()},
                              {"category", CategoryKeyword(s.category)},
                              {"element", ElementKeyword(s.element)},
                              {"attack_class", s.attack_class},
                              {"description", s.description}});
  }
  return j;
}

json TraceJson(const MissionModel& m, const TraceChain& t) {
  json j;
  if (const auto* loss = std::get_if<LossRef>(&t.root)) {
    j["root"] = m.get(*loss).id.str();
    j["root_kind"] = "loss";
  } else {
    j["root"] = m.get(std::get<ActionRef>(t.root)).id.str();
    j["root_kind"] = "control_action";
  }
  j["direction"] = t.direction == TraceChain::Direction::kDown ? "down" : "up";
  j["losses"] = IdList(m, t.losses);
  j["hazards"] = IdList(m, t.hazards);
  j["ucas"] = json::array();
  for (UcaRef u : t.ucas) j["ucas"].push_back(UcaName(m, m.get(u)));
  j["control_actions"] = IdList(m, t.control_actions);
  j["constraints"] = IdList(m, t.constraints);
  return j;
}

json MatrixJson(const MissionModel& m) {
  json rows = json::array();
  for (const auto& row : BuildUcaMatrix(m).rows) {
    json cells = json::array();
    for (auto c : kAllCategories) {
      const auto& cell = row.cells[CategoryIndex(c)];
      json jc = {{"category", CategoryKeyword(c)}};
      switch (cell.state) {
        case UcaMatrix::CellState::kGap:
          jc["state"] = "gap";
          break;
        case UcaMatrix::CellState::kJustifiedAbsent:
          jc["state"] = "justified_absent";
          jc["context"] = m.get(*cell.uca).context;
          break;
        case UcaMatrix::CellState::kUca:
          jc["state"] = "uca";
          jc["hazards"] = IdList(m, m.get(*cell.uca).hazards);
          jc["context"] = m.get(*cell.uca).context;
          break;
      }
      cells.push_back(std::move(jc));
    }
    rows.push_back({{"action", m.get(row.action).id.str()},
                    {"title", m.get(row.action).title},
                    {"cells", std::move(cells)}});
  }
  return {{"columns", json::array({"not_provided", "provided", "wrong_timing",
                                   "wrong_duration"})},
          {"rows", std::move(rows)}};
}

// --- request decoding ------------------------------------------------------

const json& Field(const json& body, const char* key) {
  auto it = body.find(key);
  if (it == body.end()) {
    throw HttpError{400, std::string("missing field '") + key + "'", {}};
  }
  return *it;
}

std::string StringField(const json& body, const char* key) {
  const auto& v = Field(body, key);
  if (!v.is_string()) {
    throw HttpError{400, std::string("field '") + key + "' must be a string", {}};
  }
  return v.get<std::string>();
}

std::string OptionalString(const json& body, const char* key) {
  return body.contains(key) ? StringField(body, key) : std::string();
}

RawName ElementId(const std::string& text, const char* what) {
  auto id = Identifier::Parse(text);
  if (!id) {
    throw HttpError{400, std::string("malformed ") + what + " '" + text + "'", {}};
  }
  return RawName{id->str(), {}};
}

RawName LevelId(const std::string& text) {
  if (!Identifier::IsWord(text) || IsKeyword(text)) {
    throw HttpError{400, "malformed level id '" + text + "'", {}};
  }
  return RawName{text, {}};
}

std::vector<RawName> IdListField(const json& body, const char* key) {
  const auto& v = Field(body, key);
  if (!v.is_array()) {
    throw HttpError{400, std::string("field '") + key + "' must be an array", {}};
  }
  std::vector<RawName> out;
  for (const auto& item : v) {
    if (!item.is_string()) {
      throw HttpError{400, std::string("field '") + key + "' must hold strings", {}};
    }
    out.push_back(ElementId(item.get<std::string>(), "identifier"));
  }
  return out;
}

UcaCategory CategoryField(const json& body) {
  auto text = StringField(body, "category");
  auto c = CategoryFromKeyword(text);
  if (!c) throw HttpError{400, "unknown UCA category '" + text + "'", {}};
  return *c;
}

struct UcaKey {
  std::string action;
  UcaCategory category;
};

std::optional<UcaKey> ParseUcaKey(std::string_view id) {
  auto slash = id.find('/');
  if (slash == std::string_view::npos) return std::nullopt;
  auto action = Identifier::Parse(id.substr(0, slash));
  auto category = CategoryFromKeyword(id.substr(slash + 1));
  if (!action || !category) return std::nullopt;
  return UcaKey{action->str(), *category};
}

RawAction* FindAction(RawModel& raw, const std::string& id) {
  auto it = std::find_if(raw.actions.begin(), raw.actions.end(),
                         [&](const RawAction& a) { return a.id.text == id; });
  return it == raw.actions.end() ? nullptr : &*it;
}

// Position of an element in a RawModel.  For UCAs `index` is the owning
// action and `inner` the UCA within it.
struct Location {
  std::string kind;
  std::size_t index = 0;
  std::size_t inner = 0;
};

std::optional<Location> Locate(const RawModel& raw, std::string_view id) {
  auto find = [&](const auto& items, const char* kind) -> std::optional<Location> {
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (items[i].id.text == id) return Location{kind, i, 0};
    }
    return std::nullopt;
  };
  if (auto key = ParseUcaKey(id)) {
    for (std::size_t a = 0; a < raw.actions.size(); ++a) {
      if (raw.actions[a].id.text != key->action) continue;
      const auto& ucas = raw.actions[a].ucas;
      for (std::size_t u = 0; u < ucas.size(); ++u) {
        if (ucas[u].category == key->category) return Location{"uca", a, u};
      }
    }
    return std::nullopt;
  }
  if (auto l = find(raw.losses, "loss")) return l;
  if (auto l = find(raw.hazards, "hazard")) return l;
  if (auto l = find(raw.levels, "level")) return l;
  if (auto l = find(raw.actions, "control_action")) return l;
  if (auto l = find(raw.constraints, "constraint")) return l;
  if (auto l = find(raw.scenarios, "scenario")) return l;
  return std::nullopt;
}

std::string KindOf(const json& body) {
  auto kind = StringField(body, "kind");
  static const std::array<std::string_view, 7> kKinds = {
      "loss", "hazard", "level", "control_action", "uca", "constraint", "scenario"};
  if (std::find(kKinds.begin(), kKinds.end(), kind) == kKinds.end()) {
    throw HttpError{400, "unknown element kind '" + kind + "'", {}};
  }
  return kind;
}

// Inserts (or, with `at`, replaces) the element described by `body`.
void ApplyElement(RawModel& raw, const json& body, const std::string& kind,
                  const std::optional<Location>& at) {
  if (kind == "loss") {
    const auto& p = Field(body, "priority");
    if (!p.is_number_integer() || p.get<std::int64_t>() < 1 ||
        p.get<std::int64_t>() > 999999999) {
      throw HttpError{400, "field 'priority' must be a positive integer", {}};
    }
    RawLoss loss{ElementId(StringField(body, "id"), "loss id"),
                 p.get<std::int64_t>(), StringField(body, "description"), {}};
    if (at) {
      raw.losses[at->index] = std::move(loss);
    } else {
      raw.losses.push_back(std::move(loss));
    }
  } else if (kind == "hazard") {
    RawHazard hazard{ElementId(StringField(body, "id"), "hazard id"),
                     StringField(body, "name"),
                     StringField(body, "worst_case_environment"),
                     IdListField(body, "leads_to"),
                     {},
                     OptionalString(body, "loss_summary")};
    if (at) {
      raw.hazards[at->index] = std::move(hazard);
    } else {
      raw.hazards.push_back(std::move(hazard));
    }
  } else if (kind == "level") {
    RawLevel level{LevelId(StringField(body, "id")),
                   StringField(body, "display_name"), false, {}};
    if (body.contains("is_environment")) {
      const auto& env = body["is_environment"];
      if (!env.is_boolean()) {
        throw HttpError{400, "field 'is_environment' must be a boolean", {}};
      }
      level.is_environment = env.get<bool>();
    }
    if (at) {
      raw.levels[at->index] = std::move(level);
    } else if (body.contains("rank")) {
      const auto& rank = body["rank"];
      if (!rank.is_number_integer() || rank.get<std::int64_t>() < 0 ||
          rank.get<std::size_t>() > raw.levels.size()) {
        throw HttpError{400, "field 'rank' is out of range", {}};
      }
      raw.levels.insert(raw.levels.begin() + rank.get<std::ptrdiff_t>(),
                        std::move(level));
    } else {
      raw.levels.push_back(std::move(level));
    }
  } else if (kind == "control_action") {
    RawAction action{ElementId(StringField(body, "id"), "control action id"),
                     StringField(body, "title"),
                     LevelId(StringField(body, "source_level")),
                     LevelId(StringField(body, "target_level")),
                     {},
                     {}};
    if (at) {
      // The action's UCAs are nested in it and survive a replacement.
      action.ucas = std::move(raw.actions[at->index].ucas);
      raw.actions[at->index] = std::move(action);
    } else {
      raw.actions.push_back(std::move(action));
    }
  } else if (kind == "uca") {
    const auto action_id = ElementId(StringField(body, "action"), "action id");
    RawUca uca;
    uca.category = CategoryField(body);
    uca.context = StringField(body, "context");
    if (body.contains("justified_absent")) {
      const auto& j = body["justified_absent"];
      if (!j.is_boolean()) {
        throw HttpError{400, "field 'justified_absent' must be a boolean", {}};
      }
      uca.justified_absent = j.get<bool>();
    }
    if (!uca.justified_absent) {
      uca.hazards = IdListField(body, "hazards");
      if (uca.hazards.empty()) {
        throw HttpError{422, "a UCA must cite at least one hazard", {}};
      }
    }
    if (at) {
      auto& owner = raw.actions[at->index];
      if (owner.id.text != action_id.text || owner.ucas[at->inner].category != uca.category) {
        throw HttpError{400, "a UCA cannot be moved to another action or category", {}};
      }
      owner.ucas[at->inner] = std::move(uca);
      return;
    }
    RawAction* owner = FindAction(raw, action_id.text);
    if (owner == nullptr) {
      throw HttpError{422, "unknown control action '" + action_id.text + "'", {}};
    }
    owner->ucas.push_back(std::move(uca));
  } else if (kind == "constraint") {
    RawConstraint c{ElementId(StringField(body, "id"), "constraint id"),
                    ElementId(StringField(body, "action"), "action id"),
                    StringField(body, "text"),
                    {}};
    if (at) {
      raw.constraints[at->index] = std::move(c);
    } else {
      raw.constraints.push_back(std::move(c));
    }
  } else if (kind == "scenario") {
    const auto element_text = StringField(body, "element");
    auto element = ElementFromKeyword(element_text);
    if (!element) {
      throw HttpError{400, "unknown control-loop element '" + element_text + "'", {}};
    }
    RawScenario s{ElementId(StringField(body, "id"), "scenario id"),
                  ElementId(StringField(body, "action"), "action id"),
                  CategoryField(body),
                  *element,
                  StringField(body, "attack_class"),
                  OptionalString(body, "description"),
                  {}};
    if (at) {
      raw.scenarios[at->index] = std::move(s);
    } else {
      raw.scenarios.push_back(std::move(s));
    }
  }
}

void RemoveElement(RawModel& raw, const Location& at) {
  auto erase = [&](auto& items) { items.erase(items.begin() + at.index); };
  if (at.kind == "loss") {
    erase(raw.losses);
  } else if (at.kind == "hazard") {
    erase(raw.hazards);
  } else if (at.kind == "level") {
    erase(raw.levels);
  } else if (at.kind == "control_action") {
    if (!raw.actions[at.index].ucas.empty()) {
      throw HttpError{409,
                      "control action '" + raw.actions[at.index].id.text +
                          "' still has UCAs",
                      {}};
    }
    erase(raw.actions);
  } else if (at.kind == "uca") {
    auto& ucas = raw.actions[at.index].ucas;
    ucas.erase(ucas.begin() + at.inner);
  } else if (at.kind == "constraint") {
    erase(raw.constraints);
  } else if (at.kind == "scenario") {
    erase(raw.scenarios);
  }
}

std::vector<Diagnostic> Errors(const MissionModel& m) {
  auto all = Validate(m);
  std::erase_if(all, [](const Diagnostic& d) { return !d.is_error(); });
  return all;
}

// Errors of `after` that `before` did not have (compared by code and text).
std::vector<Diagnostic> NewErrors(const MissionModel& before,
                                  const MissionModel& after) {
  auto old_errors = Errors(before);
  std::vector<Diagnostic> fresh;
  for (const auto& d : Errors(after)) {
    auto it = std::find_if(old_errors.begin(), old_errors.end(),
                           [&](const Diagnostic& o) {
                             return o.code == d.code && o.message == d.message;
                           });
    if (it == old_errors.end()) {
      fresh.push_back(d);
    } else {
      old_errors.erase(it);
    }
  }
  return fresh;
}

std::string_view TrimSlash(std::string_view p) {
  while (p.size() > 1 && p.back() == '/') p.remove_suffix(1);
  return p;
}

bool ConsumePrefix(std::string_view& p, std::string_view prefix) {
  if (p.substr(0, prefix.size()) != prefix) return false;
  p.remove_prefix(prefix.size());
  return true;
}

}  // namespace

bool WriteFileAtomically(const std::filesystem::path& path,
                         const std::string& text) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out << text;
    out.flush();
    if (!out) return false;
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    return false;
  }
  return true;
}

ModelService::ModelService(std::filesystem::path path, ModelWriter writer,
                           std::shared_ptr<const Snapshot> initial)
    : path_(std::move(path)), writer_(std::move(writer)),
      current_(std::move(initial)) {}

Checked<std::unique_ptr<ModelService>> ModelService::Open(
    std::filesystem::path path, ModelWriter writer) {
  using Result = Checked<std::unique_ptr<ModelService>>;
  std::string text;
  if (std::filesystem::exists(path)) {
    std::ifstream in(path, std::ios::binary);
    text.assign(std::istreambuf_iterator<char>(in), {});
  } else {
    RawModel skeleton;
    auto empty = Resolve(skeleton);
    text = Serialize(*empty);
  }
  auto model = Load(text);
  if (!model) return Result::Failure(std::move(model.diagnostics));
  auto snap = std::make_shared<const Snapshot>(
      Snapshot{std::move(*model), std::move(text)});
  return Result{std::unique_ptr<ModelService>(
                    new ModelService(std::move(path), std::move(writer), snap)),
                {}};
}

std::shared_ptr<const Snapshot> ModelService::snapshot() const {
  return std::atomic_load(&current_);
}

HttpResponse ModelService::Handle(std::string_view method, std::string_view path,
                                  const std::map<std::string, std::string>& query,
                                  std::string_view body) {
  try {
    if (method == "GET") return Get(path, query);
    if (method == "POST" || method == "PUT" || method == "DELETE") {
      return Mutate(method, path, body);
    }
    return ErrorResponse({405, "method not allowed", {}});
  } catch (const HttpError& e) {
    return ErrorResponse(e);
  } catch (const json::exception& e) {
    return ErrorResponse({400, std::string("malformed body: ") + e.what(), {}});
  }
}

HttpResponse ModelService::Get(
    std::string_view path,
    const std::map<std::string, std::string>& query) const {
  const auto snap = snapshot();
  const MissionModel& m = snap->model;
  path = TrimSlash(path);
  auto param = [&](const char* key) -> std::optional<std::string> {
    auto it = query.find(key);
    if (it == query.end()) return std::nullopt;
    return it->second;
  };

  if (path == "/v1/model") return JsonResponse(200, ModelJson(m));
  if (path == "/v1/diagnostics") return JsonResponse(200, DiagnosticsJson(Validate(m)));
  if (path == "/v1/matrix") return JsonResponse(200, MatrixJson(m));
  if (path == "/v1/coverage") {
    json gaps = json::array();
    for (const auto& g : CategoryCoverage(m)) {
      gaps.push_back({{"action", m.get(g.action).id.str()},
                      {"action_title", m.get(g.action).title},
                      {"category", CategoryKeyword(g.category)}});
    }
    return JsonResponse(200, gaps);
  }
  if (path == "/v1/criticality") {
    json scores = json::array();
    for (const auto& s : CriticalityRank(m)) {
      scores.push_back({{"action", m.get(s.action).id.str()},
                        {"score", s.score},
                        {"reachable_losses", IdList(m, s.reachable_losses)}});
    }
    return JsonResponse(200, scores);
  }
  if (path == "/v1/export") {
    auto format = FormatFromName(param("format").value_or("markdown"));
    if (!format) throw HttpError{400, "unknown export format", {}};
    std::vector<Document> docs;
    if (*format == Format::kDot) {
      docs = {EmitHierarchyDot(m), EmitLoopDot()};
    } else {
      auto tables = EmitTables(m, *format);
      docs.assign(tables.begin(), tables.end());
    }
    json out = json::array();
    for (const auto& d : docs) {
      out.push_back({{"name", d.name},
                     {"format", FormatName(d.format)},
                     {"body", d.body}});
    }
    return JsonResponse(200, {{"documents", out}});
  }

  std::string_view rest = path;
  if (ConsumePrefix(rest, "/v1/trace/")) {
    const auto id = Identifier::Parse(rest);
    const auto loss = id ? m.find_loss(*id) : std::nullopt;
    const auto action = id ? m.find_action(*id) : std::nullopt;
    if (!loss && !action) {
      throw HttpError{404, "no loss or control action '" + std::string(rest) + "'", {}};
    }
    const auto direction = param("direction").value_or(loss ? "down" : "up");
    if (direction == "down" && loss) return JsonResponse(200, TraceJson(m, TraceDown(m, *loss)));
    if (direction == "up" && action) return JsonResponse(200, TraceJson(m, TraceUp(m, *action)));
    throw HttpError{400,
                    "direction '" + direction + "' does not apply to '" +
                        std::string(rest) + "'",
                    {}};
  }
  if (ConsumePrefix(rest, "/v1/elements/")) {
    const auto full = ModelJson(m);
    for (const char* group : {"losses", "hazards", "levels", "control_actions",
                              "ucas", "constraints", "scenarios"}) {
      for (const auto& e : full[group]) {
        if (e["id"] == rest) return JsonResponse(200, e);
      }
    }
    throw HttpError{404, "no element '" + std::string(rest) + "'", {}};
  }
  throw HttpError{404, "no route for " + std::string(path), {}};
}

HttpResponse ModelService::Mutate(std::string_view method, std::string_view path,
                                  std::string_view body_text) {
  path = TrimSlash(path);
  std::lock_guard<std::mutex> lock(write_mutex_);
  const auto before = snapshot();
  RawModel raw = ToRaw(before->model);

  auto body = [&]() {
    json j = json::parse(body_text);
    if (!j.is_object()) throw HttpError{400, "body must be a JSON object", {}};
    return j;
  };

  std::string_view rest = path;
  if (method == "PUT" && path == "/v1/mission") {
    const json j = body();
    if (j.contains("mission_name")) raw.mission_name = StringField(j, "mission_name");
    if (j.contains("mission_statement")) raw.statement = StringField(j, "mission_statement");
    if (j.contains("system_description")) raw.system = StringField(j, "system_description");
  } else if (method == "POST" && path == "/v1/elements") {
    const json j = body();
    ApplyElement(raw, j, KindOf(j), std::nullopt);
  } else if (ConsumePrefix(rest, "/v1/elements/") && method != "POST") {
    const std::string id(rest);
    auto at = Locate(raw, id);
    if (!at) throw HttpError{404, "no element '" + id + "'", {}};
    if (method == "DELETE") {
      RemoveElement(raw, *at);
    } else {
      json j = body();
      const auto kind = j.contains("kind") ? KindOf(j) : at->kind;
      if (kind != at->kind) {
        throw HttpError{400, "element '" + id + "' is a " + at->kind, {}};
      }
      if (kind == "uca") {
        auto key = ParseUcaKey(id);
        if (!j.contains("action")) j["action"] = key->action;
        if (!j.contains("category")) j["category"] = CategoryKeyword(key->category);
      } else if (!j.contains("id")) {
        j["id"] = id;
      } else if (!j["id"].is_string() || j["id"].get<std::string>() != id) {
        throw HttpError{400, "body id does not match '" + id + "'", {}};
      }
      ApplyElement(raw, j, kind, at);
    }
  } else {
    throw HttpError{404, "no route for " + std::string(method) + " " + std::string(path), {}};
  }

  auto resolved = Resolve(raw);
  if (!resolved) {
    const bool duplicate = std::any_of(
        resolved.diagnostics.begin(), resolved.diagnostics.end(),
        [](const Diagnostic& d) { return d.code == Code::kE102; });
    const int status = (duplicate || method == "DELETE") ? 409 : 422;
    throw HttpError{status,
                    status == 409 ? "conflicting identifiers or references"
                                  : "unresolved reference",
                    std::move(resolved.diagnostics)};
  }
  if (auto fresh = NewErrors(before->model, *resolved); !fresh.empty()) {
    throw HttpError{method == "DELETE" ? 409 : 422,
                    method == "DELETE" ? "element is still referenced"
                                       : "element fails validation",
                    std::move(fresh)};
  }

  std::string text = Serialize(*resolved);
  auto reloaded = Load(text);
  if (!reloaded) {
    throw HttpError{500, "canonical text does not re-parse",
                    std::move(reloaded.diagnostics)};
  }
  if (!writer_(path_, text)) {
    throw HttpError{500, "failed to write " + path_.string(), {}};
  }
  auto next = std::make_shared<const Snapshot>(
      Snapshot{std::move(*reloaded), std::move(text)});
  std::atomic_store(&current_, next);
  return JsonResponse(200, ModelJson(next->model));
}

}  // namespace mas::cli
