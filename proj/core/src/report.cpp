#include "mas/report.hpp"

#include <stdexcept>
#include <vector>

namespace mas {
namespace {

constexpr std::string_view kEmDash = "\xE2\x80\x94";

using Row = std::vector<std::string>;

std::string MarkdownCell(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '|':
        out += "\\|";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "<br>";
        break;
      case '\r':
        break;
      default:
        out += c;
    }
  }
  return out;
}

// RFC 4180 quoting, LF record separator.
std::string CsvField(std::string_view text) {
  if (text.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(text);
  }
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// Gap cells are represented by std::nullopt so each format can render its
// own marker.
using Cell = std::optional<std::string>;

std::string RenderTable(Format format, const Row& header,
                        const std::vector<std::vector<Cell>>& rows) {
  std::string out;
  if (format == Format::kMarkdown) {
    auto line = [&out](const std::vector<std::string>& cells) {
      out += '|';
      for (const auto& c : cells) {
        out += ' ';
        out += c;
        out += " |";
      }
      out += '\n';
    };
    std::vector<std::string> h;
    for (const auto& c : header) h.push_back(MarkdownCell(c));
    line(h);
    line(std::vector<std::string>(header.size(), "---"));
    for (const auto& row : rows) {
      std::vector<std::string> r;
      for (const auto& c : row) {
        r.push_back(c ? MarkdownCell(*c) : std::string(kEmDash));
      }
      line(r);
    }
    return out;
  }
  if (format != Format::kCsv) {
    throw std::invalid_argument("tables render as markdown or csv only");
  }
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out += ',';
      out += CsvField(cells[i]);
    }
    out += '\n';
  };
  line(header);
  for (const auto& row : rows) {
    std::vector<std::string> r;
    for (const auto& c : row) r.push_back(c.value_or(""));
    line(r);
  }
  return out;
}

std::string ActionLabel(const ControlAction& a) {
  return a.id.str() + " " + a.title;
}

std::string JoinIds(const MissionModel& m, const auto& refs) {
  std::string out;
  for (auto r : refs) {
    if (!out.empty()) out += ", ";
    out += m.get(r).id.str();
  }
  return out;
}

Document LossesTable(const MissionModel& m, Format f) {
  std::vector<std::vector<Cell>> rows;
  for (const auto& l : m.losses()) rows.push_back({l.id.str(), l.description});
  return {"losses", f, RenderTable(f, {"Unacceptable Loss", "Description"}, rows)};
}

Document HazardsTable(const MissionModel& m, Format f) {
  std::vector<std::vector<Cell>> rows;
  for (const auto& h : m.hazards()) {
    std::string losses;
    if (!h.leads_to.empty()) {
      losses = JoinIds(m, h.leads_to) + ": ";
      if (!h.loss_summary.empty()) {
        losses += h.loss_summary;
      } else {
        bool first = true;
        for (LossRef l : h.leads_to) {
          if (!first) losses += "; ";
          first = false;
          losses += m.get(l).description;
        }
      }
    }
    rows.push_back({h.id.str() + std::string(kEmDash) + h.name,
                    h.worst_case_environment, losses});
  }
  return {"hazards", f,
          RenderTable(f, {"Hazard", "Worst-case Environment", "Associated Losses"},
                      rows)};
}

Document ConstraintsTable(const MissionModel& m, Format f) {
  std::vector<std::vector<Cell>> rows;
  for (const auto& c : m.constraints()) {
    rows.push_back({ActionLabel(m.get(c.action)), c.text});
  }
  return {"constraints", f,
          RenderTable(f, {"Control Action", "Safety Constraint"}, rows)};
}

std::string DotString(std::string_view text) {
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
      case '\r':
        break;
      default:
        out += c;
    }
  }
  out += '"';
  return out;
}

std::string DotEdge(std::string_view from, std::string_view to,
                    std::string_view label = {}) {
  std::string out = "  " + DotString(from) + " -> " + DotString(to);
  if (!label.empty()) out += " [label=" + DotString(label) + "]";
  out += ";\n";
  return out;
}

}  // namespace

std::string_view FormatName(Format format) {
  switch (format) {
    case Format::kMarkdown:
      return "markdown";
    case Format::kCsv:
      return "csv";
    case Format::kDot:
      return "dot";
  }
  return "markdown";
}

std::optional<Format> FormatFromName(std::string_view name) {
  if (name == "markdown" || name == "md") return Format::kMarkdown;
  if (name == "csv") return Format::kCsv;
  if (name == "dot") return Format::kDot;
  return std::nullopt;
}

std::string_view FileExtension(Format format) {
  switch (format) {
    case Format::kMarkdown:
      return "md";
    case Format::kCsv:
      return "csv";
    case Format::kDot:
      return "dot";
  }
  return "txt";
}

std::string UcaCellText(const MissionModel& m, const std::optional<UcaRef>& ref) {
  if (!ref) return {};
  const auto& uca = m.get(*ref);
  if (uca.justified_absent) return "none: " + uca.context;
  return JoinIds(m, uca.hazards) + ": " + uca.context;
}

Document EmitMatrix(const MissionModel& m, Format f) {
  Row header = {"Control Action"};
  for (auto c : kAllCategories) header.emplace_back(CategoryHeading(c));
  std::vector<std::vector<Cell>> rows;
  for (const auto& row : BuildUcaMatrix(m).rows) {
    std::vector<Cell> r = {ActionLabel(m.get(row.action))};
    for (const auto& cell : row.cells) {
      if (cell.state == UcaMatrix::CellState::kGap) {
        r.emplace_back(std::nullopt);
      } else {
        r.emplace_back(UcaCellText(m, cell.uca));
      }
    }
    rows.push_back(std::move(r));
  }
  return {"uca_matrix", f, RenderTable(f, header, rows)};
}

std::array<Document, 4> EmitTables(const MissionModel& m, Format f) {
  return {LossesTable(m, f), HazardsTable(m, f), EmitMatrix(m, f),
          ConstraintsTable(m, f)};
}

Document EmitHierarchyDot(const MissionModel& m) {
  std::string out = "digraph hierarchy {\n  rankdir=TB;\n";
  const auto levels = m.levels();
  for (const auto& lv : levels) {
    out += "  " + DotString(lv.id.str()) + " [label=" +
           DotString(lv.display_name) + "];\n";
  }
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    const auto& upper = levels[i];
    const auto& lower = levels[i + 1];
    if (upper.is_environment || lower.is_environment) continue;
    out += DotEdge(upper.id.str(), lower.id.str(), "control");
    out += DotEdge(lower.id.str(), upper.id.str(), "feedback");
  }
  if (auto env = m.environment_level(); env && env->index > 0) {
    out += DotEdge(m.get(*env).id.str(), levels[env->index - 1].id.str(),
                   "disturbance");
  }
  out += "}\n";
  return {"hierarchy", Format::kDot, std::move(out)};
}

Document EmitLoopDot() {
  using E = LoopElement;
  std::string out = "digraph control_loop {\n  rankdir=TB;\n";
  for (auto e : AllLoopElements()) {
    out += "  " + DotString(ElementKeyword(e)) + " [label=" +
           DotString(std::to_string(Ordinal(e)) + ". " +
                     std::string(ElementLabel(e))) +
           "];\n";
  }
  auto edge = [&out](E from, E to, std::string_view label = {}) {
    out += DotEdge(ElementKeyword(from), ElementKeyword(to), label);
  };
  // Control ring.
  edge(E::kController, E::kActuator);
  edge(E::kActuator, E::kControlledProcess);
  edge(E::kControlledProcess, E::kSensor);
  edge(E::kSensor, E::kController);
  // Parts of the controller.
  edge(E::kController, E::kProcessModel, "contains");
  edge(E::kController, E::kControlAlgorithm, "contains");
  edge(E::kController, E::kControlActionLink, "contains");
  // Peripheral inputs and outputs.
  edge(E::kController, E::kFeedbackToHigher);
  edge(E::kControlInput, E::kController);
  edge(E::kController, E::kControllerOutput);
  edge(E::kExternalInput, E::kController);
  edge(E::kAlternateControlActions, E::kControlledProcess);
  edge(E::kExternalProcessInput, E::kControlledProcess);
  edge(E::kProcessDisturbance, E::kControlledProcess);
  edge(E::kControlledProcess, E::kProcessOutput);
  out += "}\n";
  return {"control_loop", Format::kDot, std::move(out)};
}

Document EmitTraceReport(const MissionModel& m, const TraceChain& chain,
                         Format f) {
  struct Entry {
    std::string id;
    std::string text;
  };
  struct Section {
    std::string_view heading;
    std::string_view key;
    std::vector<Entry> entries;
  };

  const bool down = chain.direction == TraceChain::Direction::kDown;
  Entry root;
  if (const auto* loss = std::get_if<LossRef>(&chain.root)) {
    root = {m.get(*loss).id.str(), m.get(*loss).description};
  } else {
    const auto& a = m.get(std::get<ActionRef>(chain.root));
    root = {a.id.str(), a.title};
  }

  std::vector<Section> sections = {
      {"Losses", "loss", {}},
      {"Hazards", "hazard", {}},
      {"Unsafe control actions", "uca", {}},
      {"Control actions", "action", {}},
      {"Constraints", "constraint", {}},
  };
  for (LossRef r : chain.losses) {
    sections[0].entries.push_back({m.get(r).id.str(), m.get(r).description});
  }
  for (HazardRef r : chain.hazards) {
    sections[1].entries.push_back({m.get(r).id.str(), m.get(r).name});
  }
  for (UcaRef r : chain.ucas) {
    sections[2].entries.push_back({UcaName(m, m.get(r)), UcaCellText(m, r)});
  }
  for (ActionRef r : chain.control_actions) {
    sections[3].entries.push_back({m.get(r).id.str(), m.get(r).title});
  }
  for (ConstraintRef r : chain.constraints) {
    sections[4].entries.push_back({m.get(r).id.str(), m.get(r).text});
  }

  std::string out;
  const std::string name = "trace_" + root.id;
  if (f == Format::kCsv) {
    out += "section,id,text\n";
    out += "root," + CsvField(root.id) + "," + CsvField(root.text) + "\n";
    for (const auto& s : sections) {
      if (s.entries.empty()) {
        out += std::string(s.key) + ",none,\n";
      }
      for (const auto& e : s.entries) {
        out += std::string(s.key) + "," + CsvField(e.id) + "," +
               CsvField(e.text) + "\n";
      }
    }
    return {name, f, std::move(out)};
  }
  if (f != Format::kMarkdown) {
    throw std::invalid_argument("trace reports render as markdown or csv only");
  }
  out += "# Trace " + std::string(down ? "down from loss " : "up from control action ") +
         MarkdownCell(root.id) + "\n\n";
  out += "## Root\n\n- " + MarkdownCell(root.id) + ": " + MarkdownCell(root.text) +
         "\n";
  for (const auto& s : sections) {
    out += "\n## " + std::string(s.heading) + "\n\n";
    if (s.entries.empty()) out += "- none\n";
    for (const auto& e : s.entries) {
      out += "- " + MarkdownCell(e.id) + ": " + MarkdownCell(e.text) + "\n";
    }
  }
  return {name, f, std::move(out)};
}

}  // namespace mas
