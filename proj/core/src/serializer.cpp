#include "mas/dsl.hpp"

namespace mas {
namespace {

void AppendIdList(std::string& out, const MissionModel& model,
                  const auto& refs) {
  out += '[';
  bool first = true;
  for (auto r : refs) {
    if (!first) out += ", ";
    first = false;
    out += model.get(r).id.str();
  }
  out += ']';
}

}  // namespace

std::string Serialize(const MissionModel& m) {
  std::string out;
  out += "mission " + EncodeString(m.mission_name()) + " {\n";
  out += "  statement: " + EncodeString(m.mission_statement()) + "\n";
  out += "  system: " + EncodeString(m.system_description()) + "\n";

  if (!m.losses().empty()) {
    out += '\n';
    for (const auto& l : m.losses()) {
      out += "  loss " + l.id.str() + " priority " + std::to_string(l.priority) +
             " " + EncodeString(l.description) + "\n";
    }
  }

  for (const auto& h : m.hazards()) {
    out += "\n  hazard " + h.id.str() + " " + EncodeString(h.name) + " {\n";
    out += "    worst_case: " + EncodeString(h.worst_case_environment) + "\n";
    out += "    leads_to: ";
    AppendIdList(out, m, h.leads_to);
    out += "\n";
    if (!h.loss_summary.empty()) {
      out += "    loss_summary: " + EncodeString(h.loss_summary) + "\n";
    }
    out += "  }\n";
  }

  if (!m.levels().empty()) {
    out += '\n';
    for (const auto& lv : m.levels()) {
      out += "  level " + lv.id.str() + " " + EncodeString(lv.display_name);
      if (lv.is_environment) out += " environment";
      out += '\n';
    }
  }

  for (std::uint32_t a = 0; a < m.actions().size(); ++a) {
    const auto& act = m.actions()[a];
    out += "\n  action " + act.id.str() + " " + EncodeString(act.title) +
           " from " + m.get(act.source).id.str() + " to " +
           m.get(act.target).id.str() + " {";
    const auto ucas = m.ucas_of(ActionRef{a});
    if (ucas.empty()) {
      out += "}\n";
      continue;
    }
    out += '\n';
    for (UcaRef u : ucas) {
      const auto& uca = m.get(u);
      out += "    uca ";
      out.append(CategoryKeyword(uca.category));
      if (uca.justified_absent) {
        out += " none " + EncodeString(uca.context) + "\n";
        continue;
      }
      out += " {\n      hazards: ";
      AppendIdList(out, m, uca.hazards);
      out += "\n      context: " + EncodeString(uca.context) + "\n    }\n";
    }
    out += "  }\n";
  }

  if (!m.constraints().empty()) {
    out += '\n';
    for (const auto& c : m.constraints()) {
      out += "  constraint " + c.id.str() + " for " + m.get(c.action).id.str() +
             " " + EncodeString(c.text) + "\n";
    }
  }

  for (const auto& s : m.scenarios()) {
    out += "\n  scenario " + s.id.str() + " {\n";
    out += "    uca: " + s.action_id.str() + "/" +
           std::string(CategoryKeyword(s.category)) + "\n";
    out += "    element: " + std::string(ElementKeyword(s.element)) + "\n";
    out += "    attack: " + EncodeString(s.attack_class) + "\n";
    out += "    description: " + EncodeString(s.description) + "\n";
    out += "  }\n";
  }

  out += "}\n";
  return out;
}

}  // namespace mas
