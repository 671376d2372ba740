#include "mechlab/instance_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace mechlab {

namespace {

using nlohmann::json;

// nlohmann reports byte offsets; anchor messages to line:column instead.
std::string line_anchor(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError(where.empty() ? what : where + ": " + what);
}

}  // namespace

Instance parse_instance(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& err) {
    fail(line_anchor(json_text, err.byte > 0 ? err.byte - 1 : 0), err.what());
  }
  if (!doc.is_object()) fail("1:1", "instance document must be an object");
  if (!doc.contains("candidates") || !doc["candidates"].is_array()) {
    fail("", "missing or non-array field 'candidates'");
  }
  if (!doc.contains("agents") || !doc["agents"].is_array()) {
    fail("", "missing or non-array field 'agents'");
  }

  std::vector<double> candidates;
  for (const json& v : doc["candidates"]) {
    if (!v.is_number()) fail("", "candidate entries must be numbers");
    candidates.push_back(v.get<double>());
  }

  std::vector<Agent> agents;
  for (const json& a : doc["agents"]) {
    if (!a.is_object()) fail("", "agent entries must be objects");
    for (const char* field : {"id", "group", "location"}) {
      if (!a.contains(field)) {
        fail("", std::string("agent entry missing field '") + field + "'");
      }
    }
    if (!a["id"].is_number_integer() || !a["group"].is_number_integer()) {
      fail("", "agent id and group must be integers");
    }
    if (!a["location"].is_number()) {
      fail("", "agent location must be a number");
    }
    agents.push_back(
        {a["id"].get<int>(), a["group"].get<int>(), a["location"].get<double>()});
  }
  return Instance::make(std::move(candidates), std::move(agents));
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_instance(buffer.str());
  } catch (const ParseError& err) {
    throw ParseError(path + ":" + err.what());
  }
}

std::string instance_to_json(const Instance& inst) {
  json doc;
  doc["candidates"] = json::array();
  for (const CandidateSlot& s : inst.candidates.slots) {
    doc["candidates"].push_back(s.value);
  }
  doc["agents"] = json::array();
  for (const Agent& a : inst.agents) {
    doc["agents"].push_back(
        {{"id", a.id}, {"group", a.group}, {"location", a.location}});
  }
  return doc.dump(2) + "\n";
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open file for writing");
  out << instance_to_json(inst);
}

}  // namespace mechlab
