#include "ecta/io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace ecta {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(Errc::Parse, msg); }

const json& field(const json& obj, const char* name) {
  auto it = obj.find(name);
  if (it == obj.end()) bad(std::string("missing field '") + name + "'");
  return *it;
}

std::string text_of(const json& j, const char* what) {
  if (!j.is_string()) bad(std::string(what) + " must be a string");
  return j.get<std::string>();
}

Integer integer_of(const json& j, const char* what) {
  if (j.is_number_unsigned()) return Integer(std::to_string(j.get<unsigned long long>()));
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      bad(std::string(what) + " must be a natural number");
    return Integer(s);
  }
  bad(std::string(what) + " must be a natural number");
}

}  // namespace

EctaFile parse_ecta(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) bad("automaton file must be a JSON object");

  const json& letters = field(doc, "alphabet");
  if (!letters.is_array()) bad("alphabet must be an array");
  std::vector<std::string> names;
  for (const auto& l : letters) names.push_back(text_of(l, "letter"));
  Alphabet alphabet(std::move(names));

  const json& locs = field(doc, "locations");
  if (!locs.is_array() || locs.empty()) bad("locations must be a nonempty array");
  std::vector<std::string> locations;
  for (const auto& l : locs) locations.push_back(text_of(l, "location"));
  const auto location = [&](const json& j) -> Location {
    std::string name = text_of(j, "location");
    for (Location q = 0; q < locations.size(); ++q)
      if (locations[q] == name) return q;
    bad("unknown location '" + name + "'");
  };

  const Location initial = location(field(doc, "initial"));
  std::set<Location> accepting;
  const json& acc = field(doc, "accepting");
  if (!acc.is_array()) bad("accepting must be an array");
  for (const auto& q : acc) accepting.insert(location(q));

  std::vector<Edge> edges;
  const json& es = field(doc, "edges");
  if (!es.is_array()) bad("edges must be an array");
  for (const auto& e : es) {
    if (!e.is_object()) bad("edge must be an object");
    Edge edge;
    edge.source = location(field(e, "from"));
    edge.target = location(field(e, "to"));
    edge.letter = alphabet.index_of(text_of(field(e, "letter"), "letter"));
    edge.guard = e.contains("guard") ? parse_guard(text_of(e["guard"], "guard"), alphabet) : Guard::truth();
    edges.push_back(std::move(edge));
  }

  EctaFile file{Ecta(std::move(alphabet), std::move(locations), initial, std::move(edges), std::move(accepting)),
                std::nullopt};
  if (doc.contains("cmax")) {
    file.cmax = integer_of(doc["cmax"], "cmax");
    if (*file.cmax < file.automaton.max_constant())
      throw Error(Errc::CmaxTooSmall, "declared cmax is below the largest guard constant");
  }
  return file;
}

EctaFile load_ecta(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Io, "cannot read '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_ecta(buffer.str());
}

std::string print_ecta(const Ecta& a, const std::optional<Integer>& cmax) {
  json doc;
  doc["alphabet"] = a.alphabet().letters();
  doc["locations"] = a.locations();
  doc["initial"] = a.location_name(a.initial());
  json acc = json::array();
  for (Location q : a.accepting()) acc.push_back(a.location_name(q));
  doc["accepting"] = acc;
  json edges = json::array();
  for (const auto& e : a.edges())
    edges.push_back({{"from", a.location_name(e.source)},
                     {"letter", a.alphabet().name(e.letter)},
                     {"guard", to_string(e.guard, a.alphabet())},
                     {"to", a.location_name(e.target)}});
  doc["edges"] = edges;
  if (cmax) doc["cmax"] = cmax->fits_ulong_p() ? json(cmax->get_ui()) : json(cmax->get_str());
  return doc.dump(2) + "\n";
}

Integer effective_cmax(const EctaFile& file, const std::optional<Integer>& requested) {
  Integer c = file.automaton.max_constant();
  if (file.cmax && *file.cmax > c) c = *file.cmax;
  if (requested) {
    if (*requested < file.automaton.max_constant())
      throw Error(Errc::CmaxTooSmall, "requested cmax is below the largest guard constant");
    c = *requested;
  }
  return c;
}

TimedWord parse_timed_word(std::string_view text, const Alphabet& alphabet) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("malformed timed word: ") + e.what());
  }
  if (!doc.is_array()) bad("timed word must be a JSON array");
  std::vector<TimedEvent> events;
  for (const auto& ev : doc) {
    if (!ev.is_array() || ev.size() != 2) bad("timed word entries must be [letter, time] pairs");
    TimedEvent e;
    e.letter = alphabet.index_of(text_of(ev[0], "letter"));
    if (ev[1].is_string())
      e.time = parse_rational(ev[1].get<std::string>());
    else if (ev[1].is_number_integer())
      e.time = parse_rational(std::to_string(ev[1].get<long long>()));
    else if (ev[1].is_number())
      e.time = parse_rational(ev[1].dump());
    else
      bad("time must be a string or number");
    events.push_back(std::move(e));
  }
  return TimedWord(std::move(events));
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string state_label(const RegionAutomaton& r, std::size_t s) {
  return r.location_names[r.states[s].location] + " | " + to_string(r.states[s].region, *r.clocks);
}

}  // namespace

std::string to_dot(const RegionAutomaton& r) {
  std::ostringstream out;
  out << "digraph region_automaton {\n  rankdir=LR;\n  node [shape=box];\n";
  for (std::size_t s = 0; s < r.states.size(); ++s) {
    out << "  s" << s << " [label=\"" << dot_escape(state_label(r, s)) << "\"";
    if (r.accepting.count(s)) out << ", peripheries=2";
    out << "];\n";
  }
  for (std::size_t s : r.initials) out << "  init" << s << " [shape=point];\n  init" << s << " -> s" << s << ";\n";
  for (const auto& e : r.edges)
    out << "  s" << e.source << " -> s" << e.target << " [label=\"" << dot_escape(r.alphabet.name(e.letter))
        << "\"];\n";
  out << "}\n";
  return out.str();
}

std::string to_json(const RegionAutomaton& r) {
  json doc;
  doc["quantifier"] = to_string(r.mode.quantifier);
  doc["variant"] = to_string(r.mode.variant);
  doc["cmax"] = r.cmax.get_str();
  json states = json::array();
  for (std::size_t s = 0; s < r.states.size(); ++s)
    states.push_back({{"id", s},
                      {"location", r.location_names[r.states[s].location]},
                      {"region", to_string(r.states[s].region, *r.clocks)},
                      {"initial", r.initials.count(s) != 0},
                      {"accepting", r.accepting.count(s) != 0}});
  doc["states"] = states;
  json edges = json::array();
  for (const auto& e : r.edges)
    edges.push_back({{"from", e.source}, {"letter", r.alphabet.name(e.letter)}, {"to", e.target}});
  doc["edges"] = edges;
  return doc.dump(2) + "\n";
}

std::string to_json(const AnalysisResult& result, const Ecta& a) {
  json doc;
  doc["verdict"] = to_string(result.verdict);
  doc["steps"] = result.steps;
  if (result.witness) {
    json path = json::array();
    for (const auto& s : *result.witness)
      path.push_back({{"location", a.location_name(s.location)}, {"zone", to_string(s.zone)}});
    doc["witness"] = path;
  } else {
    doc["witness"] = nullptr;
  }
  return doc.dump();
}

}  // namespace ecta
