// Command-line front end: emptiness checks, region automaton export,
// membership, bounded languages and bundled demonstrations.
#include "ecta/analysis.hpp"
#include "ecta/io.hpp"
#include "ecta/region_automaton.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <iostream>

namespace {

using namespace ecta;
using Report = nlohmann::ordered_json;

struct Options {
  std::string file;
  std::string method = "region";
  std::size_t fuel = 10000;
  bool forall = false;
  bool refined = false;
  std::optional<std::string> cmax;
  bool json = false;
  bool literal_accept = false;
  std::optional<std::string> out;
  std::string word;
  std::size_t length = 0;
  std::string demo;
};

void emit(const Report& r, bool as_json) {
  if (as_json) {
    std::cout << r.dump() << "\n";
    return;
  }
  for (const auto& [key, value] : r.items()) {
    if (value.is_array()) {
      for (const auto& item : value) std::cout << key << ": " << (item.is_string() ? item.get<std::string>() : item.dump()) << "\n";
    } else {
      std::cout << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    }
  }
}

std::optional<Integer> requested_cmax(const Options& o) {
  if (!o.cmax) return std::nullopt;
  if (o.cmax->empty() || o.cmax->find_first_not_of("0123456789") != std::string::npos)
    throw Error(Errc::Parse, "--cmax must be a natural number");
  return Integer(*o.cmax);
}

BuildMode mode_of(const Options& o) {
  return {o.forall ? Quantifier::Universal : Quantifier::Existential,
          o.refined ? RegionVariant::Refined : RegionVariant::Classic};
}

int cmd_check(const Options& o) {
  const EctaFile file = load_ecta(o.file);
  Report r;
  r["command"] = "check";
  r["file"] = o.file;
  r["method"] = o.method;
  if (o.method == "region") {
    const Integer cmax = effective_cmax(file, requested_cmax(o));
    const BuildMode mode = mode_of(o);
    const RegionAutomaton ra = build(file.automaton, cmax, mode);
    r["quantifier"] = to_string(mode.quantifier);
    r["variant"] = to_string(mode.variant);
    r["cmax"] = cmax.get_str();
    r["language_empty"] = language_empty(ra);
    r["states"] = ra.states.size();
  } else if (o.method == "forward" || o.method == "backward") {
    const AnalysisOptions options{o.fuel, o.literal_accept};
    const AnalysisResult result =
        o.method == "forward" ? forw_exact(file.automaton, options) : back_exact(file.automaton, options);
    if (result.verdict == Verdict::Unknown)
      r["language_empty"] = "unknown";
    else
      r["language_empty"] = result.verdict == Verdict::Empty;
    r["steps"] = result.steps;
    r["fuel"] = o.fuel;
  } else {
    throw Error(Errc::Parse, "unknown method '" + o.method + "'");
  }
  emit(r, o.json);
  return 0;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::Io, "cannot write '" + path + "'");
  out << contents;
  if (!out.flush()) throw Error(Errc::Io, "cannot write '" + path + "'");
}

std::string strip_suffix(std::string path) {
  for (const char* ext : {".dot", ".json"}) {
    const std::string e(ext);
    if (path.size() > e.size() && path.compare(path.size() - e.size(), e.size(), e) == 0)
      return path.substr(0, path.size() - e.size());
  }
  return path;
}

int cmd_untime(const Options& o) {
  const EctaFile file = load_ecta(o.file);
  const Integer cmax = effective_cmax(file, requested_cmax(o));
  const BuildMode mode = mode_of(o);
  const RegionAutomaton ra = build(file.automaton, cmax, mode);
  Report r;
  r["command"] = "untime";
  r["file"] = o.file;
  r["quantifier"] = to_string(mode.quantifier);
  r["variant"] = to_string(mode.variant);
  r["cmax"] = cmax.get_str();
  r["states"] = ra.states.size();
  r["edges"] = ra.edges.size();
  r["initial"] = ra.initials.size();
  r["accepting"] = ra.accepting.size();
  r["state_bound"] = state_count_bound(file.automaton, cmax).get_str();
  r["language_empty"] = language_empty(ra);
  if (o.out) {
    const std::string base = strip_suffix(*o.out);
    write_file(base + ".dot", to_dot(ra));
    write_file(base + ".json", to_json(ra));
    r["dot"] = base + ".dot";
    r["json"] = base + ".json";
  }
  emit(r, o.json);
  return 0;
}

int cmd_member(const Options& o) {
  const EctaFile file = load_ecta(o.file);
  const TimedWord w = parse_timed_word(o.word, file.automaton.alphabet());
  Report r;
  r["command"] = "member";
  r["file"] = o.file;
  r["untimed"] = to_string(untime(w), file.automaton.alphabet());
  r["accepted"] = accepts(file.automaton, w);
  emit(r, o.json);
  return 0;
}

int cmd_bounded(const Options& o) {
  const EctaFile file = load_ecta(o.file);
  const Alphabet& ab = file.automaton.alphabet();
  std::set<UntimedWord> words;
  Report r;
  r["command"] = "bounded-lang";
  r["file"] = o.file;
  r["method"] = o.method;
  r["length"] = o.length;
  if (o.method == "region") {
    const Integer cmax = effective_cmax(file, requested_cmax(o));
    words = bounded_language(build(file.automaton, cmax, mode_of(o)), o.length);
  } else if (o.method == "zone") {
    words = bounded_untimed_language(file.automaton, o.length);
  } else {
    throw Error(Errc::Parse, "unknown method '" + o.method + "'");
  }
  // Shortest first, then lexicographic by letter index.
  std::vector<UntimedWord> sorted(words.begin(), words.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const UntimedWord& x, const UntimedWord& y) { return x.size() < y.size(); });
  r["count"] = sorted.size();
  Report list = Report::array();
  for (const auto& w : sorted) list.push_back(to_string(w, ab));
  r["words"] = list;
  emit(r, o.json);
  return 0;
}

// Demonstrations ----------------------------------------------------------

struct Check {
  std::string name;
  bool passed;
  std::string detail;
};

UntimedWord b_then_a(std::size_t n) {
  UntimedWord w(n, 1);
  w.push_back(0);
  return w;
}

TimedWord timed_b_then_a(const Alphabet& ab, std::size_t n) {
  std::vector<TimedEvent> events;
  for (std::size_t i = 0; i < n; ++i) events.push_back({1, Rational(static_cast<long>(i))});
  events.push_back({0, Rational(static_cast<long>(n))});
  (void)ab;
  return TimedWord(std::move(events));
}

std::vector<Check> demo_ainf() {
  const Ecta a = builtin_example("ainf");
  const Alphabet& ab = a.alphabet();
  std::vector<Check> checks;
  std::set<std::set<UntimedWord>> distinct;
  for (long n = 1; n <= 6; ++n) {
    const Valuation v = Valuation::of(a.clocks(), {{"p.a", std::to_string(n)}, {"p.b", "0"}});
    const auto lang = bounded_untimed_language(a, {0, point_zone(v)}, 8);
    std::string listed;
    for (const auto& w : lang) listed += (listed.empty() ? "" : ",") + to_string(w, ab);
    const bool ok = lang == std::set<UntimedWord>{b_then_a(static_cast<std::size_t>(n))};
    distinct.insert(lang);
    checks.push_back({"language from p.a=" + std::to_string(n) + ", p.b=0", ok, "{" + listed + "}"});
  }
  checks.push_back({"languages pairwise distinct", distinct.size() == 6, std::to_string(distinct.size()) + " distinct"});

  for (RegionVariant variant : {RegionVariant::Classic, RegionVariant::Refined}) {
    const RegionAutomaton ra = build(a, a.max_constant(), {Quantifier::Universal, variant});
    std::string missed;
    for (std::size_t n = 1; n <= 5; ++n)
      if (accepts(a, timed_b_then_a(ab, n)) && !ra_accepts(ra, b_then_a(n))) {
        missed = to_string(b_then_a(n), ab);
        break;
      }
    checks.push_back({std::string("universal ") + to_string(variant) + " automaton misses an accepted b^n a",
                      !missed.empty(), missed.empty() ? "none missed" : "misses " + missed});
  }
  return checks;
}

// Lower bound on p.b forced by every zone of the set, as a string.
std::string prophecy_b_floor(const ZoneSet& zones, const ClockSet& clocks) {
  const std::size_t k = clocks.index_of(Clock{1, ClockKind::Prophecy}) + 1;
  std::optional<Rational> least;
  for (const auto& z : zones) {
    const Bound& b = z(k, 0);
    Rational lo = b.kind == Bound::Kind::Finite ? Rational(-b.value) : Rational(0);
    if (!least || lo < *least) least = lo;
  }
  return least ? to_string(*least) : "none";
}

std::vector<Check> demo_backdiv() {
  const Ecta a = builtin_example("backdiv");
  const ClockSetPtr& clocks = a.clocks();
  std::vector<Check> checks;
  const AnalysisResult back = back_exact(a, {50, false});
  checks.push_back({"backward search exhausts fuel 50", back.verdict == Verdict::Unknown,
                    std::string(to_string(back.verdict)) + " after " + std::to_string(back.steps) + " steps"});

  const Edge& entry_loop = a.edges()[1];
  const Edge& exit = a.edges()[2];
  const Edge& tail = a.edges()[3];
  ZoneSet zones;
  for (const auto& z : pre_zones(clocks, tail, final_zone(clocks)))
    for (auto& y : pre_zones(clocks, exit, z)) zones.push_back(std::move(y));
  for (long n = 1; n <= 10; ++n) {
    ZoneSet next;
    for (const auto& z : zones)
      for (auto& y : pre_zones(clocks, entry_loop, z)) next.push_back(std::move(y));
    zones = std::move(next);
    const Edbm floor_b = literal_zone(clocks, Clock{1, ClockKind::Prophecy}, Cmp::Greater, n - 1);
    bool ok = !zones.empty();
    for (const auto& z : zones) ok = ok && includes(floor_b, z);
    checks.push_back({"iteration " + std::to_string(n) + " forces p.b >= " + std::to_string(n), ok,
                      "p.b lower bound " + prophecy_b_floor(zones, *clocks)});
  }
  return checks;
}

std::vector<Check> demo_forwdiv() {
  const Ecta a = mirror(builtin_example("backdiv"));
  const AnalysisResult fwd = forw_exact(a, {50, false});
  return {{"forward search on the mirrored automaton exhausts fuel 50", fwd.verdict == Verdict::Unknown,
           std::string(to_string(fwd.verdict)) + " after " + std::to_string(fwd.steps) + " steps"}};
}

int cmd_demo(const Options& o) {
  const std::map<std::string, std::function<std::vector<Check>()>> demos{
      {"ainf", demo_ainf}, {"backdiv", demo_backdiv}, {"forwdiv", demo_forwdiv}};
  auto it = demos.find(o.demo);
  if (it == demos.end()) throw Error(Errc::NotFound, "no demo named '" + o.demo + "'");
  const std::vector<Check> checks = it->second();
  bool all = true;
  for (const auto& c : checks) all = all && c.passed;
  if (o.json) {
    Report r;
    r["command"] = "demo";
    r["demo"] = o.demo;
    Report list = Report::array();
    for (const auto& c : checks) list.push_back({{"check", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    r["checks"] = list;
    r["passed"] = all;
    emit(r, true);
  } else {
    for (const auto& c : checks) std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
    std::cout << (all ? "PASS" : "FAIL") << " demo " << o.demo << "\n";
  }
  return 0;
}

void add_mode_flags(CLI::App* cmd, Options& o) {
  auto* exists = cmd->add_flag("--exists", "existential region automaton (default)");
  auto* forall = cmd->add_flag("--forall", o.forall, "universal region automaton");
  exists->excludes(forall);
  auto* classic = cmd->add_flag("--classic", "classic regions (default)");
  auto* refined = cmd->add_flag("--refined", o.refined, "refined regions with diagonal classes");
  classic->excludes(refined);
  cmd->add_option("--cmax", o.cmax, "abstraction constant (not below the largest guard constant)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Event-clock automata: emptiness, region automata and membership"};
  app.require_subcommand(1);
  Options o;
  std::function<int(const Options&)> action;

  auto* check = app.add_subcommand("check", "decide emptiness of the automaton's language");
  check->add_option("file", o.file, "automaton file")->required();
  check->add_option("--method", o.method, "region, forward or backward")
      ->check(CLI::IsMember({"region", "forward", "backward"}));
  check->add_option("--fuel", o.fuel, "state budget for forward and backward search");
  check->add_flag("--literal-accept", o.literal_accept, "accept only zones contained in the target zone");
  check->add_flag("--json", o.json, "print one JSON object");
  add_mode_flags(check, o);
  check->callback([&] { action = cmd_check; });

  auto* untime_cmd = app.add_subcommand("untime", "build a region automaton");
  untime_cmd->add_option("file", o.file, "automaton file")->required();
  untime_cmd->add_option("-o", o.out, "output path; writes PATH.dot and PATH.json");
  untime_cmd->add_flag("--json", o.json, "print one JSON object");
  add_mode_flags(untime_cmd, o);
  untime_cmd->callback([&] { action = cmd_untime; });

  auto* member = app.add_subcommand("member", "check acceptance of a timed word");
  member->add_option("file", o.file, "automaton file")->required();
  member->add_option("word", o.word, R"(timed word, e.g. [["b","0"],["a","1"]])")->required();
  member->add_flag("--json", o.json, "print one JSON object");
  member->callback([&] { action = cmd_member; });

  auto* bounded = app.add_subcommand("bounded-lang", "list accepted untimed words up to a length");
  bounded->add_option("file", o.file, "automaton file")->required();
  bounded->add_option("length", o.length, "maximal word length")->required();
  bounded->add_option("--method", o.method, "zone (exact search) or region")
      ->check(CLI::IsMember({"zone", "region"}))
      ->default_str("zone");
  bounded->add_flag("--json", o.json, "print one JSON object");
  add_mode_flags(bounded, o);
  bounded->callback([&] {
    if (bounded->count("--method") == 0) o.method = "zone";
    action = cmd_bounded;
  });

  auto* demo = app.add_subcommand("demo", "run a bundled demonstration (ainf, backdiv, forwdiv)");
  demo->add_option("name", o.demo, "demonstration name")->required();
  demo->add_flag("--json", o.json, "print one JSON object");
  demo->callback([&] { action = cmd_demo; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    return action(o);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return 2;
  }
}
