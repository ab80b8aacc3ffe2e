#include "ecta/analysis.hpp"

#include <deque>
#include <map>

namespace ecta {

namespace {

Clock history_of(std::size_t letter) { return {letter, ClockKind::History}; }
Clock prophecy_of(std::size_t letter) { return {letter, ClockKind::Prophecy}; }

void push_unique(ZoneSet& out, Edbm z) {
  if (z.is_empty()) return;
  for (const auto& other : out)
    if (includes(other, z)) return;
  out.push_back(std::move(z));
}

}  // namespace

ZoneSet post_zones(const ClockSetPtr& clocks, const Edge& e, const Edbm& z) {
  ZoneSet out;
  if (z.is_empty()) return out;
  const Clock h = history_of(e.letter), p = prophecy_of(e.letter);
  Edbm before = intersect(future(z), literal_zone(clocks, p, Cmp::Equal, 0));
  if (before.is_empty()) return out;
  before = release(before, p);
  const Edbm reset = literal_zone(clocks, h, Cmp::Equal, 0);
  for (const auto& guard : guard_to_zones(e.guard, clocks)) {
    Edbm firing = intersect(before, guard);
    if (firing.is_empty()) continue;
    push_unique(out, intersect(release(firing, h), reset));
  }
  return out;
}

ZoneSet pre_zones(const ClockSetPtr& clocks, const Edge& e, const Edbm& z) {
  ZoneSet out;
  if (z.is_empty()) return out;
  const Clock h = history_of(e.letter), p = prophecy_of(e.letter);
  Edbm after = intersect(z, literal_zone(clocks, h, Cmp::Equal, 0));
  if (after.is_empty()) return out;
  after = release(after, h);
  const Edbm expired = literal_zone(clocks, p, Cmp::Equal, 0);
  for (const auto& guard : guard_to_zones(e.guard, clocks)) {
    Edbm firing = intersect(after, guard);
    if (firing.is_empty()) continue;
    push_unique(out, past(intersect(release(firing, p), expired)));
  }
  return out;
}

std::vector<SymbolicState> post_edge(const Ecta& a, const Edge& e, const SymbolicState& s) {
  std::vector<SymbolicState> out;
  if (e.source != s.location) return out;
  for (auto& z : post_zones(a.clocks(), e, s.zone)) out.push_back({e.target, std::move(z)});
  return out;
}

std::vector<SymbolicState> pre_edge(const Ecta& a, const Edge& e, const SymbolicState& s) {
  std::vector<SymbolicState> out;
  if (e.target != s.location) return out;
  for (auto& z : pre_zones(a.clocks(), e, s.zone)) out.push_back({e.source, std::move(z)});
  return out;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::NonEmpty: return "nonempty";
    case Verdict::Empty: return "empty";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

namespace {

struct Node {
  SymbolicState state;
  std::optional<std::size_t> parent;
};

// Breadth-first search with inclusion subsumption. `expand` yields the
// neighbours of a state; `hit` decides success.
template <class Expand, class Hit>
AnalysisResult search(std::vector<SymbolicState> seeds, std::size_t fuel, Expand&& expand, Hit&& hit) {
  std::vector<Node> nodes;
  std::map<Location, std::vector<std::size_t>> visited;
  std::deque<std::size_t> queue;
  const auto admit = [&](SymbolicState s, std::optional<std::size_t> parent) {
    auto& seen = visited[s.location];
    for (std::size_t k : seen)
      if (includes(nodes[k].state.zone, s.zone)) return;
    nodes.push_back({std::move(s), parent});
    seen.push_back(nodes.size() - 1);
    queue.push_back(nodes.size() - 1);
  };
  for (auto& s : seeds)
    if (!s.zone.is_empty()) admit(std::move(s), std::nullopt);

  AnalysisResult result;
  while (!queue.empty()) {
    if (result.steps >= fuel) {
      result.verdict = Verdict::Unknown;
      return result;
    }
    const std::size_t current = queue.front();
    queue.pop_front();
    ++result.steps;
    if (hit(nodes[current].state)) {
      std::vector<SymbolicState> path;
      for (std::optional<std::size_t> k = current; k; k = nodes[*k].parent) path.push_back(nodes[*k].state);
      result.verdict = Verdict::NonEmpty;
      result.witness = std::vector<SymbolicState>(path.rbegin(), path.rend());
      return result;
    }
    for (auto& next : expand(nodes[current].state)) admit(std::move(next), current);
  }
  result.verdict = Verdict::Empty;
  return result;
}

bool meets(const Edbm& z, const Edbm& target, bool literal) {
  return literal ? includes(target, z) : !intersect(z, target).is_empty();
}

}  // namespace

AnalysisResult forw_exact(const Ecta& a, const AnalysisOptions& options) {
  const Edbm finals = final_zone(a.clocks());
  return search(
      {{a.initial(), initial_zone(a.clocks())}}, options.fuel,
      [&](const SymbolicState& s) {
        std::vector<SymbolicState> out;
        for (const auto& e : a.edges())
          for (auto& next : post_edge(a, e, s)) out.push_back(std::move(next));
        return out;
      },
      [&](const SymbolicState& s) {
        return a.is_accepting(s.location) && meets(s.zone, finals, options.literal_accept);
      });
}

AnalysisResult back_exact(const Ecta& a, const AnalysisOptions& options) {
  const Edbm initials = initial_zone(a.clocks());
  std::vector<SymbolicState> seeds;
  for (Location q : a.accepting()) seeds.push_back({q, final_zone(a.clocks())});
  return search(
      std::move(seeds), options.fuel,
      [&](const SymbolicState& s) {
        std::vector<SymbolicState> out;
        for (const auto& e : a.edges())
          for (auto& next : pre_edge(a, e, s)) out.push_back(std::move(next));
        return out;
      },
      [&](const SymbolicState& s) {
        return s.location == a.initial() && meets(s.zone, initials, options.literal_accept);
      });
}

Ecta mirror(const Ecta& a) {
  if (a.accepting().size() != 1)
    throw Error(Errc::Unsupported, "mirror needs exactly one accepting location");
  std::vector<Edge> edges;
  for (const auto& e : a.edges()) edges.push_back({e.target, e.letter, swap_clock_kinds(e.guard), e.source});
  return Ecta(a.alphabet(), a.locations(), *a.accepting().begin(), std::move(edges), {a.initial()});
}

std::set<UntimedWord> bounded_untimed_language(const Ecta& a, const SymbolicState& start, std::size_t k) {
  const Edbm finals = final_zone(a.clocks());
  std::set<UntimedWord> out;
  struct Item {
    UntimedWord word;
    Location location;
    Edbm zone;
  };
  std::vector<Item> layer{{{}, start.location, start.zone}};
  for (std::size_t depth = 0;; ++depth) {
    for (const auto& item : layer)
      if (a.is_accepting(item.location) && !intersect(item.zone, finals).is_empty()) out.insert(item.word);
    if (depth == k) break;
    // Zones reached by the same word at the same location are merged by subsumption.
    std::map<std::pair<UntimedWord, Location>, ZoneSet> next;
    for (const auto& item : layer)
      for (const auto& e : a.edges()) {
        if (e.source != item.location) continue;
        for (auto& z : post_zones(a.clocks(), e, item.zone)) {
          UntimedWord w = item.word;
          w.push_back(e.letter);
          push_unique(next[{std::move(w), e.target}], std::move(z));
        }
      }
    layer.clear();
    for (auto& [key, zones] : next)
      for (auto& z : zones) layer.push_back({key.first, key.second, std::move(z)});
    if (layer.empty()) break;
  }
  return out;
}

std::set<UntimedWord> bounded_untimed_language(const Ecta& a, std::size_t k) {
  return bounded_untimed_language(a, {a.initial(), initial_zone(a.clocks())}, k);
}

}  // namespace ecta
