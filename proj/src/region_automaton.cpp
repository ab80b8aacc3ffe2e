#include "ecta/region_automaton.hpp"

#include "ecta/analysis.hpp"

#include <deque>
#include <map>

namespace ecta {

const char* to_string(Quantifier q) { return q == Quantifier::Existential ? "exists" : "forall"; }

namespace {

class Builder {
 public:
  Builder(const Ecta& a, const Integer& cmax, BuildMode mode) : a_(a), cmax_(cmax), mode_(mode) {
    out_.alphabet = a.alphabet();
    out_.clocks = a.clocks();
    out_.location_names = a.locations();
    out_.cmax = cmax;
    out_.mode = mode;
  }

  RegionAutomaton run() {
    for (const auto& r : initial_regions(a_.clocks(), cmax_, mode_.variant))
      out_.initials.insert(intern({a_.initial(), r}));
    while (!queue_.empty()) {
      std::size_t s = queue_.front();
      queue_.pop_front();
      expand(s);
    }
    for (std::size_t s = 0; s < out_.states.size(); ++s) {
      const auto& st = out_.states[s];
      if (a_.is_accepting(st.location) && is_final(st.region, *a_.clocks())) out_.accepting.insert(s);
    }
    return std::move(out_);
  }

 private:
  std::size_t intern(const RaState& st) {
    auto [it, fresh] = index_.emplace(st, out_.states.size());
    if (fresh) {
      out_.states.push_back(st);
      zones_.push_back(region_to_zone(st.region, a_.clocks()));
      queue_.push_back(it->second);
    }
    return it->second;
  }

  void expand(std::size_t s) {
    const RaState source = out_.states[s];
    const Edbm zone = zones_[s];
    // Candidate targets per letter: regions met by some successor zone.
    std::set<std::pair<std::size_t, RaState>> candidates;
    for (std::size_t k = 0; k < a_.edges().size(); ++k) {
      const Edge& e = a_.edges()[k];
      if (e.source != source.location) continue;
      for (const auto& z : post_zones(a_.clocks(), e, zone))
        for (auto& r : decompose(z, cmax_, mode_.variant)) candidates.insert({e.letter, RaState{e.target, std::move(r)}});
    }
    for (const auto& [letter, target] : candidates) {
      if (mode_.quantifier == Quantifier::Universal && !covers(source, zone, letter, target)) continue;
      out_.edges.insert({s, letter, intern(target)});
    }
  }

  // Every valuation of the source region can take some letter-step into
  // the target region.
  bool covers(const RaState& source, const Edbm& zone, std::size_t letter, const RaState& target) const {
    const Edbm target_zone = region_to_zone(target.region, a_.clocks());
    ZoneSet predecessors;
    for (const auto& e : a_.edges()) {
      if (e.source != source.location || e.target != target.location || e.letter != letter) continue;
      for (auto& z : pre_zones(a_.clocks(), e, target_zone)) predecessors.push_back(std::move(z));
    }
    return subtract(zone, predecessors).empty();
  }

  const Ecta& a_;
  Integer cmax_;
  BuildMode mode_;
  RegionAutomaton out_;
  std::map<RaState, std::size_t> index_;
  std::vector<Edbm> zones_;
  std::deque<std::size_t> queue_;
};

}  // namespace

RegionAutomaton build(const Ecta& a, const Integer& cmax, BuildMode mode) {
  if (cmax < a.max_constant())
    throw Error(Errc::CmaxTooSmall, "cmax " + cmax.get_str() + " is below the largest guard constant " +
                                        a.max_constant().get_str());
  return Builder(a, cmax, mode).run();
}

namespace {

std::set<std::size_t> step(const RegionAutomaton& r, const std::set<std::size_t>& from, std::size_t letter) {
  std::set<std::size_t> out;
  for (const auto& e : r.edges)
    if (e.letter == letter && from.count(e.source)) out.insert(e.target);
  return out;
}

bool any_accepting(const RegionAutomaton& r, const std::set<std::size_t>& states) {
  for (std::size_t s : states)
    if (r.accepting.count(s)) return true;
  return false;
}

}  // namespace

bool ra_accepts(const RegionAutomaton& r, const UntimedWord& w) {
  std::set<std::size_t> current = r.initials;
  for (std::size_t letter : w) {
    if (letter >= r.alphabet.size()) throw Error(Errc::UnknownLetter, "letter out of range");
    current = step(r, current, letter);
    if (current.empty()) return false;
  }
  return any_accepting(r, current);
}

bool language_empty(const RegionAutomaton& r) {
  std::vector<std::vector<std::size_t>> succ(r.states.size());
  for (const auto& e : r.edges) succ[e.source].push_back(e.target);
  std::vector<bool> seen(r.states.size(), false);
  std::vector<std::size_t> stack(r.initials.begin(), r.initials.end());
  for (std::size_t s : stack) seen[s] = true;
  while (!stack.empty()) {
    std::size_t s = stack.back();
    stack.pop_back();
    if (r.accepting.count(s)) return false;
    for (std::size_t t : succ[s])
      if (!seen[t]) {
        seen[t] = true;
        stack.push_back(t);
      }
  }
  return true;
}

std::set<UntimedWord> bounded_language(const RegionAutomaton& r, std::size_t k) {
  std::set<UntimedWord> out;
  std::vector<std::pair<UntimedWord, std::set<std::size_t>>> layer{{{}, r.initials}};
  for (std::size_t depth = 0;; ++depth) {
    for (const auto& [w, states] : layer)
      if (any_accepting(r, states)) out.insert(w);
    if (depth == k) break;
    std::vector<std::pair<UntimedWord, std::set<std::size_t>>> next;
    for (const auto& [w, states] : layer)
      for (std::size_t letter = 0; letter < r.alphabet.size(); ++letter) {
        auto to = step(r, states, letter);
        if (to.empty()) continue;
        UntimedWord longer = w;
        longer.push_back(letter);
        next.emplace_back(std::move(longer), std::move(to));
      }
    if (next.empty()) break;
    layer = std::move(next);
  }
  return out;
}

Integer state_count_bound(const Ecta& a, const Integer& cmax) {
  const unsigned long n = 2 * a.alphabet().size();
  Integer factorial = 1, two_pow, base_pow;
  for (unsigned long i = 2; i <= n; ++i) factorial *= i;
  mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, n);
  const Integer base = 2 * (cmax + 1) + 2;
  mpz_pow_ui(base_pow.get_mpz_t(), base.get_mpz_t(), n);
  return Integer(a.locations().size()) * factorial * two_pow * base_pow;
}

}  // namespace ecta
