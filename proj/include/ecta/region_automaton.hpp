// Finite region automata abstracting an event-clock automaton.
#pragma once

#include "ecta/automaton.hpp"
#include "ecta/regions.hpp"

#include <set>
#include <vector>

namespace ecta {

enum class Quantifier { Existential, Universal };
const char* to_string(Quantifier q);

struct BuildMode {
  Quantifier quantifier = Quantifier::Existential;
  RegionVariant variant = RegionVariant::Classic;
};

struct RaState {
  Location location = 0;
  Region region;

  auto operator<=>(const RaState&) const = default;
};

struct RaEdge {
  std::size_t source = 0;
  std::size_t letter = 0;
  std::size_t target = 0;

  auto operator<=>(const RaEdge&) const = default;
};

/// Only states reachable from the initial states are materialized.
struct RegionAutomaton {
  Alphabet alphabet;
  ClockSetPtr clocks;
  std::vector<std::string> location_names;
  Integer cmax;
  BuildMode mode;
  std::vector<RaState> states;
  std::set<std::size_t> initials;
  std::set<RaEdge> edges;
  std::set<std::size_t> accepting;
};

/// Throws CmaxTooSmall when cmax is below the largest guard constant.
RegionAutomaton build(const Ecta& a, const Integer& cmax, BuildMode mode);

bool ra_accepts(const RegionAutomaton& r, const UntimedWord& w);
bool language_empty(const RegionAutomaton& r);
/// Words of length at most k accepted by r.
std::set<UntimedWord> bounded_language(const RegionAutomaton& r, std::size_t k);

/// m * R(2|alphabet|, cmax + 1) with R(n, c) = n! * 2^n * (2c + 2)^n.
Integer state_count_bound(const Ecta& a, const Integer& cmax);

}  // namespace ecta
