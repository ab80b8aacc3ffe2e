// Symbolic successor/predecessor computation over (location, zone) pairs and
// the forward and backward reachability semi-algorithms.
#pragma once

#include "ecta/automaton.hpp"
#include "ecta/edbm.hpp"

#include <optional>
#include <set>
#include <vector>

namespace ecta {

struct SymbolicState {
  Location location = 0;
  Edbm zone;
};

/// Valuations reachable by letting time pass from `z` and then firing `e`.
ZoneSet post_zones(const ClockSetPtr& clocks, const Edge& e, const Edbm& z);
/// Valuations from which time passage followed by `e` reaches `z`.
ZoneSet pre_zones(const ClockSetPtr& clocks, const Edge& e, const Edbm& z);

/// Empty unless e.source is s.location.
std::vector<SymbolicState> post_edge(const Ecta& a, const Edge& e, const SymbolicState& s);
/// Empty unless e.target is s.location.
std::vector<SymbolicState> pre_edge(const Ecta& a, const Edge& e, const SymbolicState& s);

enum class Verdict { NonEmpty, Empty, Unknown };
const char* to_string(Verdict v);

struct AnalysisOptions {
  std::size_t fuel = 10000;
  /// Accept only when the zone is contained in the target zone instead of
  /// merely meeting it.
  bool literal_accept = false;
};

struct AnalysisResult {
  Verdict verdict = Verdict::Unknown;
  std::size_t steps = 0;  // dequeued states
  /// For NonEmpty: the states from the search origin to the hit, in search order.
  std::optional<std::vector<SymbolicState>> witness;
};

AnalysisResult forw_exact(const Ecta& a, const AnalysisOptions& options = {});
AnalysisResult back_exact(const Ecta& a, const AnalysisOptions& options = {});

/// Reverses edges, swaps clock kinds in guards and exchanges the roles of
/// the initial and the single accepting location.
Ecta mirror(const Ecta& a);

/// Untimed words of length at most k accepted from some valuation of the
/// start state.
std::set<UntimedWord> bounded_untimed_language(const Ecta& a, const SymbolicState& start, std::size_t k);
/// Same, from the initial location and all initial valuations.
std::set<UntimedWord> bounded_untimed_language(const Ecta& a, std::size_t k);

}  // namespace ecta
