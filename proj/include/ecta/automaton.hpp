// Event-clock automata, their concrete step relation and timed-word membership.
#pragma once

#include "ecta/core.hpp"
#include "ecta/guard.hpp"

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ecta {

using Location = std::size_t;

struct Edge {
  Location source = 0;
  std::size_t letter = 0;
  Guard guard;
  Location target = 0;
};

class Ecta {
 public:
  Ecta(Alphabet alphabet, std::vector<std::string> locations, Location initial, std::vector<Edge> edges,
       std::set<Location> accepting);

  const Alphabet& alphabet() const { return alphabet_; }
  const ClockSetPtr& clocks() const { return clocks_; }
  const std::vector<std::string>& locations() const { return locations_; }
  const std::string& location_name(Location q) const { return locations_.at(q); }
  Location location_index(std::string_view name) const;
  Location initial() const { return initial_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::set<Location>& accepting() const { return accepting_; }
  bool is_accepting(Location q) const { return accepting_.count(q) != 0; }

  /// Largest constant appearing in any guard.
  Integer max_constant() const;

 private:
  Alphabet alphabet_;
  ClockSetPtr clocks_;
  std::vector<std::string> locations_;
  Location initial_;
  std::vector<Edge> edges_;
  std::set<Location> accepting_;
};

struct ExtendedState {
  Location location = 0;
  Valuation valuation;
};

struct TimedEvent {
  std::size_t letter = 0;
  Rational time;
};

/// Finite timed word; times are nondecreasing.
class TimedWord {
 public:
  TimedWord() = default;
  explicit TimedWord(std::vector<TimedEvent> events);
  TimedWord(const Alphabet& alphabet, std::initializer_list<std::pair<std::string_view, std::string_view>> events);

  std::size_t size() const { return events_.size(); }
  bool empty() const { return events_.empty(); }
  const TimedEvent& operator[](std::size_t i) const { return events_[i]; }
  const std::vector<TimedEvent>& events() const { return events_; }

 private:
  std::vector<TimedEvent> events_;
};

using UntimedWord = std::vector<std::size_t>;
UntimedWord untime(const TimedWord& w);
std::string to_string(const UntimedWord& w, const Alphabet& alphabet);
UntimedWord parse_untimed(std::string_view text, const Alphabet& alphabet);

/// Fires every letter-labelled edge out of s whose guard holds for
/// v[p.letter := next]; the history clock of the letter is then reset.
std::vector<ExtendedState> discrete_step(const Ecta& a, const ExtendedState& s, std::size_t letter,
                                         const ClockValue& next);

/// Clock values are fixed by the word: this is the valuation at time 0.
Valuation initial_valuation(const ClockSetPtr& clocks, const TimedWord& w);
/// Time until the next occurrence of the letter read at position i, if any.
ClockValue next_occurrence(const TimedWord& w, std::size_t i);

struct Run {
  std::vector<Location> locations;    // size n+1
  std::vector<std::size_t> edges;     // indices into Ecta::edges(), size n
  std::vector<Valuation> valuations;  // state after each event, valuations[0] is the start
};

std::optional<Run> find_run(const Ecta& a, const TimedWord& w);
bool accepts(const Ecta& a, const TimedWord& w);

std::vector<std::string> builtin_names();
/// "ainf" (unbounded b-loop before a) or "backdiv" (diverging backward analysis).
Ecta builtin_example(std::string_view name);

}  // namespace ecta
