#include "ecta/automaton.hpp"

#include <map>
#include <sstream>

namespace ecta {

Ecta::Ecta(Alphabet alphabet, std::vector<std::string> locations, Location initial, std::vector<Edge> edges,
           std::set<Location> accepting)
    : alphabet_(std::move(alphabet)),
      clocks_(ClockSet::standard(alphabet_)),
      locations_(std::move(locations)),
      initial_(initial),
      edges_(std::move(edges)),
      accepting_(std::move(accepting)) {
  if (locations_.empty()) throw Error(Errc::Parse, "automaton needs at least one location");
  std::set<std::string> names(locations_.begin(), locations_.end());
  if (names.size() != locations_.size()) throw Error(Errc::Parse, "duplicate location name");
  if (initial_ >= locations_.size()) throw Error(Errc::Parse, "initial location out of range");
  for (Location q : accepting_)
    if (q >= locations_.size()) throw Error(Errc::Parse, "accepting location out of range");
  for (const auto& e : edges_) {
    if (e.source >= locations_.size() || e.target >= locations_.size())
      throw Error(Errc::Parse, "edge endpoint out of range");
    if (e.letter >= alphabet_.size()) throw Error(Errc::UnknownLetter, "edge letter out of range");
    for (const auto& c : clocks_of(e.guard))
      if (c.letter >= alphabet_.size()) throw Error(Errc::UnknownClock, "guard clock out of range");
  }
}

Location Ecta::location_index(std::string_view name) const {
  for (Location q = 0; q < locations_.size(); ++q)
    if (locations_[q] == name) return q;
  throw Error(Errc::NotFound, "unknown location '" + std::string(name) + "'");
}

Integer Ecta::max_constant() const {
  Integer m = 0;
  for (const auto& e : edges_) {
    Integer c = ecta::max_constant(e.guard);
    if (c > m) m = c;
  }
  return m;
}

TimedWord::TimedWord(std::vector<TimedEvent> events) : events_(std::move(events)) {
  for (std::size_t i = 0; i < events_.size(); ++i) {
    if (events_[i].time < 0) throw Error(Errc::PreconditionViolated, "negative timestamp");
    if (i > 0 && events_[i].time < events_[i - 1].time)
      throw Error(Errc::PreconditionViolated, "timestamps must be nondecreasing");
  }
}

TimedWord::TimedWord(const Alphabet& alphabet,
                     std::initializer_list<std::pair<std::string_view, std::string_view>> events) {
  std::vector<TimedEvent> out;
  for (const auto& [letter, time] : events) out.push_back({alphabet.index_of(letter), parse_rational(time)});
  *this = TimedWord(std::move(out));
}

UntimedWord untime(const TimedWord& w) {
  UntimedWord out;
  for (const auto& e : w.events()) out.push_back(e.letter);
  return out;
}

std::string to_string(const UntimedWord& w, const Alphabet& alphabet) {
  if (w.empty()) return "";
  bool single_chars = true;
  for (const auto& l : alphabet.letters()) single_chars = single_chars && l.size() == 1;
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i && !single_chars) out += ' ';
    out += alphabet.name(w[i]);
  }
  return out;
}

UntimedWord parse_untimed(std::string_view text, const Alphabet& alphabet) {
  UntimedWord out;
  if (text.find(' ') != std::string_view::npos) {
    std::istringstream in{std::string(text)};
    std::string tok;
    while (in >> tok) out.push_back(alphabet.index_of(tok));
  } else {
    for (char c : text) out.push_back(alphabet.index_of(std::string_view(&c, 1)));
  }
  return out;
}

std::vector<ExtendedState> discrete_step(const Ecta& a, const ExtendedState& s, std::size_t letter,
                                         const ClockValue& next) {
  if (letter >= a.alphabet().size()) throw Error(Errc::UnknownLetter, "letter out of range");
  const auto& clocks = *a.clocks();
  const std::size_t prophecy = clocks.index_of(Clock{letter, ClockKind::Prophecy});
  const std::size_t history = clocks.index_of(Clock{letter, ClockKind::History});
  const auto& current = s.valuation[prophecy];
  if (!current || *current != 0)
    throw Error(Errc::ProphecyNotZero, "prophecy clock " + clocks.name(prophecy) + " must be 0 to read the letter");
  const Valuation guard_valuation = s.valuation.with(prophecy, next);
  std::vector<ExtendedState> out;
  for (const auto& e : a.edges()) {
    if (e.source != s.location || e.letter != letter) continue;
    if (!satisfies(guard_valuation, e.guard)) continue;
    out.push_back({e.target, guard_valuation.with(history, Rational(0))});
  }
  return out;
}

Valuation initial_valuation(const ClockSetPtr& clocks, const TimedWord& w) {
  std::vector<ClockValue> values(clocks->size());
  for (std::size_t i = 0; i < clocks->size(); ++i) {
    const Clock& c = (*clocks)[i];
    if (c.is_history()) continue;
    for (const auto& e : w.events())
      if (e.letter == c.letter) {
        values[i] = e.time;
        break;
      }
  }
  return Valuation(clocks, std::move(values));
}

ClockValue next_occurrence(const TimedWord& w, std::size_t i) {
  for (std::size_t j = i + 1; j < w.size(); ++j)
    if (w[j].letter == w[i].letter) return w[j].time - w[i].time;
  return std::nullopt;
}

std::optional<Run> find_run(const Ecta& a, const TimedWord& w) {
  for (const auto& e : w.events())
    if (e.letter >= a.alphabet().size()) throw Error(Errc::UnknownLetter, "word letter out of range");

  // Valuations are determined by the word, so a layer is just a set of
  // locations; parents record one edge into each.
  std::vector<Valuation> valuations{initial_valuation(a.clocks(), w)};
  std::vector<std::map<Location, std::pair<Location, std::size_t>>> layers(1);
  layers[0][a.initial()] = {a.initial(), 0};
  Rational now = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    Valuation before = elapse(valuations.back(), w[i].time - now);
    now = w[i].time;
    const ClockValue next = next_occurrence(w, i);
    const std::size_t prophecy = a.clocks()->index_of(Clock{w[i].letter, ClockKind::Prophecy});
    const std::size_t history = a.clocks()->index_of(Clock{w[i].letter, ClockKind::History});
    const Valuation guard_valuation = before.with(prophecy, next);
    std::map<Location, std::pair<Location, std::size_t>> layer;
    for (const auto& [q, parent] : layers.back()) {
      for (std::size_t k = 0; k < a.edges().size(); ++k) {
        const auto& e = a.edges()[k];
        if (e.source != q || e.letter != w[i].letter) continue;
        if (satisfies(guard_valuation, e.guard)) layer.emplace(e.target, std::make_pair(q, k));
      }
    }
    if (layer.empty()) return std::nullopt;
    valuations.push_back(guard_valuation.with(history, Rational(0)));
    layers.push_back(std::move(layer));
  }

  std::optional<Location> end;
  for (const auto& [q, parent] : layers.back())
    if (a.is_accepting(q)) {
      end = q;
      break;
    }
  if (!end) return std::nullopt;

  Run run;
  run.valuations = std::move(valuations);
  run.locations.assign(w.size() + 1, 0);
  run.edges.assign(w.size(), 0);
  Location q = *end;
  for (std::size_t i = w.size(); i > 0; --i) {
    run.locations[i] = q;
    auto [prev, edge] = layers[i].at(q);
    run.edges[i - 1] = edge;
    q = prev;
  }
  run.locations[0] = q;
  return run;
}

bool accepts(const Ecta& a, const TimedWord& w) { return find_run(a, w).has_value(); }

std::vector<std::string> builtin_names() { return {"ainf", "backdiv"}; }

Ecta builtin_example(std::string_view name) {
  Alphabet ab({"a", "b"});
  const Clock ha{0, ClockKind::History}, hb{1, ClockKind::History};
  const Clock pa{0, ClockKind::Prophecy}, pb{1, ClockKind::Prophecy};
  if (name == "ainf") {
    std::vector<Edge> edges{
        {0, 1, Guard::atom(pb, Cmp::Equal, 1) && Guard::atom(pa, Cmp::Greater, 1), 0},
        {0, 1, Guard::atom(pa, Cmp::Equal, 1) && !Guard::atom(pb, Cmp::Less, 1), 0},
        {0, 0, Guard::atom(hb, Cmp::Equal, 1), 1},
    };
    return Ecta(ab, {"q0", "q1"}, 0, std::move(edges), {1});
  }
  if (name == "backdiv") {
    // The entry edge requires p.b < 1 while the exit to q2 requires p.b = 1
    // with no b in between, so the language is empty. The loop fixes the gap
    // between consecutive a's, so each backward iteration yields a zone with
    // a larger exact p.b + h.a and no zone subsumes another.
    std::vector<Edge> edges{
        {0, 0, Guard::atom(pb, Cmp::Less, 1), 1},
        {1, 0, Guard::atom(ha, Cmp::Equal, 1) && Guard::atom(pa, Cmp::Equal, 1), 1},
        {1, 0, Guard::atom(pb, Cmp::Equal, 1), 2},
        {2, 1, Guard::truth(), 2},
    };
    return Ecta(ab, {"q0", "q1", "q2"}, 0, std::move(edges), {2});
  }
  throw Error(Errc::NotFound, "no builtin automaton named '" + std::string(name) + "'");
}

}  // namespace ecta
