// Shared fixtures and brute-force oracles for the test suites.
#pragma once

#include "ecta/analysis.hpp"
#include "ecta/edbm.hpp"
#include "ecta/regions.hpp"

#include <algorithm>
#include <random>

namespace ecta::testing {

inline ClockSetPtr clocks_ab() { return ClockSet::standard(Alphabet({"a", "b"})); }
inline ClockSetPtr clocks_a() { return ClockSet::standard(Alphabet({"a"})); }

inline Rational q(const char* text) { return parse_rational(text); }

inline Rational ratio(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Membership read straight off the cells, without closure.
inline bool cellwise_member(const Edbm& m, const Valuation& v) {
  if (m.is_empty()) return false;
  const auto signed_at = [&](std::size_t i) -> ClockValue {
    if (i == 0) return Rational(0);
    return signed_value(v, i - 1);
  };
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) {
      const Bound& b = m(i, j);
      if (b.is_free()) continue;
      if (b.is_undefined()) {
        const std::size_t k = i == 0 ? j : i;
        if (signed_at(k)) return false;
        continue;
      }
      const ClockValue x = signed_at(i), y = signed_at(j);
      if (!x || !y) return false;
      if (b.is_finite()) {
        const Rational d = *x - *y;
        if (b.strict ? !(d < b.value) : !(d <= b.value)) return false;
      }
    }
  return true;
}

// Some clock of the given kind is left entirely unconstrained.
inline bool has_free_clock(const Edbm& m, ClockKind kind) {
  if (m.is_empty()) return false;
  for (std::size_t k = 1; k < m.dim(); ++k)
    if ((*m.clocks())[k - 1].kind == kind && m(0, k).is_free() && m(k, 0).is_free()) return true;
  return false;
}

// Valuation moved back by d: history clocks lose d, prophecy clocks gain d.
inline std::optional<Valuation> rewind(const Valuation& v, const Rational& d) {
  std::vector<ClockValue> out = v.values();
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!out[i]) continue;
    out[i] = (*v.clocks())[i].is_history() ? Rational(*out[i] - d) : Rational(*out[i] + d);
    if (*out[i] < 0) return std::nullopt;
  }
  return Valuation(v.clocks(), out);
}

inline std::optional<Valuation> advance(const Valuation& v, const Rational& d) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] && (*v.clocks())[i].is_prophecy() && *v[i] < d) return std::nullopt;
  return elapse(v, d);
}

// Completes a sorted set of breakpoints with the midpoints between them and
// one point beyond, dropping negatives. A set cut out by constraints whose
// boundaries are among the breakpoints meets one of these points when it is
// nonempty.
inline std::vector<Rational> around(std::vector<Rational> points) {
  points.push_back(0);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::vector<Rational> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i] >= 0) out.push_back(points[i]);
    if (i + 1 < points.size() && points[i + 1] > 0) out.push_back((points[i] + points[i + 1]) / 2);
  }
  out.push_back(points.back() + 1);
  return out;
}

// Letting time pass shifts every defined signed value by the same amount, so
// only border cells and the values themselves bound the delay.
inline std::vector<Rational> delay_candidates(const Edbm& z, const Valuation& v) {
  std::vector<Rational> points;
  for (std::size_t k = 1; k < z.dim(); ++k) {
    const ClockValue s = signed_value(v, k - 1);
    if (!s) continue;
    points.push_back(*v[k - 1]);
    for (const Bound& b : {z(0, k), z(k, 0)})
      if (b.is_finite())
        for (int sign : {-1, 1}) {
          points.push_back(*s + sign * Rational(b.value));
          points.push_back(-*s + sign * Rational(b.value));
        }
  }
  return around(points);
}

inline bool future_member(const Edbm& z, const Valuation& v) {
  for (const auto& d : delay_candidates(z, v))
    if (auto u = rewind(v, d); u && cellwise_member(z, *u)) return true;
  return false;
}

inline bool past_member(const Edbm& z, const Valuation& v) {
  for (const auto& d : delay_candidates(z, v))
    if (auto u = advance(v, d); u && cellwise_member(z, *u)) return true;
  return false;
}

inline bool release_member(const Edbm& z, std::size_t clock, const Valuation& v) {
  if (cellwise_member(z, v.with(clock, std::nullopt))) return true;
  const std::size_t k = clock + 1;
  std::vector<Rational> points;
  for (std::size_t j = 0; j < z.dim(); ++j) {
    const ClockValue s = j == 0 ? ClockValue(Rational(0)) : signed_value(v, j - 1);
    if (!s || j == k) continue;
    for (const Bound& b : {z(k, j), z(j, k)})
      if (b.is_finite())
        for (int sign : {-1, 1}) {
          points.push_back(*s + sign * Rational(b.value));
          points.push_back(-*s - sign * Rational(b.value));
        }
  }
  for (const auto& x : around(points))
    if (cellwise_member(z, v.with(clock, x))) return true;
  return false;
}

inline ClockValue random_grid_value(std::mt19937_64& rng, long max = 5, long denominator = 4) {
  std::uniform_int_distribution<long> pick(-1, max * denominator);
  const long k = pick(rng);
  if (k < 0) return std::nullopt;
  return ratio(k, denominator);
}

inline Valuation random_grid_valuation(const ClockSetPtr& clocks, std::mt19937_64& rng, long max = 5,
                                       long denominator = 4) {
  std::vector<ClockValue> values;
  for (std::size_t i = 0; i < clocks->size(); ++i) values.push_back(random_grid_value(rng, max, denominator));
  return Valuation(clocks, values);
}

// A random normalized zone with constants in [-max_const, max_const].
inline Edbm random_zone(const ClockSetPtr& clocks, std::mt19937_64& rng, long max_const = 3) {
  const std::size_t n = clocks->size() + 1;
  std::uniform_int_distribution<int> percent(0, 99);
  std::uniform_int_distribution<long> constant(0, max_const);
  const auto random_bound = [&](bool allow_negative) {
    long c = constant(rng);
    if (allow_negative && percent(rng) < 50) c = -c;
    return percent(rng) < 50 ? Bound::le(c) : Bound::lt(c);
  };
  for (;;) {
    Edbm m(clocks);
    for (std::size_t k = 1; k < n; ++k) {
      const int roll = percent(rng);
      if (roll < 15) {
        m.set(0, k, Bound::undefined());
        m.set(k, 0, Bound::undefined());
      } else if (roll < 30) {
        continue;
      } else {
        const bool prophecy = (*clocks)[k - 1].is_prophecy();
        // Upper bound on the value, then a lower bound, in signed form.
        if (percent(rng) < 70) {
          Bound b = random_bound(false);
          if (prophecy) m.set(0, k, b); else m.set(k, 0, b);
        } else {
          m.set(prophecy ? 0 : k, prophecy ? k : 0, Bound::infinity());
        }
        if (percent(rng) < 50) {
          Bound b = random_bound(false);
          b.value = -b.value;
          if (prophecy) m.set(k, 0, b); else m.set(0, k, b);
        }
      }
    }
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 1; j < n; ++j)
        if (i != j && percent(rng) < 12 && !m(0, i).is_undefined() && !m(0, j).is_undefined())
          m.set(i, j, random_bound(true));
    Edbm z = normalize(m);
    if (!z.is_empty() || percent(rng) < 5) return z;
  }
}

// Points to probe a zone with: grid points plus points drawn from the zone.
inline std::vector<Valuation> probe_points(const ClockSetPtr& clocks, const ZoneSet& zones, std::mt19937_64& rng,
                                           std::size_t grid_count = 300, std::size_t per_zone = 12) {
  std::vector<Valuation> out;
  for (std::size_t i = 0; i < grid_count; ++i) out.push_back(random_grid_valuation(clocks, rng));
  for (const auto& z : zones) {
    if (z.is_empty()) continue;
    out.push_back(sample(z));
    for (std::size_t i = 0; i < per_zone; ++i) out.push_back(sample_random(z, rng));
  }
  return out;
}

// Small random automaton over {a, b} with guard constants up to max_const.
inline Ecta random_ecta(std::mt19937_64& rng, std::size_t max_locations = 3, long max_const = 2) {
  const Alphabet ab({"a", "b"});
  std::uniform_int_distribution<std::size_t> count(1, max_locations);
  const std::size_t m = count(rng);
  std::uniform_int_distribution<std::size_t> loc(0, m - 1), letter(0, 1), clock(0, 1);
  std::uniform_int_distribution<int> pct(0, 99), cmp(0, 2);
  std::uniform_int_distribution<long> constant(0, max_const);
  const auto random_atom = [&] {
    const Clock c{letter(rng), clock(rng) == 0 ? ClockKind::History : ClockKind::Prophecy};
    return Guard::atom(c, static_cast<Cmp>(cmp(rng)), constant(rng));
  };
  const auto random_guard = [&] {
    const int roll = pct(rng);
    if (roll < 20) return Guard::truth();
    Guard g = random_atom();
    if (roll < 45) return g;
    if (roll < 70) return g && random_atom();
    if (roll < 85) return !g;
    return g || random_atom();
  };
  std::vector<std::string> names;
  for (std::size_t i = 0; i < m; ++i) names.push_back("q" + std::to_string(i));
  std::vector<Edge> edges;
  std::uniform_int_distribution<std::size_t> edge_count(1, 2 * m + 1);
  const std::size_t k = edge_count(rng);
  for (std::size_t i = 0; i < k; ++i) edges.push_back({loc(rng), letter(rng), random_guard(), loc(rng)});
  std::set<Location> accepting{loc(rng)};
  if (pct(rng) < 30) accepting.insert(loc(rng));
  return Ecta(ab, names, 0, std::move(edges), std::move(accepting));
}

}  // namespace ecta::testing
