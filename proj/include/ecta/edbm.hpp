// Event zones as difference-bound matrices over signed clock values.
//
// Matrix index 0 is the zero reference; index k >= 1 is clock k-1 of the
// clock set. Cell (i,j) bounds s(x_i) - s(x_j) where s negates prophecy
// clocks. A numeric cell forces both clocks to be defined, (bot,=) on the
// border forces a clock to be undefined and (?,=) imposes nothing.
#pragma once

#include "ecta/core.hpp"
#include "ecta/guard.hpp"

#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace ecta {

struct Bound {
  enum class Kind { Finite, Infinity, Undefined, Free };

  Kind kind = Kind::Free;
  Integer value;  // Finite only
  bool strict = false;

  static Bound le(const Integer& c) { return {Kind::Finite, c, false}; }
  static Bound lt(const Integer& c) { return {Kind::Finite, c, true}; }
  static Bound le(long c) { return le(Integer(c)); }
  static Bound lt(long c) { return lt(Integer(c)); }
  static Bound infinity() { return {Kind::Infinity, 0, true}; }
  static Bound undefined() { return {Kind::Undefined, 0, false}; }
  static Bound free() { return {Kind::Free, 0, false}; }

  bool is_numeric() const { return kind == Kind::Finite || kind == Kind::Infinity; }
  bool is_finite() const { return kind == Kind::Finite; }
  bool is_undefined() const { return kind == Kind::Undefined; }
  bool is_free() const { return kind == Kind::Free; }

  bool operator==(const Bound& o) const;
};

/// Partial order on bounds; (bot,=) and numeric bounds are incomparable.
bool bound_le(const Bound& a, const Bound& b);
/// Smaller of two comparable bounds; nullopt when incomparable.
std::optional<Bound> bound_min(const Bound& a, const Bound& b);
/// Sum of two numeric bounds.
Bound bound_add(const Bound& a, const Bound& b);
std::string to_string(const Bound& b);
Bound parse_bound(std::string_view token);

class Edbm {
 public:
  /// Unconstrained zone: every cell (?,=) except (0,0) = (0,<=).
  explicit Edbm(ClockSetPtr clocks);
  Edbm(ClockSetPtr clocks, std::vector<Bound> cells);

  static Edbm universe(ClockSetPtr clocks) { return Edbm(std::move(clocks)); }
  /// Canonical empty matrix: (-1,<) at (0,0), (?,=) elsewhere.
  static Edbm empty(ClockSetPtr clocks);

  const ClockSetPtr& clocks() const { return clocks_; }
  std::size_t dim() const { return dim_; }
  const Bound& operator()(std::size_t i, std::size_t j) const { return cells_[i * dim_ + j]; }
  void set(std::size_t i, std::size_t j, Bound b) { cells_[i * dim_ + j] = std::move(b); }
  const std::vector<Bound>& cells() const { return cells_; }

  /// True for the canonical empty matrix; meaningful on normalized matrices.
  bool is_empty() const;

  bool operator==(const Edbm& o) const;

 private:
  ClockSetPtr clocks_;
  std::size_t dim_;
  std::vector<Bound> cells_;
};

using ZoneSet = std::vector<Edbm>;

bool contains(const Edbm& m, const Valuation& v);
Edbm normalize(const Edbm& m);

Edbm future(const Edbm& m);
Edbm past(const Edbm& m);
Edbm intersect(const Edbm& a, const Edbm& b);
/// Frees clock `clock` (a clock-set index, not a matrix index).
Edbm release(const Edbm& m, std::size_t clock);
Edbm release(const Edbm& m, const Clock& clock);
/// True iff every valuation of `inner` lies in `outer`.
bool includes(const Edbm& outer, const Edbm& inner);
/// Disjoint normalized pieces covering [[a]] minus [[b]].
ZoneSet subtract(const Edbm& a, const Edbm& b);
/// Subtracts every zone of `bs` in turn.
ZoneSet subtract(const Edbm& a, const ZoneSet& bs);

/// Deterministic member of a nonempty normalized zone.
Valuation sample(const Edbm& m);
/// Random member of a nonempty normalized zone.
Valuation sample_random(const Edbm& m, std::mt19937_64& rng);

/// Zone of a single literal (x < c, x = c, x > c or x undefined).
Edbm literal_zone(const ClockSetPtr& clocks, const GuardLiteral& lit);
Edbm literal_zone(const ClockSetPtr& clocks, const Clock& clock, Cmp op, long bound);
Edbm undefined_zone(const ClockSetPtr& clocks, const Clock& clock);
ZoneSet guard_to_zones(const Guard& g, const ClockSetPtr& clocks);

/// All history clocks undefined.
Edbm initial_zone(const ClockSetPtr& clocks);
/// All prophecy clocks undefined.
Edbm final_zone(const ClockSetPtr& clocks);
/// The single valuation v; defined values must be integers.
Edbm point_zone(const Valuation& v);

/// Row-major cells, rows separated by " | ".
std::string to_string(const Edbm& m);
/// Accepts the output of to_string; separators '|' ';' and newlines are optional.
Edbm parse_edbm(const ClockSetPtr& clocks, std::string_view text);

}  // namespace ecta
