// Region equivalences on event-clock valuations and their canonical encoding.
#pragma once

#include "ecta/core.hpp"
#include "ecta/edbm.hpp"

#include <compare>
#include <string>
#include <vector>

namespace ecta {

/// Classic: integer parts, undefinedness and the order of fractional parts.
/// Refined additionally tracks signed differences for pairs involving a
/// clock above cmax.
enum class RegionVariant { Classic, Refined };

const char* to_string(RegionVariant v);

struct ClockClass {
  enum class Kind { Undefined, Bounded, Above };
  Kind kind = Kind::Undefined;
  long integer_part = 0;  // Bounded only
  bool frac_zero = false;  // Bounded only

  auto operator<=>(const ClockClass&) const = default;
};

struct DiagonalClass {
  enum class Kind { Near, FarAbove, FarBelow };
  std::size_t first = 0, second = 0;  // clock indices, first < second
  Kind kind = Kind::Near;
  long floor = 0;  // Near only: floor of s(first) - s(second)
  bool integral = false;

  auto operator<=>(const DiagonalClass&) const = default;
};

struct Region {
  RegionVariant variant = RegionVariant::Classic;
  long cmax = 0;
  std::vector<ClockClass> classes;
  /// Bounded clocks grouped by equal fractional part, ascending. When some
  /// bounded clock is an integer, the first group holds exactly those.
  std::vector<std::vector<std::size_t>> frac_order;
  std::vector<DiagonalClass> diagonals;  // Refined only, sorted

  auto operator<=>(const Region&) const = default;
};

Region region_of(const Valuation& v, const Integer& cmax, RegionVariant variant);
/// Clause-by-clause equivalence test, independent of the encoding.
bool equivalent(const Valuation& v1, const Valuation& v2, const Integer& cmax, RegionVariant variant);
Edbm region_to_zone(const Region& r, const ClockSetPtr& clocks);
/// Regions meeting a zone.
std::vector<Region> decompose(const Edbm& z, const Integer& cmax, RegionVariant variant);
std::vector<Region> initial_regions(const ClockSetPtr& clocks, const Integer& cmax, RegionVariant variant);
bool is_initial(const Region& r, const ClockSet& clocks);
bool is_final(const Region& r, const ClockSet& clocks);

struct WeakWitness {
  Rational delay;
  Valuation valuation;
};

/// Given classically equivalent v1, v2 and a delay t1, finds t2 and a weak
/// time successor v' of v2 after t2 equivalent to v1 + t1.
WeakWitness weak_successor_witness(const Valuation& v1, const Valuation& v2, const Rational& t1,
                                   const Integer& cmax);

std::string to_string(const Region& r, const ClockSet& clocks);

}  // namespace ecta
