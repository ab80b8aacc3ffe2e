#include "ecta/regions.hpp"

#include <algorithm>
#include <set>

namespace ecta {

const char* to_string(RegionVariant v) { return v == RegionVariant::Classic ? "classic" : "refined"; }

namespace {

long to_long(const Integer& c) {
  if (!c.fits_slong_p() || c < 0) throw Error(Errc::Unsupported, "cmax out of range");
  return c.get_si();
}

}  // namespace

Region region_of(const Valuation& v, const Integer& cmax, RegionVariant variant) {
  const Rational c(cmax);
  Region r;
  r.variant = variant;
  r.cmax = to_long(cmax);
  r.classes.resize(v.size());

  std::vector<std::pair<Rational, std::size_t>> fracs;
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto& cls = r.classes[i];
    if (!v[i]) continue;
    if (*v[i] > c) {
      cls.kind = ClockClass::Kind::Above;
      continue;
    }
    cls.kind = ClockClass::Kind::Bounded;
    cls.integer_part = floor_of(*v[i]).get_si();
    cls.frac_zero = v[i]->get_den() == 1;
    fracs.emplace_back(frac(v, i), i);
  }
  std::stable_sort(fracs.begin(), fracs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t k = 0; k < fracs.size(); ++k) {
    if (k == 0 || fracs[k].first != fracs[k - 1].first) r.frac_order.emplace_back();
    r.frac_order.back().push_back(fracs[k].second);
  }

  if (variant == RegionVariant::Refined) {
    const Rational wide = 2 * c;
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = i + 1; j < v.size(); ++j) {
        if (!v[i] || !v[j]) continue;
        if (!(*v[i] > c) && !(*v[j] > c)) continue;
        Rational d = *signed_value(v, i) - *signed_value(v, j);
        DiagonalClass dc;
        dc.first = i;
        dc.second = j;
        if (d > wide) {
          dc.kind = DiagonalClass::Kind::FarAbove;
        } else if (d < -wide) {
          dc.kind = DiagonalClass::Kind::FarBelow;
        } else {
          dc.floor = floor_of(d).get_si();
          dc.integral = d.get_den() == 1;
        }
        r.diagonals.push_back(dc);
      }
  }
  return r;
}

bool equivalent(const Valuation& v1, const Valuation& v2, const Integer& cmax, RegionVariant variant) {
  if (!same_clocks(v1.clocks(), v2.clocks())) throw Error(Errc::ClockMismatch, "valuations over different clocks");
  const Rational c(cmax);
  const std::size_t n = v1.size();
  for (std::size_t x = 0; x < n; ++x) {
    if (v1[x].has_value() != v2[x].has_value()) return false;
    if (!v1[x]) continue;
    bool above1 = *v1[x] > c, above2 = *v2[x] > c;
    if (above1 && above2) continue;
    if (floor_of(*v1[x]) != floor_of(*v2[x]) || ceil_of(*v1[x]) != ceil_of(*v2[x])) return false;
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (!v1[x] || !v1[y] || *v1[x] > c || *v1[y] > c) continue;
      if ((frac(v1, x) <= frac(v1, y)) != (frac(v2, x) <= frac(v2, y))) return false;
    }
  if (variant == RegionVariant::Classic) return true;
  const Rational wide = 2 * c;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y || !v1[x] || !v1[y]) continue;
      if (!(*v1[x] > c) && !(*v1[y] > c)) continue;
      Rational d1 = *signed_value(v1, x) - *signed_value(v1, y);
      Rational d2 = *signed_value(v2, x) - *signed_value(v2, y);
      if (d1 > wide && d2 > wide) continue;
      if (d1 < -wide && d2 < -wide) continue;
      if (floor_of(d1) != floor_of(d2) || ceil_of(d1) != ceil_of(d2)) return false;
    }
  return true;
}

namespace {

void tighten(Edbm& m, std::size_t i, std::size_t j, const Bound& b) {
  auto lo = bound_min(m(i, j), b);
  if (!lo) throw Error(Errc::PreconditionViolated, "inconsistent region encoding");
  m.set(i, j, *lo);
}

}  // namespace

Edbm region_to_zone(const Region& r, const ClockSetPtr& clocks) {
  if (r.classes.size() != clocks->size()) throw Error(Errc::ClockMismatch, "region over different clocks");
  Edbm m(clocks);
  const Integer c(r.cmax);
  // Fractional part of a non-integer bounded clock is offset(x) - s(x).
  std::vector<Integer> offset(clocks->size());
  for (std::size_t x = 0; x < clocks->size(); ++x) {
    const std::size_t k = x + 1;
    const bool prophecy = (*clocks)[x].is_prophecy();
    const auto& cls = r.classes[x];
    switch (cls.kind) {
      case ClockClass::Kind::Undefined:
        m.set(k, 0, Bound::undefined());
        m.set(0, k, Bound::undefined());
        break;
      case ClockClass::Kind::Above:
        if (prophecy)
          tighten(m, k, 0, Bound::lt(Integer(-c)));
        else
          tighten(m, 0, k, Bound::lt(Integer(-c)));
        break;
      case ClockClass::Kind::Bounded: {
        const Integer n(cls.integer_part);
        const Integer lo = prophecy ? Integer(-n) : n;  // signed value when integral
        if (cls.frac_zero) {
          tighten(m, k, 0, Bound::le(lo));
          tighten(m, 0, k, Bound::le(Integer(-lo)));
        } else if (prophecy) {
          tighten(m, k, 0, Bound::lt(Integer(-n)));
          tighten(m, 0, k, Bound::lt(Integer(n + 1)));
        } else {
          tighten(m, k, 0, Bound::lt(Integer(n + 1)));
          tighten(m, 0, k, Bound::lt(Integer(-n)));
        }
        offset[x] = prophecy ? Integer(-n) : Integer(n + 1);
        break;
      }
    }
  }

  const std::vector<std::size_t>* previous = nullptr;
  for (const auto& group : r.frac_order) {
    if (r.classes[group.front()].frac_zero) continue;
    for (std::size_t a = 1; a < group.size(); ++a) {
      std::size_t x = group[a - 1], y = group[a];
      tighten(m, y + 1, x + 1, Bound::le(Integer(offset[y] - offset[x])));
      tighten(m, x + 1, y + 1, Bound::le(Integer(offset[x] - offset[y])));
    }
    if (previous) {
      std::size_t x = previous->front(), y = group.front();
      tighten(m, y + 1, x + 1, Bound::lt(Integer(offset[y] - offset[x])));
    }
    previous = &group;
  }

  const Integer wide = 2 * c;
  for (const auto& d : r.diagonals) {
    const std::size_t i = d.first + 1, j = d.second + 1;
    switch (d.kind) {
      case DiagonalClass::Kind::FarAbove: tighten(m, j, i, Bound::lt(Integer(-wide))); break;
      case DiagonalClass::Kind::FarBelow: tighten(m, i, j, Bound::lt(Integer(-wide))); break;
      case DiagonalClass::Kind::Near: {
        const Integer f(d.floor);
        if (d.integral) {
          tighten(m, i, j, Bound::le(f));
          tighten(m, j, i, Bound::le(Integer(-f)));
        } else {
          tighten(m, i, j, Bound::lt(Integer(f + 1)));
          tighten(m, j, i, Bound::lt(Integer(-f)));
        }
        break;
      }
    }
  }
  return normalize(m);
}

std::vector<Region> decompose(const Edbm& z, const Integer& cmax, RegionVariant variant) {
  std::set<Region> found;
  std::vector<Edbm> work;
  if (!z.is_empty()) work.push_back(z);
  while (!work.empty()) {
    Edbm piece = std::move(work.back());
    work.pop_back();
    Region r = region_of(sample(piece), cmax, variant);
    Edbm zone = region_to_zone(r, z.clocks());
    found.insert(std::move(r));
    for (auto& rest : subtract(piece, zone)) work.push_back(std::move(rest));
  }
  return {found.begin(), found.end()};
}

std::vector<Region> initial_regions(const ClockSetPtr& clocks, const Integer& cmax, RegionVariant variant) {
  return decompose(initial_zone(clocks), cmax, variant);
}

bool is_initial(const Region& r, const ClockSet& clocks) {
  for (std::size_t x = 0; x < clocks.size(); ++x)
    if (clocks[x].is_history() && r.classes.at(x).kind != ClockClass::Kind::Undefined) return false;
  return true;
}

bool is_final(const Region& r, const ClockSet& clocks) {
  for (std::size_t x = 0; x < clocks.size(); ++x)
    if (clocks[x].is_prophecy() && r.classes.at(x).kind != ClockClass::Kind::Undefined) return false;
  return true;
}

WeakWitness weak_successor_witness(const Valuation& v1, const Valuation& v2, const Rational& t1,
                                   const Integer& cmax) {
  if (!same_clocks(v1.clocks(), v2.clocks())) throw Error(Errc::ClockMismatch, "valuations over different clocks");
  if (!equivalent(v1, v2, cmax, RegionVariant::Classic))
    throw Error(Errc::NotEquivalent, "valuations are not region equivalent");
  elapse(v1, t1);  // rejects negative or impossible delays

  const ClockSet& clocks = *v1.clocks();
  const Rational c(cmax);
  const auto bounded = [&](const Valuation& u, std::size_t x) { return u[x] && !(*u[x] > c); };
  // Half the smallest nonzero fractional part of u, or 1/2.
  const auto safe_delay = [&](const Valuation& u) {
    std::optional<Rational> least;
    for (std::size_t x = 0; x < u.size(); ++x) {
      if (!bounded(u, x)) continue;
      Rational f = frac(u, x);
      if (f != 0 && (!least || f < *least)) least = f;
    }
    return least ? Rational(*least / 2) : Rational(1, 2);
  };

  Valuation u1 = v1, u2 = v2;
  Rational rest = t1, total = 0;
  while (rest > 0) {
    bool on_boundary = false;
    std::optional<Rational> hit;
    const auto consider = [&](const Rational& d) {
      if (!hit || d < *hit) hit = d;
    };
    for (std::size_t x = 0; x < u1.size(); ++x) {
      if (!u1[x]) continue;
      const Rational& value = *u1[x];
      const bool prophecy = clocks[x].is_prophecy();
      if (value > c) {
        if (prophecy) consider(value - c);
        continue;
      }
      Rational f = frac(u1, x);
      if (f != 0) {
        consider(f);
        continue;
      }
      on_boundary = true;
      if (!prophecy && value < c) consider(1);
      if (prophecy && value >= 1) consider(1);
    }

    Rational d1, d2;
    bool last = !hit || rest < *hit;
    if (!on_boundary) {
      if (last) {
        d1 = rest;
        d2 = 0;
      } else {
        d1 = *hit;
        d2 = safe_delay(u2);
        for (std::size_t x = 0; x < u1.size(); ++x)
          if (bounded(u1, x) && frac(u1, x) == *hit) {
            d2 = frac(u2, x);
            break;
          }
      }
    } else {
      d1 = last ? rest : Rational(*hit / 2);
      d2 = safe_delay(u2);
    }

    Valuation next1 = elapse(u1, d1);
    if (d2 > 0) {
      auto values = u2.values();
      for (std::size_t x = 0; x < u2.size(); ++x)
        if (clocks[x].is_prophecy() && u2[x] && *u2[x] > c)
          values[x] = *next1[x] == c ? Rational(c + d2) : Rational(c + d2 + 1);
      u2 = elapse(Valuation(u2.clocks(), std::move(values)), d2);
    }
    u1 = std::move(next1);
    rest -= d1;
    total += d2;
    if (last) break;
  }
  if (!equivalent(u1, u2, cmax, RegionVariant::Classic) || !weak_successor_contains(v2, total, u2, cmax))
    throw Error(Errc::NotFound, "no weak successor witness found");
  return {total, u2};
}

namespace {

std::string class_text(const ClockClass& cls, long cmax) {
  switch (cls.kind) {
    case ClockClass::Kind::Undefined: return "=bot";
    case ClockClass::Kind::Above: return ">" + std::to_string(cmax);
    case ClockClass::Kind::Bounded:
      if (cls.frac_zero) return "=" + std::to_string(cls.integer_part);
      return " in (" + std::to_string(cls.integer_part) + "," + std::to_string(cls.integer_part + 1) + ")";
  }
  return "";
}

}  // namespace

std::string to_string(const Region& r, const ClockSet& clocks) {
  std::string out;
  for (std::size_t x = 0; x < r.classes.size(); ++x) {
    if (x) out += ", ";
    out += clocks.name(x) + class_text(r.classes[x], r.cmax);
  }
  out += " | frac: ";
  for (std::size_t g = 0; g < r.frac_order.size(); ++g) {
    if (g) out += " < ";
    for (std::size_t k = 0; k < r.frac_order[g].size(); ++k) {
      if (k) out += " = ";
      out += clocks.name(r.frac_order[g][k]);
    }
  }
  if (r.variant == RegionVariant::Refined) {
    out += " | diag:";
    const long wide = 2 * r.cmax;
    for (const auto& d : r.diagonals) {
      out += ' ' + clocks.name(d.first) + '-' + clocks.name(d.second);
      switch (d.kind) {
        case DiagonalClass::Kind::FarAbove: out += ">" + std::to_string(wide); break;
        case DiagonalClass::Kind::FarBelow: out += "<" + std::to_string(-wide); break;
        case DiagonalClass::Kind::Near:
          if (d.integral)
            out += "=" + std::to_string(d.floor);
          else
            out += " in (" + std::to_string(d.floor) + "," + std::to_string(d.floor + 1) + ")";
      }
      out += ';';
    }
  }
  return out;
}

}  // namespace ecta
