#include "ecta/edbm.hpp"

#include <algorithm>
#include <sstream>

namespace ecta {

bool Bound::operator==(const Bound& o) const {
  if (kind != o.kind) return false;
  if (kind == Kind::Finite) return value == o.value && strict == o.strict;
  return true;
}

bool bound_le(const Bound& a, const Bound& b) {
  if (b.is_free()) return true;
  if (a.is_numeric() && b.is_numeric()) {
    if (a.kind == Bound::Kind::Infinity) return b.kind == Bound::Kind::Infinity;
    if (b.kind == Bound::Kind::Infinity) return true;
    if (a.value != b.value) return a.value < b.value;
    return a.strict == b.strict || !b.strict;
  }
  return a.kind == b.kind;  // (bot,=) against itself
}

std::optional<Bound> bound_min(const Bound& a, const Bound& b) {
  if (bound_le(a, b)) return a;
  if (bound_le(b, a)) return b;
  return std::nullopt;
}

Bound bound_add(const Bound& a, const Bound& b) {
  if (!a.is_numeric() || !b.is_numeric()) throw Error(Errc::PreconditionViolated, "adding non-numeric bounds");
  if (a.kind == Bound::Kind::Infinity || b.kind == Bound::Kind::Infinity) return Bound::infinity();
  return {Bound::Kind::Finite, a.value + b.value, a.strict || b.strict};
}

std::string to_string(const Bound& b) {
  switch (b.kind) {
    case Bound::Kind::Finite: return (b.strict ? "<" : "<=") + b.value.get_str();
    case Bound::Kind::Infinity: return "<inf";
    case Bound::Kind::Undefined: return "bot";
    case Bound::Kind::Free: return "?";
  }
  return "?";
}

Bound parse_bound(std::string_view token) {
  if (token == "?") return Bound::free();
  if (token == "bot") return Bound::undefined();
  if (token == "<inf") return Bound::infinity();
  bool strict;
  if (token.starts_with("<=")) {
    strict = false;
    token.remove_prefix(2);
  } else if (token.starts_with("<")) {
    strict = true;
    token.remove_prefix(1);
  } else {
    throw Error(Errc::Parse, "malformed bound '" + std::string(token) + "'");
  }
  std::string digits(token);
  std::size_t start = !digits.empty() && digits[0] == '-' ? 1 : 0;
  if (start == digits.size() ||
      !std::all_of(digits.begin() + start, digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw Error(Errc::Parse, "malformed bound constant '" + digits + "'");
  return {Bound::Kind::Finite, Integer(digits), strict};
}

Edbm::Edbm(ClockSetPtr clocks)
    : clocks_(std::move(clocks)), dim_(clocks_->size() + 1), cells_(dim_ * dim_, Bound::free()) {
  cells_[0] = Bound::le(0);
}

Edbm::Edbm(ClockSetPtr clocks, std::vector<Bound> cells)
    : clocks_(std::move(clocks)), dim_(clocks_->size() + 1), cells_(std::move(cells)) {
  if (cells_.size() != dim_ * dim_) throw Error(Errc::ClockMismatch, "matrix size does not match clock set");
  for (std::size_t i = 1; i < dim_; ++i)
    for (std::size_t j = 1; j < dim_; ++j)
      if (cells_[i * dim_ + j].is_undefined())
        throw Error(Errc::PreconditionViolated, "(bot,=) is only allowed in row or column 0");
}

Edbm Edbm::empty(ClockSetPtr clocks) {
  Edbm m(std::move(clocks));
  m.cells_.assign(m.dim_ * m.dim_, Bound::free());
  m.cells_[0] = Bound::lt(-1);
  return m;
}

bool Edbm::is_empty() const { return cells_[0] == Bound::lt(-1); }

bool Edbm::operator==(const Edbm& o) const { return same_clocks(clocks_, o.clocks_) && cells_ == o.cells_; }

namespace {

void check_same(const Edbm& a, const Edbm& b) {
  if (!same_clocks(a.clocks(), b.clocks())) throw Error(Errc::ClockMismatch, "zones over different clock sets");
}

bool is_prophecy_index(const Edbm& m, std::size_t k) { return k > 0 && (*m.clocks())[k - 1].is_prophecy(); }
bool is_history_index(const Edbm& m, std::size_t k) { return k > 0 && (*m.clocks())[k - 1].is_history(); }

// Weakest bound forcing both clocks to be defined.
Bound defined_bound(const Edbm& m, std::size_t i, std::size_t j) {
  bool upper_side = i == 0 || is_prophecy_index(m, i);
  bool lower_side = j == 0 || is_history_index(m, j);
  return upper_side && lower_side ? Bound::le(0) : Bound::infinity();
}

bool satisfies_bound(const Rational& diff, const Bound& b) {
  if (b.kind == Bound::Kind::Infinity) return true;
  const Rational c(b.value);
  return b.strict ? diff < c : diff <= c;
}

}  // namespace

bool contains(const Edbm& m, const Valuation& v) {
  if (!same_clocks(m.clocks(), v.clocks())) throw Error(Errc::ClockMismatch, "valuation over different clocks");
  const std::size_t n = m.dim();
  std::vector<ClockValue> s(n);
  s[0] = Rational(0);
  for (std::size_t k = 1; k < n; ++k) s[k] = signed_value(v, k - 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Bound& b = m(i, j);
      switch (b.kind) {
        case Bound::Kind::Free: break;
        case Bound::Kind::Undefined:
          if (s[i == 0 ? j : i]) return false;
          break;
        default:
          if (!s[i] || !s[j]) return false;
          if (!satisfies_bound(*s[i] - *s[j], b)) return false;
      }
    }
  return true;
}

Edbm normalize(const Edbm& input) {
  Edbm m = input;
  const std::size_t n = m.dim();
  const auto empty = [&] { return Edbm::empty(m.clocks()); };

  for (std::size_t i = 1; i < n; ++i) {
    const Bound &row = m(i, 0), &col = m(0, i);
    if (!row.is_undefined() && !col.is_undefined()) continue;
    if (row.is_numeric() || col.is_numeric()) return empty();
    for (std::size_t j = 1; j < n; ++j)
      if (!m(i, j).is_free() || !m(j, i).is_free()) return empty();
    m.set(i, 0, Bound::undefined());
    m.set(0, i, Bound::undefined());
  }

  std::vector<std::size_t> s{0};
  for (std::size_t i = 1; i < n; ++i) {
    bool constrained = m(i, 0).is_numeric() || m(0, i).is_numeric();
    for (std::size_t j = 1; j < n && !constrained; ++j) constrained = m(i, j).is_numeric() || m(j, i).is_numeric();
    if (constrained) s.push_back(i);
  }

  for (std::size_t i : s)
    for (std::size_t j : s)
      if (m(i, j).is_free() || bound_le(defined_bound(m, i, j), m(i, j))) m.set(i, j, defined_bound(m, i, j));
  for (std::size_t i : s)
    if (bound_le(Bound::le(0), m(i, i))) m.set(i, i, Bound::le(0));

  for (std::size_t k : s)
    for (std::size_t i : s) {
      if (m(i, k).kind == Bound::Kind::Infinity) continue;
      for (std::size_t j : s) {
        if (m(k, j).kind == Bound::Kind::Infinity) continue;
        Bound via = bound_add(m(i, k), m(k, j));
        if (!bound_le(m(i, j), via)) m.set(i, j, std::move(via));
      }
    }

  for (std::size_t i : s)
    if (!bound_le(Bound::le(0), m(i, i))) return empty();
  return m;
}

Edbm future(const Edbm& input) {
  if (input.is_empty()) return input;
  Edbm m = input;
  for (std::size_t i = 1; i < m.dim(); ++i)
    if (m(i, 0).is_numeric()) m.set(i, 0, is_prophecy_index(m, i) ? Bound::le(0) : Bound::infinity());
  return normalize(m);
}

Edbm past(const Edbm& input) {
  if (input.is_empty()) return input;
  Edbm m = input;
  for (std::size_t j = 1; j < m.dim(); ++j)
    if (m(0, j).is_numeric()) m.set(0, j, is_prophecy_index(m, j) ? Bound::infinity() : Bound::le(0));
  return normalize(m);
}

Edbm intersect(const Edbm& a, const Edbm& b) {
  check_same(a, b);
  if (a.is_empty()) return a;
  if (b.is_empty()) return b;
  Edbm m = a;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) {
      auto lo = bound_min(a(i, j), b(i, j));
      if (!lo) return Edbm::empty(a.clocks());
      m.set(i, j, std::move(*lo));
    }
  return normalize(m);
}

Edbm release(const Edbm& input, std::size_t clock) {
  if (clock >= input.clocks()->size()) throw Error(Errc::UnknownClock, "clock index out of range");
  if (input.is_empty()) return input;
  Edbm m = input;
  const std::size_t k = clock + 1;
  for (std::size_t j = 0; j < m.dim(); ++j) {
    m.set(k, j, Bound::free());
    m.set(j, k, Bound::free());
  }
  return normalize(m);
}

Edbm release(const Edbm& m, const Clock& clock) { return release(m, m.clocks()->index_of(clock)); }

bool includes(const Edbm& outer, const Edbm& inner) {
  check_same(outer, inner);
  if (inner.is_empty()) return true;
  if (outer.is_empty()) return false;
  for (std::size_t i = 0; i < inner.dim(); ++i)
    for (std::size_t j = 0; j < inner.dim(); ++j)
      if (!bound_le(inner(i, j), outer(i, j))) return false;
  return true;
}

namespace {

Edbm with_cell(const ClockSetPtr& clocks, std::size_t i, std::size_t j, Bound b) {
  Edbm m(clocks);
  m.set(i, j, std::move(b));
  return m;
}

Edbm undefined_at(const ClockSetPtr& clocks, std::size_t k) {
  Edbm m(clocks);
  m.set(k, 0, Bound::undefined());
  m.set(0, k, Bound::undefined());
  return m;
}

Edbm defined_at(const ClockSetPtr& clocks, std::size_t k) { return with_cell(clocks, k, k, Bound::le(0)); }

// Disjoint zones whose union is the complement of the single constraint
// `b` at (i,j).
ZoneSet complement_of_cell(const ClockSetPtr& clocks, std::size_t i, std::size_t j, const Bound& b) {
  ZoneSet out;
  if (b.is_undefined()) {
    out.push_back(defined_at(clocks, i == 0 ? j : i));
    return out;
  }
  if (i == j) {
    if (i > 0) out.push_back(undefined_at(clocks, i));
    return out;
  }
  if (i > 0) out.push_back(undefined_at(clocks, i));
  if (j > 0) {
    Edbm z = undefined_at(clocks, j);
    if (i > 0) z.set(i, i, Bound::le(0));
    out.push_back(std::move(z));
  }
  if (b.is_finite()) {
    Edbm z = with_cell(clocks, j, i, Bound{Bound::Kind::Finite, Integer(-b.value), !b.strict});
    if (i > 0) z.set(i, i, Bound::le(0));
    if (j > 0) z.set(j, j, Bound::le(0));
    out.push_back(std::move(z));
  }
  return out;
}

}  // namespace

ZoneSet subtract(const Edbm& a, const Edbm& b) {
  check_same(a, b);
  if (a.is_empty()) return {};
  if (b.is_empty()) return {a};
  ZoneSet out;
  Edbm rest = a;
  for (std::size_t i = 0; i < b.dim() && !rest.is_empty(); ++i)
    for (std::size_t j = 0; j < b.dim() && !rest.is_empty(); ++j) {
      const Bound& c = b(i, j);
      if (c.is_free() || bound_le(rest(i, j), c)) continue;
      if (c.is_undefined() && i != 0) continue;  // handled at (0,i)
      for (const auto& piece : complement_of_cell(a.clocks(), i, j, c)) {
        Edbm z = intersect(rest, piece);
        if (!z.is_empty()) out.push_back(std::move(z));
      }
      Edbm cell = c.is_undefined() ? undefined_at(a.clocks(), j) : with_cell(a.clocks(), i, j, c);
      if (i > 0) cell.set(i, i, Bound::le(0));
      if (j > 0 && !c.is_undefined()) cell.set(j, j, Bound::le(0));
      rest = intersect(rest, cell);
    }
  return out;
}

ZoneSet subtract(const Edbm& a, const ZoneSet& bs) {
  ZoneSet current{a};
  for (const auto& b : bs) {
    ZoneSet next;
    for (const auto& z : current)
      for (auto& piece : subtract(z, b)) next.push_back(std::move(piece));
    current = std::move(next);
    if (current.empty()) break;
  }
  return current;
}

namespace {

struct Interval {
  std::optional<Rational> lo, hi;  // nullopt = unbounded
  bool lo_strict = false, hi_strict = false;
};

// Interval of admissible signed values for matrix index k given the
// signed values already fixed for smaller indices.
Interval interval_for(const Edbm& m, std::size_t k, const std::vector<ClockValue>& s) {
  Interval in;
  for (std::size_t j = 0; j < k; ++j) {
    if (!s[j]) continue;
    const Bound& up = m(k, j);
    if (up.is_finite()) {
      Rational h = *s[j] + Rational(up.value);
      if (!in.hi || h < *in.hi) {
        in.hi = h;
        in.hi_strict = up.strict;
      } else if (h == *in.hi) {
        in.hi_strict = in.hi_strict || up.strict;
      }
    }
    const Bound& down = m(j, k);
    if (down.is_finite()) {
      Rational l = *s[j] - Rational(down.value);
      if (!in.lo || l > *in.lo) {
        in.lo = l;
        in.lo_strict = down.strict;
      } else if (l == *in.lo) {
        in.lo_strict = in.lo_strict || down.strict;
      }
    }
  }
  return in;
}

Rational pick(const Interval& in) {
  if (in.lo && in.hi) {
    if (*in.lo == *in.hi) return *in.lo;
    return (*in.lo + *in.hi) / 2;
  }
  if (in.lo) return in.lo_strict ? Rational(*in.lo + Rational(1, 2)) : *in.lo;
  if (in.hi) return in.hi_strict ? Rational(*in.hi - Rational(1, 2)) : *in.hi;
  return 0;
}

Rational pick_random(const Interval& in, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coin(0, 3);
  if (in.lo && in.hi) {
    if (*in.lo == *in.hi) return *in.lo;
    if (!in.lo_strict && coin(rng) == 0) return *in.lo;
    if (!in.hi_strict && coin(rng) == 0) return *in.hi;
    std::uniform_int_distribution<int> num(1, 15);
    Rational t(num(rng), 16);
    t.canonicalize();
    return *in.lo + (*in.hi - *in.lo) * t;
  }
  std::uniform_int_distribution<int> step(1, 24);
  if (in.lo) {
    if (!in.lo_strict && coin(rng) == 0) return *in.lo;
    Rational d(step(rng), 4);
    d.canonicalize();
    return *in.lo + d;
  }
  if (in.hi) {
    if (!in.hi_strict && coin(rng) == 0) return *in.hi;
    Rational d(step(rng), 4);
    d.canonicalize();
    return *in.hi - d;
  }
  return 0;
}

template <class Pick>
Valuation sample_with(const Edbm& m, Pick&& choose) {
  if (m.is_empty()) throw Error(Errc::EmptyZone, "cannot sample the empty zone");
  const std::size_t n = m.dim();
  std::vector<ClockValue> s(n);
  s[0] = Rational(0);
  for (std::size_t k = 1; k < n; ++k) {
    if (!m(k, 0).is_numeric()) continue;
    Interval in = interval_for(m, k, s);
    Rational x = choose(in);
    if (in.lo && (x < *in.lo || (in.lo_strict && x == *in.lo)))
      throw Error(Errc::EmptyZone, "zone is not in normal form");
    if (in.hi && (x > *in.hi || (in.hi_strict && x == *in.hi)))
      throw Error(Errc::EmptyZone, "zone is not in normal form");
    s[k] = x;
  }
  std::vector<ClockValue> values(n - 1);
  for (std::size_t k = 1; k < n; ++k)
    if (s[k]) values[k - 1] = is_prophecy_index(m, k) ? Rational(-*s[k]) : *s[k];
  return Valuation(m.clocks(), std::move(values));
}

}  // namespace

Valuation sample(const Edbm& m) { return sample_with(m, pick); }

Valuation sample_random(const Edbm& m, std::mt19937_64& rng) {
  return sample_with(m, [&](const Interval& in) { return pick_random(in, rng); });
}

Edbm literal_zone(const ClockSetPtr& clocks, const GuardLiteral& lit) {
  using K = GuardLiteral::Kind;
  const std::size_t k = clocks->index_of(lit.clock) + 1;
  if (lit.kind == K::Undefined) return undefined_at(clocks, k);
  Edbm m(clocks);
  const Integer& c = lit.bound;
  const bool prophecy = lit.clock.is_prophecy();
  // Upper bounds on a history value sit at (k,0); on a prophecy value, whose
  // signed form is negated, at (0,k).
  const std::size_t ui = prophecy ? 0 : k, uj = prophecy ? k : 0;
  switch (lit.kind) {
    case K::Less: m.set(ui, uj, Bound::lt(c)); break;
    case K::Greater: m.set(uj, ui, Bound::lt(Integer(-c))); break;
    case K::Equal:
      m.set(ui, uj, Bound::le(c));
      m.set(uj, ui, Bound::le(Integer(-c)));
      break;
    case K::Undefined: break;
  }
  return normalize(m);
}

Edbm literal_zone(const ClockSetPtr& clocks, const Clock& clock, Cmp op, long bound) {
  using K = GuardLiteral::Kind;
  K kind = op == Cmp::Less ? K::Less : op == Cmp::Equal ? K::Equal : K::Greater;
  return literal_zone(clocks, GuardLiteral{clock, kind, Integer(bound)});
}

Edbm undefined_zone(const ClockSetPtr& clocks, const Clock& clock) {
  return normalize(undefined_at(clocks, clocks->index_of(clock) + 1));
}

ZoneSet guard_to_zones(const Guard& g, const ClockSetPtr& clocks) {
  ZoneSet out;
  for (const auto& conj : to_dnf(g)) {
    Edbm z(clocks);
    for (const auto& lit : conj) {
      z = intersect(z, literal_zone(clocks, lit));
      if (z.is_empty()) break;
    }
    if (z.is_empty()) continue;
    if (std::find(out.begin(), out.end(), z) == out.end()) out.push_back(std::move(z));
  }
  return out;
}

Edbm initial_zone(const ClockSetPtr& clocks) {
  Edbm m(clocks);
  for (std::size_t k = 1; k < m.dim(); ++k)
    if (is_history_index(m, k)) {
      m.set(k, 0, Bound::undefined());
      m.set(0, k, Bound::undefined());
    }
  return normalize(m);
}

Edbm final_zone(const ClockSetPtr& clocks) {
  Edbm m(clocks);
  for (std::size_t k = 1; k < m.dim(); ++k)
    if (is_prophecy_index(m, k)) {
      m.set(k, 0, Bound::undefined());
      m.set(0, k, Bound::undefined());
    }
  return normalize(m);
}

Edbm point_zone(const Valuation& v) {
  Edbm m(v.clocks());
  for (std::size_t k = 1; k < m.dim(); ++k) {
    const auto& x = v[k - 1];
    if (!x) {
      m.set(k, 0, Bound::undefined());
      m.set(0, k, Bound::undefined());
      continue;
    }
    if (x->get_den() != 1) throw Error(Errc::PreconditionViolated, "point zones need integer clock values");
    Integer s = is_prophecy_index(m, k) ? Integer(-x->get_num()) : Integer(x->get_num());
    m.set(k, 0, Bound::le(s));
    m.set(0, k, Bound::le(Integer(-s)));
  }
  return normalize(m);
}

std::string to_string(const Edbm& m) {
  std::string out;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    if (i) out += " | ";
    for (std::size_t j = 0; j < m.dim(); ++j) {
      if (j) out += ' ';
      out += to_string(m(i, j));
    }
  }
  return out;
}

Edbm parse_edbm(const ClockSetPtr& clocks, std::string_view text) {
  std::string cleaned(text);
  for (char& c : cleaned)
    if (c == '|' || c == ';' || c == ',' || c == '[' || c == ']') c = ' ';
  std::istringstream in(cleaned);
  std::vector<Bound> cells;
  std::string tok;
  while (in >> tok) cells.push_back(parse_bound(tok));
  return Edbm(clocks, std::move(cells));
}

}  // namespace ecta
