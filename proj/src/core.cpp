#include "ecta/core.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ecta {

const char* to_string(Errc code) {
  switch (code) {
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::UndefinedClock: return "UndefinedClock";
    case Errc::UnknownClock: return "UnknownClock";
    case Errc::UnknownLetter: return "UnknownLetter";
    case Errc::ProphecyNotZero: return "ProphecyNotZero";
    case Errc::NotFound: return "NotFound";
    case Errc::ClockMismatch: return "ClockMismatch";
    case Errc::EmptyZone: return "EmptyZone";
    case Errc::NotEquivalent: return "NotEquivalent";
    case Errc::CmaxTooSmall: return "CmaxTooSmall";
    case Errc::Unsupported: return "Unsupported";
    case Errc::Parse: return "Parse";
    case Errc::Io: return "Io";
  }
  return "?";
}

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  auto fail = [&]() -> Error { return Error(Errc::Parse, "malformed rational '" + std::string(text) + "'"); };
  Rational q;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw fail();
    Integer d{std::string(den)};
    if (d == 0) throw fail();
    q = Rational(Integer(std::string(num)), d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot), frac_part = s.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac_part)) throw fail();
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac_part.size());
    Integer num(std::string(whole.empty() ? "0" : whole) + std::string(frac_part));
    q = Rational(num, scale);
  } else {
    if (!all_digits(s)) throw fail();
    q = Rational(Integer(std::string(s)));
  }
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Alphabet::Alphabet(std::vector<std::string> letters) : letters_(std::move(letters)) {
  if (letters_.empty()) throw Error(Errc::Parse, "alphabet must be nonempty");
  std::set<std::string> seen;
  for (const auto& l : letters_) {
    if (l.empty()) throw Error(Errc::Parse, "empty letter name");
    if (!seen.insert(l).second) throw Error(Errc::Parse, "duplicate letter '" + l + "'");
  }
}

std::optional<std::size_t> Alphabet::find(std::string_view name) const {
  for (std::size_t i = 0; i < letters_.size(); ++i)
    if (letters_[i] == name) return i;
  return std::nullopt;
}

std::size_t Alphabet::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw Error(Errc::UnknownLetter, "unknown letter '" + std::string(name) + "'");
}

ClockSet::ClockSet(Alphabet alphabet, std::vector<Clock> clocks)
    : alphabet_(std::move(alphabet)), clocks_(std::move(clocks)) {
  std::set<Clock> seen;
  for (const auto& c : clocks_) {
    if (c.letter >= alphabet_.size()) throw Error(Errc::UnknownClock, "clock letter out of range");
    if (!seen.insert(c).second) throw Error(Errc::UnknownClock, "duplicate clock");
  }
}

ClockSetPtr ClockSet::standard(const Alphabet& alphabet) {
  std::vector<Clock> clocks;
  for (std::size_t i = 0; i < alphabet.size(); ++i) clocks.push_back({i, ClockKind::History});
  for (std::size_t i = 0; i < alphabet.size(); ++i) clocks.push_back({i, ClockKind::Prophecy});
  return std::make_shared<const ClockSet>(alphabet, std::move(clocks));
}

std::optional<std::size_t> ClockSet::find(const Clock& c) const {
  for (std::size_t i = 0; i < clocks_.size(); ++i)
    if (clocks_[i] == c) return i;
  return std::nullopt;
}

std::size_t ClockSet::index_of(const Clock& c) const {
  if (auto i = find(c)) return *i;
  throw Error(Errc::UnknownClock, "clock not in clock set");
}

std::size_t ClockSet::index_of(std::string_view name) const { return index_of(parse_clock(name)); }

std::string ClockSet::name(std::size_t i) const {
  const Clock& c = clocks_.at(i);
  return std::string(c.is_history() ? "h." : "p.") + alphabet_.name(c.letter);
}

Clock ClockSet::parse_clock(std::string_view name) const {
  if (name.size() < 3 || name[1] != '.' || (name[0] != 'h' && name[0] != 'p'))
    throw Error(Errc::UnknownClock, "malformed clock name '" + std::string(name) + "'");
  auto letter = alphabet_.find(name.substr(2));
  if (!letter) throw Error(Errc::UnknownClock, "unknown clock '" + std::string(name) + "'");
  return {*letter, name[0] == 'h' ? ClockKind::History : ClockKind::Prophecy};
}

bool same_clocks(const ClockSetPtr& a, const ClockSetPtr& b) { return a == b || (a && b && *a == *b); }

Valuation::Valuation(ClockSetPtr clocks) : clocks_(std::move(clocks)), values_(clocks_->size()) {}

Valuation::Valuation(ClockSetPtr clocks, std::vector<ClockValue> values)
    : clocks_(std::move(clocks)), values_(std::move(values)) {
  if (values_.size() != clocks_->size()) throw Error(Errc::ClockMismatch, "valuation size mismatch");
  for (const auto& v : values_)
    if (v && *v < 0) throw Error(Errc::PreconditionViolated, "negative clock value");
}

Valuation Valuation::of(ClockSetPtr clocks,
                        std::initializer_list<std::pair<std::string_view, std::string_view>> entries) {
  std::vector<ClockValue> values(clocks->size());
  for (const auto& [name, text] : entries) {
    auto i = clocks->index_of(name);
    if (text == "bot")
      values[i] = std::nullopt;
    else
      values[i] = parse_rational(text);
  }
  return Valuation(std::move(clocks), std::move(values));
}

Valuation Valuation::with(std::size_t i, ClockValue value) const {
  auto values = values_;
  values.at(i) = std::move(value);
  return Valuation(clocks_, std::move(values));
}

bool Valuation::operator==(const Valuation& other) const {
  return same_clocks(clocks_, other.clocks_) && values_ == other.values_;
}

std::string Valuation::to_string() const {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i) out << ", ";
    out << clocks_->name(i) << ':' << (values_[i] ? values_[i]->get_str() : std::string("bot"));
  }
  out << '}';
  return out.str();
}

Valuation elapse(const Valuation& v, const Rational& d) {
  if (d < 0) throw Error(Errc::PreconditionViolated, "negative delay");
  std::vector<ClockValue> out = v.values();
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!out[i]) continue;
    if ((*v.clocks())[i].is_history()) {
      *out[i] += d;
    } else {
      if (*out[i] < d)
        throw Error(Errc::PreconditionViolated, "prophecy clock " + v.clocks()->name(i) + " would become negative");
      *out[i] -= d;
    }
  }
  return Valuation(v.clocks(), std::move(out));
}

Rational frac(const Valuation& v, std::size_t clock) {
  const auto& x = v[clock];
  if (!x) throw Error(Errc::UndefinedClock, "fractional part of undefined clock " + v.clocks()->name(clock));
  if ((*v.clocks())[clock].is_history()) return Rational(ceil_of(*x)) - *x;
  return *x - Rational(floor_of(*x));
}

SignedValuation plmin(const Valuation& v) {
  SignedValuation out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = signed_value(v, i);
  return out;
}

bool is_initial(const Valuation& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if ((*v.clocks())[i].is_history() && v[i]) return false;
  return true;
}

bool is_final(const Valuation& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if ((*v.clocks())[i].is_prophecy() && v[i]) return false;
  return true;
}

bool weak_successor_contains(const Valuation& v, const Rational& t, const Valuation& next,
                             const Integer& cmax) {
  if (!same_clocks(v.clocks(), next.clocks())) throw Error(Errc::ClockMismatch, "valuation clock sets differ");
  const Rational bound(cmax);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& x = v[i];
    const auto& y = next[i];
    bool prophecy = (*v.clocks())[i].is_prophecy();
    if (prophecy && x && *x > bound) {
      if (!y || !(*y > bound - t)) return false;
      continue;
    }
    if (!x) {
      if (y) return false;
      continue;
    }
    if (!y) return false;
    if (prophecy) {
      if (*x < t || *y != *x - t) return false;
    } else if (*y != *x + t) {
      return false;
    }
  }
  return true;
}

}  // namespace ecta
