// Event clocks, valuations with the undefined value, and time elapse.
#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ecta {

using Rational = mpq_class;
using Integer = mpz_class;

enum class Errc {
  PreconditionViolated,
  UndefinedClock,
  UnknownClock,
  UnknownLetter,
  ProphecyNotZero,
  NotFound,
  ClockMismatch,
  EmptyZone,
  NotEquivalent,
  CmaxTooSmall,
  Unsupported,
  Parse,
  Io,
};

const char* to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// "3", "-2", "1.25", "3/4".
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
Integer floor_of(const Rational& q);
Integer ceil_of(const Rational& q);

/// Ordered, duplicate-free set of letter names. The order fixes clock
/// indices and therefore matrix layouts.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> letters);

  std::size_t size() const { return letters_.size(); }
  const std::string& name(std::size_t letter) const { return letters_.at(letter); }
  std::optional<std::size_t> find(std::string_view name) const;
  std::size_t index_of(std::string_view name) const;  // throws UnknownLetter
  const std::vector<std::string>& letters() const { return letters_; }

  bool operator==(const Alphabet&) const = default;

 private:
  std::vector<std::string> letters_;
};

enum class ClockKind { History, Prophecy };

struct Clock {
  std::size_t letter = 0;
  ClockKind kind = ClockKind::History;

  bool is_history() const { return kind == ClockKind::History; }
  bool is_prophecy() const { return kind == ClockKind::Prophecy; }
  bool operator==(const Clock&) const = default;
  auto operator<=>(const Clock&) const = default;
};

/// An ordered list of event clocks over an alphabet. The standard layout
/// is every history clock in alphabet order followed by every prophecy clock.
class ClockSet {
 public:
  ClockSet(Alphabet alphabet, std::vector<Clock> clocks);

  static std::shared_ptr<const ClockSet> standard(const Alphabet& alphabet);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t size() const { return clocks_.size(); }
  const Clock& operator[](std::size_t i) const { return clocks_[i]; }
  const std::vector<Clock>& clocks() const { return clocks_; }

  std::optional<std::size_t> find(const Clock& c) const;
  std::size_t index_of(const Clock& c) const;  // throws UnknownClock
  std::size_t index_of(std::string_view name) const;

  // "h.a" / "p.a"
  std::string name(std::size_t i) const;
  Clock parse_clock(std::string_view name) const;

  bool operator==(const ClockSet&) const = default;

 private:
  Alphabet alphabet_;
  std::vector<Clock> clocks_;
};

using ClockSetPtr = std::shared_ptr<const ClockSet>;

bool same_clocks(const ClockSetPtr& a, const ClockSetPtr& b);

/// A clock value: a nonnegative rational, or nullopt for the undefined value.
using ClockValue = std::optional<Rational>;

class Valuation {
 public:
  explicit Valuation(ClockSetPtr clocks);  // all undefined
  Valuation(ClockSetPtr clocks, std::vector<ClockValue> values);

  // Convenience: {{"p.a", "1/2"}, {"h.b", "bot"}}; unspecified clocks are undefined.
  static Valuation of(ClockSetPtr clocks,
                      std::initializer_list<std::pair<std::string_view, std::string_view>> entries);

  const ClockSetPtr& clocks() const { return clocks_; }
  std::size_t size() const { return values_.size(); }
  const ClockValue& operator[](std::size_t i) const { return values_[i]; }
  const ClockValue& at(const Clock& c) const { return values_[clocks_->index_of(c)]; }
  const std::vector<ClockValue>& values() const { return values_; }

  Valuation with(std::size_t i, ClockValue value) const;
  Valuation with(const Clock& c, ClockValue value) const { return with(clocks_->index_of(c), std::move(value)); }

  bool operator==(const Valuation& other) const;

  std::string to_string() const;

 private:
  ClockSetPtr clocks_;
  std::vector<ClockValue> values_;
};

/// History clocks gain d, prophecy clocks lose d, undefined values stay.
Valuation elapse(const Valuation& v, const Rational& d);

/// Fractional distance to the next integer crossing: ceil(v)-v for history
/// clocks, v-floor(v) for prophecy clocks.
Rational frac(const Valuation& v, std::size_t clock);

/// Signed view used by event zones: prophecy values are negated.
using SignedValuation = std::vector<ClockValue>;
SignedValuation plmin(const Valuation& v);
inline ClockValue signed_value(const Valuation& v, std::size_t i) {
  if (!v[i]) return std::nullopt;
  return (*v.clocks())[i].is_prophecy() ? Rational(-*v[i]) : *v[i];
}

bool is_initial(const Valuation& v);
bool is_final(const Valuation& v);

/// True iff next is a weak time successor of v after t time units.
bool weak_successor_contains(const Valuation& v, const Rational& t, const Valuation& next,
                             const Integer& cmax);

}  // namespace ecta
