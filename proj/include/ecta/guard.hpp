// Clock constraints: boolean combinations of atoms x < c, x = c, x > c.
#pragma once

#include "ecta/core.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace ecta {

enum class Cmp { Less, Equal, Greater };

struct AtomicConstraint {
  Clock clock;
  Cmp op = Cmp::Equal;
  Integer bound;

  bool operator==(const AtomicConstraint&) const = default;
};

class Guard {
 public:
  enum class Kind { True, Atom, Not, And, Or };

  Guard();  // true
  static Guard truth() { return Guard(); }
  static Guard atom(AtomicConstraint a);
  static Guard atom(Clock clock, Cmp op, long bound) { return atom({clock, op, Integer(bound)}); }
  static Guard negation(Guard g);
  static Guard conjunction(Guard lhs, Guard rhs);
  static Guard disjunction(Guard lhs, Guard rhs);

  Kind kind() const;
  const AtomicConstraint& atom() const;
  const Guard& operand() const;  // Not
  const Guard& lhs() const;      // And, Or
  const Guard& rhs() const;

  bool operator==(const Guard& other) const;

 private:
  struct Node;
  explicit Guard(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

inline Guard operator!(Guard g) { return Guard::negation(std::move(g)); }
inline Guard operator&&(Guard a, Guard b) { return Guard::conjunction(std::move(a), std::move(b)); }
inline Guard operator||(Guard a, Guard b) { return Guard::disjunction(std::move(a), std::move(b)); }

/// An atom on an undefined clock is false, so its negation holds.
bool satisfies(const Valuation& v, const Guard& g);

Integer max_constant(const Guard& g);
std::vector<Clock> clocks_of(const Guard& g);

/// Swaps history and prophecy clocks throughout.
Guard swap_clock_kinds(const Guard& g);

/// Literals of the negation-free normal form: an atom or "clock undefined".
struct GuardLiteral {
  enum class Kind { Less, Equal, Greater, Undefined };
  Clock clock;
  Kind kind = Kind::Undefined;
  Integer bound;
};
using GuardConjunction = std::vector<GuardLiteral>;

/// Disjunctive normal form. A negated atom expands into the two other
/// comparisons plus "undefined". An empty result means unsatisfiable.
std::vector<GuardConjunction> to_dnf(const Guard& g);

Guard parse_guard(std::string_view text, const Alphabet& alphabet);
std::string to_string(const Guard& g, const Alphabet& alphabet);

}  // namespace ecta
