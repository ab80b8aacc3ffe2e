#include "ecta/guard.hpp"

#include <algorithm>
#include <cctype>

namespace ecta {

struct Guard::Node {
  Kind kind = Kind::True;
  AtomicConstraint atom;
  Guard lhs_or_operand;
  Guard rhs;
};

Guard::Guard() : node_(nullptr) {}

Guard Guard::atom(AtomicConstraint a) {
  if (a.bound < 0) throw Error(Errc::Parse, "negative constant in clock constraint");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Atom;
  n->atom = std::move(a);
  return Guard(std::move(n));
}

Guard Guard::negation(Guard g) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Not;
  n->lhs_or_operand = std::move(g);
  return Guard(std::move(n));
}

Guard Guard::conjunction(Guard lhs, Guard rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::And;
  n->lhs_or_operand = std::move(lhs);
  n->rhs = std::move(rhs);
  return Guard(std::move(n));
}

Guard Guard::disjunction(Guard lhs, Guard rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Or;
  n->lhs_or_operand = std::move(lhs);
  n->rhs = std::move(rhs);
  return Guard(std::move(n));
}

Guard::Kind Guard::kind() const { return node_ ? node_->kind : Kind::True; }
const AtomicConstraint& Guard::atom() const { return node_->atom; }
const Guard& Guard::operand() const { return node_->lhs_or_operand; }
const Guard& Guard::lhs() const { return node_->lhs_or_operand; }
const Guard& Guard::rhs() const { return node_->rhs; }

bool Guard::operator==(const Guard& other) const {
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::True: return true;
    case Kind::Atom: return atom() == other.atom();
    case Kind::Not: return operand() == other.operand();
    case Kind::And:
    case Kind::Or: return lhs() == other.lhs() && rhs() == other.rhs();
  }
  return false;
}

bool satisfies(const Valuation& v, const Guard& g) {
  switch (g.kind()) {
    case Guard::Kind::True: return true;
    case Guard::Kind::Atom: {
      const auto& a = g.atom();
      const auto& x = v.at(a.clock);
      if (!x) return false;
      const Rational c(a.bound);
      switch (a.op) {
        case Cmp::Less: return *x < c;
        case Cmp::Equal: return *x == c;
        case Cmp::Greater: return *x > c;
      }
      return false;
    }
    case Guard::Kind::Not: return !satisfies(v, g.operand());
    case Guard::Kind::And: return satisfies(v, g.lhs()) && satisfies(v, g.rhs());
    case Guard::Kind::Or: return satisfies(v, g.lhs()) || satisfies(v, g.rhs());
  }
  return false;
}

Integer max_constant(const Guard& g) {
  switch (g.kind()) {
    case Guard::Kind::True: return 0;
    case Guard::Kind::Atom: return g.atom().bound;
    case Guard::Kind::Not: return max_constant(g.operand());
    default: {
      Integer a = max_constant(g.lhs()), b = max_constant(g.rhs());
      return a > b ? a : b;
    }
  }
}

namespace {

void collect_clocks(const Guard& g, std::vector<Clock>& out) {
  switch (g.kind()) {
    case Guard::Kind::True: return;
    case Guard::Kind::Atom:
      if (std::find(out.begin(), out.end(), g.atom().clock) == out.end()) out.push_back(g.atom().clock);
      return;
    case Guard::Kind::Not: collect_clocks(g.operand(), out); return;
    default:
      collect_clocks(g.lhs(), out);
      collect_clocks(g.rhs(), out);
  }
}

}  // namespace

std::vector<Clock> clocks_of(const Guard& g) {
  std::vector<Clock> out;
  collect_clocks(g, out);
  return out;
}

Guard swap_clock_kinds(const Guard& g) {
  switch (g.kind()) {
    case Guard::Kind::True: return g;
    case Guard::Kind::Atom: {
      auto a = g.atom();
      a.clock.kind = a.clock.is_history() ? ClockKind::Prophecy : ClockKind::History;
      return Guard::atom(std::move(a));
    }
    case Guard::Kind::Not: return Guard::negation(swap_clock_kinds(g.operand()));
    case Guard::Kind::And: return Guard::conjunction(swap_clock_kinds(g.lhs()), swap_clock_kinds(g.rhs()));
    case Guard::Kind::Or: return Guard::disjunction(swap_clock_kinds(g.lhs()), swap_clock_kinds(g.rhs()));
  }
  return g;
}

namespace {

using Dnf = std::vector<GuardConjunction>;

Dnf dnf_product(const Dnf& a, const Dnf& b) {
  Dnf out;
  for (const auto& x : a)
    for (const auto& y : b) {
      auto c = x;
      c.insert(c.end(), y.begin(), y.end());
      out.push_back(std::move(c));
    }
  return out;
}

GuardLiteral literal(const Clock& c, GuardLiteral::Kind k, const Integer& bound) { return {c, k, bound}; }

Dnf dnf(const Guard& g, bool positive) {
  using K = GuardLiteral::Kind;
  switch (g.kind()) {
    case Guard::Kind::True:
      return positive ? Dnf{GuardConjunction{}} : Dnf{};
    case Guard::Kind::Atom: {
      const auto& a = g.atom();
      K k = a.op == Cmp::Less ? K::Less : a.op == Cmp::Equal ? K::Equal : K::Greater;
      if (positive) return {{literal(a.clock, k, a.bound)}};
      Dnf out;
      for (K other : {K::Less, K::Equal, K::Greater})
        if (other != k) out.push_back({literal(a.clock, other, a.bound)});
      out.push_back({literal(a.clock, K::Undefined, 0)});
      return out;
    }
    case Guard::Kind::Not: return dnf(g.operand(), !positive);
    case Guard::Kind::And:
    case Guard::Kind::Or: {
      bool conj = (g.kind() == Guard::Kind::And) == positive;
      auto l = dnf(g.lhs(), positive);
      auto r = dnf(g.rhs(), positive);
      if (conj) return dnf_product(l, r);
      l.insert(l.end(), r.begin(), r.end());
      return l;
    }
  }
  return {};
}

}  // namespace

std::vector<GuardConjunction> to_dnf(const Guard& g) { return dnf(g, true); }

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Alphabet& alphabet) : text_(text), alphabet_(alphabet) {}

  Guard parse() {
    Guard g = disjunction();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return g;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(Errc::Parse, "guard '" + std::string(text_) + "': " + msg + " at offset " + std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  Guard disjunction() {
    Guard g = conjunction();
    while (accept("||")) g = Guard::disjunction(g, conjunction());
    return g;
  }

  Guard conjunction() {
    Guard g = unary();
    while (accept("&&")) g = Guard::conjunction(g, unary());
    return g;
  }

  Guard unary() {
    if (accept("!")) return Guard::negation(unary());
    if (accept("(")) {
      Guard g = disjunction();
      if (!accept(")")) fail("expected ')'");
      return g;
    }
    skip_space();
    std::string word = identifier();
    if (word == "true") return Guard::truth();
    if (word != "h" && word != "p") fail("expected clock, 'true', '!' or '('");
    if (!accept(".")) fail("expected '.' after clock kind");
    std::string letter = identifier();
    auto idx = alphabet_.find(letter);
    if (!idx) throw Error(Errc::UnknownClock, "guard mentions unknown letter '" + letter + "'");
    Clock clock{*idx, word == "h" ? ClockKind::History : ClockKind::Prophecy};
    Cmp op;
    if (accept("<"))
      op = Cmp::Less;
    else if (accept(">"))
      op = Cmp::Greater;
    else if (accept("="))
      op = Cmp::Equal;
    else
      fail("expected '<', '=' or '>'");
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected natural constant");
    return Guard::atom({clock, op, Integer(std::string(text_.substr(start, pos_ - start)))});
  }

  std::string identifier() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string_view text_;
  const Alphabet& alphabet_;
  std::size_t pos_ = 0;
};

// 0: or, 1: and, 2: unary
void print(const Guard& g, const Alphabet& alphabet, int context, std::string& out) {
  switch (g.kind()) {
    case Guard::Kind::True: out += "true"; return;
    case Guard::Kind::Atom: {
      const auto& a = g.atom();
      out += a.clock.is_history() ? "h." : "p.";
      out += alphabet.name(a.clock.letter);
      out += a.op == Cmp::Less ? " < " : a.op == Cmp::Equal ? " = " : " > ";
      out += a.bound.get_str();
      return;
    }
    case Guard::Kind::Not:
      out += '!';
      print(g.operand(), alphabet, 2, out);
      return;
    case Guard::Kind::And:
    case Guard::Kind::Or: {
      int mine = g.kind() == Guard::Kind::Or ? 0 : 1;
      bool paren = context > mine;
      if (paren) out += '(';
      print(g.lhs(), alphabet, mine, out);
      out += mine == 0 ? " || " : " && ";
      // right operand gets a tighter context so that the tree shape survives a round trip
      print(g.rhs(), alphabet, mine + 1, out);
      if (paren) out += ')';
      return;
    }
  }
}

}  // namespace

Guard parse_guard(std::string_view text, const Alphabet& alphabet) { return Parser(text, alphabet).parse(); }

std::string to_string(const Guard& g, const Alphabet& alphabet) {
  std::string out;
  print(g, alphabet, 0, out);
  return out;
}

}  // namespace ecta
