#include "support.hpp"

#include "ecta/region_automaton.hpp"

#include <doctest.h>

using namespace ecta;
using namespace ecta::testing;

namespace {

bool in_any(const ZoneSet& zones, const Valuation& v) {
  for (const auto& z : zones)
    if (cellwise_member(z, v)) return true;
  return false;
}

// Concrete successors of u through e: wait until the letter is due, pick the
// next occurrence, check the guard, reset the history clock.
std::vector<Valuation> concrete_successors(const Edge& e, const Valuation& u) {
  std::vector<Valuation> out;
  const auto& clocks = u.clocks();
  const std::size_t h = clocks->index_of(Clock{e.letter, ClockKind::History});
  const std::size_t p = clocks->index_of(Clock{e.letter, ClockKind::Prophecy});
  if (!u[p]) return out;
  const auto firing = advance(u, *u[p]);
  if (!firing) return out;
  std::vector<ClockValue> choices{std::nullopt};
  for (long k = 0; k <= 8; ++k) choices.push_back(ratio(k, 2));
  for (const auto& next : choices) {
    const Valuation f = firing->with(p, next);
    if (satisfies(f, e.guard)) out.push_back(f.with(h, Rational(0)));
  }
  return out;
}

Valuation random_integer_valuation(const ClockSetPtr& clocks, std::mt19937_64& rng) {
  return random_grid_valuation(clocks, rng, 4, 1);
}

}  // namespace

TEST_CASE("post contains every concrete successor") {
  auto c = clocks_ab();
  const Ecta a = builtin_example("ainf");
  std::mt19937_64 rng(43);
  for (int round = 0; round < 120; ++round) {
    const Edbm z = random_zone(c, rng);
    if (z.is_empty()) continue;
    for (const auto& e : a.edges()) {
      const ZoneSet post = post_zones(c, e, z);
      for (int i = 0; i < 10; ++i)
        for (const auto& v : concrete_successors(e, sample_random(z, rng))) CHECK(in_any(post, v));
    }
  }
}

TEST_CASE("pre is the preimage of post") {
  auto c = clocks_ab();
  std::mt19937_64 rng(47);
  for (int round = 0; round < 60; ++round) {
    const Ecta a = random_ecta(rng);
    const Edbm z = random_zone(c, rng, 2);
    for (const auto& e : a.edges()) {
      const ZoneSet pre = pre_zones(c, e, z);
      for (int i = 0; i < 25; ++i) {
        const Valuation v = random_integer_valuation(c, rng);
        bool reaches = false;
        for (const auto& s : post_zones(c, e, point_zone(v))) reaches = reaches || !intersect(s, z).is_empty();
        CAPTURE(v.to_string());
        CAPTURE(to_string(z));
        if (has_free_clock(z, ClockKind::Prophecy))
          CHECK((!reaches || in_any(pre, v)));
        else
          CHECK(in_any(pre, v) == reaches);
      }
    }
  }
}

TEST_CASE("post and pre only follow edges at their endpoints") {
  const Ecta a = builtin_example("ainf");
  const SymbolicState s{1, Edbm(a.clocks())};
  CHECK(post_edge(a, a.edges()[0], s).empty());
  CHECK(pre_edge(a, a.edges()[0], s).empty());
  CHECK_FALSE(pre_edge(a, a.edges()[2], s).empty());
}

TEST_CASE("exact searches on the fixtures") {
  const Ecta ainf = builtin_example("ainf");
  const AnalysisResult fwd = forw_exact(ainf), back = back_exact(ainf);
  CHECK(fwd.verdict == Verdict::NonEmpty);
  CHECK(back.verdict == Verdict::NonEmpty);
  REQUIRE(fwd.witness.has_value());
  const auto& path = *fwd.witness;
  CHECK(path.front().location == ainf.initial());
  CHECK(ainf.is_accepting(path.back().location));
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    bool linked = false;
    for (const auto& e : ainf.edges())
      for (const auto& next : post_edge(ainf, e, path[i]))
        linked = linked || (next.location == path[i + 1].location && next.zone == path[i + 1].zone);
    CHECK(linked);
  }

  const Ecta div = builtin_example("backdiv");
  CHECK(back_exact(div, {50, false}).verdict == Verdict::Unknown);
  CHECK(back_exact(div, {50, false}).steps == 50);
  CHECK(forw_exact(div).verdict == Verdict::Empty);
  CHECK(forw_exact(mirror(div), {50, false}).verdict == Verdict::Unknown);
  CHECK(back_exact(mirror(div)).verdict == Verdict::Empty);
}

TEST_CASE("literal acceptance is stricter") {
  const Ecta ainf = builtin_example("ainf");
  const AnalysisResult literal = forw_exact(ainf, {10000, true});
  CHECK(literal.verdict != Verdict::Unknown);
  CHECK(literal.steps >= forw_exact(ainf).steps);
}

TEST_CASE("mirroring swaps clock kinds and is an involution on verdicts") {
  const Ecta a = builtin_example("backdiv");
  const Ecta m = mirror(a);
  CHECK(m.initial() == 2);
  CHECK(m.accepting() == std::set<Location>{0});
  CHECK(m.edges()[1].guard == swap_clock_kinds(a.edges()[1].guard));
  CHECK(language_empty(build(mirror(m), 1, {})) == language_empty(build(a, 1, {})));
  const Ecta two(Alphabet({"a"}), {"p", "q"}, 0, {}, {0, 1});
  CHECK_THROWS_AS(mirror(two), Error);
}

TEST_CASE("bounded untimed language from a single valuation") {
  const Ecta a = builtin_example("ainf");
  for (long n = 1; n <= 4; ++n) {
    const Valuation v = Valuation::of(a.clocks(), {{"p.a", std::to_string(n)}, {"p.b", "0"}});
    UntimedWord w(static_cast<std::size_t>(n), 1);
    w.push_back(0);
    CHECK(bounded_untimed_language(a, {0, point_zone(v)}, 7) == std::set<UntimedWord>{w});
  }
  CHECK(bounded_untimed_language(a, 0).empty());
  CHECK(bounded_untimed_language(a, 3).size() == 2);
}
