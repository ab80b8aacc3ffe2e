#include "support.hpp"

#include "ecta/io.hpp"

#include <doctest.h>

using namespace ecta;

TEST_CASE("automaton files round-trip") {
  for (const auto& name : builtin_names()) {
    const Ecta a = builtin_example(name);
    const EctaFile back = parse_ecta(print_ecta(a, Integer(3)));
    CHECK(back.automaton.alphabet() == a.alphabet());
    CHECK(back.automaton.locations() == a.locations());
    CHECK(back.automaton.initial() == a.initial());
    CHECK(back.automaton.accepting() == a.accepting());
    REQUIRE(back.automaton.edges().size() == a.edges().size());
    for (std::size_t i = 0; i < a.edges().size(); ++i) {
      CHECK(back.automaton.edges()[i].source == a.edges()[i].source);
      CHECK(back.automaton.edges()[i].letter == a.edges()[i].letter);
      CHECK(back.automaton.edges()[i].guard == a.edges()[i].guard);
      CHECK(back.automaton.edges()[i].target == a.edges()[i].target);
    }
    CHECK(back.cmax == Integer(3));
  }
}

TEST_CASE("malformed automaton files are rejected") {
  const auto code_of = [](const char* text) {
    try {
      parse_ecta(text);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::NotFound;
  };
  CHECK(code_of("{") == Errc::Parse);
  CHECK(code_of(R"({"alphabet":[],"locations":["q"],"initial":"q","accepting":[],"edges":[]})") == Errc::Parse);
  CHECK(code_of(R"({"alphabet":["a"],"locations":["q"],"initial":"r","accepting":[],"edges":[]})") == Errc::Parse);
  CHECK(code_of(R"({"alphabet":["a"],"locations":["q"],"initial":"q","accepting":[],
                    "edges":[{"from":"q","letter":"a","guard":"h.a < 2","to":"q"}],"cmax":1})") ==
        Errc::CmaxTooSmall);
  CHECK(code_of(R"({"alphabet":["a"],"locations":["q"],"initial":"q","accepting":[],
                    "edges":[{"from":"q","letter":"c","to":"q"}]})") == Errc::UnknownLetter);
  CHECK_THROWS_AS(load_ecta("/nonexistent/file.ecta"), Error);
}

TEST_CASE("cmax defaults to the largest constant and only grows") {
  const EctaFile f{builtin_example("ainf"), std::nullopt};
  CHECK(effective_cmax(f) == 1);
  CHECK(effective_cmax(f, Integer(4)) == 4);
  CHECK_THROWS_AS(effective_cmax(f, Integer(0)), Error);
  const EctaFile declared{builtin_example("ainf"), Integer(2)};
  CHECK(effective_cmax(declared) == 2);
}

TEST_CASE("timed words parse from JSON") {
  const Alphabet ab({"a", "b"});
  const TimedWord w = parse_timed_word(R"([["b","0"],["b",1],["a","5/2"]])", ab);
  REQUIRE(w.size() == 3);
  CHECK(w[2].time == Rational(5, 2));
  CHECK(w[1].letter == 1);
  CHECK_THROWS_AS(parse_timed_word(R"([["a","1"],["b","0"]])", ab), Error);
  CHECK_THROWS_AS(parse_timed_word(R"([["a"]])", ab), Error);
  CHECK_THROWS_AS(parse_timed_word(R"({"a":1})", ab), Error);
}
