#include <random>

#include "doctest.h"

#include "compsem/error.hpp"
#include "compsem/meaning.hpp"
#include "random_language.hpp"

using namespace compsem;

TEST_CASE("meaning literals") {
  CHECK(Meaning::parse("472") == Meaning::integer(472));
  CHECK(Meaning::parse("-3") == Meaning::integer(-3));
  CHECK(Meaning::parse("7/2") == Meaning::rational(Rational(7, 2)));
  CHECK(Meaning::parse("true") == Meaning::boolean(true));
  CHECK(Meaning::parse("sea") == Meaning::symbol("sea"));
  CHECK(Meaning::parse("open(sea)") == Meaning::symbol("open", {Meaning::symbol("sea")}));
  CHECK(Meaning::parse("<1, false>") ==
        Meaning::tuple({Meaning::integer(1), Meaning::boolean(false)}));
  CHECK(Meaning::parse("123456789012345678901234567890").render() ==
        "123456789012345678901234567890");
  CHECK_THROWS_AS(Meaning::parse(""), ParseError);
  CHECK_THROWS_AS(Meaning::parse("<1,"), ParseError);
  CHECK_THROWS_AS(Meaning::parse("1/0"), ParseError);
}

TEST_CASE("integers and rationals stay distinct") {
  CHECK(Meaning::integer(2) != Meaning::rational(Rational(2)));
  CHECK(Meaning::integer(2).to_rational() == Meaning::rational(Rational(4, 2)).to_rational());
  CHECK_FALSE(Meaning::boolean(true).to_rational());
}

TEST_CASE("render and parse are inverse") {
  std::mt19937 rng(3);
  for (int i = 0; i < 2000; ++i) {
    Meaning m = testing::random_meaning(rng);
    CAPTURE(m.render());
    CHECK(Meaning::parse(m.render()) == m);
  }
}

TEST_CASE("missing meanings are listed in fragment order") {
  auto frag = LanguageFragment::closure(std::vector<Term>{make_term("((a.b).c)")});
  MeaningAssignment m;
  m.set(Term::leaf("b"), Meaning::integer(1));
  auto missing = m.missing(frag);
  REQUIRE(missing.size() == 4);
  CHECK(missing.front() == Term::leaf("a"));
  CHECK(missing.back() == make_term("((a.b).c)"));
  CHECK_THROWS_AS(m.at(Term::leaf("a")), MissingMeanings);
}
