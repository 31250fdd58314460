#include <algorithm>
#include <random>
#include <string>

#include "doctest.h"

#include "compsem/error.hpp"
#include "compsem/grammars.hpp"

using namespace compsem;

namespace {

// Oracles that never look at a tree.
Integer decimal(const std::string& digits) { return Integer(digits, 10); }
Integer reversed_decimal(std::string digits) {
  std::reverse(digits.begin(), digits.end());
  return Integer(digits, 10);
}

std::string random_digits(std::mt19937& rng, std::size_t max_len) {
  std::string s(1 + rng() % max_len, '0');
  for (char& c : s) c = char('0' + rng() % 10);
  return s;
}

}  // namespace

TEST_CASE("numeral trees follow their grammar") {
  CHECK(render_term(parse_numeral("472", NumeralGrammar::ND).tree) == "((4.7).2)");
  CHECK(render_term(parse_numeral("472", NumeralGrammar::DN).tree) == "(4.(7.2))");
  CHECK(render_term(parse_numeral("5", NumeralGrammar::DN).tree) == "5");
  CHECK_THROWS_AS(parse_numeral("", NumeralGrammar::DN), ParseError);
  CHECK_THROWS_AS(parse_numeral("4a", NumeralGrammar::ND), ParseError);
  CHECK_FALSE(numeral_from_term(make_term("(4.(7.2))"), NumeralGrammar::ND));
  CHECK_FALSE(numeral_from_term(make_term("(x.2)"), NumeralGrammar::ND));
}

TEST_CASE("intended values agree with the decimal string") {
  std::mt19937 rng(1);
  for (int i = 0; i < 2000; ++i) {
    std::string d = random_digits(rng, 30);
    for (auto g : {NumeralGrammar::ND, NumeralGrammar::DN}) {
      auto p = parse_numeral(d, g);
      CHECK(intended_value(p) == decimal(d));
      auto back = numeral_from_term(p.tree, g);
      REQUIRE(back);
      CHECK(back->digits == p.digits);
    }
  }
}

TEST_CASE("backwards reading on DN is the reversed string") {
  std::mt19937 rng(2);
  for (int i = 0; i < 1000; ++i) {
    std::string d = random_digits(rng, 20);
    CHECK(backwards_value(parse_numeral(d, NumeralGrammar::DN)) == reversed_decimal(d));
  }
  CHECK(backwards_value(parse_numeral("47", NumeralGrammar::DN)) == 74);
  CHECK_THROWS_AS(backwards_value(parse_numeral("47", NumeralGrammar::ND)), TypeError);
}

TEST_CASE("numeral stream order is length then lexicographic") {
  auto all = all_numerals(3);
  REQUIRE(all.size() == 1110);
  CHECK(all[0] == "0");
  CHECK(all[10] == "00");
  CHECK(all[110] == "000");
  CHECK(all.back() == "999");

  NumeralStream dn(NumeralGrammar::DN);
  for (std::size_t i : {0u, 9u, 10u, 57u, 110u, 1109u, 1110u}) {
    auto t = dn.at(i);
    REQUIRE(t);
    CHECK(dn.contains(*t));
    if (i < all.size()) CHECK(*t == parse_numeral(all[i], NumeralGrammar::DN).tree);
  }
  CHECK(dn.meaning(parse_numeral("007", NumeralGrammar::DN).tree) == Meaning::integer(7));
  CHECK_FALSE(dn.contains(parse_numeral("123", NumeralGrammar::ND).tree));
  CHECK_FALSE(dn.bound());

  NumeralStream bounded(NumeralGrammar::ND, 2);
  CHECK(bounded.bound() == 110);
  CHECK_FALSE(bounded.at(110));
}

TEST_CASE("enumeration over an unbounded stream") {
  NumeralStream nd(NumeralGrammar::ND);
  int calls = 0;
  MeaningFunction m = [&](const Term& t) {
    ++calls;
    return nd.meaning(t);
  };
  // row 4 is "4"; its first right argument in stream order is the digit 0.
  CHECK(render_entry(enumerate_table(nd, m, 4, 1)) == "<mu(0), mu((4.0))>");
  CHECK(render_entry(enumerate_table(nd, m, 4, 10)) == "<mu(9), mu((4.9))>");
  CHECK(calls == 0);
  CHECK(render_entry(enumerate_table(nd, m, 14, 0)) == "<(0.4), 4>");
  CHECK(calls == 1);
  // ND rows only combine with digits: there is no eleventh pair.
  CHECK_THROWS_AS(enumerate_table(nd, m, 4, 11, EncodingVariant::Plain, 2000), OutOfRange);
}

TEST_CASE("coordination: natural and twisted readings") {
  Term whole = to_prefix_form(parse_infix("a+(b&c)"));
  Term ab = to_prefix_form(parse_infix("a+b"));
  for (const auto& env : all_assignments({"a", "b", "c"})) {
    bool a = env.at("a"), b = env.at("b"), c = env.at("c");
    CAPTURE(render_assignment(env));
    CHECK(eval_coordination(whole, env, CoordinationSemantics::Natural) == (a || (b && c)));
    CHECK(eval_coordination(whole, env, CoordinationSemantics::Twisted) == ((a || b) && c));
    CHECK(eval_coordination(ab, env, CoordinationSemantics::Twisted) == (a || b));
  }
  CHECK_THROWS_AS(eval_coordination(Term::leaf("d"), {{"a", true}}, CoordinationSemantics::Natural),
                  UnboundVariable);
  BoolAssignment t{{"a", true}, {"b", true}, {"c", true}};
  CHECK_THROWS_AS(
      eval_coordination(to_prefix_form(parse_infix("(a+b)&c")), t, CoordinationSemantics::Twisted),
      TypeError);
}

TEST_CASE("truth-table rows start from all-true") {
  auto rows = all_assignments({"a", "b", "c"});
  REQUIRE(rows.size() == 8);
  CHECK(render_assignment(rows[0]) == "a=1,b=1,c=1");
  CHECK(render_assignment(rows[1]) == "a=1,b=1,c=0");
  CHECK(render_assignment(rows[2]) == "a=1,b=0,c=1");
  CHECK(render_assignment(rows[7]) == "a=0,b=0,c=0");
}

TEST_CASE("demo fragments") {
  auto idioms = idiom_fragment();
  CHECK(idioms.size() == 5);
  auto coord = coordination_fragment();
  CHECK(coord.size() == 9);
  CHECK(coord.contains(parse_dotted_chain("a.&.b.c")));
  CHECK_FALSE(coord.contains(make_term("(a.b)")));
  auto extended = coordination_fragment(true);
  CHECK(extended.size() == 11);
  CHECK(extended.contains(parse_dotted_chain("+.a.b")));

  BoolAssignment env{{"a", true}, {"b", false}, {"c", true}};
  auto m = coordination_meanings(extended, env, CoordinationSemantics::Natural);
  CHECK(m.at(Term::leaf("+")).render() == "or");
  CHECK(m.at(parse_dotted_chain("b.c")).render() == "<false, true>");
  CHECK(m.at(parse_dotted_chain("a.&.b.c")).render() == "<true, false>");
  CHECK(m.at(parse_dotted_chain("+.a.&.b.c")) == Meaning::boolean(true));
}

TEST_CASE("worked numeral examples") {
  auto dn = parse_numeral("472", NumeralGrammar::DN);
  CHECK(intended_value(dn) == 472);
  CHECK(backwards_value(dn) == 274);
  auto rest = numeral_from_term(dn.tree.right(), NumeralGrammar::DN);
  REQUIRE(rest);
  CHECK(intended_value(*rest) == 72);
  CHECK(4 * 100 + intended_value(*rest) == 472);
}
