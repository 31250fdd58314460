#include <random>
#include <set>

#include "doctest.h"

#include "compsem/error.hpp"
#include "compsem/term.hpp"
#include "random_language.hpp"

using namespace compsem;

namespace {

Term L(const char* a) { return Term::leaf(a); }

// Every binary bracketing of the leaves in order.
std::vector<Term> bracketings(const std::vector<Term>& leaves, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return {leaves[lo]};
  std::vector<Term> out;
  for (std::size_t k = lo + 1; k < hi; ++k)
    for (const Term& l : bracketings(leaves, lo, k))
      for (const Term& r : bracketings(leaves, k, hi)) out.push_back(Term::node(l, r));
  return out;
}

}  // namespace

TEST_CASE("atoms reject reserved characters") {
  CHECK_NOTHROW(Atom("high"));
  CHECK_NOTHROW(Atom("+"));
  CHECK_THROWS_AS(Atom(""), InvalidAtom);
  CHECK_THROWS_AS(Atom("a.b"), InvalidAtom);
  CHECK_THROWS_AS(Atom("$"), InvalidAtom);
  CHECK_THROWS_AS(Atom("a b"), InvalidAtom);
  CHECK_THROWS_AS(Atom("(x"), InvalidAtom);
}

TEST_CASE("concatenation is not associative") {
  std::vector<Term> leaves{L("a"), L("b"), L("c"), L("d")};
  auto all = bracketings(leaves, 0, 4);
  REQUIRE(all.size() == 5);  // Catalan(3)
  std::set<std::string> rendered;
  for (const Term& t : all) {
    rendered.insert(render_term(t));
    CHECK(t.leaf_count() == 4);
    CHECK(t.leaves() == std::vector<Atom>{Atom("a"), Atom("b"), Atom("c"), Atom("d")});
  }
  CHECK(rendered.size() == 5);
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < all.size(); ++j) CHECK((all[i] == all[j]) == (i == j));
}

TEST_CASE("structural equality ignores sharing") {
  Term shared = Term::node(L("b"), L("c"));
  Term x = Term::node(L("a"), shared);
  Term y = Term::node(L("a"), Term::node(L("b"), L("c")));
  CHECK(x == y);
  CHECK(x.hash() == y.hash());
  CHECK((x <=> y) == std::strong_ordering::equal);
  CHECK(x.depth() == 2);
}

TEST_CASE("fully bracketed syntax round-trips") {
  for (const char* text : {"a", "(high.seas)", "((a.b).c)", "(+.(a.(&.(b.c))))"})
    CHECK(render_term(make_term(text)) == text);
  CHECK(make_term(" ( a . b ) ") == Term::node(L("a"), L("b")));

  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    auto frag = testing::random_fragment(rng);
    for (const Term& t : frag.terms()) CHECK(make_term(render_term(t)) == t);
  }
}

TEST_CASE("malformed terms report a position") {
  for (const char* text : {"", "(a.b", "(a b)", "a.b", "(a.b))", "(.b)", "($.a)"}) {
    CAPTURE(text);
    CHECK_THROWS_AS(make_term(text), ParseError);
  }
  try {
    make_term("(a.b");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("dotted chains nest to the right") {
  CHECK(parse_dotted_chain("x.y.z") == make_term("(x.(y.z))"));
  CHECK(parse_dotted_chain("+.a.&.b.c") == make_term("(+.(a.(&.(b.c))))"));
  CHECK(render_dotted_chain(make_term("(+.(a.(&.(b.c))))")) == "+.a.&.b.c");
  CHECK(render_dotted_chain(make_term("((a.b).c)")) == "((a.b).c)");
  CHECK(render_term(DollarTerm{L("x")}) == "(x.$)");
}

TEST_CASE("fragments validate closure and the domain of concatenation") {
  Term hw = make_term("(high.wall)");
  std::vector<Atom> atoms{Atom("wall"), Atom("high")};
  std::vector<std::pair<Term, Term>> pairs{{L("high"), L("wall")}};
  LanguageFragment ok(atoms, {L("wall"), L("high"), hw}, pairs);
  CHECK(ok.allows(L("high"), L("wall")));
  CHECK_FALSE(ok.allows(L("wall"), L("high")));
  CHECK(concat(ok, L("high"), L("wall")) == hw);
  CHECK_THROWS_AS(concat(ok, L("wall"), L("high")), UndefinedComposition);
  CHECK_THROWS_AS(concat(ok, L("seas"), L("high")), InvalidFragment);

  // missing subterm
  CHECK_THROWS_AS(LanguageFragment(atoms, {L("high"), hw}, pairs), InvalidFragment);
  // pair whose result is absent
  CHECK_THROWS_AS(LanguageFragment(atoms, {L("wall"), L("high")}, pairs), InvalidFragment);
  // composite term without its pair
  CHECK_THROWS_AS(LanguageFragment(atoms, {L("wall"), L("high"), hw}, {}), InvalidFragment);
  // duplicate
  CHECK_THROWS_AS(LanguageFragment(atoms, {L("wall"), L("high"), L("wall"), hw}, pairs),
                  InvalidFragment);
}

TEST_CASE("closure lists subterms first and records every composition") {
  std::mt19937 rng(11);
  for (int i = 0; i < 100; ++i) {
    auto frag = testing::random_fragment(rng);
    REQUIRE(frag.size() <= 20);
    std::size_t composite = 0;
    for (std::size_t k = 0; k < frag.size(); ++k) {
      const Term& t = frag.term(k);
      CHECK(frag.index_of(t) == k);
      if (t.is_leaf()) continue;
      ++composite;
      CHECK(*frag.index_of(t.left()) < k);
      CHECK(*frag.index_of(t.right()) < k);
      CHECK(frag.allows(t.left(), t.right()));
    }
    CHECK(frag.compositions().size() == composite);
    CHECK(frag.allowed_pairs().size() == composite);
    // Rebuilding from the reported pairs gives the same fragment.
    LanguageFragment again(frag.atoms(), frag.terms(), frag.allowed_pairs());
    CHECK(again == frag);
  }
}

TEST_CASE("infix operators go to prefix form") {
  CHECK(render_dotted_chain(to_prefix_form(parse_infix("a+(b&c)"))) == "+.a.&.b.c");
  CHECK(render_dotted_chain(to_prefix_form(parse_infix("a+b&c"))) == "+.a.&.b.c");
  CHECK(render_term(to_prefix_form(parse_infix("(a+b)&c"))) == "(&.((+.(a.b)).c))");
  CHECK(render_term(to_prefix_form(parse_infix("a+b+c"))) == "(+.((+.(a.b)).c))");
  CHECK_THROWS_AS(to_prefix_form(parse_infix("a^b")), UnknownOperator);
  CHECK_THROWS_AS(parse_infix("a+"), ParseError);
  CHECK_THROWS_AS(parse_infix("(a+b"), ParseError);
}
