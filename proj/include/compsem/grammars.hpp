#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "compsem/meaning.hpp"
#include "compsem/mu_encoder.hpp"
#include "compsem/term.hpp"

namespace compsem {

// ---------------------------------------------------------------------------
// Numerals
//
//   ND:  N <- N D | D        (left spine, every right child is a digit)
//   DN:  N <- D N | D        (right spine, every left child is a digit)
//   D  <- 0 | 1 | ... | 9
//
// Leading zeros are generated by both grammars and are kept.

enum class NumeralGrammar { ND, DN };

std::string_view to_string(NumeralGrammar g);
/// Accepts "nd" or "dn" (any case).
NumeralGrammar parse_grammar(std::string_view text);

struct NumeralParse {
  NumeralGrammar grammar;
  std::vector<int> digits;
  Term tree;
};

/// Throws ParseError on empty or non-digit input.
NumeralParse parse_numeral(std::string_view digits, NumeralGrammar grammar);
/// Inverse of parse_numeral; nullopt when `tree` is not a numeral of `grammar`.
std::optional<NumeralParse> numeral_from_term(const Term& tree, NumeralGrammar grammar);

/// Base-10 value of the digit string, computed along the tree:
///   ND: v(N D) = 10 v(N) + d
///   DN: v(D N) = d * 10^len(N) + v(N)
Integer intended_value(const NumeralParse& p);
/// The reversed reading on DN trees: v(D N) = 10 v(N) + d. Throws TypeError
/// for multi-digit ND parses.
Integer backwards_value(const NumeralParse& p);

/// All numerals in length-then-lexicographic order, as terms of one grammar.
class NumeralStream final : public TermStream {
 public:
  explicit NumeralStream(NumeralGrammar grammar, std::optional<std::size_t> max_length = {})
      : grammar_(grammar), max_length_(max_length) {}
  std::optional<Term> at(std::size_t index) const override;
  bool contains(const Term& t) const override;
  std::optional<std::size_t> bound() const override;

  /// Intended value of a numeral term of this grammar, as an Integer meaning.
  Meaning meaning(const Term& t) const;

 private:
  NumeralGrammar grammar_;
  std::optional<std::size_t> max_length_;
};

/// Every numeral string of length 1..max_length, length-then-lexicographic.
std::vector<std::string> all_numerals(std::size_t max_length);

// ---------------------------------------------------------------------------
// Boolean coordination
//
// Terms are in prefix form: `x + y` is `+.x.y`, i.e. (+.(x.y)).

using BoolAssignment = std::map<std::string, bool>;

enum class CoordinationSemantics { Natural, Twisted };

/// Natural: ordinary Boolean evaluation (+ is or, & is and).
/// Twisted: the reading that gives v + (w & z) the meaning (v + w) & z while
/// every variable, every `x + y` and every `x & y` over variables keeps its
/// ordinary meaning. Twisted evaluation outside that fragment throws
/// TypeError; an unbound variable throws UnboundVariable.
bool eval_coordination(const Term& expr, const BoolAssignment& env,
                       CoordinationSemantics semantics);

/// Truth-table order starting from all-true: for variables (a, b, c) the
/// rows run 111, 110, 101, ..., 000.
std::vector<BoolAssignment> all_assignments(const std::vector<std::string>& variables);

std::string render_assignment(const BoolAssignment& env);

// ---------------------------------------------------------------------------
// Demo languages

/// wall, seas, high, (high.wall), (high.seas).
LanguageFragment idiom_fragment();
/// m(x) = x for the words, m(high.wall) = high(wall), m(high.seas) = open(seas).
MeaningAssignment idiom_meanings();

/// The prefix form of a+(b&c) with all its subterms:
///   +.a.&.b.c, a.&.b.c, &.b.c, b.c, +, &, a, b, c.
/// `extended` also adds a.b and +.a.b.
LanguageFragment coordination_fragment(bool extended = false);
/// Formulas get their value under `semantics`; the argument clusters get
///   m(b.c) = <m(b), m(c)>,  m(a.&.b.c) = <m(a), m(b)&m(c)>,  m(a.b) = <m(a), m(b)>
/// and the connectives are the symbols `or`, `and`.
MeaningAssignment coordination_meanings(const LanguageFragment& frag, const BoolAssignment& env,
                                        CoordinationSemantics semantics);

}  // namespace compsem
