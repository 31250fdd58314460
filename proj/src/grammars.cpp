#include "compsem/grammars.hpp"

#include <algorithm>
#include <cctype>

#include "compsem/error.hpp"

namespace compsem {

std::string_view to_string(NumeralGrammar g) { return g == NumeralGrammar::ND ? "nd" : "dn"; }

NumeralGrammar parse_grammar(std::string_view text) {
  std::string lower;
  for (char c : text) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "nd") return NumeralGrammar::ND;
  if (lower == "dn") return NumeralGrammar::DN;
  throw SpecError("unknown grammar '" + std::string(text) + "' (expected nd or dn)");
}

namespace {

Term digit_leaf(int d) { return Term::leaf(std::string(1, static_cast<char>('0' + d))); }

std::optional<int> digit_of(const Term& t) {
  if (!t.is_leaf()) return std::nullopt;
  const std::string& name = t.atom().name();
  if (name.size() != 1 || !std::isdigit(static_cast<unsigned char>(name[0]))) {
    return std::nullopt;
  }
  return name[0] - '0';
}

Term build_tree(const std::vector<int>& digits, NumeralGrammar grammar) {
  if (grammar == NumeralGrammar::ND) {
    Term acc = digit_leaf(digits.front());
    for (std::size_t i = 1; i < digits.size(); ++i) acc = Term::node(acc, digit_leaf(digits[i]));
    return acc;
  }
  Term acc = digit_leaf(digits.back());
  for (std::size_t i = digits.size() - 1; i-- > 0;) acc = Term::node(digit_leaf(digits[i]), acc);
  return acc;
}

Integer value_nd(const Term& t) {
  if (t.is_leaf()) return *digit_of(t);
  return 10 * value_nd(t.left()) + *digit_of(t.right());
}

Integer value_dn(const Term& t) {
  if (t.is_leaf()) return *digit_of(t);
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, t.right().leaf_count());
  return *digit_of(t.left()) * scale + value_dn(t.right());
}

Integer backwards_dn(const Term& t) {
  if (t.is_leaf()) return *digit_of(t);
  return 10 * backwards_dn(t.right()) + *digit_of(t.left());
}

}  // namespace

NumeralParse parse_numeral(std::string_view text, NumeralGrammar grammar) {
  if (text.empty()) throw ParseError("empty numeral", 0);
  std::vector<int> digits;
  digits.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw ParseError(std::string("non-digit '") + text[i] + "' in numeral", i);
    }
    digits.push_back(text[i] - '0');
  }
  Term tree = build_tree(digits, grammar);
  return NumeralParse{grammar, std::move(digits), std::move(tree)};
}

std::optional<NumeralParse> numeral_from_term(const Term& tree, NumeralGrammar grammar) {
  std::vector<int> digits;
  const Term* cur = &tree;
  while (!cur->is_leaf()) {
    const Term& digit = grammar == NumeralGrammar::ND ? cur->right() : cur->left();
    auto d = digit_of(digit);
    if (!d) return std::nullopt;
    digits.push_back(*d);
    cur = grammar == NumeralGrammar::ND ? &cur->left() : &cur->right();
  }
  auto d = digit_of(*cur);
  if (!d) return std::nullopt;
  digits.push_back(*d);
  if (grammar == NumeralGrammar::ND) std::reverse(digits.begin(), digits.end());
  return NumeralParse{grammar, std::move(digits), tree};
}

Integer intended_value(const NumeralParse& p) {
  return p.grammar == NumeralGrammar::ND ? value_nd(p.tree) : value_dn(p.tree);
}

Integer backwards_value(const NumeralParse& p) {
  if (p.grammar == NumeralGrammar::ND && !p.tree.is_leaf()) {
    throw TypeError("backwards reading is defined on DN parses");
  }
  return backwards_dn(p.tree);
}

std::vector<std::string> all_numerals(std::size_t max_length) {
  std::vector<std::string> out;
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::string s(len, '0');
    while (true) {
      out.push_back(s);
      std::size_t i = len;
      while (i > 0 && s[i - 1] == '9') s[--i] = '0';
      if (i == 0) break;
      ++s[i - 1];
    }
  }
  return out;
}

std::optional<Term> NumeralStream::at(std::size_t index) const {
  std::size_t len = 1;
  std::size_t block = 10;
  while (index >= block) {
    index -= block;
    ++len;
    if (max_length_ && len > *max_length_) return std::nullopt;
    if (block > static_cast<std::size_t>(-1) / 10) return std::nullopt;
    block *= 10;
  }
  if (max_length_ && len > *max_length_) return std::nullopt;
  std::string digits(len, '0');
  for (std::size_t i = len; i-- > 0 && index > 0; index /= 10) {
    digits[i] = static_cast<char>('0' + index % 10);
  }
  return parse_numeral(digits, grammar_).tree;
}

bool NumeralStream::contains(const Term& t) const {
  if (max_length_ && t.leaf_count() > *max_length_) return false;
  return numeral_from_term(t, grammar_).has_value();
}

std::optional<std::size_t> NumeralStream::bound() const {
  if (!max_length_) return std::nullopt;
  std::size_t total = 0;
  std::size_t block = 1;
  for (std::size_t len = 1; len <= *max_length_; ++len) {
    block *= 10;
    total += block;
  }
  return total;
}

Meaning NumeralStream::meaning(const Term& t) const {
  auto p = numeral_from_term(t, grammar_);
  if (!p) throw TypeError(render_term(t) + " is not a numeral of grammar " +
                          std::string(to_string(grammar_)));
  return Meaning::integer(intended_value(*p));
}

// ---------------------------------------------------------------------------
// Coordination

namespace {

bool is_connective(const Term& t) {
  return t.is_leaf() && (t.atom().name() == "+" || t.atom().name() == "&");
}

bool is_variable(const Term& t) { return t.is_leaf() && !is_connective(t); }

bool lookup(const Term& var, const BoolAssignment& env) {
  auto it = env.find(var.atom().name());
  if (it == env.end()) throw UnboundVariable("unbound variable '" + var.atom().name() + "'");
  return it->second;
}

// Matches (op.(x.y)) and returns op, x, y.
struct Application {
  std::string op;
  const Term* lhs;
  const Term* rhs;
};

std::optional<Application> as_application(const Term& t) {
  if (t.is_leaf() || !t.left().is_leaf() || t.right().is_leaf()) return std::nullopt;
  const std::string& op = t.left().atom().name();
  if (op != "+" && op != "&") {
    if (t.left().atom().name().size() == 1 &&
        std::string_view("|*^").find(op[0]) != std::string_view::npos) {
      throw UnknownOperator("unknown operator '" + op + "'");
    }
    return std::nullopt;
  }
  return Application{op, &t.right().left(), &t.right().right()};
}

bool combine(const std::string& op, bool x, bool y) { return op == "+" ? (x || y) : (x && y); }

bool eval_natural(const Term& t, const BoolAssignment& env) {
  if (is_variable(t)) return lookup(t, env);
  auto app = as_application(t);
  if (!app) throw TypeError(render_dotted_chain(t) + " is not a prefix-form formula");
  return combine(app->op, eval_natural(*app->lhs, env), eval_natural(*app->rhs, env));
}

bool eval_twisted(const Term& t, const BoolAssignment& env) {
  if (is_variable(t)) return lookup(t, env);
  auto app = as_application(t);
  if (!app) throw TypeError(render_dotted_chain(t) + " is not a prefix-form formula");
  if (is_variable(*app->lhs) && is_variable(*app->rhs)) {
    return combine(app->op, lookup(*app->lhs, env), lookup(*app->rhs, env));
  }
  if (app->op == "+" && is_variable(*app->lhs)) {
    auto inner = as_application(*app->rhs);
    if (inner && inner->op == "&" && is_variable(*inner->lhs) && is_variable(*inner->rhs)) {
      // v + (w & z) read as (v + w) & z
      return (lookup(*app->lhs, env) || lookup(*inner->lhs, env)) && lookup(*inner->rhs, env);
    }
  }
  throw TypeError("twisted semantics is undefined on " + render_dotted_chain(t));
}

bool is_formula(const Term& t) {
  if (is_variable(t)) return true;
  try {
    auto app = as_application(t);
    return app && is_formula(*app->lhs) && is_formula(*app->rhs);
  } catch (const UnknownOperator&) {
    return false;
  }
}

Meaning coordination_meaning(const Term& t, const BoolAssignment& env,
                             CoordinationSemantics semantics) {
  if (is_connective(t)) return Meaning::symbol(t.atom().name() == "+" ? "or" : "and");
  if (is_formula(t)) return Meaning::boolean(eval_coordination(t, env, semantics));
  if (t.is_leaf()) throw TypeError("unexpected atom " + t.atom().name());
  return Meaning::tuple({coordination_meaning(t.left(), env, semantics),
                         coordination_meaning(t.right(), env, semantics)});
}

}  // namespace

bool eval_coordination(const Term& expr, const BoolAssignment& env,
                       CoordinationSemantics semantics) {
  return semantics == CoordinationSemantics::Natural ? eval_natural(expr, env)
                                                     : eval_twisted(expr, env);
}

std::vector<BoolAssignment> all_assignments(const std::vector<std::string>& variables) {
  std::vector<BoolAssignment> out;
  const std::size_t n = variables.size();
  for (std::size_t mask = (std::size_t{1} << n); mask-- > 0;) {
    BoolAssignment env;
    for (std::size_t i = 0; i < n; ++i) env[variables[i]] = (mask >> (n - 1 - i)) & 1U;
    out.push_back(std::move(env));
  }
  return out;
}

std::string render_assignment(const BoolAssignment& env) {
  std::string out;
  for (const auto& [name, value] : env) {
    if (!out.empty()) out += ",";
    out += name + "=" + (value ? "1" : "0");
  }
  return out;
}

LanguageFragment idiom_fragment() {
  std::vector<Atom> atoms{Atom("wall"), Atom("seas"), Atom("high")};
  std::vector<Term> terms{make_term("(high.wall)"), make_term("(high.seas)")};
  return LanguageFragment::closure(std::move(atoms), terms);
}

MeaningAssignment idiom_meanings() {
  MeaningAssignment m;
  m.set(Term::leaf("wall"), Meaning::symbol("wall"));
  m.set(Term::leaf("seas"), Meaning::symbol("seas"));
  m.set(Term::leaf("high"), Meaning::symbol("high"));
  m.set(make_term("(high.wall)"), Meaning::symbol("high", {Meaning::symbol("wall")}));
  m.set(make_term("(high.seas)"), Meaning::symbol("open", {Meaning::symbol("seas")}));
  return m;
}

LanguageFragment coordination_fragment(bool extended) {
  std::vector<Term> terms{to_prefix_form(parse_infix("a+(b&c)"))};
  if (extended) terms.push_back(to_prefix_form(parse_infix("a+b")));
  return LanguageFragment::closure(terms);
}

MeaningAssignment coordination_meanings(const LanguageFragment& frag, const BoolAssignment& env,
                                        CoordinationSemantics semantics) {
  MeaningAssignment m;
  for (const Term& t : frag.terms()) m.set(t, coordination_meaning(t, env, semantics));
  return m;
}

}  // namespace compsem
