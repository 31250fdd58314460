#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace compsem {

/// An element of the atom alphabet. Names are non-empty and may not contain
/// the concatenation separator '.', the end marker '$', parentheses or
/// whitespace.
class Atom {
 public:
  explicit Atom(std::string name);

  const std::string& name() const { return name_; }

  friend bool operator==(const Atom&, const Atom&) = default;
  friend auto operator<=>(const Atom&, const Atom&) = default;

  static bool is_valid_name(std::string_view name);

 private:
  std::string name_;
};

/// A parse tree: either a single atom or the (non-associative) concatenation
/// of two subtrees. Terms are immutable and cheap to copy; structurally equal
/// trees compare equal regardless of sharing.
class Term {
 public:
  static Term leaf(Atom atom);
  static Term leaf(std::string name) { return leaf(Atom(std::move(name))); }
  static Term node(Term left, Term right);

  bool is_leaf() const;
  /// Precondition: is_leaf().
  const Atom& atom() const;
  /// Precondition: !is_leaf().
  const Term& left() const;
  const Term& right() const;

  std::size_t hash() const;
  std::size_t leaf_count() const;
  std::size_t depth() const;
  std::vector<Atom> leaves() const;

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// `body.$`: a term of the marker-extended language.
struct DollarTerm {
  Term body;
  friend bool operator==(const DollarTerm&, const DollarTerm&) = default;
};

/// The reserved end-of-expression marker `$` used as a value.
struct Marker {
  friend bool operator==(Marker, Marker) { return true; }
};

/// Parses the fully bracketed dotted syntax: `a`, `(high.seas)`,
/// `((a.b).c)`. Whitespace between tokens is ignored.
Term make_term(std::string_view text);
std::string render_term(const Term& t);
std::string render_term(const DollarTerm& t);

/// Parses an unbracketed chain `x.y.z` as the right-nested term
/// `(x.(y.z))`, the convention used for prefix-form operator terms.
Term parse_dotted_chain(std::string_view text);
/// Renders the right spine of `t` as a dotted chain when every left child on
/// it is a leaf (`+.a.&.b.c`); otherwise falls back to render_term.
std::string render_dotted_chain(const Term& t);

}  // namespace compsem

template <>
struct std::hash<compsem::Term> {
  std::size_t operator()(const compsem::Term& t) const noexcept { return t.hash(); }
};

namespace compsem {

/// A finite set of terms closed downward under the partial concatenation.
/// Terms keep their insertion order, which is the enumeration order used by
/// the mu tables. The allowed pairs are exactly the decompositions of the
/// non-leaf terms.
class LanguageFragment {
 public:
  struct Composition {
    std::size_t left;
    std::size_t right;
    std::size_t result;
    friend bool operator==(const Composition&, const Composition&) = default;
  };

  /// Validates every fragment invariant; throws InvalidFragment otherwise.
  LanguageFragment(std::vector<Atom> atoms, std::vector<Term> terms,
                   const std::vector<std::pair<Term, Term>>& allowed_pairs);

  /// Smallest fragment containing `terms` (and the leaves of `atoms`),
  /// listing subterms before the terms built from them.
  static LanguageFragment closure(std::vector<Atom> atoms, std::span<const Term> terms);
  static LanguageFragment closure(std::span<const Term> terms) { return closure({}, terms); }

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<Term>& terms() const { return terms_; }
  /// Ordered by result index.
  const std::vector<Composition>& compositions() const { return compositions_; }
  std::vector<std::pair<Term, Term>> allowed_pairs() const;

  std::size_t size() const { return terms_.size(); }
  const Term& term(std::size_t index) const { return terms_.at(index); }
  std::optional<std::size_t> index_of(const Term& t) const;
  bool contains(const Term& t) const { return index_.contains(t); }
  bool allows(const Term& s, const Term& t) const;

  friend bool operator==(const LanguageFragment& a, const LanguageFragment& b) {
    return a.atoms_ == b.atoms_ && a.terms_ == b.terms_;
  }

 private:
  std::vector<Atom> atoms_;
  std::vector<Term> terms_;
  std::unordered_map<Term, std::size_t> index_;
  std::vector<Composition> compositions_;
};

/// The partial operation: node(s, t) when the fragment allows the pair.
/// Throws UndefinedComposition for a pair outside the domain and
/// InvalidFragment when s or t is not a term of the fragment.
Term concat(const LanguageFragment& frag, const Term& s, const Term& t);

/// An expression over variables and named binary operators, as written in
/// infix notation.
class OperatorExpr {
 public:
  static OperatorExpr variable(std::string name);
  static OperatorExpr binary(std::string op, OperatorExpr lhs, OperatorExpr rhs);

  bool is_variable() const { return lhs_ == nullptr; }
  /// Variable name, or operator symbol for binary nodes.
  const std::string& name() const { return name_; }
  const OperatorExpr& lhs() const { return *lhs_; }
  const OperatorExpr& rhs() const { return *rhs_; }

 private:
  std::string name_;
  std::shared_ptr<const OperatorExpr> lhs_;
  std::shared_ptr<const OperatorExpr> rhs_;
};

/// Infix parser for expressions like `a+(b&c)`. Operators are the single
/// characters `+ & | * ^`; `&` and `*` bind tighter than the others, and all
/// operators associate to the left.
OperatorExpr parse_infix(std::string_view text);

inline const std::vector<std::string>& boolean_operators() {
  static const std::vector<std::string> ops{"+", "&"};
  return ops;
}

/// Prefix form: `x op y` becomes `op.x.y`, bracketed right-nested as
/// `(op.(x'.y'))`. Throws UnknownOperator for operators outside `operators`.
Term to_prefix_form(const OperatorExpr& expr,
                    std::span<const std::string> operators = boolean_operators());

}  // namespace compsem
