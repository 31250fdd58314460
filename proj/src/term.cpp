#include "compsem/term.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>
#include <variant>

#include "compsem/error.hpp"

namespace compsem {

namespace {

bool is_atom_char(char c) {
  auto u = static_cast<unsigned char>(c);
  return std::isprint(u) && !std::isspace(u) && c != '.' && c != '$' && c != '(' &&
         c != ')';
}

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

// ---------------------------------------------------------------------------
// Atom

Atom::Atom(std::string name) : name_(std::move(name)) {
  if (!is_valid_name(name_)) {
    throw InvalidAtom("invalid atom name '" + name_ + "'");
  }
}

bool Atom::is_valid_name(std::string_view name) {
  return !name.empty() && std::all_of(name.begin(), name.end(), is_atom_char);
}

// ---------------------------------------------------------------------------
// Term

struct Term::Node {
  std::variant<Atom, std::pair<Term, Term>> content;
  std::size_t hash;
  std::size_t leaf_count;
  std::size_t depth;
};

Term Term::leaf(Atom atom) {
  std::size_t h = mix(0x51ed27, std::hash<std::string>{}(atom.name()));
  return Term(std::make_shared<const Node>(Node{std::move(atom), h, 1, 0}));
}

Term Term::node(Term left, Term right) {
  std::size_t h = mix(mix(0xa5a5a5, left.hash()), right.hash());
  std::size_t leaves = left.leaf_count() + right.leaf_count();
  std::size_t d = 1 + std::max(left.depth(), right.depth());
  return Term(std::make_shared<const Node>(
      Node{std::make_pair(std::move(left), std::move(right)), h, leaves, d}));
}

bool Term::is_leaf() const { return std::holds_alternative<Atom>(node_->content); }

const Atom& Term::atom() const { return std::get<Atom>(node_->content); }

const Term& Term::left() const { return std::get<1>(node_->content).first; }

const Term& Term::right() const { return std::get<1>(node_->content).second; }

std::size_t Term::hash() const { return node_->hash; }

std::size_t Term::leaf_count() const { return node_->leaf_count; }

std::size_t Term::depth() const { return node_->depth; }

std::vector<Atom> Term::leaves() const {
  std::vector<Atom> out;
  std::vector<const Term*> stack{this};
  while (!stack.empty()) {
    const Term* t = stack.back();
    stack.pop_back();
    if (t->is_leaf()) {
      out.push_back(t->atom());
    } else {
      stack.push_back(&t->right());
      stack.push_back(&t->left());
    }
  }
  return out;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.leaf_count() != b.leaf_count()) return false;
  if (a.is_leaf() != b.is_leaf()) return false;
  if (a.is_leaf()) return a.atom() == b.atom();
  return a.left() == b.left() && a.right() == b.right();
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (a.is_leaf() != b.is_leaf()) {
    return a.is_leaf() ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (a.is_leaf()) return a.atom() <=> b.atom();
  if (auto c = a.left() <=> b.left(); c != 0) return c;
  return a.right() <=> b.right();
}

// ---------------------------------------------------------------------------
// Surface syntax

namespace {

class TermParser {
 public:
  explicit TermParser(std::string_view text) : text_(text) {}

  Term parse_all() {
    Term t = parse();
    skip_ws();
    if (pos_ != text_.size()) {
      throw ParseError("unexpected trailing input '" + std::string(1, text_[pos_]) + "'",
                       pos_);
    }
    return t;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size()) {
      throw ParseError(std::string("expected '") + c + "' but input ended", pos_);
    }
    if (text_[pos_] != c) {
      throw ParseError(std::string("expected '") + c + "' but found '" + text_[pos_] + "'",
                       pos_);
    }
    ++pos_;
  }

  Term parse() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("expected a term but input ended", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Term left = parse();
      expect('.');
      Term right = parse();
      expect(')');
      return Term::node(std::move(left), std::move(right));
    }
    if (c == '$') throw ParseError("reserved marker '$' inside a term", pos_);
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_atom_char(text_[pos_])) ++pos_;
    if (pos_ == start) {
      throw ParseError(std::string("empty atom before '") + c + "'", pos_);
    }
    return Term::leaf(std::string(text_.substr(start, pos_ - start)));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void render_into(const Term& t, std::string& out) {
  if (t.is_leaf()) {
    out += t.atom().name();
    return;
  }
  out += '(';
  render_into(t.left(), out);
  out += '.';
  render_into(t.right(), out);
  out += ')';
}

}  // namespace

Term make_term(std::string_view text) { return TermParser(text).parse_all(); }

std::string render_term(const Term& t) {
  std::string out;
  render_into(t, out);
  return out;
}

std::string render_term(const DollarTerm& t) { return "(" + render_term(t.body) + ".$)"; }

Term parse_dotted_chain(std::string_view text) {
  std::vector<Term> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '.') {
      std::string_view name = text.substr(start, i - start);
      if (name.empty()) throw ParseError("empty atom in dotted chain", i);
      for (std::size_t k = 0; k < name.size(); ++k) {
        if (!is_atom_char(name[k])) {
          throw ParseError(std::string("invalid character '") + name[k] + "' in atom",
                           start + k);
        }
      }
      parts.push_back(Term::leaf(std::string(name)));
      start = i + 1;
    }
  }
  Term acc = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) acc = Term::node(parts[i], acc);
  return acc;
}

std::string render_dotted_chain(const Term& t) {
  std::string out;
  const Term* cur = &t;
  while (!cur->is_leaf()) {
    if (!cur->left().is_leaf()) return render_term(t);
    out += cur->left().atom().name();
    out += '.';
    cur = &cur->right();
  }
  out += cur->atom().name();
  return out;
}

// ---------------------------------------------------------------------------
// LanguageFragment

LanguageFragment::LanguageFragment(std::vector<Atom> atoms, std::vector<Term> terms,
                                   const std::vector<std::pair<Term, Term>>& allowed_pairs)
    : atoms_(std::move(atoms)), terms_(std::move(terms)) {
  std::unordered_set<std::string> atom_names;
  for (const Atom& a : atoms_) {
    if (!atom_names.insert(a.name()).second) {
      throw InvalidFragment("duplicate atom '" + a.name() + "'");
    }
  }
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (!index_.emplace(terms_[i], i).second) {
      throw InvalidFragment("duplicate term " + render_term(terms_[i]));
    }
    for (const Atom& a : terms_[i].leaves()) {
      if (!atom_names.contains(a.name())) {
        throw InvalidFragment("term " + render_term(terms_[i]) + " uses atom '" + a.name() +
                              "' outside the alphabet");
      }
    }
  }
  for (const Atom& a : atoms_) {
    if (!index_.contains(Term::leaf(a))) {
      throw InvalidFragment("atom '" + a.name() + "' is not listed among the terms");
    }
  }

  std::vector<bool> covered(terms_.size(), false);
  for (const auto& [s, t] : allowed_pairs) {
    auto si = index_of(s);
    auto ti = index_of(t);
    if (!si || !ti) {
      throw InvalidFragment("allowed pair (" + render_term(s) + ", " + render_term(t) +
                            ") has a component outside the fragment");
    }
    auto ri = index_of(Term::node(s, t));
    if (!ri) {
      throw InvalidFragment("allowed pair (" + render_term(s) + ", " + render_term(t) +
                            ") composes to a term outside the fragment");
    }
    if (covered[*ri]) {
      throw InvalidFragment("duplicate allowed pair (" + render_term(s) + ", " +
                            render_term(t) + ")");
    }
    covered[*ri] = true;
    compositions_.push_back({*si, *ti, *ri});
  }
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (!terms_[i].is_leaf() && !covered[i]) {
      throw InvalidFragment("term " + render_term(terms_[i]) +
                            " does not decompose into an allowed pair");
    }
  }
  std::sort(compositions_.begin(), compositions_.end(),
            [](const Composition& a, const Composition& b) { return a.result < b.result; });
}

LanguageFragment LanguageFragment::closure(std::vector<Atom> atoms,
                                           std::span<const Term> terms) {
  std::vector<Term> ordered;
  std::unordered_set<Term> seen;
  std::vector<Atom> alphabet;
  std::unordered_set<std::string> atom_seen;

  auto add_atom = [&](const Atom& a) {
    if (atom_seen.insert(a.name()).second) alphabet.push_back(a);
  };
  // Post-order insertion keeps every subterm ahead of its parents.
  auto add = [&](auto&& self, const Term& t) -> void {
    if (seen.contains(t)) return;
    if (t.is_leaf()) {
      add_atom(t.atom());
    } else {
      self(self, t.left());
      self(self, t.right());
    }
    seen.insert(t);
    ordered.push_back(t);
  };
  for (const Atom& a : atoms) add(add, Term::leaf(a));
  for (const Term& t : terms) add(add, t);

  std::vector<std::pair<Term, Term>> pairs;
  for (const Term& t : ordered) {
    if (!t.is_leaf()) pairs.emplace_back(t.left(), t.right());
  }
  return LanguageFragment(std::move(alphabet), std::move(ordered), pairs);
}

std::vector<std::pair<Term, Term>> LanguageFragment::allowed_pairs() const {
  std::vector<std::pair<Term, Term>> out;
  out.reserve(compositions_.size());
  for (const auto& c : compositions_) out.emplace_back(terms_[c.left], terms_[c.right]);
  return out;
}

std::optional<std::size_t> LanguageFragment::index_of(const Term& t) const {
  auto it = index_.find(t);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool LanguageFragment::allows(const Term& s, const Term& t) const {
  return contains(s) && contains(t) && contains(Term::node(s, t));
}

Term concat(const LanguageFragment& frag, const Term& s, const Term& t) {
  if (!frag.contains(s) || !frag.contains(t)) {
    throw InvalidFragment("concat arguments must be terms of the fragment");
  }
  Term st = Term::node(s, t);
  if (!frag.contains(st)) {
    throw UndefinedComposition("undefined composition " + render_term(s) + " . " +
                               render_term(t));
  }
  return st;
}

// ---------------------------------------------------------------------------
// Operator expressions

OperatorExpr OperatorExpr::variable(std::string name) {
  OperatorExpr e;
  e.name_ = std::move(name);
  return e;
}

OperatorExpr OperatorExpr::binary(std::string op, OperatorExpr lhs, OperatorExpr rhs) {
  OperatorExpr e;
  e.name_ = std::move(op);
  e.lhs_ = std::make_shared<const OperatorExpr>(std::move(lhs));
  e.rhs_ = std::make_shared<const OperatorExpr>(std::move(rhs));
  return e;
}

namespace {

class InfixParser {
 public:
  explicit InfixParser(std::string_view text) : text_(text) {}

  OperatorExpr parse_all() {
    OperatorExpr e = parse_sum();
    skip_ws();
    if (pos_ != text_.size()) {
      throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    }
    return e;
  }

 private:
  static bool is_var_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool peek_op(std::string_view ops, char& op) {
    skip_ws();
    if (pos_ < text_.size() && ops.find(text_[pos_]) != std::string_view::npos) {
      op = text_[pos_];
      return true;
    }
    return false;
  }

  OperatorExpr parse_sum() {
    OperatorExpr acc = parse_product();
    char op;
    while (peek_op("+|^", op)) {
      ++pos_;
      acc = OperatorExpr::binary(std::string(1, op), std::move(acc), parse_product());
    }
    return acc;
  }

  OperatorExpr parse_product() {
    OperatorExpr acc = parse_primary();
    char op;
    while (peek_op("&*", op)) {
      ++pos_;
      acc = OperatorExpr::binary(std::string(1, op), std::move(acc), parse_primary());
    }
    return acc;
  }

  OperatorExpr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("expected an operand but input ended", pos_);
    if (text_[pos_] == '(') {
      ++pos_;
      OperatorExpr e = parse_sum();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return e;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_var_char(text_[pos_])) ++pos_;
    if (pos_ == start) {
      throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    }
    return OperatorExpr::variable(std::string(text_.substr(start, pos_ - start)));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

OperatorExpr parse_infix(std::string_view text) { return InfixParser(text).parse_all(); }

Term to_prefix_form(const OperatorExpr& expr, std::span<const std::string> operators) {
  if (expr.is_variable()) return Term::leaf(expr.name());
  if (std::find(operators.begin(), operators.end(), expr.name()) == operators.end()) {
    throw UnknownOperator("unknown operator '" + expr.name() + "'");
  }
  Term args = Term::node(to_prefix_form(expr.lhs(), operators),
                         to_prefix_form(expr.rhs(), operators));
  return Term::node(Term::leaf(expr.name()), std::move(args));
}

}  // namespace compsem
