#include "compsem/meaning.hpp"

#include <cctype>

#include "compsem/error.hpp"

namespace compsem {

namespace {

bool is_symbol_char(char c) {
  auto u = static_cast<unsigned char>(c);
  return std::isprint(u) && !std::isspace(u) && c != ',' && c != '(' && c != ')' &&
         c != '<' && c != '>' && c != '/';
}

bool is_valid_symbol_name(std::string_view name) {
  if (name.empty() || name == "true" || name == "false") return false;
  if (std::isdigit(static_cast<unsigned char>(name[0])) || name[0] == '-') return false;
  for (char c : name) {
    if (!is_symbol_char(c)) return false;
  }
  return true;
}

void render_list(const std::vector<Meaning>& items, std::string& out) {
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += items[i].render();
  }
}

class LiteralParser {
 public:
  explicit LiteralParser(std::string_view text) : text_(text) {}

  Meaning parse_all() {
    Meaning m = parse();
    skip_ws();
    if (pos_ != text_.size()) {
      throw ParseError(std::string("unexpected '") + text_[pos_] + "' after meaning", pos_);
    }
    return m;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
  }

  std::vector<Meaning> parse_list(char close) {
    std::vector<Meaning> items;
    if (accept(close)) return items;
    do {
      items.push_back(parse());
    } while (accept(','));
    expect(close);
    return items;
  }

  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) throw ParseError("expected digits", pos_);
    return std::string(text_.substr(start, pos_ - start));
  }

  Meaning parse() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("expected a meaning but input ended", pos_);
    char c = text_[pos_];
    if (c == '<') {
      ++pos_;
      return Meaning::tuple(parse_list('>'));
    }
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      std::string num;
      if (c == '-') {
        num += '-';
        ++pos_;
      }
      num += digits();
      if (pos_ < text_.size() && text_[pos_] == '/') {
        std::size_t slash = pos_++;
        std::string den = digits();
        Integer d(den);
        if (d == 0) throw ParseError("zero denominator", slash);
        Rational q{Integer(num), d};
        q.canonicalize();
        return Meaning::rational(std::move(q));
      }
      return Meaning::integer(Integer(num));
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_symbol_char(text_[pos_])) ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    if (name.empty()) throw ParseError(std::string("unexpected '") + c + "'", start);
    if (name == "true") return Meaning::boolean(true);
    if (name == "false") return Meaning::boolean(false);
    if (!is_valid_symbol_name(name)) throw ParseError("invalid symbol '" + name + "'", start);
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      return Meaning::symbol(std::move(name), parse_list(')'));
    }
    return Meaning::symbol(std::move(name));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Meaning Meaning::rational(Rational v) {
  v.canonicalize();
  return Meaning(Value(std::move(v)));
}

Meaning Meaning::symbol(std::string name, std::vector<Meaning> args) {
  if (!is_valid_symbol_name(name)) throw TypeError("invalid symbol name '" + name + "'");
  return Meaning(Value(Symbol{std::move(name), std::move(args)}));
}

std::optional<Rational> Meaning::to_rational() const {
  switch (kind()) {
    case Kind::Integer:
      return Rational(as_integer());
    case Kind::Rational:
      return as_rational();
    default:
      return std::nullopt;
  }
}

std::string Meaning::render() const {
  switch (kind()) {
    case Kind::Integer:
      return as_integer().get_str();
    case Kind::Rational: {
      const Rational& q = as_rational();
      return q.get_num().get_str() + "/" + q.get_den().get_str();
    }
    case Kind::Boolean:
      return as_boolean() ? "true" : "false";
    case Kind::Symbol: {
      const Symbol& s = as_symbol();
      if (s.args.empty()) return s.name;
      std::string out = s.name + "(";
      render_list(s.args, out);
      return out + ")";
    }
    case Kind::Tuple: {
      std::string out = "<";
      render_list(as_tuple().items, out);
      return out + ">";
    }
  }
  return {};
}

Meaning Meaning::parse(std::string_view literal) { return LiteralParser(literal).parse_all(); }

std::string kind_name(Meaning::Kind kind) {
  switch (kind) {
    case Meaning::Kind::Integer:
      return "integer";
    case Meaning::Kind::Rational:
      return "rational";
    case Meaning::Kind::Boolean:
      return "boolean";
    case Meaning::Kind::Symbol:
      return "symbol";
    case Meaning::Kind::Tuple:
      return "tuple";
  }
  return "unknown";
}

const Meaning* MeaningAssignment::find(const Term& t) const {
  auto it = map_.find(t);
  return it == map_.end() ? nullptr : &it->second;
}

const Meaning& MeaningAssignment::at(const Term& t) const {
  const Meaning* m = find(t);
  if (!m) throw MissingMeanings("no meaning for " + render_term(t));
  return *m;
}

std::vector<Term> MeaningAssignment::missing(const LanguageFragment& frag) const {
  std::vector<Term> out;
  for (const Term& t : frag.terms()) {
    if (!find(t)) out.push_back(t);
  }
  return out;
}

}  // namespace compsem
