#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "compsem/term.hpp"

namespace compsem {

using Integer = mpz_class;
using Rational = mpq_class;

/// A semantic value. Equality is structural; an Integer never equals a
/// Rational even when they denote the same number.
///
/// Literal syntax (render/parse):
///   472  -3  7/2  true  false  sea  open(sea)  high(wall)  <1, false>
class Meaning {
 public:
  struct Symbol {
    std::string name;
    std::vector<Meaning> args;
    friend bool operator==(const Symbol&, const Symbol&) = default;
  };
  struct Tuple {
    std::vector<Meaning> items;
    friend bool operator==(const Tuple&, const Tuple&) = default;
  };
  enum class Kind { Integer, Rational, Boolean, Symbol, Tuple };

  static Meaning integer(Integer v) { return Meaning(Value(std::move(v))); }
  static Meaning integer(long v) { return integer(Integer(v)); }
  static Meaning rational(Rational v);
  static Meaning boolean(bool v) { return Meaning(Value(v)); }
  static Meaning symbol(std::string name, std::vector<Meaning> args = {});
  static Meaning tuple(std::vector<Meaning> items) { return Meaning(Value(Tuple{std::move(items)})); }

  Kind kind() const { return static_cast<Kind>(value_.index()); }
  bool is_numeric() const { return kind() == Kind::Integer || kind() == Kind::Rational; }

  const Integer& as_integer() const { return std::get<Integer>(value_); }
  const Rational& as_rational() const { return std::get<Rational>(value_); }
  bool as_boolean() const { return std::get<bool>(value_); }
  const Symbol& as_symbol() const { return std::get<Symbol>(value_); }
  const Tuple& as_tuple() const { return std::get<Tuple>(value_); }
  /// Integer or Rational as an exact rational; nullopt for other kinds.
  std::optional<Rational> to_rational() const;

  std::string render() const;
  static Meaning parse(std::string_view literal);

  friend bool operator==(const Meaning&, const Meaning&) = default;

 private:
  using Value = std::variant<Integer, Rational, bool, Symbol, Tuple>;
  explicit Meaning(Value v) : value_(std::move(v)) {}
  Value value_;
};

std::string kind_name(Meaning::Kind kind);

/// An arbitrary map m from terms to meanings. No relation between m(s.t)
/// and m(s), m(t) is assumed anywhere.
class MeaningAssignment {
 public:
  void set(const Term& t, Meaning m) { map_.insert_or_assign(t, std::move(m)); }
  const Meaning* find(const Term& t) const;
  /// Throws MissingMeanings when t has no meaning.
  const Meaning& at(const Term& t) const;
  std::size_t size() const { return map_.size(); }
  /// Terms of `frag` without a meaning, in fragment order.
  std::vector<Term> missing(const LanguageFragment& frag) const;

 private:
  std::unordered_map<Term, Meaning> map_;
};

}  // namespace compsem
