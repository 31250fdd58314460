#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "compsem/grammars.hpp"
#include "compsem/meaning.hpp"

namespace compsem {

// ---------------------------------------------------------------------------
// Function classes and samples

/// Bivariate polynomials with rational coefficients and total degree at most
/// `max_degree`.
struct PolyTwoVar {
  unsigned max_degree = 1;
  friend bool operator==(const PolyTwoVar&, const PolyTwoVar&) = default;
};

/// Arbitrary functions of `arity` projected argument values.
struct BoolFunOfProjections {
  std::size_t arity = 1;
  friend bool operator==(const BoolFunOfProjections&, const BoolFunOfProjections&) = default;
};

using FunctionClass = std::variant<PolyTwoVar, BoolFunOfProjections>;

std::string describe(const FunctionClass& cls);

/// One observation: the parts' meanings and the whole's meaning.
struct SamplePoint {
  std::vector<Meaning> args;
  Meaning target;
  std::string label;
  friend bool operator==(const SamplePoint&, const SamplePoint&) = default;
};

using SampleSet = std::vector<SamplePoint>;

// ---------------------------------------------------------------------------
// Polynomials

struct Monomial {
  unsigned x_power;
  unsigned y_power;
};

/// {x^i y^j : i + j <= degree} in graded lexicographic order:
/// 1, x, y, x^2, xy, y^2, x^3, ...
std::vector<Monomial> monomial_basis(unsigned degree);

struct Polynomial {
  unsigned degree = 0;
  /// One coefficient per monomial_basis(degree) entry.
  std::vector<Rational> coefficients;

  Rational evaluate(const Rational& x, const Rational& y) const;
  /// Coefficient of x^i y^j (zero outside the basis).
  Rational coefficient(unsigned i, unsigned j) const;
  bool has_natural_coefficients() const;
  std::string render() const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;
};

// ---------------------------------------------------------------------------
// Certificates

struct PolynomialFit {
  Polynomial polynomial;
  /// Dimension of the space of interpolants; 0 means the fit is unique.
  std::size_t nullity = 0;
  friend bool operator==(const PolynomialFit&, const PolynomialFit&) = default;
};

/// Target as a function of the observed argument tuples, in first-seen order.
struct TruthTable {
  std::vector<std::pair<std::vector<Meaning>, Meaning>> rows;
  friend bool operator==(const TruthTable&, const TruthTable&) = default;
};

struct Fitted {
  std::variant<PolynomialFit, TruthTable> function;
  friend bool operator==(const Fitted&, const Fitted&) = default;
};

/// Two samples with equal arguments and different targets.
struct RefutedByInconsistency {
  std::size_t first = 0;
  std::size_t second = 0;
  SamplePoint first_point;
  SamplePoint second_point;
  friend bool operator==(const RefutedByInconsistency&, const RefutedByInconsistency&) = default;
};

/// A subset of the samples whose interpolation constraints at `degree` are
/// jointly unsatisfiable. When the other witness points determine a unique
/// interpolant, it is recorded together with the held-out point it misses;
/// the held-out point is always the last witness.
struct RefutedByInfeasibility {
  unsigned degree = 0;
  std::vector<std::size_t> witness;
  std::vector<SamplePoint> points;
  std::optional<Polynomial> interpolant;
  std::optional<std::size_t> held_out;
  friend bool operator==(const RefutedByInfeasibility&, const RefutedByInfeasibility&) = default;
};

using Certificate = std::variant<Fitted, RefutedByInconsistency, RefutedByInfeasibility>;

inline bool is_fitted(const Certificate& c) { return std::holds_alternative<Fitted>(c); }
std::string describe(const Certificate& c);

// ---------------------------------------------------------------------------
// Decision procedures

/// Fits a polynomial of total degree <= class.max_degree through every
/// sample by exact elimination, adding samples in order. Returns Fitted
/// (free coefficients set to 0, nullity reported) or RefutedByInfeasibility
/// at the first sample that contradicts its predecessors. Throws TypeError
/// unless every sample has two numeric arguments and a numeric target.
Certificate fit_polynomial(const SampleSet& samples, const PolyTwoVar& cls);

struct BudgetReport {
  std::size_t budget = 0;
  /// Samples chosen, in order: each raises the rank of the chosen system.
  std::vector<std::size_t> selected;
  std::size_t rank = 0;
  std::size_t dimension = 0;
  /// True when the chosen samples pin down a single interpolant.
  bool unique = false;
  /// Absent when the chosen samples leave the interpolant undetermined.
  std::optional<Certificate> certificate;

  std::size_t nullity() const { return dimension - rank; }
  friend bool operator==(const BudgetReport&, const BudgetReport&) = default;
};

/// Chooses up to `budget` samples greedily (first sample that raises the
/// rank, in sample order). If they determine a unique interpolant, checks it
/// against every sample: Fitted when it extends, otherwise
/// RefutedByInfeasibility held out at the first miss.
BudgetReport fit_polynomial_with_budget(const SampleSet& samples, const PolyTwoVar& cls,
                                        std::size_t budget);

/// Fitted truth table iff no two samples share arguments but differ in
/// target; otherwise the first such pair (by the later sample's position).
Certificate check_functional_dependence(const SampleSet& samples);

/// Dispatches on the class. Throws TypeError when argument arity does not
/// match a BoolFunOfProjections class.
Certificate fit(const SampleSet& samples, const FunctionClass& cls);

/// Replays a certificate against the samples it was produced for. Throws
/// CertificateMismatch when witness indices or points do not match.
bool verify_certificate(const Certificate& cert, const SampleSet& samples);

// ---------------------------------------------------------------------------
// Sample sets from the demo grammars

enum class NumeralReading { Intended, Backwards };

/// One sample per composite numeral of length 2..max_length (leading zeros
/// included), args in tree order: ND (v(N), d), DN (d, v(N)).
/// Backwards is only meaningful for DN.
SampleSet numeral_samples(NumeralGrammar grammar, std::size_t max_length,
                          NumeralReading reading = NumeralReading::Intended);

/// Grid samples over the intervals 0..9, 10..99, ..., 10^d..: for each
/// numeral length L in 1..degree+1, the first degree+2 values of the
/// interval for the longer constituent against digits 0..degree+1.
SampleSet interval_samples(NumeralGrammar grammar, unsigned degree);

/// For every assignment of a, b, c (all-true first): args (m(a), m(b)&m(c)),
/// target (m(a)+m(b))&m(c).
SampleSet coordination_samples();

struct RefutationLimits {
  /// Longest numeral the driver may generate.
  std::size_t max_numeral_length = 10;
};

/// Runs fit_polynomial on interval_samples(grammar, d) for d = 1..max_degree,
/// one certificate per degree. Throws ResourceLimit when degree + 2 exceeds
/// limits.max_numeral_length.
std::vector<Certificate> refute_polynomial_all_degrees(NumeralGrammar grammar,
                                                       unsigned max_degree,
                                                       RefutationLimits limits = {});

}  // namespace compsem
