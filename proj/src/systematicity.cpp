#include "compsem/systematicity.hpp"

#include <algorithm>

#include "compsem/error.hpp"
#include "compsem/linear_system.hpp"

namespace compsem {

std::string describe(const FunctionClass& cls) {
  if (const auto* p = std::get_if<PolyTwoVar>(&cls)) {
    return "poly2(degree<=" + std::to_string(p->max_degree) + ")";
  }
  return "boolfun(arity=" + std::to_string(std::get<BoolFunOfProjections>(cls).arity) + ")";
}

// ---------------------------------------------------------------------------
// Polynomials

std::vector<Monomial> monomial_basis(unsigned degree) {
  std::vector<Monomial> out;
  for (unsigned total = 0; total <= degree; ++total) {
    for (unsigned i = total + 1; i-- > 0;) out.push_back({i, total - i});
  }
  return out;
}

namespace {

Rational power(const Rational& base, unsigned exp) {
  Rational out(1);
  for (unsigned k = 0; k < exp; ++k) out *= base;
  return out;
}

std::vector<Rational> monomial_row(const std::vector<Monomial>& basis, const Rational& x,
                                   const Rational& y) {
  std::vector<Rational> row;
  row.reserve(basis.size());
  for (const Monomial& m : basis) row.push_back(power(x, m.x_power) * power(y, m.y_power));
  return row;
}

std::string render_rational(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

struct NumericPoint {
  Rational x;
  Rational y;
  Rational target;
};

NumericPoint numeric_point(const SamplePoint& s, std::size_t index) {
  if (s.args.size() != 2) {
    throw TypeError("sample " + std::to_string(index) + " has " +
                    std::to_string(s.args.size()) + " arguments; polynomial classes need 2");
  }
  auto x = s.args[0].to_rational();
  auto y = s.args[1].to_rational();
  auto t = s.target.to_rational();
  if (!x || !y || !t) {
    throw TypeError("sample " + std::to_string(index) +
                    " mixes value kinds; polynomial classes need numeric values");
  }
  return {*x, *y, *t};
}

Polynomial make_polynomial(unsigned degree, std::vector<Rational> coefficients) {
  return Polynomial{degree, std::move(coefficients)};
}

}  // namespace

Rational Polynomial::evaluate(const Rational& x, const Rational& y) const {
  auto basis = monomial_basis(degree);
  Rational sum(0);
  for (std::size_t k = 0; k < basis.size() && k < coefficients.size(); ++k) {
    if (coefficients[k] == 0) continue;
    sum += coefficients[k] * power(x, basis[k].x_power) * power(y, basis[k].y_power);
  }
  return sum;
}

Rational Polynomial::coefficient(unsigned i, unsigned j) const {
  auto basis = monomial_basis(degree);
  for (std::size_t k = 0; k < basis.size() && k < coefficients.size(); ++k) {
    if (basis[k].x_power == i && basis[k].y_power == j) return coefficients[k];
  }
  return Rational(0);
}

bool Polynomial::has_natural_coefficients() const {
  return std::all_of(coefficients.begin(), coefficients.end(),
                     [](const Rational& q) { return q >= 0 && q.get_den() == 1; });
}

std::string Polynomial::render() const {
  auto basis = monomial_basis(degree);
  std::string out;
  for (std::size_t k = 0; k < basis.size() && k < coefficients.size(); ++k) {
    const Rational& c = coefficients[k];
    if (c == 0) continue;
    std::string mono;
    auto factor = [&](const char* var, unsigned p) {
      if (p == 0) return;
      if (!mono.empty()) mono += "*";
      mono += var;
      if (p > 1) mono += "^" + std::to_string(p);
    };
    factor("x", basis[k].x_power);
    factor("y", basis[k].y_power);

    Rational mag = abs(c);
    std::string term;
    if (mono.empty()) {
      term = render_rational(mag);
    } else if (mag == 1) {
      term = mono;
    } else {
      term = render_rational(mag) + "*" + mono;
    }
    if (out.empty()) {
      out = (c < 0 ? "-" : "") + term;
    } else {
      out += (c < 0 ? " - " : " + ") + term;
    }
  }
  return out.empty() ? "0" : out;
}

std::string describe(const Certificate& c) {
  if (const auto* f = std::get_if<Fitted>(&c)) {
    if (const auto* p = std::get_if<PolynomialFit>(&f->function)) {
      std::string out = "Fitted p(x,y) = " + p->polynomial.render();
      if (p->nullity > 0) out += " (one of a " + std::to_string(p->nullity) + "-dim family)";
      return out;
    }
    return "Fitted truth table with " +
           std::to_string(std::get<TruthTable>(f->function).rows.size()) + " rows";
  }
  if (const auto* r = std::get_if<RefutedByInconsistency>(&c)) {
    std::string args;
    for (const auto& a : r->first_point.args) args += (args.empty() ? "" : ", ") + a.render();
    return "RefutedByInconsistency: args (" + args + ") map to " +
           r->first_point.target.render() + " [" + r->first_point.label + "] and " +
           r->second_point.target.render() + " [" + r->second_point.label + "]";
  }
  const auto& r = std::get<RefutedByInfeasibility>(c);
  std::string out = "RefutedByInfeasibility at degree " + std::to_string(r.degree) + " with " +
                    std::to_string(r.witness.size()) + " witness samples";
  if (r.interpolant && r.held_out) {
    const SamplePoint& h = r.points.back();
    Rational predicted = r.interpolant->evaluate(*h.args.at(0).to_rational(), *h.args.at(1).to_rational());
    out += "; the interpolant " + r.interpolant->render() + " of the others gives " +
           Meaning::rational(predicted).render() + " at sample " + h.label + " (index " +
           std::to_string(*r.held_out) + "), target " + h.target.render();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Decision procedures

Certificate fit_polynomial(const SampleSet& samples, const PolyTwoVar& cls) {
  if (samples.empty()) throw TypeError("cannot fit an empty sample set");
  auto basis = monomial_basis(cls.max_degree);
  std::vector<NumericPoint> points;
  points.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) points.push_back(numeric_point(samples[i], i));

  IncrementalEliminator elim(basis.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const bool full_rank_before = elim.rank() == basis.size();
    auto before = full_rank_before ? elim.solution() : std::vector<Rational>{};
    auto outcome = elim.add(monomial_row(basis, points[i].x, points[i].y), points[i].target, i);
    if (outcome != IncrementalEliminator::Outcome::Inconsistent) continue;

    RefutedByInfeasibility r;
    r.degree = cls.max_degree;
    r.witness = elim.basis_origins();
    r.witness.push_back(i);
    for (std::size_t w : r.witness) r.points.push_back(samples[w]);
    if (full_rank_before) {
      r.interpolant = make_polynomial(cls.max_degree, std::move(before));
      r.held_out = i;
    }
    return r;
  }
  return Fitted{PolynomialFit{make_polynomial(cls.max_degree, elim.solution()), elim.nullity()}};
}

BudgetReport fit_polynomial_with_budget(const SampleSet& samples, const PolyTwoVar& cls,
                                        std::size_t budget) {
  if (samples.empty()) throw TypeError("cannot fit an empty sample set");
  auto basis = monomial_basis(cls.max_degree);
  std::vector<NumericPoint> points;
  points.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) points.push_back(numeric_point(samples[i], i));

  BudgetReport report;
  report.budget = budget;
  report.dimension = basis.size();
  IncrementalEliminator elim(basis.size());
  for (std::size_t i = 0; i < points.size() && report.selected.size() < budget; ++i) {
    auto outcome = elim.add(monomial_row(basis, points[i].x, points[i].y), points[i].target, i);
    if (outcome == IncrementalEliminator::Outcome::Independent) report.selected.push_back(i);
  }
  report.rank = elim.rank();
  if (report.rank < report.dimension) return report;

  report.unique = true;
  Polynomial p = make_polynomial(cls.max_degree, elim.solution());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (p.evaluate(points[i].x, points[i].y) == points[i].target) continue;
    RefutedByInfeasibility r;
    r.degree = cls.max_degree;
    r.witness = report.selected;
    r.witness.push_back(i);
    for (std::size_t w : r.witness) r.points.push_back(samples[w]);
    r.interpolant = std::move(p);
    r.held_out = i;
    report.certificate = std::move(r);
    return report;
  }
  report.certificate = Fitted{PolynomialFit{std::move(p), 0}};
  return report;
}

Certificate check_functional_dependence(const SampleSet& samples) {
  TruthTable table;
  std::vector<std::size_t> first_seen;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const SamplePoint& s = samples[i];
    auto it = std::find_if(table.rows.begin(), table.rows.end(),
                           [&](const auto& row) { return row.first == s.args; });
    if (it == table.rows.end()) {
      table.rows.emplace_back(s.args, s.target);
      first_seen.push_back(i);
      continue;
    }
    if (it->second == s.target) continue;
    // Earliest sample with these arguments and a different target.
    for (std::size_t j = 0; j < i; ++j) {
      if (samples[j].args == s.args && samples[j].target != s.target) {
        return RefutedByInconsistency{j, i, samples[j], s};
      }
    }
  }
  return Fitted{std::move(table)};
}

Certificate fit(const SampleSet& samples, const FunctionClass& cls) {
  if (const auto* p = std::get_if<PolyTwoVar>(&cls)) return fit_polynomial(samples, *p);
  const auto& b = std::get<BoolFunOfProjections>(cls);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].args.size() != b.arity) {
      throw TypeError("sample " + std::to_string(i) + " has arity " +
                      std::to_string(samples[i].args.size()) + ", class expects " +
                      std::to_string(b.arity));
    }
  }
  return check_functional_dependence(samples);
}

namespace {

void check_witness(const SampleSet& samples, std::size_t index, const SamplePoint& point) {
  if (index >= samples.size()) {
    throw CertificateMismatch("witness index " + std::to_string(index) +
                              " is outside the sample set");
  }
  if (!(samples[index] == point)) {
    throw CertificateMismatch("witness sample " + std::to_string(index) +
                              " differs from the sample set");
  }
}

bool verify_fitted(const Fitted& f, const SampleSet& samples) {
  if (const auto* pf = std::get_if<PolynomialFit>(&f.function)) {
    const Polynomial& p = pf->polynomial;
    if (p.coefficients.size() != monomial_basis(p.degree).size()) return false;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      NumericPoint pt;
      try {
        pt = numeric_point(samples[i], i);
      } catch (const TypeError& e) {
        throw CertificateMismatch(std::string("polynomial certificate on non-numeric samples: ") +
                                  e.what());
      }
      if (p.evaluate(pt.x, pt.y) != pt.target) return false;
    }
    return true;
  }
  const auto& table = std::get<TruthTable>(f.function);
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (table.rows[i].first == table.rows[j].first) return false;
    }
  }
  for (const SamplePoint& s : samples) {
    auto it = std::find_if(table.rows.begin(), table.rows.end(),
                           [&](const auto& row) { return row.first == s.args; });
    if (it == table.rows.end() || it->second != s.target) return false;
  }
  return true;
}

bool verify_infeasibility(const RefutedByInfeasibility& r, const SampleSet& samples) {
  if (r.witness.size() != r.points.size() || r.witness.empty()) {
    throw CertificateMismatch("witness indices and points differ in length");
  }
  for (std::size_t k = 0; k < r.witness.size(); ++k) check_witness(samples, r.witness[k], r.points[k]);

  auto basis = monomial_basis(r.degree);
  std::vector<NumericPoint> points;
  for (std::size_t k = 0; k < r.points.size(); ++k) {
    try {
      points.push_back(numeric_point(r.points[k], r.witness[k]));
    } catch (const TypeError& e) {
      throw CertificateMismatch(e.what());
    }
  }

  IncrementalEliminator elim(basis.size());
  bool contradiction = false;
  for (std::size_t k = 0; k < points.size() && !contradiction; ++k) {
    contradiction = elim.add(monomial_row(basis, points[k].x, points[k].y), points[k].target,
                             k) == IncrementalEliminator::Outcome::Inconsistent;
  }
  if (!contradiction) return false;

  if (r.interpolant || r.held_out) {
    if (!r.interpolant || !r.held_out || *r.held_out != r.witness.back()) return false;
    const Polynomial& p = *r.interpolant;
    if (p.degree != r.degree || p.coefficients.size() != basis.size()) return false;
    for (std::size_t k = 0; k + 1 < points.size(); ++k) {
      if (p.evaluate(points[k].x, points[k].y) != points[k].target) return false;
    }
    const NumericPoint& miss = points.back();
    if (p.evaluate(miss.x, miss.y) == miss.target) return false;
  }
  return true;
}

}  // namespace

bool verify_certificate(const Certificate& cert, const SampleSet& samples) {
  if (const auto* f = std::get_if<Fitted>(&cert)) return verify_fitted(*f, samples);
  if (const auto* r = std::get_if<RefutedByInconsistency>(&cert)) {
    check_witness(samples, r->first, r->first_point);
    check_witness(samples, r->second, r->second_point);
    return r->first != r->second && r->first_point.args == r->second_point.args &&
           r->first_point.target != r->second_point.target;
  }
  return verify_infeasibility(std::get<RefutedByInfeasibility>(cert), samples);
}

// ---------------------------------------------------------------------------
// Sample sets

SampleSet numeral_samples(NumeralGrammar grammar, std::size_t max_length,
                          NumeralReading reading) {
  SampleSet out;
  for (const std::string& s : all_numerals(max_length)) {
    if (s.size() < 2) continue;
    NumeralParse whole = parse_numeral(s, grammar);
    auto value = [&](const Term& t) {
      NumeralParse p = *numeral_from_term(t, grammar);
      return reading == NumeralReading::Intended ? intended_value(p) : backwards_value(p);
    };
    const Term& l = whole.tree.left();
    const Term& r = whole.tree.right();
    out.push_back(SamplePoint{{Meaning::integer(value(l)), Meaning::integer(value(r))},
                              Meaning::integer(value(whole.tree)),
                              s});
  }
  return out;
}

SampleSet interval_samples(NumeralGrammar grammar, unsigned degree) {
  const unsigned grid = degree + 2;
  const unsigned digits = std::min(grid, 10U);
  SampleSet out;
  Integer scale(1);
  for (unsigned len = 1; len <= degree + 1; ++len) {
    Integer low = len == 1 ? Integer(0) : scale;
    scale *= 10;
    for (unsigned k = 0; k < grid; ++k) {
      Integer n = low + k;
      if (n >= scale) break;
      for (unsigned d = 0; d < digits; ++d) {
        std::string label;
        Integer target;
        std::vector<Meaning> args;
        if (grammar == NumeralGrammar::DN) {
          label = std::to_string(d) + n.get_str();
          target = d * scale + n;
          args = {Meaning::integer(d), Meaning::integer(n)};
        } else {
          label = n.get_str() + std::to_string(d);
          target = 10 * n + d;
          args = {Meaning::integer(n), Meaning::integer(d)};
        }
        out.push_back(SamplePoint{std::move(args), Meaning::integer(target), std::move(label)});
      }
    }
  }
  return out;
}

SampleSet coordination_samples() {
  SampleSet out;
  for (const BoolAssignment& env : all_assignments({"a", "b", "c"})) {
    bool a = env.at("a");
    bool b = env.at("b");
    bool c = env.at("c");
    out.push_back(SamplePoint{{Meaning::boolean(a), Meaning::boolean(b && c)},
                              Meaning::boolean((a || b) && c),
                              render_assignment(env)});
  }
  return out;
}

std::vector<Certificate> refute_polynomial_all_degrees(NumeralGrammar grammar,
                                                       unsigned max_degree,
                                                       RefutationLimits limits) {
  if (max_degree < 1) throw TypeError("max degree must be at least 1");
  if (max_degree + 2 > limits.max_numeral_length) {
    throw ResourceLimit("degree " + std::to_string(max_degree) + " needs numerals of length " +
                        std::to_string(max_degree + 2) + ", above the configured bound " +
                        std::to_string(limits.max_numeral_length));
  }
  std::vector<Certificate> out;
  for (unsigned d = 1; d <= max_degree; ++d) {
    out.push_back(fit_polynomial(interval_samples(grammar, d), PolyTwoVar{d}));
  }
  return out;
}

}  // namespace compsem
