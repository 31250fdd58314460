#include <algorithm>
#include <random>

#include "doctest.h"

#include "compsem/error.hpp"
#include "compsem/grammars.hpp"
#include "compsem/systematicity.hpp"

using namespace compsem;

namespace {

SamplePoint numeric(long x, long y, long target, std::string label = {}) {
  return {{Meaning::integer(x), Meaning::integer(y)}, Meaning::integer(target), std::move(label)};
}

Rational at(const Polynomial& p, const SamplePoint& s) {
  return p.evaluate(*s.args[0].to_rational(), *s.args[1].to_rational());
}

// Checks an infeasibility certificate by evaluation alone: the interpolant
// passes through every witness point except the held-out one.
void check_infeasibility(const RefutedByInfeasibility& r, const SampleSet& samples) {
  REQUIRE(r.interpolant);
  REQUIRE(r.held_out);
  REQUIRE(r.witness.size() == r.points.size());
  CHECK(r.witness.back() == *r.held_out);
  for (std::size_t k = 0; k < r.witness.size(); ++k) {
    CHECK(samples.at(r.witness[k]) == r.points[k]);
    bool hits = at(*r.interpolant, r.points[k]) == *r.points[k].target.to_rational();
    CHECK(hits == (k + 1 < r.witness.size()));
  }
  CHECK(r.witness.size() == monomial_basis(r.degree).size() + 1);
}

}  // namespace

TEST_CASE("monomial basis is graded lexicographic") {
  auto b = monomial_basis(2);
  REQUIRE(b.size() == 6);
  std::vector<std::pair<unsigned, unsigned>> got;
  for (auto m : b) got.emplace_back(m.x_power, m.y_power);
  CHECK(got == std::vector<std::pair<unsigned, unsigned>>{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}});
  CHECK(monomial_basis(4).size() == 15);
}

TEST_CASE("ND numerals fit 10x + y") {
  SampleSet s = numeral_samples(NumeralGrammar::ND, 3);
  CHECK(s.size() == 1100);
  auto c = fit(s, PolyTwoVar{1});
  REQUIRE(is_fitted(c));
  const auto& pf = std::get<PolynomialFit>(std::get<Fitted>(c).function);
  CHECK(pf.nullity == 0);
  CHECK(pf.polynomial.coefficients == std::vector<Rational>{0, 10, 1});
  CHECK(pf.polynomial.has_natural_coefficients());
  CHECK(pf.polynomial.render() == "10*x + y");
  for (const auto& p : s) CHECK(at(pf.polynomial, p) == *p.target.to_rational());
  CHECK(verify_certificate(c, s));
}

TEST_CASE("DN numerals refute every degree on the interval grid") {
  for (unsigned d = 1; d <= 4; ++d) {
    CAPTURE(d);
    SampleSet s = interval_samples(NumeralGrammar::DN, d);
    auto c = fit_polynomial(s, PolyTwoVar{d});
    REQUIRE(std::holds_alternative<RefutedByInfeasibility>(c));
    check_infeasibility(std::get<RefutedByInfeasibility>(c), s);
    CHECK(verify_certificate(c, s));

    // The same grid is consistent for ND.
    auto control = fit_polynomial(interval_samples(NumeralGrammar::ND, d), PolyTwoVar{d});
    REQUIRE(is_fitted(control));
    CHECK(std::get<PolynomialFit>(std::get<Fitted>(control).function).polynomial.render() == "10*x + y");
  }
  auto certs = refute_polynomial_all_degrees(NumeralGrammar::DN, 4);
  CHECK(certs.size() == 4);
  CHECK(std::none_of(certs.begin(), certs.end(), [](const Certificate& c) { return is_fitted(c); }));
  CHECK_THROWS_AS(refute_polynomial_all_degrees(NumeralGrammar::DN, 9), ResourceLimit);
  CHECK_NOTHROW(refute_polynomial_all_degrees(NumeralGrammar::DN, 9, RefutationLimits{11}));
}

TEST_CASE("refutation is monotone in the sample set") {
  std::mt19937 rng(8);
  SampleSet pool = numeral_samples(NumeralGrammar::DN, 3);
  for (int trial = 0; trial < 30; ++trial) {
    std::shuffle(pool.begin(), pool.end(), rng);
    SampleSet small(pool.begin(), pool.begin() + 20);
    SampleSet big(pool.begin(), pool.begin() + 60);
    for (unsigned d = 1; d <= 2; ++d) {
      bool refuted_small = !is_fitted(fit_polynomial(small, PolyTwoVar{d}));
      bool refuted_big = !is_fitted(fit_polynomial(big, PolyTwoVar{d}));
      if (refuted_small) CHECK(refuted_big);
    }
    // Fitting at one degree implies fitting at every higher one.
    if (is_fitted(fit_polynomial(small, PolyTwoVar{1}))) CHECK(is_fitted(fit_polynomial(small, PolyTwoVar{2})));
  }
}

TEST_CASE("backwards DN reading fits x + 10y") {
  SampleSet s = numeral_samples(NumeralGrammar::DN, 3, NumeralReading::Backwards);
  auto c = fit(s, PolyTwoVar{1});
  REQUIRE(is_fitted(c));
  const Polynomial& p = std::get<PolynomialFit>(std::get<Fitted>(c).function).polynomial;
  CHECK(p.render() == "x + 10*y");
}

TEST_CASE("budgeted fits") {
  auto nd = fit_polynomial_with_budget(numeral_samples(NumeralGrammar::ND, 3), PolyTwoVar{1}, 3);
  CHECK(nd.unique);
  CHECK(nd.rank == 3);
  CHECK(nd.selected.size() == 3);
  REQUIRE(nd.certificate);
  CHECK(is_fitted(*nd.certificate));

  SampleSet dn_samples = numeral_samples(NumeralGrammar::DN, 3);
  auto dn = fit_polynomial_with_budget(dn_samples, PolyTwoVar{1}, 3);
  CHECK(dn.unique);
  REQUIRE(dn.certificate);
  REQUIRE(std::holds_alternative<RefutedByInfeasibility>(*dn.certificate));
  check_infeasibility(std::get<RefutedByInfeasibility>(*dn.certificate), dn_samples);

  auto tight = fit_polynomial_with_budget(dn_samples, PolyTwoVar{1}, 2);
  CHECK_FALSE(tight.unique);
  CHECK(tight.nullity() == 1);
  CHECK_FALSE(tight.certificate);
}

TEST_CASE("coordination clash") {
  SampleSet s = coordination_samples();
  REQUIRE(s.size() == 8);
  auto c = fit(s, BoolFunOfProjections{2});
  REQUIRE(std::holds_alternative<RefutedByInconsistency>(c));
  const auto& r = std::get<RefutedByInconsistency>(c);
  CHECK(r.first_point.args == r.second_point.args);
  CHECK(r.first_point.args == std::vector<Meaning>{Meaning::boolean(true), Meaning::boolean(false)});
  CHECK(r.first_point.target != r.second_point.target);
  CHECK(r.first_point.label == "a=1,b=1,c=0");
  CHECK(r.second_point.label == "a=1,b=0,c=1");
  CHECK(verify_certificate(c, s));

  // Under the natural reading m(whole) = m(a) | (m(b) & m(c)) is a function of the parts.
  SampleSet natural;
  for (const auto& env : all_assignments({"a", "b", "c"})) {
    bool a = env.at("a"), bc = env.at("b") && env.at("c");
    natural.push_back({{Meaning::boolean(a), Meaning::boolean(bc)}, Meaning::boolean(a || bc),
                       render_assignment(env)});
  }
  auto ok = fit(natural, BoolFunOfProjections{2});
  REQUIRE(is_fitted(ok));
  CHECK(std::get<TruthTable>(std::get<Fitted>(ok).function).rows.size() == 4);
  CHECK_THROWS_AS(fit(natural, BoolFunOfProjections{3}), TypeError);
}

TEST_CASE("tampered certificates are rejected") {
  SampleSet s = interval_samples(NumeralGrammar::DN, 2);
  auto c = fit_polynomial(s, PolyTwoVar{2});
  REQUIRE(std::holds_alternative<RefutedByInfeasibility>(c));

  auto bad_index = std::get<RefutedByInfeasibility>(c);
  bad_index.witness[0] = s.size() + 5;
  CHECK_THROWS_AS(verify_certificate(bad_index, s), CertificateMismatch);

  auto bad_point = std::get<RefutedByInfeasibility>(c);
  bad_point.points[1].target = Meaning::integer(-1);
  CHECK_THROWS_AS(verify_certificate(bad_point, s), CertificateMismatch);

  // A consistent but wrong interpolant does not replay.
  auto bad_poly = std::get<RefutedByInfeasibility>(c);
  bad_poly.interpolant->coefficients[0] += 1;
  CHECK_FALSE(verify_certificate(bad_poly, s));

  SampleSet clash{numeric(1, 2, 3, "p"), numeric(1, 2, 4, "q")};
  auto r = fit(clash, BoolFunOfProjections{2});
  REQUIRE(std::holds_alternative<RefutedByInconsistency>(r));
  auto swapped = std::get<RefutedByInconsistency>(r);
  swapped.second_point.target = swapped.first_point.target;
  CHECK_THROWS_AS(verify_certificate(swapped, clash), CertificateMismatch);

  // A fitted polynomial that misses a sample does not replay.
  auto f = fit_polynomial(numeral_samples(NumeralGrammar::ND, 2), PolyTwoVar{1});
  CHECK_FALSE(verify_certificate(f, numeral_samples(NumeralGrammar::DN, 3)));
}

TEST_CASE("non-numeric samples are a type error") {
  SampleSet s{{{Meaning::boolean(true), Meaning::integer(1)}, Meaning::integer(1), ""}};
  CHECK_THROWS_AS(fit_polynomial(s, PolyTwoVar{1}), TypeError);
}
