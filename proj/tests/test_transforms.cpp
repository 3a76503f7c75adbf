#include "doctest.h"

#include <cmath>

#include "philt/contour.hpp"
#include "philt/scalar_phi.hpp"
#include "philt/transforms.hpp"
#include "support/integral_oracle.hpp"

using namespace philt;

namespace {

void check_coeffs(const RationalTransform& t, const std::vector<double>& numer, int q,
                  int m) {
  CHECK(t.denom_power == q);
  CHECK(t.abscissa == m);
  REQUIRE(t.numer.size() == numer.size());
  for (std::size_t i = 0; i < numer.size(); ++i)
    CHECK(t.numer[i] == doctest::Approx(numer[i]).epsilon(1e-15));
}

}  // namespace

TEST_CASE("multistep transforms match the closed forms") {
  check_coeffs(multistep_transform(0, 3), {1.0}, 0, 3);         // R = 1
  check_coeffs(multistep_transform(1, 2), {1.0}, 1, 2);         // 1/z
  check_coeffs(multistep_transform(2, 2), {1.0, 0.0}, 2, 2);    // 1/z^2
  check_coeffs(multistep_transform(3, 3), {1.0, -0.5, 0.0}, 3, 3);        // (2-z)/(2z^3)
  check_coeffs(multistep_transform(4, 4), {1.0, -1.0, 1.0 / 3.0, 0.0}, 4, 4);  // (3-3z+z^2)/(3z^4)
  CHECK_THROWS_AS(multistep_transform(3, 2), std::invalid_argument);
}

TEST_CASE("rk transforms") {
  check_coeffs(rk_transform(0), {1.0}, 0, 1);
  check_coeffs(rk_transform(1), {1.0}, 1, 1);
  check_coeffs(rk_transform(2), {1.0}, 2, 1);
  // Inverse transform of 1/z^3 at sigma = 1 is 1/2 = phi_2(0).
  const RationalTransform t = rk_transform(2);
  const QuadratureRule rule =
      build_rule(select_params_basic(25, 0.7, 0.6, 1.0, 1.0, 0.0), true);
  const cplx v = phi_quad(t, cplx(0.0, 0.0), rule);
  CHECK(v.real() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("poly transform reproduces the named families coefficient for coefficient") {
  // p = 1 -> 1/z.
  check_coeffs(poly_transform({1.0}, 1), {1.0}, 1, 1);

  // p(sigma) = sigma^{j-1}/(j-1)! reproduces rk_transform(j).
  for (int j = 1; j <= 4; ++j) {
    std::vector<double> p(j, 0.0);
    double fact = 1.0;
    for (int i = 2; i < j; ++i) fact *= i;
    p[j - 1] = 1.0 / fact;
    const RationalTransform a = poly_transform(p, 1);
    const RationalTransform b = rk_transform(j);
    REQUIRE(a.denom_power == b.denom_power);
    for (std::size_t i = 0; i < a.numer.size(); ++i)
      CHECK(a.numer[i] == doctest::Approx(b.numer[i]).epsilon(1e-15));
  }

  // p(sigma) = binom(sigma, 2) = (sigma^2 - sigma)/2 reproduces multistep j=3.
  const RationalTransform a = poly_transform({0.0, -0.5, 0.5}, 3);
  const RationalTransform b = multistep_transform(3, 3);
  REQUIRE(a.denom_power == b.denom_power);
  REQUIRE(a.numer.size() == b.numer.size());
  for (std::size_t i = 0; i < a.numer.size(); ++i)
    CHECK(a.numer[i] == doctest::Approx(b.numer[i]).epsilon(1e-15));
}

TEST_CASE("gstar transforms") {
  check_coeffs(gstar_transform(1, 1), {1.0}, 1, 1);            // reduces to G_1
  check_coeffs(gstar_transform(2, 1), {-1.0, 1.0}, 2, 1);      // (z-1)/z^2
  check_coeffs(gstar_transform(3, 2), {2.0, -4.0, 4.0}, 3, 2); // (4z^2-4z+2)/z^3
}

TEST_CASE("gstar against brute-force quadrature of the defining integral") {
  // g_j(m, w) = e^{m w} Linv[G*_j(., -w)](m) for Re w > 0; the inversion runs
  // at -w inside the sector. Compare against direct integration.
  const QuadratureRule rule2 =
      build_rule(select_params_eps(30, 0.7, 0.6, 2.0, 1.0, 0.0, 2.2204e-16), true);
  for (int j : {1, 2, 3}) {
    const double w = 1.0;
    const int m = 2;
    const RationalTransform gs = gstar_transform(j, m);
    const cplx refl = phi_quad(gs, cplx(-w, 0.0), rule2);
    const cplx value = std::exp(m * w) * refl;
    const cplx direct = philt_test::g_integral(j, m, cplx(w, 0.0));
    CHECK(std::abs(value - direct) <= 1e-10 * std::max(1.0, std::abs(direct)));
  }
}

TEST_CASE("printed l! variant disagrees with the defining integral for j >= 2") {
  // Identical for j = 1, off for j = 2: documents the corrected coefficient.
  check_coeffs(gstar_transform_printed(1, 1), {1.0}, 1, 1);

  const QuadratureRule rule =
      build_rule(select_params_eps(30, 0.7, 0.6, 1.0, 1.0, 0.0, 2.2204e-16), true);
  const double w = 1.0;
  const cplx direct = philt_test::g_integral(2, 1, cplx(w, 0.0));
  const cplx good = std::exp(w) * phi_quad(gstar_transform(2, 1), cplx(-w, 0.0), rule);
  const cplx bad = std::exp(w) * phi_quad(gstar_transform_printed(2, 1), cplx(-w, 0.0), rule);
  CHECK(std::abs(good - direct) < 1e-11);
  CHECK(std::abs(bad - direct) > 1e-3);
}

TEST_CASE("strict properness across the families") {
  for (int k = 1; k <= 6; ++k)
    for (int j = 0; j <= k; ++j) {
      const RationalTransform t = multistep_transform(j, k);
      CHECK(t.numer_degree() <= t.denom_power);
      if (j >= 1) CHECK(t.numer_degree() < t.denom_power);
    }
  for (int j = 0; j <= 6; ++j) CHECK(rk_transform(j).numer_degree() <= rk_transform(j).denom_power);
  for (int j = 1; j <= 5; ++j)
    for (int m = 1; m <= 4; ++m) {
      const RationalTransform t = gstar_transform(j, m);
      CHECK(t.numer_degree() < t.denom_power);
    }
}

TEST_CASE("oracle equivalence of transform inversion") {
  // Quadrature inversion of R(z)/(z - lambda) at sigma = m against direct
  // quadrature of the defining integrals.
  ScalarEvalConfig cfg;
  cfg.K = 35;
  for (double lambda : {-1.0, -0.3, -10.0}) {
    const cplx lam(lambda, 0.0);
    for (int k = 1; k <= 4; ++k)
      for (int j = 1; j <= k; ++j) {
        const cplx via_quad =
            phi_quad(multistep_transform(j, k), lam, scalar_rule(k, cfg, true));
        const cplx direct = philt_test::phi_multistep_integral(j, k, lam);
        CHECK(std::abs(via_quad - direct) <= 1e-10);
      }
    for (int j = 1; j <= 4; ++j) {
      const cplx via_quad = phi_quad(rk_transform(j), lam, scalar_rule(1, cfg, true));
      const cplx direct = philt_test::phi_rk_integral(j, lam);
      CHECK(std::abs(via_quad - direct) <= 1e-10);
    }
  }
}

TEST_CASE("PhiSpec ordering and transforms") {
  const PhiSpec a = PhiSpec::rk(1, 0.5);
  const PhiSpec b = PhiSpec::rk(1, 1.0);
  const PhiSpec c = PhiSpec::multistep(1, 2);
  CHECK(a < b);
  CHECK((a < c || c < a));
  CHECK(a == PhiSpec::rk(1, 0.5));
  CHECK(a.inversion_abscissa() == 1);
  CHECK(c.inversion_abscissa() == 2);
  CHECK(PhiSpec::generic({1.0}, 3).inversion_abscissa() == 3);
  CHECK_THROWS_AS(PhiSpec::multistep(3, 2), std::invalid_argument);
}
