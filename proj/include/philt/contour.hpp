#ifndef PHILT_CONTOUR_HPP
#define PHILT_CONTOUR_HPP

#include <complex>
#include <optional>
#include <vector>

namespace philt {

using cplx = std::complex<double>;

/// Constants (gamma, delta, M, nu) of a sectorial resolvent/transform bound:
/// F analytic for |arg(z - gamma)| < pi - delta with ||F(z)|| <= M/|z - gamma|^nu.
struct SectorBound {
  double gamma = 0.0;
  double delta = 0.0;  // half-angle defect, in [0, pi/2)
  double M = 1.0;
  double nu = 1.0;

  void validate() const;
};

/// Parameters of the hyperbolic integration contour
///   T(x) = mu * (1 - sin(alpha + i x)) + gamma
/// together with the trapezoidal step tau, the truncation index K and the
/// inversion window [t0, Lambda*t0].
struct ContourParams {
  double alpha = 0.7;
  double d = 0.6;
  double mu = 1.0;
  double tau = 0.1;
  double t0 = 1.0;
  double Lambda = 1.0;
  double gamma = 0.0;
  int K = 1;
  std::optional<double> theta_star;  // set by the eps-dependent selection

  void validate() const;
};

/// Nodes z_l = T(l*tau) and weights w_l = -(tau / 2 pi i) T'(l*tau) of the
/// truncated trapezoidal rule. In full form the vectors hold 2K+1 entries in
/// index order l = -K..K. In halved form they hold l = 0..K with w*_0 = w_0
/// and w*_l = 2 w_l; consumers of a halved rule take the real part of the sum.
struct QuadratureRule {
  ContourParams params;
  std::vector<cplx> nodes;
  std::vector<cplx> weights;
  bool halved = false;

  int node_count() const { return static_cast<int>(nodes.size()); }
};

/// Point of the left hyperbola branch, T(x) = mu*(1 - sin(alpha + i x)) + gamma.
cplx hyperbola_point(const ContourParams& params, double x);

/// Contour velocity T'(x) = -i * mu * cos(alpha + i x), needed for the weights.
cplx hyperbola_derivative(const ContourParams& params, double x);

/// Parameter selection of the baseline error bound:
///   tau = a(K)/K,  mu = 2 pi d / (Lambda t0 a(K)),  a(K) = arccosh(Lambda K / sin alpha).
ContourParams select_params_basic(int K, double alpha, double d, double t0,
                                  double Lambda, double gamma);

/// eps-dependent selection: minimizes
///   eps * exp(2 pi d K (1-theta)/a(theta)) + exp(-2 pi d K theta/a(theta))
/// over theta in (0,1), with a(theta) = arccosh(Lambda/((1-theta) sin alpha)),
/// then tau = a(theta*)/K and mu = 2 pi d K (1-theta*)/(Lambda t0 a(theta*)).
/// Improves the quadrature error decay from O(e^{-cK/ln K}) to O(e^{-cK}) when
/// the transform evaluations have relative precision eps.
ContourParams select_params_eps(int K, double alpha, double d, double t0,
                                double Lambda, double gamma, double eps);

/// Builds the trapezoidal rule for the given contour parameters.
QuadratureRule build_rule(const ContourParams& params, bool halved);

/// A-priori bound on the quadrature error of the rule with basic parameters,
/// uniform for t in [t0, Lambda*t0]:
///   M * Pi * Q * e^{2 pi d / a(K)} * t^{nu-1} * (eps + rho/(1-rho)),
/// rho = e^{-2 pi d K / a(K)}. Useful as a diagnostic and as a selector for K.
double error_bound(int K, double alpha, double d, double t, double eps,
                   const SectorBound& sector, double t0, double Lambda);

/// Applies the rule to a transform evaluator F: f(t) ~= sum_l w_l e^{t z_l} F(z_l).
/// Summation runs in index order with compensated accumulation. For a halved
/// rule the real part of the sum is returned (imaginary part zeroed), which is
/// the correct inverse for transforms with F(conj z) = conj(F(z)).
template <class Fn>
cplx invert_laplace(const QuadratureRule& rule, Fn&& transform, double t) {
  cplx sum{0.0, 0.0};
  cplx comp{0.0, 0.0};
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const cplx term =
        rule.weights[i] * std::exp(t * rule.nodes[i]) * transform(rule.nodes[i]);
    const cplx y = term - comp;
    const cplx s = sum + y;
    comp = (s - sum) - y;
    sum = s;
  }
  if (rule.halved) return cplx(sum.real(), 0.0);
  return sum;
}

}  // namespace philt

#endif  // PHILT_CONTOUR_HPP
