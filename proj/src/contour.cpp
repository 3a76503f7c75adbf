#include "philt/contour.hpp"
#include <limits>
#include <algorithm>

#include <cmath>
#include <stdexcept>

namespace philt {

namespace {

constexpr double kPi = 3.14159265358979323846;

// exp with the exponent clamped so the theta-objective never overflows to a
// signaling value; +inf compares correctly in minimizations.
double safe_exp(double x) {
  if (x > 700.0) return std::numeric_limits<double>::infinity();
  return std::exp(x);
}

double a_of_K(int K, double alpha, double Lambda) {
  const double arg = Lambda * K / std::sin(alpha);
  if (arg <= 1.0) throw std::invalid_argument("contour: Lambda*K/sin(alpha) must exceed 1");
  return std::acosh(arg);
}

double a_of_theta(double theta, double alpha, double Lambda) {
  return std::acosh(Lambda / ((1.0 - theta) * std::sin(alpha)));
}

// Main part of the eps-dependent error bound for a fixed theta in (0,1).
double theta_objective(double theta, int K, double d, double alpha, double Lambda,
                       double eps) {
  const double a = a_of_theta(theta, alpha, Lambda);
  const double c = 2.0 * kPi * d * K;
  return eps * safe_exp(c * (1.0 - theta) / a) + safe_exp(-c * theta / a);
}

void check_angles(double alpha, double d, double delta) {
  if (!(alpha - d > 0.0) || !(alpha + d < kPi / 2.0 - delta))
    throw std::invalid_argument("contour: angles must satisfy 0 < alpha-d and alpha+d < pi/2 - delta");
}

}  // namespace

void SectorBound::validate() const {
  if (!(delta >= 0.0 && delta < kPi / 2.0))
    throw std::invalid_argument("SectorBound: delta must lie in [0, pi/2)");
  if (!(M > 0.0)) throw std::invalid_argument("SectorBound: M must be positive");
  if (!(nu >= 1.0)) throw std::invalid_argument("SectorBound: nu must be >= 1");
}

void ContourParams::validate() const {
  check_angles(alpha, d, 0.0);
  if (!(mu > 0.0) || !(tau > 0.0)) throw std::invalid_argument("ContourParams: mu, tau must be positive");
  if (!(Lambda >= 1.0)) throw std::invalid_argument("ContourParams: Lambda must be >= 1");
  if (!(t0 > 0.0)) throw std::invalid_argument("ContourParams: t0 must be positive");
  if (K < 1) throw std::invalid_argument("ContourParams: K must be >= 1");
}

cplx hyperbola_point(const ContourParams& params, double x) {
  return params.mu * (1.0 - std::sin(cplx(params.alpha, x))) + params.gamma;
}

cplx hyperbola_derivative(const ContourParams& params, double x) {
  return cplx(0.0, -params.mu) * std::cos(cplx(params.alpha, x));
}

ContourParams select_params_basic(int K, double alpha, double d, double t0,
                                  double Lambda, double gamma) {
  if (K < 1) throw std::invalid_argument("select_params_basic: K must be >= 1");
  if (!(Lambda >= 1.0)) throw std::invalid_argument("select_params_basic: Lambda must be >= 1");
  if (!(t0 > 0.0)) throw std::invalid_argument("select_params_basic: t0 must be positive");
  check_angles(alpha, d, 0.0);

  const double aK = a_of_K(K, alpha, Lambda);
  ContourParams p;
  p.alpha = alpha;
  p.d = d;
  p.tau = aK / K;
  p.mu = 2.0 * kPi * d / (Lambda * t0 * aK);
  p.t0 = t0;
  p.Lambda = Lambda;
  p.gamma = gamma;
  p.K = K;
  return p;
}

ContourParams select_params_eps(int K, double alpha, double d, double t0,
                                double Lambda, double gamma, double eps) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("select_params_eps: eps must lie in (0, 1)");
  if (K < 1) throw std::invalid_argument("select_params_eps: K must be >= 1");
  if (!(Lambda >= 1.0)) throw std::invalid_argument("select_params_eps: Lambda must be >= 1");
  if (!(t0 > 0.0)) throw std::invalid_argument("select_params_eps: t0 must be positive");
  check_angles(alpha, d, 0.0);

  // Deterministic grid scan followed by golden-section refinement of the
  // bracketing cell. The objective is smooth and unimodal in practice.
  const int grid = 999;
  double best_theta = 0.5;
  double best_value = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= grid; ++i) {
    const double theta = i / 1000.0;
    const double value = theta_objective(theta, K, d, alpha, Lambda, eps);
    if (value < best_value) {
      best_value = value;
      best_theta = theta;
    }
  }
  double lo = std::max(best_theta - 1e-3, 1e-6);
  double hi = std::min(best_theta + 1e-3, 1.0 - 1e-9);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - gr * (hi - lo);
  double x2 = lo + gr * (hi - lo);
  double f1 = theta_objective(x1, K, d, alpha, Lambda, eps);
  double f2 = theta_objective(x2, K, d, alpha, Lambda, eps);
  while (hi - lo > 1e-6) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = theta_objective(x1, K, d, alpha, Lambda, eps);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = theta_objective(x2, K, d, alpha, Lambda, eps);
    }
  }
  const double theta_star = 0.5 * (lo + hi);

  const double a = a_of_theta(theta_star, alpha, Lambda);
  ContourParams p;
  p.alpha = alpha;
  p.d = d;
  p.tau = a / K;
  p.mu = 2.0 * kPi * d * K * (1.0 - theta_star) / (Lambda * t0 * a);
  p.t0 = t0;
  p.Lambda = Lambda;
  p.gamma = gamma;
  p.K = K;
  p.theta_star = theta_star;
  return p;
}

QuadratureRule build_rule(const ContourParams& params, bool halved) {
  params.validate();
  const int K = params.K;
  QuadratureRule rule;
  rule.params = params;
  rule.halved = halved;

  // Upper half l = 0..K; the negative indices are exact conjugates.
  std::vector<cplx> z(K + 1), w(K + 1);
  const double weight_scale = params.tau * params.mu / (2.0 * kPi);
  for (int l = 0; l <= K; ++l) {
    const double x = l * params.tau;
    z[l] = hyperbola_point(params, x);
    w[l] = weight_scale * std::cos(cplx(params.alpha, x));  // == -(tau/2 pi i) T'(x)
  }
  // l = 0 lies on the real axis.
  z[0] = cplx(z[0].real(), 0.0);
  w[0] = cplx(w[0].real(), 0.0);

  if (halved) {
    rule.nodes = z;
    rule.weights = w;
    for (int l = 1; l <= K; ++l) rule.weights[l] *= 2.0;
  } else {
    rule.nodes.resize(2 * K + 1);
    rule.weights.resize(2 * K + 1);
    for (int l = -K; l <= K; ++l) {
      const int idx = l + K;
      const int al = std::abs(l);
      rule.nodes[idx] = l < 0 ? std::conj(z[al]) : z[al];
      rule.weights[idx] = l < 0 ? std::conj(w[al]) : w[al];
    }
  }
  return rule;
}

double error_bound(int K, double alpha, double d, double t, double eps,
                   const SectorBound& sector, double t0, double Lambda) {
  sector.validate();
  check_angles(alpha, d, sector.delta);
  if (!(t >= t0 && t <= Lambda * t0))
    throw std::invalid_argument("error_bound: t must lie in [t0, Lambda*t0]");

  const double aK = a_of_K(K, alpha, Lambda);
  const double tau = aK / K;
  const double mu = 2.0 * kPi * d / (Lambda * t0 * aK);
  const double nu = sector.nu;

  const double Pi_factor =
      std::sqrt((1.0 + std::sin(alpha + d)) /
                std::pow(1.0 - std::sin(alpha + d), 2.0 * nu - 1.0)) /
      kPi;
  const auto L = [](double x) { return 1.0 - std::log(1.0 - std::exp(-x)); };
  const double Q = std::max(4.0 * L(mu * t0 * std::sin(alpha - d)),
                            tau + L(mu * t0 * std::sin(alpha)));
  const double rho = std::exp(-2.0 * kPi * d * K / aK);
  return sector.M * Pi_factor * Q * std::exp(2.0 * kPi * d / aK) *
         std::pow(t, nu - 1.0) * (eps + rho / (1.0 - rho));
}

}  // namespace philt
