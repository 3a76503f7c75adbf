#include "philt/scalar_phi.hpp"
#include <limits>
#include <algorithm>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace philt {

namespace {

long long factorial_ll(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

struct RuleKey {
  int m;
  int K;
  double alpha;
  double d;
  double eps;
  bool eps_selection;
  bool halved;

  friend bool operator<(const RuleKey& a, const RuleKey& b) {
    return std::tie(a.m, a.K, a.alpha, a.d, a.eps, a.eps_selection, a.halved) <
           std::tie(b.m, b.K, b.alpha, b.d, b.eps, b.eps_selection, b.halved);
  }
};

std::map<RuleKey, QuadratureRule> g_rule_cache;
std::mutex g_rule_mutex;

bool is_real(cplx z) { return z.imag() == 0.0; }

}  // namespace

void ScalarEvalConfig::validate() const {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("ScalarEvalConfig: eps must lie in (0,1)");
  sector.validate();
  // Single-point inversion: t0 = m, Lambda = 1, built per abscissa.
  select_params_basic(K, alpha, d, 1.0, 1.0, sector.gamma);
}

const QuadratureRule& scalar_rule(int m, const ScalarEvalConfig& cfg, bool halved) {
  const RuleKey key{m, cfg.K, cfg.alpha, cfg.d, cfg.eps, cfg.eps_selection, halved};
  std::lock_guard<std::mutex> lock(g_rule_mutex);
  auto it = g_rule_cache.find(key);
  if (it == g_rule_cache.end()) {
    const double gamma_star = std::max(0.0, cfg.sector.gamma);
    const ContourParams params =
        cfg.eps_selection
            ? select_params_eps(cfg.K, cfg.alpha, cfg.d, double(m), 1.0, gamma_star, cfg.eps)
            : select_params_basic(cfg.K, cfg.alpha, cfg.d, double(m), 1.0, gamma_star);
    it = g_rule_cache.emplace(key, build_rule(params, halved)).first;
  }
  return it->second;
}

cplx phi_quad(const RationalTransform& transform, cplx lambda,
              const QuadratureRule& rule) {
  if (rule.params.t0 != double(transform.abscissa))
    throw std::invalid_argument("phi_quad: rule must be built with t0 = transform abscissa");
  double min_dist = std::numeric_limits<double>::infinity();
  for (const cplx& z : rule.nodes) min_dist = std::min(min_dist, std::abs(z - lambda));
  if (min_dist < 1e-8 * std::abs(lambda))
    throw std::domain_error("phi_quad: lambda collides with a quadrature node");

  const double m = double(transform.abscissa);
  return invert_laplace(
      rule, [&](cplx z) { return transform.eval(z) / (z - lambda); }, m);
}

cplx g_scalar(int j, int m, cplx lambda, const ScalarEvalConfig& cfg) {
  if (j < 1) throw std::invalid_argument("g_scalar: j must be >= 1");
  if (m < 1) throw std::invalid_argument("g_scalar: m must be >= 1");
  if (m * lambda.real() > 700.0)
    throw std::range_error("g_scalar: e^{m lambda} overflows, argument out of range");

  const bool halved = is_real(lambda);
  if (lambda.real() <= cfg.reflection_threshold) {
    // Direct inversion of L[sigma^{j-1}]/(z - lambda) = (j-1)!/(z^j (z-lambda)).
    RationalTransform t;
    t.numer = {static_cast<double>(factorial_ll(j - 1))};
    t.denom_power = j;
    t.abscissa = m;
    return phi_quad(t, lambda, scalar_rule(m, cfg, halved));
  }
  // Reflected evaluation: g_j(m, lambda) = e^{m lambda} Linv[G*_j(., -lambda)](m),
  // with -lambda back inside the sector.
  const RationalTransform gs = gstar_transform(j, m);
  const cplx reflected = phi_quad(gs, -lambda, scalar_rule(m, cfg, halved));
  return std::exp(double(m) * lambda) * reflected;
}

cplx phi_rk_scalar(int k, cplx lambda, const ScalarEvalConfig& cfg) {
  if (k < 0) throw std::invalid_argument("phi_rk_scalar: k must be >= 0");
  if (k == 0) {
    if (lambda.real() > 700.0) throw std::range_error("phi_rk_scalar: e^lambda overflows");
    return std::exp(lambda);
  }
  return g_scalar(k, 1, lambda, cfg) / static_cast<double>(factorial_ll(k - 1));
}

cplx phi_multistep_scalar(int j, int k, cplx lambda, const ScalarEvalConfig& cfg) {
  if (j < 0 || j > k) throw std::invalid_argument("phi_multistep_scalar: need 0 <= j <= k");
  if (double(k) * lambda.real() > 700.0)
    throw std::range_error("phi_multistep_scalar: e^{k lambda} overflows");

  if (lambda.real() <= cfg.reflection_threshold) {
    const RationalTransform t = multistep_transform(j, k);
    return phi_quad(t, lambda, scalar_rule(k, cfg, is_real(lambda)));
  }
  if (j == 0) return std::exp(double(k) * lambda);
  // Outside the sector: binom(sigma, j-1) = sum_i c_i sigma^i turns
  // phi_j(k, lambda) into sum_i c_i g_{i+1}(k, lambda), each reflected.
  const RationalTransform t = multistep_transform(j, k);
  // Recover the kernel coefficients c_i from the stored numerator layout:
  // numer[j-1-i] = c_i * i!.
  cplx sum{0.0, 0.0};
  double fact = 1.0;
  for (int i = 0; i <= j - 1; ++i) {
    const double ci = t.numer[j - 1 - i] / fact;
    if (ci != 0.0) sum += ci * g_scalar(i + 1, k, lambda, cfg);
    fact *= i + 1;
  }
  return sum;
}

cplx oracle_phi(int k, cplx lambda) {
  if (k < 0) throw std::invalid_argument("oracle_phi: k must be >= 0");
  if (k == 0) return std::exp(lambda);
  if (std::abs(lambda) <= 1.0) {
    // phi_k(lambda) = sum_{n>=0} lambda^n / (n+k)!; converges in a few dozen
    // terms with no cancellation on this disc.
    cplx term = 1.0 / static_cast<double>(factorial_ll(k));
    cplx sum = term;
    for (int n = 1; n <= 64; ++n) {
      term *= lambda / double(n + k);
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  // Upward recursion phi_{j+1} = (phi_j - 1/j!)/lambda, stable for |lambda| > 1.
  cplx phi = std::exp(lambda);
  double fact = 1.0;
  for (int j = 0; j < k; ++j) {
    phi = (phi - 1.0 / fact) / lambda;
    fact *= j + 1;
  }
  return phi;
}

cplx oracle_g(int j, int m, cplx lambda) {
  // g_j(m, lambda) = m^j (j-1)! phi_j(m lambda) via the substitution sigma -> m s.
  double mpow = 1.0;
  for (int i = 0; i < j; ++i) mpow *= m;
  return mpow * static_cast<double>(factorial_ll(j - 1)) *
         oracle_phi(j, double(m) * lambda);
}

cplx oracle_phi_multistep(int j, int k, cplx lambda) {
  if (j == 0) return std::exp(double(k) * lambda);
  const RationalTransform t = multistep_transform(j, k);
  cplx sum{0.0, 0.0};
  double fact = 1.0;
  for (int i = 0; i <= j - 1; ++i) {
    const double ci = t.numer[j - 1 - i] / fact;
    if (ci != 0.0) sum += ci * oracle_g(i + 1, k, lambda);
    fact *= i + 1;
  }
  return sum;
}

}  // namespace philt
