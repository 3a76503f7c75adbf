#ifndef PHILT_SCALAR_PHI_HPP
#define PHILT_SCALAR_PHI_HPP

#include <complex>

#include "philt/contour.hpp"
#include "philt/transforms.hpp"

namespace philt {

/// Settings for scalar phi/g evaluations. The defaults reproduce the scalar
/// experiments: eps-dependent contour parameters with alpha = 0.7, d = 0.6 and
/// eps equal to the binary64 unit roundoff. Arguments with real part above
/// reflection_threshold are evaluated through the reflected transforms so the
/// quadrature always runs inside the sector.
struct ScalarEvalConfig {
  int K = 25;
  double alpha = 0.7;
  double d = 0.6;
  double eps = 2.2204e-16;
  SectorBound sector{};
  double reflection_threshold = 0.0;
  bool eps_selection = true;

  void validate() const;
};

/// Quadrature inversion  sum_l w_l e^{m z_l} R(z_l) / (z_l - lambda)  with the
/// halved variant taking the real part. The rule must have been built with
/// t0 = transform.abscissa. Throws std::domain_error when lambda collides with
/// a quadrature node (min_l |z_l - lambda| < 1e-8 |lambda|).
cplx phi_quad(const RationalTransform& transform, cplx lambda,
              const QuadratureRule& rule);

/// g_j(m, lambda) = int_0^m e^{(m-sigma) lambda} sigma^{j-1} dsigma.
/// Re lambda <= threshold: direct quadrature inversion of (j-1)!/z^j /(z-lambda).
/// Otherwise the reflected representation g_j(m,lambda) =
/// e^{m lambda} Linv[G*_j(., -lambda)](m) keeps the argument inside the sector.
/// Throws std::range_error when m*Re(lambda) > 700 (e^{m lambda} overflows).
cplx g_scalar(int j, int m, cplx lambda, const ScalarEvalConfig& cfg);

/// Runge-Kutta phi_k: phi_0 = e^lambda, phi_k(lambda) = g_k(1, lambda)/(k-1)!.
cplx phi_rk_scalar(int k, cplx lambda, const ScalarEvalConfig& cfg);

/// Multistep phi_j(k, lambda). Inside the sector this inverts
/// multistep_transform(j, k) at sigma = k; for Re lambda > threshold the
/// binomial kernel is expanded into monomials and dispatched through g_scalar.
cplx phi_multistep_scalar(int j, int k, cplx lambda, const ScalarEvalConfig& cfg);

/// Quadrature-free reference: Taylor series sum_n lambda^n/(n+k)! for
/// |lambda| <= 1, upward recursion phi_{k+1} = (phi_k - 1/k!)/lambda seeded by
/// e^lambda otherwise. Relative error <= 1e-14 on |lambda| <= 50 in the closed
/// left half-plane and |lambda| <= 1 elsewhere.
cplx oracle_phi(int k, cplx lambda);

/// Reference g_j(m, lambda) = m^j (j-1)! phi_j(m lambda) built on oracle_phi.
cplx oracle_g(int j, int m, cplx lambda);

/// Reference multistep phi_j(k, lambda) built on oracle_phi (binomial kernel
/// expanded exactly); j = 0 gives e^{k lambda}.
cplx oracle_phi_multistep(int j, int k, cplx lambda);

/// Rule the scalar evaluators use for abscissa m under cfg (t0 = m, Lambda = 1).
/// Rules are cached per parameter set; the cache is internally synchronized.
const QuadratureRule& scalar_rule(int m, const ScalarEvalConfig& cfg, bool halved);

}  // namespace philt

#endif  // PHILT_SCALAR_PHI_HPP
