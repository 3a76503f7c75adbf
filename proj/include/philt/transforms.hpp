#ifndef PHILT_TRANSFORMS_HPP
#define PHILT_TRANSFORMS_HPP

#include <complex>
#include <vector>

namespace philt {

using cplx = std::complex<double>;

/// Scalar rational factor R(z) = numer(z) / z^denom_power with real
/// coefficients, together with the abscissa m at which the original mapping is
/// recovered: the target is the inverse Laplace transform of R(z)/(z - lambda)
/// (scalar) or R(z) (zI - hA)^{-1} (operator) evaluated at sigma = m.
/// deg(numer) <= denom_power, so that R(z)/(z - lambda) decays at least like
/// |z|^{-1} and the transform is sectorial.
struct RationalTransform {
  std::vector<double> numer;  // ascending powers of z
  int denom_power = 0;
  int abscissa = 1;  // m

  cplx eval(cplx z) const;
  int numer_degree() const;
  void validate() const;
};

/// R(z) for the multistep mapping phi_j(k, .): j = 0 gives R = 1 (the plain
/// resolvent, original e^{k lambda}); j >= 1 transforms the binomial
/// polynomial binom(sigma, j-1) termwise. Coefficients are exact rationals up
/// to j = 12, converted to double.
RationalTransform multistep_transform(int j, int k);

/// R(z) = 1/z^j for the Runge-Kutta mapping phi_j, inverted at sigma = 1.
RationalTransform rk_transform(int j);

/// Termwise Laplace transform of an arbitrary real polynomial p(sigma)
/// (ascending coefficients), inverted at sigma = m.
RationalTransform poly_transform(const std::vector<double>& p, int m);

/// Rational factor of the reflected transform G*_j:
///   R(z) = z^{-j} * sum_{l=1}^{j} binom(j-1, l-1) (l-1)! (-1)^{l-1} (m z)^{j-l},
/// the termwise transform of sum_l binom(j-1,l-1) (-1)^{l-1} m^{j-l} g_l(m, .).
/// The (l-1)! factor follows from L[sigma^{l-1}] = (l-1)!/z^l; see
/// gstar_transform_printed for the variant with l! instead.
RationalTransform gstar_transform(int j, int m);

/// Variant of gstar_transform carrying the factor l! in place of (l-1)!.
/// Kept for comparison only; it disagrees with the defining integral for
/// j >= 2 (the oracle tests document this).
RationalTransform gstar_transform_printed(int j, int m);

/// Identifies one phi-type mapping: multistep phi_j(k, .), Runge-Kutta
/// phi_j(beta h A), or a generic polynomial kernel inverted at sigma = m.
/// Orderable so it can key precomputed-operator maps.
struct PhiSpec {
  enum class Kind { Multistep, Rk, Generic };

  Kind kind = Kind::Rk;
  int j = 0;
  int k = 1;                   // multistep only
  double beta = 1.0;           // scaling of hA
  std::vector<double> poly;    // generic only
  int m = 1;                   // generic only

  static PhiSpec multistep(int j, int k);
  static PhiSpec rk(int j, double beta = 1.0);
  static PhiSpec generic(std::vector<double> p, int m, double beta = 1.0);

  RationalTransform transform() const;
  int inversion_abscissa() const;

  friend bool operator<(const PhiSpec& a, const PhiSpec& b);
  friend bool operator==(const PhiSpec& a, const PhiSpec& b);
};

}  // namespace philt

#endif  // PHILT_TRANSFORMS_HPP
