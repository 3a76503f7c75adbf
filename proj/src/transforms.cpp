#include "philt/transforms.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace philt {

namespace {

long long factorial_ll(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Integer coefficients of prod_{i=0}^{n-1} (sigma - i), ascending powers
// (signed Stirling numbers of the first kind). Exact in 64-bit for n <= 11,
// which covers binomial kernels up to j = 12.
std::vector<long long> falling_factorial_coeffs(int n) {
  if (n > 11) throw std::invalid_argument("transforms: binomial kernel supported up to j = 12");
  std::vector<long long> c{1};
  for (int i = 0; i < n; ++i) {
    std::vector<long long> next(c.size() + 1, 0);
    for (std::size_t p = 0; p < c.size(); ++p) {
      next[p + 1] += c[p];
      next[p] -= c[p] * i;
    }
    c = std::move(next);
  }
  return c;
}

// Exact rational a/b to double after gcd reduction.
double ratio(long long a, long long b) {
  const long long g = std::gcd(std::abs(a), std::abs(b));
  if (g > 1) {
    a /= g;
    b /= g;
  }
  return static_cast<double>(a) / static_cast<double>(b);
}

RationalTransform gstar_impl(int j, int m, bool printed_factorial) {
  if (j < 1) throw std::invalid_argument("gstar_transform: j must be >= 1");
  if (m < 1) throw std::invalid_argument("gstar_transform: m must be >= 1");
  RationalTransform t;
  t.denom_power = j;
  t.abscissa = m;
  t.numer.assign(j, 0.0);
  long long binom = 1;  // binom(j-1, l-1)
  for (int l = 1; l <= j; ++l) {
    const long long fact = factorial_ll(printed_factorial ? l : l - 1);
    long long mpow = 1;
    for (int i = 0; i < j - l; ++i) mpow *= m;
    const double sign = (l % 2 == 1) ? 1.0 : -1.0;
    t.numer[j - l] = sign * static_cast<double>(binom * fact * mpow);
    binom = binom * (j - l) / l;  // advance to binom(j-1, l)
  }
  t.validate();
  return t;
}

}  // namespace

cplx RationalTransform::eval(cplx z) const {
  cplx num{0.0, 0.0};
  for (auto it = numer.rbegin(); it != numer.rend(); ++it) num = num * z + *it;
  cplx den{1.0, 0.0};
  for (int i = 0; i < denom_power; ++i) den *= z;
  return num / den;
}

int RationalTransform::numer_degree() const {
  int deg = 0;
  for (std::size_t i = 0; i < numer.size(); ++i)
    if (numer[i] != 0.0) deg = static_cast<int>(i);
  return deg;
}

void RationalTransform::validate() const {
  if (numer.empty()) throw std::invalid_argument("RationalTransform: empty numerator");
  if (denom_power < 0) throw std::invalid_argument("RationalTransform: negative denominator power");
  if (abscissa < 1) throw std::invalid_argument("RationalTransform: abscissa must be >= 1");
  // Together with the resolvent factor the decay exponent is
  // nu = 1 + denom_power - deg(numer) and must stay >= 1.
  if (numer_degree() > denom_power)
    throw std::invalid_argument("RationalTransform: numerator degree exceeds denominator power");
}

RationalTransform multistep_transform(int j, int k) {
  if (j < 0 || j > k) throw std::invalid_argument("multistep_transform: need 0 <= j <= k");
  RationalTransform t;
  t.abscissa = k;
  if (j == 0) {
    t.numer = {1.0};
    t.denom_power = 0;
    return t;
  }
  // binom(sigma, j-1) = (1/(j-1)!) prod_{i=0}^{j-2} (sigma - i); termwise
  // L[sigma^i] = i!/z^{i+1} gives numerator coefficient s_i * i!/(j-1)! for
  // z^{j-1-i} over z^j.
  const int n = j - 1;
  const auto coeffs = falling_factorial_coeffs(n);
  const long long nfact = factorial_ll(n);
  t.denom_power = j;
  t.numer.assign(j, 0.0);
  for (int i = 0; i <= n; ++i)
    t.numer[j - 1 - i] = ratio(coeffs[i] * factorial_ll(i), nfact);
  t.validate();
  return t;
}

RationalTransform rk_transform(int j) {
  if (j < 0) throw std::invalid_argument("rk_transform: j must be >= 0");
  RationalTransform t;
  t.numer = {1.0};
  t.denom_power = j;
  t.abscissa = 1;
  t.validate();
  return t;
}

RationalTransform poly_transform(const std::vector<double>& p, int m) {
  if (p.empty()) throw std::invalid_argument("poly_transform: empty polynomial");
  if (m < 1) throw std::invalid_argument("poly_transform: m must be >= 1");
  int deg = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != 0.0) deg = static_cast<int>(i);
  RationalTransform t;
  t.denom_power = deg + 1;
  t.abscissa = m;
  t.numer.assign(deg + 1, 0.0);
  double fact = 1.0;
  for (int i = 0; i <= deg; ++i) {
    t.numer[deg - i] = p[i] * fact;
    fact *= i + 1;
  }
  t.validate();
  return t;
}

RationalTransform gstar_transform(int j, int m) { return gstar_impl(j, m, false); }

RationalTransform gstar_transform_printed(int j, int m) { return gstar_impl(j, m, true); }

PhiSpec PhiSpec::multistep(int j, int k) {
  if (j < 0 || k < 1 || j > k) throw std::invalid_argument("PhiSpec: need 0 <= j <= k, k >= 1");
  PhiSpec s;
  s.kind = Kind::Multistep;
  s.j = j;
  s.k = k;
  s.beta = 1.0;
  return s;
}

PhiSpec PhiSpec::rk(int j, double beta) {
  if (j < 0) throw std::invalid_argument("PhiSpec: j must be >= 0");
  if (!(beta > 0.0)) throw std::invalid_argument("PhiSpec: beta must be positive");
  PhiSpec s;
  s.kind = Kind::Rk;
  s.j = j;
  s.beta = beta;
  return s;
}

PhiSpec PhiSpec::generic(std::vector<double> p, int m, double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("PhiSpec: beta must be positive");
  PhiSpec s;
  s.kind = Kind::Generic;
  s.poly = std::move(p);
  s.m = m;
  s.beta = beta;
  return s;
}

RationalTransform PhiSpec::transform() const {
  switch (kind) {
    case Kind::Multistep:
      return multistep_transform(j, k);
    case Kind::Rk:
      return rk_transform(j);
    case Kind::Generic:
      return poly_transform(poly, m);
  }
  throw std::logic_error("PhiSpec: unknown kind");
}

int PhiSpec::inversion_abscissa() const {
  switch (kind) {
    case Kind::Multistep:
      return k;
    case Kind::Rk:
      return 1;
    case Kind::Generic:
      return m;
  }
  throw std::logic_error("PhiSpec: unknown kind");
}

bool operator<(const PhiSpec& a, const PhiSpec& b) {
  return std::tie(a.kind, a.j, a.k, a.beta, a.m, a.poly) <
         std::tie(b.kind, b.j, b.k, b.beta, b.m, b.poly);
}

bool operator==(const PhiSpec& a, const PhiSpec& b) {
  return !(a < b) && !(b < a);
}

}  // namespace philt
