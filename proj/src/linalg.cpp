#include "philt/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace philt {

RealMatrix RealMatrix::identity(int n) {
  RealMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  m.set_band(0, 0);
  return m;
}

void RealMatrix::detect_band() {
  int lower = 0, upper = 0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if ((*this)(i, j) != 0.0) {
        lower = std::max(lower, i - j);
        upper = std::max(upper, j - i);
      }
  band_ = {lower, upper};
}

bool RealMatrix::is_tridiagonal() const {
  return band_ && band_->first <= 1 && band_->second <= 1;
}

std::vector<double> RealMatrix::apply(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != n_)
    throw std::invalid_argument("RealMatrix::apply: dimension mismatch");
  std::vector<double> y(n_, 0.0);
  if (band_) {
    const auto [lo, hi] = *band_;
    for (int i = 0; i < n_; ++i) {
      double s = 0.0;
      const int j0 = std::max(0, i - lo), j1 = std::min(n_ - 1, i + hi);
      for (int j = j0; j <= j1; ++j) s += (*this)(i, j) * x[j];
      y[i] = s;
    }
  } else {
    for (int i = 0; i < n_; ++i) {
      double s = 0.0;
      const double* row = a_.data() + static_cast<std::size_t>(i) * n_;
      for (int j = 0; j < n_; ++j) s += row[j] * x[j];
      y[i] = s;
    }
  }
  return y;
}

double RealMatrix::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

bool RealMatrix::is_symmetric(double tol) const {
  const double scale = std::max(max_abs(), 1.0);
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (std::abs((*this)(i, j) - (*this)(j, i)) > tol * scale) return false;
  return true;
}

RealMatrix operator-(const RealMatrix& a, const RealMatrix& b) {
  if (a.size() != b.size()) throw std::invalid_argument("matrix difference: dimension mismatch");
  RealMatrix c(a.size());
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

double spectral_norm(const RealMatrix& m, int max_iter, double tol) {
  const int n = m.size();
  if (n == 0) return 0.0;
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = 1.0 / std::sqrt(double(n));
  double sigma = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    // v <- M^T M v, normalized; sigma^2 converges to the top eigenvalue.
    std::vector<double> w = m.apply(v);
    std::vector<double> u(n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) u[j] += m(i, j) * w[i];
    double norm = 0.0;
    for (double x : u) norm += x * x;
    norm = std::sqrt(norm);
    if (norm == 0.0) return 0.0;
    const double next = std::sqrt(norm);
    for (int i = 0; i < n; ++i) v[i] = u[i] / norm;
    if (std::abs(next - sigma) <= tol * std::max(next, 1e-300)) return next;
    sigma = next;
  }
  return sigma;
}

ComplexTridiagFactor::ComplexTridiagFactor(const RealMatrix& a, double h, cplx z)
    : n_(a.size()) {
  // Factors z I - h A for tridiagonal A. Pivots are bounded away from zero
  // when z stays off the spectrum of hA, as contour nodes do; ok_ flags any
  // breakdown so callers can reroute to dense LU.
  sub_.resize(n_);
  cprime_.resize(n_);
  inv_piv_.resize(n_);
  const double scale = std::max(std::abs(z) + std::abs(h) * a.max_abs(), 1e-300);
  const double tiny = 1e-14 * scale;
  cplx piv = z - h * a(0, 0);
  if (std::abs(piv) < tiny) {
    ok_ = false;
    return;
  }
  inv_piv_[0] = 1.0 / piv;
  for (int i = 1; i < n_; ++i) {
    const cplx super_prev = -h * a(i - 1, i);
    cprime_[i - 1] = super_prev * inv_piv_[i - 1];
    sub_[i] = -h * a(i, i - 1);
    piv = (z - h * a(i, i)) - sub_[i] * cprime_[i - 1];
    if (std::abs(piv) < tiny) {
      ok_ = false;
      return;
    }
    inv_piv_[i] = 1.0 / piv;
  }
}

void ComplexTridiagFactor::solve(cplx* rhs, int first_nonzero) const {
  const int start = std::max(first_nonzero, 0);
  rhs[start] *= inv_piv_[start];
  for (int i = start + 1; i < n_; ++i)
    rhs[i] = (rhs[i] - sub_[i] * rhs[i - 1]) * inv_piv_[i];
  for (int i = n_ - 2; i >= 0; --i) rhs[i] -= cprime_[i] * rhs[i + 1];
}

ComplexDenseLU::ComplexDenseLU(const RealMatrix& a, double h, cplx z) : n_(a.size()) {
  lu_.assign(static_cast<std::size_t>(n_) * n_, cplx{0.0, 0.0});
  piv_.resize(n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) lu_[static_cast<std::size_t>(i) * n_ + j] = -h * a(i, j);
    lu_[static_cast<std::size_t>(i) * n_ + i] += z;
  }
  for (int col = 0; col < n_; ++col) {
    int p = col;
    double best = std::abs(lu_[static_cast<std::size_t>(col) * n_ + col]);
    for (int r = col + 1; r < n_; ++r) {
      const double v = std::abs(lu_[static_cast<std::size_t>(r) * n_ + col]);
      if (v > best) {
        best = v;
        p = r;
      }
    }
    if (best < 1e-300) throw std::runtime_error("ComplexDenseLU: singular shift z I - h A");
    piv_[col] = p;
    if (p != col)
      for (int j = 0; j < n_; ++j)
        std::swap(lu_[static_cast<std::size_t>(col) * n_ + j],
                  lu_[static_cast<std::size_t>(p) * n_ + j]);
    const cplx inv = 1.0 / lu_[static_cast<std::size_t>(col) * n_ + col];
    for (int r = col + 1; r < n_; ++r) {
      cplx& l = lu_[static_cast<std::size_t>(r) * n_ + col];
      l *= inv;
      if (l != cplx{0.0, 0.0}) {
        const cplx lik = l;
        const cplx* prow = lu_.data() + static_cast<std::size_t>(col) * n_;
        cplx* row = lu_.data() + static_cast<std::size_t>(r) * n_;
        for (int j = col + 1; j < n_; ++j) row[j] -= lik * prow[j];
      }
    }
  }
}

void ComplexDenseLU::solve(cplx* rhs) const {
  for (int i = 0; i < n_; ++i) {
    if (piv_[i] != i) std::swap(rhs[i], rhs[piv_[i]]);
    const cplx* row = lu_.data() + static_cast<std::size_t>(i) * n_;
    for (int j = 0; j < i; ++j) rhs[i] -= row[j] * rhs[j];
  }
  for (int i = n_ - 1; i >= 0; --i) {
    const cplx* row = lu_.data() + static_cast<std::size_t>(i) * n_;
    for (int j = i + 1; j < n_; ++j) rhs[i] -= row[j] * rhs[j];
    rhs[i] /= row[i];
  }
}

SymmetricEigen jacobi_eigen(const RealMatrix& a, int max_sweeps) {
  if (!a.is_symmetric(1e-10)) throw std::invalid_argument("jacobi_eigen: matrix is not symmetric");
  const int n = a.size();
  RealMatrix m = a;
  RealMatrix v = RealMatrix::identity(n);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += m(p, q) * m(p, q);
    if (off <= 1e-30 * std::max(1.0, m.max_abs() * m.max_abs())) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = m(p, q);
        if (apq == 0.0) continue;
        const double theta = (m(q, q) - m(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int i = 0; i < n; ++i) {
          const double mip = m(i, p), miq = m(i, q);
          m(i, p) = c * mip - s * miq;
          m(i, q) = s * mip + c * miq;
        }
        for (int i = 0; i < n; ++i) {
          const double mpi = m(p, i), mqi = m(q, i);
          m(p, i) = c * mpi - s * mqi;
          m(q, i) = s * mpi + c * mqi;
        }
        for (int i = 0; i < n; ++i) {
          const double vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip - s * viq;
          v(i, q) = s * vip + c * viq;
        }
      }
    }
  }
  SymmetricEigen e;
  e.values.resize(n);
  for (int i = 0; i < n; ++i) e.values[i] = m(i, i);
  // Sort ascending, permuting eigenvector columns alongside.
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return e.values[x] < e.values[y]; });
  SymmetricEigen sorted;
  sorted.values.resize(n);
  sorted.vectors = RealMatrix(n);
  for (int col = 0; col < n; ++col) {
    sorted.values[col] = e.values[order[col]];
    for (int i = 0; i < n; ++i) sorted.vectors(i, col) = v(i, order[col]);
  }
  return sorted;
}

}  // namespace philt
