#ifndef PHILT_LINALG_HPP
#define PHILT_LINALG_HPP

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace philt {

using cplx = std::complex<double>;

/// Dense square real matrix, row-major, with an optional (lower, upper)
/// bandwidth tag. When the band is set, entries outside it are exactly zero.
class RealMatrix {
 public:
  RealMatrix() = default;
  explicit RealMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {}

  static RealMatrix identity(int n);

  int size() const { return n_; }
  double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  double* data() { return a_.data(); }
  const double* data() const { return a_.data(); }

  const std::optional<std::pair<int, int>>& band() const { return band_; }
  void set_band(int lower, int upper) { band_ = {lower, upper}; }
  /// Scans the entries and tags the tightest (lower, upper) bandwidth.
  void detect_band();
  bool is_tridiagonal() const;

  std::vector<double> apply(const std::vector<double>& x) const;

  double max_abs() const;
  bool is_symmetric(double tol = 1e-12) const;

 private:
  int n_ = 0;
  std::vector<double> a_;
  std::optional<std::pair<int, int>> band_;
};

RealMatrix operator-(const RealMatrix& a, const RealMatrix& b);

/// Largest singular value via power iteration on M^T M (deterministic start).
double spectral_norm(const RealMatrix& m, int max_iter = 500, double tol = 1e-13);

/// Factorization of the complex tridiagonal matrix diag(z) - h*A for
/// tridiagonal A, by the Thomas recurrence without pivoting. The forward
/// coefficients depend only on the matrix, so one factorization serves any
/// number of right-hand sides. ok() reports whether all pivots stayed above
/// the breakdown threshold; callers fall back to dense LU otherwise.
class ComplexTridiagFactor {
 public:
  ComplexTridiagFactor(const RealMatrix& a, double h, cplx z);

  bool ok() const { return ok_; }
  int size() const { return n_; }
  /// Solves in place; first_nonzero skips the leading zero rows of the rhs.
  void solve(cplx* rhs, int first_nonzero = 0) const;

 private:
  int n_ = 0;
  bool ok_ = true;
  std::vector<cplx> sub_;      // -h * A(i, i-1)
  std::vector<cplx> cprime_;   // eliminated superdiagonal
  std::vector<cplx> inv_piv_;  // reciprocal pivots
};

/// Complex dense LU with partial pivoting of diag(z) - h*A.
/// Throws std::runtime_error when a pivot falls below 1e-300.
class ComplexDenseLU {
 public:
  ComplexDenseLU(const RealMatrix& a, double h, cplx z);

  int size() const { return n_; }
  void solve(cplx* rhs) const;

 private:
  int n_ = 0;
  std::vector<cplx> lu_;
  std::vector<int> piv_;
};

/// Eigendecomposition of a symmetric matrix by the cyclic Jacobi method.
/// Returns eigenvalues (ascending) and the orthogonal matrix of column
/// eigenvectors.
struct SymmetricEigen {
  std::vector<double> values;
  RealMatrix vectors;
};
SymmetricEigen jacobi_eigen(const RealMatrix& a, int max_sweeps = 64);

}  // namespace philt

#endif  // PHILT_LINALG_HPP
