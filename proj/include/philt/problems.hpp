#ifndef PHILT_PROBLEMS_HPP
#define PHILT_PROBLEMS_HPP

#include <functional>
#include <string>
#include <vector>

#include "philt/linalg.hpp"

namespace philt {

/// Semidiscrete benchmark problem on the unit interval with homogeneous
/// Dirichlet conditions: u' = A u + f(t, u) on the interior grid x_i = i/J,
/// i = 1..J-1, with known exact solution for error measurement.
struct Problem {
  enum class Norm { Max, Half };

  std::string name;
  int J = 2;
  RealMatrix A;  // (J-1) x (J-1), J^2 tridiag(1,-2,1)
  std::function<std::vector<double>(double, const std::vector<double>&)> f;
  std::function<double(double, double)> exact;  // u(x, t)
  Norm norm = Norm::Max;
  double T = 1.0;

  std::vector<double> exact_vector(double t) const;
  std::vector<double> initial_condition() const { return exact_vector(0.0); }
  /// Error norm of a difference vector: max norm or the discrete 1/2-norm.
  double error_norm(const std::vector<double>& diff) const;
};

/// (J-1) x (J-1) finite-difference Laplacian J^2 tridiag(1, -2, 1), band (1,1).
RealMatrix laplacian(int J);

/// Composite Simpson weights over the full grid x_0..x_J (J even):
/// (1/(3J)) [1, 4, 2, 4, ..., 2, 4, 1]. Interior vectors are extended by the
/// zero boundary values before applying them.
std::vector<double> simpson_weights(int J);

/// Simpson approximation of int_0^1 u for an interior-grid vector.
double simpson_integral(const std::vector<double>& interior, const std::vector<double>& weights);

/// u_t = u_xx + (int_0^1 u) u_x + g, exact solution x(1-x)e^t, J = 512 default.
/// Error measured in the discrete 1/2-norm.
Problem make_ex1_cp(int J = 512);

/// u_t = u_xx + 1/(1+u^2) + g, exact solution x(1-x)e^t, J = 200 default.
/// Error measured in the maximum norm.
Problem make_ex1_ho(int J = 200);

/// u_t = u_xx + int_0^1 u + g, exact solution x(1-x)e^t, J = 200 default.
/// Error measured in the discrete 1/2-norm.
Problem make_ex2_ho(int J = 200);

Problem problem_by_name(const std::string& name, int J = 0);

/// Discrete realization of ||(-A)^{1/2} v|| in the grid-weighted 2-norm:
/// sqrt((1/J) v^T (-A) v).
double norm_half(const std::vector<double>& v, const RealMatrix& A, int J);

double norm_max(const std::vector<double>& v);

}  // namespace philt

#endif  // PHILT_PROBLEMS_HPP
