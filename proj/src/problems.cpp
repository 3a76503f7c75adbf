#include "philt/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace philt {

namespace {

// Centered difference of an interior vector with zero Dirichlet neighbors:
// (u_{i+1} - u_{i-1}) * J/2.
std::vector<double> centered_dx(const std::vector<double>& u, int J) {
  const int n = static_cast<int>(u.size());
  std::vector<double> dx(n);
  for (int i = 0; i < n; ++i) {
    const double left = i > 0 ? u[i - 1] : 0.0;
    const double right = i < n - 1 ? u[i + 1] : 0.0;
    dx[i] = (right - left) * J / 2.0;
  }
  return dx;
}

}  // namespace

std::vector<double> Problem::exact_vector(double t) const {
  std::vector<double> u(J - 1);
  for (int i = 1; i < J; ++i) u[i - 1] = exact(double(i) / J, t);
  return u;
}

double Problem::error_norm(const std::vector<double>& diff) const {
  return norm == Norm::Max ? norm_max(diff) : norm_half(diff, A, J);
}

RealMatrix laplacian(int J) {
  if (J < 2) throw std::invalid_argument("laplacian: J must be >= 2");
  const int n = J - 1;
  const double J2 = double(J) * J;
  RealMatrix A(n);
  for (int i = 0; i < n; ++i) {
    A(i, i) = -2.0 * J2;
    if (i > 0) A(i, i - 1) = J2;
    if (i < n - 1) A(i, i + 1) = J2;
  }
  A.set_band(1, 1);
  return A;
}

std::vector<double> simpson_weights(int J) {
  if (J < 2 || J % 2 != 0)
    throw std::invalid_argument("simpson_weights: J must be even and >= 2");
  std::vector<double> w(J + 1);
  const double scale = 1.0 / (3.0 * J);
  w[0] = w[J] = scale;
  for (int i = 1; i < J; ++i) w[i] = (i % 2 == 1 ? 4.0 : 2.0) * scale;
  return w;
}

double simpson_integral(const std::vector<double>& interior, const std::vector<double>& weights) {
  if (interior.size() + 2 != weights.size())
    throw std::invalid_argument("simpson_integral: dimension mismatch");
  // Boundary values are zero, so only interior weights contribute.
  double s = 0.0;
  for (std::size_t i = 0; i < interior.size(); ++i) s += weights[i + 1] * interior[i];
  return s;
}

Problem make_ex1_cp(int J) {
  Problem p;
  p.name = "ex1_cp";
  p.J = J;
  p.A = laplacian(J);
  p.norm = Problem::Norm::Half;
  p.exact = [](double x, double t) { return x * (1.0 - x) * std::exp(t); };
  const std::vector<double> w = simpson_weights(J);
  // g chosen so that u = x(1-x)e^t solves u_t = u_xx + (int u) u_x + g:
  //   g = x(1-x)e^t + 2e^t - (1-2x) e^{2t}/6.
  p.f = [J, w](double t, const std::vector<double>& u) {
    const double integral = simpson_integral(u, w);
    std::vector<double> out = centered_dx(u, J);
    const double et = std::exp(t);
    const double e2t = et * et;
    for (int i = 1; i < J; ++i) {
      const double x = double(i) / J;
      const double g = x * (1.0 - x) * et + 2.0 * et - (1.0 - 2.0 * x) * e2t / 6.0;
      out[i - 1] = integral * out[i - 1] + g;
    }
    return out;
  };
  return p;
}

Problem make_ex1_ho(int J) {
  Problem p;
  p.name = "ex1_ho";
  p.J = J;
  p.A = laplacian(J);
  p.norm = Problem::Norm::Max;
  p.exact = [](double x, double t) { return x * (1.0 - x) * std::exp(t); };
  // g = x(1-x)e^t + 2e^t - 1/(1 + x^2(1-x)^2 e^{2t}).
  p.f = [J](double t, const std::vector<double>& u) {
    std::vector<double> out(J - 1);
    const double et = std::exp(t);
    const double e2t = et * et;
    for (int i = 1; i < J; ++i) {
      const double x = double(i) / J;
      const double xe = x * (1.0 - x);
      const double g = xe * et + 2.0 * et - 1.0 / (1.0 + xe * xe * e2t);
      out[i - 1] = 1.0 / (1.0 + u[i - 1] * u[i - 1]) + g;
    }
    return out;
  };
  return p;
}

Problem make_ex2_ho(int J) {
  Problem p;
  p.name = "ex2_ho";
  p.J = J;
  p.A = laplacian(J);
  p.norm = Problem::Norm::Half;
  p.exact = [](double x, double t) { return x * (1.0 - x) * std::exp(t); };
  const std::vector<double> w = simpson_weights(J);
  // g = x(1-x)e^t + 2e^t - e^t/6  (int_0^1 x(1-x) dx = 1/6).
  p.f = [J, w](double t, const std::vector<double>& u) {
    const double integral = simpson_integral(u, w);
    std::vector<double> out(J - 1);
    const double et = std::exp(t);
    for (int i = 1; i < J; ++i) {
      const double x = double(i) / J;
      const double g = x * (1.0 - x) * et + 2.0 * et - et / 6.0;
      out[i - 1] = integral + g;
    }
    return out;
  };
  return p;
}

Problem problem_by_name(const std::string& name, int J) {
  if (name == "ex1_cp") return make_ex1_cp(J > 0 ? J : 512);
  if (name == "ex1_ho") return make_ex1_ho(J > 0 ? J : 200);
  if (name == "ex2_ho") return make_ex2_ho(J > 0 ? J : 200);
  throw std::invalid_argument("unknown problem: " + name);
}

double norm_half(const std::vector<double>& v, const RealMatrix& A, int J) {
  if (static_cast<int>(v.size()) != A.size())
    throw std::invalid_argument("norm_half: dimension mismatch");
  const std::vector<double> av = A.apply(v);
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s -= v[i] * av[i];
  return std::sqrt(std::max(s, 0.0) / J);
}

double norm_max(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace philt
