#ifndef PHILT_INTEGRATORS_HPP
#define PHILT_INTEGRATORS_HPP

#include <deque>
#include <functional>
#include <string>
#include <vector>

#include "philt/operator_phi.hpp"
#include "philt/problems.hpp"

namespace philt {

using Nonlinearity = std::function<std::vector<double>(double, const std::vector<double>&)>;

/// Linear combination sum_i (num_i/den_i) * phi_{j_i}(beta_i hA) appearing as
/// a tableau entry. Coefficients are exact rationals so tableau arithmetic
/// introduces no roundoff of its own.
struct PhiTerm {
  long long num = 0;
  long long den = 1;
  int j = 1;
  double beta = 1.0;

  double coeff() const { return static_cast<double>(num) / static_cast<double>(den); }
};

struct PhiCombo {
  std::vector<PhiTerm> terms;

  bool empty() const { return terms.empty(); }
  /// Value at hA = 0, i.e. sum coeff_i * phi_{j_i}(0) = sum coeff_i / j_i!.
  double value_at_zero() const;
};

PhiCombo operator+(const PhiCombo& a, const PhiCombo& b);
PhiCombo scale(long long num, long long den, const PhiCombo& c);

/// Explicit exponential Runge-Kutta tableau: abscissae c (c_1 = 0), strictly
/// lower-triangular stage grid a, and weights b, all entries PhiCombos in the
/// phi_j(c_l hA) family.
struct ExpRKTableau {
  std::string name;
  int s = 1;
  std::vector<double> c;
  std::vector<std::vector<PhiCombo>> a;
  std::vector<PhiCombo> b;

  void validate() const;
  /// Distinct (j, beta) pairs referenced by the combos plus the propagators
  /// phi_0(c_i hA), i >= 2, and phi_0(hA).
  std::vector<PhiSpec> required_specs() const;
};

ExpRKTableau tableau_exp_euler();
ExpRKTableau tableau_rk2();
ExpRKTableau tableau_rk3();
ExpRKTableau tableau_rk4();
/// euler, rk2, rk3, rk4 in order.
std::vector<ExpRKTableau> builtin_tableaus();
ExpRKTableau tableau_by_name(const std::string& name);

/// Delta^j f_n = sum_{i=0}^{j} (-1)^{j-i} binom(j, i) f_{n+i}; history holds
/// f_n, f_{n+1}, ... oldest first and must contain at least j+1 vectors.
std::vector<double> forward_difference(const std::deque<std::vector<double>>& history, int j);

/// Rolling state of the k-step method: the last k solution values and the
/// last k nonlinearity values, oldest first.
struct MultistepState {
  int k = 1;
  double h = 0.0;
  long long n = 0;  // index of the oldest stored level
  std::deque<std::vector<double>> u_history;
  std::deque<std::vector<double>> f_history;
};

/// One step u_{n+k} = phi_0(k,hA) u_n + h sum_{j=0}^{k-1} phi_{j+1}(k,hA) Delta^j f_n.
/// Evaluates f at the new level and advances the rings. Throws
/// std::runtime_error with the step index if a non-finite component appears.
void multistep_step(MultistepState& state, const OperatorSet& ops, const Nonlinearity& f);

struct IntegrationResult {
  std::vector<double> u_final;
  double error = 0.0;
  double t_final = 0.0;
  std::vector<std::vector<double>> trajectory;  // filled when requested
};

/// Integrates the problem to t = T with N = T/h steps; starting values
/// u_0..u_{k-1} are taken from the exact solution. Returns the final state and
/// the problem-norm error at T.
IntegrationResult multistep_integrate(const Problem& problem, int k, int N,
                                      const OperatorEvalConfig& cfg,
                                      bool store_trajectory = false);

/// One explicit exponential RK step of the tableau using precomputed
/// operators; stage combos are applied matrix-by-matrix to the stage values.
std::vector<double> exprk_step(const std::vector<double>& u, const ExpRKTableau& tableau,
                               const OperatorSet& ops, const Nonlinearity& f,
                               double t, double h);

IntegrationResult exprk_integrate(const Problem& problem, const ExpRKTableau& tableau,
                                  int N, const OperatorEvalConfig& cfg,
                                  bool store_trajectory = false);

}  // namespace philt

#endif  // PHILT_INTEGRATORS_HPP
