#include "philt/integrators.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace philt {

namespace {

double binom_double(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

void check_finite(const std::vector<double>& v, long long step) {
  for (double x : v)
    if (!std::isfinite(x))
      throw std::runtime_error("integrator: non-finite value at step " + std::to_string(step));
}

void axpy(double a, const std::vector<double>& x, std::vector<double>& y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

// y += coeff * (phi_{j}(beta hA) f) for every term of the combo.
void apply_combo(const PhiCombo& combo, const OperatorSet& ops,
                 const std::vector<double>& f, double scale_all,
                 std::vector<double>& y) {
  for (const PhiTerm& term : combo.terms) {
    const RealMatrix& M = ops.at(PhiSpec::rk(term.j, term.beta));
    std::vector<double> mf = M.apply(f);
    axpy(scale_all * term.coeff(), mf, y);
  }
}

PhiCombo combo(std::initializer_list<PhiTerm> terms) { return PhiCombo{terms}; }

}  // namespace

double PhiCombo::value_at_zero() const {
  double v = 0.0;
  for (const PhiTerm& t : terms) {
    double fact = 1.0;
    for (int i = 2; i <= t.j; ++i) fact *= i;
    v += t.coeff() / fact;
  }
  return v;
}

PhiCombo operator+(const PhiCombo& a, const PhiCombo& b) {
  PhiCombo c = a;
  c.terms.insert(c.terms.end(), b.terms.begin(), b.terms.end());
  return c;
}

PhiCombo scale(long long num, long long den, const PhiCombo& c) {
  PhiCombo out = c;
  for (PhiTerm& t : out.terms) {
    t.num *= num;
    t.den *= den;
  }
  return out;
}

void ExpRKTableau::validate() const {
  if (s < 1) throw std::invalid_argument("ExpRKTableau: need at least one stage");
  if (static_cast<int>(c.size()) != s || static_cast<int>(b.size()) != s ||
      static_cast<int>(a.size()) != s)
    throw std::invalid_argument("ExpRKTableau: inconsistent sizes");
  if (c[0] != 0.0) throw std::invalid_argument("ExpRKTableau: c_1 must be 0");
  for (int i = 0; i < s; ++i) {
    if (static_cast<int>(a[i].size()) != s)
      throw std::invalid_argument("ExpRKTableau: inconsistent row size");
    for (int j = i; j < s; ++j)
      if (!a[i][j].empty())
        throw std::invalid_argument("ExpRKTableau: explicit method requires strictly lower-triangular a");
  }
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < i; ++j)
      for (const PhiTerm& t : a[i][j].terms)
        if (t.j < 1) throw std::invalid_argument("ExpRKTableau: combos must reference phi_j with j >= 1");
  for (const PhiCombo& bc : b)
    for (const PhiTerm& t : bc.terms)
      if (t.j < 1) throw std::invalid_argument("ExpRKTableau: combos must reference phi_j with j >= 1");
}

std::vector<PhiSpec> ExpRKTableau::required_specs() const {
  std::vector<PhiSpec> specs;
  for (int i = 1; i < s; ++i) specs.push_back(PhiSpec::rk(0, c[i]));
  specs.push_back(PhiSpec::rk(0, 1.0));
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < i; ++j)
      for (const PhiTerm& t : a[i][j].terms) specs.push_back(PhiSpec::rk(t.j, t.beta));
  for (const PhiCombo& bc : b)
    for (const PhiTerm& t : bc.terms) specs.push_back(PhiSpec::rk(t.j, t.beta));
  return specs;
}

ExpRKTableau tableau_exp_euler() {
  ExpRKTableau t;
  t.name = "euler";
  t.s = 1;
  t.c = {0.0};
  t.a = {{PhiCombo{}}};
  t.b = {combo({{1, 1, 1, 1.0}})};
  return t;
}

ExpRKTableau tableau_rk2() {
  ExpRKTableau t;
  t.name = "rk2";
  t.s = 2;
  const double c2 = 0.5;
  t.c = {0.0, c2};
  t.a.assign(2, std::vector<PhiCombo>(2));
  t.a[1][0] = combo({{1, 2, 1, c2}});
  t.b = {PhiCombo{}, combo({{1, 1, 1, 1.0}})};
  return t;
}

ExpRKTableau tableau_rk3() {
  ExpRKTableau t;
  t.name = "rk3";
  t.s = 3;
  const double c2 = 1.0 / 3.0, c3 = 2.0 / 3.0;
  t.c = {0.0, c2, c3};
  t.a.assign(3, std::vector<PhiCombo>(3));
  t.a[1][0] = combo({{1, 3, 1, c2}});
  t.a[2][0] = combo({{2, 3, 1, c3}, {-4, 3, 2, c3}});
  t.a[2][1] = combo({{4, 3, 2, c3}});
  t.b = {combo({{1, 1, 1, 1.0}, {-3, 2, 2, 1.0}}), PhiCombo{}, combo({{3, 2, 2, 1.0}})};
  return t;
}

ExpRKTableau tableau_rk4() {
  ExpRKTableau t;
  t.name = "rk4";
  t.s = 5;
  const double c2 = 0.5, c3 = 0.5, c4 = 1.0, c5 = 0.5;
  t.c = {0.0, c2, c3, c4, c5};
  t.a.assign(5, std::vector<PhiCombo>(5));
  t.a[1][0] = combo({{1, 2, 1, c2}});
  t.a[2][0] = combo({{1, 2, 1, c3}, {-1, 1, 2, c3}});
  t.a[2][1] = combo({{1, 1, 2, c3}});
  t.a[3][0] = combo({{1, 1, 1, c4}, {-2, 1, 2, c4}});
  t.a[3][1] = combo({{1, 1, 2, c4}});
  t.a[3][2] = combo({{1, 1, 2, c4}});
  const PhiCombo a52 =
      combo({{1, 2, 2, c5}, {-1, 1, 3, c4}, {1, 4, 2, c4}, {-1, 2, 3, c5}});
  const PhiCombo a54 = combo({{1, 4, 2, c5}}) + scale(-1, 1, a52);
  t.a[4][1] = a52;
  t.a[4][2] = a52;
  t.a[4][3] = a54;
  t.a[4][0] = combo({{1, 2, 1, c5}}) + scale(-2, 1, a52) + scale(-1, 1, a54);
  t.b = {combo({{1, 1, 1, 1.0}, {-3, 1, 2, 1.0}, {4, 1, 3, 1.0}}),
         PhiCombo{},
         PhiCombo{},
         combo({{-1, 1, 2, 1.0}, {4, 1, 3, 1.0}}),
         combo({{4, 1, 2, 1.0}, {-8, 1, 3, 1.0}})};
  return t;
}

std::vector<ExpRKTableau> builtin_tableaus() {
  return {tableau_exp_euler(), tableau_rk2(), tableau_rk3(), tableau_rk4()};
}

ExpRKTableau tableau_by_name(const std::string& name) {
  for (ExpRKTableau& t : builtin_tableaus())
    if (t.name == name) return t;
  throw std::invalid_argument("unknown tableau: " + name);
}

std::vector<double> forward_difference(const std::deque<std::vector<double>>& history, int j) {
  if (j < 0 || static_cast<int>(history.size()) < j + 1)
    throw std::invalid_argument("forward_difference: history too short");
  const std::size_t n = history.front().size();
  std::vector<double> diff(n, 0.0);
  for (int i = 0; i <= j; ++i) {
    const double sign = ((j - i) % 2 == 0) ? 1.0 : -1.0;
    const double coeff = sign * binom_double(j, i);
    const std::vector<double>& f = history[i];
    for (std::size_t p = 0; p < n; ++p) diff[p] += coeff * f[p];
  }
  return diff;
}

void multistep_step(MultistepState& state, const OperatorSet& ops, const Nonlinearity& f) {
  const int k = state.k;
  if (static_cast<int>(state.u_history.size()) != k ||
      static_cast<int>(state.f_history.size()) != k)
    throw std::invalid_argument("multistep_step: history not warm");

  // u_{n+k} = phi_0(k,hA) u_n + h sum_j phi_{j+1}(k,hA) Delta^j f_n
  std::vector<double> u_next = ops.at(PhiSpec::multistep(0, k)).apply(state.u_history.front());
  for (int j = 0; j < k; ++j) {
    const std::vector<double> diff = forward_difference(state.f_history, j);
    const std::vector<double> contrib = ops.at(PhiSpec::multistep(j + 1, k)).apply(diff);
    axpy(state.h, contrib, u_next);
  }
  check_finite(u_next, state.n + k);

  const double t_next = double(state.n + k) * state.h;
  state.u_history.pop_front();
  state.u_history.push_back(u_next);
  state.f_history.pop_front();
  state.f_history.push_back(f(t_next, u_next));
  state.n += 1;
}

IntegrationResult multistep_integrate(const Problem& problem, int k, int N,
                                      const OperatorEvalConfig& cfg,
                                      bool store_trajectory) {
  if (k < 1) throw std::invalid_argument("multistep_integrate: k must be >= 1");
  if (N < k) throw std::invalid_argument("multistep_integrate: need N >= k steps");
  const double h = problem.T / N;

  OperatorSet ops = precompute_multistep_ops(k, problem.A, h, cfg);

  MultistepState state;
  state.k = k;
  state.h = h;
  state.n = 0;
  IntegrationResult result;
  for (int j = 0; j < k; ++j) {
    std::vector<double> u = problem.exact_vector(j * h);
    state.f_history.push_back(problem.f(j * h, u));
    state.u_history.push_back(u);
    if (store_trajectory) result.trajectory.push_back(std::move(u));
  }

  for (int step = 0; step + k <= N; ++step) {
    multistep_step(state, ops, problem.f);
    if (store_trajectory) result.trajectory.push_back(state.u_history.back());
  }

  result.u_final = state.u_history.back();
  result.t_final = problem.T;
  std::vector<double> diff = result.u_final;
  const std::vector<double> exact = problem.exact_vector(problem.T);
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= exact[i];
  result.error = problem.error_norm(diff);
  return result;
}

std::vector<double> exprk_step(const std::vector<double>& u, const ExpRKTableau& tableau,
                               const OperatorSet& ops, const Nonlinearity& f,
                               double t, double h) {
  const int s = tableau.s;
  std::vector<std::vector<double>> stage_f(s);
  std::vector<bool> have_f(s, false);
  const auto stage_value = [&](int j, const std::vector<double>& Uj) -> const std::vector<double>& {
    if (!have_f[j]) {
      stage_f[j] = f(t + tableau.c[j] * h, Uj);
      have_f[j] = true;
    }
    return stage_f[j];
  };

  std::vector<std::vector<double>> stages(s);
  stages[0] = u;  // c_1 = 0
  for (int i = 1; i < s; ++i) {
    std::vector<double> Ui = ops.at(PhiSpec::rk(0, tableau.c[i])).apply(u);
    for (int j = 0; j < i; ++j) {
      if (tableau.a[i][j].empty()) continue;
      apply_combo(tableau.a[i][j], ops, stage_value(j, stages[j]), h, Ui);
    }
    stages[i] = std::move(Ui);
  }

  std::vector<double> u_next = ops.at(PhiSpec::rk(0, 1.0)).apply(u);
  for (int i = 0; i < s; ++i) {
    if (tableau.b[i].empty()) continue;
    apply_combo(tableau.b[i], ops, stage_value(i, stages[i]), h, u_next);
  }
  return u_next;
}

IntegrationResult exprk_integrate(const Problem& problem, const ExpRKTableau& tableau,
                                  int N, const OperatorEvalConfig& cfg,
                                  bool store_trajectory) {
  if (N < 1) throw std::invalid_argument("exprk_integrate: need N >= 1 steps");
  const double h = problem.T / N;

  OperatorSet ops = precompute_rk_ops(tableau, problem.A, h, cfg);

  IntegrationResult result;
  std::vector<double> u = problem.initial_condition();
  if (store_trajectory) result.trajectory.push_back(u);
  for (int step = 0; step < N; ++step) {
    u = exprk_step(u, tableau, ops, problem.f, step * h, h);
    check_finite(u, step + 1);
    if (store_trajectory) result.trajectory.push_back(u);
  }

  result.u_final = u;
  result.t_final = problem.T;
  std::vector<double> diff = u;
  const std::vector<double> exact = problem.exact_vector(problem.T);
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= exact[i];
  result.error = problem.error_norm(diff);
  return result;
}

}  // namespace philt
