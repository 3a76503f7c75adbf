#include "philt/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "philt/integrators.hpp"
#include "philt/scalar_phi.hpp"

namespace philt {

namespace {

bool is_multistep_method(const std::string& method, int& k) {
  if (method.size() == 3 && method.compare(0, 2, "ms") == 0 && method[2] >= '1' &&
      method[2] <= '9') {
    k = method[2] - '0';
    return true;
  }
  return false;
}

}  // namespace

std::string format_full(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::vector<ConvergenceRecord> run_convergence(const RunConfig& cfg) {
  Problem problem = problem_by_name(cfg.problem, cfg.J);
  OperatorEvalConfig op_cfg;
  op_cfg.K = cfg.K;
  op_cfg.alpha = cfg.alpha;
  op_cfg.d = cfg.d;
  op_cfg.eps = cfg.eps;
  op_cfg.eps_selection = cfg.eps_selection;

  std::vector<int> steps = cfg.step_counts;
  std::sort(steps.begin(), steps.end());

  int k = 0;
  const bool multistep = is_multistep_method(cfg.method, k);
  ExpRKTableau tableau;
  if (!multistep) tableau = tableau_by_name(cfg.method);

  std::vector<ConvergenceRecord> records;
  for (int N : steps) {
    try {
      const IntegrationResult result =
          multistep ? multistep_integrate(problem, k, N, op_cfg)
                    : exprk_integrate(problem, tableau, N, op_cfg);
      ConvergenceRecord rec;
      rec.problem = problem.name;
      rec.method = cfg.method;
      rec.J = problem.J;
      rec.K = cfg.K;
      rec.h = problem.T / N;
      rec.error = result.error;
      rec.norm = problem.norm == Problem::Norm::Max ? "max" : "half";
      records.push_back(std::move(rec));
    } catch (const std::exception& e) {
      std::cerr << "run_convergence: N=" << N << " failed: " << e.what() << "\n";
    }
  }
  return records;
}

double fit_order(const std::vector<ConvergenceRecord>& records) {
  std::vector<ConvergenceRecord> usable;
  for (const ConvergenceRecord& r : records)
    if (std::isfinite(r.error) && r.error > 0.0) usable.push_back(r);
  std::sort(usable.begin(), usable.end(),
            [](const ConvergenceRecord& a, const ConvergenceRecord& b) { return a.h > b.h; });
  if (usable.size() < 3) throw std::runtime_error("fit_order: fewer than 3 usable records");

  // Quadrature-floor estimate. The floor only matters once the ladder stops
  // converging at its own rate: the finest-h local order dropping below half
  // the median local order (or turning nonpositive) marks the flat or rising
  // tail where quadrature error dominates. The smallest error among the
  // maximal-K records then estimates the floor; a ladder still on its slope
  // has nothing to exclude from below.
  int max_k = usable.front().K;
  for (const ConvergenceRecord& r : usable) max_k = std::max(max_k, r.K);
  double floor = 0.0;
  if (usable.size() >= 3) {
    std::vector<double> local;
    for (std::size_t i = 0; i + 1 < usable.size(); ++i)
      local.push_back(std::log(usable[i].error / usable[i + 1].error) /
                      std::log(usable[i].h / usable[i + 1].h));
    std::vector<double> sorted = local;
    std::sort(sorted.begin(), sorted.end());
    const double median = sorted[sorted.size() / 2];
    const double last = local.back();
    if (last <= 0.0 || last < 0.5 * median) {
      floor = std::numeric_limits<double>::infinity();
      for (const ConvergenceRecord& r : usable)
        if (r.K == max_k) floor = std::min(floor, r.error);
      if (!std::isfinite(floor)) floor = 0.0;
    }
  }

  std::vector<double> xs, ys;
  for (const ConvergenceRecord& r : usable) {
    if (r.error > 1e-1) continue;
    if (floor > 0.0 && r.error < 100.0 * floor) continue;
    xs.push_back(std::log(r.h));
    ys.push_back(std::log(r.error));
  }
  if (xs.size() < 3) throw std::runtime_error("fit_order: fewer than 3 records above the floor");

  const std::size_t n = xs.size();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Table1Result run_table1(const std::vector<int>& k_values, double alpha, double d,
                        double eps) {
  const auto start = std::chrono::steady_clock::now();
  Table1Result table;
  table.k_values = k_values;

  std::vector<double> lambdas;
  for (int p = 0; p <= 13; ++p) lambdas.push_back(-std::pow(10.0, -p));
  for (int p = 0; p <= 13; ++p) lambdas.push_back(std::pow(10.0, -p));

  for (double lambda : lambdas) {
    Table1Row row;
    row.lambda = lambda;
    for (int K : k_values) {
      ScalarEvalConfig cfg;
      cfg.K = K;
      cfg.alpha = alpha;
      cfg.d = d;
      cfg.eps = eps;
      cfg.eps_selection = true;
      const cplx value = phi_rk_scalar(1, cplx(lambda, 0.0), cfg);
      const cplx reference = oracle_phi(1, cplx(lambda, 0.0));
      row.errors.push_back(std::abs(value - reference));
    }
    table.rows.push_back(std::move(row));
  }
  table.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return table;
}

void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRecord>& records) {
  out << "problem,method,J,K,h,error,norm\n";
  for (const ConvergenceRecord& r : records)
    out << r.problem << ',' << r.method << ',' << r.J << ',' << r.K << ','
        << format_full(r.h) << ',' << format_full(r.error) << ',' << r.norm << '\n';
}

std::string convergence_csv_string(const std::vector<ConvergenceRecord>& records) {
  std::ostringstream out;
  write_convergence_csv(out, records);
  return out.str();
}

void write_table1_csv(std::ostream& out, const Table1Result& table) {
  out << "lambda";
  for (int K : table.k_values) out << ",err_K" << K;
  out << '\n';
  for (const Table1Row& row : table.rows) {
    out << format_full(row.lambda);
    for (double e : row.errors) out << ',' << format_full(e);
    out << '\n';
  }
}

}  // namespace philt
