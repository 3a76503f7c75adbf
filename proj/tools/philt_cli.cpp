// Benchmark driver: scalar accuracy table, convergence ladders and operator
// assembly on user matrices.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "philt/harness.hpp"
#include "philt/integrators.hpp"
#include "philt/operator_phi.hpp"
#include "philt/problems.hpp"

namespace {

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot open output file: " + path);
  return file;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exponential-integrator phi operators via contour quadrature"};
  app.require_subcommand(1);

  // table1: scalar accuracy of phi(lambda) = (e^lambda - 1)/lambda.
  auto* table1 = app.add_subcommand("table1", "scalar accuracy table for phi(lambda)");
  std::vector<int> k_list{15, 25};
  double t_alpha = 0.7, t_d = 0.6, t_eps = 2.2204e-16;
  std::string t_out;
  table1->add_option("--K-list", k_list, "quadrature sizes (comma separated)")
      ->delimiter(',');
  table1->add_option("--alpha", t_alpha, "contour angle alpha");
  table1->add_option("--d", t_d, "strip half-width d");
  table1->add_option("--eps", t_eps, "evaluation precision for the parameter selection");
  table1->add_option("--out", t_out, "output CSV path (default stdout)");

  // convergence: error-vs-stepsize ladder plus fitted order.
  auto* conv = app.add_subcommand("convergence", "error vs stepsize for one problem/method");
  philt::RunConfig run;
  std::string c_out;
  conv->add_option("--problem", run.problem, "ex1_cp | ex1_ho | ex2_ho")->required();
  conv->add_option("--method", run.method, "ms1..ms4 | euler | rk2 | rk3 | rk4")->required();
  conv->add_option("--J", run.J, "spatial subintervals (0 = problem default)");
  conv->add_option("--K", run.K, "quadrature truncation index");
  conv->add_option("--alpha", run.alpha, "contour angle alpha");
  conv->add_option("--d", run.d, "strip half-width d");
  conv->add_option("--eps", run.eps, "precision for the eps-dependent selection");
  conv->add_flag("--eps-selection", run.eps_selection,
                 "use the eps-dependent parameter selection for the operators");
  conv->add_option("--N-list", run.step_counts, "step counts (comma separated)")
      ->delimiter(',');
  conv->add_option("--out", c_out, "output CSV path (default stdout)");

  // opbench: assemble phi operators for a user-supplied matrix.
  auto* bench = app.add_subcommand("opbench", "operator assembly on a matrix file");
  std::string matrix_file, b_kind = "ms", b_out;
  int b_k = 4, b_K = 35;
  double b_h = 0.01;
  bench->add_option("--matrix-file", matrix_file, "path: 'n' then 'i j value' lines")
      ->required();
  bench->add_option("--kind", b_kind, "ms (multistep, j=0..k) | rk (rk4 tableau set)");
  bench->add_option("--k", b_k, "step count for the multistep set");
  bench->add_option("--h", b_h, "stepsize scaling of the matrix");
  bench->add_option("--K", b_K, "quadrature truncation index");
  bench->add_option("--out", b_out, "output CSV path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*table1) {
      const philt::Table1Result table = philt::run_table1(k_list, t_alpha, t_d, t_eps);
      std::ofstream file;
      philt::write_table1_csv(open_output(file, t_out), table);
      std::fprintf(stderr, "table1: %zu rows in %.3fs\n", table.rows.size(),
                   table.elapsed_seconds);
    } else if (*conv) {
      const std::vector<philt::ConvergenceRecord> records = philt::run_convergence(run);
      std::ofstream file;
      philt::write_convergence_csv(open_output(file, c_out), records);
      try {
        std::fprintf(stderr, "fitted order: %.4f\n", philt::fit_order(records));
      } catch (const std::exception& e) {
        std::fprintf(stderr, "fitted order: n/a (%s)\n", e.what());
      }
    } else if (*bench) {
      const philt::RealMatrix A = philt::read_matrix_file(matrix_file);
      philt::OperatorEvalConfig cfg;
      cfg.K = b_K;
      const auto start = std::chrono::steady_clock::now();
      philt::OperatorSet ops;
      if (b_kind == "ms")
        ops = philt::precompute_multistep_ops(b_k, A, b_h, cfg);
      else if (b_kind == "rk")
        ops = philt::precompute_rk_ops(philt::tableau_rk4(), A, b_h, cfg);
      else
        throw std::runtime_error("unknown --kind (use ms or rk)");
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

      std::ofstream file;
      std::ostream& out = open_output(file, b_out);
      out << "kind,n,K,h,operators,assembled,seconds\n"
          << b_kind << ',' << A.size() << ',' << b_K << ',' << philt::format_full(b_h)
          << ',' << ops.ops.size() << ',' << ops.assembled << ','
          << philt::format_full(secs) << '\n';
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
