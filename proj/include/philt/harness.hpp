#ifndef PHILT_HARNESS_HPP
#define PHILT_HARNESS_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace philt {

/// One convergence measurement: error of `method` on `problem` at stepsize h.
struct ConvergenceRecord {
  std::string problem;
  std::string method;
  int J = 0;
  int K = 0;
  double h = 0.0;
  double error = 0.0;
  std::string norm;
};

/// Configuration of one harness run. Determinism is absolute: identical
/// configs produce byte-identical CSV.
struct RunConfig {
  std::string problem = "ex1_cp";
  std::string method = "ms1";
  int J = 0;  // 0 = problem default
  int K = 35;
  double alpha = 0.7;
  double d = 0.6;
  double eps = 2.2204e-16;
  bool eps_selection = false;
  std::vector<int> step_counts = {4, 8, 16, 32, 64, 128, 256, 512, 1024};
};

/// Runs the dyadic stepsize ladder for one problem/method pair. Per-N failures
/// are reported on stderr and skipped without aborting the ladder.
std::vector<ConvergenceRecord> run_convergence(const RunConfig& cfg);

/// Least-squares slope of log(error) vs log(h). Records with error above 1e-1
/// are dropped. When the finest-h local order collapses below half the median
/// local order (or turns nonpositive), the ladder has reached the region
/// where quadrature error dominates; records within a factor 100 of the
/// observed floor (smallest maximal-K error) are then dropped as well.
/// Throws std::runtime_error when fewer than three usable records remain.
double fit_order(const std::vector<ConvergenceRecord>& records);

/// One row of the scalar accuracy table: |phi(lambda) - reference| per K.
struct Table1Row {
  double lambda = 0.0;
  std::vector<double> errors;  // one per K in the config's K list
};

struct Table1Result {
  std::vector<int> k_values;
  std::vector<Table1Row> rows;
  double elapsed_seconds = 0.0;
};

/// Evaluates phi(lambda) = (e^lambda - 1)/lambda by contour quadrature for
/// lambda in {-1, -1e-1, ..., -1e-13} and their negatives (reflection path for
/// lambda > 0), comparing each value against the series/recursion reference.
Table1Result run_table1(const std::vector<int>& k_values, double alpha, double d,
                        double eps);

/// 17-significant-digit formatting (round-trip exact for binary64).
std::string format_full(double x);

void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRecord>& records);
std::string convergence_csv_string(const std::vector<ConvergenceRecord>& records);
void write_table1_csv(std::ostream& out, const Table1Result& table);

}  // namespace philt

#endif  // PHILT_HARNESS_HPP
