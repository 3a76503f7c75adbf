#include "doctest.h"
#include <stdexcept>

#include <cmath>

#include "philt/harness.hpp"

using namespace philt;

namespace {

ConvergenceRecord rec(double h, double error, int K = 35) {
  ConvergenceRecord r;
  r.problem = "synthetic";
  r.method = "none";
  r.J = 16;
  r.K = K;
  r.h = h;
  r.error = error;
  r.norm = "max";
  return r;
}

}  // namespace

TEST_CASE("fit_order recovers an exact power law") {
  std::vector<ConvergenceRecord> records;
  for (int p = 2; p <= 10; ++p) {
    const double h = std::pow(2.0, -p);
    records.push_back(rec(h, 1e-3 * h * h));
  }
  CHECK(fit_order(records) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("fit_order excludes a quadrature plateau") {
  std::vector<ConvergenceRecord> records;
  for (int p = 2; p <= 10; ++p) {
    const double h = std::pow(2.0, -p);
    const double err = std::max(1e-8 * h * h * h, 1e-14);
    records.push_back(rec(h, err));
  }
  // Plateau at 1e-14 below h ~ 1e-2 is excluded and the cubic slope recovered.
  CHECK(fit_order(records) == doctest::Approx(3.0).epsilon(1e-6));
}

TEST_CASE("fit_order needs three usable records") {
  std::vector<ConvergenceRecord> records;
  records.push_back(rec(0.25, 1e-3));
  records.push_back(rec(0.125, 2.5e-4));
  CHECK_THROWS_AS(fit_order(records), std::runtime_error);

  // All on the floor: everything within 100x of the smallest error goes, so
  // the fit signals rather than reporting slope 0.
  std::vector<ConvergenceRecord> flat;
  for (int p = 2; p <= 6; ++p) flat.push_back(rec(std::pow(2.0, -p), 1e-14 * (1.0 + 0.01 * p)));
  CHECK_THROWS_AS(fit_order(flat), std::runtime_error);
}

TEST_CASE("fit_order caps the large-error end") {
  std::vector<ConvergenceRecord> records;
  records.push_back(rec(1.0, 0.9));  // above the 1e-1 cap, dropped
  for (int p = 1; p <= 5; ++p) {
    const double h = std::pow(2.0, -p);
    records.push_back(rec(h, 0.09 * h));
  }
  CHECK(fit_order(records) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("convergence runner is deterministic") {
  RunConfig cfg;
  cfg.problem = "ex1_ho";
  cfg.method = "rk2";
  cfg.J = 24;
  cfg.K = 20;
  cfg.step_counts = {4, 8, 16, 32};
  const std::string a = convergence_csv_string(run_convergence(cfg));
  const std::string b = convergence_csv_string(run_convergence(cfg));
  CHECK(a == b);
  CHECK(a.substr(0, a.find('\n')) == "problem,method,J,K,h,error,norm");
}

TEST_CASE("full-precision formatting round-trips") {
  for (double x : {1.0 / 3.0, 2.2204e-16, 0.1, 123456.789, 5.3e-12}) {
    const std::string s = format_full(x);
    CHECK(std::stod(s) == x);
  }
}

TEST_CASE("table1 smoke run") {
  const Table1Result t = run_table1({15}, 0.7, 0.6, 2.2204e-16);
  REQUIRE(t.rows.size() == 28);
  for (const Table1Row& row : t.rows) {
    REQUIRE(row.errors.size() == 1);
    CHECK(row.errors[0] <= 1e-10);
  }
}
