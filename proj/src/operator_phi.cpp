#include "philt/operator_phi.hpp"
#include <algorithm>

#include <cmath>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>

#include "philt/integrators.hpp"
#include "philt/scalar_phi.hpp"

namespace philt {

namespace {

// Resolvent solver (z I - hA)^{-1}: Thomas recurrence on the tridiagonal fast
// path, dense LU otherwise or on pivot breakdown.
class ShiftedSolver {
 public:
  ShiftedSolver(const RealMatrix& A, double h, cplx z) : n_(A.size()) {
    if (A.is_tridiagonal()) {
      tri_ = std::make_unique<ComplexTridiagFactor>(A, h, z);
      if (tri_->ok()) return;
      tri_.reset();
    }
    dense_ = std::make_unique<ComplexDenseLU>(A, h, z);
  }

  void solve(cplx* rhs, int first_nonzero = 0) const {
    if (tri_)
      tri_->solve(rhs, first_nonzero);
    else
      dense_->solve(rhs);
  }

  int size() const { return n_; }

 private:
  int n_;
  std::unique_ptr<ComplexTridiagFactor> tri_;
  std::unique_ptr<ComplexDenseLU> dense_;
};

}  // namespace

ContourParams OperatorEvalConfig::contour_params(int abscissa) const {
  const double gamma_star = std::max(0.0, sector.gamma);
  return eps_selection
             ? select_params_eps(K, alpha, d, double(abscissa), 1.0, gamma_star, eps)
             : select_params_basic(K, alpha, d, double(abscissa), 1.0, gamma_star);
}

std::vector<cplx> shifted_solve(const RealMatrix& A, double h, cplx z,
                                const std::vector<cplx>& rhs) {
  if (static_cast<int>(rhs.size()) != A.size())
    throw std::invalid_argument("shifted_solve: dimension mismatch");
  ShiftedSolver solver(A, h, z);
  std::vector<cplx> x = rhs;
  solver.solve(x.data());
  return x;
}

std::vector<std::vector<cplx>> shifted_solve(const RealMatrix& A, double h, cplx z,
                                             const std::vector<std::vector<cplx>>& rhs) {
  ShiftedSolver solver(A, h, z);
  std::vector<std::vector<cplx>> x = rhs;
  for (auto& col : x) {
    if (static_cast<int>(col.size()) != A.size())
      throw std::invalid_argument("shifted_solve: dimension mismatch");
    solver.solve(col.data());
  }
  return x;
}

std::vector<RealMatrix> assemble_phi_set(const std::vector<RationalTransform>& transforms,
                                         const RealMatrix& A, double h,
                                         const QuadratureRule& rule) {
  if (transforms.empty()) return {};
  const int m = transforms.front().abscissa;
  for (const auto& t : transforms)
    if (t.abscissa != m)
      throw std::invalid_argument("assemble_phi_set: transforms must share the abscissa");
  if (rule.params.t0 != double(m))
    throw std::invalid_argument("assemble_phi_set: rule must be built with t0 = abscissa");

  const int n = A.size();
  const std::size_t nn = static_cast<std::size_t>(n) * n;
  const std::size_t count = transforms.size();

  // Kahan-compensated accumulators in fixed node order for
  // bit-reproducibility. For a halved rule the real part of the sum is the
  // result by construction; for a full rule conjugate symmetry cancels the
  // imaginary part, so it is carried along and alarmed on.
  const bool track_imag = !rule.halved;
  std::vector<std::vector<double>> acc_re(count, std::vector<double>(nn, 0.0));
  std::vector<std::vector<double>> comp_re(count, std::vector<double>(nn, 0.0));
  std::vector<std::vector<double>> acc_im, comp_im;
  if (track_imag) {
    acc_im.assign(count, std::vector<double>(nn, 0.0));
    comp_im.assign(count, std::vector<double>(nn, 0.0));
  }

  std::vector<cplx> column(n);
  for (std::size_t node = 0; node < rule.nodes.size(); ++node) {
    const cplx z = rule.nodes[node];
    const cplx base = rule.weights[node] * std::exp(double(m) * z);
    std::vector<cplx> coeff(count);
    for (std::size_t t = 0; t < count; ++t) coeff[t] = base * transforms[t].eval(z);

    ShiftedSolver solver(A, h, z);
    for (int col = 0; col < n; ++col) {
      std::fill(column.begin(), column.end(), cplx{0.0, 0.0});
      column[col] = 1.0;
      solver.solve(column.data(), col);
      for (std::size_t t = 0; t < count; ++t) {
        const cplx c = coeff[t];
        double* are = acc_re[t].data();
        double* cre = comp_re[t].data();
        for (int row = 0; row < n; ++row) {
          const std::size_t idx = static_cast<std::size_t>(row) * n + col;
          const cplx term = c * column[row];
          const double y = term.real() - cre[idx];
          const double s = are[idx] + y;
          cre[idx] = (s - are[idx]) - y;
          are[idx] = s;
        }
        if (track_imag) {
          double* aim = acc_im[t].data();
          double* cim = comp_im[t].data();
          for (int row = 0; row < n; ++row) {
            const std::size_t idx = static_cast<std::size_t>(row) * n + col;
            const double y = (c * column[row]).imag() - cim[idx];
            const double s = aim[idx] + y;
            cim[idx] = (s - aim[idx]) - y;
            aim[idx] = s;
          }
        }
      }
    }
  }

  std::vector<RealMatrix> out;
  out.reserve(count);
  for (std::size_t t = 0; t < count; ++t) {
    RealMatrix M(n);
    double re_max = 0.0, im_max = 0.0;
    for (std::size_t idx = 0; idx < nn; ++idx) {
      M.data()[idx] = acc_re[t][idx];
      re_max = std::max(re_max, std::abs(acc_re[t][idx]));
      if (track_imag) im_max = std::max(im_max, std::abs(acc_im[t][idx]));
    }
    if (track_imag && im_max > 1e-8 * std::max(re_max, 1e-300))
      throw std::runtime_error("assemble_phi_set: discarded imaginary part too large");
    out.push_back(std::move(M));
  }
  return out;
}

RealMatrix assemble_phi(const RationalTransform& transform, const RealMatrix& A,
                        double h, const QuadratureRule& rule) {
  return assemble_phi_set({transform}, A, h, rule)[0];
}

const RealMatrix& OperatorSet::at(const PhiSpec& spec) const {
  auto it = ops.find(spec);
  if (it == ops.end()) throw std::out_of_range("OperatorSet: spec not precomputed");
  return it->second;
}

bool OperatorSet::contains(const PhiSpec& spec) const { return ops.count(spec) > 0; }

OperatorSet precompute_multistep_ops(int k, const RealMatrix& A, double h,
                                     const OperatorEvalConfig& cfg) {
  if (k < 1) throw std::invalid_argument("precompute_multistep_ops: k must be >= 1");
  const ContourParams params = cfg.contour_params(k);
  const QuadratureRule rule = build_rule(params, true);

  std::vector<RationalTransform> transforms;
  transforms.reserve(k + 1);
  for (int j = 0; j <= k; ++j) transforms.push_back(multistep_transform(j, k));
  std::vector<RealMatrix> mats = assemble_phi_set(transforms, A, h, rule);

  OperatorSet set;
  set.h = h;
  set.K = cfg.K;
  set.rule_params = params;
  for (int j = 0; j <= k; ++j) {
    set.ops.emplace(PhiSpec::multistep(j, k), std::move(mats[j]));
    ++set.requested;
    ++set.assembled;
  }
  return set;
}

OperatorSet precompute_rk_ops(const ExpRKTableau& tableau, const RealMatrix& A,
                              double h, const OperatorEvalConfig& cfg) {
  tableau.validate();
  const ContourParams params = cfg.contour_params(1);
  const QuadratureRule rule = build_rule(params, true);

  OperatorSet set;
  set.h = h;
  set.K = cfg.K;
  set.rule_params = params;

  // Gather (j, beta) requests; duplicates collapse via set semantics.
  std::set<PhiSpec> wanted;
  for (const PhiSpec& spec : tableau.required_specs()) {
    ++set.requested;
    wanted.insert(spec);
  }
  set.assembled = static_cast<int>(wanted.size());

  // Group by beta: within one scaling the resolvent solves are shared.
  std::map<double, std::vector<PhiSpec>> by_beta;
  for (const PhiSpec& spec : wanted) by_beta[spec.beta].push_back(spec);
  for (const auto& [beta, specs] : by_beta) {
    std::vector<RationalTransform> transforms;
    transforms.reserve(specs.size());
    for (const PhiSpec& spec : specs) transforms.push_back(spec.transform());
    std::vector<RealMatrix> mats = assemble_phi_set(transforms, A, beta * h, rule);
    for (std::size_t i = 0; i < specs.size(); ++i)
      set.ops.emplace(specs[i], std::move(mats[i]));
  }
  return set;
}

RealMatrix oracle_operator(const PhiSpec& spec, const RealMatrix& A, double h) {
  const int n = A.size();
  if (!A.is_symmetric()) throw std::invalid_argument("oracle_operator: A must be symmetric");
  if (n > 512) throw std::invalid_argument("oracle_operator: n must be <= 512");

  // Closed-form discrete sine eigenpairs when A is the J^2 tridiag(1,-2,1)
  // Laplacian; cyclic Jacobi otherwise.
  const int J = n + 1;
  const double J2 = double(J) * J;
  bool is_laplacian = true;
  for (int i = 0; i < n && is_laplacian; ++i)
    for (int j = 0; j < n; ++j) {
      const double expected = i == j ? -2.0 * J2 : (std::abs(i - j) == 1 ? J2 : 0.0);
      if (std::abs(A(i, j) - expected) > 1e-9 * J2) {
        is_laplacian = false;
        break;
      }
    }

  std::vector<double> values(n);
  RealMatrix V(n);
  if (is_laplacian) {
    const double pi = 3.14159265358979323846;
    const double scale = std::sqrt(2.0 / J);
    for (int mIdx = 1; mIdx <= n; ++mIdx) {
      const double s = std::sin(mIdx * pi / (2.0 * J));
      values[mIdx - 1] = -4.0 * J2 * s * s;
      for (int i = 1; i <= n; ++i) V(i - 1, mIdx - 1) = scale * std::sin(i * mIdx * pi / J);
    }
  } else {
    SymmetricEigen eig = jacobi_eigen(A);
    values = std::move(eig.values);
    V = std::move(eig.vectors);
  }

  std::vector<cplx> phi_values(n);
  const double beta = spec.beta;
  for (int i = 0; i < n; ++i) {
    const cplx arg{beta * h * values[i], 0.0};
    switch (spec.kind) {
      case PhiSpec::Kind::Multistep:
        phi_values[i] = oracle_phi_multistep(spec.j, spec.k, arg);
        break;
      case PhiSpec::Kind::Rk:
        phi_values[i] = oracle_phi(spec.j, arg);
        break;
      case PhiSpec::Kind::Generic: {
        cplx sum{0.0, 0.0};
        for (std::size_t p = 0; p < spec.poly.size(); ++p)
          if (spec.poly[p] != 0.0)
            sum += spec.poly[p] * oracle_g(static_cast<int>(p) + 1, spec.m, arg);
        phi_values[i] = sum;
        break;
      }
    }
  }

  RealMatrix result(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int l = 0; l < n; ++l) s += V(i, l) * phi_values[l].real() * V(j, l);
      result(i, j) = s;
    }
  return result;
}

RealMatrix read_matrix_file(std::istream& in) {
  int n = 0;
  if (!(in >> n) || n < 1) throw std::runtime_error("matrix file: bad dimension line");
  RealMatrix A(n);
  int i = 0, j = 0;
  double value = 0.0;
  while (in >> i >> j >> value) {
    if (i < 1 || i > n || j < 1 || j > n)
      throw std::runtime_error("matrix file: index out of range");
    A(i - 1, j - 1) = value;
  }
  if (!in.eof() && in.fail()) {
    in.clear();
    std::string tail;
    if (in >> tail) throw std::runtime_error("matrix file: malformed entry near '" + tail + "'");
  }
  A.detect_band();
  return A;
}

RealMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("matrix file: cannot open " + path);
  return read_matrix_file(in);
}

}  // namespace philt
