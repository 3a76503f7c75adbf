#ifndef PHILT_OPERATOR_PHI_HPP
#define PHILT_OPERATOR_PHI_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "philt/contour.hpp"
#include "philt/linalg.hpp"
#include "philt/transforms.hpp"

namespace philt {

/// Settings for operator assembly. Operators default to the basic parameter
/// selection: the resolvent solves are performed by auxiliary routines whose
/// evaluation errors are not known, which is the regime the basic selection is
/// designed for. The rule depends only on the sector and the abscissa, never
/// on h.
struct OperatorEvalConfig {
  int K = 35;
  double alpha = 0.7;
  double d = 0.6;
  double eps = 2.2204e-16;
  bool eps_selection = false;
  SectorBound sector{};

  ContourParams contour_params(int abscissa) const;
};

/// Solves (zI - hA) x = rhs by the complex Thomas recurrence when A is
/// tridiagonal (falling back to dense LU on pivot breakdown) and by complex LU
/// with partial pivoting otherwise.
std::vector<cplx> shifted_solve(const RealMatrix& A, double h, cplx z,
                                const std::vector<cplx>& rhs);

/// Column-matrix variant: solves (zI - hA) X = Rhs, columns independently.
/// Rhs is a vector of columns.
std::vector<std::vector<cplx>> shifted_solve(const RealMatrix& A, double h, cplx z,
                                             const std::vector<std::vector<cplx>>& rhs);

/// Assembled operator  Re( sum_l w*_l e^{m z_l} R(z_l) (z_l I - hA)^{-1} )
/// over the given rule (halved or full), with compensated accumulation in
/// fixed node order. Throws std::runtime_error if the discarded imaginary
/// part exceeds 1e-8 of the result in max norm.
RealMatrix assemble_phi(const RationalTransform& transform, const RealMatrix& A,
                        double h, const QuadratureRule& rule);

/// Several transforms sharing one abscissa assembled in a single sweep: each
/// node is factorized and solved once, and every transform only contributes a
/// scalar coefficient.
std::vector<RealMatrix> assemble_phi_set(const std::vector<RationalTransform>& transforms,
                                         const RealMatrix& A, double h,
                                         const QuadratureRule& rule);

/// Precomputed phi operators keyed by their spec, plus the rule they share.
struct OperatorSet {
  std::map<PhiSpec, RealMatrix> ops;
  double h = 0.0;
  int K = 0;
  ContourParams rule_params;
  int requested = 0;  // specs asked for
  int assembled = 0;  // distinct assemblies performed

  const RealMatrix& at(const PhiSpec& spec) const;
  bool contains(const PhiSpec& spec) const;
};

/// phi_j(k, hA) for j = 0..k, all sharing the resolvent solves of one rule
/// (the nodes depend on the abscissa t0 = k only).
OperatorSet precompute_multistep_ops(int k, const RealMatrix& A, double h,
                                     const OperatorEvalConfig& cfg);

struct ExpRKTableau;  // integrators.hpp

/// phi_j(beta hA) for every (j, beta) pair a tableau references, including the
/// stage propagators phi_0(c_i hA) and phi_0(hA). Duplicate pairs are
/// assembled once; solves are shared across j within each beta.
OperatorSet precompute_rk_ops(const ExpRKTableau& tableau, const RealMatrix& A,
                              double h, const OperatorEvalConfig& cfg);

/// Validation reference for symmetric A: diagonalizes (closed-form discrete
/// sine eigenpairs when A matches the J^2 tridiag(1,-2,1) Laplacian, cyclic
/// Jacobi otherwise), applies the scalar oracle to the eigenvalues and
/// reassembles. Rejects non-symmetric input.
RealMatrix oracle_operator(const PhiSpec& spec, const RealMatrix& A, double h);

/// Matrix file format: first line "n", then lines "i j value" with 1-based
/// indices; unlisted entries are zero. Bandwidth is detected automatically.
RealMatrix read_matrix_file(std::istream& in);
RealMatrix read_matrix_file(const std::string& path);

}  // namespace philt

#endif  // PHILT_OPERATOR_PHI_HPP
