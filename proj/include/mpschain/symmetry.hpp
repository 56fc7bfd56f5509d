#pragma once

#include "mpschain/mps.hpp"

#include <string>
#include <vector>

namespace mpschain::symmetry {

/// max_i || sum_j T_ij A_j - [B, A_i] ||_F for a physical generator T (d x d)
/// and a bond generator B (D x D). Zero certifies invariance of the state
/// under the one-parameter group generated by T.
double check_generator_condition(const MpsFamily& mps, const MatrixC& phys_gen, const MatrixC& bond_gen);

struct GeneratorFit {
  MatrixC bond_gen;
  double residual = 0.0;  ///< check_generator_condition at the fitted generator
};

/// Least-squares bond generator for a given physical generator. A residual
/// bounded away from zero means no bond generator exists.
GeneratorFit fit_bond_generator(const MpsFamily& mps, const MatrixC& phys_gen);

struct IntertwinerResult {
  bool found = false;
  MatrixC matrix;           ///< X with X A_m X^-1 = scalar * A'_m, first nonzero entry scaled to 1
  cplx scalar = 1.0;
  double residual = 0.0;    ///< max_m ||X A_m X^-1 - scalar * A'_m||_F
  double condition = 0.0;   ///< 2-norm condition number of X
  int solution_dim = 0;     ///< dimension of the commutant solution space
  std::string diagnosis;
};

/// Solves X A_m = scalar * A'_m X for invertible X. The scalar is fixed from
/// ratios of word traces, and by default must be a root of unity.
IntertwinerResult find_intertwiner(const MpsFamily& mps, const std::vector<MatrixC>& target,
                                   double tol = 1e-10, bool require_root_of_unity = true);

/// A'_m = A_m^T (parity).
std::vector<MatrixC> parity_target(const MpsFamily& mps);
/// A'_m = A_{-m} (spin flip); labels must be integers m.
std::vector<MatrixC> spin_flip_target(const MpsFamily& mps);

struct BondRep {
  MatrixC sz, splus, sminus;
};

/// Spin-j generators (2j+1 dimensional) in descending-m order.
BondRep spin_rep(int two_j);

/// Max residual of [Sz, A_m] = m A_m and [S+-, A_m] = sqrt(j(j+1) - m(m+-1)) A_{m+-1}
/// over all m. Labels must be integers m, d = 2j + 1. Throws if the bond
/// triple does not close under su(2).
double spherical_tensor_residual(const MpsFamily& mps, const BondRep& rep);

}  // namespace mpschain::symmetry
