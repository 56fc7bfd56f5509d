#pragma once

#include "mpschain/mps.hpp"

#include <string>
#include <vector>

namespace mpschain {

/// Orthonormal basis of the k-site coefficient kernel: vectors c with
/// sum_w c_w A_{w_1} ... A_{w_k} = 0. Columns of `vectors` are indexed in
/// the same digit order as Amplitudes.
struct NullSpaceBasis {
  int k = 0;
  int d = 0;
  MatrixC vectors;
  double tol = linalg::kDefaultNullTol;
  std::string note;  ///< set when the kernel is empty

  int size() const { return static_cast<int>(vectors.cols()); }
  bool empty() const { return vectors.cols() == 0; }
};

/// k-site Hamiltonian h = sum_a J_a |e_a><e_a|.
struct LocalHamiltonian {
  int k = 0;
  int d = 0;
  MatrixC matrix;
  std::vector<double> couplings;
  MatrixC basis;  ///< columns e_a
};

namespace parent {

constexpr std::size_t kWordCap = 6561;  // d^k columns, 3^8

class InvalidModel : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// D^2 x d^k matrix whose column w is the row-major flattening of
/// A_{w_1} ... A_{w_k}.
MatrixC word_matrix(const MpsFamily& mps, int k, std::size_t cap = kWordCap);

/// Kernel of word_matrix, canonicalized: standard basis vectors are projected
/// onto the kernel in index order and Gram-Schmidt orthonormalized, each with
/// the linalg phase convention. An empty kernel is a result, not an error.
NullSpaceBasis ground_null_space(const MpsFamily& mps, int k, double tol = linalg::kDefaultNullTol);

/// Wraps externally chosen kernel vectors after checking that each one is
/// annihilated by the word matrix (to 10 tol) and that they are orthonormal.
NullSpaceBasis make_null_space_basis(const MpsFamily& mps, int k, const MatrixC& vectors,
                                     double tol = linalg::kDefaultNullTol);

/// Projector-sum Hamiltonian; couplings default to 1 and must be positive.
LocalHamiltonian local_hamiltonian(const NullSpaceBasis& basis, std::vector<double> couplings = {});

/// Same from raw orthonormal vectors, without a family to check against.
LocalHamiltonian local_hamiltonian(const MatrixC& vectors, int d, int k, std::vector<double> couplings = {});

/// Decomposes a Hermitian positive semidefinite k-site operator into
/// sum_a J_a |e_a><e_a| over its nonzero eigenvalues.
LocalHamiltonian local_hamiltonian_from_operator(const MatrixC& op, int d, int k, double tol = 1e-12);

/// k-site reduced density matrix <i|rho|j> of the n_sites ring, unit trace.
MatrixC reduced_density(const MpsFamily& mps, int k, int n_sites);

/// H |state> with H = sum_l h_{l..l+k-1} on a periodic ring, matrix free.
VectorC chain_apply(const LocalHamiltonian& h, int n_sites, const VectorC& state);

/// ||H psi|| / ||psi|| for the MPS amplitudes on n_sites.
double verify_zero_energy(const MpsFamily& mps, const LocalHamiltonian& h, int n_sites);

}  // namespace parent
}  // namespace mpschain
