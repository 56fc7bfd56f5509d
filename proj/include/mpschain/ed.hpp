#pragma once

#include "mpschain/parent.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mpschain::ed {

/// Default site caps; MPSCHAIN_MAX_SITES overrides both.
constexpr int kDenseMaxSites = 8;
constexpr int kIterativeMaxSites = 12;

int dense_max_sites();
int iterative_max_sites();

/// Periodic chain H = sum_l h_{l, l+1, ..., l+k-1} on the full d^N space.
/// Scalar is double for real local terms or std::complex<double>.
template <typename Scalar>
class ChainOperator {
 public:
  enum class Mode { dense, matrix_free };

  ChainOperator(LocalHamiltonian local, int n_sites);

  int n_sites() const { return n_sites_; }
  std::size_t dimension() const { return dim_; }
  const LocalHamiltonian& local() const { return local_; }

  /// Matrix-free application, one window at a time.
  Vec<Scalar> apply(const Vec<Scalar>& v) const;
  /// Dense matrix assembled as sum_l T^l (h (x) 1) T^-l with T the cyclic
  /// site shift; independent of the matrix-free path.
  Mat<Scalar> dense() const;

 private:
  LocalHamiltonian local_;
  Mat<Scalar> h_;
  int n_sites_;
  std::size_t dim_;
};

using RealChain = ChainOperator<double>;
using ComplexChain = ChainOperator<cplx>;

struct LanczosOptions {
  int max_iter = 300;
  double tol = 1e-11;
  unsigned seed = 12345;
};

/// Smallest eigenvalue: dense solve up to 6 sites, Lanczos with full
/// reorthogonalization above.
template <typename Scalar>
double ground_energy(const ChainOperator<Scalar>& op, const LanczosOptions& opts = {});

template <typename Scalar>
double lanczos_ground_energy(const ChainOperator<Scalar>& op, const LanczosOptions& opts = {});

/// Sorted full spectrum (dense).
template <typename Scalar>
std::vector<double> spectrum(const ChainOperator<Scalar>& op);

struct KernelCount {
  int lower = 0;   ///< eigenvalues <= tol
  int upper = 0;   ///< plus those inside the (tol, 100 tol) gap window
  bool exact() const { return lower == upper; }
  double tol = 0.0;
  double first_excited = 0.0;
};

template <typename Scalar>
KernelCount kernel_dimension(const ChainOperator<Scalar>& op, double tol = 1e-8);

KernelCount kernel_count_from_spectrum(const std::vector<double>& sorted, double tol);

/// ||H state|| / ||state||.
template <typename Scalar>
double overlap_with_kernel(const ChainOperator<Scalar>& op, const Vec<Scalar>& state);

struct EdReport {
  int n_sites = 0;
  double ground_energy = 0.0;
  KernelCount kernel;
  std::vector<double> spectrum_head;
};

template <typename Scalar>
EdReport report(const ChainOperator<Scalar>& op, double kernel_tol = 1e-8);

}  // namespace mpschain::ed
