#pragma once

#include "mpschain/linalg.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mpschain {

/// Norm of the state vanishes (or is numerically indistinguishable from 0).
class DegenerateNorm : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A quantity that must be real came out with a significant imaginary part.
class Inconsistency : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested Hilbert space exceeds the configured enumeration cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Largest number of sites for explicit state enumeration and exact
/// diagonalization. Honors the MPSCHAIN_MAX_SITES environment variable.
int max_sites(int default_cap);

/// Spin-1 single-site operators in the basis (|1>, |0>, |-1>).
namespace spin {
MatrixC identity();
MatrixC sz();
MatrixC sx();
MatrixC sy();
MatrixC splus();
MatrixC sminus();
}  // namespace spin

struct SpinObservable {
  MatrixC matrix;
  std::string name;
};

/// Named spin-1 observables: id, sz, sx, sy, sz2, sx2, sy2.
SpinObservable observable(const std::string& name);

/// Translation-invariant periodic MPS: amplitude of |i_1 ... i_N> is
/// tr(A_{i_1} ... A_{i_N}). Matrices are stored in label order, which is
/// also the order of the one-site basis used by observables.
class MpsFamily {
 public:
  MpsFamily(std::vector<std::string> labels, std::vector<MatrixC> matrices,
            std::map<std::string, double> params = {});

  int d() const { return static_cast<int>(matrices_.size()); }
  int bond_dim() const { return static_cast<int>(matrices_.front().rows()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<MatrixC>& matrices() const { return matrices_; }
  const MatrixC& operator[](std::size_t i) const { return matrices_.at(i); }
  const MatrixC& at(const std::string& label) const;
  int index_of(const std::string& label) const;
  const std::map<std::string, double>& params() const { return params_; }

  /// The family {s * X A_i X^-1}; it generates the same ray.
  MpsFamily gauge(const MatrixC& x, cplx s = 1.0) const;

 private:
  std::vector<std::string> labels_;
  std::vector<MatrixC> matrices_;
  std::map<std::string, double> params_;
};

struct TransferOperator {
  enum class Kind { plain, dressed, mixed };
  Kind kind = Kind::plain;
  MatrixC matrix;
};

TransferOperator transfer(const MpsFamily& mps);
TransferOperator dressed_transfer(const MpsFamily& mps, const SpinObservable& obs);
/// sum_ij conj(A_i) (x) B_j <i|O|j>, with A from bra and B from ket. Without an
/// observable this is sum_i conj(A_i) (x) B_i.
TransferOperator mixed_transfer(const MpsFamily& bra, const MpsFamily& ket,
                                const std::optional<SpinObservable>& obs = std::nullopt);

/// <psi|psi> = tr(E^N) on a ring of n_sites.
double ring_norm_sq(const MpsFamily& mps, int n_sites);
double ring_one_point(const MpsFamily& mps, const SpinObservable& obs, int n_sites);
/// Observables on sites 1 and 1 + r of an n_sites ring.
double ring_two_point(const MpsFamily& mps, const SpinObservable& obs1, const SpinObservable& obs2,
                      int r, int n_sites);

/// Thermodynamic limit taken along even N.
struct Limit {
  double value = 0.0;
  bool converged = true;
  std::string note;
};

/// lim_{N even} tr(numerator * E^(N - extra_power)) / tr(E^N), from the
/// spectral projectors of every dominant eigenvalue. Dominant eigenvalues off
/// the real axis make the limit oscillate; that is reported, not averaged.
Limit thermo_trace_ratio(const MatrixC& numerator, const MatrixC& transfer, int extra_power,
                         double rel_tol = 1e-9);

Limit thermo_one_point(const MpsFamily& mps, const SpinObservable& obs);
Limit thermo_two_point(const MpsFamily& mps, const SpinObservable& obs1, const SpinObservable& obs2,
                       int r);

/// Full state vector. Basis index ordering: site 1 is the most significant
/// digit, digits follow the family's label order.
struct Amplitudes {
  int n_sites = 0;
  int d = 0;
  VectorC values;

  std::vector<int> digits(std::size_t index) const;
  std::string label(std::size_t index, const std::vector<std::string>& labels) const;
};

constexpr std::size_t kDefaultAmplitudeCap = 59049;  // 3^10

Amplitudes amplitudes(const MpsFamily& mps, int n_sites, std::size_t cap = kDefaultAmplitudeCap);

/// tr(A_{w_1} ... A_{w_k}) for a word given as label indices.
cplx word_trace(const MpsFamily& mps, const std::vector<int>& word);

}  // namespace mpschain
