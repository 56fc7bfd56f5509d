#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace mpschain {

using cplx = std::complex<double>;

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixC = Mat<cplx>;
using VectorC = Vec<cplx>;
using MatrixR = Mat<double>;
using VectorR = Vec<double>;

template <typename T>
struct is_complex : std::false_type {};
template <typename T>
struct is_complex<std::complex<T>> : std::true_type {};

/// Raised when an iterative eigensolver gives up.
class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace linalg {

constexpr double kDefaultNullTol = 1e-10;

/// Kronecker product; block (i, j) of the result is a(i, j) * b.
template <typename DA, typename DB>
auto kron(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  using Scalar = typename Eigen::ScalarBinaryOpTraits<typename DA::Scalar,
                                                      typename DB::Scalar>::ReturnType;
  Mat<Scalar> out(a.rows() * b.rows(), a.cols() * b.cols());
  const auto bs = b.template cast<Scalar>().eval();
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = Scalar(a(i, j)) * bs;
  return out;
}

/// Normalizes v to unit norm and rotates its phase so that the first
/// component above `rel_cut * max|v_i|` is real and positive.
template <typename Derived>
void canonicalize_phase(Eigen::MatrixBase<Derived>& v, double rel_cut = 1e-9) {
  using Scalar = typename Derived::Scalar;
  const double nrm = v.norm();
  if (nrm == 0.0) return;
  v /= nrm;
  const double big = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a > rel_cut * big) {
      if constexpr (is_complex<Scalar>::value) {
        v *= std::conj(v(i)) / a;
        v(i) = Scalar(a, 0.0);
      } else {
        if (v(i) < 0) v = -v;
      }
      return;
    }
  }
}

/// Orthonormal basis (as columns) of the right null space of m. A singular
/// direction counts as null when its singular value is at most
/// tol * sigma_max. Returns a matrix with zero columns for full column rank.
template <typename Derived>
Mat<typename Derived::Scalar> null_space(const Eigen::MatrixBase<Derived>& m,
                                         double tol = kDefaultNullTol) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() == 0 || m.cols() == 0) throw std::invalid_argument("null_space: zero-size matrix");
  if (tol < 0) throw std::invalid_argument("null_space: negative tolerance");
  Mat<Scalar> a = m;
  Eigen::JacobiSVD<Mat<Scalar>> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  Eigen::Index rank = 0;
  if (smax > 0.0)
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > tol * smax) ++rank;
  return svd.matrixV().rightCols(a.cols() - rank);
}

/// Numerical rank with the same relative cut as null_space.
template <typename Derived>
Eigen::Index rank(const Eigen::MatrixBase<Derived>& m, double tol = kDefaultNullTol) {
  return m.cols() - null_space(m, tol).cols();
}

struct EigenPair {
  cplx value;
  VectorC vector;
};

/// All eigenpairs of a square matrix, sorted by descending |lambda| and then
/// by descending real part. Vectors follow canonicalize_phase.
template <typename Derived>
std::vector<EigenPair> eig_all(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("eig_all: matrix is not square");
  if (m.rows() == 0) throw std::invalid_argument("eig_all: zero-size matrix");
  MatrixC a = m.template cast<cplx>();
  Eigen::ComplexEigenSolver<MatrixC> solver;
  solver.compute(a, true);
  if (solver.info() != Eigen::Success) {
    throw NonConvergence("eig_all: Schur iteration failed for a " + std::to_string(a.rows()) +
                         "x" + std::to_string(a.rows()) + " matrix (max " +
                         std::to_string(solver.getMaxIterations()) + " iterations per eigenvalue)");
  }
  std::vector<EigenPair> out;
  out.reserve(static_cast<std::size_t>(a.rows()));
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    VectorC v = solver.eigenvectors().col(i);
    canonicalize_phase(v);
    out.push_back({solver.eigenvalues()(i), std::move(v)});
  }
  std::stable_sort(out.begin(), out.end(), [](const EigenPair& x, const EigenPair& y) {
    const double ax = std::abs(x.value), ay = std::abs(y.value);
    if (std::abs(ax - ay) > 1e-12 * std::max({1.0, ax, ay})) return ax > ay;
    return x.value.real() > y.value.real();
  });
  return out;
}

struct DominantSet {
  std::vector<EigenPair> pairs;
  double max_abs = 0.0;
  bool zero_spectrum = false;  ///< set when every eigenvalue vanishes
};

/// Every eigenpair with |lambda| >= (1 - rel_tol) * max|lambda|. Families of
/// equal magnitude are returned whole.
template <typename Derived>
DominantSet dominant_eigs(const Eigen::MatrixBase<Derived>& m, double rel_tol = 1e-9) {
  DominantSet out;
  auto all = eig_all(m);
  for (const auto& p : all) out.max_abs = std::max(out.max_abs, std::abs(p.value));
  if (out.max_abs == 0.0) {
    out.zero_spectrum = true;
    return out;
  }
  for (auto& p : all)
    if (std::abs(p.value) >= (1.0 - rel_tol) * out.max_abs) out.pairs.push_back(std::move(p));
  return out;
}

/// m^n by repeated squaring (n >= 0).
template <typename Derived>
Mat<typename Derived::Scalar> matrix_power(const Eigen::MatrixBase<Derived>& m, long long n) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix_power: matrix is not square");
  if (n < 0) throw std::invalid_argument("matrix_power: negative exponent");
  Mat<Scalar> result = Mat<Scalar>::Identity(m.rows(), m.cols());
  Mat<Scalar> base = m;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

template <typename Derived>
typename Derived::Scalar trace_power_squaring(const Eigen::MatrixBase<Derived>& m, long long n) {
  return matrix_power(m, n).trace();
}

/// tr(m^n) from the eigenvalues. Only meaningful for diagonalizable m.
template <typename Derived>
cplx trace_power_eigen(const Eigen::MatrixBase<Derived>& m, long long n) {
  MatrixC a = m.template cast<cplx>();
  Eigen::ComplexEigenSolver<MatrixC> solver(a, false);
  if (solver.info() != Eigen::Success) throw NonConvergence("trace_power_eigen: Schur iteration failed");
  cplx acc = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) acc += std::pow(solver.eigenvalues()(i), static_cast<double>(n));
  return acc;
}

/// Condition number of the eigenvector matrix; infinite when defective.
template <typename Derived>
double eigenvector_condition(const Eigen::MatrixBase<Derived>& m) {
  MatrixC a = m.template cast<cplx>();
  Eigen::ComplexEigenSolver<MatrixC> solver(a, true);
  if (solver.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
  Eigen::JacobiSVD<MatrixC> svd(solver.eigenvectors());
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  return smin > 0.0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
}

/// tr(m^n), n >= 1. Uses the spectrum when the eigenbasis is well
/// conditioned and repeated squaring otherwise.
template <typename Derived>
typename Derived::Scalar trace_power(const Eigen::MatrixBase<Derived>& m, long long n) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols()) throw std::invalid_argument("trace_power: matrix is not square");
  if (n < 1) throw std::invalid_argument("trace_power: exponent must be >= 1");
  if (eigenvector_condition(m) < 1e6) {
    const cplx t = trace_power_eigen(m, n);
    if constexpr (is_complex<Scalar>::value) return Scalar(t);
    else return t.real();
  }
  return trace_power_squaring(m, n);
}

}  // namespace linalg
}  // namespace mpschain
