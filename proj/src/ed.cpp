#include "mpschain/ed.hpp"

#include <random>

namespace mpschain::ed {

int dense_max_sites() { return max_sites(kDenseMaxSites); }
int iterative_max_sites() { return max_sites(kIterativeMaxSites); }

namespace {

std::size_t ipow(std::size_t base, int e) {
  std::size_t out = 1;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

template <typename Scalar>
Mat<Scalar> local_matrix(const LocalHamiltonian& h) {
  if constexpr (is_complex<Scalar>::value) {
    return h.matrix;
  } else {
    if (h.matrix.imag().cwiseAbs().maxCoeff() > 1e-14)
      throw std::invalid_argument("ChainOperator<double>: local term has an imaginary part");
    return h.matrix.real();
  }
}

template <typename Scalar>
void require_dense(const ChainOperator<Scalar>& op) {
  if (op.n_sites() > dense_max_sites())
    throw CapExceeded("dense diagonalization limited to " + std::to_string(dense_max_sites()) + " sites");
}

template <typename Scalar>
std::vector<double> dense_eigenvalues(const ChainOperator<Scalar>& op) {
  require_dense(op);
  Eigen::SelfAdjointEigenSolver<Mat<Scalar>> es(op.dense(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NonConvergence("dense eigensolver failed");
  std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

template <typename Scalar>
ChainOperator<Scalar>::ChainOperator(LocalHamiltonian local, int n_sites)
    : local_(std::move(local)), n_sites_(n_sites) {
  if (n_sites_ < local_.k) throw std::invalid_argument("ChainOperator: fewer sites than the interaction range");
  if (n_sites_ > iterative_max_sites())
    throw CapExceeded("ChainOperator: " + std::to_string(n_sites_) + " sites exceeds cap " +
                      std::to_string(iterative_max_sites()));
  h_ = local_matrix<Scalar>(local_);
  dim_ = ipow(static_cast<std::size_t>(local_.d), n_sites_);
}

template <typename Scalar>
Vec<Scalar> ChainOperator<Scalar>::apply(const Vec<Scalar>& v) const {
  const VectorC out = parent::chain_apply(local_, n_sites_, v.template cast<cplx>());
  if constexpr (is_complex<Scalar>::value) return out;
  else return out.real();
}

template <typename Scalar>
Mat<Scalar> ChainOperator<Scalar>::dense() const {
  const auto d = static_cast<std::size_t>(local_.d);
  const auto n = static_cast<Eigen::Index>(dim_);
  const Mat<Scalar> first = linalg::kron(h_, Mat<Scalar>::Identity(
      static_cast<Eigen::Index>(ipow(d, n_sites_ - local_.k)), static_cast<Eigen::Index>(ipow(d, n_sites_ - local_.k))));
  // perm[i] = index after moving every site one step to the right (cyclic).
  std::vector<Eigen::Index> shift(dim_);
  const std::size_t top = ipow(d, n_sites_ - 1);
  for (std::size_t i = 0; i < dim_; ++i) shift[i] = static_cast<Eigen::Index>((i % d) * top + i / d);

  Mat<Scalar> total = Mat<Scalar>::Zero(n, n);
  Mat<Scalar> term = first;
  for (int l = 0; l < n_sites_; ++l) {
    total += term;
    Mat<Scalar> next(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) next(shift[static_cast<std::size_t>(i)], shift[static_cast<std::size_t>(j)]) = term(i, j);
    term = std::move(next);
  }
  return total;
}

template <typename Scalar>
double lanczos_ground_energy(const ChainOperator<Scalar>& op, const LanczosOptions& opts) {
  const auto n = static_cast<Eigen::Index>(op.dimension());
  std::mt19937 rng(opts.seed);
  std::normal_distribution<double> gauss;
  Vec<Scalar> v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Scalar(gauss(rng));
  v.normalize();

  const int max_iter = std::min<int>(opts.max_iter, static_cast<int>(n));
  std::vector<Vec<Scalar>> basis;
  std::vector<double> alpha, beta;
  double last = std::numeric_limits<double>::infinity();
  for (int it = 0; it < max_iter; ++it) {
    basis.push_back(v);
    Vec<Scalar> w = op.apply(v);
    alpha.push_back(std::real(v.dot(w)));
    // Full reorthogonalization, two passes.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) w -= q * q.dot(w);
    const double b = w.norm();

    const auto m = static_cast<Eigen::Index>(alpha.size());
    MatrixR t = MatrixR::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      t(i, i) = alpha[static_cast<std::size_t>(i)];
      if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
    }
    Eigen::SelfAdjointEigenSolver<MatrixR> es(t);
    const double theta = es.eigenvalues()(0);
    const double resid = b * std::abs(es.eigenvectors()(m - 1, 0));
    if (resid < opts.tol * std::max(1.0, std::abs(theta)) || b < 1e-14 ||
        static_cast<Eigen::Index>(basis.size()) == n)
      return theta;
    last = theta;
    beta.push_back(b);
    v = w / b;
  }
  throw NonConvergence("Lanczos did not converge in " + std::to_string(max_iter) +
                       " iterations (last Ritz value " + std::to_string(last) + ")");
}

template <typename Scalar>
double ground_energy(const ChainOperator<Scalar>& op, const LanczosOptions& opts) {
  if (op.n_sites() <= 6) return dense_eigenvalues(op).front();
  return lanczos_ground_energy(op, opts);
}

template <typename Scalar>
std::vector<double> spectrum(const ChainOperator<Scalar>& op) {
  return dense_eigenvalues(op);
}

KernelCount kernel_count_from_spectrum(const std::vector<double>& sorted, double tol) {
  KernelCount out;
  out.tol = tol;
  for (double e : sorted) {
    if (e <= tol) ++out.lower;
    if (e < 100.0 * tol) ++out.upper;
  }
  out.first_excited = static_cast<std::size_t>(out.lower) < sorted.size()
                          ? sorted[static_cast<std::size_t>(out.lower)]
                          : std::numeric_limits<double>::infinity();
  return out;
}

template <typename Scalar>
KernelCount kernel_dimension(const ChainOperator<Scalar>& op, double tol) {
  return kernel_count_from_spectrum(dense_eigenvalues(op), tol);
}

template <typename Scalar>
double overlap_with_kernel(const ChainOperator<Scalar>& op, const Vec<Scalar>& state) {
  const double nrm = state.norm();
  if (nrm == 0.0) throw std::invalid_argument("overlap_with_kernel: zero state");
  return op.apply(state).norm() / nrm;
}

template <typename Scalar>
EdReport report(const ChainOperator<Scalar>& op, double kernel_tol) {
  EdReport out;
  out.n_sites = op.n_sites();
  const auto spec = dense_eigenvalues(op);
  out.ground_energy = spec.front();
  out.kernel = kernel_count_from_spectrum(spec, kernel_tol);
  out.spectrum_head.assign(spec.begin(), spec.begin() + static_cast<long>(std::min<std::size_t>(20, spec.size())));
  return out;
}

#define MPSCHAIN_INSTANTIATE(S)                                                     \
  template class ChainOperator<S>;                                                  \
  template double ground_energy(const ChainOperator<S>&, const LanczosOptions&);    \
  template double lanczos_ground_energy(const ChainOperator<S>&, const LanczosOptions&); \
  template std::vector<double> spectrum(const ChainOperator<S>&);                   \
  template KernelCount kernel_dimension(const ChainOperator<S>&, double);           \
  template double overlap_with_kernel(const ChainOperator<S>&, const Vec<S>&);      \
  template EdReport report(const ChainOperator<S>&, double);

MPSCHAIN_INSTANTIATE(double)
MPSCHAIN_INSTANTIATE(cplx)

#undef MPSCHAIN_INSTANTIATE

}  // namespace mpschain::ed
