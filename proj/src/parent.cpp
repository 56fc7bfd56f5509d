#include "mpschain/parent.hpp"

namespace mpschain::parent {

namespace {

std::size_t ipow(std::size_t base, int e) {
  std::size_t out = 1;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

MatrixC word_product(const MpsFamily& mps, std::size_t index, int k) {
  std::vector<int> word(static_cast<std::size_t>(k));
  for (int s = k - 1; s >= 0; --s) {
    word[static_cast<std::size_t>(s)] = static_cast<int>(index % static_cast<std::size_t>(mps.d()));
    index /= static_cast<std::size_t>(mps.d());
  }
  MatrixC p = MatrixC::Identity(mps.bond_dim(), mps.bond_dim());
  for (int i : word) p = p * mps[static_cast<std::size_t>(i)];
  return p;
}

MatrixC projector_sum(const MatrixC& vectors, const std::vector<double>& couplings) {
  MatrixC h = MatrixC::Zero(vectors.rows(), vectors.rows());
  for (Eigen::Index a = 0; a < vectors.cols(); ++a)
    h += couplings[static_cast<std::size_t>(a)] * vectors.col(a) * vectors.col(a).adjoint();
  return h;
}

std::vector<double> checked_couplings(std::vector<double> couplings, Eigen::Index n) {
  if (couplings.empty()) couplings.assign(static_cast<std::size_t>(n), 1.0);
  if (static_cast<Eigen::Index>(couplings.size()) != n)
    throw std::invalid_argument("need one coupling per kernel vector");
  for (double j : couplings)
    if (!(j > 0.0)) throw std::invalid_argument("couplings must be positive");
  return couplings;
}

}  // namespace

MatrixC word_matrix(const MpsFamily& mps, int k, std::size_t cap) {
  if (k < 1) throw std::invalid_argument("word_matrix: k must be >= 1");
  const std::size_t cols = ipow(static_cast<std::size_t>(mps.d()), k);
  if (cols > cap) throw CapExceeded("word_matrix: d^k = " + std::to_string(cols) + " exceeds cap");
  const Eigen::Index D = mps.bond_dim();
  MatrixC m(D * D, static_cast<Eigen::Index>(cols));
  for (std::size_t w = 0; w < cols; ++w) {
    const MatrixC p = word_product(mps, w, k);
    for (Eigen::Index r = 0; r < D; ++r)
      for (Eigen::Index c = 0; c < D; ++c) m(r * D + c, static_cast<Eigen::Index>(w)) = p(r, c);
  }
  return m;
}

NullSpaceBasis ground_null_space(const MpsFamily& mps, int k, double tol) {
  const MatrixC words = word_matrix(mps, k);
  if (words.cwiseAbs().maxCoeff() == 0.0)
    throw InvalidModel("every " + std::to_string(k) + "-site matrix word vanishes; not a valid model");
  const MatrixC raw = linalg::null_space(words, tol);

  NullSpaceBasis out;
  out.k = k;
  out.d = mps.d();
  out.tol = tol;
  if (raw.cols() == 0) {
    out.vectors = MatrixC(words.cols(), 0);
    const std::string range = k == 2 ? "nearest-neighbor" : std::to_string(k) + "-site";
    out.note = "no " + range + " parent Hamiltonian: the word kernel is empty";
    return out;
  }
  // Kernel projector is basis independent; sweep standard vectors through it.
  const MatrixC proj = raw * raw.adjoint();
  MatrixC basis(words.cols(), raw.cols());
  Eigen::Index found = 0;
  for (Eigen::Index i = 0; i < words.cols() && found < raw.cols(); ++i) {
    VectorC v = proj.col(i);
    for (Eigen::Index j = 0; j < found; ++j) v -= basis.col(j) * basis.col(j).dot(v);
    for (Eigen::Index j = 0; j < found; ++j) v -= basis.col(j) * basis.col(j).dot(v);
    if (v.norm() < 1e-8) continue;
    linalg::canonicalize_phase(v);
    basis.col(found++) = v;
  }
  out.vectors = basis.leftCols(found);
  return out;
}

NullSpaceBasis make_null_space_basis(const MpsFamily& mps, int k, const MatrixC& vectors, double tol) {
  const MatrixC words = word_matrix(mps, k);
  if (vectors.rows() != words.cols()) throw std::invalid_argument("kernel vectors have wrong length");
  const double scale = std::max(1.0, words.norm());
  for (Eigen::Index a = 0; a < vectors.cols(); ++a)
    if ((words * vectors.col(a)).norm() > 10.0 * tol * scale)
      throw std::invalid_argument("vector " + std::to_string(a) + " is not in the word kernel");
  const MatrixC gram = vectors.adjoint() * vectors;
  if ((gram - MatrixC::Identity(gram.rows(), gram.cols())).norm() > 1e-10)
    throw std::invalid_argument("kernel vectors are not orthonormal");
  NullSpaceBasis out;
  out.k = k;
  out.d = mps.d();
  out.vectors = vectors;
  out.tol = tol;
  return out;
}

LocalHamiltonian local_hamiltonian(const NullSpaceBasis& basis, std::vector<double> couplings) {
  return local_hamiltonian(basis.vectors, basis.d, basis.k, std::move(couplings));
}

LocalHamiltonian local_hamiltonian(const MatrixC& vectors, int d, int k, std::vector<double> couplings) {
  if (static_cast<std::size_t>(vectors.rows()) != ipow(static_cast<std::size_t>(d), k))
    throw std::invalid_argument("local_hamiltonian: vectors must have length d^k");
  LocalHamiltonian h;
  h.k = k;
  h.d = d;
  h.couplings = checked_couplings(std::move(couplings), vectors.cols());
  h.basis = vectors;
  h.matrix = projector_sum(vectors, h.couplings);
  return h;
}

LocalHamiltonian local_hamiltonian_from_operator(const MatrixC& op, int d, int k, double tol) {
  if (op.rows() != op.cols() || static_cast<std::size_t>(op.rows()) != ipow(static_cast<std::size_t>(d), k))
    throw std::invalid_argument("operator must be d^k x d^k");
  if ((op - op.adjoint()).norm() > 1e-12 * std::max(1.0, op.norm()))
    throw std::invalid_argument("operator is not Hermitian");
  Eigen::SelfAdjointEigenSolver<MatrixC> es(op);
  const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  std::vector<double> couplings;
  std::vector<VectorC> vecs;
  for (Eigen::Index i = 0; i < op.rows(); ++i) {
    const double ev = es.eigenvalues()(i);
    if (ev < -tol * scale) throw std::invalid_argument("operator is not positive semidefinite");
    if (ev <= tol * scale) continue;
    VectorC v = es.eigenvectors().col(i);
    linalg::canonicalize_phase(v);
    couplings.push_back(ev);
    vecs.push_back(v);
  }
  LocalHamiltonian h;
  h.k = k;
  h.d = d;
  h.couplings = couplings;
  h.basis = MatrixC(op.rows(), static_cast<Eigen::Index>(vecs.size()));
  for (std::size_t a = 0; a < vecs.size(); ++a) h.basis.col(static_cast<Eigen::Index>(a)) = vecs[a];
  h.matrix = op;
  return h;
}

MatrixC reduced_density(const MpsFamily& mps, int k, int n_sites) {
  if (k < 1 || k >= n_sites) throw std::invalid_argument("reduced_density: need 1 <= k < N");
  const std::size_t dim = ipow(static_cast<std::size_t>(mps.d()), k);
  if (dim > kWordCap) throw CapExceeded("reduced_density: d^k exceeds cap");
  const MatrixC e = transfer(mps).matrix;
  const auto dom = linalg::dominant_eigs(e);
  if (dom.zero_spectrum) throw DegenerateNorm("transfer operator is nilpotent");
  // Scale each A by 1/sqrt(rho(E)); the normalized density is unchanged.
  const double s = dom.max_abs;
  const MatrixC rest = linalg::matrix_power(MatrixC(e / s), n_sites - k);
  const double sa = 1.0 / std::sqrt(s);
  std::vector<MatrixC> words(dim);
  for (std::size_t w = 0; w < dim; ++w) words[w] = std::pow(sa, k) * word_product(mps, w, k);

  MatrixC rho(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          (linalg::kron(words[j].conjugate(), words[i]) * rest).trace();
  const cplx tr = rho.trace();
  if (std::abs(tr) < 1e-12) throw DegenerateNorm("reduced_density: state norm vanishes");
  return rho / tr;
}

VectorC chain_apply(const LocalHamiltonian& h, int n_sites, const VectorC& state) {
  if (n_sites < h.k) throw std::invalid_argument("chain_apply: fewer sites than the interaction range");
  const std::size_t dim = ipow(static_cast<std::size_t>(h.d), n_sites);
  if (static_cast<std::size_t>(state.size()) != dim)
    throw std::invalid_argument("chain_apply: state has dimension " + std::to_string(state.size()) +
                                ", expected " + std::to_string(dim));
  const auto d = static_cast<std::size_t>(h.d);
  const std::size_t local = ipow(d, h.k);

  // Nonzeros of h per column.
  std::vector<std::vector<std::pair<std::size_t, cplx>>> cols(local);
  for (std::size_t c = 0; c < local; ++c)
    for (std::size_t r = 0; r < local; ++r) {
      const cplx v = h.matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      if (v != cplx(0.0)) cols[c].push_back({r, v});
    }

  std::vector<std::size_t> stride(static_cast<std::size_t>(n_sites));
  for (int s = 0; s < n_sites; ++s) stride[static_cast<std::size_t>(s)] = ipow(d, n_sites - 1 - s);

  VectorC out = VectorC::Zero(state.size());
  std::vector<std::size_t> window(static_cast<std::size_t>(h.k));
  for (int l = 0; l < n_sites; ++l) {
    for (int j = 0; j < h.k; ++j) window[static_cast<std::size_t>(j)] = stride[static_cast<std::size_t>((l + j) % n_sites)];
    for (std::size_t idx = 0; idx < dim; ++idx) {
      const cplx amp = state(static_cast<Eigen::Index>(idx));
      if (amp == cplx(0.0)) continue;
      std::size_t loc = 0, base = idx;
      for (std::size_t ws : window) {
        const std::size_t digit = (idx / ws) % d;
        loc = loc * d + digit;
        base -= digit * ws;
      }
      for (const auto& [row, v] : cols[loc]) {
        std::size_t target = base, rem = row;
        for (std::size_t j = window.size(); j-- > 0;) {
          target += (rem % d) * window[j];
          rem /= d;
        }
        out(static_cast<Eigen::Index>(target)) += v * amp;
      }
    }
  }
  return out;
}

double verify_zero_energy(const MpsFamily& mps, const LocalHamiltonian& h, int n_sites) {
  const Amplitudes psi = amplitudes(mps, n_sites);
  const double nrm = psi.values.norm();
  if (nrm < 1e-300) throw DegenerateNorm("verify_zero_energy: MPS vanishes at N = " + std::to_string(n_sites));
  return chain_apply(h, n_sites, psi.values).norm() / nrm;
}

}  // namespace mpschain::parent
