#include "mpschain/mps.hpp"

#include <cstdlib>
#include <functional>
#include <numeric>

namespace mpschain {

int max_sites(int default_cap) {
  if (const char* env = std::getenv("MPSCHAIN_MAX_SITES")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v < 64) return static_cast<int>(v);
  }
  return default_cap;
}

namespace spin {

MatrixC identity() { return MatrixC::Identity(3, 3); }

MatrixC sz() {
  MatrixC m = MatrixC::Zero(3, 3);
  m(0, 0) = 1.0;
  m(2, 2) = -1.0;
  return m;
}

MatrixC splus() {
  MatrixC m = MatrixC::Zero(3, 3);
  m(0, 1) = std::sqrt(2.0);
  m(1, 2) = std::sqrt(2.0);
  return m;
}

MatrixC sminus() { return splus().adjoint(); }

MatrixC sx() { return 0.5 * (splus() + sminus()); }

MatrixC sy() { return cplx(0.0, -0.5) * (splus() - sminus()); }

}  // namespace spin

SpinObservable observable(const std::string& name) {
  if (name == "id") return {spin::identity(), name};
  if (name == "sz") return {spin::sz(), name};
  if (name == "sx") return {spin::sx(), name};
  if (name == "sy") return {spin::sy(), name};
  if (name == "sz2") return {spin::sz() * spin::sz(), name};
  if (name == "sx2") return {spin::sx() * spin::sx(), name};
  if (name == "sy2") return {spin::sy() * spin::sy(), name};
  throw std::invalid_argument("unknown observable '" + name + "'");
}

MpsFamily::MpsFamily(std::vector<std::string> labels, std::vector<MatrixC> matrices,
                     std::map<std::string, double> params)
    : labels_(std::move(labels)), matrices_(std::move(matrices)), params_(std::move(params)) {
  if (matrices_.empty()) throw std::invalid_argument("MpsFamily: no matrices");
  if (labels_.size() != matrices_.size())
    throw std::invalid_argument("MpsFamily: label count does not match matrix count");
  const auto D = matrices_.front().rows();
  if (D < 1) throw std::invalid_argument("MpsFamily: empty matrices");
  for (const auto& m : matrices_)
    if (m.rows() != D || m.cols() != D)
      throw std::invalid_argument("MpsFamily: matrices must all be DxD with the same D");
  for (std::size_t i = 0; i < labels_.size(); ++i)
    for (std::size_t j = i + 1; j < labels_.size(); ++j)
      if (labels_[i] == labels_[j]) throw std::invalid_argument("MpsFamily: duplicate label " + labels_[i]);
}

int MpsFamily::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return static_cast<int>(i);
  throw std::out_of_range("MpsFamily: no label " + label);
}

const MatrixC& MpsFamily::at(const std::string& label) const {
  return matrices_[static_cast<std::size_t>(index_of(label))];
}

MpsFamily MpsFamily::gauge(const MatrixC& x, cplx s) const {
  if (x.rows() != bond_dim() || x.cols() != bond_dim())
    throw std::invalid_argument("gauge: transform has wrong size");
  const MatrixC xinv = x.inverse();
  std::vector<MatrixC> out;
  out.reserve(matrices_.size());
  for (const auto& a : matrices_) out.push_back(s * x * a * xinv);
  return MpsFamily(labels_, std::move(out), params_);
}

namespace {

MatrixC dressed_sum(const MpsFamily& bra, const MpsFamily& ket, const MatrixC& op) {
  const int d = bra.d();
  const Eigen::Index dim = bra.bond_dim() * ket.bond_dim();
  MatrixC out = MatrixC::Zero(dim, dim);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const cplx w = op(i, j);
      if (w == cplx(0.0)) continue;
      out += w * linalg::kron(bra[i].conjugate(), ket[j]);
    }
  return out;
}

void check_obs(const MpsFamily& mps, const SpinObservable& obs) {
  if (obs.matrix.rows() != mps.d() || obs.matrix.cols() != mps.d())
    throw std::invalid_argument("observable '" + obs.name + "' has dimension " +
                                std::to_string(obs.matrix.rows()) + ", family has d = " +
                                std::to_string(mps.d()));
}

void check_sites(int n_sites) {
  if (n_sites < 2) throw std::invalid_argument("ring needs at least 2 sites");
}

// Spectral radius used to keep E^N finite; ratios are scale invariant.
double scale_of(const MatrixC& e) {
  const auto dom = linalg::dominant_eigs(e);
  if (dom.zero_spectrum) throw DegenerateNorm("transfer operator is nilpotent; the state vanishes for large N");
  return dom.max_abs;
}

double real_or_throw(cplx v, const char* what) {
  if (std::abs(v.imag()) > 1e-12 * std::max(1.0, std::abs(v.real())))
    throw Inconsistency(std::string(what) + " has imaginary part " + std::to_string(v.imag()));
  return v.real();
}

}  // namespace

TransferOperator transfer(const MpsFamily& mps) {
  MatrixC e = MatrixC::Zero(mps.bond_dim() * mps.bond_dim(), mps.bond_dim() * mps.bond_dim());
  for (const auto& a : mps.matrices()) e += linalg::kron(a.conjugate(), a);
  return {TransferOperator::Kind::plain, std::move(e)};
}

TransferOperator dressed_transfer(const MpsFamily& mps, const SpinObservable& obs) {
  check_obs(mps, obs);
  return {TransferOperator::Kind::dressed, dressed_sum(mps, mps, obs.matrix)};
}

TransferOperator mixed_transfer(const MpsFamily& bra, const MpsFamily& ket,
                                const std::optional<SpinObservable>& obs) {
  if (bra.d() != ket.d()) throw std::invalid_argument("mixed_transfer: physical dimensions differ");
  if (obs) {
    check_obs(bra, *obs);
    return {TransferOperator::Kind::mixed, dressed_sum(bra, ket, obs->matrix)};
  }
  return {TransferOperator::Kind::mixed, dressed_sum(bra, ket, MatrixC::Identity(bra.d(), bra.d()))};
}

double ring_norm_sq(const MpsFamily& mps, int n_sites) {
  check_sites(n_sites);
  const cplx t = linalg::trace_power(transfer(mps).matrix, n_sites);
  return real_or_throw(t, "tr(E^N)");
}

double ring_one_point(const MpsFamily& mps, const SpinObservable& obs, int n_sites) {
  check_sites(n_sites);
  const MatrixC e = transfer(mps).matrix;
  const double s = scale_of(e);
  const MatrixC es = e / s;
  const MatrixC eo = dressed_transfer(mps, obs).matrix / s;
  const MatrixC rest = linalg::matrix_power(es, n_sites - 1);
  const cplx den = (rest * es).trace();
  if (std::abs(den) < 1e-12) throw DegenerateNorm("tr(E^N) vanishes at N = " + std::to_string(n_sites));
  return real_or_throw((eo * rest).trace() / den, "one-point function");
}

double ring_two_point(const MpsFamily& mps, const SpinObservable& obs1, const SpinObservable& obs2,
                      int r, int n_sites) {
  check_sites(n_sites);
  if (r < 1 || r >= n_sites) throw std::invalid_argument("ring_two_point: need 1 <= r < N");
  const MatrixC e = transfer(mps).matrix;
  const double s = scale_of(e);
  const MatrixC es = e / s;
  const MatrixC e1 = dressed_transfer(mps, obs1).matrix / s;
  const MatrixC e2 = dressed_transfer(mps, obs2).matrix / s;
  const cplx den = linalg::matrix_power(es, n_sites).trace();
  if (std::abs(den) < 1e-12) throw DegenerateNorm("tr(E^N) vanishes at N = " + std::to_string(n_sites));
  const cplx num =
      (e1 * linalg::matrix_power(es, r - 1) * e2 * linalg::matrix_power(es, n_sites - r - 1)).trace();
  return real_or_throw(num / den, "two-point function");
}

Limit thermo_trace_ratio(const MatrixC& numerator, const MatrixC& transfer_matrix, int extra_power,
                         double rel_tol) {
  const auto dom = linalg::dominant_eigs(transfer_matrix, rel_tol);
  if (dom.zero_spectrum) throw DegenerateNorm("all-zero spectrum: no thermodynamic limit");
  const auto left_all = linalg::eig_all(transfer_matrix.transpose());
  const double lmax = dom.max_abs;
  const double same = 1e-8 * lmax;

  // Group dominant eigenvalues, build one spectral projector per group.
  std::vector<cplx> groups;
  for (const auto& p : dom.pairs) {
    bool seen = false;
    for (const auto& g : groups) seen = seen || std::abs(g - p.value) <= same;
    if (!seen) groups.push_back(p.value);
  }

  Limit out;
  cplx num = 0.0, den = 0.0;
  for (const cplx lam : groups) {
    std::vector<VectorC> right, left;
    for (const auto& p : dom.pairs)
      if (std::abs(p.value - lam) <= same) right.push_back(p.vector);
    for (const auto& p : left_all)
      if (std::abs(p.value - lam) <= same) left.push_back(p.vector);
    if (left.size() != right.size())
      throw Inconsistency("dominant eigenvalue has mismatched left/right multiplicity");
    const auto m = static_cast<Eigen::Index>(right.size());
    MatrixC r(transfer_matrix.rows(), m), l(transfer_matrix.rows(), m);
    for (Eigen::Index k = 0; k < m; ++k) {
      r.col(k) = right[static_cast<std::size_t>(k)];
      l.col(k) = left[static_cast<std::size_t>(k)];
    }
    const MatrixC overlap = l.transpose() * r;
    Eigen::FullPivLU<MatrixC> lu(overlap);
    if (!lu.isInvertible()) throw Inconsistency("dominant eigenvalue is defective; no spectral projector");
    const MatrixC proj = r * lu.inverse() * l.transpose();

    const cplx phase = lam / lmax;
    // Along even N only phase^2 matters.
    if (std::abs(phase * phase - 1.0) > 1e-8) {
      out.converged = false;
      out.note = "oscillatory: dominant eigenvalue " + std::to_string(lam.real()) + "+" +
                 std::to_string(lam.imag()) + "i is off the real axis";
    }
    num += std::pow(lam / lmax, -static_cast<double>(extra_power)) * (numerator * proj).trace();
    den += proj.trace();
  }
  const cplx v = num / den / std::pow(lmax, static_cast<double>(extra_power));
  if (std::abs(v.imag()) > 1e-9 * std::max(1.0, std::abs(v.real())))
    out.note += (out.note.empty() ? "" : "; ") + std::string("complex limit discarded imaginary part");
  out.value = v.real();
  return out;
}

Limit thermo_one_point(const MpsFamily& mps, const SpinObservable& obs) {
  return thermo_trace_ratio(dressed_transfer(mps, obs).matrix, transfer(mps).matrix, 1);
}

Limit thermo_two_point(const MpsFamily& mps, const SpinObservable& obs1, const SpinObservable& obs2,
                       int r) {
  if (r < 1) throw std::invalid_argument("thermo_two_point: need r >= 1");
  const MatrixC e = transfer(mps).matrix;
  const MatrixC num = dressed_transfer(mps, obs1).matrix * linalg::matrix_power(e, r - 1) *
                      dressed_transfer(mps, obs2).matrix;
  return thermo_trace_ratio(num, e, r + 1);
}

std::vector<int> Amplitudes::digits(std::size_t index) const {
  std::vector<int> out(static_cast<std::size_t>(n_sites));
  for (int s = n_sites - 1; s >= 0; --s) {
    out[static_cast<std::size_t>(s)] = static_cast<int>(index % static_cast<std::size_t>(d));
    index /= static_cast<std::size_t>(d);
  }
  return out;
}

std::string Amplitudes::label(std::size_t index, const std::vector<std::string>& labels) const {
  std::string out;
  for (int digit : digits(index)) {
    if (!out.empty()) out += ',';
    out += labels.at(static_cast<std::size_t>(digit));
  }
  return out;
}

Amplitudes amplitudes(const MpsFamily& mps, int n_sites, std::size_t cap) {
  if (n_sites < 1) throw std::invalid_argument("amplitudes: need at least one site");
  if (cap == kDefaultAmplitudeCap && std::getenv("MPSCHAIN_MAX_SITES")) {
    cap = 1;
    for (int i = 0; i < max_sites(10); ++i) cap *= static_cast<std::size_t>(mps.d());
  }
  std::size_t dim = 1;
  for (int i = 0; i < n_sites; ++i) {
    dim *= static_cast<std::size_t>(mps.d());
    if (dim > cap)
      throw CapExceeded("amplitudes: d^N exceeds cap " + std::to_string(cap) + " at N = " +
                        std::to_string(n_sites));
  }
  Amplitudes out;
  out.n_sites = n_sites;
  out.d = mps.d();
  out.values = VectorC::Zero(static_cast<Eigen::Index>(dim));

  // Depth-first over prefixes; index accumulates most-significant first.
  std::vector<MatrixC> prefix(static_cast<std::size_t>(n_sites) + 1);
  prefix[0] = MatrixC::Identity(mps.bond_dim(), mps.bond_dim());
  std::function<void(int, std::size_t)> walk = [&](int site, std::size_t index) {
    if (site == n_sites) {
      out.values(static_cast<Eigen::Index>(index)) = prefix[static_cast<std::size_t>(site)].trace();
      return;
    }
    for (int i = 0; i < mps.d(); ++i) {
      prefix[static_cast<std::size_t>(site) + 1] = prefix[static_cast<std::size_t>(site)] * mps[static_cast<std::size_t>(i)];
      walk(site + 1, index * static_cast<std::size_t>(mps.d()) + static_cast<std::size_t>(i));
    }
  };
  walk(0, 0);
  return out;
}

cplx word_trace(const MpsFamily& mps, const std::vector<int>& word) {
  MatrixC p = MatrixC::Identity(mps.bond_dim(), mps.bond_dim());
  for (int i : word) p = p * mps[static_cast<std::size_t>(i)];
  return p.trace();
}

}  // namespace mpschain
