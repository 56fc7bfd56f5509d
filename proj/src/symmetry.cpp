#include "mpschain/symmetry.hpp"

#include <random>

namespace mpschain::symmetry {

namespace {

MatrixC comm(const MatrixC& a, const MatrixC& b) { return a * b - b * a; }

// vec is column-major: vec(X A) = (A^T (x) I) vec X, vec(B X) = (I (x) B) vec X.
MatrixC left_mult(const MatrixC& a, Eigen::Index n) { return linalg::kron(a.transpose(), MatrixC::Identity(n, n)); }
MatrixC right_mult(const MatrixC& b, Eigen::Index n) { return linalg::kron(MatrixC::Identity(n, n), b); }

MatrixC unvec(const VectorC& v, Eigen::Index n) { return Eigen::Map<const MatrixC>(v.data(), n, n); }

int label_m(const std::string& label) {
  std::size_t used = 0;
  const int m = std::stoi(label, &used);
  if (used != label.size()) throw std::invalid_argument("label '" + label + "' is not an integer m");
  return m;
}

double cond(const MatrixC& x) {
  Eigen::JacobiSVD<MatrixC> svd(x);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  return smin > 0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
}

// Candidates for the scalar from the shortest words with nonzero target trace.
// Returns nullopt when some word rules out every nonzero scalar.
std::optional<std::vector<cplx>> scalar_candidates(const MpsFamily& mps, const std::vector<MatrixC>& target) {
  const int d = mps.d();
  const MpsFamily tfam(mps.labels(), target);
  for (int len = 1; len <= 4; ++len) {
    std::vector<int> word(static_cast<std::size_t>(len), 0);
    bool informative = false;
    cplx ratio = 0.0;
    while (true) {
      const cplx ta = word_trace(mps, word), tb = word_trace(tfam, word);
      const double scale = std::max({1.0, std::abs(ta), std::abs(tb)});
      if (std::abs(tb) > 1e-10 * scale) {
        if (std::abs(ta) <= 1e-10 * scale) return std::nullopt;
        ratio = ta / tb;
        informative = true;
        break;
      }
      if (std::abs(ta) > 1e-10 * scale) return std::nullopt;
      int pos = len - 1;
      while (pos >= 0 && ++word[static_cast<std::size_t>(pos)] == d) word[static_cast<std::size_t>(pos--)] = 0;
      if (pos < 0) break;
    }
    if (informative) {
      std::vector<cplx> roots;
      const double mag = std::pow(std::abs(ratio), 1.0 / len);
      const double arg = std::arg(ratio);
      for (int k = 0; k < len; ++k)
        roots.push_back(std::polar(mag, (arg + 2.0 * M_PI * k) / len));
      // Prefer the scalar closest to 1.
      std::sort(roots.begin(), roots.end(),
                [](cplx a, cplx b) { return std::abs(a - 1.0) < std::abs(b - 1.0); });
      return roots;
    }
  }
  return std::vector<cplx>{1.0};
}

bool root_of_unity(cplx s, double tol) {
  if (std::abs(std::abs(s) - 1.0) > tol) return false;
  cplx p = s;
  for (int q = 1; q <= 12; ++q, p *= s)
    if (std::abs(p - 1.0) <= tol * q) return true;
  return false;
}

}  // namespace

double check_generator_condition(const MpsFamily& mps, const MatrixC& phys_gen, const MatrixC& bond_gen) {
  if (phys_gen.rows() != mps.d() || phys_gen.cols() != mps.d())
    throw std::invalid_argument("physical generator must be d x d");
  if (bond_gen.rows() != mps.bond_dim() || bond_gen.cols() != mps.bond_dim())
    throw std::invalid_argument("bond generator must be D x D");
  double worst = 0.0;
  for (int i = 0; i < mps.d(); ++i) {
    MatrixC lhs = MatrixC::Zero(mps.bond_dim(), mps.bond_dim());
    for (int j = 0; j < mps.d(); ++j) lhs += phys_gen(i, j) * mps[static_cast<std::size_t>(j)];
    worst = std::max(worst, (lhs - comm(bond_gen, mps[static_cast<std::size_t>(i)])).norm());
  }
  return worst;
}

GeneratorFit fit_bond_generator(const MpsFamily& mps, const MatrixC& phys_gen) {
  const Eigen::Index n = mps.bond_dim();
  const Eigen::Index block = n * n;
  MatrixC sys(block * mps.d(), block);
  VectorC rhs(block * mps.d());
  for (int i = 0; i < mps.d(); ++i) {
    const MatrixC& a = mps[static_cast<std::size_t>(i)];
    // vec([B, A]) = vec(B A) - vec(A B)
    sys.middleRows(i * block, block) = left_mult(a, n) - right_mult(a, n);
    MatrixC target = MatrixC::Zero(n, n);
    for (int j = 0; j < mps.d(); ++j) target += phys_gen(i, j) * mps[static_cast<std::size_t>(j)];
    rhs.segment(i * block, block) = Eigen::Map<const VectorC>(target.data(), block);
  }
  const VectorC sol = sys.completeOrthogonalDecomposition().solve(rhs);
  GeneratorFit out;
  out.bond_gen = unvec(sol, n);
  out.residual = check_generator_condition(mps, phys_gen, out.bond_gen);
  return out;
}

IntertwinerResult find_intertwiner(const MpsFamily& mps, const std::vector<MatrixC>& target, double tol,
                                   bool require_root_of_unity) {
  if (static_cast<int>(target.size()) != mps.d()) throw std::invalid_argument("target needs one matrix per label");
  const Eigen::Index n = mps.bond_dim();
  for (const auto& t : target)
    if (t.rows() != n || t.cols() != n) throw std::invalid_argument("target matrices must be D x D");

  IntertwinerResult out;
  const auto candidates = scalar_candidates(mps, target);
  if (!candidates) {
    out.diagnosis = "word traces rule out any nonzero proportionality constant";
    return out;
  }
  for (const cplx mu : *candidates) {
    MatrixC sys(n * n * mps.d(), n * n);
    for (int m = 0; m < mps.d(); ++m)
      sys.middleRows(m * n * n, n * n) =
          left_mult(mps[static_cast<std::size_t>(m)], n) - mu * right_mult(target[static_cast<std::size_t>(m)], n);
    const MatrixC kernel = linalg::null_space(sys, tol);
    if (kernel.cols() == 0) continue;
    out.solution_dim = static_cast<int>(kernel.cols());

    // Try the basis vectors first, then fixed pseudo-random combinations.
    std::vector<MatrixC> trials;
    for (Eigen::Index k = 0; k < kernel.cols(); ++k) trials.push_back(unvec(kernel.col(k), n));
    std::mt19937 rng(7);
    std::normal_distribution<double> gauss;
    for (int t = 0; t < 4 && kernel.cols() > 1; ++t) {
      VectorC c(kernel.cols());
      for (Eigen::Index k = 0; k < c.size(); ++k) c(k) = gauss(rng);
      trials.push_back(unvec(kernel * c, n));
    }
    for (auto x : trials) {
      const double c = cond(x);
      if (!(c < 1e12)) continue;
      // Scale so that the first nonzero entry in row-major order is 1.
      const double big = x.cwiseAbs().maxCoeff();
      for (Eigen::Index i = 0, done = 0; i < n && !done; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
          if (std::abs(x(i, j)) > 1e-9 * big) {
            x /= x(i, j);
            done = 1;
            break;
          }
      const MatrixC xinv = x.inverse();
      double res = 0.0;
      for (int m = 0; m < mps.d(); ++m)
        res = std::max(res, (x * mps[static_cast<std::size_t>(m)] * xinv - mu * target[static_cast<std::size_t>(m)]).norm());
      out.found = true;
      out.matrix = x;
      out.scalar = mu;
      out.residual = res;
      out.condition = c;
      if (require_root_of_unity && !root_of_unity(mu, 1e-8)) {
        out.found = false;
        out.diagnosis = "proportionality constant is not a root of unity";
      }
      return out;
    }
    out.diagnosis = "non-invertible commutant: only singular solutions exist";
  }
  if (out.diagnosis.empty()) out.diagnosis = "no nonzero solution";
  return out;
}

std::vector<MatrixC> parity_target(const MpsFamily& mps) {
  std::vector<MatrixC> out;
  for (const auto& a : mps.matrices()) out.push_back(a.transpose());
  return out;
}

std::vector<MatrixC> spin_flip_target(const MpsFamily& mps) {
  std::vector<MatrixC> out;
  for (const auto& label : mps.labels()) out.push_back(mps.at(std::to_string(-label_m(label))));
  return out;
}

BondRep spin_rep(int two_j) {
  if (two_j < 0) throw std::invalid_argument("spin_rep: negative spin");
  const Eigen::Index dim = two_j + 1;
  const double j = two_j / 2.0;
  BondRep rep{MatrixC::Zero(dim, dim), MatrixC::Zero(dim, dim), MatrixC::Zero(dim, dim)};
  for (Eigen::Index k = 0; k < dim; ++k) {
    const double m = j - static_cast<double>(k);
    rep.sz(k, k) = m;
    if (k > 0) rep.splus(k - 1, k) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  rep.sminus = rep.splus.adjoint();
  return rep;
}

double spherical_tensor_residual(const MpsFamily& mps, const BondRep& rep) {
  const Eigen::Index n = mps.bond_dim();
  if (rep.sz.rows() != n || rep.splus.rows() != n || rep.sminus.rows() != n)
    throw std::invalid_argument("bond representation has wrong dimension");
  const double su2 = std::max({(comm(rep.sz, rep.splus) - rep.splus).norm(),
                               (comm(rep.sz, rep.sminus) + rep.sminus).norm(),
                               (comm(rep.splus, rep.sminus) - 2.0 * rep.sz).norm()});
  if (su2 > 1e-10) throw std::invalid_argument("bond triple is not an su(2) representation");

  const double j = (mps.d() - 1) / 2.0;
  auto matrix_for = [&](int m) -> MatrixC {
    for (std::size_t i = 0; i < mps.labels().size(); ++i)
      if (label_m(mps.labels()[i]) == m) return mps[i];
    return MatrixC::Zero(n, n);
  };
  double worst = 0.0;
  for (const auto& label : mps.labels()) {
    const int m = label_m(label);
    const MatrixC a = matrix_for(m);
    const double up = std::sqrt(std::max(0.0, j * (j + 1) - m * (m + 1.0)));
    const double down = std::sqrt(std::max(0.0, j * (j + 1) - m * (m - 1.0)));
    worst = std::max({worst, (comm(rep.sz, a) - double(m) * a).norm(),
                      (comm(rep.splus, a) - up * matrix_for(m + 1)).norm(),
                      (comm(rep.sminus, a) - down * matrix_for(m - 1)).norm()});
  }
  return worst;
}

}  // namespace mpschain::symmetry
