#include "mpschain/models.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace mpschain::models {

namespace {

std::size_t ipow(std::size_t base, int e) {
  std::size_t out = 1;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

// Two-site basis index for labels given as basis positions (0: +1, 1: 0, 2: -1).
Eigen::Index pair_index(int a, int b) { return 3 * a + b; }

MatrixC chain_dense(const MatrixC& local, int k, int n_sites) {
  LocalHamiltonian h;
  h.k = k;
  h.d = 3;
  h.matrix = local;
  return ed::ComplexChain(h, n_sites).dense();
}

}  // namespace

const std::vector<std::string>& spin1_labels() {
  static const std::vector<std::string> labels{"1", "0", "-1"};
  return labels;
}

MpsFamily general_family(double g, double h, double c) {
  MatrixC up = MatrixC::Zero(3, 3);
  up(0, 1) = 1.0;
  up(1, 2) = 1.0;
  MatrixC mid = MatrixC::Zero(3, 3);
  mid(0, 0) = g;
  mid(1, 1) = h;
  mid(2, 2) = g;
  MatrixC down = MatrixC::Zero(3, 3);
  down(1, 0) = c;
  down(2, 1) = c;
  return MpsFamily(spin1_labels(), {up, mid, down}, {{"g", g}, {"h", h}, {"c", c}});
}

MpsFamily model_I(double g) { return general_family(g, std::sqrt(2.0) * g, 1.0); }

MpsFamily model_II(double g) { return general_family(g, g, 1.0); }

MpsFamily model_II_sigma(double g, int sigma) {
  if (sigma != 1 && sigma != -1) throw std::invalid_argument("sigma must be +1 or -1");
  return general_family(g, sigma * g, 1.0);
}

MpsFamily aklt() {
  const double r2 = std::sqrt(2.0);
  MatrixC plus = MatrixC::Zero(2, 2);
  plus(0, 1) = -r2;
  MatrixC zero = MatrixC::Zero(2, 2);
  zero(0, 0) = 1.0;
  zero(1, 1) = -1.0;
  MatrixC minus = MatrixC::Zero(2, 2);
  minus(1, 0) = r2;
  return MpsFamily(spin1_labels(), {plus, zero, minus});
}

double det_word_matrix(double g, double h, double c) {
  return parent::word_matrix(general_family(g, h, c), 2).determinant().real();
}

double det_closed_form(double g, double h, double c) {
  const double g2 = g * g, h2 = h * h;
  return (g2 - h2) * (g2 - h2) * (2.0 * g2 - h2) * std::pow(c, 6);
}

ClosedFormCorrelatorsI closed_form_correlators_I(double g) {
  ClosedFormCorrelatorsI out;
  const double g2 = g * g;
  const double gamma = std::sqrt(g2 * g2 + 8.0);
  const double big = 3.0 * g2 + gamma;
  out.g = g;
  out.gamma = gamma;
  out.sz2 = 8.0 / (gamma * big);
  out.sx2 = (g2 * (3.0 * gamma + g2) + 4.0) / (gamma * big);
  out.g_par = -4.0 * (g2 + gamma) / (gamma * big * big);
  const double t = g2 + std::sqrt(2.0) + gamma;
  out.g_perp = 8.0 * g2 * t * t / (gamma * big * big * (g2 + gamma));
  out.xi_perp = 1.0 / std::log(big / (2.0 + 2.0 * std::sqrt(2.0) * g2));
  if (g == 0.0) {
    out.degenerate_limit = true;
    out.xi_par = 0.0;
    out.g_perp = 0.0;
  } else {
    out.xi_par = 1.0 / std::log(big / (2.0 * g2));
  }
  return out;
}

VectorC model_I_kernel_vector(double g) {
  VectorC e = VectorC::Zero(9);
  e(pair_index(1, 1)) = 1.0;
  e(pair_index(0, 2)) = -g * g;
  e(pair_index(2, 0)) = -g * g;
  e.normalize();
  linalg::canonicalize_phase(e);
  return e;
}

LocalHamiltonian model_I_hamiltonian(double g) {
  // At g = 0 the word kernel grows; this vector stays continuous in g.
  return parent::local_hamiltonian(parent::make_null_space_basis(model_I(g), 2, model_I_kernel_vector(g)));
}

double model_I_legacy_coupling(double g) {
  const double g2 = g * g;
  if (g2 == 1.0) return std::numeric_limits<double>::infinity();
  return (1.0 + 2.0 * g2 * g2) / ((1.0 - g2) * (1.0 - g2));
}

LocalHamiltonian model_II_hamiltonian(int sigma) {
  if (sigma != 1 && sigma != -1) throw std::invalid_argument("sigma must be +1 or -1");
  const double s = 1.0 / std::sqrt(2.0);
  MatrixC v = MatrixC::Zero(9, 2);
  v(pair_index(1, 0), 0) = s;
  v(pair_index(0, 1), 0) = -sigma * s;
  v(pair_index(1, 2), 1) = s;
  v(pair_index(2, 1), 1) = -sigma * s;
  return parent::local_hamiltonian(v, 3, 2);
}

LocalHamiltonian limit_hamiltonian_h1() {
  const MatrixC a = spin::sz() * spin::sz() - spin::identity();
  return parent::local_hamiltonian_from_operator(linalg::kron(a, a), 3, 2);
}

MatrixC s_dot_s() {
  return linalg::kron(spin::sz(), spin::sz()) +
         0.5 * (linalg::kron(spin::splus(), spin::sminus()) + linalg::kron(spin::sminus(), spin::splus()));
}

LocalHamiltonian limit_hamiltonian_h2() {
  const MatrixC ss = s_dot_s();
  return parent::local_hamiltonian_from_operator(ss * ss - MatrixC::Identity(9, 9), 3, 2);
}

MatrixC rz_pi() {
  MatrixC r = MatrixC::Zero(3, 3);
  r(0, 0) = -1.0;
  r(1, 1) = 1.0;
  r(2, 2) = -1.0;
  return r;
}

const std::vector<std::string>& spin_form_terms() {
  static const std::vector<std::string> terms{"const", "sz2", "sz2sz2", "ss", "ss2", "anti", "szsz"};
  return terms;
}

SpinFormDecomposition spin_form_decompose(const LocalHamiltonian& h, int n_sites, double tol) {
  if (h.d != 3) throw std::invalid_argument("spin_form_decompose: spin-1 sites only");
  if (h.k != 2) throw std::invalid_argument("spin_form_decompose: two-site terms only");
  const MatrixC sz = spin::sz();
  const MatrixC sz2 = sz * sz;
  const MatrixC ss = s_dot_s();
  const MatrixC zz = linalg::kron(sz, sz);
  const auto dim = static_cast<Eigen::Index>(ipow(3, n_sites));

  std::vector<MatrixC> ops;
  ops.push_back(MatrixC::Identity(dim, dim));
  ops.push_back(chain_dense(sz2, 1, n_sites));
  ops.push_back(chain_dense(linalg::kron(sz2, sz2), 2, n_sites));
  ops.push_back(chain_dense(ss, 2, n_sites));
  ops.push_back(chain_dense(ss * ss, 2, n_sites));
  ops.push_back(chain_dense(ss * zz + zz * ss, 2, n_sites));
  ops.push_back(chain_dense(zz, 2, n_sites));

  const Eigen::Index n2 = dim * dim;
  MatrixC design(n2, static_cast<Eigen::Index>(ops.size()));
  for (std::size_t t = 0; t < ops.size(); ++t)
    design.col(static_cast<Eigen::Index>(t)) = Eigen::Map<const VectorC>(ops[t].data(), n2);
  const MatrixC target = ed::ComplexChain(h, n_sites).dense();
  const VectorC rhs = Eigen::Map<const VectorC>(target.data(), n2);
  const VectorC coef = design.completeOrthogonalDecomposition().solve(rhs);

  SpinFormDecomposition out;
  out.n_sites = n_sites;
  for (std::size_t t = 0; t < ops.size(); ++t)
    out.coefficients[spin_form_terms()[t]] = coef(static_cast<Eigen::Index>(t)).real();
  out.residual = (design * coef - rhs).norm();
  out.representable = out.residual <= tol * std::max(1.0, rhs.norm());
  if (!out.representable) out.note = "Hamiltonian is outside the span of the spin-form terms";
  return out;
}

SpinFormComparison compare_spin_form(const SpinFormDecomposition& dec,
                                     const std::map<std::string, double>& reference,
                                     std::optional<double> scale) {
  double num = 0.0, den = 0.0;
  for (const auto& term : spin_form_terms()) {
    const double c = dec.coefficients.count(term) ? dec.coefficients.at(term) : 0.0;
    const double r = reference.count(term) ? reference.at(term) : 0.0;
    num += c * r;
    den += c * c;
  }
  SpinFormComparison out;
  out.scale = scale ? *scale : den > 0.0 ? num / den : 0.0;
  for (const auto& term : spin_form_terms()) {
    const double c = dec.coefficients.count(term) ? dec.coefficients.at(term) : 0.0;
    const double r = reference.count(term) ? reference.at(term) : 0.0;
    out.deviation[term] = r - out.scale * c;
    out.max_deviation = std::max(out.max_deviation, std::abs(out.deviation[term]));
  }
  return out;
}

std::map<std::string, double> model_II_reference_spin_form() {
  return {{"const", 0.0}, {"sz2", 2.0}, {"sz2sz2", 0.0}, {"ss", -1.0},
          {"ss2", 0.0},   {"anti", -1.0}, {"szsz", 1.0}};
}

std::map<std::string, double> model_I_reference_spin_form(double g, int n_sites) {
  const double u = g * g / (1.0 - g * g);
  return {{"const", (1.0 - u * u) * n_sites}, {"sz2", -2.0 * (1.0 + 2.0 * u)}, {"sz2sz2", 1.0},
          {"ss", 0.0}, {"ss2", u * u}, {"anti", u}, {"szsz", 0.0}};
}

boost::multiprecision::cpp_int adjacency_ground_count(int n_sites) {
  using boost::multiprecision::cpp_int;
  if (n_sites < 1) throw std::invalid_argument("adjacency_ground_count: need N >= 1");
  using M3 = std::array<std::array<cpp_int, 3>, 3>;
  auto mul = [](const M3& a, const M3& b) {
    M3 c{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int l = 0; l < 3; ++l) c[i][j] += a[i][l] * b[l][j];
    return c;
  };
  M3 base{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) base[i][j] = (i == 1 && j == 1) ? 0 : 1;
  M3 acc{};
  for (int i = 0; i < 3; ++i) acc[i][i] = 1;
  for (int e = n_sites; e > 0; e >>= 1) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
  }
  return acc[0][0] + acc[1][1] + acc[2][2];
}

SigmaEquivalence sigma_equivalence_check(int n_sites) {
  if (n_sites < 2 || n_sites % 2 != 0) throw std::invalid_argument("sigma_equivalence_check: N must be even");
  const LocalHamiltonian plus = model_II_hamiltonian(1);
  const LocalHamiltonian minus = model_II_hamiltonian(-1);

  const MatrixC r2 = linalg::kron(spin::identity(), rz_pi());
  SigmaEquivalence out;
  out.local_residual = (minus.matrix - r2 * plus.matrix * r2.adjoint()).norm();

  const ed::ComplexChain hp(plus, n_sites), hm(minus, n_sites);
  const MatrixC dp = hp.dense(), dm = hm.dense();
  const auto dim = static_cast<Eigen::Index>(hp.dimension());
  VectorC sign(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    double s = 1.0;
    auto idx = static_cast<std::size_t>(i);
    for (int site = n_sites; site >= 1; --site) {
      if (site % 2 == 1 && idx % 3 != 1) s = -s;
      idx /= 3;
    }
    sign(i) = s;
  }
  out.global_residual = (dm - sign.asDiagonal() * dp * sign.asDiagonal()).norm();

  out.spectrum_plus = ed::spectrum(hp);
  out.spectrum_minus = ed::spectrum(hm);
  for (std::size_t i = 0; i < out.spectrum_plus.size(); ++i)
    out.max_deviation = std::max(out.max_deviation, std::abs(out.spectrum_plus[i] - out.spectrum_minus[i]));
  return out;
}

}  // namespace mpschain::models
