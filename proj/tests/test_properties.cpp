#include <doctest.h>

#include "mpschain/models.hpp"
#include "mpschain/parent.hpp"

#include <random>

using namespace mpschain;

namespace {

MatrixC random_matrix(std::mt19937& rng, Eigen::Index r, Eigen::Index c) {
  std::normal_distribution<double> gauss;
  MatrixC m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = cplx(gauss(rng), gauss(rng));
  return m;
}

MpsFamily random_family(std::mt19937& rng, int d, int bond) {
  std::vector<std::string> labels;
  std::vector<MatrixC> mats;
  for (int i = 0; i < d; ++i) {
    labels.push_back("s" + std::to_string(i));
    mats.push_back(random_matrix(rng, bond, bond));
  }
  return MpsFamily(labels, mats);
}

}  // namespace

TEST_CASE("kron mixed product") {
  std::mt19937 rng(1);
  for (int t = 0; t < 10; ++t) {
    const MatrixC a = random_matrix(rng, 2, 3), b = random_matrix(rng, 3, 2);
    const MatrixC c = random_matrix(rng, 3, 4), d = random_matrix(rng, 4, 2);
    CHECK((linalg::kron(a, c) * linalg::kron(b, d) - linalg::kron(a * b, c * d)).norm() < 1e-10);
  }
}

TEST_CASE("null space vectors are annihilated and orthonormal") {
  std::mt19937 rng(2);
  for (int t = 0; t < 10; ++t) {
    const MatrixC m = random_matrix(rng, 4, 3) * random_matrix(rng, 3, 7);
    const MatrixC n = linalg::null_space(m, 1e-10);
    CHECK(n.cols() == 4);
    CHECK((m * n).norm() < 1e-9 * m.norm());
    CHECK((n.adjoint() * n - MatrixC::Identity(4, 4)).norm() < 1e-10);
  }
}

TEST_CASE("gauge transformations leave observables unchanged") {
  std::mt19937 rng(3);
  for (int t = 0; t < 5; ++t) {
    const auto m = random_family(rng, 3, 3);
    const MatrixC x = random_matrix(rng, 3, 3) + 3.0 * MatrixC::Identity(3, 3);
    const auto mg = m.gauge(x, cplx(0.7, 0.4));
    const SpinObservable sz = observable("sz"), sx = observable("sx");
    CHECK(ring_one_point(mg, sx, 6) == doctest::Approx(ring_one_point(m, sx, 6)).epsilon(1e-9));
    CHECK(ring_two_point(mg, sz, sx, 2, 6) == doctest::Approx(ring_two_point(m, sz, sx, 2, 6)).epsilon(1e-9));
    CHECK(parent::ground_null_space(mg, 2).size() == parent::ground_null_space(m, 2).size());
  }
}

TEST_CASE("c can be scaled away") {
  // A gauge moves c between A_1 and A_-1, and every nonzero word has as many
  // of each, so (g, h, c) and (g, h, 1) / sqrt(c) give the same ray.
  for (double c : {0.5, 2.0, 3.0}) {
    const auto a = models::general_family(0.7, 1.1, c);
    const auto b = models::general_family(0.7 / std::sqrt(c), 1.1 / std::sqrt(c), 1.0);
    CHECK(ring_two_point(a, observable("sz"), observable("sz"), 2, 6) ==
          doctest::Approx(ring_two_point(b, observable("sz"), observable("sz"), 2, 6)).epsilon(1e-10));
    CHECK(parent::ground_null_space(a, 2).size() == parent::ground_null_space(b, 2).size());
  }
}

TEST_CASE("local hamiltonians are positive semidefinite") {
  for (double g : {0.0, 0.3, 1.0, 2.5}) {
    Eigen::SelfAdjointEigenSolver<MatrixC> es(models::model_I_hamiltonian(g).matrix);
    CHECK(es.eigenvalues().minCoeff() >= -1e-12);
  }
}

TEST_CASE("amplitudes are invariant under cyclic shifts") {
  std::mt19937 rng(4);
  const auto m = random_family(rng, 3, 2);
  const Amplitudes a = amplitudes(m, 5);
  for (std::size_t idx = 0; idx < static_cast<std::size_t>(a.values.size()); ++idx) {
    const std::size_t shifted = (idx % 3) * 81 + idx / 3;
    CHECK(std::abs(a.values(static_cast<Eigen::Index>(idx)) - a.values(static_cast<Eigen::Index>(shifted))) <
          1e-10 * (1.0 + std::abs(a.values(static_cast<Eigen::Index>(idx)))));
  }
}
