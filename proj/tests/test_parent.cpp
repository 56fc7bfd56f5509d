#include <doctest.h>

#include "mpschain/models.hpp"
#include "mpschain/parent.hpp"

using namespace mpschain;

namespace {
// Two-site index from basis positions (0: +1, 1: 0, 2: -1).
Eigen::Index pair(int a, int b) { return 3 * a + b; }

double projector_distance(const MatrixC& a, const MatrixC& b) {
  return (a * a.adjoint() - b * b.adjoint()).norm();
}
}  // namespace

TEST_CASE("kernel dimensions") {
  CHECK(parent::ground_null_space(models::model_I(0.0), 2).size() == 5);
  CHECK(parent::ground_null_space(models::model_I(0.7), 1).empty());
  CHECK(parent::ground_null_space(models::model_I(0.7), 2).size() == 1);
  CHECK(parent::ground_null_space(models::model_II(0.7), 2).size() == 2);
  CHECK(parent::ground_null_space(models::aklt(), 2).size() == 5);
}

TEST_CASE("model I kernel vector") {
  const double g = 0.7;
  const auto basis = parent::ground_null_space(models::model_I(g), 2);
  VectorC e = VectorC::Zero(9);
  // First nonzero component (|1,-1>) made real positive.
  e(pair(1, 1)) = -1.0;
  e(pair(0, 2)) = g * g;
  e(pair(2, 0)) = g * g;
  e.normalize();
  CHECK((basis.vectors.col(0) - e).norm() < 1e-10);
  CHECK((models::model_I_kernel_vector(g) - e).norm() < 1e-14);
}

TEST_CASE("model II kernel span") {
  const auto basis = parent::ground_null_space(models::model_II(1.3), 2);
  CHECK(projector_distance(basis.vectors, models::model_II_hamiltonian(1).basis) < 1e-10);
}

TEST_CASE("empty kernel is a result with a note") {
  const auto basis = parent::ground_null_space(models::general_family(1.0, 2.0, 1.0), 2);
  CHECK(basis.empty());
  CHECK(basis.note.find("no nearest-neighbor parent Hamiltonian") != std::string::npos);
  CHECK(parent::ground_null_space(models::general_family(1.0, 2.0, 1.0), 1).note.find("no 1-site") != std::string::npos);
  const MpsFamily zero(models::spin1_labels(), {MatrixC::Zero(3, 3), MatrixC::Zero(3, 3), MatrixC::Zero(3, 3)});
  CHECK_THROWS_AS(parent::ground_null_space(zero, 2), parent::InvalidModel);
}

TEST_CASE("null space basis is deterministic under gauge transformations") {
  const auto m = models::model_II(0.9);
  MatrixC x = MatrixC::Identity(3, 3);
  x(0, 1) = 0.3;
  x(2, 0) = -0.2;
  const auto a = parent::ground_null_space(m, 2);
  const auto b = parent::ground_null_space(m.gauge(x, 1.7), 2);
  CHECK((a.vectors - b.vectors).norm() < 1e-9);
}

TEST_CASE("external kernel vectors are validated") {
  const auto m = models::model_II(1.0);
  CHECK_NOTHROW(parent::make_null_space_basis(m, 2, models::model_II_hamiltonian(1).basis));
  MatrixC bad = MatrixC::Zero(9, 1);
  bad(0, 0) = 1.0;
  CHECK_THROWS(parent::make_null_space_basis(m, 2, bad));
}

TEST_CASE("local hamiltonians") {
  const auto empty = parent::local_hamiltonian(MatrixC(9, 0), 3, 2);
  CHECK(empty.matrix.norm() == 0.0);
  const auto h2 = parent::local_hamiltonian(parent::ground_null_space(models::model_II(0.4), 2));
  Eigen::SelfAdjointEigenSolver<MatrixC> es(h2.matrix);
  CHECK(es.eigenvalues().minCoeff() > -1e-12);
  CHECK((h2.matrix * h2.matrix - h2.matrix).norm() < 1e-12);
  CHECK(linalg::rank(h2.matrix) == 2);
  CHECK_THROWS(parent::local_hamiltonian(h2.basis, 3, 2, {1.0, -1.0}));
  CHECK_THROWS(parent::local_hamiltonian(h2.basis, 3, 2, {1.0}));
  const auto hj = parent::local_hamiltonian(h2.basis, 3, 2, {2.0, 0.5});
  CHECK((hj.matrix - 2.0 * h2.basis.col(0) * h2.basis.col(0).adjoint() - 0.5 * h2.basis.col(1) * h2.basis.col(1).adjoint())
            .norm() < 1e-14);
}

TEST_CASE("reduced density matrices") {
  const auto m = models::model_I(0.7);
  const MatrixC rho3 = parent::reduced_density(m, 3, 4);
  const MatrixC rho2 = parent::reduced_density(m, 2, 4);
  CHECK(std::abs(rho3.trace() - cplx(1.0)) < 1e-12);
  MatrixC partial = MatrixC::Zero(9, 9);
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j)
      for (int s = 0; s < 3; ++s) partial(i, j) += rho3(3 * i + s, 3 * j + s);
  CHECK((partial - rho2).norm() < 1e-12);
  const VectorC e = parent::ground_null_space(m, 2).vectors.col(0);
  CHECK((rho2 * e).norm() < 1e-12);
}

TEST_CASE("chain application by hand on |0,1,1>") {
  const auto h = models::model_II_hamiltonian(1);
  CHECK(parent::chain_apply(parent::local_hamiltonian(MatrixC(9, 0), 3, 2), 3, VectorC::Ones(27)).norm() == 0.0);
  VectorC s = VectorC::Zero(27);
  s(1 * 9 + 0 * 3 + 0) = 1.0;
  const VectorC hs = parent::chain_apply(h, 3, s);
  CHECK(std::abs(s.dot(hs) - cplx(1.0)) < 1e-14);
  CHECK(hs.squaredNorm() == doctest::Approx(1.5));
  CHECK_THROWS(parent::chain_apply(h, 3, VectorC::Zero(9)));
}

TEST_CASE("zero energy of the generating states") {
  CHECK(parent::verify_zero_energy(models::model_I(0.7), models::model_I_hamiltonian(0.7), 6) < 1e-10);
  CHECK(parent::verify_zero_energy(models::model_II(1.3), models::model_II_hamiltonian(1), 6) < 1e-10);
  VectorC v = VectorC::Zero(9);
  v(pair(0, 0)) = 1.0;
  v(pair(1, 1)) = 1.0;
  v.normalize();
  const auto control = parent::local_hamiltonian(v, 3, 2);
  CHECK(parent::verify_zero_energy(models::model_II(1.3), control, 6) > 0.1);
}
