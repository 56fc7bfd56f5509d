#include <doctest.h>

#include "mpschain/linalg.hpp"
#include "mpschain/models.hpp"

using namespace mpschain;

TEST_CASE("kron of identities and shape") {
  CHECK(linalg::kron(MatrixR::Identity(2, 2), MatrixR::Identity(2, 2)).isApprox(MatrixR::Identity(4, 4)));
  const MatrixR k = linalg::kron(MatrixR::Random(3, 3), MatrixR::Random(3, 3));
  CHECK(k.rows() == 9);
  CHECK(k.cols() == 9);
}

TEST_CASE("kron of raising matrices maps |00> to |11>") {
  const MatrixC up = models::model_II(1.0)[0];
  const MatrixC k = linalg::kron(up, up);
  // |1> is basis 0, |0> is basis 1 of the bond space.
  CHECK(k(0 * 3 + 0, 1 * 3 + 1).real() == 1.0);
}

TEST_CASE("null space edge cases") {
  CHECK(linalg::null_space(MatrixR::Identity(3, 3), 1e-12).cols() == 0);
  const MatrixR z = linalg::null_space(MatrixR::Zero(2, 2), 1e-12);
  CHECK(z.cols() == 2);
  CHECK((z.transpose() * z).isApprox(MatrixR::Identity(2, 2)));
  CHECK_THROWS_AS(linalg::null_space(MatrixR(0, 3), 1e-12), std::invalid_argument);
  CHECK_THROWS_AS(linalg::null_space(MatrixR::Identity(2, 2), -1.0), std::invalid_argument);
}

TEST_CASE("eig_all ordering") {
  MatrixR m = MatrixR::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = 2.0;
  const auto pairs = linalg::eig_all(m);
  CHECK(pairs[0].value.real() == doctest::Approx(2.0));
  CHECK(pairs[1].value.real() == doctest::Approx(1.0));
}

TEST_CASE("adjacency spectrum") {
  MatrixR a = MatrixR::Ones(3, 3);
  a(1, 1) = 0.0;
  const auto pairs = linalg::eig_all(a);
  const double s3 = std::sqrt(3.0);
  CHECK(pairs[0].value.real() == doctest::Approx(1.0 + s3));
  CHECK(pairs[1].value.real() == doctest::Approx(1.0 - s3));
  CHECK(std::abs(pairs[2].value) < 1e-12);
}

TEST_CASE("dominant eigenvalues keep equal magnitudes") {
  VectorR d(3);
  d << 3.0, -3.0, 1.0;
  const auto dom = linalg::dominant_eigs(MatrixR(d.asDiagonal()));
  CHECK(dom.pairs.size() == 2);
  CHECK(dom.max_abs == doctest::Approx(3.0));
}

TEST_CASE("trace powers") {
  CHECK(linalg::trace_power(MatrixR::Identity(9, 9), 5) == doctest::Approx(9.0));
  const MatrixC v = transfer(models::model_II(0.0)).matrix;
  CHECK(std::abs(linalg::trace_power(v, 2) - cplx(8.0)) < 1e-12);
  CHECK(std::abs(linalg::trace_power(v, 4) - cplx(12.0)) < 1e-12);
  CHECK(std::abs(linalg::trace_power_squaring(v, 6) - linalg::trace_power_eigen(v, 6)) < 1e-9);
}

TEST_CASE("model II V has dominant pair +-sqrt2 with the expected vectors") {
  const MatrixC v = transfer(models::model_II(0.0)).matrix;
  const auto dom = linalg::dominant_eigs(v);
  REQUIRE(dom.pairs.size() == 2);
  CHECK(dom.max_abs == doctest::Approx(std::sqrt(2.0)));
  for (const auto& p : dom.pairs) {
    const double s = p.value.real() > 0 ? 1.0 : -1.0;
    VectorC expected = VectorC::Zero(9);
    expected(0) = 0.5;
    expected(4) = 0.5 * s * std::sqrt(2.0);
    expected(8) = 0.5;
    CHECK(std::abs(std::abs(expected.dot(p.vector)) - p.vector.norm()) < 1e-10);
  }
}

TEST_CASE("model I transfer at g = 1 has a single dominant eigenvalue") {
  const auto dom = linalg::dominant_eigs(transfer(models::model_I(1.0)).matrix);
  CHECK(dom.pairs.size() == 1);
  // (3 g^2 + gamma) / 2 with gamma = 3
  CHECK(dom.max_abs == doctest::Approx(3.0));
}
