#include <doctest.h>

#include "mpschain/ed.hpp"
#include "mpschain/models.hpp"

#include <cstdlib>
#include <random>

using namespace mpschain;

TEST_CASE("dense and matrix-free routes agree") {
  const ed::ComplexChain h(models::model_I_hamiltonian(0.7), 5);
  std::mt19937 rng(3);
  std::normal_distribution<double> gauss;
  VectorC v(static_cast<Eigen::Index>(h.dimension()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = cplx(gauss(rng), gauss(rng));
  CHECK((h.dense() * v - h.apply(v)).norm() < 1e-11);
}

TEST_CASE("ground energies vanish") {
  CHECK(std::abs(ed::ground_energy(ed::RealChain(models::model_I_hamiltonian(0.7), 6))) < 1e-8);
  CHECK(std::abs(ed::ground_energy(ed::RealChain(models::model_II_hamiltonian(1), 6))) < 1e-8);
  const auto id = parent::local_hamiltonian(MatrixC::Identity(9, 9), 3, 2);
  CHECK(ed::ground_energy(ed::RealChain(id, 4)) == doctest::Approx(4.0));
}

TEST_CASE("lanczos matches the dense solver") {
  const ed::RealChain h(models::limit_hamiltonian_h2(), 6);
  CHECK(ed::lanczos_ground_energy(h) == doctest::Approx(ed::spectrum(h).front()).epsilon(1e-9));
  const ed::RealChain h8(models::model_I_hamiltonian(0.7), 8);
  CHECK(std::abs(ed::ground_energy(h8)) < 1e-8);
}

TEST_CASE("kernel dimensions") {
  CHECK(ed::kernel_dimension(ed::RealChain(models::limit_hamiltonian_h1(), 4)).lower == 56);
  CHECK(ed::kernel_dimension(ed::RealChain(models::model_II_hamiltonian(1), 4)).lower >= 20);
  const auto id = parent::local_hamiltonian(MatrixC::Identity(9, 9), 3, 2);
  CHECK(ed::kernel_dimension(ed::RealChain(id, 2)).lower == 0);
}

TEST_CASE("kernel counts report a gap window") {
  const auto k = ed::kernel_count_from_spectrum({0.0, 1e-12, 5e-8, 1.0}, 1e-8);
  CHECK(k.lower == 2);
  CHECK(k.upper == 3);
  CHECK_FALSE(k.exact());
}

TEST_CASE("spectra") {
  const auto zero = parent::local_hamiltonian(MatrixC(9, 0), 3, 2);
  for (double e : ed::spectrum(ed::RealChain(zero, 3))) CHECK(std::abs(e) < 1e-14);

  const auto h2 = models::limit_hamiltonian_h2();
  const ed::ComplexChain chain(h2, 4);
  const MatrixC dense = chain.dense();
  // exp(-i theta Sy) on every site, theta = 0.7.
  Eigen::SelfAdjointEigenSolver<MatrixC> es(spin::sy());
  const VectorC phases = (es.eigenvalues().cast<cplx>() * cplx(0.0, -0.7)).array().exp();
  const MatrixC r1 = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  MatrixC r = r1;
  for (int s = 1; s < 4; ++s) r = linalg::kron(r, r1).eval();
  CHECK((r * dense * r.adjoint() - dense).norm() < 1e-10);
}

TEST_CASE("kernel overlaps") {
  const ed::ComplexChain h(models::model_II_hamiltonian(1), 6);
  CHECK(ed::overlap_with_kernel(h, amplitudes(models::model_II(0.8), 6).values) < 1e-10);
  std::mt19937 rng(11);
  std::normal_distribution<double> gauss;
  VectorC v(static_cast<Eigen::Index>(h.dimension()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = gauss(rng);
  CHECK(ed::overlap_with_kernel(h, v) > 0.5);
}

TEST_CASE("caps") {
  CHECK_THROWS_AS(ed::RealChain(models::model_II_hamiltonian(1), 13), CapExceeded);
  CHECK_THROWS_AS(ed::spectrum(ed::RealChain(models::model_II_hamiltonian(1), 9)), CapExceeded);
  CHECK_THROWS(ed::RealChain(models::model_II_hamiltonian(1), 1));
}

TEST_CASE("reports") {
  const auto r = ed::report(ed::RealChain(models::limit_hamiltonian_h1(), 4));
  CHECK(r.n_sites == 4);
  CHECK(r.kernel.lower == 56);
  CHECK(r.spectrum_head.size() == 20);
}
