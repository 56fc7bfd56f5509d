#pragma once

#include "mpschain/ed.hpp"
#include "mpschain/parent.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mpschain::models {

/// Spin-1 labels in basis order: m = +1, 0, -1.
const std::vector<std::string>& spin1_labels();

/// z-symmetric, parity-symmetric D = 3 family: A_1 has ones on the
/// superdiagonal, A_0 = diag(g, h, g), A_-1 has c on the subdiagonal.
MpsFamily general_family(double g, double h, double c);

/// h = sqrt(2) g, c = 1. Single kernel vector |00> - g^2 (|1,-1> + |-1,1>).
MpsFamily model_I(double g);
/// h = g, c = 1, so A_0 = g I. Parent Hamiltonian independent of g.
MpsFamily model_II(double g);
/// h = sigma g, c = 1 (sigma = +-1).
MpsFamily model_II_sigma(double g, int sigma);
/// Spin-1/2 bond AKLT matrices: A_0 = diag(1, -1), A_1 = -sqrt2 |0><1|, A_-1 = sqrt2 |1><0|.
MpsFamily aklt();

/// Determinant of the 9 x 9 two-site word matrix of general_family.
double det_word_matrix(double g, double h, double c);
/// Closed form of the same determinant: (g^2 - h^2)^2 (2 g^2 - h^2) c^6.
double det_closed_form(double g, double h, double c);

struct ClosedFormCorrelatorsI {
  double g = 0.0;
  double gamma = 0.0;
  double sz2 = 0.0;
  double sx2 = 0.0;
  double g_par = 0.0;
  double g_perp = 0.0;
  double xi_par = 0.0;
  double xi_perp = 0.0;
  bool degenerate_limit = false;  ///< g == 0: xi_par and g_perp reported as 0
};

/// Thermodynamic one- and two-point data of model I, with
/// <Sz_1 Sz_r> = g_par exp(-(r - 2) / xi_par) for sites 1 and r.
ClosedFormCorrelatorsI closed_form_correlators_I(double g);

/// Normalized |00> - g^2 (|1,-1> + |-1,1>) in the canonical phase.
VectorC model_I_kernel_vector(double g);
/// Unit-coupling projector onto model_I_kernel_vector, checked against the
/// word kernel. For g != 0 that kernel is exactly this vector.
LocalHamiltonian model_I_hamiltonian(double g);
/// Coupling that reproduces the 1/(1 - g^2)^2 |e><e| normalization with the
/// unnormalized kernel vector; diverges at g = 1.
double model_I_legacy_coupling(double g);
/// (|01> - sigma|10>)/sqrt2 and (|0,-1> - sigma|-1,0>)/sqrt2 projectors.
LocalHamiltonian model_II_hamiltonian(int sigma = 1);

/// (Sz^2 - 1) (x) (Sz^2 - 1) = |00><00|.
LocalHamiltonian limit_hamiltonian_h1();
/// (S.S)^2 - 1 on two sites, i.e. 3 |singlet><singlet|.
LocalHamiltonian limit_hamiltonian_h2();

/// Two-site spin operators for the decomposition family.
MatrixC s_dot_s();

/// Names of the chain operators used by spin_form_decompose. "const" is the
/// identity on the whole chain; "sz2" is a one-site sum; the rest are bond
/// sums over the periodic chain.
const std::vector<std::string>& spin_form_terms();

struct SpinFormDecomposition {
  int n_sites = 0;
  std::map<std::string, double> coefficients;
  double residual = 0.0;  ///< Frobenius norm of H - sum c_t O_t
  bool representable = false;
  std::string note;
};

/// Least-squares expansion of the full chain Hamiltonian built from h.
SpinFormDecomposition spin_form_decompose(const LocalHamiltonian& h, int n_sites = 4, double tol = 1e-10);

struct SpinFormComparison {
  double scale = 0.0;  ///< s in reference ~ s * decomposition
  double max_deviation = 0.0;
  std::map<std::string, double> deviation;  ///< reference - s * coefficient
};

/// Without a scale the least-squares best one is used.
SpinFormComparison compare_spin_form(const SpinFormDecomposition& dec,
                                     const std::map<std::string, double>& reference,
                                     std::optional<double> scale = std::nullopt);

/// Reference spin form of the model II chain:
/// sum 2 Sz^2 - {S.S', Sz Sz'} - S.S' + Sz Sz'.
std::map<std::string, double> model_II_reference_spin_form();
/// Reference spin form of the model I chain at coupling u = g^2/(1-g^2):
/// (1-u^2) N + sum Sz^2 Sz'^2 - 2(1+2u) Sz^2 + u^2 (S.S')^2 + u {S.S', Sz Sz'}.
std::map<std::string, double> model_I_reference_spin_form(double g, int n_sites);

/// Number of ring configurations with no two adjacent zeros: tr(A^N) for
/// the adjacency matrix [[1,1,1],[1,0,1],[1,1,1]].
boost::multiprecision::cpp_int adjacency_ground_count(int n_sites);

struct SigmaEquivalence {
  std::vector<double> spectrum_plus;
  std::vector<double> spectrum_minus;
  double max_deviation = 0.0;     ///< sorted spectra
  double local_residual = 0.0;    ///< h(-1) vs (1 (x) Rz(pi)) h(+1) (1 (x) Rz(pi))^-1
  double global_residual = 0.0;   ///< H(-1) vs R H(+1) R^-1, R = Rz(pi) on odd sites
};

SigmaEquivalence sigma_equivalence_check(int n_sites);

/// exp(-i pi Sz) on one spin-1 site.
MatrixC rz_pi();

}  // namespace mpschain::models
