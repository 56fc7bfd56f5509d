#pragma once

#include "mpschain/mps.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace mpschain::genstate {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

/// Coefficient of g^n in the model II state with A_0 = g 1: integer
/// amplitudes on strings with exactly n zeros, keyed by basis index
/// (site 1 most significant, digits 0: +1, 1: 0, 2: -1).
struct PsiN {
  int n_sites = 0;
  int zeros = 0;
  std::map<std::size_t, std::int64_t> amplitudes;

  VectorC to_vector() const;
  std::string label(std::size_t index) const;
};

constexpr int kExpandMaxSites = 10;

/// Enumerates every string with n zeros and takes its integer word trace.
/// N and n must be even: the odd-zero sectors vanish identically.
PsiN psi_n_expand(int n_sites, int zeros);

/// Exact 9 x 9 integer matrix.
struct IntMat9 {
  std::array<cpp_int, 81> a{};
  cpp_int& operator()(int i, int j) { return a[static_cast<std::size_t>(9 * i + j)]; }
  const cpp_int& operator()(int i, int j) const { return a[static_cast<std::size_t>(9 * i + j)]; }
  static IntMat9 identity();
  IntMat9 operator*(const IntMat9& o) const;
  IntMat9 operator+(const IntMat9& o) const;
  IntMat9 operator-(const IntMat9& o) const;
  cpp_int trace() const;
  MatrixC to_double() const;
};

/// V = A1 (x) A1 + A-1 (x) A-1, U = A1 (x) A1 - A-1 (x) A-1, X = A1 + A-1
/// with X1 = X (x) 1 on the bra factor and X2 = 1 (x) X on the ket factor.
/// Powers of V are precomputed up to max_power and never change afterwards.
class VTraceTable {
 public:
  explicit VTraceTable(int max_power);

  int max_power() const { return static_cast<int>(powers_.size()) - 1; }
  const IntMat9& v() const { return v_; }
  const IntMat9& u() const { return u_; }
  const IntMat9& x1() const { return x1_; }
  const IntMat9& x2() const { return x2_; }
  const IntMat9& v_power(int m) const;
  cpp_int trace_v(int m) const { return v_power(m).trace(); }

 private:
  IntMat9 v_, u_, x1_, x2_;
  std::vector<IntMat9> powers_;
};

cpp_int binomial(int a, int b);  ///< zero unless 0 <= b <= a

enum class Channel { sz2, sperp2, sz2sz2, zz, xx };

Channel parse_channel(const std::string& name);
std::string channel_name(Channel c);

/// C(N, n) tr(V^(N - n)).
cpp_int psi_n_norm(int n_sites, int zeros);

cpp_rational corr_sz2(int n_sites, int zeros);
cpp_rational corr_sperp2(int n_sites, int zeros);
cpp_rational corr_sz2sz2(int n_sites, int zeros);
/// <Sz_1 Sz_r> / <psi_n|psi_n>, sites 1 and r (r = 2 is adjacent).
cpp_rational corr_zz(int n_sites, int zeros, int r);
/// <Sx_1 Sx_r> / <psi_n|psi_n>.
cpp_rational corr_xx(int n_sites, int zeros, int r);

/// Dispatch on channel; r is ignored for the one-site channels and for sz2sz2.
cpp_rational corr(Channel c, int n_sites, int zeros, int r);

/// Same quantities computed directly on the expanded state.
cpp_int direct_norm(const PsiN& psi);
cpp_rational direct_corr(const PsiN& psi, Channel c, int r);
cpp_int direct_overlap(const PsiN& a, const PsiN& b);

struct ThermoCorr {
  double value = 0.0;
  double coefficient = 0.0;  ///< xx: limit of N / n times the correlator
  bool converged = true;
  std::string note;
};

/// Fixed n, N -> infinity along even N, from the dominant eigenpairs of V.
ThermoCorr thermo_corr(Channel c, int r);

/// 2^N + N.
cpp_int degeneracy_lower_bound(int n_sites);

struct CorrRow {
  int n_sites = 0;
  int zeros = 0;
  int r = 0;
  Channel channel = Channel::zz;
  cpp_rational value;
};

void write_csv(std::ostream& os, const std::vector<CorrRow>& rows);

double to_double(const cpp_rational& q);

}  // namespace mpschain::genstate
