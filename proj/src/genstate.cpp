#include "mpschain/genstate.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace mpschain::genstate {

namespace {

using Int3 = std::array<std::array<std::int64_t, 3>, 3>;

constexpr Int3 kUp{{{0, 1, 0}, {0, 0, 1}, {0, 0, 0}}};
constexpr Int3 kDown{{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}};
constexpr Int3 kId{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};

Int3 mul3(const Int3& a, const Int3& b) {
  Int3 c{};
  for (int i = 0; i < 3; ++i)
    for (int l = 0; l < 3; ++l)
      if (a[i][l] != 0)
        for (int j = 0; j < 3; ++j) c[i][j] += a[i][l] * b[l][j];
  return c;
}

IntMat9 kron3(const Int3& a, const Int3& b) {
  IntMat9 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) m(3 * i + k, 3 * j + l) = a[i][j] * b[k][l];
  return m;
}

void require_even(int n_sites, int zeros) {
  if (n_sites < 2 || n_sites % 2 != 0)
    throw std::invalid_argument("N must be even: the odd-N sectors of this family vanish");
  if (zeros < 0 || zeros > n_sites)
    throw std::invalid_argument("need 0 <= n <= N");
  if (zeros % 2 != 0)
    throw std::invalid_argument("n must be even: sectors with an odd number of zeros vanish identically");
}

void require_separation(int n_sites, int r) {
  if (r < 2 || r > n_sites - 1) throw std::invalid_argument("need 2 <= r <= N - 1");
}

std::size_t ipow3(int e) {
  std::size_t out = 1;
  for (int i = 0; i < e; ++i) out *= 3;
  return out;
}

// One-site integer operators in the (+1, 0, -1) basis; Sx = T / sqrt2.
constexpr Int3 kSz{{{1, 0, 0}, {0, 0, 0}, {0, 0, -1}}};
constexpr Int3 kSz2{{{1, 0, 0}, {0, 0, 0}, {0, 0, 1}}};
constexpr Int3 kT{{{0, 1, 0}, {1, 0, 1}, {0, 1, 0}}};

// <psi| O_a (site a) O_b (site b) |psi>, sites 1-based; b == 0 means no second operator.
cpp_int direct_matrix_element(const PsiN& psi, const Int3& op_a, int a, const Int3& op_b, int b) {
  const std::size_t sa = ipow3(psi.n_sites - a);
  const std::size_t sb = b > 0 ? ipow3(psi.n_sites - b) : 0;
  cpp_int total = 0;
  for (const auto& [idx, amp] : psi.amplitudes) {
    const auto da = static_cast<int>((idx / sa) % 3);
    const int db = b > 0 ? static_cast<int>((idx / sb) % 3) : 0;
    for (int ra = 0; ra < 3; ++ra) {
      const std::int64_t ea = op_a[ra][da];
      if (ea == 0) continue;
      for (int rb = 0; rb < 3; ++rb) {
        const std::int64_t eb = b > 0 ? op_b[rb][db] : (rb == 0 ? 1 : 0);
        if (eb == 0) continue;
        std::size_t target = idx - static_cast<std::size_t>(da) * sa + static_cast<std::size_t>(ra) * sa;
        if (b > 0) target = target - static_cast<std::size_t>(db) * sb + static_cast<std::size_t>(rb) * sb;
        const auto it = psi.amplitudes.find(target);
        if (it == psi.amplitudes.end()) continue;
        total += cpp_int(it->second) * ea * eb * amp;
      }
    }
  }
  return total;
}

}  // namespace

VectorC PsiN::to_vector() const {
  VectorC v = VectorC::Zero(static_cast<Eigen::Index>(ipow3(n_sites)));
  for (const auto& [idx, amp] : amplitudes) v(static_cast<Eigen::Index>(idx)) = static_cast<double>(amp);
  return v;
}

std::string PsiN::label(std::size_t index) const {
  static const char* names[] = {"1", "0", "-1"};
  std::string out;
  for (int s = n_sites - 1; s >= 0; --s) {
    const std::size_t digit = (index / ipow3(s)) % 3;
    if (!out.empty()) out += ',';
    out += names[digit];
  }
  return out;
}

PsiN psi_n_expand(int n_sites, int zeros) {
  require_even(n_sites, zeros);
  const int cap = max_sites(kExpandMaxSites);
  if (n_sites > cap) throw CapExceeded("psi_n_expand: N = " + std::to_string(n_sites) + " exceeds cap " + std::to_string(cap));
  PsiN psi;
  psi.n_sites = n_sites;
  psi.zeros = zeros;
  const std::size_t dim = ipow3(n_sites);
  std::vector<int> digits(static_cast<std::size_t>(n_sites));
  for (std::size_t idx = 0; idx < dim; ++idx) {
    std::size_t rem = idx;
    int nz = 0, balance = 0;
    for (int s = n_sites - 1; s >= 0; --s) {
      const int dgt = static_cast<int>(rem % 3);
      rem /= 3;
      digits[static_cast<std::size_t>(s)] = dgt;
      if (dgt == 1) ++nz;
      if (dgt == 0) ++balance;
      if (dgt == 2) --balance;
    }
    if (nz != zeros || balance != 0) continue;
    Int3 p = kId;
    for (int dgt : digits) p = mul3(p, dgt == 0 ? kUp : dgt == 1 ? kId : kDown);
    const std::int64_t tr = p[0][0] + p[1][1] + p[2][2];
    if (tr != 0) psi.amplitudes[idx] = tr;
  }
  return psi;
}

IntMat9 IntMat9::identity() {
  IntMat9 m;
  for (int i = 0; i < 9; ++i) m(i, i) = 1;
  return m;
}

IntMat9 IntMat9::operator*(const IntMat9& o) const {
  IntMat9 c;
  for (int i = 0; i < 9; ++i)
    for (int l = 0; l < 9; ++l) {
      const cpp_int& x = (*this)(i, l);
      if (x == 0) continue;
      for (int j = 0; j < 9; ++j)
        if (o(l, j) != 0) c(i, j) += x * o(l, j);
    }
  return c;
}

IntMat9 IntMat9::operator+(const IntMat9& o) const {
  IntMat9 c;
  for (std::size_t i = 0; i < a.size(); ++i) c.a[i] = a[i] + o.a[i];
  return c;
}

IntMat9 IntMat9::operator-(const IntMat9& o) const {
  IntMat9 c;
  for (std::size_t i = 0; i < a.size(); ++i) c.a[i] = a[i] - o.a[i];
  return c;
}

cpp_int IntMat9::trace() const {
  cpp_int t = 0;
  for (int i = 0; i < 9; ++i) t += (*this)(i, i);
  return t;
}

MatrixC IntMat9::to_double() const {
  MatrixC m(9, 9);
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) m(i, j) = (*this)(i, j).convert_to<double>();
  return m;
}

VTraceTable::VTraceTable(int max_power) {
  if (max_power < 0) throw std::invalid_argument("VTraceTable: negative power");
  const IntMat9 upup = kron3(kUp, kUp), dndn = kron3(kDown, kDown);
  v_ = upup + dndn;
  u_ = upup - dndn;
  Int3 x{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) x[i][j] = kUp[i][j] + kDown[i][j];
  x1_ = kron3(x, kId);
  x2_ = kron3(kId, x);
  powers_.reserve(static_cast<std::size_t>(max_power) + 1);
  powers_.push_back(IntMat9::identity());
  for (int m = 1; m <= max_power; ++m) powers_.push_back(powers_.back() * v_);
}

const IntMat9& VTraceTable::v_power(int m) const {
  if (m < 0 || m > max_power()) throw std::out_of_range("VTraceTable: power " + std::to_string(m) + " not tabulated");
  return powers_[static_cast<std::size_t>(m)];
}

cpp_int binomial(int a, int b) {
  if (a < 0 || b < 0 || b > a) return 0;
  b = std::min(b, a - b);
  cpp_int out = 1;
  for (int i = 1; i <= b; ++i) out = out * (a - b + i) / i;
  return out;
}

Channel parse_channel(const std::string& name) {
  if (name == "sz2") return Channel::sz2;
  if (name == "sperp2") return Channel::sperp2;
  if (name == "sz2sz2") return Channel::sz2sz2;
  if (name == "zz") return Channel::zz;
  if (name == "xx") return Channel::xx;
  throw std::invalid_argument("unknown channel '" + name + "' (sz2, sperp2, sz2sz2, zz, xx)");
}

std::string channel_name(Channel c) {
  switch (c) {
    case Channel::sz2: return "sz2";
    case Channel::sperp2: return "sperp2";
    case Channel::sz2sz2: return "sz2sz2";
    case Channel::zz: return "zz";
    case Channel::xx: return "xx";
  }
  return "?";
}

cpp_int psi_n_norm(int n_sites, int zeros) {
  require_even(n_sites, zeros);
  return binomial(n_sites, zeros) * VTraceTable(n_sites - zeros).trace_v(n_sites - zeros);
}

cpp_rational corr_sz2(int n_sites, int zeros) {
  require_even(n_sites, zeros);
  return cpp_rational(n_sites - zeros, n_sites);
}

cpp_rational corr_sperp2(int n_sites, int zeros) {
  require_even(n_sites, zeros);
  return cpp_rational(n_sites + zeros, 2 * n_sites);
}

cpp_rational corr_sz2sz2(int n_sites, int zeros) {
  require_even(n_sites, zeros);
  return cpp_rational(cpp_int(n_sites - zeros) * (n_sites - zeros - 1), cpp_int(n_sites) * (n_sites - 1));
}

cpp_rational corr_zz(int n_sites, int zeros, int r) {
  require_even(n_sites, zeros);
  require_separation(n_sites, r);
  const VTraceTable t(n_sites);
  cpp_int num = 0;
  for (int k = 0; k <= std::min(r - 2, zeros); ++k) {
    const cpp_int w = binomial(r - 2, k) * binomial(n_sites - r, zeros - k);
    if (w == 0) continue;
    num += w * (t.u() * t.v_power(r - 2 - k) * t.u() * t.v_power(n_sites - r - zeros + k)).trace();
  }
  const cpp_int den = binomial(n_sites, zeros) * t.trace_v(n_sites - zeros);
  if (den == 0) throw DegenerateNorm("psi_n has zero norm");
  return cpp_rational(num, den);
}

cpp_rational corr_xx(int n_sites, int zeros, int r) {
  require_even(n_sites, zeros);
  require_separation(n_sites, r);
  const VTraceTable t(n_sites);
  cpp_int num = 0;
  for (int k = 0; k <= std::min(r - 2, zeros - 1); ++k) {
    const cpp_int w = binomial(r - 2, k) * binomial(n_sites - r, zeros - 1 - k);
    if (w == 0) continue;
    const IntMat9& mid = t.v_power(r - 2 - k);
    const IntMat9& rest = t.v_power(n_sites - r - zeros + 1 + k);
    num += w * ((t.x2() * mid * t.x1() + t.x1() * mid * t.x2()) * rest).trace();
  }
  const cpp_int den = 2 * binomial(n_sites, zeros) * t.trace_v(n_sites - zeros);
  if (den == 0) throw DegenerateNorm("psi_n has zero norm");
  return cpp_rational(num, den);
}

cpp_rational corr(Channel c, int n_sites, int zeros, int r) {
  switch (c) {
    case Channel::sz2: return corr_sz2(n_sites, zeros);
    case Channel::sperp2: return corr_sperp2(n_sites, zeros);
    case Channel::sz2sz2: return corr_sz2sz2(n_sites, zeros);
    case Channel::zz: return corr_zz(n_sites, zeros, r);
    case Channel::xx: return corr_xx(n_sites, zeros, r);
  }
  throw std::invalid_argument("unknown channel");
}

cpp_int direct_norm(const PsiN& psi) {
  cpp_int s = 0;
  for (const auto& [idx, amp] : psi.amplitudes) s += cpp_int(amp) * amp;
  return s;
}

cpp_int direct_overlap(const PsiN& a, const PsiN& b) {
  cpp_int s = 0;
  for (const auto& [idx, amp] : a.amplitudes) {
    const auto it = b.amplitudes.find(idx);
    if (it != b.amplitudes.end()) s += cpp_int(amp) * it->second;
  }
  return s;
}

cpp_rational direct_corr(const PsiN& psi, Channel c, int r) {
  const cpp_int nrm = direct_norm(psi);
  if (nrm == 0) throw DegenerateNorm("psi_n has zero norm");
  switch (c) {
    case Channel::sz2:
      return cpp_rational(direct_matrix_element(psi, kSz2, 1, kId, 0), nrm);
    case Channel::sperp2:
      return cpp_rational(direct_matrix_element(psi, mul3(kT, kT), 1, kId, 0), 2 * nrm);
    case Channel::sz2sz2:
      require_separation(psi.n_sites, r);
      return cpp_rational(direct_matrix_element(psi, kSz2, 1, kSz2, r), nrm);
    case Channel::zz:
      require_separation(psi.n_sites, r);
      return cpp_rational(direct_matrix_element(psi, kSz, 1, kSz, r), nrm);
    case Channel::xx:
      require_separation(psi.n_sites, r);
      return cpp_rational(direct_matrix_element(psi, kT, 1, kT, r), 2 * nrm);
  }
  throw std::invalid_argument("unknown channel");
}

ThermoCorr thermo_corr(Channel c, int r) {
  if (r < 2) throw std::invalid_argument("need r >= 2");
  const VTraceTable t(r);
  const MatrixC v = t.v().to_double();
  ThermoCorr out;
  switch (c) {
    case Channel::zz: {
      const MatrixC num = (t.u() * t.v_power(r - 2) * t.u()).to_double();
      const Limit lim = thermo_trace_ratio(num, v, r);
      out.value = lim.value;
      out.coefficient = lim.value;
      out.converged = lim.converged;
      out.note = lim.note;
      return out;
    }
    case Channel::xx: {
      const IntMat9& mid = t.v_power(r - 2);
      const MatrixC omega = (t.x2() * mid * t.x1() + t.x1() * mid * t.x2()).to_double();
      const Limit lim = thermo_trace_ratio(omega, v, r - 1);
      out.coefficient = 0.5 * lim.value;
      out.converged = lim.converged && std::isfinite(out.coefficient);
      // The leading k = 0 term carries C(N - r, n - 1) / C(N, n) ~ n / N.
      out.value = out.converged ? 0.0 : std::numeric_limits<double>::quiet_NaN();
      out.note = lim.note.empty() ? "value = (n/N) * coefficient, N -> infinity" : lim.note;
      return out;
    }
    default:
      break;
  }
  throw std::invalid_argument("thermo_corr: only zz and xx are distance dependent");
}

cpp_int degeneracy_lower_bound(int n_sites) {
  if (n_sites < 0) throw std::invalid_argument("negative N");
  return (cpp_int(1) << n_sites) + n_sites;
}

double to_double(const cpp_rational& q) { return q.convert_to<double>(); }

void write_csv(std::ostream& os, const std::vector<CorrRow>& rows) {
  os << "N,n,r,channel,value_num,value_den,value_float\n";
  char buf[64];
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof buf, "%.17g", to_double(row.value));
    os << row.n_sites << ',' << row.zeros << ',' << row.r << ',' << channel_name(row.channel) << ','
       << numerator(row.value) << ',' << denominator(row.value) << ',' << buf << '\n';
  }
}

}  // namespace mpschain::genstate
