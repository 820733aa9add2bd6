// SPDX-License-Identifier: MIT
// Moment assembly of the sphere identities.  Each integrand is a sum of
// products of two polynomials built from W (H, dH or ddH), optionally times
// monomials in y.  Products are integrated monomial by monomial with the
// exact even-moment formula; only monomial pairs with matching odd-exponent
// support can contribute, which keeps the N = 25 cases cheap.
#include "qcv/errors.hpp"
#include "qcv/weyl_algebra.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <unordered_map>

namespace qcv {

namespace {

// Monomial: up to 7 sorted variable indices packed into bytes 1..7,
// degree in byte 0.
using Mono = std::uint64_t;

int mono_degree(Mono m) { return static_cast<int>(m & 0xFF); }
int mono_var(Mono m, int t) { return static_cast<int>((m >> (8 * (t + 1))) & 0xFF); }

Mono make_mono(std::vector<int> vars) {
  if (vars.size() > 7) throw std::length_error("monomial degree above 7");
  std::sort(vars.begin(), vars.end());
  Mono m = vars.size();
  for (size_t t = 0; t < vars.size(); ++t) m |= static_cast<Mono>(vars[t]) << (8 * (t + 1));
  return m;
}

std::vector<int> mono_vars(Mono m) {
  std::vector<int> v(static_cast<size_t>(mono_degree(m)));
  for (int t = 0; t < mono_degree(m); ++t) v[static_cast<size_t>(t)] = mono_var(m, t);
  return v;
}

std::uint64_t parity_mask(Mono m) {
  std::uint64_t mask = 0;
  for (int t = 0; t < mono_degree(m); ++t) mask ^= (1ULL << mono_var(m, t));
  return mask;
}

// Sparse polynomial with integer coefficients.
struct IPoly {
  std::unordered_map<Mono, BigInt> terms;
  void add(Mono m, const BigInt& c) {
    if (c == 0) return;
    auto& slot = terms[m];
    slot += c;
  }
  IPoly times_vars(const std::vector<int>& extra) const {
    IPoly out;
    for (const auto& [m, c] : terms) {
      auto v = mono_vars(m);
      v.insert(v.end(), extra.begin(), extra.end());
      out.add(make_mono(v), c);
    }
    return out;
  }
};

class MomentTable {
 public:
  explicit MomentTable(int N) : N_(N) {}
  const BigRational& get(const std::vector<int>& sorted_exponents) {
    auto it = cache_.find(sorted_exponents);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(sorted_exponents, sphere_moment(N_, sorted_exponents)).first->second;
  }

 private:
  int N_;
  std::map<std::vector<int>, BigRational> cache_;
};

// Accumulates integral of P*Q grouped by moment signature.
class ProductIntegrator {
 public:
  explicit ProductIntegrator(int N) : table_(N) {}

  void add(const IPoly& P, const IPoly& Q) {
    std::unordered_map<std::uint64_t, std::vector<std::pair<Mono, const BigInt*>>> buckets;
    for (const auto& [m, c] : Q.terms) buckets[parity_mask(m)].push_back({m, &c});
    for (const auto& [ma, ca] : P.terms) {
      auto it = buckets.find(parity_mask(ma));
      if (it == buckets.end()) continue;
      for (const auto& [mb, cb] : it->second) {
        std::array<int, 64> count{};
        for (int t = 0; t < mono_degree(ma); ++t) ++count[static_cast<size_t>(mono_var(ma, t))];
        for (int t = 0; t < mono_degree(mb); ++t) ++count[static_cast<size_t>(mono_var(mb, t))];
        std::vector<int> sig;
        for (int e : count)
          if (e > 0) sig.push_back(e);
        std::sort(sig.begin(), sig.end());
        sums_[sig] += ca * *cb;
      }
    }
  }

  BigRational total() {
    BigRational s = 0;
    for (const auto& [sig, v] : sums_)
      if (v != 0) s += BigRational(v) * table_.get(sig);
    return s;
  }

 private:
  MomentTable table_;
  std::map<std::vector<int>, BigInt> sums_;
};

struct HPolys {
  int n;
  std::vector<IPoly> H;    // n*n, index i*n+j
  std::vector<IPoly> dH;   // n*n*n, index (i*n+j)*n+k  -> d_k H_ij
  std::vector<BigInt> ddH; // n^4, index ((i*n+j)*n+k)*n+l -> d_kl H_ij
};

HPolys build_polys(const WeylForm& w, bool need_h, bool need_dh, bool need_ddh) {
  const int n = w.dim();
  HPolys hp{n, {}, {}, {}};
  auto W = [&](int a, int b, int c, int d) -> const BigInt& { return w.numerator(a, b, c, d); };
  if (need_h) {
    hp.H.resize(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        IPoly& P = hp.H[static_cast<size_t>(i) * n + j];
        for (int p = 0; p < n; ++p)
          for (int q = p; q < n; ++q) {
            BigInt c = (p == q) ? BigInt(W(i, p, j, p)) : BigInt(W(i, p, j, q) + W(i, q, j, p));
            P.add(make_mono({p, q}), c);
          }
      }
  }
  if (need_dh) {
    hp.dH.resize(static_cast<size_t>(n) * n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          IPoly& P = hp.dH[(static_cast<size_t>(i) * n + j) * n + k];
          for (int q = 0; q < n; ++q) P.add(make_mono({q}), W(i, k, j, q) + W(i, q, j, k));
        }
  }
  if (need_ddh) {
    hp.ddH.resize(static_cast<size_t>(n) * n * n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l)
            hp.ddH[((static_cast<size_t>(i) * n + j) * n + k) * n + l] = W(i, k, j, l) + W(i, l, j, k);
  }
  return hp;
}

IPoly constant_poly(const BigInt& c) {
  IPoly P;
  P.add(make_mono({}), c);
  return P;
}

}  // namespace

BigRational sphere_moment(int N, const std::vector<int>& exponents) {
  int total = 0;
  BigInt num = 1;
  for (int e : exponents) {
    if (e < 0) throw std::invalid_argument("negative exponent");
    if (e % 2 != 0) return 0;
    for (int t = e - 1; t > 1; t -= 2) num *= t;
    total += e;
  }
  BigInt den = 1;
  for (int t = 0; t < total; t += 2) den *= (N + t);
  BigRational r(num, den);
  r.canonicalize();
  return r;
}

SymScalar sphere_moment_gamma(int N, const std::vector<int>& exponents) {
  int total = 0;
  std::vector<HalfInt> num;
  for (int e : exponents) {
    if (e % 2 != 0) return SymScalar();
    num.push_back(HalfInt{e + 1});
    total += e;
  }
  // Coordinates absent from the exponent list contribute Gamma(1/2) each.
  for (int t = static_cast<int>(exponents.size()); t < N; ++t) num.push_back(HalfInt{1});
  return SymScalar(2) * gamma_ratio(num, {HalfInt{total + N}});
}

const std::vector<SphereKind>& all_sphere_kinds() {
  static const std::vector<SphereKind> kinds = {
      SphereKind::H2,      SphereKind::DH2,      SphereKind::DDH2,
      SphereKind::H2_YPYQ, SphereKind::HPT_HQT,  SphereKind::DH2_YPYQ,
      SphereKind::DPH_DQH, SphereKind::H_DQH_YP, SphereKind::DDH2_YPYQ};
  return kinds;
}

std::string sphere_kind_name(SphereKind k) {
  switch (k) {
    case SphereKind::H2: return "H2";
    case SphereKind::DH2: return "dH2";
    case SphereKind::DDH2: return "ddH2";
    case SphereKind::H2_YPYQ: return "H2_ypyq";
    case SphereKind::HPT_HQT: return "Hpt_Hqt";
    case SphereKind::DH2_YPYQ: return "dH2_ypyq";
    case SphereKind::DPH_DQH: return "dpH_dqH";
    case SphereKind::H_DQH_YP: return "H_dqH_yp";
    case SphereKind::DDH2_YPYQ: return "ddH2_ypyq";
  }
  throw UnsupportedIdentityError("unknown sphere identity kind");
}

SphereKind sphere_kind_from_name(const std::string& name) {
  for (auto k : all_sphere_kinds())
    if (sphere_kind_name(k) == name) return k;
  throw UnsupportedIdentityError("unsupported sphere identity: " + name);
}

bool sphere_kind_uses_pq(SphereKind k) {
  return !(k == SphereKind::H2 || k == SphereKind::DH2 || k == SphereKind::DDH2);
}

SphereIdentity sphere_quadratic_integral(const WeylForm& w, SphereKind kind, int p, int q) {
  const int n = w.dim();
  if (sphere_kind_uses_pq(kind)) {
    if (p < 0 || q < 0 || p >= n || q >= n) throw ShapeError("sphere identity index out of range");
  } else {
    p = q = 0;
  }
  const bool need_h = kind == SphereKind::H2 || kind == SphereKind::H2_YPYQ ||
                      kind == SphereKind::HPT_HQT || kind == SphereKind::H_DQH_YP;
  const bool need_dh = kind == SphereKind::DH2 || kind == SphereKind::DH2_YPYQ ||
                       kind == SphereKind::DPH_DQH || kind == SphereKind::H_DQH_YP;
  const bool need_ddh = kind == SphereKind::DDH2 || kind == SphereKind::DDH2_YPYQ;
  HPolys hp = build_polys(w, need_h, need_dh, need_ddh);
  ProductIntegrator acc(n);
  const size_t nn = static_cast<size_t>(n);
  auto Hp = [&](int i, int j) -> const IPoly& { return hp.H[i * nn + j]; };
  auto dHp = [&](int i, int j, int k) -> const IPoly& { return hp.dH[(i * nn + j) * nn + k]; };
  auto ddH = [&](int i, int j, int k, int l) -> const BigInt& {
    return hp.ddH[((i * nn + j) * nn + k) * nn + l];
  };

  switch (kind) {
    case SphereKind::H2:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) acc.add(Hp(i, j), Hp(i, j));
      break;
    case SphereKind::DH2:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k) acc.add(dHp(i, j, k), dHp(i, j, k));
      break;
    case SphereKind::DDH2:
    case SphereKind::DDH2_YPYQ: {
      BigInt s = 0;
      for (const auto& v : hp.ddH) s += v * v;
      IPoly P = constant_poly(s);
      IPoly one = constant_poly(1);
      if (kind == SphereKind::DDH2_YPYQ) one = one.times_vars({p, q});
      acc.add(P, one);
      (void)ddH;
      break;
    }
    case SphereKind::H2_YPYQ:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) acc.add(Hp(i, j), Hp(i, j).times_vars({p, q}));
      break;
    case SphereKind::HPT_HQT:
      for (int t = 0; t < n; ++t) acc.add(Hp(p, t), Hp(q, t));
      break;
    case SphereKind::DH2_YPYQ:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k) acc.add(dHp(i, j, k), dHp(i, j, k).times_vars({p, q}));
      break;
    case SphereKind::DPH_DQH:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) acc.add(dHp(i, j, p), dHp(i, j, q));
      break;
    case SphereKind::H_DQH_YP:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) acc.add(Hp(i, j), dHp(i, j, q).times_vars({p}));
      break;
  }

  BigInt den2 = w.denominator() * w.denominator();
  SphereIdentity out;
  out.kind = kind;
  out.p = p;
  out.q = q;
  out.lhs = SymScalar(acc.total() / BigRational(den2)) * SymScalar::sphere_symbol(n);

  // Printed right-hand sides.
  const BigRational Nq(n);
  const BigRational Qn = weyl_quad_norm(w);
  BigRational Mpq = 0;
  if (sphere_kind_uses_pq(kind) && kind != SphereKind::DDH2_YPYQ) Mpq = weyl_m_matrix(w)[p][q];
  const BigRational delta = (p == q) ? 1 : 0;
  BigRational c;
  switch (kind) {
    case SphereKind::H2: c = Qn / (2 * Nq * (Nq + 2)); break;
    case SphereKind::DH2: c = Qn / Nq; break;
    case SphereKind::DDH2: c = Qn; break;
    case SphereKind::H2_YPYQ:
      c = 2 * Mpq / (Nq * (Nq + 2) * (Nq + 4)) + Qn * delta / (2 * Nq * (Nq + 2) * (Nq + 4));
      break;
    case SphereKind::HPT_HQT: c = Mpq / (2 * Nq * (Nq + 2)); break;
    case SphereKind::DH2_YPYQ:
      c = 2 * Mpq / (Nq * (Nq + 2)) + Qn * delta / (Nq * (Nq + 2));
      break;
    case SphereKind::DPH_DQH: c = Mpq / Nq; break;
    case SphereKind::H_DQH_YP: c = Mpq / (Nq * (Nq + 2)); break;
    case SphereKind::DDH2_YPYQ: c = Qn * delta / Nq; break;
  }
  out.rhs = SymScalar(c) * SymScalar::sphere_symbol(n);
  return out;
}

double sphere_integrand(const std::vector<double>& w, int N, SphereKind kind, const double* y,
                        int p, int q) {
  const size_t n = static_cast<size_t>(N);
  auto W = [&](size_t a, size_t b, size_t c, size_t d) { return w[((a * n + b) * n + c) * n + d]; };
  auto H = [&](size_t i, size_t j) {
    double s = 0;
    for (size_t a = 0; a < n; ++a)
      for (size_t b = 0; b < n; ++b) s += W(i, a, j, b) * y[a] * y[b];
    return s;
  };
  auto dH = [&](size_t i, size_t j, size_t k) {
    double s = 0;
    for (size_t b = 0; b < n; ++b) s += (W(i, k, j, b) + W(i, b, j, k)) * y[b];
    return s;
  };
  auto ddH = [&](size_t i, size_t j, size_t k, size_t l) { return W(i, k, j, l) + W(i, l, j, k); };
  const size_t P = static_cast<size_t>(p), Q = static_cast<size_t>(q);
  double s = 0;
  switch (kind) {
    case SphereKind::H2:
    case SphereKind::H2_YPYQ:
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
          double h = H(i, j);
          s += h * h;
        }
      if (kind == SphereKind::H2_YPYQ) s *= y[P] * y[Q];
      return s;
    case SphereKind::DH2:
    case SphereKind::DH2_YPYQ:
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
          for (size_t k = 0; k < n; ++k) {
            double v = dH(i, j, k);
            s += v * v;
          }
      if (kind == SphereKind::DH2_YPYQ) s *= y[P] * y[Q];
      return s;
    case SphereKind::DDH2:
    case SphereKind::DDH2_YPYQ:
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
          for (size_t k = 0; k < n; ++k)
            for (size_t l = 0; l < n; ++l) {
              double v = ddH(i, j, k, l);
              s += v * v;
            }
      if (kind == SphereKind::DDH2_YPYQ) s *= y[P] * y[Q];
      return s;
    case SphereKind::HPT_HQT:
      for (size_t t = 0; t < n; ++t) s += H(P, t) * H(Q, t);
      return s;
    case SphereKind::DPH_DQH:
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) s += dH(i, j, P) * dH(i, j, Q);
      return s;
    case SphereKind::H_DQH_YP:
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) s += H(i, j) * dH(i, j, Q);
      return s * y[P];
  }
  throw UnsupportedIdentityError("unknown sphere identity kind");
}

}  // namespace qcv
