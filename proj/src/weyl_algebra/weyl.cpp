// SPDX-License-Identifier: MIT
#include "qcv/errors.hpp"
#include "qcv/weyl_algebra.hpp"

#include <limits>
#include <random>

namespace qcv {

RawTensor4::RawTensor4(int n) : dim(n), entries(static_cast<size_t>(n) * n * n * n, 0) {}

BigRational& RawTensor4::at(int i, int k, int j, int l) {
  return entries[((static_cast<size_t>(i) * dim + k) * dim + j) * dim + l];
}

const BigRational& RawTensor4::at(int i, int k, int j, int l) const {
  return entries[((static_cast<size_t>(i) * dim + k) * dim + j) * dim + l];
}

WeylForm::WeylForm(int dim, std::vector<BigInt> numerators, BigInt denominator)
    : dim_(dim), num_(std::move(numerators)), den_(std::move(denominator)) {
  if (num_.size() != static_cast<size_t>(dim) * dim * dim * dim)
    throw ShapeError("WeylForm numerator array has the wrong size");
  if (den_ <= 0) throw std::invalid_argument("WeylForm denominator must be positive");
  // Reduce by the gcd of all numerators and the denominator.
  BigInt g = den_;
  for (const auto& n : num_) {
    if (g == 1) break;
    if (n != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  if (g != 1) {
    for (auto& n : num_) n /= g;
    den_ /= g;
  }
  bool fits = true;
  for (const auto& n : num_)
    if (!n.fits_slong_p() || abs(n) > (1L << 30)) {
      fits = false;
      break;
    }
  if (fits) {
    small_.resize(num_.size());
    for (size_t t = 0; t < num_.size(); ++t) small_[t] = num_[t].get_si();
  }
}

BigRational WeylForm::entry(int i, int k, int j, int l) const {
  BigRational r(num_[idx(i, k, j, l)], den_);
  r.canonicalize();
  return r;
}

const BigInt& WeylForm::numerator(int i, int k, int j, int l) const {
  return num_[idx(i, k, j, l)];
}

bool WeylForm::is_zero() const {
  for (const auto& n : num_)
    if (n != 0) return false;
  return true;
}

std::vector<double> WeylForm::to_double() const {
  std::vector<double> out(num_.size());
  double d = den_.get_d();
  for (size_t t = 0; t < num_.size(); ++t) out[t] = num_[t].get_d() / d;
  return out;
}

WeylForm WeylForm::scaled(const BigRational& c) const {
  std::vector<BigInt> n = num_;
  for (auto& x : n) x *= c.get_num();
  BigInt d = den_ * c.get_den();
  if (c == 0) d = 1;
  return WeylForm(dim_, std::move(n), std::move(d));
}

bool WeylForm::operator==(const WeylForm& o) const {
  return dim_ == o.dim_ && den_ == o.den_ && num_ == o.num_;
}

bool WeylForm::antisymmetric() const {
  const int n = dim_;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
          const BigInt& w = num_[idx(i, k, j, l)];
          if (w != -num_[idx(k, i, j, l)] || w != -num_[idx(i, k, l, j)]) return false;
        }
  return true;
}

bool WeylForm::pair_symmetric() const {
  const int n = dim_;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l)
          if (num_[idx(i, k, j, l)] != num_[idx(j, l, i, k)]) return false;
  return true;
}

bool WeylForm::first_bianchi() const {
  const int n = dim_;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l)
          if (num_[idx(i, k, j, l)] + num_[idx(i, j, l, k)] + num_[idx(i, l, k, j)] != 0)
            return false;
  return true;
}

bool WeylForm::trace_free() const {
  const int n = dim_;
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      BigInt s = 0;
      for (int i = 0; i < n; ++i) s += num_[idx(i, k, i, l)];
      if (s != 0) return false;
    }
  return true;
}

// Integer form of the projection.  With T integral:
//   P = T - T_kijl - T_iklj + T_kilj                    (4 x antisymmetrized)
//   Q = P + P_jlik                                      (8 x pair-symmetrized)
//   R = 2Q - Q_iljk - Q_ijlk                            (24 x Bianchi-projected)
// and with Ric = sum_a R_abad, s = tr Ric the Weyl part is
//   [2(N-1)(N-2) R - KN(2(N-1) Ric - s g, g)] / (24 * 2(N-1)(N-2)),
// KN(h, g)_abcd = h_ac g_bd + h_bd g_ac - h_ad g_bc - h_bc g_ad.
WeylForm project_weyl(const RawTensor4& raw) {
  const int n = raw.dim;
  if (n < 4) throw DimensionError("project_weyl requires N >= 4 (Weyl class is trivial below)");
  if (raw.entries.size() != static_cast<size_t>(n) * n * n * n)
    throw ShapeError("raw tensor does not have shape N^4");
  BigInt lcd = 1;
  for (const auto& e : raw.entries) mpz_lcm(lcd.get_mpz_t(), lcd.get_mpz_t(), e.get_den_mpz_t());
  const size_t total = raw.entries.size();
  auto id = [n](int a, int b, int c, int d) {
    return ((static_cast<size_t>(a) * n + b) * n + c) * n + d;
  };
  std::vector<BigInt> T(total);
  for (size_t t = 0; t < total; ++t)
    T[t] = raw.entries[t].get_num() * (lcd / raw.entries[t].get_den());

  std::vector<BigInt> P(total), Q(total), R(total);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
          P[id(a, b, c, d)] = T[id(a, b, c, d)] - T[id(b, a, c, d)] - T[id(a, b, d, c)] +
                              T[id(b, a, d, c)];
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) Q[id(a, b, c, d)] = P[id(a, b, c, d)] + P[id(c, d, a, b)];
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
          R[id(a, b, c, d)] = 2 * Q[id(a, b, c, d)] - Q[id(a, d, b, c)] - Q[id(a, c, d, b)];

  std::vector<BigInt> ric(static_cast<size_t>(n) * n, 0);
  BigInt sc = 0;
  for (int b = 0; b < n; ++b)
    for (int d = 0; d < n; ++d) {
      BigInt s = 0;
      for (int a = 0; a < n; ++a) s += R[id(a, b, a, d)];
      ric[static_cast<size_t>(b) * n + d] = s;
    }
  for (int b = 0; b < n; ++b) sc += ric[static_cast<size_t>(b) * n + b];
  const long two_n1 = 2L * (n - 1);
  const long scale = two_n1 * (n - 2);
  auto hh = [&](int a, int c) {
    BigInt v = two_n1 * ric[static_cast<size_t>(a) * n + c];
    if (a == c) v -= sc;
    return v;
  };
  std::vector<BigInt> out(total);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          BigInt v = scale * R[id(a, b, c, d)];
          if (b == d) v -= hh(a, c);
          if (a == c) v -= hh(b, d);
          if (b == c) v += hh(a, d);
          if (a == d) v += hh(b, c);
          out[id(a, b, c, d)] = v;
        }
  return WeylForm(n, std::move(out), BigInt(24 * scale) * lcd);
}

RawTensor4 random_raw_tensor(int N, std::uint64_t seed) {
  RawTensor4 t(N);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-9, 9);
  for (auto& e : t.entries) e = dist(rng);
  return t;
}

WeylForm random_weyl(int N, std::uint64_t seed) {
  return project_weyl(random_raw_tensor(N, seed));
}

WeylForm default_weyl(int N) {
  RawTensor4 t(N);
  t.at(0, 1, 0, 1) = 1;
  return project_weyl(t);
}

WeylForm embed_weyl(const WeylForm& w, int N) {
  const int k = w.dim();
  if (N < k) throw DimensionError("embed_weyl target dimension is smaller than the source");
  std::vector<BigInt> num(static_cast<size_t>(N) * N * N * N, 0);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int c = 0; c < k; ++c)
        for (int d = 0; d < k; ++d)
          num[((static_cast<size_t>(a) * N + b) * N + c) * N + d] = w.numerator(a, b, c, d);
  return WeylForm(N, std::move(num), w.denominator());
}

BigRational inner_product(const RawTensor4& a, const RawTensor4& b) {
  if (a.dim != b.dim) throw ShapeError("inner_product dimension mismatch");
  BigRational s = 0;
  for (size_t t = 0; t < a.entries.size(); ++t)
    if (a.entries[t] != 0 && b.entries[t] != 0) s += a.entries[t] * b.entries[t];
  return s;
}

RawTensor4 to_raw(const WeylForm& w) {
  const int n = w.dim();
  RawTensor4 t(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) t.at(a, b, c, d) = w.entry(a, b, c, d);
  return t;
}

std::vector<std::vector<BigRational>> h_matrix(const WeylForm& w,
                                               const std::vector<BigRational>& y) {
  const int n = w.dim();
  if (static_cast<int>(y.size()) != n) throw ShapeError("h_matrix: y has the wrong length");
  std::vector<std::vector<BigRational>> H(n, std::vector<BigRational>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      BigRational s = 0;
      for (int p = 0; p < n; ++p) {
        if (y[p] == 0) continue;
        for (int q = 0; q < n; ++q)
          if (y[q] != 0 && w.numerator(i, p, j, q) != 0)
            s += BigRational(w.numerator(i, p, j, q)) * y[p] * y[q];
      }
      H[i][j] = s / BigRational(w.denominator());
    }
  return H;
}

namespace {

// S_ikjl = W_ikjl + W_iljk as machine integers (numerators over den).
std::vector<long long> symmetrized_small(const WeylForm& w) {
  const int n = w.dim();
  const auto& s = w.small_numerators();
  if (s.empty()) throw std::overflow_error("Weyl numerators too large for the fast path");
  std::vector<long long> out(s.size());
  auto id = [n](int a, int b, int c, int d) {
    return ((static_cast<size_t>(a) * n + b) * n + c) * n + d;
  };
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) out[id(i, k, j, l)] = s[id(i, k, j, l)] + s[id(i, l, j, k)];
  return out;
}

BigInt from_i128(__int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  BigInt hi = static_cast<unsigned long>(u >> 64);
  BigInt lo = static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFULL);
  BigInt r = (hi << 64) + lo;
  return neg ? BigInt(-r) : r;
}

}  // namespace

BigRational weyl_quad_norm(const WeylForm& w) {
  const auto S = symmetrized_small(w);
  __int128 acc = 0;
  for (long long v : S) acc += static_cast<__int128>(v) * v;
  BigRational r(from_i128(acc), w.denominator() * w.denominator());
  r.canonicalize();
  return r;
}

std::vector<std::vector<BigRational>> weyl_m_matrix(const WeylForm& w) {
  const int n = w.dim();
  // M_pq = sum_{i,k,j} S_ikjp S_ikjq with S_ikjp = W_ikjp + W_ipjk.
  const auto S = symmetrized_small(w);
  const size_t block = static_cast<size_t>(n) * n * n;
  std::vector<std::vector<BigRational>> M(n, std::vector<BigRational>(n));
  BigInt den2 = w.denominator() * w.denominator();
  for (int p = 0; p < n; ++p)
    for (int q = p; q < n; ++q) {
      __int128 acc = 0;
      for (size_t t = 0; t < block; ++t)
        acc += static_cast<__int128>(S[t * n + p]) * S[t * n + q];
      BigRational v(from_i128(acc), den2);
      v.canonicalize();
      M[p][q] = v;
      M[q][p] = v;
    }
  return M;
}

}  // namespace qcv
