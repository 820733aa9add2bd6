// SPDX-License-Identifier: MIT
// Weyl-symmetric rank-4 forms, the quadratic field H_ij(y) = W_ipjq y_p y_q,
// and exact integrals of quadratic expressions in H over the unit sphere.
#pragma once

#include "qcv/exact_scalars.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qcv {

// Dense rank-4 array of rationals on [0, N)^4, index order (i, k, j, l).
struct RawTensor4 {
  int dim = 0;
  std::vector<BigRational> entries;

  explicit RawTensor4(int n = 0);
  BigRational& at(int i, int k, int j, int l);
  const BigRational& at(int i, int k, int j, int l) const;
};

// A tensor with the full Weyl symmetry class, stored as integer numerators
// over one common positive denominator.
class WeylForm {
 public:
  WeylForm() = default;
  WeylForm(int dim, std::vector<BigInt> numerators, BigInt denominator);

  int dim() const { return dim_; }
  BigRational entry(int i, int k, int j, int l) const;
  const BigInt& numerator(int i, int k, int j, int l) const;
  const BigInt& denominator() const { return den_; }
  bool is_zero() const;

  // Machine-integer copy of the numerators when they fit, for fast exact
  // contractions; empty otherwise.
  const std::vector<long long>& small_numerators() const { return small_; }
  std::vector<double> to_double() const;

  WeylForm scaled(const BigRational& c) const;
  bool operator==(const WeylForm& o) const;

  // Invariant predicates, each checked exactly.
  bool antisymmetric() const;
  bool pair_symmetric() const;
  bool first_bianchi() const;
  bool trace_free() const;
  bool valid() const {
    return antisymmetric() && pair_symmetric() && first_bianchi() && trace_free();
  }

 private:
  size_t idx(int i, int k, int j, int l) const {
    return ((static_cast<size_t>(i) * dim_ + k) * dim_ + j) * dim_ + l;
  }
  int dim_ = 0;
  std::vector<BigInt> num_;
  BigInt den_{1};
  std::vector<long long> small_;
};

// Orthogonal projection onto the Weyl symmetry class.
WeylForm project_weyl(const RawTensor4& raw);

// Seeded raw tensor with integer entries uniform in [-9, 9].
RawTensor4 random_raw_tensor(int N, std::uint64_t seed);
WeylForm random_weyl(int N, std::uint64_t seed);

// Projection of the array with a single 1 at (1,2,1,2) (one-based).
WeylForm default_weyl(int N);

// Zero-extension of a Weyl form on R^k to R^N; the class is preserved since
// every trace only sees the original block.
WeylForm embed_weyl(const WeylForm& w, int N);

// Entrywise inner product <A, B>.
BigRational inner_product(const RawTensor4& a, const RawTensor4& b);
RawTensor4 to_raw(const WeylForm& w);

// H(y), symmetric, trace-free, H(y) y = 0.
std::vector<std::vector<BigRational>> h_matrix(const WeylForm& w,
                                               const std::vector<BigRational>& y);

// sum (W_ikjl + W_iljk)^2.
BigRational weyl_quad_norm(const WeylForm& w);

// M_pq = sum_{i,j,k} (W_ikjp + W_ipjk)(W_ikjq + W_iqjk).
std::vector<std::vector<BigRational>> weyl_m_matrix(const WeylForm& w);

enum class SphereKind {
  H2,           // sum H_ij^2
  DH2,          // sum (d_k H_ij)^2
  DDH2,         // sum (d_kl H_ij)^2
  H2_YPYQ,      // sum H_ij^2 y_p y_q
  HPT_HQT,      // sum_t H_pt H_qt
  DH2_YPYQ,     // sum (d_k H_ij)^2 y_p y_q
  DPH_DQH,      // sum (d_p H_ij)(d_q H_ij)
  H_DQH_YP,     // sum H_ij (d_q H_ij) y_p
  DDH2_YPYQ,    // sum (d_kl H_ij)^2 y_p y_q
};

const std::vector<SphereKind>& all_sphere_kinds();
std::string sphere_kind_name(SphereKind k);
SphereKind sphere_kind_from_name(const std::string& name);
bool sphere_kind_uses_pq(SphereKind k);

struct SphereIdentity {
  SphereKind kind;
  int p = 0;
  int q = 0;
  SymScalar lhs;  // moment-assembled
  SymScalar rhs;  // printed coefficient times the W invariant
  bool holds() const { return lhs == rhs; }
};

// Both sides of one sphere identity; p, q are ignored for kinds without them.
SphereIdentity sphere_quadratic_integral(const WeylForm& w, SphereKind kind,
                                         int p = 0, int q = 0);

// Exact monomial moment on the unit sphere, as a rational multiple of
// |S^{N-1}|: odd exponents give 0, otherwise prod (e_i - 1)!! / (N (N+2) ...).
BigRational sphere_moment(int N, const std::vector<int>& exponents);

// The same moment through the Gamma-ratio formula
// 2 prod Gamma((e_i+1)/2) / Gamma((|e|+N)/2), fully expanded.
SymScalar sphere_moment_gamma(int N, const std::vector<int>& exponents);

// Pointwise integrand of a sphere identity, for Monte Carlo oracles.
double sphere_integrand(const std::vector<double>& w, int N, SphereKind kind,
                        const double* y, int p, int q);

}  // namespace qcv
