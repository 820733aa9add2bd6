// SPDX-License-Identifier: MIT
// Closed-form assembly of I, J1, J2 from radial master integrals.
#include "qcv/errors.hpp"
#include "qcv/reduced_energy.hpp"
#include "normalization.hpp"

namespace qcv {

namespace detail {

SymScalar energy_gamma(int N) {
  if (N < 19) throw DimensionError("the energy normalisation needs N >= 19");
  return SymScalar(rat(N - 4, 16 * (N * N - 4))) *
         gamma_ratio({HalfInt{N - 18}, HalfInt{N + 14}}, {HalfInt::integer(N + 1)});
}

SymScalar hessian_gamma(int N) {
  if (N < 15) throw DimensionError("the Hessian normalisation needs N >= 15");
  BigInt den = BigInt(32) * N * (N - 2) * (N - 1) * (N + 2) * (N + 4);
  return SymScalar(rat(BigInt(N - 4) * (N - 4), den)) *
         gamma_ratio({HalfInt{N - 14}, HalfInt{N + 10}}, {HalfInt::integer(N + 1)});
}

TauPoly normalized(const LambdaSeries& ls, int shift, const SymScalar& norm, int N) {
  TauPoly p;
  p.dim = N;
  for (const auto& [e, v] : ls.terms) {
    TauQ c;
    for (int k = 0; k < 3; ++k) {
      if (v[k].is_zero()) continue;
      SymScalar r = v[k] / norm;
      if (!r.is_rational())
        throw std::logic_error("radial integral is not a rational multiple of the "
                               "normalisation: " + r.str());
      c.q[static_cast<size_t>(k)] = r.coeff();
    }
    if (!c.is_zero()) p.coeffs[e + shift] = c;
  }
  return p;
}

}  // namespace detail

namespace {

using detail::energy_gamma;
using detail::hessian_gamma;
using detail::normalized;

// Frequently used combinations of f and its derivatives.
struct FParts {
  SPoly s, f, f1, f2, f3;
  SPoly X;   // s f'^2 + 2 f f'
  SPoly Y;   // (s f' + f)^2
  SPoly Q6, Q3, L;
};

FParts f_parts(int N, const FPoly& fp) {
  FParts p;
  p.s = SPoly::monomial(TauQ(1), 1);
  p.f = fp.poly();
  p.f1 = fp.deriv(1);
  p.f2 = fp.deriv(2);
  p.f3 = fp.deriv(3);
  const SPoly &s = p.s, &f = p.f, &f1 = p.f1, &f2 = p.f2, &f3 = p.f3;
  BigRational n(N);
  p.X = s * f1 * f1 + BigRational(2) * f * f1;
  SPoly sf1f = s * f1 + f;
  p.Y = sf1f * sf1f;
  p.Q6 = BigRational(3 * (N + 8)) * f1 * f1 + BigRational(2 * (N + 8)) * f * f2 +
         BigRational(2 * (N + 18)) * s * f1 * f2 + BigRational(4) * s * s * f2 * f2 +
         BigRational(4) * s * f * f3 + BigRational(4) * s * s * f1 * f3;
  p.Q3 = BigRational(4) * s * f1 * f1 + BigRational(N + 8) * f * f1 +
         BigRational(2) * s * f * f2;
  p.L = BigRational(N + 4) * f1 + BigRational(2) * s * f2;
  return p;
}

BigRational q(long a, long b) { return rat(a, b); }

}  // namespace

std::vector<RadialKernel> energy_kernels(int N, const FPoly& fp) {
  const FParts p = f_parts(N, fp);
  return {{"X", p.X, N + 5, N - 2},         {"f^2", p.f * p.f, N + 3, N - 2},
          {"Y", p.Y, N + 3, N - 2},         {"Q6", p.Q6, N + 3, N - 4},
          {"Q3", p.Q3, N + 1, N - 4},       {"f^2 low", p.f * p.f, N - 1, N - 4},
          {"L^2", p.L * p.L, N + 3, N - 4}};
}

SymScalar energy_prefactor(int N) { return energy_gamma(N) * SymScalar::sphere_symbol(N); }

SymScalar hessian_prefactor(int N) { return hessian_gamma(N) * SymScalar::sphere_symbol(N); }

ReducedEnergy assemble_F0(int N, const FPoly& fp) {
  const SymScalar norm = energy_gamma(N);
  auto R = [&](const SPoly& P, int a, int b) {
    return normalized(poly_radial_integral(P, a, b), N - 4, norm, N);
  };
  const FParts p = f_parts(N, fp);
  const DimConstants dc = dim_constants(N);
  const BigRational &a = dc.a_N, &b = dc.b_N;
  const long n = N;

  TauPoly brace =
      R(p.X, N + 5, N - 2) * (-a * (n - 4) / (n * (n + 2))) +
      R(p.f * p.f, N + 3, N - 2) * (-a * (n - 4) / (2 * n)) +
      R(p.Y, N + 3, N - 2) * (-b * (n - 4) / (n * (n + 2))) +
      R(p.Q6, N + 3, N - 4) * q(1, 2 * n * (n - 1) * (n + 2)) +
      R(p.Q3, N + 1, N - 4) * q(1, 2 * n * (n - 1)) +
      R(p.f * p.f, N - 1, N - 4) * q(1, 4 * (n - 1)) +
      R(p.L * p.L, N + 3, N - 4) * q(-1, n * (n - 2) * (n - 2) * (n + 2));

  ReducedEnergy out;
  out.poly = brace * q(n - 4, 2);
  out.poly.dim = N;
  out.prefactor = energy_prefactor(N);
  return out;
}

LemmaAssembly assemble_F0_from_lemmas(int N, const FPoly& fp) {
  const SymScalar norm = energy_gamma(N);
  auto R = [&](const SPoly& P, int a, int b) {
    return normalized(poly_radial_integral(P, a, b), N - 4, norm, N);
  };
  const FParts p = f_parts(N, fp);
  const DimConstants dc = dim_constants(N);
  const BigRational &a = dc.a_N, &b = dc.b_N;
  const long n = N;

  // Sphere averages of sum H^2, sum (dH)^2, sum (d^2 H)^2 in units of
  // |S^{N-1}| times the quadratic invariant, taken from the moment assembly.
  const WeylForm w = default_weyl(N);
  const SymScalar unit = SymScalar::sphere_symbol(N) * SymScalar(weyl_quad_norm(w));
  auto ratio = [&](SphereKind k) {
    SymScalar r = sphere_quadratic_integral(w, k).lhs / unit;
    if (!r.is_rational()) throw std::logic_error("sphere average is not rational");
    return r.coeff();
  };
  const BigRational s0 = ratio(SphereKind::H2);
  const BigRational s1 = ratio(SphereKind::DH2);
  const BigRational s2 = ratio(SphereKind::DDH2);

  // With u = (lambda/(lambda^2+s))^{(N-4)/2}, d_i u = g y_i and the gradient
  // of fH in the radial direction is 2(s f' + f) H.  The terms built on
  // H y or on the trace of H vanish at xi' = 0.
  const BigRational n4sq = BigRational((n - 4) * (n - 4));
  LemmaAssembly out;
  out.terms.push_back({"T1 HH d(lap u) du", TauPoly{N, {}}, true});
  out.terms.push_back({"T2 (H d2u)^2", TauPoly{N, {}}, true});
  out.terms.push_back(
      {"T3 a |dH|^2 |du|^2",
       (R(p.X, N + 5, N - 2) * (4 * s0) + R(p.f * p.f, N + 3, N - 2) * s1) *
           (-a * n4sq / 4),
       false});
  out.terms.push_back(
      {"T4 b (dH)(dH) du du", R(p.Y, N + 3, N - 2) * (-b * n4sq * s0), false});
  out.terms.push_back({"T5 b bracket d(du du)", TauPoly{N, {}}, true});
  out.terms.push_back({"T6 b H lap(H) du du", TauPoly{N, {}}, true});
  out.terms.push_back(
      {"T7 (d2H)^2 u^2",
       (R(p.Q6, N + 3, N - 4) * (4 * s0) + R(p.Q3, N + 1, N - 4) * (2 * s1) +
        R(p.f * p.f, N - 1, N - 4) * s2) *
           q(n - 4, 8 * (n - 1)),
       false});
  out.terms.push_back({"T8 (lap H)^2 u^2",
                       R(p.L * p.L, N + 3, N - 4) * (q(-(n - 4), (n - 2) * (n - 2)) * s0),
                       false});

  TauPoly total;
  total.dim = N;
  for (const auto& t : out.terms) total = total + t.value;
  total.dim = N;
  out.total.poly = total;
  out.total.prefactor = energy_prefactor(N);
  return out;
}

HessianPolys assemble_hessian(int N, const FPoly& fp) {
  const SymScalar norm = hessian_gamma(N);
  auto R = [&](const SPoly& P, int a, int b) {
    return normalized(poly_radial_integral(P, a, b), N - 4, norm, N);
  };
  const FParts p = f_parts(N, fp);
  const DimConstants dc = dim_constants(N);
  const BigRational &a = dc.a_N, &b = dc.b_N;
  const long n = N;
  const SPoly f2sq = p.f * p.f;
  const SPoly W1 = p.s * p.f1 * p.f1 + p.f * p.f1;  // s f'^2 + f f'
  const SPoly L2 = p.L * p.L;

  TauPoly M =
      (R(f2sq, N + 5, N) * BigRational(n) - R(f2sq, N + 3, N - 1) * BigRational(n + 2)) *
          BigRational(-(n - 2)) +
      (R(p.X, N + 7, N) * BigRational(n - 1) - R(p.X, N + 5, N - 1) * BigRational(2)) *
          (-8 * a * (n - 2) / (n + 4)) +
      (R(f2sq, N + 5, N) * BigRational(n - 1) - R(f2sq, N + 3, N - 1) * BigRational(2)) *
          (-2 * a * (n - 2)) +
      R(p.Y, N + 5, N) * (-8 * b * (n - 1) * (n - 2) / (n + 4)) +
      R(W1, N + 5, N - 1) * (16 * b * (n - 2) / (n + 4)) +
      R(p.s * p.f * p.f1 + f2sq, N + 3, N - 1) * (4 * b * (n - 2)) +
      R(p.f1 * p.f1, N + 5, N - 2) * (-4 * b / (n + 4)) +
      R(f2sq, N + 1, N - 2) * (-b * (n + 2) / 2) +
      R(p.f * p.f1, N + 3, N - 2) * (-2 * b) +
      R(BigRational(n + 4) * p.f * p.f1 + BigRational(2) * p.s * p.f * p.f2, N + 3, N - 2) *
          b +
      R(p.Q6, N + 5, N - 2) * q(4 * (n - 3), (n - 1) * (n + 4)) +
      R(p.Q3, N + 3, N - 2) * q(2 * (n - 3), n - 1) +
      R(L2, N + 5, N - 2) * q(-8 * (n - 3), (n - 2) * (n - 2) * (n + 4));

  TauPoly D =
      (R(p.X, N + 7, N) * BigRational(2 * (n - 1) * (n - 2)) -
       R(p.X, N + 5, N - 1) * BigRational((n - 2) * (n + 8)) +
       R(p.X, N + 3, N - 2) * BigRational(n + 4)) *
          (-a / (n + 4)) +
      (R(f2sq, N + 5, N) * BigRational(2 * (n - 1) * (n - 2)) -
       R(f2sq, N + 3, N - 1) * BigRational((n - 2) * (n + 6)) +
       R(f2sq, N + 1, N - 2) * BigRational(n + 2)) *
          (-a / 2) +
      (R(p.Y, N + 5, N) * BigRational(2 * (n - 1)) -
       R(p.Y, N + 3, N - 1) * BigRational(n + 4)) *
          (-b * (n - 2) / (n + 4)) +
      R(W1, N + 5, N - 1) * (4 * b * (n - 2) / (n + 4)) +
      R(p.f1 * p.f1, N + 5, N - 2) * (-b / (n + 4)) +
      (R(p.Q6, N + 5, N - 2) * BigRational(2 * (n - 3)) -
       R(p.Q6, N + 3, N - 3) * BigRational(n + 4)) *
          q(1, 2 * (n - 1) * (n + 4)) +
      (R(p.Q3, N + 3, N - 2) * BigRational(2 * (n - 3)) -
       R(p.Q3, N + 1, N - 3) * BigRational(n + 2)) *
          q(1, 2 * (n - 1)) +
      (R(f2sq, N + 1, N - 2) * BigRational(2 * (n - 3)) -
       R(f2sq, N - 1, N - 3) * BigRational(n)) *
          q(n + 2, 4 * (n - 1)) +
      (R(L2, N + 5, N - 2) * BigRational(2 * (n - 3)) -
       R(L2, N + 3, N - 3) * BigRational(n + 4)) *
          q(-1, (n - 2) * (n - 2) * (n + 4));

  const BigRational outer = q((n - 4) * (n - 4), n * (n + 2));
  HessianPolys out;
  out.J1 = M * outer;
  out.J2 = D * outer;
  out.J1.dim = out.J2.dim = N;
  out.prefactor = hessian_prefactor(N);
  return out;
}

}  // namespace qcv
