// SPDX-License-Identifier: MIT
// Curvature of g = e^h from Taylor jets of order 4 at one point.
//
// Coordinates split into the block B of indices carrying W and the rest.  On
// the rest every field depends only on sigma = |x_perp|^2, and with
// ' = d/dsigma the perpendicular derivative is d_a F = 2 x_a F'.  For the
// metric this gives, with i, j, k, l in B, a, b off B and A = g^{-1} g':
//   Gamma^i_ja = x_a A_ij,  Gamma^a_ij = -x_a g'_ij,  other mixed ones zero,
//   Ric_ij = [block terms] - n g'_ij - 2 sigma g''_ij + 2 sigma (g' g^{-1} g')_ij,
//   Ric_ia = x_a rho_i,  rho_i = d_k A_ki - A_kl Gamma^l_ki,
//   Ric_ab = -x_a x_b tr(A^2),
// where n is the number of perpendicular coordinates.  With B = everything
// there is no sigma and the formulas are the plain coordinate ones.
#include "qcv/curvature_lab.hpp"
#include "qcv/errors.hpp"
#include "qcv/taylor.hpp"

#include <algorithm>

namespace qcv {

namespace {

constexpr int kDegree = 4;

struct Frame {
  int N = 0;
  std::vector<int> block;  // indices of B in R^N
  int k = 0;               // |B|
  int n = 0;               // N - k
  bool has_sigma = false;
  std::shared_ptr<const TaylorSpace> sp;
  std::vector<Taylor> t;  // block coordinates
  Taylor sigma;
  std::vector<Real> x;

  Taylor zero() const { return Taylor(sp); }
  Taylor d(const Taylor& f, int i) const { return f.d(i); }
  Taylor ds(const Taylor& f) const { return has_sigma ? f.d(k) : zero(); }

  // Flat Laplacian of an invariant function.
  Taylor lap(const Taylor& f) const {
    Taylor r = zero();
    for (int i = 0; i < k; ++i) r += f.d(i).d(i);
    if (has_sigma) {
      const Taylor fs = f.d(k);
      r += fs * Real(2 * n);
      r.add_product(sigma * Real(4), fs.d(k));
    }
    return r;
  }
  // Flat gradient inner product.
  Taylor grad_dot(const Taylor& f, const Taylor& g) const {
    Taylor r = zero();
    for (int i = 0; i < k; ++i) r.add_product(f.d(i), g.d(i));
    if (has_sigma) r.add_product(sigma * Real(4), f.d(k) * g.d(k));
    return r;
  }
  // Flat Hessian inner product sum_{p,q} d_pq f d_pq g.
  Taylor hess_dot(const Taylor& f, const Taylor& g) const {
    Taylor r = zero();
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) r.add_product(f.d(i).d(j), g.d(i).d(j));
    if (has_sigma) {
      const Taylor fs = f.d(k), gs = g.d(k), fss = fs.d(k), gss = gs.d(k);
      Taylor mixed = zero();
      for (int i = 0; i < k; ++i) mixed.add_product(fs.d(i), gs.d(i));
      r.add_product(sigma * Real(8), mixed);
      r.add_product(fs, gs * Real(4 * n));
      r.add_product(sigma * Real(8), fs * gss + fss * gs);
      r.add_product(sigma * sigma * Real(16), fss * gss);
    }
    return r;
  }
};

Frame make_frame(const MetricProfile& p, const std::vector<Real>& x, Engine engine,
                 const UField* u) {
  const int N = p.N();
  if (static_cast<int>(x.size()) != N) throw ShapeError("curvature: point has the wrong length");
  Frame f;
  f.N = N;
  f.x = x;
  std::vector<int> sup = weyl_support(p.W);
  if (sup.empty()) {
    // h = 0: any block works, so take the axes the centres of u use.
    std::vector<char> used(static_cast<size_t>(N), 0);
    if (u)
      for (const auto& t : u->terms)
        for (int a = 0; a < N; ++a)
          if (t.centre[static_cast<size_t>(a)] != 0) used[static_cast<size_t>(a)] = 1;
    for (int a = 0; a < N; ++a)
      if (used[static_cast<size_t>(a)]) sup.push_back(a);
    if (sup.empty()) sup.push_back(0);
  }
  bool reducible = static_cast<int>(sup.size()) < N;
  if (reducible && u) {
    // Every centre must sit in the block span for u to be invariant.
    for (const auto& t : u->terms)
      for (int a = 0; a < N; ++a)
        if (std::find(sup.begin(), sup.end(), a) == sup.end() && t.centre[static_cast<size_t>(a)] != 0)
          reducible = false;
  }
  bool reduced = false;
  switch (engine) {
    case Engine::Reduced:
      if (!reducible) throw PreconditionError("reduced engine: W or u is not block invariant");
      reduced = true;
      break;
    case Engine::Explicit:
      break;
    case Engine::Auto:
      reduced = reducible;
      break;
  }
  if (!reduced && N > 10) throw PreconditionError("explicit engine is limited to N <= 10");
  if (reduced) {
    f.block = sup;
  } else {
    for (int i = 0; i < N; ++i) f.block.push_back(i);
  }
  f.k = static_cast<int>(f.block.size());
  f.n = N - f.k;
  f.has_sigma = f.n > 0;
  f.sp = TaylorSpace::get(f.k + (f.has_sigma ? 1 : 0), kDegree);
  for (int i = 0; i < f.k; ++i) f.t.push_back(Taylor::variable(f.sp, i, x[static_cast<size_t>(f.block[static_cast<size_t>(i)])]));
  Real s0 = 0;
  std::vector<char> in_block(static_cast<size_t>(N), 0);
  for (int b : f.block) in_block[static_cast<size_t>(b)] = 1;
  for (int a = 0; a < N; ++a)
    if (!in_block[static_cast<size_t>(a)]) s0 += x[static_cast<size_t>(a)] * x[static_cast<size_t>(a)];
  f.sigma = f.has_sigma ? Taylor::variable(f.sp, f.k, s0) : f.zero();
  return f;
}

// All geometric quantities as jets.
struct Geometry {
  Frame fr;
  TaylorMatrix h, g, G;
  std::vector<TaylorMatrix> dg;
  TaylorMatrix gp, gpp, A;
  std::vector<Taylor> gam;  // Gamma^i_jl at (i * k + j) * k + l, block indices
  TaylorMatrix ric;         // block part
  std::vector<Taylor> rho;
  Taylor trA2, S, ric2, lapS, Q;

  const Taylor& Gam(int i, int j, int l) const {
    return gam[static_cast<size_t>((i * fr.k + j) * fr.k + l)];
  }

  // Delta_g v for an invariant function v.
  Taylor lap_g(const Taylor& v) const {
    const int k = fr.k;
    std::vector<Taylor> dv;
    for (int j = 0; j < k; ++j) dv.push_back(v.d(j));
    Taylor r = fr.zero();
    for (int i = 0; i < k; ++i) {
      Taylor w = fr.zero();
      for (int j = 0; j < k; ++j) w.add_product(G(i, j), dv[static_cast<size_t>(j)]);
      r += w.d(i);
    }
    if (fr.has_sigma) {
      const Taylor vs = v.d(k);
      r += vs * Real(2 * fr.n);
      r.add_product(fr.sigma * Real(4), vs.d(k));
    }
    return r;
  }
};

Geometry build_geometry(const MetricProfile& p, Frame fr) {
  Geometry geo;
  geo.fr = std::move(fr);
  const Frame& f = geo.fr;
  const int k = f.k, N = f.N;

  // s = |t|^2 + sigma, phi(s), H on the block, h = phi H.
  Taylor s = f.sigma;
  for (const auto& ti : f.t) s.add_product(ti, ti);
  const auto& coeffs = p.branch(s.value());
  const Taylor phi = compose_poly(coeffs, s);
  geo.h = TaylorMatrix(k, f.sp);
  std::vector<Taylor> tt;  // t_p t_q
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) tt.push_back(f.t[static_cast<size_t>(a)] * f.t[static_cast<size_t>(b)]);
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) {
      Taylor H(f.sp);
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
          const BigRational w = p.W.entry(f.block[static_cast<size_t>(i)], f.block[static_cast<size_t>(a)],
                                          f.block[static_cast<size_t>(j)], f.block[static_cast<size_t>(b)]);
          if (w != 0) H += tt[static_cast<size_t>(a * k + b)] * to_real(w);
        }
      geo.h(i, j) = phi * H;
      geo.h(j, i) = geo.h(i, j);
    }
  (void)N;

  const ExpResult e = matrix_exponential(geo.h);
  geo.g = e.exp_plus;
  geo.G = e.exp_minus;
  for (int l = 0; l < k; ++l) geo.dg.push_back(geo.g.d(l));
  if (f.has_sigma) {
    geo.gp = geo.g.d(k);
    geo.gpp = geo.gp.d(k);
    geo.A = geo.G * geo.gp;
  }

  // Christoffel symbols on the block.
  std::vector<Taylor> C(static_cast<size_t>(k * k * k), f.zero());  // C_mjl
  for (int m = 0; m < k; ++m)
    for (int j = 0; j < k; ++j)
      for (int l = j; l < k; ++l) {
        Taylor c = geo.dg[static_cast<size_t>(l)](m, j) + geo.dg[static_cast<size_t>(j)](m, l) -
                   geo.dg[static_cast<size_t>(m)](j, l);
        c *= Real(1) / 2;
        C[static_cast<size_t>((m * k + j) * k + l)] = c;
        C[static_cast<size_t>((m * k + l) * k + j)] = c;
      }
  geo.gam.assign(static_cast<size_t>(k * k * k), f.zero());
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int l = j; l < k; ++l) {
        Taylor v = f.zero();
        for (int m = 0; m < k; ++m) v.add_product(geo.G(i, m), C[static_cast<size_t>((m * k + j) * k + l)]);
        geo.gam[static_cast<size_t>((i * k + j) * k + l)] = v;
        geo.gam[static_cast<size_t>((i * k + l) * k + j)] = v;
      }

  // Ricci, reduced form valid for det g = 1.
  geo.ric = TaylorMatrix(k, f.sp);
  TaylorMatrix gpGgp;
  if (f.has_sigma) gpGgp = geo.gp * geo.G * geo.gp;
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) {
      Taylor r = f.zero();
      for (int m = 0; m < k; ++m) r += geo.Gam(m, j, i).d(m);
      for (int l = 0; l < k; ++l)
        for (int m = 0; m < k; ++m) {
          Taylor prod = geo.Gam(m, j, l) * geo.Gam(l, m, i);
          r -= prod;
        }
      if (f.has_sigma) {
        r -= geo.gp(i, j) * Real(f.n);
        r -= f.sigma * geo.gpp(i, j) * Real(2);
        r += f.sigma * gpGgp(i, j) * Real(2);
      }
      geo.ric(i, j) = r;
      geo.ric(j, i) = r;
    }
  geo.trA2 = f.zero();
  if (f.has_sigma) {
    geo.trA2 = (geo.A * geo.A).trace();
    for (int i = 0; i < k; ++i) {
      Taylor r = f.zero();
      for (int m = 0; m < k; ++m) r += geo.A(m, i).d(m);
      for (int m = 0; m < k; ++m)
        for (int l = 0; l < k; ++l) r -= geo.A(m, l) * geo.Gam(l, m, i);
      geo.rho.push_back(r);
    }
  }

  // Scalar curvature, |Ric|^2 and Q.
  const TaylorMatrix GR = geo.G * geo.ric;
  geo.S = GR.trace();
  geo.ric2 = (GR * GR).trace();
  if (f.has_sigma) {
    geo.S -= f.sigma * geo.trA2;
    Taylor rGr = f.zero();
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) rGr += geo.rho[static_cast<size_t>(i)] * geo.G(i, j) * geo.rho[static_cast<size_t>(j)];
    geo.ric2 += f.sigma * rGr * Real(2);
    geo.ric2 += f.sigma * f.sigma * geo.trA2 * geo.trA2;
  }
  geo.lapS = geo.lap_g(geo.S);
  const Real Nr = N;
  const Real cN = (Nr * Nr * Nr - 4 * Nr * Nr + 16 * Nr - 16) / (8 * (Nr - 1) * (Nr - 1) * (Nr - 2) * (Nr - 2));
  geo.Q = geo.lapS * (Real(-1) / (2 * (Nr - 1))) + geo.S * geo.S * cN -
          geo.ric2 * (Real(2) / ((Nr - 2) * (Nr - 2)));
  return geo;
}

Taylor u_taylor(const Frame& f, const UField& u) {
  Taylor r = Taylor::constant(f.sp, u.constant);
  for (const auto& term : u.terms) {
    if (static_cast<int>(term.centre.size()) != f.N) throw ShapeError("u field: centre has the wrong length");
    Taylor q = f.sigma + Taylor::constant(f.sp, term.lambda2);
    for (int i = 0; i < f.k; ++i) {
      const Taylor z = f.t[static_cast<size_t>(i)] - Taylor::constant(f.sp, term.centre[static_cast<size_t>(f.block[static_cast<size_t>(i)])]);
      q.add_product(z, z);
    }
    r += negative_power(q, term.twice_kappa) * term.scale;
  }
  return r;
}

CurvaturePoint assemble_point(const Geometry& geo) {
  const Frame& f = geo.fr;
  const int N = f.N, k = f.k;
  CurvaturePoint cp;
  cp.x = f.x;
  cp.g = RealMatrix::Identity(N, N);
  cp.g_inv = RealMatrix::Identity(N, N);
  cp.ricci = RealMatrix::Zero(N, N);
  cp.christoffel.assign(static_cast<size_t>(N * N * N), Real(0));
  std::vector<char> in_block(static_cast<size_t>(N), 0);
  for (int b : f.block) in_block[static_cast<size_t>(b)] = 1;
  std::vector<int> perp;
  for (int a = 0; a < N; ++a)
    if (!in_block[static_cast<size_t>(a)]) perp.push_back(a);
  auto gi = [&](int i, int j, int l) -> Real& {
    return cp.christoffel[static_cast<size_t>((i * N + j) * N + l)];
  };
  for (int i = 0; i < k; ++i) {
    const int I = f.block[static_cast<size_t>(i)];
    for (int j = 0; j < k; ++j) {
      const int J = f.block[static_cast<size_t>(j)];
      cp.g(I, J) = geo.g(i, j).value();
      cp.g_inv(I, J) = geo.G(i, j).value();
      cp.ricci(I, J) = geo.ric(i, j).value();
      for (int l = 0; l < k; ++l) gi(I, J, f.block[static_cast<size_t>(l)]) = geo.Gam(i, j, l).value();
      for (int a : perp) {
        const Real& xa = f.x[static_cast<size_t>(a)];
        gi(I, J, a) = xa * geo.A(i, j).value();
        gi(I, a, J) = gi(I, J, a);
        gi(a, I, J) = -xa * geo.gp(i, j).value();
      }
    }
    for (int a : perp) {
      cp.ricci(I, a) = f.x[static_cast<size_t>(a)] * geo.rho[static_cast<size_t>(i)].value();
      cp.ricci(a, I) = cp.ricci(I, a);
    }
  }
  for (int a : perp)
    for (int b : perp)
      cp.ricci(a, b) = -f.x[static_cast<size_t>(a)] * f.x[static_cast<size_t>(b)] * geo.trA2.value();
  cp.scalar = geo.S.value();
  cp.q_curvature = geo.Q.value();
  cp.laplacian_scalar = geo.lapS.value();
  cp.jet_order = kDegree;
  Real worst = 0;
  for (int l = 0; l < N; ++l) {
    Real c = 0;
    for (int i = 0; i < N; ++i) c += gi(i, i, l);
    worst = std::max(worst, Real(abs(c)));
  }
  cp.contracted_christoffel = worst;
  Real tr = 0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) tr += cp.g_inv(i, j) * cp.ricci(i, j);
  cp.trace_gap = abs(tr - cp.scalar);
  return cp;
}

}  // namespace

const Real& CurvaturePoint::gamma(int i, int j, int k) const {
  const int N = static_cast<int>(x.size());
  return christoffel.at(static_cast<size_t>((i * N + j) * N + k));
}

CurvaturePoint curvature_at(const MetricProfile& p, const std::vector<Real>& x, Engine engine) {
  return assemble_point(build_geometry(p, make_frame(p, x, engine, nullptr)));
}

// ---------------------------------------------------------------- u fields

UField UField::bubble(const BubbleParams& b, GammaChoice choice) {
  UField u;
  UTerm t;
  t.centre.assign(static_cast<size_t>(b.N), Real(0));
  for (size_t i = 0; i < b.xi.size(); ++i) t.centre[i] = to_real(b.xi[i]);
  const Real lam = to_real(b.lambda);
  t.lambda2 = lam * lam;
  t.twice_kappa = b.N - 4;
  t.scale = gamma_N(b.N, choice) * pow(lam, Real(b.N - 4) / 2);
  u.terms.push_back(std::move(t));
  return u;
}

UField UField::one() {
  UField u;
  u.constant = 1;
  return u;
}

UField UField::operator*(const Real& c) const {
  UField r = *this;
  r.constant *= c;
  for (auto& t : r.terms) t.scale *= c;
  return r;
}

UField UField::operator+(const UField& o) const {
  UField r = *this;
  r.constant += o.constant;
  r.terms.insert(r.terms.end(), o.terms.begin(), o.terms.end());
  return r;
}

Real UField::value(const std::vector<Real>& x) const {
  Real v = constant;
  for (const auto& t : terms) {
    Real q = t.lambda2;
    for (size_t i = 0; i < x.size(); ++i) q += (x[i] - t.centre[i]) * (x[i] - t.centre[i]);
    v += t.scale * pow(q, -Real(t.twice_kappa) / 2);
  }
  return v;
}

// ---------------------------------------------------------------- Paneitz

PaneitzValue paneitz_apply(const MetricProfile& p, const UField& u, const std::vector<Real>& x,
                           Engine engine) {
  const Geometry geo = build_geometry(p, make_frame(p, x, engine, &u));
  const Frame& f = geo.fr;
  const int k = f.k;
  const Real a = to_real(paneitz_a(f.N)), b = to_real(paneitz_b(f.N));
  const Taylor U = u_taylor(f, u);

  std::vector<Taylor> du;
  for (int i = 0; i < k; ++i) du.push_back(U.d(i));
  const Taylor us = f.ds(U);

  // V^i = a S (G du)_i + b (G Ric G du)_i + 2 b sigma (G rho)_i u'.
  const TaylorMatrix GRG = geo.G * geo.ric * geo.G;
  std::vector<Taylor> Grho;
  if (f.has_sigma)
    for (int i = 0; i < k; ++i) {
      Taylor v = f.zero();
      for (int j = 0; j < k; ++j) v.add_product(geo.G(i, j), geo.rho[static_cast<size_t>(j)]);
      Grho.push_back(v);
    }
  const Taylor aS = geo.S * a;
  Taylor div = f.zero();
  for (int i = 0; i < k; ++i) {
    Taylor Gdu = f.zero(), Rdu = f.zero();
    for (int j = 0; j < k; ++j) {
      Gdu.add_product(geo.G(i, j), du[static_cast<size_t>(j)]);
      Rdu.add_product(GRG(i, j), du[static_cast<size_t>(j)]);
    }
    Taylor V = aS * Gdu + Rdu * b;
    if (f.has_sigma) V.add_product(f.sigma * (2 * b), Grho[static_cast<size_t>(i)] * us);
    div += V.d(i);
  }
  if (f.has_sigma) {
    // V^a = x_a nu, nu = b (G rho).du + 2 a S u' - 2 b sigma tr(A^2) u'.
    Taylor nu = f.zero();
    for (int i = 0; i < k; ++i) nu.add_product(Grho[static_cast<size_t>(i)], du[static_cast<size_t>(i)]);
    nu *= b;
    nu.add_product(aS * Real(2), us);
    nu.add_product(f.sigma * geo.trA2 * (-2 * b), us);
    div += nu * Real(f.n);
    div.add_product(f.sigma * Real(2), nu.d(k));
  }

  PaneitzValue r;
  r.bilaplacian = geo.lap_g(geo.lap_g(U)).value();
  r.divergence = div.value();
  r.q_term = (geo.Q * U).value() * (Real(f.N - 4) / 2);
  r.value = r.bilaplacian - r.divergence + r.q_term;
  r.flat = f.lap(f.lap(U)).value();
  return r;
}

// ---------------------------------------------------------------- lemmas

LemmaTerms lemma_terms(const MetricProfile& p, const std::vector<Real>& x, Engine engine) {
  const Geometry geo = build_geometry(p, make_frame(p, x, engine, nullptr));
  const Frame& f = geo.fr;
  const int k = f.k, N = f.N;
  const TaylorMatrix& h = geo.h;
  LemmaTerms lt;
  lt.support = f.block;
  lt.ricci = RealMatrix(k, k);
  lt.ricci_linear = RealMatrix(k, k);
  lt.ricci_quadratic = RealMatrix(k, k);

  TaylorMatrix lh(k, f.sp);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) lh(i, j) = f.lap(h(i, j));
  // First and second block derivatives of h, values only.
  auto D1 = [&](int q, int i, int j) { return h(i, j).d(q).value(); };
  auto D2 = [&](int q, int r, int i, int j) { return h(i, j).d(q).d(r).value(); };
  auto H0 = [&](int i, int j) { return h(i, j).value(); };
  auto L0 = [&](int i, int j) { return lh(i, j).value(); };

  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      const Real lin = -L0(i, j) / 2;
      Real half = 0, quarter = 0;
      for (int m = 0; m < k; ++m)
        for (int s = 0; s < k; ++s) {
          half += H0(m, s) * D2(m, s, i, j) - D1(s, m, j) * D1(m, s, i);
          quarter += D1(i, m, s) * D1(m, s, j) + D1(j, m, s) * D1(m, s, i) - D1(j, m, s) * D1(i, s, m) -
                     H0(m, s) * D2(m, i, s, j) - H0(m, s) * D2(m, j, s, i);
        }
      // The Laplacian already carries the sum over m.
      for (int s = 0; s < k; ++s) quarter -= L0(j, s) * H0(s, i) + H0(j, s) * L0(s, i);
      lt.ricci(i, j) = geo.ric(i, j).value();
      lt.ricci_linear(i, j) = lin;
      lt.ricci_quadratic(i, j) = lin + half / 2 + quarter / 4;
    }

  Taylor grad2 = f.zero(), hess2 = f.zero(), grad_lap = f.zero(), lap2 = f.zero();
  for (int m = 0; m < k; ++m)
    for (int q = 0; q < k; ++q) {
      grad2 += f.grad_dot(h(m, q), h(m, q));
      hess2 += f.hess_dot(h(m, q), h(m, q));
      grad_lap += f.grad_dot(h(m, q), lh(m, q));
      lap2 += lh(m, q) * lh(m, q);
    }
  const Real Nr = N;
  lt.scalar = geo.S.value();
  lt.scalar_leading = -grad2.value() / 4;
  lt.laplacian_scalar = geo.lapS.value();
  lt.laplacian_scalar_leading = -hess2.value() / 2 - grad_lap.value() / 2;
  lt.q_curvature = geo.Q.value();
  lt.q_leading = (hess2.value() + grad_lap.value()) / (4 * (Nr - 1)) - lap2.value() / (2 * (Nr - 2) * (Nr - 2));
  return lt;
}

// ---------------------------------------------------------------- finite differences

RealMatrix ricci_finite_difference(const MetricProfile& p, const std::vector<Real>& x,
                                   const Real& step) {
  const int N = p.N();
  auto gamma_at = [&](const std::vector<Real>& y) {
    // Gamma^i_jl by central differences of g, full formula.
    std::vector<RealMatrix> dg;
    for (int l = 0; l < N; ++l) {
      std::vector<Real> yp = y, ym = y;
      yp[static_cast<size_t>(l)] += step;
      ym[static_cast<size_t>(l)] -= step;
      dg.push_back((metric_at(p, yp).g - metric_at(p, ym).g) / (2 * step));
    }
    const RealMatrix G = metric_at(p, y).g_inv;
    std::vector<Real> gam(static_cast<size_t>(N * N * N), Real(0));
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        for (int l = 0; l < N; ++l) {
          Real v = 0;
          for (int m = 0; m < N; ++m)
            v += G(i, m) * (dg[static_cast<size_t>(l)](m, j) + dg[static_cast<size_t>(j)](m, l) -
                            dg[static_cast<size_t>(m)](j, l));
          gam[static_cast<size_t>((i * N + j) * N + l)] = v / 2;
        }
    return gam;
  };
  auto idx = [&](int i, int j, int l) { return static_cast<size_t>((i * N + j) * N + l); };
  const auto g0 = gamma_at(x);
  std::vector<std::vector<Real>> dgam;  // d_m Gamma
  for (int m = 0; m < N; ++m) {
    std::vector<Real> yp = x, ym = x;
    yp[static_cast<size_t>(m)] += step;
    ym[static_cast<size_t>(m)] -= step;
    const auto gp = gamma_at(yp), gm = gamma_at(ym);
    std::vector<Real> d(gp.size());
    for (size_t q = 0; q < gp.size(); ++q) d[q] = (gp[q] - gm[q]) / (2 * step);
    dgam.push_back(std::move(d));
  }
  RealMatrix ric = RealMatrix::Zero(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      Real r = 0;
      for (int m = 0; m < N; ++m) {
        r += dgam[static_cast<size_t>(m)][idx(m, j, i)] - dgam[static_cast<size_t>(j)][idx(m, m, i)];
        for (int l = 0; l < N; ++l)
          r += g0[idx(m, m, l)] * g0[idx(l, j, i)] - g0[idx(m, j, l)] * g0[idx(l, m, i)];
      }
      ric(i, j) = r;
    }
  return ric;
}

}  // namespace qcv
