// SPDX-License-Identifier: MIT
// The equation I'(1) = 0 for tau, the sign conditions at the accepted root,
// the Hessian at (0, 1), the lambda' scan and the gluing schedule.
#include "qcv/errors.hpp"
#include "qcv/reduced_energy.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace qcv {

namespace {

std::string real_str(const Real& r, int digits) {
  return r.str(digits, std::ios_base::scientific);
}

QuadSurd eval_surd(const TauQ& p, const QuadSurd& t) {
  const BigInt& d = t.d();
  return QuadSurd::rational(p.q[0], d) + t * (QuadSurd::rational(p.q[1], d) + t * p.q[2]);
}

// a + b sqrt(d) == a' + b' sqrt(d') for possibly different radicands.
bool surd_equal(const QuadSurd& x, const QuadSurd& y) {
  if (x.a() != y.a()) return false;
  BigRational xb = x.d() == 0 ? BigRational(0) : x.b();
  BigRational yb = y.d() == 0 ? BigRational(0) : y.b();
  if (sgn(xb) != sgn(yb)) return false;
  return xb * xb * BigRational(x.d()) == yb * yb * BigRational(y.d());
}

int agreement(const QuadSurd& x, const QuadSurd& y) {
  if (surd_equal(x, y)) return std::numeric_limits<Real>::digits10;
  Real rx = x.to_real(), ry = y.to_real();
  Real diff = abs(rx - ry);
  Real scale = abs(ry) > 0 ? abs(ry) : Real(1);
  Real dig = -log10(diff / scale);
  return dig < 0 ? 0 : static_cast<int>(floor(dig));
}

bool proportional(const TauQ& x, const TauQ& y) {
  if (x.is_zero() || y.is_zero()) return false;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (x.q[static_cast<size_t>(i)] * y.q[static_cast<size_t>(j)] !=
          x.q[static_cast<size_t>(j)] * y.q[static_cast<size_t>(i)])
        return false;
  return true;
}

Real tau_real(const TauQ& p, const Real& t) {
  return to_real(p.q[0]) + t * (to_real(p.q[1]) + t * to_real(p.q[2]));
}

}  // namespace

TauSolution solve_tau(int N) {
  if (N < 25) throw DimensionError("solve_tau needs N >= 25");
  TauSolution s;
  s.N = N;
  s.dI1 = assemble_F0(N).poly.derivative_at_one(1);
  const BigRational &c0 = s.dI1.q[0], &c1 = s.dI1.q[1], &c2 = s.dI1.q[2];
  if (c2 == 0) throw std::logic_error("I'(1) is not quadratic in tau");
  s.discriminant = c1 * c1 - 4 * c0 * c2;
  s.real_roots = s.discriminant >= 0;
  if (s.real_roots) {
    // sqrt(p/q) = sqrt(p q)/q.
    BigInt d = s.discriminant.get_num() * s.discriminant.get_den();
    BigRational a = -c1 / (2 * c2);
    BigRational b = BigRational(1) / (2 * c2 * BigRational(s.discriminant.get_den()));
    QuadSurd r0(a, -b, d), r1(a, b, d);
    if ((r1 - r0).sign() < 0) std::swap(r0, r1);
    s.roots = {r0, r1};
  }

  const PrintedTauData pd = printed_tau_data(N);
  if (pd.A3 == 0) throw DenominatorZeroError("A3 vanishes at N = " + std::to_string(N));
  if (pd.A2 < 0) {
    s.printed = QuadSurd();
    return s;
  }
  BigRational inv3 = BigRational(1) / BigRational(pd.A3);
  s.printed = QuadSurd(BigRational(pd.A1) * inv3, inv3, pd.A2);
  s.printed_equation_proportional = proportional(pd.dI1, s.dI1);
  for (size_t k = 0; k < s.roots.size(); ++k) {
    int dig = agreement(s.printed, s.roots[k]);
    if (dig > s.agreement_digits) {
      s.agreement_digits = dig;
      s.printed_root_index = static_cast<int>(k);
      s.printed_exact_match = surd_equal(s.printed, s.roots[k]);
    }
  }
  if (s.agreement_digits < 50) s.printed_root_index = -1;
  QuadSurd res = eval_surd(s.dI1, s.printed);
  s.residual_at_printed = res.sign() == 0 ? "0" : real_str(abs(res.to_real()), 64);
  return s;
}

SignDecision decide_sign(const TauQ& p, const QuadSurd& tau) {
  SignDecision out;
  const int exact = eval_surd(p, tau).sign();
  for (int digits : {64, 128, 256}) {
    const mpfr_prec_t bits = digits_to_bits(digits);
    Interval t = Interval(tau.a(), bits) + Interval(tau.b(), bits) * Interval::sqrt_of(tau.d(), bits);
    Interval v = Interval(p.q[0], bits) +
                 t * (Interval(p.q[1], bits) + t * Interval(p.q[2], bits));
    out.digits = digits;
    out.sign = v.sign();
    if (out.sign != 0) break;
  }
  out.exact_agrees = out.sign == exact;
  if (out.sign == 0) out.sign = exact;  // exact zero, which no interval can show
  out.value = real_str(tau_real(p, tau.to_real()), 20);
  return out;
}

CriticalPointReport verify_lemma81(int N) {
  CriticalPointReport rep;
  rep.N = N;
  const TauSolution sol = solve_tau(N);
  const TauPoly I = assemble_F0(N).poly;
  const HessianPolys hd = assemble_hessian(N);
  const TauQ J1p = paper_J1(N).at_one(), J2p = paper_J2(N).at_one();
  const TauQ J1d = hd.J1.at_one(), J2d = hd.J2.at_one();
  const TauQ I1 = I.at_one(), dI1 = I.derivative_at_one(1), I2 = I.derivative_at_one(2);
  rep.prefactor_positive = energy_prefactor(N).sign() > 0 && hessian_prefactor(N).sign() > 0;

  for (const auto& tau : sol.roots) {
    RootReport r;
    r.tau = tau;
    r.tau_decimal = real_str(tau.to_real(), 64);
    r.I1 = decide_sign(I1, tau);
    r.dI1 = decide_sign(dI1, tau);
    r.I2 = decide_sign(I2, tau);
    r.J1 = decide_sign(J1p, tau);
    r.J2 = decide_sign(J2p, tau);
    r.J1_derived = decide_sign(J1d, tau);
    r.J2_derived = decide_sign(J2d, tau);
    const bool base = r.dI1.sign == 0 && r.I1.sign < 0 && r.I2.sign > 0;
    r.all_conditions = base && r.J1.sign > 0 && r.J2.sign > 0;
    r.all_conditions_derived = base && r.J1_derived.sign > 0 && r.J2_derived.sign > 0;
    rep.roots.push_back(r);
  }
  for (size_t k = 0; k < rep.roots.size(); ++k)
    if (rep.roots[k].all_conditions) {
      ++rep.accepted_count;
      if (rep.accepted < 0) rep.accepted = static_cast<int>(k);
    }
  rep.lemma_violation = rep.accepted_count != 1;
  if (rep.accepted >= 0) {
    const QuadSurd& tau = rep.roots[static_cast<size_t>(rep.accepted)].tau;
    QuadSurd res = eval_surd(dI1, tau);
    rep.dI1_residual = res.sign() == 0 ? "0" : real_str(abs(res.to_real()), 64);
    // M is a Gram matrix, so with J1(1) >= 0 every eigenvalue of the xi-block
    // is at least prefactor * J2(1) |W|^2.
    const Real t = tau.to_real();
    Real xi = hessian_prefactor(N).to_real() * tau_real(J2p, t);
    Real la = energy_prefactor(N).to_real() * tau_real(I2, t);
    rep.eigen_lower_bound = xi < la ? xi : la;
  }
  return rep;
}

HessianReport hessian_matrix(int N, const QuadSurd& tau, const WeylForm& w, JSource source) {
  if (w.dim() != N) throw ShapeError("hessian_matrix: W has the wrong dimension");
  const BigRational Q = weyl_quad_norm(w);
  if (Q == 0) throw PreconditionError("hessian_matrix needs a nonzero Weyl form");
  TauQ J1, J2;
  if (source == JSource::Printed) {
    J1 = paper_J1(N).at_one();
    J2 = paper_J2(N).at_one();
  } else {
    const HessianPolys h = assemble_hessian(N);
    J1 = h.J1.at_one();
    J2 = h.J2.at_one();
  }
  const TauPoly I = assemble_F0(N).poly;
  const Real t = tau.to_real();
  const Real ph = hessian_prefactor(N).to_real();
  const Real pe = energy_prefactor(N).to_real();
  const Real j1 = tau_real(J1, t), j2 = tau_real(J2, t);
  const Real q = to_real(Q);
  const auto M = weyl_m_matrix(w);

  HessianReport r;
  r.N = N;
  r.H = RealMatrix::Zero(N + 1, N + 1);
  RealMatrix Mr(N, N);
  for (int p = 0; p < N; ++p)
    for (int s = 0; s < N; ++s) {
      Mr(p, s) = to_real(M[static_cast<size_t>(p)][static_cast<size_t>(s)]);
      r.H(p, s) = ph * (j1 * Mr(p, s) + (p == s ? j2 * q : Real(0)));
    }
  r.H(N, N) = pe * q * tau_real(I.derivative_at_one(2), t);
  r.symmetric = true;
  for (int p = 0; p <= N; ++p)
    for (int s = 0; s < p; ++s)
      if (r.H(p, s) != r.H(s, p)) r.symmetric = false;

  Eigen::SelfAdjointEigenSolver<RealMatrix> es(r.H, Eigen::EigenvaluesOnly);
  r.min_eigenvalue = es.eigenvalues().minCoeff();
  r.positive_definite = r.min_eigenvalue > 0;
  Eigen::SelfAdjointEigenSolver<RealMatrix> em(Mr, Eigen::EigenvaluesOnly);
  Real mmax = abs(em.eigenvalues().maxCoeff());
  r.m_positive_semidefinite = em.eigenvalues().minCoeff() >= -mmax * Real("1e-60");
  r.F01 = pe * q * tau_real(I.at_one(), t);
  return r;
}

ScanReport scan_F0(int N, const QuadSurd& tau, const std::vector<BigRational>& grid,
                   const BigRational& window) {
  for (size_t k = 0; k < grid.size(); ++k) {
    if (!(grid[k] > BigRational(1, 2) && grid[k] < BigRational(3, 2)))
      throw InputError("scan_F0: grid points must lie in (1/2, 3/2)");
    if (k > 0 && !(grid[k] > grid[k - 1]))
      throw InputError("scan_F0: grid must increase strictly");
  }
  const TauPoly I = assemble_F0(N).poly;
  const Real pe = energy_prefactor(N).to_real();
  const Real t = tau.to_real();
  ScanReport r;
  for (const auto& l : grid) r.points.push_back({l, pe * I.eval_real(to_real(l), t)});
  r.F01_negative = pe * I.eval_real(Real(1), t) < 0;
  if (r.points.empty()) return r;

  int nearest = 0;
  for (size_t k = 1; k < grid.size(); ++k)
    if (abs(grid[k] - 1) < abs(grid[static_cast<size_t>(nearest)] - 1))
      nearest = static_cast<int>(k);
  const BigRational lo = BigRational(1) - window, hi = BigRational(1) + window;
  auto inside = [&](size_t k) { return grid[k] >= lo && grid[k] <= hi; };
  auto val = [&](int k) -> const Real& { return r.points[static_cast<size_t>(k)].value; };
  const int last = static_cast<int>(grid.size()) - 1;

  for (size_t k = 0; k < grid.size(); ++k)
    if (inside(k) && (r.argmin < 0 || val(static_cast<int>(k)) < val(r.argmin)))
      r.argmin = static_cast<int>(k);
  r.minimum_at_one = r.argmin == nearest;

  r.monotone_each_side = true;
  for (int k = nearest + 1; k <= last; ++k) {
    if (val(k) > val(k - 1)) continue;
    if (!r.right_turn) r.right_turn = grid[static_cast<size_t>(k - 1)];
    if (inside(static_cast<size_t>(k))) r.monotone_each_side = false;
  }
  for (int k = nearest - 1; k >= 0; --k) {
    if (val(k) > val(k + 1)) continue;
    if (!r.left_turn) r.left_turn = grid[static_cast<size_t>(k + 1)];
    if (inside(static_cast<size_t>(k))) r.monotone_each_side = false;
  }
  return r;
}

GluingReport gluing_schedule_check(int N, long n) {
  if (n < 1) throw InputError("gluing_schedule_check needs n >= 1");
  GluingReport r;
  r.N = N;
  r.n = n;
  // value(n) = (4n^2)^{N-4} 2^{2n/3} 2^{-n(N-24)}; cube the ratio of
  // consecutive values to clear the 2^{2/3}.
  BigRational ratio = BigRational(n + 1, n);
  ratio.canonicalize();
  BigRational cube = 1;
  for (int k = 0; k < 6 * (N - 4); ++k) cube *= ratio;
  const long e2 = 2 - 3L * (N - 24);
  BigInt two = 1;
  mpz_mul_2exp(two.get_mpz_t(), two.get_mpz_t(), static_cast<mp_bitcnt_t>(std::labs(e2)));
  if (e2 >= 0)
    cube *= BigRational(two);
  else
    cube /= BigRational(two);
  r.decreasing = cube < 1;
  const double nd = static_cast<double>(n);
  r.log2_value = (N - 4) * std::log2(4 * nd * nd) + 2 * nd / 3 - nd * (N - 24);
  // |x_n - x_{n+1}| = 1/(n(n+1)) against twice the radius 1/(4n^2) times
  // the margin.
  const BigRational gap = rat(1, BigInt(n) * (n + 1));
  const BigRational reach = BigRational(2) * rat(1, BigInt(4) * n * n) * gluing_margin();
  r.balls_disjoint = gap > reach;
  return r;
}

long gluing_decrease_threshold(int N) {
  if (N <= 24) throw DimensionError("the schedule value only decreases for N >= 25");
  long n = 1;
  while (!gluing_schedule_check(N, n).decreasing) ++n;
  return n;
}

}  // namespace qcv
