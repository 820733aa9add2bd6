// SPDX-License-Identifier: MIT
// I, J1, J2 straight from the definition of F: shift y = z + xi', move the
// xi' derivatives onto the two factors built from Hbar = f(|y|^2) H(y),
// expand every factor into monomials in z times functions of |z|^2, and
// integrate with exact sphere moments and Beta integrals.
#include "qcv/errors.hpp"
#include "qcv/reduced_energy.hpp"
#include "normalization.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <tuple>

namespace qcv {

namespace {

// Coordinates that ever carry a monomial exponent: the four block
// directions of W, one further direction used as the outside derivative
// index, and up to four representatives of summation indices that range
// over the remaining directions.
constexpr int kBlock = 4;
constexpr int kSlots = 9;
using Exps = std::array<int, kSlots>;

// c z^e s^j f^(a)(s)
struct HTerm {
  BigRational c;
  Exps e{};
  int j = 0;
  int a = 0;
};
// c z^e (lambda^2 + s)^{-twice_m/2}; the factor lambda^{(N-4)/2} is implicit.
struct UTerm {
  BigRational c;
  Exps e{};
  int twice_m = 0;
};
using HField = std::vector<HTerm>;
using UField = std::vector<UTerm>;

struct HKey {
  int m, k;
  std::vector<int> d;  // derivative coordinates
};

// Integrand accumulator: (m, power of s, a, b) -> coefficient of
// s^power f^(a) f^(b) / (lambda^2+s)^m, after the angular integral, in units
// of |S^{N-1}|; the radial measure is r^{N-1} dr.
using AccKey = std::tuple<int, int, int, int>;
using Acc = std::map<AccKey, BigRational>;

class Engine {
 public:
  Engine(int N, const WeylForm& block, const FPoly& f) : N_(N), w_(block), f_(f) {}

  int slot(int coord) const {
    if (coord < kBlock + 1) return coord;
    int t = N_ - 1 - coord;
    if (t < 0 || t >= kSlots - kBlock - 1)
      throw std::logic_error("coordinate without a monomial slot");
    return kBlock + 1 + t;
  }

  const HField& hbar(int m, int k, std::vector<int> d) {
    std::sort(d.begin(), d.end());
    auto key = std::make_tuple(m, k, d);
    if (auto it = hcache_.find(key); it != hcache_.end()) return it->second;
    HField out;
    if (d.empty()) {
      if (m < kBlock && k < kBlock) {
        for (int p = 0; p < kBlock; ++p)
          for (int q = 0; q < kBlock; ++q) {
            BigRational c = w_.entry(m, p, k, q);
            if (c == 0) continue;
            HTerm t;
            t.c = c;
            t.e[static_cast<size_t>(p)] += 1;
            t.e[static_cast<size_t>(q)] += 1;
            out.push_back(t);
          }
        out = combine(out);
      }
    } else {
      int c = d.back();
      std::vector<int> rest(d.begin(), d.end() - 1);
      out = derive(hbar(m, k, rest), slot(c));
    }
    return hcache_.emplace(key, std::move(out)).first->second;
  }

  const UField& u(std::vector<int> d) {
    std::sort(d.begin(), d.end());
    if (auto it = ucache_.find(d); it != ucache_.end()) return it->second;
    UField out;
    if (d.empty()) {
      UTerm t;
      t.c = 1;
      t.twice_m = N_ - 4;
      out.push_back(t);
    } else {
      int c = d.back();
      std::vector<int> rest(d.begin(), d.end() - 1);
      const int sl = slot(c);
      std::map<std::pair<Exps, int>, BigRational> acc;
      for (const auto& t : u(rest)) {
        if (t.e[static_cast<size_t>(sl)] > 0) {
          Exps e = t.e;
          e[static_cast<size_t>(sl)] -= 1;
          acc[{e, t.twice_m}] += t.c * t.e[static_cast<size_t>(sl)];
        }
        Exps e = t.e;
        e[static_cast<size_t>(sl)] += 1;
        acc[{e, t.twice_m + 2}] -= t.c * t.twice_m;
      }
      for (auto& [k, v] : acc)
        if (v != 0) out.push_back(UTerm{v, k.first, k.second});
    }
    return ucache_.emplace(d, std::move(out)).first->second;
  }

  // acc += weight * X * Y * U1 * U2, integrated over the angles.
  void integrate(Acc& acc, const BigRational& weight, const HField& X, const HField& Y,
                 const UField& U1, const UField& U2) {
    if (X.empty() || Y.empty()) return;
    for (const auto& u1 : U1)
      for (const auto& u2 : U2) {
        const BigRational cu = weight * u1.c * u2.c;
        const int m2 = u1.twice_m + u2.twice_m;
        for (const auto& x : X)
          for (const auto& y : Y) {
            std::vector<int> ex;
            int total = 0;
            bool odd = false;
            for (int s = 0; s < kSlots; ++s) {
              int e = x.e[static_cast<size_t>(s)] + y.e[static_cast<size_t>(s)] +
                      u1.e[static_cast<size_t>(s)] + u2.e[static_cast<size_t>(s)];
              if (e % 2) {
                odd = true;
                break;
              }
              if (e) ex.push_back(e);
              total += e;
            }
            if (odd) continue;
            int a = std::min(x.a, y.a), b = std::max(x.a, y.a);
            AccKey key{m2 / 2, total / 2 + x.j + y.j, a, b};
            acc[key] += cu * x.c * y.c * moment(ex);
          }
      }
  }

  int N() const { return N_; }

 private:
  static HField combine(const HField& in) {
    std::map<std::tuple<Exps, int, int>, BigRational> acc;
    for (const auto& t : in) acc[{t.e, t.j, t.a}] += t.c;
    HField out;
    for (auto& [k, v] : acc)
      if (v != 0) out.push_back(HTerm{v, std::get<0>(k), std::get<1>(k), std::get<2>(k)});
    return out;
  }

  // d/dz_c of c z^e s^j f^(a): d s = 2 z_c ds, d f^(a) = 2 z_c f^(a+1).
  HField derive(const HField& in, int sl) const {
    const auto s = static_cast<size_t>(sl);
    HField out;
    for (const auto& t : in) {
      if (t.e[s] > 0) {
        HTerm r = t;
        r.c *= t.e[s];
        r.e[s] -= 1;
        out.push_back(r);
      }
      if (t.j > 0) {
        HTerm r = t;
        r.c *= 2 * t.j;
        r.e[s] += 1;
        r.j -= 1;
        out.push_back(r);
      }
      if (t.a < 4) {
        HTerm r = t;
        r.c *= 2;
        r.e[s] += 1;
        r.a += 1;
        out.push_back(r);
      }
    }
    return combine(out);
  }

  const BigRational& moment(std::vector<int> ex) {
    std::sort(ex.begin(), ex.end());
    auto it = mcache_.find(ex);
    if (it == mcache_.end()) it = mcache_.emplace(ex, sphere_moment(N_, ex)).first;
    return it->second;
  }

  int N_;
  WeylForm w_;
  FPoly f_;
  std::map<std::tuple<int, int, std::vector<int>>, HField> hcache_;
  std::map<std::vector<int>, UField> ucache_;
  std::map<std::vector<int>, BigRational> mcache_;
};

// One summand X * Y * U1 * U2 of the integrand, U_i = d^{du_i} u.
struct Piece {
  BigRational w;
  HKey x, y;
  std::vector<int> u1, u2;
};
using TermFn = std::function<void(const std::array<int, 4>&, std::vector<Piece>&)>;

struct Term {
  std::string name;
  TermFn fn;
};

std::vector<Term> definition_terms(int N) {
  const DimConstants dc = dim_constants(N);
  const BigRational a = dc.a_N, b = dc.b_N;
  const BigRational c7 = rat(N - 4, 8 * (N - 1));
  const BigRational c8 = rat(-(N - 4), 4 * (N - 2) * (N - 2));
  std::vector<Term> t;
  t.push_back({"T1", [](const auto& x, auto& out) {
                 auto [i, j, k, l] = x;
                 out.push_back({BigRational(-1), {i, l, {}}, {j, l, {}}, {i, k, k}, {j}});
               }});
  t.push_back({"T2", [](const auto& x, auto& out) {
                 auto [i, j, k, l] = x;
                 out.push_back({BigRational(1), {i, j, {}}, {k, l, {}}, {i, j}, {k, l}});
               }});
  t.push_back({"T3", [a](const auto& x, auto& out) {
                 auto [l, m, k, i] = x;
                 out.push_back({-a / 4, {m, k, {l}}, {m, k, {l}}, {i}, {i}});
               }});
  t.push_back({"T4", [b](const auto& x, auto& out) {
                 auto [i, j, m, s] = x;
                 out.push_back({-b / 4, {m, s, {j}}, {s, m, {i}}, {i}, {j}});
               }});
  t.push_back({"T5", [b](const auto& x, auto& out) {
                 auto [m, i, j, s] = x;
                 const BigRational h = -b / 2;
                 const std::array<std::tuple<int, HKey, HKey>, 4> br{{
                     {1, {m, s, {}}, {i, j, {s}}},
                     {-1, {s, i, {}}, {m, j, {s}}},
                     {1, {s, j, {}}, {m, s, {i}}},
                     {-1, {m, s, {}}, {s, j, {i}}},
                 }};
                 for (const auto& [sg, X, Y] : br) {
                   out.push_back({h * sg, X, Y, {m, i}, {j}});
                   out.push_back({h * sg, X, Y, {i}, {m, j}});
                 }
               }});
  t.push_back({"T6", [b](const auto& x, auto& out) {
                 auto [i, j, s, m] = x;
                 out.push_back({b / 2, {i, s, {}}, {j, s, {m, m}}, {i}, {j}});
               }});
  t.push_back({"T7", [c7](const auto& x, auto& out) {
                 auto [i, l, m, k] = x;
                 out.push_back({c7, {m, k, {i, l}}, {m, k, {i, l}}, {}, {}});
                 out.push_back({c7, {m, k, {l}}, {m, k, {i, i, l}}, {}, {}});
               }});
  t.push_back({"T8", [c8](const auto& x, auto& out) {
                 auto [i, j, m, s] = x;
                 out.push_back({c8, {i, j, {m, m}}, {i, j, {s, s}}, {}, {}});
               }});
  return t;
}

// Every assignment of four summation indices to the explicit coordinates or
// to distinct representatives of the remaining N - |explicit| directions,
// with the number of index tuples each assignment stands for.
void for_each_assignment(int N, const std::vector<int>& explicit_coords,
                         const std::function<void(const std::array<int, 4>&, long)>& fn) {
  const int ne = static_cast<int>(explicit_coords.size());
  const int free_dirs = N - ne;
  std::array<int, 4> idx{};
  // choice < ne picks an explicit coordinate, otherwise a representative
  // class numbered in order of first use.
  std::function<void(int, int)> rec = [&](int pos, int classes) {
    if (pos == 4) {
      long mult = 1;
      for (int c = 0; c < classes; ++c) mult *= (free_dirs - c);
      if (mult > 0) fn(idx, mult);
      return;
    }
    for (int c = 0; c < ne; ++c) {
      idx[static_cast<size_t>(pos)] = explicit_coords[static_cast<size_t>(c)];
      rec(pos + 1, classes);
    }
    for (int c = 0; c <= classes; ++c) {
      idx[static_cast<size_t>(pos)] = N - 1 - c;
      rec(pos + 1, std::max(classes, c + 1));
    }
  };
  rec(0, 0);
}

// Accumulators per term for either the energy (p < 0) or the second
// derivative in xi'_p.
std::map<std::string, Acc> run(Engine& eng, int p) {
  const int N = eng.N();
  std::vector<int> coords;
  for (int c = 0; c < kBlock; ++c) coords.push_back(c);
  if (p >= kBlock) coords.push_back(p);
  std::map<std::string, Acc> out;
  std::vector<Piece> pieces;
  for (const auto& term : definition_terms(N)) {
    Acc& acc = out[term.name];
    for_each_assignment(N, coords, [&](const std::array<int, 4>& idx, long mult) {
      pieces.clear();
      term.fn(idx, pieces);
      for (const auto& pc : pieces) {
        if (pc.x.m >= kBlock || pc.x.k >= kBlock || pc.y.m >= kBlock || pc.y.k >= kBlock)
          continue;
        const BigRational w = pc.w * mult;
        const UField& U1 = eng.u(pc.u1);
        const UField& U2 = eng.u(pc.u2);
        auto H = [&](const HKey& k, int extra) -> const HField& {
          std::vector<int> d = k.d;
          for (int e = 0; e < extra; ++e) d.push_back(p);
          return eng.hbar(k.m, k.k, d);
        };
        if (p < 0) {
          eng.integrate(acc, w, H(pc.x, 0), H(pc.y, 0), U1, U2);
        } else {
          eng.integrate(acc, w, H(pc.x, 2), H(pc.y, 0), U1, U2);
          eng.integrate(acc, w * 2, H(pc.x, 1), H(pc.y, 1), U1, U2);
          eng.integrate(acc, w, H(pc.x, 0), H(pc.y, 2), U1, U2);
        }
      }
    });
  }
  return out;
}

TauPoly radial(const Acc& acc, int N, const FPoly& f, const SymScalar& norm) {
  std::array<SPoly, 5> fd;
  for (int k = 0; k <= 4; ++k) fd[static_cast<size_t>(k)] = f.deriv(k);
  std::map<int, SPoly> by_m;
  for (const auto& [key, c] : acc) {
    if (c == 0) continue;
    auto [m, pw, a, b] = key;
    SPoly piece = (fd[static_cast<size_t>(a)] * fd[static_cast<size_t>(b)]).shift(pw) * c;
    by_m[m] = by_m[m] + piece;
  }
  TauPoly out;
  out.dim = N;
  for (const auto& [m, P] : by_m) {
    if (P.degree() < 0) continue;
    out = out + detail::normalized(poly_radial_integral(P, N - 1, m), N - 4, norm, N);
  }
  out.dim = N;
  return out;
}

}  // namespace

FirstPrinciples first_principles(int N, const FPoly& f, int block_dim, std::uint64_t seed) {
  if (block_dim != kBlock) throw PreconditionError("first_principles uses a 4-dimensional block");
  if (N < 10) throw DimensionError("first_principles needs N >= 10");
  const WeylForm block = random_weyl(kBlock, seed);
  const BigRational Q = weyl_quad_norm(block);
  const auto M = weyl_m_matrix(block);
  int pin = 0;
  for (int c = 1; c < kBlock; ++c)
    if (abs(M[static_cast<size_t>(c)][static_cast<size_t>(c)]) >
        abs(M[static_cast<size_t>(pin)][static_cast<size_t>(pin)]))
      pin = c;
  const BigRational Mpp = M[static_cast<size_t>(pin)][static_cast<size_t>(pin)];
  if (Mpp == 0 || Q == 0) throw PreconditionError("degenerate Weyl block");

  const SymScalar ne = detail::energy_gamma(N);
  const SymScalar nh = detail::hessian_gamma(N);

  Engine eng(N, block, f);
  FirstPrinciples out;
  out.N = N;
  out.I.dim = out.J1.dim = out.J2.dim = N;
  const auto energy = run(eng, -1);
  const auto inside = run(eng, pin);
  const auto outside = run(eng, kBlock);
  const BigRational invQ = BigRational(1) / Q;
  for (const auto& [name, acc] : energy) {
    TauPoly v = radial(acc, N, f, ne) * invQ;
    out.I_terms[name] = v;
    out.I = out.I + v;
  }
  for (const auto& [name, acc] : outside) {
    TauPoly j2 = radial(acc, N, f, nh) * invQ;
    TauPoly in = radial(inside.at(name), N, f, nh);
    TauPoly j1 = (in - j2 * Q) * (BigRational(1) / Mpp);
    out.J2_terms[name] = j2;
    out.J1_terms[name] = j1;
    out.J2 = out.J2 + j2;
    out.J1 = out.J1 + j1;
  }
  out.I.dim = out.J1.dim = out.J2.dim = N;
  return out;
}

}  // namespace qcv
