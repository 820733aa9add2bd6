// SPDX-License-Identifier: MIT
#include <doctest.h>

#include "qcv/errors.hpp"
#include "qcv/weyl_algebra.hpp"

#include <random>

using namespace qcv;

TEST_CASE("projection onto the Weyl class") {
  CHECK(project_weyl(RawTensor4(5)).is_zero());
  CHECK_THROWS_AS(project_weyl(RawTensor4(3)), DimensionError);
  for (int N : {4, 5, 6}) {
    RawTensor4 raw = random_raw_tensor(N, 11 + N);
    WeylForm w = project_weyl(raw);
    CHECK(w.valid());
    CHECK(!w.is_zero());
    CHECK(project_weyl(to_raw(w)) == w);
    // Orthogonality <T - P T, P T> = 0.
    RawTensor4 pt = to_raw(w), diff(N);
    for (size_t k = 0; k < pt.entries.size(); ++k) diff.entries[k] = raw.entries[k] - pt.entries[k];
    CHECK(inner_product(diff, pt) == 0);
  }
}

TEST_CASE("quadratic field H") {
  const int N = 5;
  WeylForm w = random_weyl(N, 3);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> d(-20, 20);
  std::vector<BigRational> y(N), zero(N, BigRational(0)), cy(N);
  for (auto& v : y) v = BigRational(d(rng), 7);
  auto H = h_matrix(w, y);
  BigRational tr = 0;
  for (int i = 0; i < N; ++i) {
    tr += H[i][i];
    BigRational hy = 0;
    for (int j = 0; j < N; ++j) {
      CHECK(H[i][j] == H[j][i]);
      hy += H[i][j] * y[j];
    }
    CHECK(hy == 0);
  }
  CHECK(tr == 0);
  for (const auto& row : h_matrix(w, zero))
    for (const auto& v : row) CHECK(v == 0);
  for (int i = 0; i < N; ++i) cy[i] = BigRational(3, 2) * y[i];
  auto H2 = h_matrix(w, cy);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) CHECK(H2[i][j] == BigRational(9, 4) * H[i][j]);
  CHECK_THROWS_AS(h_matrix(w, std::vector<BigRational>(4)), ShapeError);
}

TEST_CASE("quadratic norm") {
  CHECK(weyl_quad_norm(WeylForm(5, std::vector<BigInt>(625), 1)) == 0);
  WeylForm w = random_weyl(6, 9);
  CHECK(weyl_quad_norm(w.scaled(BigRational(2, 3))) == BigRational(4, 9) * weyl_quad_norm(w));
  CHECK(weyl_quad_norm(default_weyl(25)) > 0);
  CHECK(weyl_quad_norm(random_weyl(25, 1)) > 0);
  auto M = weyl_m_matrix(w);
  BigRational trace = 0;
  for (int p = 0; p < 6; ++p) trace += M[p][p];
  CHECK(trace == weyl_quad_norm(w));
}

TEST_CASE("sphere moments") {
  const int N = 7;
  CHECK(sphere_moment(N, {2}) == BigRational(1) / N);
  CHECK(sphere_moment(N, {4}) == BigRational(3) / (N * (N + 2)));
  CHECK(sphere_moment(N, {1, 1}) == 0);
  CHECK(sphere_moment(N, {3}) == 0);
  for (auto e : std::vector<std::vector<int>>{{}, {2}, {2, 2}, {4, 2, 2}, {6}}) {
    SymScalar viaGamma = sphere_moment_gamma(N, e);
    SymScalar direct = SymScalar(sphere_moment(N, e)) * sphere_area(N);
    CHECK(viaGamma == direct);
  }
}

TEST_CASE("sphere identities hold exactly") {
  for (int N : {5, 6}) {
    WeylForm w = random_weyl(N, 100 + N);
    for (SphereKind k : all_sphere_kinds()) {
      for (auto [p, q] : std::vector<std::pair<int, int>>{{0, 0}, {1, 2}, {N - 1, N - 1}}) {
        SphereIdentity id = sphere_quadratic_integral(w, k, p, q);
        INFO(sphere_kind_name(k) << " p=" << p << " q=" << q);
        CHECK(id.holds());
      }
    }
  }
  WeylForm zero(5, std::vector<BigInt>(625), 1);
  for (SphereKind k : all_sphere_kinds()) {
    SphereIdentity id = sphere_quadratic_integral(zero, k, 0, 1);
    CHECK(id.lhs.is_zero());
    CHECK(id.rhs.is_zero());
  }
  CHECK_THROWS_AS(sphere_kind_from_name("H3"), UnsupportedIdentityError);
}

TEST_CASE("H^2 identity at N = 25") {
  WeylForm w = random_weyl(25, 1);
  SphereIdentity id = sphere_quadratic_integral(w, SphereKind::H2);
  CHECK(id.holds());
  CHECK(id.rhs == SymScalar(weyl_quad_norm(w) / (2 * 25 * 27)) * SymScalar::sphere_symbol(25));
}
