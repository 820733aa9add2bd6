// SPDX-License-Identifier: MIT
#include <doctest.h>

#include "qcv/errors.hpp"
#include "qcv/exact_scalars.hpp"

#include <boost/math/constants/constants.hpp>

#include <random>

using namespace qcv;

TEST_CASE("gamma ratios on the half-integer lattice") {
  CHECK(gamma_ratio({HalfInt::integer(5)}, {HalfInt::integer(3)}) == SymScalar(12));
  SymScalar g52 = gamma_value(HalfInt{5});
  CHECK(g52.coeff() == BigRational(3, 4));
  CHECK(g52.pi_half_power() == 1);
  // Gamma(N/2-9) Gamma(N/2+7) / Gamma(N+1) at N = 26.
  SymScalar r = gamma_ratio({HalfInt::integer(4), HalfInt::integer(20)}, {HalfInt::integer(27)});
  BigRational expect(BigInt(6) * factorial(19), factorial(26));
  expect.canonicalize();
  CHECK(r == SymScalar(expect));
  CHECK_THROWS_AS(gamma_value(HalfInt{0}), PoleError);
  CHECK_THROWS_AS(gamma_value(HalfInt{-3}), PoleError);
}

TEST_CASE("gamma recursion for random half-integers") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> d(1, 80);
  for (int t = 0; t < 50; ++t) {
    HalfInt x{d(rng)};
    SymScalar lhs = gamma_value(HalfInt{x.twice + 2});
    SymScalar rhs = SymScalar(x.value()) * gamma_value(x);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("sphere areas") {
  using boost::math::constants::pi;
  CHECK(sphere_area(2) == SymScalar(2, 2));
  CHECK(sphere_area(3) == SymScalar(4, 2));
  CHECK(sphere_area(4) == SymScalar(2, 4));
  SymScalar s = SymScalar::sphere_symbol(5);
  CHECK(s.expand_sphere() == sphere_area(5));
  CHECK(abs(sphere_area(5).to_real() - 8 * pi<Real>() * pi<Real>() / 3) < Real("1e-60"));
}

TEST_CASE("sym scalar algebra") {
  SymScalar a(BigRational(3, 7), 2, 1, 9), b(BigRational(-5, 11), 2, 1, 9);
  CHECK((a + b).coeff() == BigRational(3, 7) + BigRational(-5, 11));
  CHECK_THROWS_AS(a + SymScalar(1), UnlikeTermsError);
  CHECK((a * b) / b == a);
  CHECK((a - a).is_zero());
  SymScalar c(BigRational(1, 3), 4, 0, 0);
  Real pi = boost::math::constants::pi<Real>();
  CHECK(abs(c.to_real() - pi * pi / 3) < Real("1e-60"));
}

TEST_CASE("decimal export") {
  CHECK(to_decimal(BigRational(1, 3), 10) == "3.333333333e-1");
  CHECK(to_decimal(BigRational(-250), 3) == "-2.50e+2");
  Real v = to_real(BigRational(1, 7));
  CHECK(abs(v * 7 - 1) < Real("1e-64"));
}

TEST_CASE("dimension constants") {
  DimConstants d = dim_constants(25);
  CHECK(d.a_N == BigRational(533, 1104));
  CHECK(d.b_N == BigRational(-4, 23));
  CHECK(dim_constants(6).b_N == -1);
  CHECK(d.gammaN_base == BigRational(25 * 21 * 21 * 23 * 27, 2));
  CHECK(d.E.sign() > 0);
  CHECK(dim_constants(5).E.expand_sphere() == SymScalar(BigRational(1, 160), 6));
  CHECK_THROWS_AS(dim_constants(4), DimensionError);
}

TEST_CASE("quadratic surds and intervals") {
  QuadSurd s(BigRational(-3), BigRational(2), BigInt(2));  // -3 + 2 sqrt 2 < 0
  CHECK(s.sign() == -1);
  QuadSurd t(BigRational(3), BigRational(-2), BigInt(2));
  CHECK((s + t).sign() == 0);
  CHECK((s * s).sign() == 1);
  for (mpfr_prec_t bits : {64, 256}) {
    Interval r = Interval::sqrt_of(BigInt(2), bits);
    Interval x = Interval(BigRational(2), bits) * r - Interval(BigRational(3), bits);
    CHECK(x.sign() == -1);
  }
  Interval tiny = Interval::sqrt_of(BigInt(2), 64) - Interval::sqrt_of(BigInt(2), 64);
  CHECK(tiny.sign() == 0);
}
