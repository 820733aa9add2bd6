// SPDX-License-Identifier: MIT
#include <doctest.h>

#include "qcv/errors.hpp"
#include "qcv/radial_integrals.hpp"

using namespace qcv;

TEST_CASE("radial master integrals") {
  CHECK(radial_master_at(1, HalfInt::integer(2), 1) == SymScalar(BigRational(1, 2)));
  CHECK(radial_master_at(3, HalfInt::integer(3), 1) == SymScalar(BigRational(1, 4)));
  // Scaling in lambda.
  RadialTerm t = radial_master(3, HalfInt::integer(3));
  CHECK(t.lambda_exp == -2);
  CHECK(radial_master_at(3, HalfInt::integer(3), BigRational(1, 2)) ==
        SymScalar(BigRational(1, 4) * 4));
  CHECK_THROWS_AS(radial_master(-1, HalfInt::integer(3)), DivergenceError);
  CHECK_THROWS_AS(radial_master(3, HalfInt::integer(2)), DivergenceError);
}

TEST_CASE("polynomial radial integrals") {
  SPoly one = SPoly::constant(TauQ(1));
  LambdaSeries s = poly_radial_integral(one, 5, 4);
  RadialTerm t = radial_master(5, HalfInt::integer(4));
  REQUIRE(s.terms.size() == 1);
  CHECK(s.terms.begin()->first == t.lambda_exp);
  CHECK(s.terms.begin()->second[0] == t.coeff);

  FPoly f = FPoly::standard();
  SPoly f2 = f.poly() * f.poly();
  const int N = 25;
  CHECK_NOTHROW(poly_radial_integral(f2, N + 3, N - 2));
  CHECK_THROWS_AS(poly_radial_integral(f2, 12 + 3, 12 - 2), DivergenceError);

  // Linearity.
  SPoly a = f.deriv(1) * f.deriv(1), b = f.poly() * f.deriv(2);
  LambdaSeries la = poly_radial_integral(a, N + 3, N - 2);
  la += poly_radial_integral(b, N + 3, N - 2);
  CHECK(la == poly_radial_integral(a + b, N + 3, N - 2));
}

TEST_CASE("f polynomial") {
  FPoly f = FPoly::standard();
  CHECK(f.c1 == -12000);
  CHECK(f.eval_at(2, 5) == 5 - 24000 + 2411 * 4 - 135 * 8 + 16);
  CHECK(f.deriv_eval(2, 1.5, 3.0) == doctest::Approx(2 * 2411 - 6 * 135 * 1.5 + 12 * 2.25));
  // Setting tau to zero removes exactly the tau slots.
  SPoly g = f.poly() * f.poly();
  SPoly free = g.tau_free();
  for (const auto& c : free.coeffs()) CHECK((c.q[1] == 0 && c.q[2] == 0));
}

TEST_CASE("energy constant") {
  CHECK(energy_constant(5).expand_sphere() == SymScalar(BigRational(1, 160), 6));
  // N = 25: |S^24| (21/25) Gamma(25/2)^2 / (2 Gamma(25)).
  SymScalar expect = SymScalar(BigRational(21, 25)) * SymScalar::sphere_symbol(25) *
                     gamma_ratio({HalfInt{25}, HalfInt{25}}, {HalfInt::integer(25)}) /
                     SymScalar(2);
  CHECK(energy_constant(25) == expect);
  for (int N = 5; N <= 60; ++N) CHECK(energy_constant(N).sign() > 0);
}
