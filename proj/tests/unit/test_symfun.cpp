#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "topr/laurent.hpp"
#include "topr/partition.hpp"
#include "topr/ppoly.hpp"
#include "topr/symfun.hpp"

using namespace topr;

TEST_CASE("laurent series arithmetic and window truncation") {
  using LS = LaurentSeries<Rational>;
  LS a({-2}, {2}, Rational(0));
  a.add_term({0}, Rational(1));
  a.add_term({-1}, Rational(2));
  a.add_term({3}, Rational(7));  // outside the window: dropped
  CHECK(a.coefficient({3}) == Rational(0));
  CHECK(a.coefficient({-1}) == Rational(2));

  LS b({-2}, {2}, Rational(0));
  b.add_term({1}, Rational(1));
  b.add_term({2}, Rational(5));

  // (2 x^-1 + 1)(x + 5 x^2) = 2 + 11 x + 5 x^2
  LS p = a * b;
  CHECK(p.coefficient({0}) == Rational(2));
  CHECK(p.coefficient({1}) == Rational(11));
  CHECK(p.coefficient({2}) == Rational(5));
  CHECK(p.coefficient({-1}) == Rational(0));

  // (x + 5 x^2)^2 = x^2 + 10 x^3 + 25 x^4: only x^2 stays inside the window
  LS q = b * b;
  CHECK(q.coefficient({2}) == Rational(1));
  CHECK(q.terms().size() == 1);

  LS s = a + b;
  CHECK(s.coefficient({1}) == Rational(1));
  CHECK(s.coefficient({0}) == Rational(1));
  LS d = a - b;
  CHECK(d.coefficient({2}) == Rational(-5));
  CHECK(d.coefficient({-1}) == Rational(2));
}

TEST_CASE("bordered product: frozen coefficients") {
  const int cap = 8;
  auto prod = fsym_product(2, 4, cap);

  // Partition exponents reproduce the Schur polynomial directly.
  CHECK(prod.coefficient({2, 1}) == schur_poly(Partition({2, 1}), cap));
  CHECK(prod.coefficient({0, 0}) == PPoly::constant(1, cap));
  CHECK(prod.coefficient({4, 0}) == schur_poly(Partition({4}), cap));

  // Non-partition exponents do NOT cancel: they straighten with a sign.
  CHECK(prod.coefficient({0, 2}) == Rational(-1) * schur_poly(Partition({1, 1}), cap));
  CHECK(prod.coefficient({1, 3}) == Rational(-1) * schur_poly(Partition({2, 2}), cap));

  // Adjacent-diagonal exponents straighten to zero.
  CHECK(prod.coefficient({1, 2}).is_zero());
  CHECK(prod.coefficient({3, 4}).is_zero());
}

TEST_CASE("bordered product: coefficient law over whole exponent boxes") {
  auto r1 = fsym_check(1, -2, 4);
  CHECK(r1.pass());
  CHECK(r1.checked == 7);
  CHECK(r1.residual == 0.0);

  auto r2 = fsym_check(2, -2, 4);
  CHECK(r2.pass());
  CHECK(r2.checked == 49);
  CHECK(r2.residual == 0.0);
  // The box contains genuinely nonzero non-partition cells, so the law is
  // "straighten", not "cancel".
  CHECK(r2.nonzero_nonpartition > 0);

  auto r3 = fsym_check(3, -1, 2);
  CHECK(r3.pass());
  CHECK(r3.checked == 64);
  CHECK(r3.residual == 0.0);
  CHECK(r3.nonzero_nonpartition > 0);
}

TEST_CASE("vertex series reproduce the combinatorial action exactly") {
  for (int m : {-2, 0, 1})
    for (int w = 0; w <= 4; ++w)
      for (const auto& lam : partitions_of_weight(w)) {
        CAPTURE(m);
        CAPTURE(w);
        CHECK(vertex_plus_residual(m, lam, -4, 4) == 0.0);
        CHECK(vertex_minus_residual(m, lam, -4, 4) == 0.0);
      }
}

TEST_CASE("adjoint/multiplication commutation, coefficient-wise") {
  const int cap = 12;
  PPoly f = schur_poly(Partition({2, 1}), cap) + Rational(2) * schur_poly(Partition({3}), cap) +
            Rational(1, 3) * PPoly::generator(2, cap) + PPoly::constant(Rational(5, 7), cap);
  for (int c = 0; c <= 4; ++c)
    for (int d = 0; d <= 4; ++d) {
      CAPTURE(c);
      CAPTURE(d);
      CHECK(dh_e_commutation_gap(c, d, f).is_zero());
      CHECK(de_h_commutation_gap(c, d, f).is_zero());
    }
}

TEST_CASE("adjoint series times multiplication series as a Laurent identity") {
  const int cap = 12;
  PPoly f = schur_poly(Partition({2, 2}), cap) + schur_poly(Partition({1}), cap);
  const PPoly zero(cap);
  const PPoly one = PPoly::constant(1, cap);
  const std::vector<int> lo{-6, 0}, hi{0, 6};
  using LS = LaurentSeries<PPoly>;

  // LHS: D_H(x) applied after multiplication by E(y), term by term.
  LS lhs(lo, hi, zero);
  for (int d = 0; d <= 6; ++d) {
    PPoly ed_f = e_poly(d, cap) * f;
    if (d % 2 == 1) ed_f = -ed_f;
    for (int c = 0; c <= 6; ++c) {
      PPoly v = adjoint_apply(h_poly(c, cap), ed_f);
      if (!v.is_zero()) lhs.add_term({-c, d}, v);
    }
  }

  // RHS: (1 - y/x) * E(y)-series * (D_H(x) f)-series.
  LS dh(lo, hi, zero), ey(lo, hi, zero), vand(lo, hi, zero);
  for (int c = 0; c <= 6; ++c) {
    PPoly v = adjoint_apply(h_poly(c, cap), f);
    if (!v.is_zero()) dh.add_term({-c, 0}, v);
  }
  for (int d = 0; d <= 6; ++d) ey.add_term({0, d}, (d % 2 == 0 ? one : -one) * e_poly(d, cap));
  vand.add_term({0, 0}, one);
  vand.add_term({-1, 1}, -one);
  LS rhs = vand * (ey * dh);

  for (int c = 0; c <= 4; ++c)
    for (int d = 0; d <= 4; ++d) {
      CAPTURE(c);
      CAPTURE(d);
      CHECK((lhs.coefficient({-c, d}) - rhs.coefficient({-c, d})).is_zero());
    }
}
