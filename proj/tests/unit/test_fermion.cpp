#include <catch2/catch_amalgamated.hpp>

#include "topr/fermion.hpp"

using namespace topr;

namespace {

BosonVector basis(int m, const Partition& lam) {
  BosonVector v;
  v.add(m, lam, Rational(1));
  return v;
}

Rational factorial(int n) {
  Rational f(1);
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

TEST_CASE("single insertions and removals: frozen values") {
  // Insertion into an occupied column of the charged diagram gives zero;
  // insertion into the first vacancy of the vacuum raises the charge.
  CHECK_FALSE(psi_plus_term(0, 0, Partition({})).has_value());
  CHECK_FALSE(psi_plus_term(-3, 0, Partition({})).has_value());
  auto vac = psi_plus_term(1, 0, Partition({}));
  REQUIRE(vac.has_value());
  CHECK(vac->m == 1);
  CHECK(vac->sign == 1);
  CHECK(vac->lam == Partition({}));

  auto p = psi_plus_term(0, 0, Partition({2}));
  REQUIRE(p.has_value());
  CHECK(p->m == 1);
  CHECK(p->sign == -1);
  CHECK(p->lam == Partition({1}));

  auto q = psi_minus_term(-1, 0, Partition({1}));
  REQUIRE(q.has_value());
  CHECK(q->m == -1);
  CHECK(q->sign == -1);
  CHECK(q->lam == Partition({2}));

  // Removal from a vacant column is zero: for (m=0, lambda=(2)) the occupied
  // columns are {2, 0, -1, -2, ...}, so 1 and 3 are vacant.
  CHECK_FALSE(psi_minus_term(1, 0, Partition({})).has_value());
  CHECK_FALSE(psi_minus_term(1, 0, Partition({2})).has_value());
  CHECK_FALSE(psi_minus_term(3, 0, Partition({2})).has_value());
  auto s = psi_minus_term(2, 0, Partition({2}));
  REQUIRE(s.has_value());
  CHECK(s->m == -1);
  CHECK(s->sign == 1);
  CHECK(s->lam == Partition({}));

  // Removal of the unique particle of s_(1) at its own column.
  auto r = psi_minus_term(1, 0, Partition({1}));
  REQUIRE(r.has_value());
  CHECK(r->m == -1);
  CHECK(r->sign == 1);
  CHECK(r->lam == Partition({}));
}

TEST_CASE("closed forms agree with the particle/hole encoding everywhere") {
  for (int m = -2; m <= 2; ++m)
    for (int w = 0; w <= 5; ++w)
      for (const Partition& lam : partitions_of_weight(w))
        for (int k = -5; k <= 5; ++k) {
          INFO("k=" << k << " m=" << m << " lam=" << lam.str());
          CHECK(maya_action_crosscheck(k, m, lam));
        }
}

TEST_CASE("weight and charge bookkeeping of the generators") {
  // psi+_k shifts the weight by k - m - 1, psi-_k by m - k.
  for (int m : {-1, 0, 2})
    for (const Partition& lam : {Partition({}), Partition({2, 1}), Partition({3, 1, 1})})
      for (int k = -4; k <= 4; ++k) {
        if (auto t = psi_plus_term(k, m, lam)) {
          CHECK(t->m == m + 1);
          CHECK(static_cast<int>(t->lam.weight()) ==
                static_cast<int>(lam.weight()) + k - m - 1);
        }
        if (auto t = psi_minus_term(k, m, lam)) {
          CHECK(t->m == m - 1);
          CHECK(static_cast<int>(t->lam.weight()) == static_cast<int>(lam.weight()) + m - k);
        }
      }
}

TEST_CASE("Clifford relations hold exactly on a spanning set") {
  std::vector<BosonVector> vectors;
  for (int m : {-2, 0, 1})
    for (int w = 0; w <= 4; ++w)
      for (const Partition& lam : partitions_of_weight(w)) vectors.push_back(basis(m, lam));

  for (int k = -4; k <= 4; ++k)
    for (int l = -4; l <= 4; ++l)
      for (const auto& v : vectors) {
        CHECK(anticommutator_residual('+', k, '-', l, v).is_zero());
        if (l <= k) {  // symmetric in (k,l); halve the work
          CHECK(anticommutator_residual('+', k, '+', l, v).is_zero());
          CHECK(anticommutator_residual('-', k, '-', l, v).is_zero());
        }
      }
}

TEST_CASE("polynomial round trip through the Schur expansion") {
  const int cap = 6;
  PPoly f = Rational(3) * schur_poly(Partition({2, 1}), cap) -
            Rational(1, 2) * schur_poly(Partition({4}), cap) +
            Rational(5, 7) * schur_poly(Partition({1, 1}), cap) + PPoly::constant(Rational(2), cap);
  BosonVector v = BosonVector::from_polynomial(0, f);
  CHECK(v.coefficient(0, Partition({2, 1})) == Rational(3));
  CHECK(v.coefficient(0, Partition({4})) == Rational(-1, 2));
  CHECK(v.coefficient(0, Partition({1, 1})) == Rational(5, 7));
  CHECK(v.coefficient(0, Partition({})) == Rational(2));
  CHECK(v.coefficient(0, Partition({3})) == Rational(0));
  PPoly back = v.component(0, cap);
  CHECK((back - f).is_zero());
}

TEST_CASE("bilinear pairing of a single basis tau vanishes term by term") {
  for (const Partition& lam : {Partition({}), Partition({2, 1}), Partition({3, 2})}) {
    auto tau = basis(0, lam);
    CHECK(bilinear_terms(tau, tau, 12).empty());
  }
}

TEST_CASE("the truncated coherent-sum tau satisfies the bilinear identity") {
  // sum_lambda s_lambda(y) s_lambda with two parameters; components of
  // total output weight W cancel exactly once the input holds all weights
  // up to W + 1.  Input cap 7 -> clean window W <= 6.
  BosonVector tau = cauchy_tau({Rational(7, 10), Rational(-3, 10)}, 7);
  CHECK(bilinear_terms(tau, tau, 6).empty());

  // Outside the trustworthy window the truncation shows, which confirms the
  // cancellation inside the window is structural rather than numerical.
  CHECK_FALSE(bilinear_terms(tau, tau, 8).empty());

  // Charges of the output tensor legs are fixed at (+1, -1).
  for (const auto& e : bilinear_terms(tau, tau, 8)) {
    CHECK(e.m1 == 1);
    CHECK(e.m2 == -1);
  }
}

TEST_CASE("a second orbit point: the exponential of the first power sum") {
  const int cap = 7;
  PPoly f = PPoly::constant(Rational(0), cap);
  PPoly p1 = PPoly::generator(1, cap);
  PPoly pw = PPoly::constant(Rational(1), cap);
  for (int w = 0; w <= cap; ++w) {
    Rational coeff = Rational(1, 1 << w) / factorial(w);  // (1/2)^w / w!
    f += coeff * pw;
    pw = pw * p1;
  }
  BosonVector tau = BosonVector::from_polynomial(0, f);
  CHECK(tau.coefficient(0, Partition({})) == Rational(1));
  CHECK(tau.coefficient(0, Partition({1})) == Rational(1, 2));
  CHECK(bilinear_terms(tau, tau, 6).empty());
}

TEST_CASE("perturbing one coefficient breaks the identity detectably") {
  BosonVector tau = cauchy_tau({Rational(7, 10), Rational(-3, 10)}, 7);
  BosonVector bad = tau;
  bad.add(0, Partition({1}), Rational(1, 7));
  CHECK(bilinear_residual(bad, bad, 4) > 1e-4);

  BosonVector bad2 = tau;
  bad2.add(0, Partition({2}), Rational(-1, 9));
  CHECK(bilinear_residual(bad2, bad2, 4) > 1e-4);
}
