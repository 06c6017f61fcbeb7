#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "topr/field.hpp"
#include "topr/genfun.hpp"
#include "topr/identities.hpp"
#include "topr/transfer.hpp"

using namespace topr;

namespace {

TransferFamily<Complex> make_family(int N, int n, std::uint64_t seed) {
  ChainContext<Complex> ctx = random_context(N, n, seed);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  // Dense twist: start from the diagonal one and add off-diagonal fill.
  std::uniform_real_distribution<double> off(-0.6, 0.6);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      if (i != j) ctx.g.at(i, j) = Complex(off(rng), off(rng));
  Complex u = random_u(ctx, rng);
  return TransferFamily<Complex>(ctx, u);
}

double rel_gap(const Matrix<Complex>& a, const Matrix<Complex>& b) {
  const double scale = std::max({1.0, a.max_abs(), b.max_abs()});
  return (a - b).max_abs() / scale;
}

}  // namespace

TEST_CASE("univariate series coefficients") {
  auto fam = make_family(2, 2, 7101);
  const int D = 5;
  auto hs = h_series(fam, 0, D);
  CHECK(hs.coefficient({0}).max_abs() == fam.identity_op().max_abs());
  CHECK((hs.coefficient({0}) - fam.identity_op()).is_zero());
  CHECK((hs.coefficient({1}) - fam.h(1, 0)).is_zero());
  CHECK((hs.coefficient({4}) - fam.h(4, 0)).is_zero());
  CHECK(hs.coefficient({D + 1}).is_zero());  // truncation: absent

  auto es = e_series(fam, -1, D);
  CHECK((es.coefficient({0}) - fam.identity_op()).is_zero());
  CHECK((es.coefficient({1}) + fam.e(1, -1)).is_zero());
  CHECK((es.coefficient({2}) - fam.e(2, -1)).is_zero());
  CHECK(es.coefficient({3}).is_zero());  // e_k = 0 beyond k = N = 2
  CHECK(es.coefficient({5}).is_zero());
}

TEST_CASE("multivariate determinant: l = 1 reduces to the univariate series") {
  auto fam = make_family(3, 1, 7102);
  CHECK(series_gap(h_multivariate(fam, 1, 5), h_series(fam, 0, 5)) == 0.0);
  CHECK(series_gap(e_multivariate(fam, 1, 5), e_series(fam, 0, 5)) == 0.0);
  CHECK(series_gap(h_shift_product(fam, 1, 5), h_series(fam, 0, 5)) == 0.0);
}

TEST_CASE("multivariate determinant: frozen l = 2 coefficients") {
  auto fam = make_family(2, 2, 7103);
  auto series = h_multivariate(fam, 2, 6);

  // alpha = (1,1) sits at exponent (1,0).
  CHECK(rel_gap(series.coefficient({1, 0}), cbr_det(fam, {1, 1})) < 1e-12);
  // alpha = (0,1) sits at exponent (0,0) and straightens to zero.
  CHECK(series.coefficient({0, 0}).max_abs() < 1e-12);
  // alpha = (2,1) at exponent (2,0).
  CHECK(rel_gap(series.coefficient({2, 0}), cbr_det(fam, {2, 1})) < 1e-12);
}

TEST_CASE("coefficient law over an alpha box, H and E sides") {
  for (auto [N, n, seed] : {std::tuple<int, int, uint64_t>{2, 2, 7104}, {3, 1, 7105}}) {
    auto fam = make_family(N, n, seed);
    const int D = 6;
    auto hseries = h_multivariate(fam, 2, D);
    auto eseries = e_multivariate(fam, 2, D);
    for (int a1 = -2; a1 <= 4; ++a1)
      for (int a2 = -2; a2 <= 4; ++a2) {
        const IntegerVector alpha{a1, a2};
        if (a1 + a2 - 1 > D) continue;  // outside the truncation box
        INFO("N=" << N << " alpha=(" << a1 << "," << a2 << ")");
        CHECK(genfun_h_gap(hseries, fam, alpha) < 1e-10);
        CHECK(genfun_e_gap(eseries, fam, alpha) < 1e-10);
      }
  }
}

TEST_CASE("out-of-box alpha is rejected") {
  auto fam = make_family(2, 1, 7106);
  auto series = h_multivariate(fam, 2, 4);
  CHECK_THROWS_AS(genfun_h_gap(series, fam, IntegerVector{4, 3}), std::invalid_argument);
  CHECK_THROWS_AS(genfun_h_gap(series, fam, IntegerVector{1, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(genfun_e_gap(e_multivariate(fam, 2, 4), fam, IntegerVector{5, 2}), std::invalid_argument);
}

TEST_CASE("determinant antisymmetry read off the series coefficients") {
  auto fam = make_family(2, 2, 7107);
  const int D = 6;
  auto series = h_multivariate(fam, 2, D);
  // T_(a1,a2) = -T_(a2-1, a1+1): exponents (a1, a2-1) vs (a2-1, a1).
  for (int a1 = -2; a1 <= 3; ++a1)
    for (int a2 = -2; a2 <= 3; ++a2) {
      if (a1 + a2 - 1 > D) continue;
      INFO("alpha=(" << a1 << "," << a2 << ")");
      const Matrix<Complex>& lhs = series.coefficient({a1, a2 - 1});
      const Matrix<Complex>& rhs = series.coefficient({a2 - 1, a1});
      CHECK(rel_gap(lhs, -rhs) < 1e-10);
    }
}

TEST_CASE("shift-operator product form matches the determinant form") {
  auto fam2 = make_family(2, 2, 7108);
  CHECK(series_gap(h_shift_product(fam2, 2, 6), h_multivariate(fam2, 2, 6)) < 1e-10);

  auto fam3 = make_family(3, 1, 7109);
  CHECK(series_gap(h_shift_product(fam3, 2, 5), h_multivariate(fam3, 2, 5)) < 1e-10);
  CHECK(series_gap(h_shift_product(fam3, 3, 4), h_multivariate(fam3, 3, 4)) < 1e-10);
}

TEST_CASE("exact-field generating functions agree exactly") {
  using GQ = GaussianRational;
  const int N = 2;
  ChainContext<GQ> ctx;
  ctx.N = N;
  ctx.n = 2;
  ctx.a = {GQ(Rational(1, 3), Rational(2)), GQ(Rational(-5, 2), Rational(1, 4))};
  ctx.g = Matrix<GQ>(N, N);
  ctx.g.at(0, 0) = GQ(Rational(2), Rational(0));
  ctx.g.at(0, 1) = GQ(Rational(1, 3), Rational(-1));
  ctx.g.at(1, 0) = GQ(Rational(0), Rational(1, 2));
  ctx.g.at(1, 1) = GQ(Rational(-1), Rational(1));
  const GQ u(Rational(9, 2), Rational(-3));
  TransferFamily<GQ> fam(ctx, u);

  auto det_form = h_multivariate(fam, 2, 4);
  auto prod_form = h_shift_product(fam, 2, 4);
  for (const auto& [e, c] : det_form.terms()) CHECK((c - prod_form.coefficient(e)).is_zero());
  for (const auto& [e, c] : prod_form.terms()) CHECK((c - det_form.coefficient(e)).is_zero());

  // Coefficient law, exactly: alpha = (2,1) at exponent (2,0).
  CHECK((det_form.coefficient({2, 0}) - cbr_det(fam, {2, 1})).is_zero());
  // Straightened zero, exactly.
  CHECK(det_form.coefficient({0, 0}).is_zero());
}
