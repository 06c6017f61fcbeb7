#include <catch2/catch_amalgamated.hpp>

#include "topr/ppoly.hpp"
#include "topr/transfer.hpp"
#include "topr/young.hpp"

#include <random>

using namespace topr;

namespace {

// Independent evaluation of the same trace: build the full monodromy on
// aux (x) quantum as explicit Kronecker products, multiply, and take the
// partial trace over the (most-significant) auxiliary factor.  Shares no
// code path with transfer_direct beyond the generator matrices themselves.
Matrix<Complex> oracle_transfer(const RepSpace<Complex>& rep, const ChainContext<Complex>& ctx,
                                Complex u) {
  const int N = ctx.N, n = ctx.n;
  const int qdim = static_cast<int>(ctx.quantum_dim());
  const int dimV = rep.dim;
  const int full = dimV * qdim;

  auto unit = [&](int p, int q) {  // E_pq on C^N, 1-indexed
    Matrix<Complex> m(N, N);
    m.at(p - 1, q - 1) = 1.0;
    return m;
  };
  auto embed = [&](const Matrix<Complex>& x, int site) {  // site in 1..n, slot 1 leftmost
    int left = 1, right = 1;
    for (int s = 1; s < site; ++s) left *= N;
    for (int s = site + 1; s <= n; ++s) right *= N;
    return kron(kron(Matrix<Complex>::identity(left), x), Matrix<Complex>::identity(right));
  };

  Matrix<Complex> mono = Matrix<Complex>::identity(full);
  for (int s = 1; s <= n; ++s) {
    Complex v = u - ctx.a[s - 1];
    Matrix<Complex> R = Matrix<Complex>::identity(full);
    for (int p = 1; p <= N; ++p)
      for (int q = 1; q <= N; ++q)
        R += (1.0 / v) * kron(rep.gen(q, p), embed(unit(p, q), s));
    mono = mono * R;
  }
  mono = mono * kron(rep.group(ctx.g), Matrix<Complex>::identity(qdim));

  Matrix<Complex> T(qdim, qdim);
  for (int i = 0; i < qdim; ++i)
    for (int j = 0; j < qdim; ++j) {
      Complex acc = 0.0;
      for (int v = 0; v < dimV; ++v) acc += mono.at(v * qdim + i, v * qdim + j);
      T.at(i, j) = acc;
    }
  return T;
}

ChainContext<Complex> dense_context(int N, int n, std::uint64_t seed) {
  // Like random_context but with a full (non-diagonal) twist, to exercise
  // the generic group action.
  ChainContext<Complex> ctx = random_context(N, n, seed);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::uniform_real_distribution<double> d(-0.8, 0.8);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      if (i != j) ctx.g.at(i, j) = Complex(d(rng), d(rng));
  return ctx;
}

}  // namespace

TEST_CASE("transfer operator agrees with the brute-force monodromy trace") {
  std::mt19937_64 rng(8201);
  struct Case {
    int N, n;
    std::function<RepSpace<Complex>()> rep;
  };
  std::vector<Case> cases;
  cases.push_back({2, 1, [] { return sym_rep<Complex>(2, 1); }});
  cases.push_back({2, 2, [] { return sym_rep<Complex>(2, 2); }});
  cases.push_back({2, 2, [] { return wedge_rep<Complex>(2, 2); }});
  cases.push_back({2, 2, [] { return young_rep(2, Partition({2, 1})); }});
  cases.push_back({3, 1, [] { return sym_rep<Complex>(3, 2); }});
  cases.push_back({3, 2, [] { return wedge_rep<Complex>(3, 2); }});
  cases.push_back({3, 1, [] { return young_rep(3, Partition({2, 1})); }});
  std::uint64_t seed = 11;
  for (const auto& c : cases) {
    auto ctx = dense_context(c.N, c.n, seed++);
    Complex u = random_u(ctx, rng);
    auto rep = c.rep();
    Matrix<Complex> fast = transfer_direct(rep, ctx, u);
    Matrix<Complex> slow = oracle_transfer(rep, ctx, u);
    double scale = std::max(1.0, slow.max_abs());
    CHECK((fast - slow).max_abs() / scale < 1e-12);
  }
}

TEST_CASE("zero sites: the operator is the 1x1 character of the twist") {
  auto ctx = random_context(3, 0, 31);
  std::vector<Complex> eigs = {ctx.g.at(0, 0), ctx.g.at(1, 1), ctx.g.at(2, 2)};
  for (const Partition& lam : {Partition({2}), Partition({1, 1}), Partition({2, 1})}) {
    Matrix<Complex> T = transfer_direct(young_rep(3, lam), ctx, Complex(2.0, 0.5));
    REQUIRE(T.rows() == 1);
    CHECK(std::abs(T.at(0, 0) - schur_value(lam, eigs)) < 1e-10);
  }
  // Row/column shapes through the dedicated powers, and the h/e family.
  TransferFamily<Complex> fam(ctx, Complex(2.0, 0.5));
  CHECK(std::abs(fam.h(2, 0).at(0, 0) - schur_value(Partition({2}), eigs)) < 1e-10);
  CHECK(std::abs(fam.e(2, 0).at(0, 0) - schur_value(Partition({1, 1}), eigs)) < 1e-10);
}

TEST_CASE("family conventions: trivial members and the first power") {
  auto ctx = dense_context(2, 2, 47);
  std::mt19937_64 rng(8203);
  TransferFamily<Complex> fam(ctx, random_u(ctx, rng));
  CHECK(fam.h(0, 3) == fam.identity_op());
  CHECK(fam.e(0, -2) == fam.identity_op());
  CHECK(fam.h(-1, 0).is_zero());
  CHECK(fam.e(-2, 1).is_zero());
  CHECK(fam.e(3, 0).is_zero());  // k > N
  CHECK((fam.h(1, 2) - fam.e(1, 2)).max_abs() < 1e-12);
  // Cache coherence: repeated access returns the same object.
  const auto* first = &fam.h(2, 1);
  CHECK(first == &fam.h(2, 1));
}

TEST_CASE("transfer operators of one chain commute") {
  for (std::uint64_t seed : {101ull, 102ull}) {
    auto ctx = dense_context(2, 2, seed);
    std::mt19937_64 rng(8300 + seed);
    Complex u = random_u(ctx, rng);
    Complex v = random_u(ctx, rng);
    std::vector<Matrix<Complex>> ops;
    ops.push_back(transfer_direct(sym_rep<Complex>(2, 1), ctx, u));
    ops.push_back(transfer_direct(sym_rep<Complex>(2, 2), ctx, v));
    ops.push_back(transfer_direct(wedge_rep<Complex>(2, 2), ctx, u + Complex(0.7, 0.0)));
    ops.push_back(transfer_direct(young_rep(2, Partition({2, 1})), ctx, v - Complex(0.3, 0.1)));
    for (size_t i = 0; i < ops.size(); ++i)
      for (size_t j = i + 1; j < ops.size(); ++j) {
        double scale = std::max(1.0, ops[i].max_abs() * ops[j].max_abs());
        CHECK(commutator(ops[i], ops[j]).max_abs() / scale < 1e-10);
      }
  }
}

TEST_CASE("large-argument limit approaches the character times identity") {
  auto ctx = dense_context(3, 2, 55);
  auto rep = young_rep(3, Partition({2, 1}));
  Complex chi = rep.group(ctx.g).trace();
  auto resid = [&](double big) {
    Matrix<Complex> T = transfer_direct(rep, ctx, Complex(big, 0.0));
    Matrix<Complex> lim = chi * Matrix<Complex>::identity(T.rows());
    return (T - lim).max_abs();
  };
  double r1 = resid(1e5), r2 = resid(2e5);
  CHECK(r1 < 1e-3);
  CHECK(r1 / r2 > 1.5);  // first-order decay in 1/u
  CHECK(r1 / r2 < 2.5);
}

TEST_CASE("evaluation at an inhomogeneity reports a pole") {
  auto ctx = random_context(2, 2, 77);
  auto rep = sym_rep<Complex>(2, 1);
  CHECK_THROWS_AS(transfer_direct(rep, ctx, ctx.a[1]), pole_error);
  CHECK_THROWS_AS(transfer_direct(rep, ctx, ctx.a[0] + Complex(1e-12, 0.0)), pole_error);
}

TEST_CASE("exact arithmetic agrees with floating evaluation") {
  ChainContext<GaussianRational> ctx;
  ctx.N = 2;
  ctx.n = 2;
  ctx.a = {GaussianRational(Rational(1, 3), Rational(0)),
           GaussianRational(Rational(-1, 2), Rational(1, 4))};
  ctx.g = Matrix<GaussianRational>(2, 2);
  ctx.g.at(0, 0) = GaussianRational(Rational(2), Rational(0));
  ctx.g.at(0, 1) = GaussianRational(Rational(1, 5), Rational(0));
  ctx.g.at(1, 0) = GaussianRational(Rational(0), Rational(1));
  ctx.g.at(1, 1) = GaussianRational(Rational(1), Rational(-1));
  GaussianRational u(Rational(7, 2), Rational(1));

  ChainContext<Complex> cctx;
  cctx.N = 2;
  cctx.n = 2;
  for (const auto& a : ctx.a) cctx.a.push_back(FieldOps<GaussianRational>::to_complex(a));
  cctx.g = Matrix<Complex>(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      cctx.g.at(i, j) = FieldOps<GaussianRational>::to_complex(ctx.g.at(i, j));

  Matrix<GaussianRational> exact = transfer_direct(sym_rep<GaussianRational>(2, 2), ctx, u);
  Matrix<Complex> approx =
      transfer_direct(sym_rep<Complex>(2, 2), cctx, FieldOps<GaussianRational>::to_complex(u));
  for (int i = 0; i < exact.rows(); ++i)
    for (int j = 0; j < exact.cols(); ++j)
      CHECK(std::abs(FieldOps<GaussianRational>::to_complex(exact.at(i, j)) - approx.at(i, j)) <
            1e-12);

  // Exact pole detection: u equal to an inhomogeneity.
  CHECK_THROWS_AS(transfer_direct(sym_rep<GaussianRational>(2, 1), ctx, ctx.a[0]), pole_error);
}
