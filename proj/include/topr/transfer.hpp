#pragma once

// Transfer operators on (C^N)^{tensor n}:
//
//   T_rep(u) = tr_aux( R_{01}(u - a_1) ... R_{0n}(u - a_n) (pi(g) x Id) ),
//   R(v)    = Id + v^{-1} sum_{p,q} pi(e_{qp}) x E_{pq}.
//
// Site factors act on distinct tensor slots, so the quantum-space matrix
// element factorizes:
//
//   T[(i_1..i_n),(j_1..j_n)] = tr( L_1(i_1,j_1) ... L_n(i_n,j_n) pi(g) ),
//   L_s(i,j) = delta_ij Id + (u - a_s)^{-1} pi(e_{j i}),
//
// which is what transfer_direct evaluates (depth-first over index prefixes so
// partial aux products are reused).  Multi-indexes are flattened with slot 1
// most significant: row = sum_k (i_k - 1) N^{n-k}.

#include "topr/matrix.hpp"
#include "topr/partition.hpp"
#include "topr/repspace.hpp"

#include <map>
#include <mutex>
#include <random>
#include <stdexcept>

namespace topr {

struct pole_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class F>
struct ChainContext {
  int N = 0;
  int n = 0;             // number of sites
  std::vector<F> a;      // inhomogeneities, size n
  Matrix<F> g;           // twist, N x N
  std::uint64_t seed = 0;

  long quantum_dim() const {
    long d = 1;
    for (int i = 0; i < n; ++i) d *= N;
    return d;
  }
};

template <class F>
using Operator = Matrix<F>;

namespace detail {
template <class F>
void check_pole(const F& v) {
  if constexpr (FieldOps<F>::exact) {
    if (FieldOps<F>::is_zero(v)) throw pole_error("transfer_direct: u collides with an inhomogeneity");
  } else {
    if (std::sqrt(FieldOps<F>::abs_sq(v)) < 1e-10) throw pole_error("transfer_direct: u within 1e-10 of an inhomogeneity");
  }
}
}  // namespace detail

template <class F>
Operator<F> transfer_direct(const RepSpace<F>& rep, const ChainContext<F>& ctx, const F& u) {
  if (rep.N != ctx.N) throw std::invalid_argument("transfer_direct: rep.N != ctx.N");
  const int N = ctx.N, n = ctx.n;
  const long qdim = ctx.quantum_dim();
  Operator<F> T(static_cast<int>(qdim), static_cast<int>(qdim));
  if (rep.dim == 0) return T;

  const Matrix<F> pig = rep.group(ctx.g);

  // L-blocks per site: L[s][(i-1)*N + (j-1)] = delta_ij Id + (u-a_s)^{-1} gen(j, i).
  std::vector<std::vector<Matrix<F>>> L(n);
  for (int s = 0; s < n; ++s) {
    F v = u - ctx.a[s];
    detail::check_pole(v);
    F inv = FieldOps<F>::one() / v;
    L[s].reserve(static_cast<size_t>(N) * N);
    for (int i = 1; i <= N; ++i)
      for (int j = 1; j <= N; ++j) {
        Matrix<F> b = inv * rep.gen(j, i);
        if (i == j) b += Matrix<F>::identity(rep.dim);
        L[s].push_back(std::move(b));
      }
  }

  // DFS over (i_1..i_s),(j_1..j_s) prefixes, carrying the aux-space product.
  std::vector<Matrix<F>> stack(static_cast<size_t>(n) + 1);
  stack[0] = Matrix<F>::identity(rep.dim);
  std::function<void(int, long, long)> rec = [&](int s, long row, long col) {
    if (s == n) {
      T.at(static_cast<int>(row), static_cast<int>(col)) = (stack[n] * pig).trace();
      return;
    }
    for (int i = 1; i <= N; ++i)
      for (int j = 1; j <= N; ++j) {
        stack[s + 1] = stack[s] * L[s][static_cast<size_t>(i - 1) * N + (j - 1)];
        rec(s + 1, row * N + (i - 1), col * N + (j - 1));
      }
  };
  if (n == 0)
    T.at(0, 0) = pig.trace();
  else
    rec(0, 0, 0);
  return T;
}

// Memoized families h_k(u0 + s) = T_{(k)}(u0 + s) and e_k(u0 + s) =
// T_{(1^k)}(u0 + s) at integer shifts s; these are the determinant entries.
template <class F>
class TransferFamily {
 public:
  TransferFamily(ChainContext<F> ctx, F u0) : ctx_(std::move(ctx)), u0_(std::move(u0)) {}

  const ChainContext<F>& ctx() const { return ctx_; }
  const F& u0() const { return u0_; }
  F u_at(int shift) const { return u0_ + FieldOps<F>::from_int(shift); }
  int N() const { return ctx_.N; }
  long qdim() const { return ctx_.quantum_dim(); }

  Operator<F> zero_op() const { return Matrix<F>::zero(static_cast<int>(qdim()), static_cast<int>(qdim())); }
  Operator<F> identity_op() const { return Matrix<F>::identity(static_cast<int>(qdim())); }

  // h_k at integer shift s from the family base point; h_0 = Id, h_{k<0} = 0.
  const Operator<F>& h(int k, int s) const {
    std::scoped_lock lock(mu_);
    auto key = std::make_pair(k, s);
    auto it = h_cache_.find(key);
    if (it != h_cache_.end()) return it->second;
    Operator<F> val;
    if (k < 0)
      val = zero_op();
    else if (k == 0)
      val = identity_op();
    else
      val = transfer_direct(sym_rep<F>(ctx_.N, k), ctx_, u_at(s));
    return h_cache_.emplace(key, std::move(val)).first->second;
  }

  // e_k at integer shift s; e_0 = Id, e_{k<0} = 0, e_{k>N} = 0.
  const Operator<F>& e(int k, int s) const {
    std::scoped_lock lock(mu_);
    auto key = std::make_pair(k, s);
    auto it = e_cache_.find(key);
    if (it != e_cache_.end()) return it->second;
    Operator<F> val;
    if (k < 0 || k > ctx_.N)
      val = zero_op();
    else if (k == 0)
      val = identity_op();
    else
      val = transfer_direct(wedge_rep<F>(ctx_.N, k), ctx_, u_at(s));
    return e_cache_.emplace(key, std::move(val)).first->second;
  }

 private:
  ChainContext<F> ctx_;
  F u0_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<int, int>, Operator<F>> h_cache_;
  mutable std::map<std::pair<int, int>, Operator<F>> e_cache_;
};

template <class F>
const Operator<F>& h_op(const TransferFamily<F>& family, int k, int s) {
  return family.h(k, s);
}
template <class F>
const Operator<F>& e_direct(const TransferFamily<F>& family, int k, int s) {
  return family.e(k, s);
}

// ---- seeded random numeric contexts ---------------------------------------

// Inhomogeneities and the base point u are drawn from the annulus 1<=|z|<=3,
// twist eigenvalues from 0.5<=|z|<=2; u is redrawn until every integer shift
// in [-12, 12] stays at least 0.25 away from all inhomogeneities.
inline Complex random_annulus(std::mt19937_64& rng, double rmin, double rmax) {
  std::uniform_real_distribution<double> ang(0.0, 2.0 * 3.14159265358979323846);
  std::uniform_real_distribution<double> rad2(rmin * rmin, rmax * rmax);
  double r = std::sqrt(rad2(rng));
  double t = ang(rng);
  return {r * std::cos(t), r * std::sin(t)};
}

inline ChainContext<Complex> random_context(int N, int n, std::uint64_t seed) {
  ChainContext<Complex> ctx;
  ctx.N = N;
  ctx.n = n;
  ctx.seed = seed;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < n; ++i) ctx.a.push_back(random_annulus(rng, 1.0, 3.0));
  ctx.g = Matrix<Complex>(N, N);
  for (int i = 0; i < N; ++i) ctx.g.at(i, i) = random_annulus(rng, 0.5, 2.0);
  return ctx;
}

inline Complex random_u(const ChainContext<Complex>& ctx, std::mt19937_64& rng, int shift_window = 12) {
  for (int tries = 0; tries < 1000; ++tries) {
    Complex u = random_annulus(rng, 1.0, 3.0);
    bool ok = true;
    for (const Complex& a : ctx.a)
      for (int t = -shift_window; t <= shift_window && ok; ++t)
        if (std::abs(u + static_cast<double>(t) - a) < 0.25) ok = false;
    if (ok) return u;
  }
  throw pole_error("random_u: could not find a base point clear of poles");
}

}  // namespace topr
