#pragma once

// Bridge between the charged-symbol combinatorics and concrete transfer
// operators.  The formal symbols z^m t_lambda carry exactly the boson-space
// Clifford action (prepend a row, straighten, collect the sign); an
// evaluator sends t_lambda to the column determinant at every rank
// N = 1..N_max, so labels with more than N rows vanish exactly on the low
// slots.  On top of that sit the checks: vacuum operator strings, the
// matrix-valued bilinear residual at two spectral points, the bordered
// decomposition of the (l+1)-variable generating determinants through
// subset shift operators, whole-string generating functions on the vacuum,
// and a Gram certificate of evaluated linear independence.

#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "topr/fermion.hpp"
#include "topr/genfun.hpp"
#include "topr/identities.hpp"
#include "topr/partition.hpp"
#include "topr/transfer.hpp"

namespace topr {

// ---------------------------------------------------------------------------
// Symbols and their Clifford action
// ---------------------------------------------------------------------------

// A finitely supported combination of formal symbols z^m t_lambda.  The
// generators act on these labels by literally the boson-space combinatorics
// with s_lambda relabeled t_lambda, so the coefficient bookkeeping is
// delegated to the same container.
struct TildeVector {
  BosonVector coeffs;
};

// Relabeling map z^m s_lambda -> z^m t_lambda; coefficients unchanged.
inline TildeVector phi(const BosonVector& v) { return {v}; }

inline TildeVector vacuum_symbol() {
  TildeVector t;
  t.coeffs.add(0, Partition(), Rational(1));
  return t;
}

// Generator action on symbols: species '+' raises the charge, '-' lowers it.
inline TildeVector psi_tilde(char species, int k, const TildeVector& v) {
  if (species != '+' && species != '-')
    throw std::invalid_argument("psi_tilde: species must be '+' or '-'");
  return {species == '+' ? psi_plus(k, v.coeffs) : psi_minus(k, v.coeffs)};
}

// ---------------------------------------------------------------------------
// Evaluation backends
// ---------------------------------------------------------------------------

// Shared-parameter chain contexts for the sequence slots N = 1..N_max:
// common inhomogeneities, and the rank-N twist equal to the leading
// principal block of one fixed diagonal matrix, so a scalar cross-check at
// one rank constrains every slot.
inline std::vector<ChainContext<Complex>> tilde_chain_contexts(int N_max, int n,
                                                               std::uint64_t seed) {
  if (N_max < 1) throw std::invalid_argument("tilde_chain_contexts: need N_max >= 1");
  std::mt19937_64 rng(seed);
  std::vector<Complex> a;
  for (int i = 0; i < n; ++i) a.push_back(random_annulus(rng, 1.0, 3.0));
  std::vector<Complex> d;
  for (int i = 0; i < N_max; ++i) d.push_back(random_annulus(rng, 0.5, 2.0));
  std::vector<ChainContext<Complex>> out;
  for (int N = 1; N <= N_max; ++N) {
    ChainContext<Complex> ctx;
    ctx.N = N;
    ctx.n = n;
    ctx.a = a;
    ctx.seed = seed;
    ctx.g = Matrix<Complex>(N, N);
    for (int i = 0; i < N; ++i) ctx.g.at(i, i) = d[i];
    out.push_back(ctx);
  }
  return out;
}

// One transfer family per slot, all at the same base point.  Families own a
// cache mutex and cannot be copied, hence the pointer storage.
struct TildeContext {
  std::vector<std::unique_ptr<TransferFamily<Complex>>> fams;  // slot N at index N-1
  int slots() const { return static_cast<int>(fams.size()); }
  const TransferFamily<Complex>& fam(int idx) const { return *fams[idx]; }
};

inline TildeContext tilde_context(const std::vector<ChainContext<Complex>>& ctxs, Complex u) {
  TildeContext tc;
  tc.fams.reserve(ctxs.size());
  for (const auto& ctx : ctxs)
    tc.fams.push_back(std::make_unique<TransferFamily<Complex>>(ctx, u));
  return tc;
}

inline TildeContext tilde_context(int N_max, int n, std::uint64_t seed) {
  const auto ctxs = tilde_chain_contexts(N_max, n, seed);
  std::mt19937_64 rng(seed ^ 0xb5ad4eceda1ce2a9ULL);
  const Complex u = random_u(ctxs.back(), rng);
  return tilde_context(ctxs, u);
}

// Slot-N value of one symbol combination: the sum of coefficients times the
// column determinant at that rank.  A label with more than N rows makes the
// first row of its column determinant identically zero, so the low slots of
// a tall label vanish exactly, never approximately.  The formal charge is
// bookkeeping only and does not enter the value.
inline std::vector<Operator<Complex>> evaluate(const TildeVector& v, const TildeContext& tc) {
  std::vector<Operator<Complex>> out;
  out.reserve(tc.fams.size());
  for (int s = 0; s < tc.slots(); ++s) {
    const auto& fam = tc.fam(s);
    Operator<Complex> acc = fam.zero_op();
    for (const auto& [key, c] : v.coeffs.terms())
      acc += Complex(to_double(c), 0.0) * dual_det(fam, key.second);
    out.push_back(acc);
  }
  return out;
}

// One labeled slot sequence: the symbol z^m t_lambda plus its evaluation.
struct TransferSequence {
  int charge = 0;
  Partition label;
  std::vector<Operator<Complex>> evaluate_at(const TildeContext& tc) const {
    TildeVector v;
    v.coeffs.add(charge, label, Rational(1));
    return evaluate(v, tc);
  }
};

// ---------------------------------------------------------------------------
// Vacuum operator strings
// ---------------------------------------------------------------------------

struct VacuumStringReport {
  bool plus_symbol_ok = false;   // raising string lands exactly on +z^l t_lambda
  bool minus_symbol_ok = false;  // lowering string lands exactly on (-1)^{|lambda|} z^{-l} t_{lambda'}
  double eval_gap = 0.0;         // worst scaled gap against direct row determinants
  bool pass(double tol) const { return plus_symbol_ok && minus_symbol_ok && eval_gap <= tol; }
};

// Raising string: with the label padded to l rows, applying the raising
// generators with indices lambda_j + l - j + 1, innermost j = l first,
// rebuilds the label row by row:
//   psi+_{lambda_1+l} ... psi+_{lambda_l+1}(vacuum) = z^l t_lambda.
// Lowering string: the indices -(lambda_j + l - j), again innermost j = l
// first, remove exactly the occupied slots whose complement encodes the
// conjugate label:
//   psi-_{-lambda_1-l+1} ... psi-_{-lambda_l}(vacuum)
//       = (-1)^{|lambda|} z^{-l} t_{lambda'}.
// The lowering indices must descend with the row as written here; listing
// them with the roles of lambda_1 and lambda_l exchanged repeats an index
// as soon as some lambda_j - lambda_{j+1} = 1 (e.g. the label (2,1)) and
// annihilates the vacuum instead.
inline VacuumStringReport vacuum_strings_report(const TildeContext& tc, const Partition& lam,
                                                int l) {
  if (l < lam.length())
    throw std::invalid_argument("vacuum_strings_report: l is smaller than the label length");
  VacuumStringReport rep;

  TildeVector plus = vacuum_symbol();
  for (int j = l; j >= 1; --j) plus = psi_tilde('+', lam.part(j) + l - j + 1, plus);
  BosonVector plus_want;
  plus_want.add(l, lam, Rational(1));
  {
    BosonVector diff = plus.coeffs;
    diff -= plus_want;
    rep.plus_symbol_ok = diff.is_zero();
  }

  TildeVector minus = vacuum_symbol();
  for (int j = l; j >= 1; --j) minus = psi_tilde('-', -(lam.part(j) + l - j), minus);
  const Partition conj = conjugate(lam);
  const int msign = lam.weight() % 2 == 0 ? 1 : -1;
  BosonVector minus_want;
  minus_want.add(-l, conj, Rational(msign));
  {
    BosonVector diff = minus.coeffs;
    diff -= minus_want;
    rep.minus_symbol_ok = diff.is_zero();
  }

  // Cross-evaluation: the symbol chain goes through column determinants, the
  // predicted label through the row determinant.
  const auto plus_eval = evaluate(plus, tc);
  const auto minus_eval = evaluate(minus, tc);
  for (int s = 0; s < tc.slots(); ++s) {
    const auto& fam = tc.fam(s);
    const Operator<Complex> want_p = cbr_det(fam, IntegerVector(lam.parts()));
    Operator<Complex> want_m = cbr_det(fam, IntegerVector(conj.parts()));
    if (msign < 0) want_m = -want_m;
    const double sp = std::max({1.0, plus_eval[s].max_abs(), want_p.max_abs()});
    const double sm = std::max({1.0, minus_eval[s].max_abs(), want_m.max_abs()});
    rep.eval_gap = std::max(rep.eval_gap, (plus_eval[s] - want_p).max_abs() / sp);
    rep.eval_gap = std::max(rep.eval_gap, (minus_eval[s] - want_m).max_abs() / sm);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Matrix-valued bilinear residual
// ---------------------------------------------------------------------------

struct BilinearMatrixReport {
  std::vector<double> per_slot;  // scaled max-norm of the pair sum, slot N at index N-1
  double worst = 0.0;
};

// Pair coefficients of sum_k (raise_k tau) (x) (lower_k tau) are collected
// exactly over rationals; each slot then receives
//   sum_{mu,nu} d_{mu nu} T^N_mu(u) (x) T^N_nu(v)
// as an (N^n)^2-dimensional matrix whose max-norm is scaled by the largest
// single summand, so a reported cancellation must beat the biggest term.
inline BilinearMatrixReport bilinear_matrix_report(const BosonVector& tau,
                                                   const TildeContext& at_u,
                                                   const TildeContext& at_v, int weight_out) {
  if (at_u.fams.size() != at_v.fams.size())
    throw std::invalid_argument("bilinear_matrix_report: slot counts differ");
  const std::vector<BilinearEntry> entries = bilinear_terms(tau, tau, weight_out);
  BilinearMatrixReport rep;
  for (int s = 0; s < at_u.slots(); ++s) {
    const auto& fu = at_u.fam(s);
    const auto& fv = at_v.fam(s);
    const int q = fu.qdim();
    Matrix<Complex> acc(q * q, q * q);
    double scale = 1.0;
    std::map<Partition, Operator<Complex>> cache_u, cache_v;
    const auto op_at = [](const TransferFamily<Complex>& fam,
                          std::map<Partition, Operator<Complex>>& cache,
                          const Partition& p) -> const Operator<Complex>& {
      auto it = cache.find(p);
      if (it == cache.end()) it = cache.emplace(p, dual_det(fam, p)).first;
      return it->second;
    };
    for (const auto& e : entries) {
      const Matrix<Complex> term = kron(op_at(fu, cache_u, e.lam), op_at(fv, cache_v, e.mu));
      const double c = to_double(e.coeff);
      scale = std::max(scale, std::abs(c) * term.max_abs());
      acc += Complex(c, 0.0) * term;
    }
    const double r = acc.max_abs() / scale;
    rep.per_slot.push_back(r);
    rep.worst = std::max(rep.worst, r);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Bordered decomposition of the multivariate generating determinants
// ---------------------------------------------------------------------------

// Right side of the bordered decomposition of the (l+1)-variable determinant
// in the variables (x, x_1..x_l), summed over the subset S of rows whose
// argument is shifted:
//   H-side: sum_S (-1)^{l-|S|} x^{|S|-l} H(x|u-l+|S|)
//             * prod_{i in S} x_i^{-1} * [l-variable H det, offsets -1 on S]
//   E-side: sum_S (-1)^{|S|}  x^{|S|-l} E(x|u+l-|S|)
//             * prod_{i in S} x_i^{-1} * [l-variable E det, offsets +1 on S]
// The subset factor realizes the elementary symmetric function of the
// commuting monomials x_i^{-1} e^{-d/du_i} (resp. x_i^{-1} e^{+d/du_i});
// offsets stay symbolic integers until every factor has been applied.
//
// The E-side head sign is (-1)^{|S|}, forced by the expansion
// prod_j (y - a_j) = sum_k (-1)^k e_k(a) y^{l-k}; writing the head as
// (-x)^{|S|-l} to mirror the H-side is off by (-1)^l, which the odd-l checks
// expose.
template <class F>
SeriesPoly<F> vertex_decomposition_rhs(const TransferFamily<F>& fam, int l, int D,
                                       char species) {
  if (species != '+' && species != '-')
    throw std::invalid_argument("vertex_decomposition_rhs: species must be '+' or '-'");
  SeriesPoly<F> out(l + 1, D, fam.zero_op());
  const int N = fam.ctx().N;
  // Any sub-term of total degree above D + l, and any head exponent beyond
  // this cap, lands outside the support box for every subset, so the
  // enumeration below is exact.
  const int a0_cap = D + l + l * l + 2;
  for (int mask = 0; mask < (1 << l); ++mask) {
    const int k = std::popcount(static_cast<unsigned>(mask));
    std::vector<int> offs(l, 0);
    for (int i = 0; i < l; ++i)
      if (mask & (1 << i)) offs[i] = species == '+' ? -1 : 1;
    const SeriesPoly<F> sub = species == '+' ? h_multivariate_shifted(fam, l, D + l, offs)
                                             : e_multivariate_shifted(fam, l, D + l, offs);
    const int head_sign = detail::parity_sign_of_total(species == '+' ? l - k : k);
    for (int a0 = 0; a0 <= a0_cap; ++a0) {
      if (species == '-' && a0 > N) break;  // elementary entries vanish beyond N
      Operator<F> head = species == '+' ? fam.h(a0, k - l) : fam.e(a0, l - k);
      int hs = head_sign;
      if (species == '-' && a0 % 2 != 0) hs = -hs;  // E(x) carries (-1)^{a0} x^{a0}
      if (hs < 0) head = -head;
      for (const auto& [es, c] : sub.terms()) {
        typename SeriesPoly<F>::Exponent e(l + 1);
        e[0] = a0 + k - l;
        for (int i = 0; i < l; ++i) e[i + 1] = es[i] - ((mask >> i) & 1);
        if (!out.in_support(e)) continue;
        out.add_term(e, head * c);
      }
    }
  }
  return out;
}

// Scaled worst coefficient gap between the directly expanded (l+1)-variable
// determinant and its bordered decomposition.
template <class F>
double vertex_decomposition_residual(const TransferFamily<F>& fam, int l, int D, char species) {
  const SeriesPoly<F> lhs =
      species == '+' ? h_multivariate(fam, l + 1, D) : e_multivariate(fam, l + 1, D);
  return series_gap(lhs, vertex_decomposition_rhs(fam, l, D, species));
}

// ---------------------------------------------------------------------------
// Whole-string generating functions on the vacuum
// ---------------------------------------------------------------------------

struct GenVacuumReport {
  double gap = 0.0;  // worst scaled coefficient mismatch over the box
  int checked = 0;   // monomials compared, summed over slots
};

// The product of l raising series at descending charges, applied to the
// vacuum symbol, has the generating function
//   z^l (x_1...x_l)^l * [l-variable H determinant],
// while the product of l lowering series at descending charges gives
//   z^{-l} (-1)^{l(l-1)/2} (x_1...x_l)^{l-1} * [l-variable E determinant].
// The lowering prefactor genuinely differs in shape from the raising one:
// the direct l = 1 expansion is plain E(x|u) with no monomial factor at all
// (the x^0 coefficient is the identity, which any x^l prefactor would kill),
// and the two-variable expansion fixes the sign (-1)^{l(l-1)/2}.
inline GenVacuumReport gen_vacuum_report(const TildeContext& tc, int l, int D, char species) {
  if (species != '+' && species != '-')
    throw std::invalid_argument("gen_vacuum_report: species must be '+' or '-'");
  GenVacuumReport rep;
  const int shift = species == '+' ? l : l - 1;  // exponent of the monomial prefactor
  const int psign = species == '+' ? 1 : detail::parity_sign_of_total(l * (l - 1) / 2);
  for (int slot = 0; slot < tc.slots(); ++slot) {
    const auto& fam = tc.fam(slot);
    const SeriesPoly<Complex> series =
        species == '+' ? h_multivariate(fam, l, D) : e_multivariate(fam, l, D);
    std::vector<int> c(l, 0);
    const int budget = D + l * shift;  // monomial box: sum (c_i - shift) <= D
    detail::for_each_tuple(l, budget, c, 0, [&]() {
      // Left: the string applied coefficientwise to the vacuum symbol.  A
      // raising index c_i <= 0 straightens to zero, matching the structural
      // absence of exponents below the series support floor.
      TildeVector w = vacuum_symbol();
      for (int j = l; j >= 1; --j)
        w = psi_tilde(species, species == '+' ? c[j - 1] : -c[j - 1], w);
      Operator<Complex> lhs = fam.zero_op();
      for (const auto& [key, coeff] : w.coeffs.terms())
        lhs += Complex(to_double(coeff), 0.0) * dual_det(fam, key.second);
      // Right: the series coefficient at the prefactor-shifted exponent.
      typename SeriesPoly<Complex>::Exponent e(l);
      for (int i = 0; i < l; ++i) e[i] = c[i] - shift;
      Operator<Complex> rhs = series.coefficient(e);
      if (psign < 0) rhs = -rhs;
      const double scale = std::max({1.0, lhs.max_abs(), rhs.max_abs()});
      rep.gap = std::max(rep.gap, (lhs - rhs).max_abs() / scale);
      rep.checked += 1;
    });
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Evaluated linear independence
// ---------------------------------------------------------------------------

// Smallest singular value of the Gram matrix of all evaluated labels of
// weight <= weight_cap, each label flattened across the WHOLE slot tuple and
// normalized.  The tuple is essential: a single slot N is genuinely
// degenerate, because the rank-N column label (1^N) evaluates there to a
// central scalar multiple of the identity — the same direction as the empty
// label — while the lower slots (where the tall label vanishes and the empty
// one does not) separate them.  A healthy margin certifies that the
// evaluated sequences stay linearly independent at a generic point.
inline double evaluated_gram_smallest_sv(const TildeContext& tc, int weight_cap) {
  std::vector<Eigen::VectorXcd> vecs;
  for (int w = 0; w <= weight_cap; ++w)
    for (const Partition& lam : partitions_of_weight(w)) {
      Eigen::Index dim = 0;
      for (int s = 0; s < tc.slots(); ++s) {
        const long q = tc.fam(s).qdim();
        dim += static_cast<Eigen::Index>(q) * q;
      }
      Eigen::VectorXcd v(dim);
      Eigen::Index pos = 0;
      for (int s = 0; s < tc.slots(); ++s) {
        const Operator<Complex> op = dual_det(tc.fam(s), lam);
        for (int i = 0; i < op.rows(); ++i)
          for (int j = 0; j < op.cols(); ++j) v(pos++) = op.at(i, j);
      }
      const double norm = v.norm();
      if (norm > 0.0) v /= norm;
      vecs.push_back(v);
    }
  const int m = static_cast<int>(vecs.size());
  Eigen::MatrixXcd gram(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) gram(i, j) = vecs[i].dot(vecs[j]);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(gram);
  return svd.singularValues().minCoeff();
}

}  // namespace topr
