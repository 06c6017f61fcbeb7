#pragma once

// Determinant identities among the commuting family {h_k(u+s), e_k(u+s)}:
//
//   row det:    T_alpha(u) = det_{ij}[ h_{alpha_i - i + j}(u + 1 - j) ]
//   column det: T_lambda(u) = det_{ij}[ e_{lambda'_i - i + j}(u - 1 + j) ]
//   Newton:     sum_p (-1)^{a-p} h_{b+p}(u - p) e_{-p-a}(u - p - 1) = delta_ab
//
// The row determinant is defined for any integer tuple alpha and is
// antisymmetric under the straightening moves; straightening_residual and
// the vanishing-pattern grid verify exactly that.  Determinants are expanded
// over permutations: the entries commute, sizes stay tiny, and no division
// is ever performed on operators.

#include "topr/partition.hpp"
#include "topr/transfer.hpp"

#include <algorithm>
#include <numeric>

namespace topr {

namespace detail {
inline int parity_of(const std::vector<int>& s) {
  int sign = 1;
  for (size_t a = 0; a < s.size(); ++a)
    for (size_t b = a + 1; b < s.size(); ++b)
      if (s[a] > s[b]) sign = -sign;
  return sign;
}
}  // namespace detail

// det of an l x l matrix of commuting operators, given by a 1-based entry
// callback; the empty determinant is the identity.
template <class F>
Operator<F> operator_det(int l, const std::function<Operator<F>(int, int)>& entry, long qdim) {
  if (l == 0) return Matrix<F>::identity(static_cast<int>(qdim));
  std::vector<int> perm(l);
  std::iota(perm.begin(), perm.end(), 0);
  Operator<F> acc = Matrix<F>::zero(static_cast<int>(qdim), static_cast<int>(qdim));
  do {
    Operator<F> term = entry(1, perm[0] + 1);
    for (int i = 2; i <= l; ++i) term = term * entry(i, perm[i - 1] + 1);
    if (detail::parity_of(perm) < 0)
      acc -= term;
    else
      acc += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

// Row (complete) determinant for an arbitrary integer tuple, at an integer
// shift from the family base point.
template <class F>
Operator<F> cbr_det(const TransferFamily<F>& fam, const IntegerVector& alpha, int base_shift = 0) {
  const int l = static_cast<int>(alpha.size());
  return operator_det<F>(
      l, [&](int i, int j) { return fam.h(alpha[i - 1] - i + j, base_shift + 1 - j); }, fam.qdim());
}

// Column (wedge) determinant for a partition.
template <class F>
Operator<F> dual_det(const TransferFamily<F>& fam, const Partition& lam, int base_shift = 0) {
  const Partition conj = conjugate(lam);
  const int l = static_cast<int>(conj.length());
  return operator_det<F>(
      l, [&](int i, int j) { return fam.e(conj.part(i) - i + j, base_shift + j - 1); }, fam.qdim());
}

// Newton relation residual; the exact identity makes this the zero operator.
template <class F>
Operator<F> newton_residual(const TransferFamily<F>& fam, int a, int b) {
  Operator<F> acc = fam.zero_op();
  for (int p = std::max(-b, -a - fam.N()); p <= -a; ++p) {
    Operator<F> term = fam.h(b + p, -p) * fam.e(-p - a, -p - 1);
    if (((a - p) % 2 + 2) % 2 == 1)
      acc -= term;
    else
      acc += term;
  }
  if (a == b) acc -= fam.identity_op();
  return acc;
}

// || row-det(alpha) - straightened target ||_max; the scale output carries
// max(1, ||target||) so callers can form a relative residual.
template <class F>
double straightening_residual(const TransferFamily<F>& fam, const IntegerVector& alpha,
                              double* scale_out = nullptr) {
  Operator<F> lhs = cbr_det(fam, alpha);
  SignedPartition sp = straighten(alpha);
  Operator<F> target = fam.zero_op();
  if (!sp.zero) {
    IntegerVector padded = sp.partition.parts();
    padded.resize(alpha.size(), 0);
    target = cbr_det(fam, padded);
    if (sp.sign < 0) target = -target;
  }
  if (scale_out) *scale_out = std::max(1.0, target.max_abs());
  return (lhs - target).max_abs();
}

// Vanishing pattern of the two-row determinant over a rectangle of tuples
// (alpha_1, alpha_2).  Observed zeros (norm below 1e-6 x the median norm of
// the predicted-nonzero cells) must coincide with the straightening
// prediction alpha_2 == alpha_1 + 1 (adjacent diagonal).
struct PatternGrid {
  int a1min = 0, a1max = 0, a2min = 0, a2max = 0;
  std::vector<std::vector<double>> norm;          // [a1 - a1min][a2 - a2min]
  std::vector<std::vector<bool>> predicted_zero;  // straightening says Zero
  std::vector<std::vector<bool>> observed_zero;   // norm fell under threshold
  double threshold = 0.0;
  bool consistent = false;
};

inline PatternGrid fig1_pattern(const TransferFamily<Complex>& fam, int a1min, int a1max,
                                int a2min, int a2max) {
  PatternGrid grid;
  grid.a1min = a1min;
  grid.a1max = a1max;
  grid.a2min = a2min;
  grid.a2max = a2max;
  std::vector<double> nonzero_norms;
  for (int a1 = a1min; a1 <= a1max; ++a1) {
    std::vector<double> row_norm;
    std::vector<bool> row_pred;
    for (int a2 = a2min; a2 <= a2max; ++a2) {
      double nrm = cbr_det(fam, IntegerVector{a1, a2}).max_abs();
      bool pred = straighten(IntegerVector{a1, a2}).zero;
      if (!pred) nonzero_norms.push_back(nrm);
      row_norm.push_back(nrm);
      row_pred.push_back(pred);
    }
    grid.norm.push_back(std::move(row_norm));
    grid.predicted_zero.push_back(std::move(row_pred));
  }
  if (nonzero_norms.empty()) {
    grid.threshold = 1e-8;
  } else {
    std::sort(nonzero_norms.begin(), nonzero_norms.end());
    grid.threshold = 1e-6 * nonzero_norms[nonzero_norms.size() / 2];
  }
  grid.consistent = true;
  for (size_t i = 0; i < grid.norm.size(); ++i) {
    std::vector<bool> row_obs;
    for (size_t j = 0; j < grid.norm[i].size(); ++j) {
      bool obs = grid.norm[i][j] < grid.threshold;
      if (obs != grid.predicted_zero[i][j]) grid.consistent = false;
      row_obs.push_back(obs);
    }
    grid.observed_zero.push_back(std::move(row_obs));
  }
  return grid;
}

}  // namespace topr
