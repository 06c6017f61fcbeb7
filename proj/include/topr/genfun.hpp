#pragma once

// Operator-coefficient generating functions of the commuting family
// {h_k(u+s), e_k(u+s)}: univariate series H(x|u) and E(x|u), the l-variable
// determinants in distinct variables whose coefficients reproduce the
// row/column transfer determinants, and the shift-operator product form of
// the multivariate H identity.
//
// Argument shifts e^{-d/du} are kept as exact integer offsets on the family
// base point (never numeric differentiation): a term materializes into
// operators only after every shift factor has been applied.

#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "topr/identities.hpp"
#include "topr/partition.hpp"
#include "topr/transfer.hpp"

namespace topr {

// Multivariate series with Operator coefficients.  Support contract: every
// exponent k_i >= -(l-1) and total degree sum k_i <= D.
template <class F>
class SeriesPoly {
 public:
  using Exponent = std::vector<int>;

  SeriesPoly(int nvars, int degree_cap, Operator<F> zero)
      : l_(nvars), d_(degree_cap), zero_(std::move(zero)) {}

  int nvars() const { return l_; }
  int degree_cap() const { return d_; }
  const Operator<F>& zero() const { return zero_; }
  const std::map<Exponent, Operator<F>>& terms() const { return terms_; }

  static int total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

  bool in_support(const Exponent& e) const {
    if (static_cast<int>(e.size()) != l_) return false;
    for (int v : e)
      if (v < -(l_ - 1)) return false;
    return total_degree(e) <= d_;
  }

  // Terms outside the support contract are dropped; the builders below
  // enumerate every contribution to an in-support exponent exactly, so a
  // dropped term never influences a reported coefficient.
  void add_term(const Exponent& e, const Operator<F>& c) {
    if (!in_support(e)) return;
    auto it = terms_.find(e);
    if (it == terms_.end())
      terms_.emplace(e, c);
    else
      it->second += c;
  }

  const Operator<F>& coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? zero_ : it->second;
  }

 private:
  int l_;
  int d_;
  Operator<F> zero_;
  std::map<Exponent, Operator<F>> terms_;
};

namespace detail {
// Visit every nonnegative tuple (a_0..a_{l-1}) with sum <= budget.
inline void for_each_tuple(int l, int budget, std::vector<int>& a, int i, const std::function<void()>& fn) {
  if (i == l) {
    fn();
    return;
  }
  const int used = std::accumulate(a.begin(), a.begin() + i, 0);
  for (a[i] = 0; a[i] <= budget - used; ++a[i]) for_each_tuple(l, budget, a, i + 1, fn);
}

inline int parity_sign_of_total(int t) { return ((t % 2) + 2) % 2 == 0 ? 1 : -1; }
}  // namespace detail

// H(x|u0+s) truncated at degree D: coefficient of x^k is h_k(u0+s).
template <class F>
SeriesPoly<F> h_series(const TransferFamily<F>& fam, int s, int D) {
  SeriesPoly<F> out(1, D, fam.zero_op());
  for (int k = 0; k <= D; ++k) out.add_term({k}, fam.h(k, s));
  return out;
}

// E(x|u0+s): coefficient of x^k is (-1)^k e_k(u0+s); vanishes beyond k = N.
template <class F>
SeriesPoly<F> e_series(const TransferFamily<F>& fam, int s, int D) {
  SeriesPoly<F> out(1, D, fam.zero_op());
  for (int k = 0; k <= D; ++k) {
    const Operator<F>& ek = fam.e(k, s);
    out.add_term({k}, k % 2 == 0 ? ek : -ek);
  }
  return out;
}

// det[ x_i^{1-j} H(x_i | u + offs_i + 1 - j) ], i,j = 1..l: the multivariate
// H determinant with an independent integer offset on each row's spectral
// argument.  Expanded over permutations: the sigma-term contributes
//   sgn(sigma) * prod_i h_{a_i}(u + offs_i + 1 - sigma(i)) x_i^{a_i - sigma(i) + 1}.
template <class F>
SeriesPoly<F> h_multivariate_shifted(const TransferFamily<F>& fam, int l, int D,
                                     const std::vector<int>& offs) {
  if (static_cast<int>(offs.size()) != l)
    throw std::invalid_argument("h_multivariate_shifted: offset count differs from l");
  SeriesPoly<F> out(l, D, fam.zero_op());
  if (l == 0) {
    out.add_term({}, fam.identity_op());
    return out;
  }
  const int budget = D + l * (l - 1) / 2;
  std::vector<int> sigma(l);
  std::iota(sigma.begin(), sigma.end(), 1);
  do {
    const int sign = detail::parity_of(sigma);
    std::vector<int> a(l, 0);
    detail::for_each_tuple(l, budget, a, 0, [&]() {
      typename SeriesPoly<F>::Exponent k(l);
      for (int i = 0; i < l; ++i) k[i] = a[i] - sigma[i] + 1;
      if (!out.in_support(k)) return;
      Operator<F> coeff = fam.h(a[0], offs[0] + 1 - sigma[0]);
      for (int i = 1; i < l; ++i) coeff = coeff * fam.h(a[i], offs[i] + 1 - sigma[i]);
      out.add_term(k, sign > 0 ? coeff : -coeff);
    });
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

// Equal-offset specialization: det[ x_i^{1-j} H(x_i | u+1-j) ].
template <class F>
SeriesPoly<F> h_multivariate(const TransferFamily<F>& fam, int l, int D) {
  return h_multivariate_shifted(fam, l, D, std::vector<int>(l, 0));
}

// det[ (-x_i)^{1-j} E(x_i | u + offs_i - 1 + j) ]: the sigma-term carries the
// sign sgn(sigma) * (-1)^{total degree}, entries e_{a_i}(u + offs_i - 1 + sigma(i)).
template <class F>
SeriesPoly<F> e_multivariate_shifted(const TransferFamily<F>& fam, int l, int D,
                                     const std::vector<int>& offs) {
  if (static_cast<int>(offs.size()) != l)
    throw std::invalid_argument("e_multivariate_shifted: offset count differs from l");
  SeriesPoly<F> out(l, D, fam.zero_op());
  if (l == 0) {
    out.add_term({}, fam.identity_op());
    return out;
  }
  const int N = fam.ctx().N;
  const int budget = D + l * (l - 1) / 2;
  std::vector<int> sigma(l);
  std::iota(sigma.begin(), sigma.end(), 1);
  do {
    const int sign = detail::parity_of(sigma);
    std::vector<int> a(l, 0);
    detail::for_each_tuple(l, budget, a, 0, [&]() {
      for (int i = 0; i < l; ++i)
        if (a[i] > N) return;  // e_k vanishes beyond N: whole term is zero
      typename SeriesPoly<F>::Exponent k(l);
      for (int i = 0; i < l; ++i) k[i] = a[i] - sigma[i] + 1;
      if (!out.in_support(k)) return;
      Operator<F> coeff = fam.e(a[0], offs[0] - 1 + sigma[0]);
      for (int i = 1; i < l; ++i) coeff = coeff * fam.e(a[i], offs[i] - 1 + sigma[i]);
      const int tsign = sign * detail::parity_sign_of_total(SeriesPoly<F>::total_degree(k));
      out.add_term(k, tsign > 0 ? coeff : -coeff);
    });
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

// Equal-offset specialization: det[ (-x_i)^{1-j} E(x_i | u-1+j) ].
template <class F>
SeriesPoly<F> e_multivariate(const TransferFamily<F>& fam, int l, int D) {
  return e_multivariate_shifted(fam, l, D, std::vector<int>(l, 0));
}

namespace detail {
// One symbolic addend of the shift-operator product form:
//   sign * prod_i x_i^{xpow_i} e^{shift_i * d/du_i}
// waiting to act on prod_i H(x_i|u_i); offsets stay symbolic until the end.
struct ShiftAtom {
  int sign = 1;
  std::vector<int> xpow;
  std::vector<int> shift;
};
}  // namespace detail

// Product form of the multivariate H identity:
//   prod_{i<j}( e^{-d/du_j}/x_j - e^{-d/du_i}/x_i ) prod_i H(x_i|u_i),
// evaluated at u_1 = ... = u_l = u via integer offset bookkeeping.  Expands
// the shift factors first, materializes operators last.
template <class F>
SeriesPoly<F> h_shift_product(const TransferFamily<F>& fam, int l, int D) {
  std::vector<detail::ShiftAtom> atoms{{1, std::vector<int>(l, 0), std::vector<int>(l, 0)}};
  for (int i = 0; i < l; ++i)
    for (int j = i + 1; j < l; ++j) {
      std::vector<detail::ShiftAtom> next;
      next.reserve(atoms.size() * 2);
      for (const auto& t : atoms) {
        detail::ShiftAtom down_j = t;  // e^{-d/du_j} / x_j
        down_j.xpow[j] -= 1;
        down_j.shift[j] -= 1;
        next.push_back(std::move(down_j));
        detail::ShiftAtom down_i = t;  // - e^{-d/du_i} / x_i
        down_i.sign = -t.sign;
        down_i.xpow[i] -= 1;
        down_i.shift[i] -= 1;
        next.push_back(std::move(down_i));
      }
      atoms = std::move(next);
    }
  SeriesPoly<F> out(l, D, fam.zero_op());
  if (l == 0) {
    out.add_term({}, fam.identity_op());
    return out;
  }
  const int budget = D + l * (l - 1) / 2;
  for (const auto& t : atoms) {
    std::vector<int> a(l, 0);
    detail::for_each_tuple(l, budget, a, 0, [&]() {
      typename SeriesPoly<F>::Exponent k(l);
      for (int i = 0; i < l; ++i) k[i] = t.xpow[i] + a[i];
      if (!out.in_support(k)) return;
      Operator<F> coeff = fam.h(a[0], t.shift[0]);
      for (int i = 1; i < l; ++i) coeff = coeff * fam.h(a[i], t.shift[i]);
      out.add_term(k, t.sign > 0 ? coeff : -coeff);
    });
  }
  return out;
}

// Scaled max-norm gap between two series over the union of their supports.
template <class F>
double series_gap(const SeriesPoly<F>& a, const SeriesPoly<F>& b) {
  double gap = 0.0;
  double scale = 1.0;
  for (const auto& [e, c] : a.terms()) {
    scale = std::max(scale, c.max_abs());
    gap = std::max(gap, (c - b.coefficient(e)).max_abs());
  }
  for (const auto& [e, c] : b.terms()) {
    scale = std::max(scale, c.max_abs());
    if (a.terms().find(e) == a.terms().end()) gap = std::max(gap, (c - a.coefficient(e)).max_abs());
  }
  return gap / scale;
}

// Exponent vector assigned to an integer tuple alpha: k_i = alpha_i - i + 1
// (1-based i).  Components below the support floor are structural zeros of
// the series, matching the vanishing of the straightened determinant.
inline std::vector<int> alpha_exponent(const IntegerVector& alpha) {
  std::vector<int> k(alpha.size());
  for (size_t i = 0; i < alpha.size(); ++i) k[i] = alpha[i] - static_cast<int>(i);
  return k;
}

// H-side coefficient law: the coefficient at alpha equals the row
// determinant T_alpha(u).  Returns the scaled gap; alpha whose total
// exponent exceeds the truncation cannot be read off and is rejected.
template <class F>
double genfun_h_gap(const SeriesPoly<F>& series, const TransferFamily<F>& fam, const IntegerVector& alpha) {
  const auto k = alpha_exponent(alpha);
  if (static_cast<int>(alpha.size()) != series.nvars())
    throw std::invalid_argument("genfun_h_gap: alpha length differs from the variable count");
  if (SeriesPoly<F>::total_degree(k) > series.degree_cap())
    throw std::invalid_argument("genfun_h_gap: alpha outside the truncation box");
  const Operator<F>& lhs = series.coefficient(k);
  Operator<F> rhs = cbr_det(fam, alpha);
  const double scale = std::max({1.0, lhs.max_abs(), rhs.max_abs()});
  return (lhs - rhs).max_abs() / scale;
}

// E-side coefficient law: the coefficient at alpha equals
// (-1)^A sign(straighten(alpha)) T_{lambda'}(u), A = sum(alpha_i - i + 1),
// with T_{lambda'} computed through the column determinant.
template <class F>
double genfun_e_gap(const SeriesPoly<F>& series, const TransferFamily<F>& fam, const IntegerVector& alpha) {
  const auto k = alpha_exponent(alpha);
  if (static_cast<int>(alpha.size()) != series.nvars())
    throw std::invalid_argument("genfun_e_gap: alpha length differs from the variable count");
  if (SeriesPoly<F>::total_degree(k) > series.degree_cap())
    throw std::invalid_argument("genfun_e_gap: alpha outside the truncation box");
  const Operator<F>& lhs = series.coefficient(k);
  Operator<F> rhs = fam.zero_op();
  const SignedPartition sp = straighten(alpha);
  if (!sp.zero) {
    rhs = dual_det(fam, conjugate(sp.partition));
    const int s = sp.sign * detail::parity_sign_of_total(SeriesPoly<F>::total_degree(k));
    if (s < 0) rhs = -rhs;
  }
  const double scale = std::max({1.0, lhs.max_abs(), rhs.max_abs()});
  return (lhs - rhs).max_abs() / scale;
}

}  // namespace topr
