#pragma once

// Generating-series ("vertex") realization of the row insertion/removal
// operators on the polynomial ring in p_1, p_2, ..., plus the coefficient
// law of the product  prod_{i<j}(1 - x_j/x_i) * prod_i H(x_i)  and the
// commutation of adjoint series with multiplication series.
//
// Conventions (all series coefficients act on PPoly):
//   H(x)    = sum_{a>=0} h_a x^a
//   E(x)    = sum_{a>=0} (-1)^a e_a x^a
//   D_H(x)  = sum_{b>=0} D_{h_b} x^{-b}        (adjoint of h_b)
//   D_E(x)  = sum_{b>=0} (-1)^b D_{e_b} x^{-b}
// Acting at charge m (the z^m sector),
//   sum_k psi+_k x^k  =  x^{m+1} z   H(x) D_E(x)
//   sum_k psi-_k x^-k =  x^{-m}  z^-1 E(x) D_H(x)
// so the insertion operator is the classical first-row bordering series and
// the removal operator is its charge-reversed mirror.

#include <cmath>
#include <cstdlib>
#include <vector>

#include "fermion.hpp"
#include "laurent.hpp"
#include "partition.hpp"
#include "ppoly.hpp"

namespace topr {

// Coefficient of x^k in x^{m+1} H(x) D_E(x) f for input charge m; the result
// lives at charge m+1.  Terms whose degree exceeds f.degree_cap() are dropped,
// matching the truncated-ring semantics of PPoly multiplication; callers that
// need the exact image must supply enough cap headroom
// (weight(f) + |k| + |m| + 2 always suffices).
inline PPoly vertex_plus_coefficient(int k, int m, const PPoly& f) {
  const int cap = f.degree_cap();
  PPoly out(cap);
  for (int b = 0; b <= cap; ++b) {
    const int a = k - m - 1 + b;
    if (a < 0) continue;
    PPoly lowered = adjoint_apply(e_poly(b, cap), f);
    if (lowered.is_zero()) continue;
    if (a > cap) continue;  // the whole term sits above the degree cap
    PPoly term = h_poly(a, cap) * lowered;
    if (b % 2 == 0)
      out += term;
    else
      out -= term;
  }
  return out;
}

// Coefficient of x^{-k} in x^{-m} E(x) D_H(x) f for input charge m; the
// result lives at charge m-1.  Same truncation semantics as above.
inline PPoly vertex_minus_coefficient(int k, int m, const PPoly& f) {
  const int cap = f.degree_cap();
  PPoly out(cap);
  for (int b = 0; b <= cap; ++b) {
    const int a = m - k + b;
    if (a < 0) continue;
    PPoly raised = adjoint_apply(h_poly(b, cap), f);
    if (raised.is_zero()) continue;
    if (a > cap) continue;
    PPoly term = e_poly(a, cap) * raised;
    if (a % 2 == 0)
      out += term;
    else
      out -= term;
  }
  return out;
}

// Largest |coefficient| of (series action minus combinatorial action) on
// s_lambda at charge m over k in [kmin, kmax].  The arithmetic is exact
// rational, so any nonzero return is a genuine discrepancy, not roundoff.
inline double vertex_plus_residual(int m, const Partition& lam, int kmin, int kmax) {
  const int span = std::max(std::abs(kmin), std::abs(kmax));
  const int cap = static_cast<int>(lam.weight()) + span + std::abs(m) + 2;
  const PPoly f = schur_poly(lam, cap);
  double worst = 0.0;
  for (int k = kmin; k <= kmax; ++k) {
    PPoly got = vertex_plus_coefficient(k, m, f);
    PPoly want(cap);
    if (auto t = psi_plus_term(k, m, lam))
      want = Rational(t->sign) * schur_poly(t->lam, cap);
    worst = std::max(worst, (got - want).max_abs_coefficient());
  }
  return worst;
}

inline double vertex_minus_residual(int m, const Partition& lam, int kmin, int kmax) {
  const int span = std::max(std::abs(kmin), std::abs(kmax));
  const int cap = static_cast<int>(lam.weight()) + span + std::abs(m) + 2;
  const PPoly f = schur_poly(lam, cap);
  double worst = 0.0;
  for (int k = kmin; k <= kmax; ++k) {
    PPoly got = vertex_minus_coefficient(k, m, f);
    PPoly want(cap);
    if (auto t = psi_minus_term(k, m, lam))
      want = Rational(t->sign) * schur_poly(t->lam, cap);
    worst = std::max(worst, (got - want).max_abs_coefficient());
  }
  return worst;
}

// D_H(x) E(y) = (1 - y/x) E(y) D_H(x), coefficient of x^{-c} y^d applied
// to f:   D_{h_c}(e_d f) - e_d D_{h_c} f - e_{d-1} D_{h_{c-1}} f  ==  0.
inline PPoly dh_e_commutation_gap(int c, int d, const PPoly& f) {
  const int cap = f.degree_cap();
  PPoly lhs = adjoint_apply(h_poly(c, cap), e_poly(d, cap) * f);
  PPoly rhs = e_poly(d, cap) * adjoint_apply(h_poly(c, cap), f);
  if (c >= 1 && d >= 1) rhs += e_poly(d - 1, cap) * adjoint_apply(h_poly(c - 1, cap), f);
  return lhs - rhs;
}

// D_E(x) H(y) = (1 - y/x) H(y) D_E(x), coefficient-wise:
//   D_{e_c}(h_d f) - h_d D_{e_c} f - h_{d-1} D_{e_{c-1}} f  ==  0.
inline PPoly de_h_commutation_gap(int c, int d, const PPoly& f) {
  const int cap = f.degree_cap();
  PPoly lhs = adjoint_apply(e_poly(c, cap), h_poly(d, cap) * f);
  PPoly rhs = h_poly(d, cap) * adjoint_apply(e_poly(c, cap), f);
  if (c >= 1 && d >= 1) rhs += h_poly(d - 1, cap) * adjoint_apply(e_poly(c - 1, cap), f);
  return lhs - rhs;
}

// The product prod_{i<j}(1 - x_j/x_i) * prod_i H(x_i) as a truncated Laurent
// series in x_1..x_l with PPoly coefficients.  Window: every variable keeps
// exponents in [-(l-1), max(hi_exp, l-1) + (l-1)], which retains every
// contribution to coefficients with all exponents <= hi_exp exactly: the
// alternating factors are multiplied first (their partial products never
// leave [-(l-1), l-1]), and the H factors only raise exponents, so a term
// matters for the reported box only while it stays inside the window.
inline LaurentSeries<PPoly> fsym_product(int l, int hi_exp, int degree_cap) {
  const int top = std::max(hi_exp, l - 1) + (l - 1);
  std::vector<int> lo(l, -(l - 1)), hi(l, top);
  const PPoly zero(degree_cap);
  const PPoly one = PPoly::constant(1, degree_cap);
  LaurentSeries<PPoly> prod(lo, hi, zero);
  prod.add_term(std::vector<int>(l, 0), one);
  for (int i = 0; i < l; ++i)
    for (int j = i + 1; j < l; ++j) {
      LaurentSeries<PPoly> factor(lo, hi, zero);
      factor.add_term(std::vector<int>(l, 0), one);
      std::vector<int> e(l, 0);
      e[i] = -1;
      e[j] = +1;
      factor.add_term(e, -one);
      prod = prod * factor;
    }
  for (int v = 0; v < l; ++v) {
    LaurentSeries<PPoly> hfac(lo, hi, zero);
    for (int a = 0; a <= top; ++a) {
      std::vector<int> e(l, 0);
      e[v] = a;
      hfac.add_term(e, h_poly(a, degree_cap));
    }
    prod = prod * hfac;
  }
  return prod;
}

// Coefficient law of the product above: the coefficient of x_1^{a_1} ...
// x_l^{a_l} equals the straightening of the integer tuple (a_1, ..., a_l)
// applied to the h-determinant basis -- sign * s_lambda, or zero when the
// tuple straightens to nothing.  In particular coefficients of non-partition
// monomials do NOT all cancel: e.g. for l = 2 the coefficient of x1^0 x2^2
// is -s_{(1,1)}.  Verified here cell by cell over a whole exponent box.
struct FsymCell {
  IntegerVector alpha;
  double gap = 0.0;
};

struct FsymReport {
  int l = 0;
  int amin = 0;
  int amax = 0;
  int checked = 0;
  int nonzero_nonpartition = 0;  // cells with alpha not a partition yet coefficient != 0
  double residual = 0.0;         // max gap over all cells (exact arithmetic)
  std::vector<FsymCell> mismatched;
  bool pass() const { return mismatched.empty(); }
};

inline FsymReport fsym_check(int l, int amin, int amax) {
  FsymReport rep;
  rep.l = l;
  rep.amin = amin;
  rep.amax = amax;
  const int wmax = l * std::max(amax, 0);
  const int cap = std::max({wmax, std::max(amax, l - 1) + (l - 1), 1});
  LaurentSeries<PPoly> prod = fsym_product(l, amax, cap);
  const PPoly zero(cap);

  IntegerVector alpha(l, amin);
  auto is_partition = [&](const IntegerVector& a) {
    for (int i = 0; i + 1 < l; ++i)
      if (a[i] < a[i + 1]) return false;
    return a.empty() || a.back() >= 0;
  };
  while (true) {
    const PPoly& got = prod.coefficient(alpha);
    SignedPartition sp = straighten(alpha);
    PPoly want = sp.zero ? zero : Rational(sp.sign) * schur_poly(sp.partition, cap);
    const double gap = (got - want).max_abs_coefficient();
    ++rep.checked;
    if (!is_partition(alpha) && !got.is_zero()) ++rep.nonzero_nonpartition;
    if (gap > 0.0) {
      rep.mismatched.push_back({alpha, gap});
      rep.residual = std::max(rep.residual, gap);
    }
    int v = l - 1;
    while (v >= 0 && alpha[v] == amax) alpha[v--] = amin;
    if (v < 0) break;
    ++alpha[v];
  }
  return rep;
}

}  // namespace topr
