#pragma once

// Clifford generators acting on the charged polynomial ring
// B = C[p_1, p_2, ...] (x) C[z, z^-1], in the basis z^m s_lambda:
//
//   psi+_k (z^m s_lambda) = z^{m+1} * straighten(k - m - 1, lambda_1, ...),
//   psi-_k (z^m s_lambda) = z^{m-1} * (-1)^{t+1}
//                           (lambda_1+1, ..., lambda_{t-1}+1, lambda_{t+1}, ...)
//                           where t is the unique row with lambda_t - t = k - m - 1
//                           (no such row -> 0).
//
// These are single insertions/removals on the charged diagram; the
// diagram-sequence route (maya.hpp) is kept as an independent cross-check.
// Everything here is exact rational arithmetic on finitely supported vectors.

#include "topr/maya.hpp"
#include "topr/partition.hpp"
#include "topr/ppoly.hpp"

#include <map>
#include <optional>

namespace topr {

struct ChargedTerm {
  int m = 0;         // power of z
  int sign = 1;      // +-1
  Partition lam;
};

// psi+_k on a single basis vector; nullopt means the result is zero.
inline std::optional<ChargedTerm> psi_plus_term(int k, int m, const Partition& lam) {
  IntegerVector alpha;
  alpha.push_back(k - m - 1);
  for (int i = 1; i <= lam.length(); ++i) alpha.push_back(lam.part(i));
  SignedPartition sp = straighten(alpha);
  if (sp.zero) return std::nullopt;
  return ChargedTerm{m + 1, sp.sign, sp.partition};
}

// psi-_k on a single basis vector.
inline std::optional<ChargedTerm> psi_minus_term(int k, int m, const Partition& lam) {
  const int target = k - m - 1;
  const int l = static_cast<int>(lam.length());
  int t = 0;
  for (int i = 1; i <= l; ++i)
    if (lam.part(i) - i == target) {
      t = i;
      break;
    }
  if (t == 0) {
    if (target >= -l) return std::nullopt;  // within the rows, but no match
    t = -target;                            // tail row: lambda_t = 0, t = m + 1 - k
  }
  IntegerVector out;
  for (int i = 1; i < t; ++i) out.push_back(lam.part(i) + 1);
  for (int i = t + 1; i <= l; ++i) out.push_back(lam.part(i));
  return ChargedTerm{m - 1, (t % 2 == 1) ? 1 : -1, Partition(out)};
}

// Same action computed through the particle/hole encoding: convert, insert or
// remove index k, convert back.  Used to cross-check the closed forms above.
inline std::optional<ChargedTerm> psi_plus_term_maya(int k, int m, const Partition& lam) {
  auto ins = maya_insert(to_maya(ChargedPartition{m, lam}), k);
  if (!ins) return std::nullopt;
  ChargedPartition cp = from_maya(ins->maya);
  return ChargedTerm{cp.charge, ins->sign, cp.partition};
}

inline std::optional<ChargedTerm> psi_minus_term_maya(int k, int m, const Partition& lam) {
  auto rem = maya_remove(to_maya(ChargedPartition{m, lam}), k);
  if (!rem) return std::nullopt;
  ChargedPartition cp = from_maya(rem->maya);
  return ChargedTerm{cp.charge, rem->sign, cp.partition};
}

inline bool maya_action_crosscheck(int k, int m, const Partition& lam) {
  auto eq = [](const std::optional<ChargedTerm>& a, const std::optional<ChargedTerm>& b) {
    if (a.has_value() != b.has_value()) return false;
    if (!a) return true;
    return a->m == b->m && a->sign == b->sign && a->lam == b->lam;
  };
  return eq(psi_plus_term(k, m, lam), psi_plus_term_maya(k, m, lam)) &&
         eq(psi_minus_term(k, m, lam), psi_minus_term_maya(k, m, lam));
}

// Finitely supported vector in B, exact coefficients in the z^m s_lambda basis.
class BosonVector {
 public:
  using Key = std::pair<int, Partition>;

  BosonVector() = default;

  void add(int m, const Partition& lam, const Rational& c) {
    if (c == 0) return;
    Rational& slot = coeffs_[{m, lam}];
    slot += c;
    if (slot == 0) coeffs_.erase({m, lam});
  }
  const std::map<Key, Rational>& terms() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  double max_abs() const {
    double worst = 0.0;
    for (const auto& [key, c] : coeffs_) worst = std::max(worst, std::abs(to_double(c)));
    return worst;
  }
  Rational coefficient(int m, const Partition& lam) const {
    auto it = coeffs_.find({m, lam});
    return it == coeffs_.end() ? Rational(0) : it->second;
  }

  BosonVector& operator+=(const BosonVector& o) {
    for (const auto& [key, c] : o.coeffs_) add(key.first, key.second, c);
    return *this;
  }
  BosonVector& operator-=(const BosonVector& o) {
    for (const auto& [key, c] : o.coeffs_) add(key.first, key.second, -c);
    return *this;
  }
  friend BosonVector operator+(BosonVector a, const BosonVector& b) { return a += b; }
  friend BosonVector operator-(BosonVector a, const BosonVector& b) { return a -= b; }
  friend BosonVector operator*(const Rational& s, BosonVector a) {
    if (s == 0) return BosonVector{};
    for (auto& [key, c] : a.coeffs_) c *= s;
    return a;
  }

  // The charge-m component as a polynomial in the power sums; terms heavier
  // than the cap are dropped, matching the cap semantics of PPoly itself.
  PPoly component(int m, int cap) const {
    PPoly out = PPoly::constant(Rational(0), cap);
    for (const auto& [key, c] : coeffs_)
      if (key.first == m && static_cast<int>(key.second.weight()) <= cap)
        out += c * schur_poly(key.second, cap);
    return out;
  }

  // Schur expansion of a charge component f: coefficient of s_lambda is the
  // constant term of the adjoint of s_lambda applied to f.
  static BosonVector from_polynomial(int m, const PPoly& f) {
    BosonVector out;
    int top = 0;
    for (const auto& [mono, c] : f.terms()) top = std::max(top, PPoly::monomial_degree(mono));
    for (int w = 0; w <= top; ++w)
      for (const Partition& lam : partitions_of_weight(w)) {
        Rational c = adjoint_apply(schur_poly(lam, f.degree_cap()), f).constant_term();
        out.add(m, lam, c);
      }
    return out;
  }

 private:
  std::map<Key, Rational> coeffs_;
};

inline BosonVector psi_plus(int k, const BosonVector& v) {
  BosonVector out;
  for (const auto& [key, c] : v.terms())
    if (auto t = psi_plus_term(k, key.first, key.second))
      out.add(t->m, t->lam, Rational(t->sign) * c);
  return out;
}

inline BosonVector psi_minus(int k, const BosonVector& v) {
  BosonVector out;
  for (const auto& [key, c] : v.terms())
    if (auto t = psi_minus_term(k, key.first, key.second))
      out.add(t->m, t->lam, Rational(t->sign) * c);
  return out;
}

// {psi^eps_k, psi^eta_l} applied to v, minus the Clifford value delta_kl v
// when eps != eta; exactly zero iff the relation holds on v.
inline BosonVector anticommutator_residual(char eps, int k, char eta, int l, const BosonVector& v) {
  auto apply = [](char e, int idx, const BosonVector& w) {
    return e == '+' ? psi_plus(idx, w) : psi_minus(idx, w);
  };
  BosonVector acc = apply(eps, k, apply(eta, l, v));
  acc += apply(eta, l, apply(eps, k, v));
  if (eps != eta && k == l) acc -= Rational(1) * v;
  return acc;
}

// sum_k psi+_k tau1 (x) psi-_k tau2, restricted to output components with
// |lambda'| + |mu'| <= weight_out.  The k-sum is finite for each pair of
// basis terms: psi+ needs index k vacant in the first diagram
// (k >= m1 - l(lambda) + 1) and psi- needs it occupied in the second
// (k <= m2 + mu_1).  Exact; no truncation beyond the caller's tau support.
struct BilinearEntry {
  int m1 = 0, m2 = 0;
  Partition lam, mu;
  Rational coeff;
};

inline std::vector<BilinearEntry> bilinear_terms(const BosonVector& tau1, const BosonVector& tau2,
                                                 int weight_out) {
  std::map<std::pair<BosonVector::Key, BosonVector::Key>, Rational> acc;
  for (const auto& [key1, c1] : tau1.terms())
    for (const auto& [key2, c2] : tau2.terms()) {
      const auto& [m1, lam] = key1;
      const auto& [m2, mu] = key2;
      int klo = m1 - static_cast<int>(lam.length()) + 1 - 1;  // one extra for safety
      int khi = m2 + (mu.length() > 0 ? mu.part(1) : 0);
      for (int k = klo; k <= khi; ++k) {
        auto t1 = psi_plus_term(k, m1, lam);
        if (!t1) continue;
        auto t2 = psi_minus_term(k, m2, mu);
        if (!t2) continue;
        if (static_cast<int>(t1->lam.weight() + t2->lam.weight()) > weight_out) continue;
        acc[{{t1->m, t1->lam}, {t2->m, t2->lam}}] += Rational(t1->sign * t2->sign) * c1 * c2;
      }
    }
  std::vector<BilinearEntry> out;
  for (const auto& [key, c] : acc)
    if (c != 0)
      out.push_back({key.first.first, key.second.first, key.first.second, key.second.second, c});
  return out;
}

inline double bilinear_residual(const BosonVector& tau1, const BosonVector& tau2, int weight_out) {
  double worst = 0.0;
  for (const auto& e : bilinear_terms(tau1, tau2, weight_out))
    worst = std::max(worst, std::abs(to_double(e.coeff)));
  return worst;
}

// Truncation of the Cauchy-kernel tau sum_lambda s_lambda(y) s_lambda, a
// point of the group orbit of 1, hence an exact solution of the bilinear
// identity; only partitions with at most |y| rows contribute.
inline BosonVector cauchy_tau(const std::vector<Rational>& y, int weight_cap) {
  BosonVector out;
  for (int w = 0; w <= weight_cap; ++w)
    for (const Partition& lam : partitions_of_weight(w)) {
      if (lam.length() > static_cast<int>(y.size())) continue;
      out.add(0, lam, schur_value_exact(lam, y));
    }
  return out;
}

}  // namespace topr
