#pragma once

// Polynomials in the normalized power sums p_1, p_2, ... with exact rational
// coefficients.  Normalization: p_k = (sum_i y_i^k) / k, so that
//
//   H(x) = sum_k h_k x^k = exp( sum_k p_k x^k ),
//   E(x) = sum_k (-1)^k e_k x^k = exp( - sum_k p_k x^k ).
//
// The grading deg p_k = k is what the truncation degree D refers to.  All
// arithmetic truncates to the carried D (documented); the named constructors
// reject requests that exceed it instead of silently losing terms.

#include "topr/field.hpp"
#include "topr/partition.hpp"

#include <functional>
#include <map>
#include <vector>

namespace topr {

class PPoly {
 public:
  // key[j] = exponent of p_{j+1}, trailing zeros trimmed.
  using Monomial = std::vector<int>;
  using TermMap = std::map<Monomial, Rational>;

  explicit PPoly(int degree_cap = 0) : cap_(degree_cap) {}

  static PPoly constant(Rational c, int degree_cap) {
    PPoly f(degree_cap);
    if (c != 0) f.terms_[{}] = std::move(c);
    return f;
  }
  static PPoly generator(int k, int degree_cap) {  // p_k
    if (k < 1 || k > degree_cap) throw std::invalid_argument("PPoly::generator: k out of range");
    PPoly f(degree_cap);
    Monomial m(k, 0);
    m[k - 1] = 1;
    f.terms_[std::move(m)] = 1;
    return f;
  }

  int degree_cap() const { return cap_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const Monomial& m) const {
    Monomial key = m;
    while (!key.empty() && key.back() == 0) key.pop_back();
    auto it = terms_.find(key);
    return it == terms_.end() ? Rational(0) : it->second;
  }
  Rational constant_term() const { return coefficient({}); }

  static int monomial_degree(const Monomial& m) {
    int d = 0;
    for (size_t j = 0; j < m.size(); ++j) d += static_cast<int>(j + 1) * m[j];
    return d;
  }

  friend PPoly operator+(const PPoly& a, const PPoly& b) {
    PPoly r(std::min(a.cap_, b.cap_));
    r.terms_ = a.terms_;
    for (const auto& [m, c] : b.terms_) add_term(r, m, c);
    r.truncate();
    return r;
  }
  friend PPoly operator-(const PPoly& a, const PPoly& b) {
    PPoly r(std::min(a.cap_, b.cap_));
    r.terms_ = a.terms_;
    for (const auto& [m, c] : b.terms_) add_term(r, m, -c);
    r.truncate();
    return r;
  }
  friend PPoly operator-(const PPoly& a) {
    PPoly r = a;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }
  friend PPoly operator*(const PPoly& a, const PPoly& b) {
    PPoly r(std::min(a.cap_, b.cap_));
    for (const auto& [ma, ca] : a.terms_) {
      const int da = monomial_degree(ma);
      for (const auto& [mb, cb] : b.terms_) {
        if (da + monomial_degree(mb) > r.cap_) continue;
        Monomial m(std::max(ma.size(), mb.size()), 0);
        for (size_t j = 0; j < ma.size(); ++j) m[j] += ma[j];
        for (size_t j = 0; j < mb.size(); ++j) m[j] += mb[j];
        add_term(r, m, ca * cb);
      }
    }
    return r;
  }
  friend PPoly operator*(const Rational& s, const PPoly& a) {
    PPoly r(a.cap_);
    if (s == 0) return r;
    r.terms_ = a.terms_;
    for (auto& [m, c] : r.terms_) c = s * c;
    return r;
  }
  PPoly& operator+=(const PPoly& b) { return *this = *this + b; }
  PPoly& operator-=(const PPoly& b) { return *this = *this - b; }

  friend bool operator==(const PPoly& a, const PPoly& b) { return a.terms_ == b.terms_; }

  // d/dp_j (j >= 1).
  PPoly derivative(int j) const {
    PPoly r(cap_);
    for (const auto& [m, c] : terms_) {
      if (static_cast<int>(m.size()) < j || m[j - 1] == 0) continue;
      Monomial d = m;
      Rational nc = c * d[j - 1];
      d[j - 1] -= 1;
      while (!d.empty() && d.back() == 0) d.pop_back();
      r.terms_[d] += nc;
    }
    erase_zeros(r);
    return r;
  }

  double max_abs_coefficient() const {
    double m = 0;
    for (const auto& [mon, c] : terms_) m = std::max(m, std::abs(to_double(c)));
    return m;
  }

 private:
  static void add_term(PPoly& r, const Monomial& m, const Rational& c) {
    Monomial key = m;
    while (!key.empty() && key.back() == 0) key.pop_back();
    auto [it, inserted] = r.terms_.try_emplace(std::move(key), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) r.terms_.erase(it);
    } else if (it->second == 0) {
      r.terms_.erase(it);
    }
  }
  static void erase_zeros(PPoly& r) {
    for (auto it = r.terms_.begin(); it != r.terms_.end();)
      it = (it->second == 0) ? r.terms_.erase(it) : std::next(it);
  }
  void truncate() {
    for (auto it = terms_.begin(); it != terms_.end();)
      it = (monomial_degree(it->first) > cap_) ? terms_.erase(it) : std::next(it);
  }

  int cap_;
  TermMap terms_;
};

// h_k via the Newton recurrence k h_k = sum_{j=1..k} (j p_j) h_{k-j}.
inline PPoly h_poly(int k, int degree_cap) {
  if (k > degree_cap) throw std::invalid_argument("h_poly: k exceeds degree cap");
  if (k < 0) return PPoly(degree_cap);
  std::vector<PPoly> h;
  h.push_back(PPoly::constant(1, degree_cap));
  for (int n = 1; n <= k; ++n) {
    PPoly s(degree_cap);
    for (int j = 1; j <= n; ++j) s += Rational(j) * (PPoly::generator(j, degree_cap) * h[n - j]);
    h.push_back(Rational(1, n) * s);
  }
  return h[k];
}

// e_k = (-1)^k [x^k] exp(-sum p_j x^j).
inline PPoly e_poly(int k, int degree_cap) {
  if (k > degree_cap) throw std::invalid_argument("e_poly: k exceeds degree cap");
  if (k < 0) return PPoly(degree_cap);
  std::vector<PPoly> c;
  c.push_back(PPoly::constant(1, degree_cap));
  for (int n = 1; n <= k; ++n) {
    PPoly s(degree_cap);
    for (int j = 1; j <= n; ++j) s += Rational(-j) * (PPoly::generator(j, degree_cap) * c[n - j]);
    c.push_back(Rational(1, n) * s);
  }
  return (k % 2 == 0 ? Rational(1) : Rational(-1)) * c[k];
}

namespace detail {
// Determinant of a commutative-ring matrix by column-subset recursion
// (Laplace along the last row of each leading block).
template <class Ring>
Ring subset_det(const std::vector<std::vector<Ring>>& a, const Ring& zero, const Ring& one) {
  const int n = static_cast<int>(a.size());
  if (n == 0) return one;
  std::map<std::vector<int>, Ring> memo;  // column set, processed top-down
  std::function<Ring(std::vector<int>&)> rec = [&](std::vector<int>& cols) -> Ring {
    const int r = n - static_cast<int>(cols.size());  // current row
    if (cols.empty()) return one;
    auto it = memo.find(cols);
    if (it != memo.end()) return it->second;
    Ring acc = zero;
    for (size_t t = 0; t < cols.size(); ++t) {
      int c = cols[t];
      std::vector<int> rest = cols;
      rest.erase(rest.begin() + t);
      Ring sub = rec(rest);
      Ring term = a[r][c] * sub;
      if (t % 2 == 0)
        acc = acc + term;
      else
        acc = acc - term;
    }
    memo.emplace(cols, acc);
    return acc;
  };
  std::vector<int> cols(n);
  std::iota(cols.begin(), cols.end(), 0);
  return rec(cols);
}
}  // namespace detail

// Jacobi-Trudi: s_lambda = det[ h_{lambda_i - i + j} ].
inline PPoly schur_poly(const Partition& lambda, int degree_cap) {
  if (lambda.weight() > degree_cap) throw std::invalid_argument("schur_poly: |lambda| exceeds degree cap");
  const int l = lambda.length();
  if (l == 0) return PPoly::constant(1, degree_cap);
  std::vector<std::vector<PPoly>> a(l, std::vector<PPoly>(l, PPoly(degree_cap)));
  for (int i = 1; i <= l; ++i)
    for (int j = 1; j <= l; ++j) a[i - 1][j - 1] = h_poly(lambda.part(i) - i + j, degree_cap);
  return detail::subset_det(a, PPoly(degree_cap), PPoly::constant(1, degree_cap));
}

// Evaluate at finitely many variables y: p_k -> (sum y_i^k)/k.
inline Complex eval_at(const PPoly& f, const std::vector<Complex>& y) {
  std::vector<Complex> pk;  // pk[j] = value of p_{j+1}
  auto p_val = [&](int k) -> Complex {
    while (static_cast<int>(pk.size()) < k) {
      int j = static_cast<int>(pk.size()) + 1;
      Complex s = 0;
      for (const Complex& v : y) s += std::pow(v, j);
      pk.push_back(s / static_cast<double>(j));
    }
    return pk[k - 1];
  };
  Complex total = 0;
  for (const auto& [m, c] : f.terms()) {
    Complex t = to_double(c);
    for (size_t j = 0; j < m.size(); ++j)
      for (int r = 0; r < m[j]; ++r) t *= p_val(static_cast<int>(j) + 1);
    total += t;
  }
  return total;
}

// Adjoint of multiplication: for f = phi(p_1, 2 p_2, 3 p_3, ...),
// D_f = phi(d/dp_1, d/dp_2, ...).  Monomial-wise this is
// c * prod_j (1/j)^{m_j} (d/dp_j)^{m_j}.
inline PPoly adjoint_apply(const PPoly& f, const PPoly& g) {
  PPoly out(g.degree_cap());
  for (const auto& [m, c] : f.terms()) {
    PPoly cur = g;
    Rational scale = c;
    for (size_t j = 0; j < m.size() && !cur.is_zero(); ++j) {
      for (int r = 0; r < m[j]; ++r) {
        cur = cur.derivative(static_cast<int>(j) + 1);
        scale /= static_cast<long>(j + 1);
      }
    }
    out += scale * cur;
  }
  return out;
}

// Numeric Schur value via Jacobi-Trudi with scalar h_k(y).
inline Complex schur_value(const Partition& lambda, const std::vector<Complex>& y) {
  const int l = lambda.length();
  if (l == 0) return 1.0;
  const int kmax = lambda.part(1) + l;
  std::vector<Complex> p(kmax + 1, 0.0), h(kmax + 1, 0.0);
  for (int k = 1; k <= kmax; ++k)
    for (const Complex& v : y) p[k] += std::pow(v, k);
  h[0] = 1.0;
  for (int n = 1; n <= kmax; ++n) {
    Complex s = 0;
    for (int j = 1; j <= n; ++j) s += p[j] * h[n - j];
    h[n] = s / static_cast<double>(n);
  }
  auto hv = [&](int k) -> Complex { return (k < 0 || k > kmax) ? Complex(0) : h[k]; };
  // Permutation expansion is fine at these sizes only for small l; use
  // fraction-free-ish Laplace via subset recursion instead.
  std::vector<std::vector<Complex>> a(l, std::vector<Complex>(l));
  for (int i = 1; i <= l; ++i)
    for (int j = 1; j <= l; ++j) a[i - 1][j - 1] = hv(lambda.part(i) - i + j);
  return detail::subset_det(a, Complex(0), Complex(1));
}

// Exact Schur value at rational points, same route as schur_value.
inline Rational schur_value_exact(const Partition& lambda, const std::vector<Rational>& y) {
  const int l = lambda.length();
  if (l == 0) return Rational(1);
  const int kmax = lambda.part(1) + l;
  std::vector<Rational> p(kmax + 1, Rational(0)), h(kmax + 1, Rational(0));
  for (int k = 1; k <= kmax; ++k)
    for (const Rational& v : y) {
      Rational pw(1);
      for (int r = 0; r < k; ++r) pw *= v;
      p[k] += pw;
    }
  h[0] = 1;
  for (int n = 1; n <= kmax; ++n) {
    Rational s(0);
    for (int j = 1; j <= n; ++j) s += p[j] * h[n - j];
    h[n] = s / n;
  }
  auto hv = [&](int k) -> Rational { return (k < 0 || k > kmax) ? Rational(0) : h[k]; };
  std::vector<std::vector<Rational>> a(l, std::vector<Rational>(l));
  for (int i = 1; i <= l; ++i)
    for (int j = 1; j <= l; ++j) a[i - 1][j - 1] = hv(lambda.part(i) - i + j);
  return detail::subset_det(a, Rational(0), Rational(1));
}

}  // namespace topr
