#pragma once

// Truncated multivariate Laurent series: finitely many variables, integer
// exponents kept inside a per-variable window, coefficients in any ring with
// +, -, *.  Terms created outside the window are dropped, so callers must
// choose windows wide enough that every contribution to the coefficients
// they read stays inside the window at every intermediate stage (multiply
// negative-exponent factors first, then nonnegative ones).

#include <map>
#include <stdexcept>
#include <vector>

namespace topr {

template <class Coeff>
class LaurentSeries {
 public:
  using Exponent = std::vector<int>;

  LaurentSeries(std::vector<int> lo, std::vector<int> hi, Coeff zero)
      : lo_(std::move(lo)), hi_(std::move(hi)), zero_(std::move(zero)) {
    if (lo_.size() != hi_.size()) throw std::invalid_argument("LaurentSeries: window size mismatch");
  }

  int nvars() const { return static_cast<int>(lo_.size()); }
  const std::vector<int>& lo() const { return lo_; }
  const std::vector<int>& hi() const { return hi_; }
  const Coeff& zero() const { return zero_; }
  const std::map<Exponent, Coeff>& terms() const { return terms_; }

  bool in_window(const Exponent& e) const {
    for (size_t v = 0; v < lo_.size(); ++v)
      if (e[v] < lo_[v] || e[v] > hi_[v]) return false;
    return true;
  }

  void add_term(const Exponent& e, const Coeff& c) {
    if (static_cast<int>(e.size()) != nvars()) throw std::invalid_argument("LaurentSeries: bad exponent");
    if (!in_window(e)) return;
    auto it = terms_.find(e);
    if (it == terms_.end())
      terms_.emplace(e, c);
    else
      it->second = it->second + c;
  }

  const Coeff& coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? zero_ : it->second;
  }

  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
    LaurentSeries r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
  }
  friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) {
    LaurentSeries r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, zero_minus(b.zero_, c));
    return r;
  }
  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    LaurentSeries r(a.lo_, a.hi_, a.zero_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponent e(ea.size());
        for (size_t v = 0; v < ea.size(); ++v) e[v] = ea[v] + eb[v];
        if (!r.in_window(e)) continue;
        r.add_term(e, ca * cb);
      }
    return r;
  }

 private:
  static Coeff zero_minus(const Coeff& zero, const Coeff& c) { return zero - c; }

  std::vector<int> lo_, hi_;
  Coeff zero_;
  std::map<Exponent, Coeff> terms_;
};

}  // namespace topr
