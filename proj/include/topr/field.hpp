#pragma once

// Coefficient fields for the operator algebra.  Everything downstream is
// templated on a field F; the two instantiations used in practice are
//   * std::complex<double>  - fast numeric mode,
//   * GaussianRational      - exact mode (a + b*i with rational a, b).
// std::complex<T> has unspecified behaviour for non-floating-point T, hence
// the small hand-rolled Gaussian type.

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace topr {

using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

struct GaussianRational {
  Rational re{0};
  Rational im{0};

  GaussianRational() = default;
  GaussianRational(long v) : re(v) {}  // NOLINT: implicit on purpose
  GaussianRational(Rational r) : re(std::move(r)) {}
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    Rational n = b.re * b.re + b.im * b.im;
    if (n == 0) throw std::domain_error("GaussianRational: division by zero");
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }
  GaussianRational& operator+=(const GaussianRational& b) { return *this = *this + b; }
  GaussianRational& operator-=(const GaussianRational& b) { return *this = *this - b; }
  GaussianRational& operator*=(const GaussianRational& b) { return *this = *this * b; }
  GaussianRational& operator/=(const GaussianRational& b) { return *this = *this / b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

// Uniform access to the handful of scalar operations the generic code needs.
template <class F>
struct FieldOps;

template <>
struct FieldOps<std::complex<double>> {
  static constexpr bool exact = false;
  using real_type = double;
  static std::complex<double> zero() { return {0.0, 0.0}; }
  static std::complex<double> one() { return {1.0, 0.0}; }
  static std::complex<double> from_int(long v) { return {static_cast<double>(v), 0.0}; }
  static double abs_sq(const std::complex<double>& z) { return std::norm(z); }
  static std::complex<double> to_complex(const std::complex<double>& z) { return z; }
  static std::complex<double> conj(const std::complex<double>& z) { return std::conj(z); }
  static bool is_zero(const std::complex<double>& z) { return z == std::complex<double>{}; }
};

template <>
struct FieldOps<GaussianRational> {
  static constexpr bool exact = true;
  using real_type = Rational;
  static GaussianRational zero() { return {}; }
  static GaussianRational one() { return {Rational(1)}; }
  static GaussianRational from_int(long v) { return {Rational(v)}; }
  static double abs_sq(const GaussianRational& z) {
    return to_double(z.re * z.re + z.im * z.im);
  }
  static std::complex<double> to_complex(const GaussianRational& z) {
    return {to_double(z.re), to_double(z.im)};
  }
  static GaussianRational conj(const GaussianRational& z) { return {z.re, -z.im}; }
  static bool is_zero(const GaussianRational& z) { return z.re == 0 && z.im == 0; }
};

using Complex = std::complex<double>;

}  // namespace topr
