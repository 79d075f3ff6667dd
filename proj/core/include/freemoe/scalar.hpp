// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace freemoe {

using Complex = std::complex<double>;

/// Exact Gaussian rational re + im*i with re, im in Q.
class ComplexRational {
 public:
  ComplexRational() = default;
  ComplexRational(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }
  ComplexRational(long re, long im = 0) : re_(re), im_(im) {}

  const mpq_class& real() const noexcept { return re_; }
  const mpq_class& imag() const noexcept { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  ComplexRational conj() const { return {re_, -im_}; }
  /// |z|^2, exact.
  mpq_class norm() const { return re_ * re_ + im_ * im_; }
  Complex to_complex() const { return {re_.get_d(), im_.get_d()}; }

  ComplexRational& operator+=(const ComplexRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  ComplexRational& operator-=(const ComplexRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  ComplexRational& operator*=(const ComplexRational& o) {
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    im_ = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    return *this;
  }

  /// *this += a * b without temporaries for the result.
  void add_product(const ComplexRational& a, const ComplexRational& b);

  friend ComplexRational operator+(ComplexRational a, const ComplexRational& b) { return a += b; }
  friend ComplexRational operator-(ComplexRational a, const ComplexRational& b) { return a -= b; }
  friend ComplexRational operator*(ComplexRational a, const ComplexRational& b) { return a *= b; }
  friend ComplexRational operator-(const ComplexRational& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

/// "p/q", or "p" when q == 1.
std::string to_string(const mpq_class& q);

/// Inverse of to_string; also accepts a plain decimal integer. Throws
/// std::invalid_argument on malformed input or a zero denominator.
mpq_class parse_rational(std::string_view text);

/// Natural log of a positive rational without overflowing double for huge
/// numerators or denominators.
double log_positive(const mpq_class& q);

/// Uniform view of the two coefficient fields used by algebra elements.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Complex> {
  using Real = double;
  static constexpr bool exact = false;
  /// Float coefficients below this magnitude are pruned.
  static constexpr double prune_threshold = 1e-15;

  static Complex zero() { return {0.0, 0.0}; }
  static Complex one() { return {1.0, 0.0}; }
  static bool is_zero(const Complex& c) { return std::abs(c) < prune_threshold; }
  static Complex conj(const Complex& c) { return std::conj(c); }
  static Real norm(const Complex& c) { return std::norm(c); }
  static double to_double(const Real& r) { return r; }
  static Complex to_complex(const Complex& c) { return c; }
  static void add_product(Complex& acc, const Complex& a, const Complex& b) { acc += a * b; }
};

template <>
struct ScalarTraits<ComplexRational> {
  using Real = mpq_class;
  static constexpr bool exact = true;

  static ComplexRational zero() { return {}; }
  static ComplexRational one() { return ComplexRational(1); }
  static bool is_zero(const ComplexRational& c) { return c.is_zero(); }
  static ComplexRational conj(const ComplexRational& c) { return c.conj(); }
  static Real norm(const ComplexRational& c) { return c.norm(); }
  static double to_double(const Real& r) { return r.get_d(); }
  static Complex to_complex(const ComplexRational& c) { return c.to_complex(); }
  static void add_product(ComplexRational& acc, const ComplexRational& a,
                          const ComplexRational& b) {
    acc.add_product(a, b);
  }
};

}  // namespace freemoe
