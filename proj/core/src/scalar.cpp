// SPDX-License-Identifier: Apache-2.0
#include "freemoe/scalar.hpp"

#include <cmath>
#include <stdexcept>

namespace freemoe {

namespace {

bool is_integer(const mpq_class& q) { return mpz_cmp_ui(mpq_denref(q.get_mpq_t()), 1) == 0; }

}  // namespace

void ComplexRational::add_product(const ComplexRational& a, const ComplexRational& b) {
  if (is_integer(re_) && is_integer(im_) && is_integer(a.re_) && is_integer(a.im_) &&
      is_integer(b.re_) && is_integer(b.im_)) {
    mpz_ptr re = mpq_numref(re_.get_mpq_t());
    mpz_ptr im = mpq_numref(im_.get_mpq_t());
    mpz_srcptr ar = mpq_numref(a.re_.get_mpq_t());
    mpz_srcptr ai = mpq_numref(a.im_.get_mpq_t());
    mpz_srcptr br = mpq_numref(b.re_.get_mpq_t());
    mpz_srcptr bi = mpq_numref(b.im_.get_mpq_t());
    mpz_addmul(re, ar, br);
    mpz_submul(re, ai, bi);
    mpz_addmul(im, ar, bi);
    mpz_addmul(im, ai, br);
    return;
  }
  thread_local mpq_class tmp;
  mpq_mul(tmp.get_mpq_t(), a.re_.get_mpq_t(), b.re_.get_mpq_t());
  re_ += tmp;
  mpq_mul(tmp.get_mpq_t(), a.im_.get_mpq_t(), b.im_.get_mpq_t());
  re_ -= tmp;
  mpq_mul(tmp.get_mpq_t(), a.re_.get_mpq_t(), b.im_.get_mpq_t());
  im_ += tmp;
  mpq_mul(tmp.get_mpq_t(), a.im_.get_mpq_t(), b.re_.get_mpq_t());
  im_ += tmp;
}

std::string to_string(const mpq_class& q) { return q.get_str(10); }

mpq_class parse_rational(std::string_view text) {
  const std::string s(text);
  if (s.empty()) {
    throw std::invalid_argument("empty rational");
  }
  const auto slash = s.find('/');
  auto valid_int = [](const std::string& part, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !part.empty() && (part[0] == '-' || part[0] == '+')) {
      i = 1;
    }
    if (i == part.size()) {
      return false;
    }
    for (; i < part.size(); ++i) {
      if (part[i] < '0' || part[i] > '9') {
        return false;
      }
    }
    return true;
  };
  const std::string num = s.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false)) {
    throw std::invalid_argument("malformed rational '" + s + "'");
  }
  mpz_class n(num[0] == '+' ? num.substr(1) : num, 10);
  mpz_class d(den, 10);
  if (d == 0) {
    throw std::invalid_argument("zero denominator in '" + s + "'");
  }
  mpq_class q(n, d);
  q.canonicalize();
  return q;
}

double log_positive(const mpq_class& q) {
  if (sgn(q) <= 0) {
    throw std::domain_error("log of non-positive rational");
  }
  long num_exp = 0;
  long den_exp = 0;
  const double num_mant = mpz_get_d_2exp(&num_exp, q.get_num_mpz_t());
  const double den_mant = mpz_get_d_2exp(&den_exp, q.get_den_mpz_t());
  return std::log(num_mant) - std::log(den_mant) +
         static_cast<double>(num_exp - den_exp) * std::log(2.0);
}

}  // namespace freemoe
