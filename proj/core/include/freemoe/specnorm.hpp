// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "freemoe/algebra.hpp"

namespace freemoe {

/// One point of a trace-moment schedule: value = tau(h^power)^(1/(2*power)).
struct MomentPoint {
  unsigned power = 1;
  double value = 0.0;
};

struct MomentOptions {
  std::vector<unsigned> schedule{1, 2, 4, 8, 16};
  /// Largest support any intermediate power of h may reach.
  std::size_t support_budget = 5'000'000;
};

struct MomentBound {
  double lower = 0.0;
  /// Every power that was evaluated, in schedule order.
  std::vector<MomentPoint> schedule;
  bool truncated = false;
  /// First scheduled power that could not be evaluated within the budget.
  std::optional<unsigned> truncated_at;
};

/// Two-sided bracket for the convolution operator norm ||L_f||.
struct NormEstimate {
  double lower = 0.0;
  double upper = 0.0;
  std::vector<MomentPoint> moment_schedule;
  std::string lower_method;
  std::string upper_method;
  bool truncated = false;
  std::optional<unsigned> truncated_at;
};

class MomentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline double real_root_of_moment(double tau, unsigned power) {
  return tau <= 0.0 ? 0.0 : std::exp(std::log(tau) / (2.0 * power));
}

inline double real_root_of_moment(const ComplexRational& tau, unsigned power) {
  if (sgn(tau.imag()) != 0 || sgn(tau.real()) < 0) {
    throw std::logic_error("trace moment of a positive element is not a nonnegative real");
  }
  if (sgn(tau.real()) == 0) {
    return 0.0;
  }
  return std::exp(log_positive(tau.real()) / (2.0 * power));
}

inline double real_root_of_moment(const Complex& tau, unsigned power) {
  return real_root_of_moment(std::max(tau.real(), 0.0), power);
}

/// Lazily computes h^j = h^ceil(j/2) * h^floor(j/2), caching every power.
template <class S>
class PowerCache {
 public:
  PowerCache(AlgebraElement<S> h, std::size_t budget) : budget_(budget) {
    powers_.emplace(1u, std::move(h));
  }

  /// nullptr when the budget is exceeded.
  const AlgebraElement<S>* get(unsigned j) {
    if (auto it = powers_.find(j); it != powers_.end()) {
      return &it->second;
    }
    const unsigned hi = (j + 1) / 2;
    const unsigned lo = j / 2;
    const AlgebraElement<S>* a = get(hi);
    if (a == nullptr) {
      return nullptr;
    }
    const AlgebraElement<S>* b = get(lo);
    if (b == nullptr) {
      return nullptr;
    }
    auto product = convolve_within(*a, *b, budget_);
    if (!product) {
      return nullptr;
    }
    return &powers_.emplace(j, std::move(*product)).first->second;
  }

 private:
  std::size_t budget_;
  std::map<unsigned, AlgebraElement<S>> powers_;
};

}  // namespace detail

/// Certified lower bound for ||L_f|| from the faithful trace:
/// max over the schedule of tau((f^* f)^m)^(1/(2m)).
///
/// tau(h^m) is evaluated as <h^ceil(m/2), h^floor(m/2)>, so power m needs
/// h^ceil(m/2). Powers whose intermediate support exceeds the budget end
/// the schedule; the result then carries the best bound so far and the
/// truncation flag.
template <class S>
MomentBound moment_lower(const AlgebraElement<S>& f, const MomentOptions& options = {}) {
  if (options.schedule.empty()) {
    throw MomentError("moment schedule must be nonempty");
  }
  for (unsigned m : options.schedule) {
    if (m == 0) {
      throw MomentError("moment powers must be at least 1");
    }
  }
  MomentBound result;
  auto h = convolve_within(adjoint(f), f, options.support_budget);
  if (!h) {
    result.truncated = true;
    result.truncated_at = options.schedule.front();
    return result;
  }
  detail::PowerCache<S> cache(std::move(*h), options.support_budget);
  for (unsigned m : options.schedule) {
    S tau = ScalarTraits<S>::zero();
    if (m == 1) {
      tau = trace(*cache.get(1));
    } else {
      const AlgebraElement<S>* hi = cache.get((m + 1) / 2);
      const AlgebraElement<S>* lo = hi ? cache.get(m / 2) : nullptr;
      if (hi == nullptr || lo == nullptr) {
        result.truncated = true;
        result.truncated_at = m;
        break;
      }
      tau = inner_product(*hi, *lo);
    }
    const double value = detail::real_root_of_moment(tau, m);
    result.schedule.push_back({m, value});
    result.lower = std::max(result.lower, value);
  }
  return result;
}

struct HaagerupBound {
  double value = 0.0;
  /// True when f lives on a single E_n and the product-of-free-groups
  /// inequality applies verbatim; otherwise the value is the grade-wise
  /// triangle-inequality sum of the single-grade bounds.
  bool single_grade = true;
};

/// sum over grades n of prod_j (n_j + 1) * ||f * chi_{E_n}||_2.
template <class S>
HaagerupBound haagerup_upper(const AlgebraElement<S>& f) {
  HaagerupBound out;
  const auto pieces = grade_decomposition(f);
  out.single_grade = pieces.size() <= 1;
  for (const auto& [grade, piece] : pieces) {
    double constant = 1.0;
    for (std::size_t n : grade) {
      constant *= static_cast<double>(n + 1);
    }
    out.value += constant * l2_norm(piece);
  }
  return out;
}

/// Both sides at once.
template <class S>
NormEstimate estimate_norm(const AlgebraElement<S>& f, const MomentOptions& options = {}) {
  const MomentBound lower = moment_lower(f, options);
  const HaagerupBound upper = haagerup_upper(f);
  NormEstimate est;
  est.lower = lower.lower;
  est.upper = upper.value;
  est.moment_schedule = lower.schedule;
  est.truncated = lower.truncated;
  est.truncated_at = lower.truncated_at;
  est.lower_method = std::string("trace-moments/") + (ScalarTraits<S>::exact ? "exact" : "float");
  est.upper_method = upper.single_grade ? "haagerup-product-single-grade"
                                        : "haagerup-product-gradewise-triangle (derived)";
  return est;
}

/// Coefficients a_{vw}, v, w in {1..N}^k, stored row-major as an
/// N^k x N^k array. Multi-index v maps to row sum_j (v_j - 1) N^(k-1-j).
template <class S>
class CoefficientMatrix {
 public:
  CoefficientMatrix(unsigned n, unsigned k) : n_(n), k_(k) {
    if (n < 1 || k < 1) {
      throw std::invalid_argument("coefficient matrix needs N >= 1 and k >= 1");
    }
    dim_ = 1;
    for (unsigned j = 0; j < k; ++j) {
      if (dim_ > (std::size_t{1} << 20) / n) {
        throw std::invalid_argument("coefficient matrix dimension N^k too large");
      }
      dim_ *= n;
    }
    entries_.assign(dim_ * dim_, ScalarTraits<S>::zero());
  }

  unsigned N() const noexcept { return n_; }
  unsigned k() const noexcept { return k_; }
  std::size_t dimension() const noexcept { return dim_; }

  S& operator()(std::size_t row, std::size_t col) { return entries_.at(row * dim_ + col); }
  const S& operator()(std::size_t row, std::size_t col) const {
    return entries_.at(row * dim_ + col);
  }

  /// Generator indices (1-based) of the multi-index with the given row number.
  std::vector<unsigned> multi_index(std::size_t row) const {
    std::vector<unsigned> v(k_);
    for (unsigned j = k_; j-- > 0;) {
      v[j] = static_cast<unsigned>(row % n_) + 1;
      row /= n_;
    }
    return v;
  }

  S trace() const {
    S t = ScalarTraits<S>::zero();
    for (std::size_t i = 0; i < dim_; ++i) {
      t += (*this)(i, i);
    }
    return t;
  }

  typename ScalarTraits<S>::Real frobenius_norm_squared() const {
    typename ScalarTraits<S>::Real total = 0;
    for (const S& c : entries_) {
      total += ScalarTraits<S>::norm(c);
    }
    return total;
  }

  double frobenius_norm() const {
    return std::sqrt(ScalarTraits<S>::to_double(frobenius_norm_squared()));
  }

 private:
  unsigned n_;
  unsigned k_;
  std::size_t dim_ = 1;
  std::vector<S> entries_;
};

/// sum_{v,w} a_{vw} delta_{(v_1^{-1} w_1, ..., v_k^{-1} w_k)}: the element
/// whose left convolution operator is sum a_{vw} U_v^* U_w.
template <class S>
AlgebraElement<S> flatten_bilinear(const CoefficientMatrix<S>& a) {
  AlgebraElement<S> out(a.k());
  for (std::size_t row = 0; row < a.dimension(); ++row) {
    const auto v = a.multi_index(row);
    for (std::size_t col = 0; col < a.dimension(); ++col) {
      const S& c = a(row, col);
      if (ScalarTraits<S>::is_zero(c)) {
        continue;
      }
      const auto w = a.multi_index(col);
      WordTuple key(a.k());
      for (unsigned j = 0; j < a.k(); ++j) {
        key[j] = Word::generator(v[j], -1) * Word::generator(w[j]);
      }
      out.add_term(key, c);
    }
  }
  return out;
}

/// sqrt((1 + 9/N)^k - 1), evaluated without cancellation for large N.
double block_growth_factor(unsigned n, unsigned k);

/// N^(k/2) sqrt((1 + 9/N)^k - 1) * ||a||_2 for traceless a.
///
/// Tracelessness is exact in exact mode and |tr a| <= 1e-12 in float mode;
/// anything else throws std::invalid_argument.
template <class S>
double bilinear_norm_upper(const CoefficientMatrix<S>& a) {
  const S tr = a.trace();
  if constexpr (ScalarTraits<S>::exact) {
    if (!tr.is_zero()) {
      throw std::invalid_argument("bilinear norm bound requires tr(a) = 0");
    }
  } else {
    if (std::abs(tr) > 1e-12) {
      throw std::invalid_argument("bilinear norm bound requires tr(a) = 0 (|tr a| = " +
                                  std::to_string(std::abs(tr)) + ")");
    }
  }
  return std::pow(static_cast<double>(a.N()), 0.5 * a.k()) * block_growth_factor(a.N(), a.k()) *
         a.frobenius_norm();
}

}  // namespace freemoe
