// SPDX-License-Identifier: Apache-2.0
#include "freemoe/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include <Eigen/Eigenvalues>

#include "freemoe/sampling.hpp"

namespace freemoe {
namespace {

// log is evaluated at max(lambda, kLogFloor) in the gradient.
constexpr double kLogFloor = 1e-300;
constexpr double kArmijo = 1e-4;

std::vector<Word> words_up_to(unsigned n, unsigned radius) {
  std::vector<Word> all{Word{}};
  std::vector<Word> frontier{Word{}};
  for (unsigned len = 1; len <= radius; ++len) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      for (unsigned g = 1; g <= n; ++g) {
        for (int e : {1, -1}) {
          const auto syl = w.syllables();
          if (!syl.empty() && syl.back().generator == g &&
              (syl.back().exponent > 0) != (e > 0)) {
            continue;
          }
          next.push_back(w * Word::generator(g, e));
        }
      }
    }
    all.insert(all.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return all;
}

double normalize(std::vector<Complex>& x) {
  double n = 0.0;
  for (const Complex& c : x) {
    n += std::norm(c);
  }
  n = std::sqrt(n);
  for (Complex& c : x) {
    c /= n;
  }
  return n;
}

struct Descent {
  std::vector<Complex> x;
  double value = 0.0;
};

Descent descend(const EntropyObjective& objective, std::vector<Complex> x,
                const OptimizerConfig& config) {
  normalize(x);
  double fx = objective.value(x);
  double t = config.step;
  std::vector<Complex> trial(x.size());
  for (unsigned iter = 0; iter < config.iterations; ++iter) {
    const std::vector<Complex> g = objective.gradient(x);
    double radial = 0.0;
    for (std::size_t b = 0; b < x.size(); ++b) {
      radial += (std::conj(x[b]) * g[b]).real();
    }
    std::vector<Complex> d(x.size());
    double d2 = 0.0;
    for (std::size_t b = 0; b < x.size(); ++b) {
      d[b] = -(g[b] - radial * x[b]);
      d2 += std::norm(d[b]);
    }
    if (std::sqrt(d2) < config.gradient_tolerance) {
      break;
    }
    t = std::min(config.step, 2.0 * t);
    bool accepted = false;
    while (t > 1e-14) {
      for (std::size_t b = 0; b < x.size(); ++b) {
        trial[b] = x[b] + t * d[b];
      }
      normalize(trial);
      const double ft = objective.value(trial);
      if (ft <= fx - kArmijo * t * d2) {
        x.swap(trial);
        fx = ft;
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      break;
    }
  }
  return {std::move(x), fx};
}

}  // namespace

std::vector<WordTuple> ball_basis(unsigned n, unsigned k, unsigned radius) {
  if (n < 1 || k < 1) {
    throw std::invalid_argument("ball_basis needs N >= 1 and k >= 1");
  }
  const std::vector<Word> words = words_up_to(n, radius);
  std::vector<WordTuple> out;
  std::vector<std::size_t> idx(k, 0);
  while (true) {
    WordTuple t(k);
    for (unsigned j = 0; j < k; ++j) {
      t[j] = words[idx[j]];
    }
    out.push_back(std::move(t));
    unsigned j = k;
    while (j > 0 && ++idx[j - 1] == words.size()) {
      idx[j - 1] = 0;
      --j;
    }
    if (j == 0) {
      break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

EntropyObjective::EntropyObjective(unsigned n, unsigned k, std::vector<WordTuple> basis)
    : n_(n), k_(k), basis_(std::move(basis)) {
  const ChannelSpec spec{n, Side::left, k};
  spec.validate();
  out_dim_ = spec.kraus_count();
  weight_ = 1.0 / static_cast<double>(out_dim_);
  if (basis_.empty()) {
    throw std::invalid_argument("entropy objective needs a nonempty basis");
  }
  std::unordered_map<WordTuple, std::vector<std::pair<std::uint32_t, std::uint32_t>>, WordTupleHash>
      hits;
  std::vector<unsigned> m(k);
  for (std::size_t i = 0; i < out_dim_; ++i) {
    std::size_t rest = i;
    for (unsigned j = k; j-- > 0;) {
      m[j] = static_cast<unsigned>(rest % n) + 1;
      rest /= n;
    }
    for (std::size_t c = 0; c < basis_.size(); ++c) {
      if (basis_[c].arity() != k) {
        throw std::invalid_argument("basis tuple arity does not match k");
      }
      WordTuple key = basis_[c];
      for (unsigned j = 0; j < k; ++j) {
        key[j] = Word::generator(m[j]) * key[j];
      }
      hits[std::move(key)].emplace_back(static_cast<std::uint32_t>(i),
                                        static_cast<std::uint32_t>(c));
    }
  }
  std::vector<const decltype(hits)::value_type*> ordered;
  for (const auto& kv : hits) {
    ordered.push_back(&kv);
  }
  std::sort(ordered.begin(), ordered.end(),
            [](const auto* a, const auto* b) { return a->first < b->first; });
  for (const auto* kv : ordered) {
    for (const auto& [i, c] : kv->second) {
      for (const auto& [ip, b] : kv->second) {
        links_.push_back({i, ip, c, b});
      }
    }
  }
}

Eigen::MatrixXcd EntropyObjective::output_matrix(std::span<const Complex> x) const {
  if (x.size() != basis_.size()) {
    throw std::invalid_argument("coefficient vector size does not match basis");
  }
  const auto d = static_cast<Eigen::Index>(out_dim_);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
  for (const Link& l : links_) {
    rho(l.row, l.col) += std::conj(x[l.b]) * x[l.c];
  }
  rho *= weight_;
  return 0.5 * (rho + rho.adjoint());
}

double EntropyObjective::value(std::span<const Complex> x) const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(output_matrix(x),
                                                         Eigen::EigenvaluesOnly);
  double h = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double v = solver.eigenvalues()[i];
    if (v > 0.0) {
      h -= v * std::log(v);
    }
  }
  return h;
}

std::vector<Complex> EntropyObjective::gradient(std::span<const Complex> x) const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(output_matrix(x));
  const Eigen::VectorXd& lambda = solver.eigenvalues();
  Eigen::VectorXd weights(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    weights[i] = -(std::log(std::max(lambda[i], kLogFloor)) + 1.0);
  }
  // dH = tr(G d rho) with G = -(log rho + 1).
  const Eigen::MatrixXcd G =
      solver.eigenvectors() * weights.asDiagonal() * solver.eigenvectors().adjoint();
  std::vector<Complex> grad(basis_.size(), Complex{});
  for (const Link& l : links_) {
    grad[l.b] += G(l.col, l.row) * x[l.c];
  }
  for (Complex& g : grad) {
    g *= 2.0 * weight_;
  }
  return grad;
}

MinimizeResult minimize_entropy(unsigned n, unsigned k, unsigned radius,
                                const OptimizerConfig& config) {
  const ChannelSpec spec{n, Side::left, k};
  spec.validate();
  if (spec.kraus_count() > config.gram_cap) {
    throw ResourceLimitError("output dimension N^k = " + std::to_string(spec.kraus_count()) +
                             " exceeds cap " + std::to_string(config.gram_cap));
  }
  // Ball size grows like (2N-1)^(R k); bail out before enumerating it.
  double ball = 1.0;
  for (unsigned j = 0; j < k; ++j) {
    double per = 1.0;
    double layer = 1.0;
    for (unsigned len = 1; len <= radius; ++len) {
      layer *= (len == 1) ? 2.0 * n : 2.0 * n - 1.0;
      per += layer;
    }
    ball *= per;
  }
  if (ball > static_cast<double>(config.gram_cap)) {
    throw ResourceLimitError("radius-" + std::to_string(radius) + " ball has " +
                             std::to_string(static_cast<std::uint64_t>(ball)) +
                             " basis tuples, above cap " + std::to_string(config.gram_cap));
  }
  if (config.step <= 0.0 || !std::isfinite(config.step)) {
    throw std::invalid_argument("optimizer step must be positive");
  }

  const EntropyObjective objective(n, k, ball_basis(n, k, radius));
  const std::size_t dim = objective.dimension();

  Descent best;
  best.value = std::numeric_limits<double>::infinity();
  unsigned best_restart = 0;
  for (unsigned r = 0; r <= config.restarts; ++r) {
    std::vector<Complex> start(dim, Complex{});
    if (r == 0) {
      start[0] = 1.0;  // delta_e; the identity tuple sorts first
    } else {
      Rng rng(derive_seed(config.seed, r));
      std::normal_distribution<double> normal(0.0, 1.0);
      for (Complex& c : start) {
        const double re = normal(rng);
        const double im = normal(rng);
        c = {re, im};
      }
    }
    Descent run = descend(objective, std::move(start), config);
    if (run.value < best.value) {
      best = std::move(run);
      best_restart = r;
    }
  }

  PureState::Map amplitudes;
  for (std::size_t b = 0; b < dim; ++b) {
    if (best.x[b] != Complex{}) {
      amplitudes.emplace(objective.basis()[b], best.x[b]);
    }
  }
  PureState state = PureState::normalized(k, std::move(amplitudes));
  const double certified = complementary_entropy(n, k, state);
  return {std::move(state), certified, dim, best_restart};
}

}  // namespace freemoe
