#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "locinfer/random.hpp"

namespace locinfer {

/// Inputs of the seed-coverage bound on the mutual-follower graph.
///
/// `population` is |V_A|. Leaving it empty evaluates the bound in the
/// |V_A| -> infinity limit, where C(s,i) (p/(1-p))^i -> (alpha d_m)^i / i!.
struct CoverageBoundParams {
  std::optional<std::uint64_t> population;
  double alpha = 0.2;
  double mutual_degree = 15.0;
  unsigned t = 1;

  std::uint64_t seed_count() const {
    if (!population) throw std::logic_error("seed_count needs a finite population");
    return static_cast<std::uint64_t>(std::llround(alpha * static_cast<double>(*population)));
  }

  double edge_probability() const {
    if (!population) throw std::logic_error("edge_probability needs a finite population");
    return mutual_degree / static_cast<double>(*population - 1);
  }

  void validate() const {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in (0,1]");
    if (!(mutual_degree >= 0.0) || !std::isfinite(mutual_degree))
      throw std::invalid_argument("d_m must be a finite non-negative number");
    if (t < 1) throw std::invalid_argument("t must be >= 1");
    if (population) {
      if (*population < 2) throw std::invalid_argument("population must be >= 2");
      if (edge_probability() >= 1.0) throw std::invalid_argument("d_m must be below |V_A| - 1 (p >= 1)");
      if (t > seed_count()) throw std::invalid_argument("t exceeds the seed count round(alpha n)");
    }
  }
};

enum class BoundForm { ExactBinomial, Limit };

struct BoundResult {
  double rho = 1.0;
  double coverage_lb = 0.0;
  BoundForm form = BoundForm::Limit;
};

namespace detail {

inline double log_choose(std::uint64_t n, std::uint64_t k) {
  const double nn = static_cast<double>(n);
  const double kk = static_cast<double>(k);
  return std::lgamma(nn + 1.0) - std::lgamma(kk + 1.0) - std::lgamma(nn - kk + 1.0);
}

inline double log_sum_exp(const std::vector<double>& xs) {
  double hi = -std::numeric_limits<double>::infinity();
  for (double x : xs) hi = std::max(hi, x);
  if (!std::isfinite(hi)) return hi;
  double acc = 0.0;
  for (double x : xs) acc += std::exp(x - hi);
  return hi + std::log(acc);
}

}  // namespace detail

/// rho: probability that a non-seed has fewer than t seed neighbors.
inline double miss_probability(const CoverageBoundParams& params, BoundForm form) {
  params.validate();
  const unsigned t = params.t;
  if (params.mutual_degree == 0.0) return 1.0;

  std::vector<double> terms;
  terms.reserve(t);
  double rho = 0.0;
  if (form == BoundForm::ExactBinomial) {
    if (!params.population) throw std::invalid_argument("exact binomial form needs a finite population");
    const std::uint64_t s = params.seed_count();
    const double p = params.edge_probability();
    for (unsigned i = 0; i < t; ++i)
      terms.push_back(detail::log_choose(s, i) + i * std::log(p) + static_cast<double>(s - i) * std::log1p(-p));
    rho = std::exp(detail::log_sum_exp(terms));
  } else {
    const double mean = params.alpha * params.mutual_degree;
    if (params.population) {
      const std::uint64_t s = params.seed_count();
      const double p = params.edge_probability();
      const double log_odds = std::log(p) - std::log1p(-p);
      for (unsigned i = 0; i < t; ++i) terms.push_back(detail::log_choose(s, i) + i * log_odds);
    } else {
      for (unsigned i = 0; i < t; ++i) terms.push_back(i * std::log(mean) - std::lgamma(i + 1.0));
    }
    rho = std::exp(-mean + detail::log_sum_exp(terms));
  }
  return std::clamp(rho, 0.0, 1.0);
}

/// Expected coverage lower bound 1 - (1 - alpha) rho.
inline BoundResult coverage_lower_bound(const CoverageBoundParams& params, BoundForm form) {
  BoundResult r;
  r.form = form;
  r.rho = miss_probability(params, form);
  r.coverage_lb = std::clamp(1.0 - (1.0 - params.alpha) * r.rho, params.alpha, 1.0);
  return r;
}

struct McSummary {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t trials = 0;
  std::vector<double> per_trial;
};

/// One realization of r'(t) on G(n, d_m/(n-1)) with round(alpha n) uniform seeds.
inline double mc_coverage_trial(std::uint64_t n, double alpha, double mutual_degree, unsigned t, Rng& rng) {
  const auto s = static_cast<std::uint64_t>(std::llround(alpha * static_cast<double>(n)));
  std::vector<char> is_seed(n, 0);
  for (auto i : sample_without_replacement(n, s, rng)) is_seed[i] = 1;
  std::vector<std::uint32_t> seed_links(n, 0);
  const double p = mutual_degree / static_cast<double>(n - 1);
  sample_gnp(n, p, rng, [&](std::uint64_t v, std::uint64_t w) {
    if (is_seed[v] && !is_seed[w]) ++seed_links[w];
    if (is_seed[w] && !is_seed[v]) ++seed_links[v];
  });
  std::uint64_t covered = s;
  for (std::uint64_t u = 0; u < n; ++u)
    if (!is_seed[u] && seed_links[u] >= t) ++covered;
  return static_cast<double>(covered) / static_cast<double>(n);
}

/// Monte-Carlo estimate of the mutual-follower coverage ratio. Trial i draws
/// from stream_rng(rng_seed, i), so the result does not depend on `jobs`.
inline McSummary mc_coverage(std::uint64_t n, double alpha, double mutual_degree, unsigned t, std::size_t trials,
                             std::uint64_t rng_seed, unsigned jobs = 1) {
  if (trials < 1) throw std::invalid_argument("mc_coverage: trials must be >= 1");
  CoverageBoundParams params{n, alpha, mutual_degree, t};
  params.validate();

  McSummary out;
  out.trials = trials;
  out.per_trial.assign(trials, 0.0);
  auto work = [&](unsigned worker, unsigned stride) {
    for (std::size_t i = worker; i < trials; i += stride) {
      Rng rng = stream_rng(rng_seed, i);
      out.per_trial[i] = mc_coverage_trial(n, alpha, mutual_degree, t, rng);
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(trials)));
  if (jobs == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(work, w, jobs);
  }

  double sum = 0.0;
  for (double r : out.per_trial) sum += r;
  out.mean = sum / static_cast<double>(trials);
  if (trials > 1) {
    double ss = 0.0;
    for (double r : out.per_trial) ss += (r - out.mean) * (r - out.mean);
    out.std_error = std::sqrt(ss / static_cast<double>(trials - 1) / static_cast<double>(trials));
  }
  return out;
}

}  // namespace locinfer
