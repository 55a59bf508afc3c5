// Copyright 2026 The relide Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// =============================================================================

#include "relide/reliability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "relide/stats.hpp"

namespace relide {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void finish(RelResult& r, std::size_t failures, std::size_t n) {
  r.pf = static_cast<double>(failures) / static_cast<double>(n);
  r.beta = beta_from_pf(r.pf);
  r.no_failures = failures == 0;
  r.pf_upper_bound = r.no_failures ? 1.0 / static_cast<double>(n) : r.pf;
  r.cov = failures == 0 ? kInf : std::sqrt((1.0 - r.pf) / (static_cast<double>(n) * r.pf));
}

// One population of a subset level, stored chain after chain.
struct Population {
  PointMatrix u;
  Eigen::VectorXd g;
  // Chain c occupies rows [offsets[c], offsets[c + 1]).
  std::vector<Eigen::Index> offsets;
};

// Correlation factor gamma of the indicator {g <= b} along the chains.
double chain_correlation(const Population& pop, double b, double p) {
  const std::size_t chains = pop.offsets.size() - 1;
  if (chains == 0 || p <= 0.0 || p >= 1.0) return 0.0;
  const auto n = static_cast<double>(pop.g.size());
  Eigen::Index nominal = 0;
  for (std::size_t c = 0; c < chains; ++c) nominal = std::max(nominal, pop.offsets[c + 1] - pop.offsets[c]);
  const double r0 = p * (1.0 - p);
  double gamma = 0.0;
  for (Eigen::Index k = 1; k < nominal; ++k) {
    double sum = 0.0;
    double pairs = 0.0;
    for (std::size_t c = 0; c < chains; ++c) {
      const Eigen::Index begin = pop.offsets[c];
      const Eigen::Index end = pop.offsets[c + 1];
      for (Eigen::Index l = begin; l + k < end; ++l) {
        if (pop.g(l) <= b && pop.g(l + k) <= b) sum += 1.0;
        pairs += 1.0;
      }
    }
    if (pairs == 0.0) break;
    const double rk = sum / pairs - p * p;
    gamma += 2.0 * (1.0 - static_cast<double>(k) * static_cast<double>(chains) / n) * rk / r0;
  }
  return std::max(gamma, 0.0);
}

}  // namespace

BatchFunction in_standard_space(LimitState& limit_state, const ProbInput& input) {
  if (limit_state.dim() != input.dim()) throw ConfigError("input model and limit state dimensions differ");
  return [&limit_state, &input](const PointMatrix& u) { return limit_state.evaluate_rows(input.from_standard(u)); };
}

double beta_from_pf(double pf) {
  if (pf <= 0.0) return kInf;
  if (pf >= 1.0) return -kInf;
  return normal_upper_quantile(pf);
}

RelResult mcs(const BatchFunction& fn, std::size_t dim, const McsOptions& opts, RandomStream& rng) {
  if (opts.target_cov) {
    if (!(*opts.target_cov > 0.0 && *opts.target_cov < 1.0)) throw ConfigError("mcs: target_cov must lie in (0, 1)");
    if (opts.block == 0 || opts.max_n == 0) throw ConfigError("mcs: block and max_n must be positive");
  } else if (opts.n < 1000) {
    throw ConfigError("mcs: at least 1000 samples required");
  }
  RelResult r;
  std::size_t failures = 0;
  std::size_t n = 0;
  const std::size_t limit = opts.target_cov ? opts.max_n : opts.n;
  const std::size_t block = opts.target_cov ? opts.block : std::min<std::size_t>(opts.n, 100'000);
  while (n < limit) {
    const std::size_t count = std::min(block, limit - n);
    const Eigen::VectorXd g = fn(sample_standard(count, dim, rng));
    failures += static_cast<std::size_t>((g.array() <= 0.0).count());
    n += count;
    if (opts.target_cov && failures > 0) {
      const double pf = static_cast<double>(failures) / static_cast<double>(n);
      if (std::sqrt((1.0 - pf) / (static_cast<double>(n) * pf)) <= *opts.target_cov) break;
    }
  }
  r.n_evals = n;
  finish(r, failures, n);
  return r;
}

RelResult mcs(LimitState& limit_state, const ProbInput& input, const McsOptions& opts, RandomStream& rng) {
  return mcs(in_standard_space(limit_state, input), input.dim(), opts, rng);
}

RelResult subset_partial(const BatchFunction& fn, std::size_t dim, const SubsetOptions& opts, RandomStream& rng) {
  if (opts.n_per_level < 1000) throw ConfigError("subset: n_per_level must be at least 1000");
  if (!(opts.p0 > 0.0 && opts.p0 <= 0.5)) throw ConfigError("subset: p0 must lie in (0, 0.5]");
  if (opts.max_levels < 1) throw ConfigError("subset: max_levels must be at least 1");
  if (!(opts.proposal_width > 0.0)) throw ConfigError("subset: proposal width must be positive");

  const auto n = static_cast<Eigen::Index>(opts.n_per_level);
  const auto d = static_cast<Eigen::Index>(dim);
  const auto n_seeds = std::max<Eigen::Index>(1, static_cast<Eigen::Index>(std::llround(opts.p0 * static_cast<double>(n))));

  RelResult r;
  std::vector<Population> levels;
  Population pop;
  pop.u = sample_standard(opts.n_per_level, dim, rng);
  pop.g = fn(pop.u);
  pop.offsets = {0};
  r.n_evals = opts.n_per_level;

  double log_pf = 0.0;
  double cov2 = 0.0;
  bool done = false;
  std::vector<double> sorted(static_cast<std::size_t>(n));
  while (true) {
    std::copy(pop.g.data(), pop.g.data() + n, sorted.begin());
    std::sort(sorted.begin(), sorted.end());
    const double b = quantile_sorted(sorted, opts.p0);
    const bool final_level = b <= 0.0;
    const double threshold = final_level ? 0.0 : b;
    const auto hits = static_cast<std::size_t>((pop.g.array() <= threshold).count());
    const double p_level = final_level ? static_cast<double>(hits) / static_cast<double>(n)
                                       : static_cast<double>(n_seeds) / static_cast<double>(n);
    const double gamma = levels.empty() ? 0.0 : chain_correlation(pop, threshold, p_level);
    if (p_level > 0.0) cov2 += (1.0 - p_level) / (static_cast<double>(n) * p_level) * (1.0 + gamma);
    log_pf += p_level > 0.0 ? std::log(p_level) : -kInf;
    r.thresholds.push_back(threshold);
    levels.push_back(pop);
    if (final_level) {
      done = true;
      break;
    }
    if (levels.size() >= opts.max_levels) break;

    // Seeds: the n_seeds smallest values; chains share the n samples evenly.
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::partial_sort(order.begin(), order.begin() + n_seeds, order.end(),
                      [&](Eigen::Index a, Eigen::Index c) { return pop.g(a) < pop.g(c) || (pop.g(a) == pop.g(c) && a < c); });
    const double level_threshold = pop.g(order[static_cast<std::size_t>(n_seeds - 1)]);

    Population next;
    next.u.resize(n, d);
    next.g.resize(n);
    next.offsets.resize(static_cast<std::size_t>(n_seeds) + 1);
    next.offsets[0] = 0;
    const Eigen::Index base_len = n / n_seeds;
    const Eigen::Index extra = n % n_seeds;
    for (Eigen::Index c = 0; c < n_seeds; ++c) {
      next.offsets[static_cast<std::size_t>(c + 1)] = next.offsets[static_cast<std::size_t>(c)] + base_len + (c < extra ? 1 : 0);
      const Eigen::Index row = next.offsets[static_cast<std::size_t>(c)];
      next.u.row(row) = pop.u.row(order[static_cast<std::size_t>(c)]);
      next.g(row) = pop.g(order[static_cast<std::size_t>(c)]);
    }

    const Eigen::Index max_len = base_len + (extra > 0 ? 1 : 0);
    std::vector<Eigen::Index> moved;
    PointMatrix candidates(n_seeds, d);
    for (Eigen::Index step = 1; step < max_len; ++step) {
      moved.clear();
      for (Eigen::Index c = 0; c < n_seeds; ++c) {
        const Eigen::Index begin = next.offsets[static_cast<std::size_t>(c)];
        const Eigen::Index len = next.offsets[static_cast<std::size_t>(c + 1)] - begin;
        if (step >= len) continue;
        const Eigen::Index prev = begin + step - 1;
        bool changed = false;
        for (Eigen::Index k = 0; k < d; ++k) {
          const double cur = next.u(prev, k);
          const double prop = cur + opts.proposal_width * (2.0 * rng.uniform() - 1.0);
          const double ratio = std::exp(0.5 * (cur * cur - prop * prop));
          if (rng.uniform() < ratio) {
            candidates(c, k) = prop;
            changed = true;
          } else {
            candidates(c, k) = cur;
          }
        }
        next.u.row(begin + step) = next.u.row(prev);
        next.g(begin + step) = next.g(prev);
        if (changed) moved.push_back(c);
      }
      if (moved.empty()) continue;
      PointMatrix batch(static_cast<Eigen::Index>(moved.size()), d);
      for (std::size_t i = 0; i < moved.size(); ++i) batch.row(static_cast<Eigen::Index>(i)) = candidates.row(moved[i]);
      const Eigen::VectorXd g = fn(batch);
      r.n_evals += moved.size();
      for (std::size_t i = 0; i < moved.size(); ++i) {
        const Eigen::Index row = next.offsets[static_cast<std::size_t>(moved[i])] + step;
        const double value = g(static_cast<Eigen::Index>(i));
        if (value <= level_threshold) {
          next.u.row(row) = batch.row(static_cast<Eigen::Index>(i));
          next.g(row) = value;
        }
      }
    }
    pop = std::move(next);
  }

  r.levels = levels.size();
  r.level_limit_reached = !done;
  r.pf = std::exp(log_pf);
  r.beta = beta_from_pf(r.pf);
  r.no_failures = r.pf == 0.0;
  r.pf_upper_bound = r.no_failures
                         ? std::pow(opts.p0, static_cast<double>(levels.size() - 1)) / static_cast<double>(n)
                         : r.pf;
  r.cov = r.no_failures ? kInf : std::sqrt(cov2);

  if (opts.retain_samples) {
    r.samples.resize(n * static_cast<Eigen::Index>(levels.size()), d);
    r.sample_values.resize(r.samples.rows());
    for (std::size_t l = 0; l < levels.size(); ++l) {
      r.samples.middleRows(static_cast<Eigen::Index>(l) * n, n) = levels[l].u;
      r.sample_values.segment(static_cast<Eigen::Index>(l) * n, n) = levels[l].g;
    }
  }
  return r;
}

RelResult subset(const BatchFunction& fn, std::size_t dim, const SubsetOptions& opts, RandomStream& rng) {
  RelResult r = subset_partial(fn, dim, opts, rng);
  if (r.level_limit_reached) {
    std::ostringstream os;
    os << "subset simulation: " << r.levels << " levels did not reach the failure domain (last threshold "
       << r.thresholds.back() << ")";
    throw SubsetLevelError(os.str(), std::move(r));
  }
  return r;
}

RelResult subset(LimitState& limit_state, const ProbInput& input, const SubsetOptions& opts, RandomStream& rng) {
  return subset(in_standard_space(limit_state, input), input.dim(), opts, rng);
}

RsAnalytic rs_analytic(double mu_r, double sigma_r, double mu_s, double sigma_s, double sigma_eps, double gamma) {
  if (!(sigma_r > 0.0 && sigma_s > 0.0)) throw ConfigError("rs_analytic: standard deviations must be positive");
  if (!(sigma_eps >= 0.0)) throw ConfigError("rs_analytic: sigma_eps must be >= 0");
  if (!(gamma > 0.0)) throw ConfigError("rs_analytic: gamma must be positive");
  const double var = sigma_r * sigma_r + sigma_s * sigma_s;
  RsAnalytic out;
  out.pf_free = normal_cdf(-(mu_r - mu_s) / std::sqrt(var));
  out.pf_noisy = normal_cdf(-gamma * (mu_r - mu_s) / std::sqrt(gamma * gamma * var + sigma_eps * sigma_eps));
  return out;
}

}  // namespace relide
