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

#include "relide/gp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include <Eigen/Cholesky>

#include "relide/error.hpp"
#include "relide/random.hpp"
#include "relide/stats.hpp"

namespace relide {

namespace {

constexpr double kSqrt5 = 2.23606797749978969641;
constexpr double kSigmaFloor = 1e-12;
constexpr double kJitter[] = {0.0, 1e-10, 1e-8, 1e-6};
constexpr Eigen::Index kPredictBlock = 512;

// In place: squared scaled distances -> Matern 5/2 correlations.
template <typename Derived>
void matern52_from_sq(Eigen::ArrayBase<Derived>& a) {
  a = (5.0 * a).sqrt();
  a = (1.0 + a + a.square() / 3.0) * (-a).exp();
}

PointMatrix scale_points(const PointMatrix& points, const Eigen::VectorXd& theta) {
  return points.array().rowwise() / theta.transpose().array();
}

// Squared distances between rows of a (rows of the result) and rows of b.
Eigen::ArrayXXd sq_distances(const PointMatrix& a, const PointMatrix& b) {
  Eigen::MatrixXd d = -2.0 * (a * b.transpose());
  d.colwise() += a.rowwise().squaredNorm();
  d.rowwise() += b.rowwise().squaredNorm().transpose();
  return d.array().max(0.0);
}

void validate_hyper(const Design& design, const Eigen::VectorXd& theta, double tau) {
  if (theta.size() != static_cast<Eigen::Index>(design.dim())) throw ConfigError("theta dimension mismatch");
  if (!(theta.array() > 0.0).all() || !theta.allFinite()) throw ConfigError("lengthscales must be positive");
  if (!(tau >= 0.0 && tau < 1.0)) throw ConfigError("noise ratio tau must lie in [0, 1)");
}

struct Factorization {
  // Lower triangle holds L; the strict upper triangle is unspecified.
  Eigen::MatrixXd matrix;
  int jitter_level = 0;
};

// Lower triangle of R~ = (1 - tau) R + tau I, built one column at a time.
Eigen::MatrixXd correlation_lower(const PointMatrix& scaled, double tau) {
  const Eigen::Index n = scaled.rows();
  Eigen::MatrixXd r(n, n);
  Eigen::ArrayXd seg(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    auto s = seg.head(n - j);
    s.setZero();
    for (Eigen::Index c = 0; c < scaled.cols(); ++c) s += (scaled.col(c).tail(n - j).array() - scaled(j, c)).square();
    matern52_from_sq(s);
    r.col(j).tail(n - j) = (1.0 - tau) * s.matrix();
    r(j, j) = 1.0;
  }
  return r;
}

Factorization factorize(const PointMatrix& scaled, double tau) {
  const Eigen::Index n = scaled.rows();
  const Eigen::MatrixXd r = correlation_lower(scaled, tau);
  Factorization f;
  for (int level = 0; level < static_cast<int>(std::size(kJitter)); ++level) {
    f.matrix = r;
    f.matrix.diagonal().array() = 1.0 + kJitter[level];
    Eigen::LLT<Eigen::Ref<Eigen::MatrixXd>, Eigen::Lower> llt(f.matrix);
    if (llt.info() == Eigen::Success) {
      f.jitter_level = level;
      return f;
    }
  }
  // Rough condition estimate from the unjittered matrix.
  Eigen::LDLT<Eigen::MatrixXd, Eigen::Lower> ldlt(r);
  const Eigen::VectorXd d = ldlt.vectorD().cwiseAbs();
  std::ostringstream os;
  os << "correlation matrix (N=" << n << ") is not positive definite after maximum jitter; "
     << "condition estimate " << d.maxCoeff() / std::max(d.minCoeff(), std::numeric_limits<double>::min());
  throw NumericalError(os.str());
}

struct Solved {
  Factorization fac;
  Eigen::VectorXd alpha;
  double sigma2 = 0.0;
  double nll = 0.0;
};

Solved solve(const PointMatrix& points, const Eigen::VectorXd& y_std, const Eigen::VectorXd& theta, double tau) {
  Solved s;
  s.fac = factorize(scale_points(points, theta), tau);
  const auto lower = s.fac.matrix.triangularView<Eigen::Lower>();
  s.alpha = lower.solve(y_std);
  const double quad = s.alpha.squaredNorm();
  s.fac.matrix.transpose().triangularView<Eigen::Upper>().solveInPlace(s.alpha);
  const auto n = static_cast<double>(points.rows());
  s.sigma2 = std::max(quad / n, kSigmaFloor);
  const double log_det = 2.0 * s.fac.matrix.diagonal().array().log().sum();
  s.nll = 0.5 * (log_det + n * std::log(2.0 * std::numbers::pi * s.sigma2) + n);
  return s;
}

double logit(double p) { return std::log(p / (1.0 - p)); }
double inv_logit(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

double matern52(double h) {
  const double s = kSqrt5 * h;
  return (1.0 + s + s * s / 3.0) * std::exp(-s);
}

Design Design::make(PointMatrix points, Eigen::VectorXd y) {
  if (points.rows() != y.size()) throw ConfigError("design: one observation per point required");
  if (points.rows() < 2) throw ConfigError("design needs at least 2 points");
  if (points.cols() < 1) throw ConfigError("design points need at least one coordinate");
  if (!points.allFinite() || !y.allFinite()) throw ConfigError("design contains non-finite values");
  Design d;
  d.points = std::move(points);
  d.y = std::move(y);
  const std::span<const double> ys(d.y.data(), static_cast<std::size_t>(d.y.size()));
  d.output_shift = mean(ys);
  const double sd = std::sqrt(variance(ys));
  d.output_scale = (sd > 0.0 && std::isfinite(sd)) ? sd : 1.0;
  return d;
}

LikelihoodEval neg_log_likelihood(const Design& design, const Eigen::VectorXd& theta, double tau) {
  validate_hyper(design, theta, tau);
  const Solved s = solve(design.points, design.standardized(), theta, tau);
  return {s.nll, s.sigma2, s.fac.jitter_level};
}

struct GpModel::Impl {
  Design design;
  GpHyper hyper;
  PointMatrix scaled_points;
  Eigen::MatrixXd chol;
  Eigen::VectorXd alpha;
  // Standardized units.
  double sigma2 = 0.0;
  double nll = 0.0;
  int jitter_level = 0;
};

GpModel GpModel::condition(const Design& design, const GpHyper& hyper) {
  validate_hyper(design, hyper.theta, hyper.tau);
  auto impl = std::make_shared<Impl>();
  impl->design = design;
  impl->hyper = hyper;
  impl->scaled_points = scale_points(design.points, hyper.theta);
  Solved s = solve(design.points, design.standardized(), hyper.theta, hyper.tau);
  impl->chol = std::move(s.fac.matrix);
  impl->alpha = std::move(s.alpha);
  impl->sigma2 = s.sigma2;
  impl->nll = s.nll;
  impl->jitter_level = s.fac.jitter_level;
  GpModel model;
  model.impl_ = std::move(impl);
  model.clamps_ = std::make_shared<std::atomic<std::size_t>>(0);
  return model;
}

const Design& GpModel::design() const { return impl_->design; }
const GpHyper& GpModel::hyper() const { return impl_->hyper; }
double GpModel::sigma2_total() const {
  return impl_->sigma2 * impl_->design.output_scale * impl_->design.output_scale;
}
double GpModel::neg_log_likelihood() const { return impl_->nll; }
int GpModel::jitter_level() const { return impl_->jitter_level; }
double GpModel::jitter() const { return kJitter[impl_->jitter_level]; }
const Eigen::VectorXd& GpModel::alpha() const { return impl_->alpha; }

Eigen::MatrixXd GpModel::cholesky_factor() const { return impl_->chol.triangularView<Eigen::Lower>(); }

PredictionBatch GpModel::predict_screen(const PointMatrix& u) const {
  const Impl& m = *impl_;
  if (u.cols() != m.scaled_points.cols()) throw ConfigError("prediction point dimension mismatch");
  PredictionBatch out{Eigen::VectorXd(u.rows()), Eigen::VectorXd(u.rows())};
  const double one_minus_tau = 1.0 - m.hyper.tau;
  const double weight = one_minus_tau * m.design.output_scale;
  const double total = sigma2_total();
  const double diag = 1.0 + kJitter[m.jitter_level];
  for (Eigen::Index start = 0; start < u.rows(); start += kPredictBlock) {
    const Eigen::Index count = std::min(kPredictBlock, u.rows() - start);
    Eigen::ArrayXXd k = sq_distances(scale_points(u.middleRows(start, count), m.hyper.theta), m.scaled_points);
    matern52_from_sq(k);
    out.mean.segment(start, count) = (k.matrix() * m.alpha).array() * weight + m.design.output_shift;
    const Eigen::ArrayXd rmax = k.rowwise().maxCoeff() * one_minus_tau;
    out.variance.segment(start, count) = (total * (1.0 - rmax.square() / diag)).max(0.0);
  }
  return out;
}

Eigen::VectorXd GpModel::predict_mean(const PointMatrix& u) const {
  const Impl& m = *impl_;
  if (u.cols() != m.scaled_points.cols()) throw ConfigError("prediction point dimension mismatch");
  Eigen::VectorXd out(u.rows());
  const double weight = (1.0 - m.hyper.tau) * m.design.output_scale;
  for (Eigen::Index start = 0; start < u.rows(); start += kPredictBlock) {
    const Eigen::Index count = std::min(kPredictBlock, u.rows() - start);
    Eigen::ArrayXXd k = sq_distances(scale_points(u.middleRows(start, count), m.hyper.theta), m.scaled_points);
    matern52_from_sq(k);
    out.segment(start, count) = (k.matrix() * m.alpha).array() * weight + m.design.output_shift;
  }
  return out;
}

PredictionBatch GpModel::predict_batch(const PointMatrix& u) const {
  const Impl& m = *impl_;
  if (u.cols() != m.scaled_points.cols()) throw ConfigError("prediction point dimension mismatch");
  PredictionBatch out{Eigen::VectorXd(u.rows()), Eigen::VectorXd(u.rows())};
  const double one_minus_tau = 1.0 - m.hyper.tau;
  const double scale = m.design.output_scale;
  const double total = m.sigma2 * scale * scale;
  const auto lower = m.chol.triangularView<Eigen::Lower>();
  std::size_t clamps = 0;
  for (Eigen::Index start = 0; start < u.rows(); start += kPredictBlock) {
    const Eigen::Index count = std::min(kPredictBlock, u.rows() - start);
    // N x count cross-correlations, already multiplied by (1 - tau).
    Eigen::ArrayXXd kt = sq_distances(m.scaled_points, scale_points(u.middleRows(start, count), m.hyper.theta));
    matern52_from_sq(kt);
    Eigen::MatrixXd rt = one_minus_tau * kt.matrix();
    out.mean.segment(start, count) = (rt.transpose() * m.alpha).array() * scale + m.design.output_shift;
    lower.solveInPlace(rt);
    const Eigen::VectorXd quad = rt.colwise().squaredNorm().transpose();
    for (Eigen::Index i = 0; i < count; ++i) {
      double v = total * (1.0 - quad(i));
      if (v < 0.0) {
        v = 0.0;
        ++clamps;
      }
      out.variance(start + i) = v;
    }
  }
  if (clamps) clamps_->fetch_add(clamps);
  return out;
}

Prediction GpModel::predict(const Eigen::VectorXd& u) const {
  const PredictionBatch b = predict_batch(PointMatrix(u.transpose()));
  return {b.mean(0), b.variance(0)};
}

GpModel fit(const Design& design, const FitOptions& opts, FitReport* report) {
  const auto m = static_cast<Eigen::Index>(design.dim());
  if (!(opts.theta_min > 0.0 && opts.theta_min < opts.theta_max)) throw ConfigError("invalid lengthscale bounds");
  if (!(opts.tau_min > 0.0 && opts.tau_min < opts.tau_max && opts.tau_max < 1.0)) {
    throw ConfigError("invalid noise-ratio bounds");
  }
  if (opts.fixed_tau && !(*opts.fixed_tau >= 0.0 && *opts.fixed_tau < 1.0)) {
    throw ConfigError("fixed noise ratio must lie in [0, 1)");
  }
  const bool learn_tau = !opts.fixed_tau.has_value();
  const Eigen::Index n_params = m + (learn_tau ? 1 : 0);

  Box box{Eigen::VectorXd(n_params), Eigen::VectorXd(n_params)};
  box.lower.head(m).setConstant(std::log(opts.theta_min));
  box.upper.head(m).setConstant(std::log(opts.theta_max));
  if (learn_tau) {
    box.lower(m) = logit(opts.tau_min);
    box.upper(m) = logit(opts.tau_max);
  }

  RandomStream rng(opts.seed);

  // Likelihood subset for large designs.
  PointMatrix ml_points = design.points;
  Eigen::VectorXd ml_y = design.standardized();
  if (opts.ml_subset > 0 && design.size() > opts.ml_subset) {
    std::vector<Eigen::Index> idx(design.size());
    std::iota(idx.begin(), idx.end(), Eigen::Index{0});
    RandomStream pick = rng.substream(1);
    for (std::size_t i = 0; i < opts.ml_subset; ++i) {
      std::swap(idx[i], idx[i + pick.below(idx.size() - i)]);
    }
    idx.resize(opts.ml_subset);
    std::sort(idx.begin(), idx.end());
    ml_points = design.points(idx, Eigen::all);
    ml_y = ml_y(idx).eval();
  }

  FitReport local;
  auto to_hyper = [&](const Eigen::VectorXd& z) {
    GpHyper h;
    h.theta = z.head(m).array().exp();
    h.tau = learn_tau ? inv_logit(z(m)) : *opts.fixed_tau;
    return h;
  };
  auto objective = [&](const Eigen::VectorXd& z) {
    const GpHyper h = to_hyper(z);
    try {
      const Solved s = solve(ml_points, ml_y, h.theta, h.tau);
      if (s.fac.jitter_level > 0) ++local.jitter_uses;
      return s.nll;
    } catch (const NumericalError&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  std::vector<std::pair<Eigen::VectorXd, double>> starts;
  for (const GpHyper& w : opts.warm_starts) {
    if (w.theta.size() != m) throw ConfigError("warm start dimension mismatch");
    Eigen::VectorXd z(n_params);
    z.head(m) = w.theta.array().log();
    if (learn_tau) z(m) = logit(std::clamp(w.tau, opts.tau_min, opts.tau_max));
    starts.emplace_back(box.clamp(z), opts.warm_step);
  }
  if (opts.n_starts > 0) {
    RandomStream lhs = rng.substream(2);
    std::vector<Eigen::VectorXd> pts(opts.n_starts, Eigen::VectorXd(n_params));
    for (Eigen::Index c = 0; c < n_params; ++c) {
      std::vector<std::size_t> perm(opts.n_starts);
      std::iota(perm.begin(), perm.end(), std::size_t{0});
      for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[lhs.below(i)]);
      for (std::size_t i = 0; i < opts.n_starts; ++i) {
        const double p = (static_cast<double>(perm[i]) + lhs.uniform()) / static_cast<double>(opts.n_starts);
        pts[i](c) = box.lower(c) + p * (box.upper(c) - box.lower(c));
      }
    }
    for (auto& p : pts) starts.emplace_back(std::move(p), opts.optimizer.initial_step);
  }
  if (starts.empty()) throw ConfigError("fit: no starting points (n_starts = 0 and no warm start)");

  std::optional<OptimResult> best;
  for (const auto& [z0, step] : starts) {
    NelderMeadOptions nm = opts.optimizer;
    nm.initial_step = step;
    OptimResult r = nelder_mead(objective, z0, box, nm);
    ++local.starts;
    local.evaluations += r.evals;
    if (!std::isfinite(r.f)) {
      ++local.failed_starts;
      continue;
    }
    if (!best || r.f < best->f) best = std::move(r);
  }
  if (!best) {
    if (report) *report = local;
    throw TrainingError("GP training failed: no start produced a factorizable correlation matrix");
  }
  local.best_value = best->f;
  if (report) *report = local;
  return GpModel::condition(design, to_hyper(best->x));
}

}  // namespace relide
