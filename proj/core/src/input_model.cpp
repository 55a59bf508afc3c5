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

#include "relide/input_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Cholesky>

#include "relide/error.hpp"
#include "relide/stats.hpp"

namespace relide {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kQuantileTol = 1e-12;

// Upper-tail standard normal probability.
double normal_sf(double z) { return normal_cdf(-z); }

}  // namespace

Marginal::Marginal(Kind kind, double mean, double std, double lower, double upper)
    : kind_(kind), mean_(mean), std_(std), lower_(lower), upper_(upper) {
  if (!(std > 0.0) || !std::isfinite(std)) throw ConfigError("marginal standard deviation must be positive");
  if (!std::isfinite(mean)) throw ConfigError("marginal mean must be finite");
  switch (kind_) {
    case Kind::kGaussian:
      break;
    case Kind::kLognormal: {
      if (!(mean > 0.0)) throw ConfigError("lognormal mean must be positive");
      const double cv = std / mean;
      zeta_ = std::sqrt(std::log1p(cv * cv));
      lambda_ = std::log(mean) - 0.5 * zeta_ * zeta_;
      break;
    }
    case Kind::kTruncatedGaussian: {
      if (!(lower < upper)) throw ConfigError("truncated Gaussian requires lower < upper");
      const double a = (lower - mean) / std;
      const double b = (upper - mean) / std;
      cdf_lower_ = normal_cdf(a);
      sf_lower_ = normal_sf(a);
      sf_upper_ = normal_sf(b);
      mass_ = a > 0.0 ? sf_lower_ - sf_upper_ : normal_cdf(b) - cdf_lower_;
      if (!(mass_ > 0.0)) throw ConfigError("truncation interval carries no probability mass");
      break;
    }
  }
}

Marginal Marginal::gaussian(double mean, double std) {
  return Marginal(Kind::kGaussian, mean, std, -kInf, kInf);
}

Marginal Marginal::lognormal(double mean, double std) {
  return Marginal(Kind::kLognormal, mean, std, 0.0, kInf);
}

Marginal Marginal::truncated_gaussian(double mean, double std, double lower, double upper) {
  return Marginal(Kind::kTruncatedGaussian, mean, std, lower, upper);
}

bool Marginal::in_support(double x) const {
  if (std::isnan(x)) return false;
  switch (kind_) {
    case Kind::kGaussian:
      return std::isfinite(x);
    case Kind::kLognormal:
      return x > 0.0 && std::isfinite(x);
    case Kind::kTruncatedGaussian:
      return x >= lower_ && x <= upper_;
  }
  return false;
}

double Marginal::pdf(double x) const {
  if (!in_support(x)) return 0.0;
  switch (kind_) {
    case Kind::kGaussian:
      return normal_pdf((x - mean_) / std_) / std_;
    case Kind::kLognormal:
      return normal_pdf((std::log(x) - lambda_) / zeta_) / (zeta_ * x);
    case Kind::kTruncatedGaussian:
      return normal_pdf((x - mean_) / std_) / (std_ * mass_);
  }
  return 0.0;
}

double Marginal::cdf(double x) const {
  switch (kind_) {
    case Kind::kGaussian:
      return normal_cdf((x - mean_) / std_);
    case Kind::kLognormal:
      return x <= 0.0 ? 0.0 : normal_cdf((std::log(x) - lambda_) / zeta_);
    case Kind::kTruncatedGaussian: {
      if (x <= lower_) return 0.0;
      if (x >= upper_) return 1.0;
      const double z = (x - mean_) / std_;
      const double a = (lower_ - mean_) / std_;
      const double p = a > 0.0 ? (sf_lower_ - normal_sf(z)) / mass_ : (normal_cdf(z) - cdf_lower_) / mass_;
      return std::clamp(p, 0.0, 1.0);
    }
  }
  return 0.0;
}

double Marginal::sf(double x) const {
  switch (kind_) {
    case Kind::kGaussian:
      return normal_sf((x - mean_) / std_);
    case Kind::kLognormal:
      return x <= 0.0 ? 1.0 : normal_sf((std::log(x) - lambda_) / zeta_);
    case Kind::kTruncatedGaussian: {
      if (x <= lower_) return 1.0;
      if (x >= upper_) return 0.0;
      const double z = (x - mean_) / std_;
      return std::clamp((normal_sf(z) - sf_upper_) / mass_, 0.0, 1.0);
    }
  }
  return 0.0;
}

double Marginal::refine_quantile(double p, double guess) const {
  double lo = lower_;
  double hi = upper_;
  double q = std::clamp(guess, lo, hi);
  if (!std::isfinite(q)) q = mean_;
  for (int iter = 0; iter < 200; ++iter) {
    const double f = cdf(q) - p;
    if (std::abs(f) < kQuantileTol) return q;
    if (f > 0.0) {
      hi = q;
    } else {
      lo = q;
    }
    const double density = pdf(q);
    double next = density > 0.0 ? q - f / density : std::numeric_limits<double>::quiet_NaN();
    if (!(next > lo && next < hi)) {
      if (std::isfinite(lo) && std::isfinite(hi)) {
        next = 0.5 * (lo + hi);
      } else if (std::isfinite(lo)) {
        next = lo + 2.0 * std::max(std::abs(q - lo), std_);
      } else {
        next = hi - 2.0 * std::max(std::abs(hi - q), std_);
      }
    }
    if (next == q) return q;
    q = next;
  }
  return q;
}

double Marginal::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("quantile level outside [0, 1]");
  if (p == 0.0) return lower_;
  if (p == 1.0) return upper_;
  switch (kind_) {
    case Kind::kGaussian:
      return mean_ + std_ * normal_quantile(p);
    case Kind::kLognormal:
      return std::exp(lambda_ + zeta_ * normal_quantile(p));
    case Kind::kTruncatedGaussian: {
      const double a = (lower_ - mean_) / std_;
      const double z = a > 0.0 ? normal_upper_quantile(sf_lower_ - p * mass_)
                               : normal_quantile(cdf_lower_ + p * mass_);
      return refine_quantile(p, mean_ + std_ * z);
    }
  }
  return 0.0;
}

double Marginal::to_normal(double x) const {
  if (!in_support(x)) {
    std::ostringstream os;
    os << "point " << x << " outside the support of " << describe();
    throw DomainError(os.str());
  }
  double z = 0.0;
  switch (kind_) {
    case Kind::kGaussian:
      z = (x - mean_) / std_;
      break;
    case Kind::kLognormal:
      z = (std::log(x) - lambda_) / zeta_;
      break;
    case Kind::kTruncatedGaussian: {
      const double p = cdf(x);
      z = p <= 0.5 ? normal_quantile(p) : normal_upper_quantile(sf(x));
      break;
    }
  }
  if (!std::isfinite(z)) {
    std::ostringstream os;
    os << "point " << x << " lies on the boundary of " << describe();
    throw DomainError(os.str());
  }
  return z;
}

double Marginal::from_normal(double z) const {
  switch (kind_) {
    case Kind::kGaussian:
      return mean_ + std_ * z;
    case Kind::kLognormal:
      return std::exp(lambda_ + zeta_ * z);
    case Kind::kTruncatedGaussian: {
      if (z <= 0.0) return quantile(normal_cdf(z));
      // Upper half: invert the survival function to keep tail resolution.
      const double q = normal_sf(z);
      const double parent_sf = sf_upper_ + q * mass_;
      const double guess = mean_ + std_ * normal_upper_quantile(parent_sf);
      double lo = lower_;
      double hi = upper_;
      double x = std::clamp(guess, lo, hi);
      for (int iter = 0; iter < 200; ++iter) {
        const double f = sf(x) - q;
        if (std::abs(f) < kQuantileTol) break;
        if (f < 0.0) {
          hi = x;
        } else {
          lo = x;
        }
        const double density = pdf(x);
        double next = density > 0.0 ? x + f / density : std::numeric_limits<double>::quiet_NaN();
        if (!(next > lo && next < hi)) {
          next = std::isfinite(hi) ? 0.5 * (lo + hi) : lo + 2.0 * std::max(std::abs(x - lo), std_);
        }
        if (next == x) break;
        x = next;
      }
      return x;
    }
  }
  return 0.0;
}

std::string Marginal::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::kGaussian:
      os << "Gaussian(" << mean_ << ", " << std_ << ")";
      break;
    case Kind::kLognormal:
      os << "Lognormal(" << mean_ << ", " << std_ << ")";
      break;
    case Kind::kTruncatedGaussian:
      os << "TruncatedGaussian(" << mean_ << ", " << std_ << ", [" << lower_ << ", " << upper_ << "])";
      break;
  }
  return os.str();
}

ProbInput::ProbInput(std::vector<Marginal> marginals, std::vector<std::string> names)
    : ProbInput(marginals, Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(marginals.size()),
                                                     static_cast<Eigen::Index>(marginals.size())),
                std::move(names)) {}

ProbInput::ProbInput(std::vector<Marginal> marginals, Eigen::MatrixXd copula_corr,
                     std::vector<std::string> names)
    : marginals_(std::move(marginals)), names_(std::move(names)), corr_(std::move(copula_corr)) {
  const auto m = static_cast<Eigen::Index>(marginals_.size());
  if (m == 0) throw ConfigError("input model needs at least one variable");
  if (names_.empty()) {
    for (Eigen::Index i = 0; i < m; ++i) names_.push_back("x" + std::to_string(i + 1));
  }
  if (static_cast<Eigen::Index>(names_.size()) != m) throw ConfigError("one name per marginal required");
  if (corr_.rows() != m || corr_.cols() != m) throw ConfigError("copula correlation must be M x M");
  for (Eigen::Index i = 0; i < m; ++i) {
    if (std::abs(corr_(i, i) - 1.0) > 1e-12) throw ConfigError("copula correlation must have a unit diagonal");
    for (Eigen::Index j = 0; j < i; ++j) {
      if (std::abs(corr_(i, j) - corr_(j, i)) > 1e-12) throw ConfigError("copula correlation must be symmetric");
      if (std::abs(corr_(i, j)) >= 1.0) throw ConfigError("copula correlation entries must lie in (-1, 1)");
    }
  }
  Eigen::LLT<Eigen::MatrixXd> llt(corr_);
  if (llt.info() != Eigen::Success) throw ConfigError("copula correlation is not positive definite");
  chol_ = llt.matrixL();
  independent_ = corr_.isIdentity(0.0);
}

Eigen::VectorXd ProbInput::to_standard(const Eigen::VectorXd& x) const {
  if (x.size() != static_cast<Eigen::Index>(dim())) throw ConfigError("point dimension mismatch");
  Eigen::VectorXd z(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) z(i) = marginals_[static_cast<std::size_t>(i)].to_normal(x(i));
  if (independent_) return z;
  return chol_.triangularView<Eigen::Lower>().solve(z);
}

Eigen::VectorXd ProbInput::from_standard(const Eigen::VectorXd& u) const {
  if (u.size() != static_cast<Eigen::Index>(dim())) throw ConfigError("point dimension mismatch");
  const Eigen::VectorXd z = independent_ ? u : Eigen::VectorXd(chol_ * u);
  Eigen::VectorXd x(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) x(i) = marginals_[static_cast<std::size_t>(i)].from_normal(z(i));
  return x;
}

PointMatrix ProbInput::to_standard(const PointMatrix& x) const {
  PointMatrix u(x.rows(), x.cols());
  for (Eigen::Index r = 0; r < x.rows(); ++r) u.row(r) = to_standard(Eigen::VectorXd(x.row(r).transpose())).transpose();
  return u;
}

PointMatrix ProbInput::from_standard(const PointMatrix& u) const {
  PointMatrix x(u.rows(), u.cols());
  for (Eigen::Index r = 0; r < u.rows(); ++r) x.row(r) = from_standard(Eigen::VectorXd(u.row(r).transpose())).transpose();
  return x;
}

PointMatrix sample_standard(std::size_t n, std::size_t dim, RandomStream& rng) {
  PointMatrix u(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim));
  for (Eigen::Index r = 0; r < u.rows(); ++r) {
    for (Eigen::Index c = 0; c < u.cols(); ++c) u(r, c) = rng.normal();
  }
  return u;
}

PointMatrix sample(const ProbInput& input, std::size_t n, RandomStream& rng) {
  if (n < 1) throw ConfigError("sample size must be at least 1");
  return input.from_standard(sample_standard(n, input.dim(), rng));
}

PointMatrix lhs_design(const ProbInput& input, std::size_t n, RandomStream& rng) {
  if (n < 2) throw ConfigError("Latin hypercube design needs at least 2 points");
  const auto rows = static_cast<Eigen::Index>(n);
  const auto cols = static_cast<Eigen::Index>(input.dim());
  // Correlated normal scores; only their ranks are used.
  PointMatrix z = sample_standard(n, input.dim(), rng);
  if (!input.independent()) z = z * input.copula_cholesky().transpose();

  PointMatrix x(rows, cols);
  std::vector<Eigen::Index> order(n);
  for (Eigen::Index c = 0; c < cols; ++c) {
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return z(a, c) < z(b, c); });
    const Marginal& m = input.marginal(static_cast<std::size_t>(c));
    for (Eigen::Index rank = 0; rank < rows; ++rank) {
      const double p = (static_cast<double>(rank) + rng.uniform()) / static_cast<double>(n);
      x(order[static_cast<std::size_t>(rank)], c) = m.quantile(p);
    }
  }
  return x;
}

}  // namespace relide
