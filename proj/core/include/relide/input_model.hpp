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

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "relide/random.hpp"

namespace relide {

// Points are stored one per row: an n x M matrix holds n points of dimension M.
using PointMatrix = Eigen::MatrixXd;

/// One-dimensional marginal distribution of an input variable.
///
/// All parameters are in the physical units of the variable. For the lognormal
/// the given mean and standard deviation are those of the variable itself; for
/// the truncated Gaussian they are the parameters of the parent (untruncated)
/// Gaussian, renormalized over [lower, upper].
class Marginal {
 public:
  enum class Kind { kGaussian, kLognormal, kTruncatedGaussian };

  static Marginal gaussian(double mean, double std);
  static Marginal lognormal(double mean, double std);
  static Marginal truncated_gaussian(double mean, double std, double lower, double upper);

  Kind kind() const { return kind_; }
  double mean_parameter() const { return mean_; }
  double std_parameter() const { return std_; }
  double lower() const { return lower_; }
  double upper() const { return upper_; }
  // Log-space parameters of the lognormal.
  double lambda() const { return lambda_; }
  double zeta() const { return zeta_; }

  bool in_support(double x) const;
  double pdf(double x) const;
  double cdf(double x) const;
  // Complementary CDF, accurate where cdf() is close to one.
  double sf(double x) const;
  // Inverse CDF, |cdf(q) - p| < 1e-12.
  double quantile(double p) const;

  // Maps x to the standard-normal z with Phi(z) = F(x). Throws DomainError
  // outside the support.
  double to_normal(double x) const;
  double from_normal(double z) const;

  std::string describe() const;

 private:
  Marginal(Kind kind, double mean, double std, double lower, double upper);
  double refine_quantile(double p, double guess) const;

  Kind kind_;
  double mean_;
  double std_;
  double lower_;
  double upper_;
  double lambda_ = 0.0;
  double zeta_ = 0.0;
  // Truncation: parent CDF and survival at the bounds, and the retained mass.
  double cdf_lower_ = 0.0;
  double sf_upper_ = 0.0;
  double sf_lower_ = 1.0;
  double mass_ = 1.0;
};

/// Joint input distribution: marginals coupled by a Gaussian copula.
///
/// The standard-normal transform is u = L^-1 z with z_i = Phi^-1(F_i(x_i)) and
/// L the lower Cholesky factor of the copula correlation. L depends on the
/// order of the marginal list (the joint law does not), so u-coordinates are
/// defined relative to that order.
class ProbInput {
 public:
  ProbInput(std::vector<Marginal> marginals, std::vector<std::string> names = {});
  ProbInput(std::vector<Marginal> marginals, Eigen::MatrixXd copula_corr,
            std::vector<std::string> names = {});

  std::size_t dim() const { return marginals_.size(); }
  const std::vector<Marginal>& marginals() const { return marginals_; }
  const Marginal& marginal(std::size_t i) const { return marginals_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  const Eigen::MatrixXd& correlation() const { return corr_; }
  const Eigen::MatrixXd& copula_cholesky() const { return chol_; }
  bool independent() const { return independent_; }

  Eigen::VectorXd to_standard(const Eigen::VectorXd& x) const;
  Eigen::VectorXd from_standard(const Eigen::VectorXd& u) const;
  PointMatrix to_standard(const PointMatrix& x) const;
  PointMatrix from_standard(const PointMatrix& u) const;

 private:
  std::vector<Marginal> marginals_;
  std::vector<std::string> names_;
  Eigen::MatrixXd corr_;
  Eigen::MatrixXd chol_;
  bool independent_ = true;
};

// n i.i.d. draws from the joint distribution, physical space.
PointMatrix sample(const ProbInput& input, std::size_t n, RandomStream& rng);

// Independent standard-normal draws (n x dim), the sampling space of the
// reliability estimators.
PointMatrix sample_standard(std::size_t n, std::size_t dim, RandomStream& rng);

/// Latin hypercube design in physical space.
///
/// Every marginal has exactly one point in each of its n equiprobable strata.
/// Dependence is induced by ranking a copula sample (rank-based LHS), which
/// reduces to the classical permutation construction for independent inputs.
PointMatrix lhs_design(const ProbInput& input, std::size_t n, RandomStream& rng);

}  // namespace relide
