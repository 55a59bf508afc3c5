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

#include <span>
#include <vector>

namespace relide {

double normal_pdf(double x);
// Standard normal CDF, accurate in both tails.
double normal_cdf(double x);
// Inverse of normal_cdf; returns -inf / +inf at 0 / 1.
double normal_quantile(double p);
// Inverse of the upper tail, Q^-1(q) = -normal_quantile(q) but accurate for tiny q.
double normal_upper_quantile(double q);

// Type-7 (linear interpolation of order statistics) sample quantile of an
// ascending-sorted sample.
double quantile_sorted(std::span<const double> sorted, double p);

// Same, but sorts a copy first.
double quantile(std::span<const double> sample, double p);
double median(std::span<const double> sample);

double mean(std::span<const double> sample);
// Unbiased (n - 1) sample variance.
double variance(std::span<const double> sample);

struct BoxStats {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  double iqr() const { return q3 - q1; }
};

BoxStats box_stats(std::span<const double> sample);

}  // namespace relide
