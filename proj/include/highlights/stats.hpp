// Copyright 2026 The Highlights Authors.
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

#pragma once

// Statistical kernels. Each returns the raw statistic and, where one is
// defined, a two-sided p-value. Inputs are never modified.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace hl::stats {

struct KernelResult {
  double statistic = 0.0;
  std::optional<double> p_value;
  std::size_t n = 0;
};

// Sample correlation; p from Student's t with n-2 degrees of freedom.
// Requires equal lengths, n >= 3 and non-constant inputs.
KernelResult pearson(std::span<const double> x, std::span<const double> y);

// Pearson over average ranks (ties share their mean rank).
KernelResult spearman(std::span<const double> x, std::span<const double> y);

// Kendall's tau-b. p is exact (permutation distribution of S) for n < 10
// and from the tie-corrected normal approximation of S otherwise.
KernelResult kendall_tau(std::span<const double> x, std::span<const double> y);

// Shapiro-Wilk W with Royston's AS R94 coefficients and p-value
// approximation; 3 <= n <= 5000.
KernelResult shapiro_wilk(std::span<const double> x);

// Kolmogorov-Smirnov D against Uniform(min(x), max(x)); p from the
// asymptotic Kolmogorov distribution. n >= 5.
KernelResult ks_uniform(std::span<const double> x);

struct MannKendallResult {
  long long s = 0;
  double z = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
};

// S = sum over i<j of sign(x[j] - x[i]). p is exact for n <= 10 and uses the
// tie-corrected normal approximation (with continuity correction) above.
MannKendallResult mann_kendall(std::span<const double> series);

// Sample autocorrelation: lag-`lag` autocovariance about the series mean
// over the lag-0 autocovariance. Requires n >= 2*lag + 1.
KernelResult autocorrelation(std::span<const double> series, std::size_t lag);

// Strict local maxima. Interior points must exceed both neighbours, end
// points their single neighbour; plateaus produce no peak.
std::vector<std::size_t> find_local_maxima(std::span<const double> series);

// 1-based ranks; tied values receive the mean of the ranks they span.
std::vector<double> average_ranks(std::span<const double> x);

// Upper tail of the standard normal distribution.
double normal_sf(double z);

}  // namespace hl::stats
