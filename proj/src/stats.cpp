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

#include "highlights/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "highlights/error.hpp"

namespace hl::stats {

namespace {

void require(bool ok, Errc code, const std::string& message) {
  if (!ok) throw Error(code, message);
}

void require_paired(std::span<const double> x, std::span<const double> y, const char* kernel) {
  require(x.size() == y.size(), Errc::LengthMismatch,
          std::string(kernel) + ": inputs have different lengths (" + std::to_string(x.size()) +
              " vs " + std::to_string(y.size()) + ")");
  require(x.size() >= 3, Errc::InsufficientN,
          std::string(kernel) + ": needs at least 3 pairs, got " + std::to_string(x.size()));
}

double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

// Number of permutations of n items with k inversions, k = 0..n(n-1)/2.
std::vector<double> mahonian_row(std::size_t n) {
  std::vector<double> row{1.0};
  for (std::size_t m = 2; m <= n; ++m) {
    std::vector<double> next(row.size() + m - 1, 0.0);
    for (std::size_t k = 0; k < next.size(); ++k) {
      for (std::size_t j = 0; j < m && j <= k; ++j) {
        if (k - j < row.size()) next[k] += row[k - j];
      }
    }
    row = std::move(next);
  }
  return row;
}

// P(|S| >= |s|) when every permutation of n untied items is equally likely,
// where S = pairs - 2 * inversions.
double exact_p_untied(std::size_t n, long long s) {
  auto row = mahonian_row(n);
  const long long pairs = static_cast<long long>(n * (n - 1) / 2);
  double hits = 0.0, total = 0.0;
  for (std::size_t k = 0; k < row.size(); ++k) {
    long long sk = pairs - 2 * static_cast<long long>(k);
    total += row[k];
    if (std::llabs(sk) >= std::llabs(s)) hits += row[k];
  }
  return clamp_probability(hits / total);
}

int sign(double v) { return (v > 0) - (v < 0); }

long long pair_score(std::span<const double> x, std::span<const double> y) {
  long long s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) s += sign(x[j] - x[i]) * sign(y[j] - y[i]);
  }
  return s;
}

// Exact permutation p-value of S with ties: every distinct arrangement of y
// against fixed x is visited once. Only used for small n.
double exact_p_tied(std::span<const double> x, std::span<const double> y, long long s) {
  std::vector<double> perm(y.begin(), y.end());
  std::sort(perm.begin(), perm.end());
  double hits = 0.0, total = 0.0;
  do {
    total += 1.0;
    if (std::llabs(pair_score(x, perm)) >= std::llabs(s)) hits += 1.0;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return clamp_probability(hits / total);
}

// Sizes of groups of equal values.
std::vector<double> tie_groups(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    if (j - i > 1) out.push_back(static_cast<double>(j - i));
    i = j;
  }
  return out;
}

double poly(std::span<const double> c, double x) {
  double result = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) result = result * x + *it;
  return result;
}

// Merge sort returning the number of strict inversions.
long long count_inversions(std::vector<double>& v, std::vector<double>& scratch, std::size_t lo,
                           std::size_t hi) {
  if (hi - lo < 2) return 0;
  std::size_t mid = lo + (hi - lo) / 2;
  long long swaps = count_inversions(v, scratch, lo, mid) + count_inversions(v, scratch, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      swaps += static_cast<long long>(mid - i);
      scratch[k++] = v[j++];
    } else {
      scratch[k++] = v[i++];
    }
  }
  while (i < mid) scratch[k++] = v[i++];
  while (j < hi) scratch[k++] = v[j++];
  std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo),
            scratch.begin() + static_cast<std::ptrdiff_t>(hi),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return swaps;
}

long long tied_pairs(std::span<const double> sorted) {
  long long total = 0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    long long t = static_cast<long long>(j - i);
    total += t * (t - 1) / 2;
    i = j;
  }
  return total;
}

}  // namespace

double normal_sf(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

KernelResult pearson(std::span<const double> x, std::span<const double> y) {
  require_paired(x, y, "pearson");
  const double n = static_cast<double>(x.size());
  double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  require(sxx > 0.0 && syy > 0.0, Errc::ConstantInput, "pearson: constant input");
  double r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);

  double df = n - 2.0;
  double p = 0.0;
  if (std::fabs(r) < 1.0) {
    double t = r * std::sqrt(df / ((1.0 - r) * (1.0 + r)));
    boost::math::students_t dist(df);
    p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t)));
  }
  return {r, clamp_probability(p), x.size()};
}

std::vector<double> average_ranks(std::span<const double> x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(x.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && x[order[j]] == x[order[i]]) ++j;
    double mean_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = mean_rank;
    i = j;
  }
  return ranks;
}

KernelResult spearman(std::span<const double> x, std::span<const double> y) {
  require_paired(x, y, "spearman");
  auto rx = average_ranks(x);
  auto ry = average_ranks(y);
  try {
    return pearson(rx, ry);
  } catch (const Error& e) {
    if (e.code() == Errc::ConstantInput) throw Error(Errc::ConstantInput, "spearman: constant input");
    throw;
  }
}

KernelResult kendall_tau(std::span<const double> x, std::span<const double> y) {
  require_paired(x, y, "kendall_tau");
  const std::size_t n = x.size();

  // Knight's algorithm: sort by (x, y), then count inversions in y.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return x[a] != x[b] ? x[a] < x[b] : y[a] < y[b];
  });
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = x[order[i]];
    ys[i] = y[order[i]];
  }
  long long x_ties = tied_pairs(xs);
  long long joint_ties = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && xs[j] == xs[i] && ys[j] == ys[i]) ++j;
    long long t = static_cast<long long>(j - i);
    joint_ties += t * (t - 1) / 2;
    i = j;
  }
  std::vector<double> scratch(n);
  long long swaps = count_inversions(ys, scratch, 0, n);
  long long y_ties = tied_pairs(ys);

  const long long pairs = static_cast<long long>(n * (n - 1) / 2);
  require(pairs - x_ties > 0 && pairs - y_ties > 0, Errc::AllTiedInput, "kendall_tau: all-tied input");
  const long long s = pairs - x_ties - y_ties + joint_ties - 2 * swaps;
  const double tau = static_cast<double>(s) /
                     std::sqrt(static_cast<double>(pairs - x_ties) * static_cast<double>(pairs - y_ties));

  double p;
  if (n < 10) {
    p = (x_ties == 0 && y_ties == 0) ? exact_p_untied(n, s) : exact_p_tied(x, y, s);
  } else {
    const double nn = static_cast<double>(n);
    auto tx = tie_groups({x.begin(), x.end()});
    auto ty = tie_groups({y.begin(), y.end()});
    double vt = 0, vu = 0, t1 = 0, u1 = 0, t2 = 0, u2 = 0;
    for (double t : tx) {
      vt += t * (t - 1) * (2 * t + 5);
      t1 += t * (t - 1);
      t2 += t * (t - 1) * (t - 2);
    }
    for (double u : ty) {
      vu += u * (u - 1) * (2 * u + 5);
      u1 += u * (u - 1);
      u2 += u * (u - 1) * (u - 2);
    }
    double var = (nn * (nn - 1) * (2 * nn + 5) - vt - vu) / 18.0 + t1 * u1 / (2 * nn * (nn - 1)) +
                 t2 * u2 / (9 * nn * (nn - 1) * (nn - 2));
    double z = static_cast<double>(s) / std::sqrt(var);
    p = 2.0 * normal_sf(std::fabs(z));
  }
  return {tau, clamp_probability(p), n};
}

KernelResult shapiro_wilk(std::span<const double> data) {
  const std::size_t n = data.size();
  require(n >= 3 && n <= 5000, Errc::NOutOfRange,
          "shapiro_wilk: n must be in [3, 5000], got " + std::to_string(n));
  std::vector<double> x(data.begin(), data.end());
  std::sort(x.begin(), x.end());
  const double range = x.back() - x.front();
  require(range > 1e-19 * std::max(1.0, std::fabs(x.front())), Errc::ConstantInput,
          "shapiro_wilk: constant input");

  static constexpr double c1[] = {0.0, 0.221157, -0.147981, -2.07119, 4.434685, -2.706056};
  static constexpr double c2[] = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
  static constexpr double c3[] = {0.544, -0.39978, 0.025054, -6.714e-4};
  static constexpr double c4[] = {1.3822, -0.77857, 0.062767, -0.0020322};
  static constexpr double c5[] = {-1.5861, -0.31082, -0.083751, 0.0038915};
  static constexpr double c6[] = {-0.4803, -0.082676, 0.0030302};
  static constexpr double g[] = {-2.273, 0.459};

  const std::size_t half = n / 2;
  const double an = static_cast<double>(n);
  std::vector<double> a(half);
  if (n == 3) {
    a[0] = std::numbers::sqrt2 / 2.0;
  } else {
    boost::math::normal standard;
    std::vector<double> m(half);
    double summ2 = 0.0;
    for (std::size_t i = 0; i < half; ++i) {
      m[i] = boost::math::quantile(standard, (static_cast<double>(i + 1) - 0.375) / (an + 0.25));
      summ2 += m[i] * m[i];
    }
    summ2 *= 2.0;
    const double ssumm2 = std::sqrt(summ2);
    const double rsn = 1.0 / std::sqrt(an);
    const double a1 = poly(c1, rsn) - m[0] / ssumm2;
    std::size_t first_scaled;
    double fac;
    if (n > 5) {
      const double a2 = -m[1] / ssumm2 + poly(c2, rsn);
      fac = std::sqrt((summ2 - 2.0 * m[0] * m[0] - 2.0 * m[1] * m[1]) /
                      (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
      a[1] = a2;
      first_scaled = 2;
    } else {
      fac = std::sqrt((summ2 - 2.0 * m[0] * m[0]) / (1.0 - 2.0 * a1 * a1));
      first_scaled = 1;
    }
    a[0] = a1;
    for (std::size_t i = first_scaled; i < half; ++i) a[i] = -m[i] / fac;
  }

  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / an;
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  double num = 0.0;
  for (std::size_t i = 0; i < half; ++i) num += a[i] * (x[n - 1 - i] - x[i]);
  const double w = std::min(1.0, num * num / ss);

  double p;
  if (n == 3) {
    constexpr double pi6 = 6.0 / std::numbers::pi;
    constexpr double stqr = std::numbers::pi / 3.0;
    p = std::max(0.0, pi6 * (std::asin(std::sqrt(w)) - stqr));
  } else {
    double w1 = std::log(1.0 - w);
    double mu, sigma;
    if (n <= 11) {
      const double gamma = poly(g, an);
      if (w1 >= gamma) return {w, 0.0, n};
      w1 = -std::log(gamma - w1);
      mu = poly(c3, an);
      sigma = std::exp(poly(c4, an));
    } else {
      const double xx = std::log(an);
      mu = poly(c5, xx);
      sigma = std::exp(poly(c6, xx));
    }
    p = normal_sf((w1 - mu) / sigma);
  }
  return {w, clamp_probability(p), n};
}

double kolmogorov_sf(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 1.18) {
    // Small-lambda form of the same series.
    const double k = std::sqrt(2.0 * std::numbers::pi) / lambda;
    const double f = -std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda);
    double sum = 0.0;
    for (int j = 1; j <= 50; j += 2) sum += std::exp(j * j * f);
    return clamp_probability(1.0 - k * sum);
  }
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += (j % 2 ? term : -term);
    if (term < 1e-17) break;
  }
  return clamp_probability(2.0 * sum);
}

KernelResult ks_uniform(std::span<const double> data) {
  const std::size_t n = data.size();
  require(n >= 5, Errc::InsufficientN, "ks_uniform: needs at least 5 values, got " + std::to_string(n));
  std::vector<double> x(data.begin(), data.end());
  std::sort(x.begin(), x.end());
  const double lo = x.front(), range = x.back() - x.front();
  require(range > 0.0, Errc::ZeroRange, "ks_uniform: zero range");
  const double nn = static_cast<double>(n);
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = (x[i] - lo) / range;
    d = std::max({d, static_cast<double>(i + 1) / nn - f, f - static_cast<double>(i) / nn});
  }
  return {d, kolmogorov_sf(std::sqrt(nn) * d), n};
}

MannKendallResult mann_kendall(std::span<const double> series) {
  const std::size_t n = series.size();
  require(n >= 3, Errc::InsufficientN, "mann_kendall: needs at least 3 points, got " + std::to_string(n));
  long long s = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) s += sign(series[j] - series[i]);
  }
  const auto ties = tie_groups({series.begin(), series.end()});
  const double nn = static_cast<double>(n);
  double var = nn * (nn - 1) * (2 * nn + 5);
  for (double t : ties) var -= t * (t - 1) * (2 * t + 5);
  var /= 18.0;

  MannKendallResult out{s, 0.0, 1.0, n};
  if (var > 0.0) {
    if (s > 0) out.z = (static_cast<double>(s) - 1.0) / std::sqrt(var);
    if (s < 0) out.z = (static_cast<double>(s) + 1.0) / std::sqrt(var);
  }
  if (n <= 10) {
    std::vector<double> index(n);
    std::iota(index.begin(), index.end(), 0.0);
    out.p_value = ties.empty() ? exact_p_untied(n, s) : exact_p_tied(index, series, s);
  } else {
    out.p_value = clamp_probability(2.0 * normal_sf(std::fabs(out.z)));
  }
  return out;
}

KernelResult autocorrelation(std::span<const double> series, std::size_t lag) {
  const std::size_t n = series.size();
  require(lag >= 1, Errc::InsufficientN, "autocorrelation: lag must be positive");
  require(n >= 2 * lag + 1, Errc::InsufficientN,
          "autocorrelation: lag " + std::to_string(lag) + " needs at least " +
              std::to_string(2 * lag + 1) + " points, got " + std::to_string(n));
  auto [lo, hi] = std::minmax_element(series.begin(), series.end());
  require(*lo != *hi, Errc::ConstantInput, "autocorrelation: constant series");

  const double mean = std::accumulate(series.begin(), series.end(), 0.0) / static_cast<double>(n);
  double num = 0.0, den = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    const double d = series[t] - mean;
    den += d * d;
    if (t + lag < n) num += d * (series[t + lag] - mean);
  }
  return {num / den, std::nullopt, n};
}

std::vector<std::size_t> find_local_maxima(std::span<const double> x) {
  const std::size_t n = x.size();
  require(n >= 3, Errc::InsufficientN, "find_local_maxima: needs at least 3 points, got " + std::to_string(n));
  require(std::none_of(x.begin(), x.end(), [](double v) { return std::isnan(v); }), Errc::SparseSeries,
          "find_local_maxima: series has absent points");
  std::vector<std::size_t> peaks;
  if (x[0] > x[1]) peaks.push_back(0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (x[i] > x[i - 1] && x[i] > x[i + 1]) peaks.push_back(i);
  }
  if (x[n - 1] > x[n - 2]) peaks.push_back(n - 1);
  return peaks;
}

}  // namespace hl::stats
