// Copyright 2026 The affectinfo Authors
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

// Frequency-weighted distributions, correlation machinery and the
// Wilcoxon / Mann-Whitney location-shift test.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace affectinfo::stats {

class WeightedDistribution {
 public:
  // Throws mismatch on length mismatch, domain on negative or non-finite
  // weights, degenerate_input when the weights sum to zero.
  WeightedDistribution(std::vector<double> values, std::vector<double> weights);

  static WeightedDistribution unit(std::span<const double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> weights() const noexcept { return weights_; }
  double total_weight() const noexcept { return total_; }
  std::size_t size() const noexcept { return values_.size(); }

 private:
  std::vector<double> values_;
  std::vector<double> weights_;
  double total_ = 0.0;
};

double weighted_mean(const WeightedDistribution& d);

// Smallest value whose cumulative weight reaches half the total weight.
double weighted_median(const WeightedDistribution& d);

// Positive mass over negative mass; zero-valued entries count for neither.
double pos_neg_ratio(const WeightedDistribution& d);

// Equal-width bins over [-1, 1], each closed on the left; the last bin also
// includes 1. Returned masses sum to 1.
std::vector<double> histogram(const WeightedDistribution& d, std::size_t bins);

enum class Method { pearson, spearman, partial };
std::string_view to_string(Method m) noexcept;

struct CorrelationResult {
  double coefficient = 0.0;
  std::size_t n = 0;
  double p_value = 1.0;
  Method method = Method::pearson;
};

// Two-sided p-value of a (partial) correlation coefficient from the t
// statistic with n - 2 - controls degrees of freedom.
double correlation_p_value(double r, std::size_t n, std::size_t controls = 0);

CorrelationResult pearson(std::span<const double> x, std::span<const double> y);
CorrelationResult spearman(std::span<const double> x, std::span<const double> y);

// 1-based ranks; tied values share the mean of the ranks they span.
std::vector<double> average_ranks(std::span<const double> x);

double partial_coefficient(double r_xy, double r_xz, double r_yz);

// Correlation of x and y controlling for z, built from the pairwise
// coefficients of `base` (pearson or spearman).
CorrelationResult partial_correlation(std::span<const double> x, std::span<const double> y,
                                      std::span<const double> z, Method base = Method::pearson);

struct RankTestResult {
  double shift = 0.0;  // Hodges-Lehmann estimate of a - b
  double ci_low = 0.0;
  double ci_high = 0.0;
  double p_value = 1.0;
  double u_statistic = 0.0;  // pairs with a > b, ties counted one half
  bool exact = false;
  std::size_t n_a = 0;
  std::size_t n_b = 0;
};

inline constexpr std::uint64_t kExactPairLimit = 10'000;

// k-th smallest (1-based) of the |a|*|b| differences a_i - b_j without
// materializing them. Both inputs must be sorted ascending.
double kth_pairwise_difference(std::span<const double> a_sorted, std::span<const double> b_sorted,
                               std::uint64_t k);

// Null distribution of 2U for sample `a` drawn from the pooled values of a
// and b (tie-aware). Entry v is the number of splits with 2U == v.
std::vector<double> exact_u_distribution(std::span<const double> a, std::span<const double> b);

// Two-sided rank-sum test with the Hodges-Lehmann shift and its 95% Moses
// interval. Exact when |a|*|b| <= kExactPairLimit, otherwise normal
// approximation with tie and continuity correction.
RankTestResult mann_whitney_shift(std::span<const double> a, std::span<const double> b,
                                  double confidence = 0.95);

// Draws `count` values with probability proportional to weight. Uses only the
// raw 64-bit output of the engine so results are portable across libraries.
std::vector<double> weighted_resample(const WeightedDistribution& d, std::size_t count,
                                      std::mt19937_64& rng);

inline constexpr std::size_t kDefaultResampleSize = 100'000;
inline constexpr std::size_t kMinResampleSize = 1'000;

// Resampled weighted values against the unweighted value list.
RankTestResult weighted_shift_test(const WeightedDistribution& d, std::size_t sample_size,
                                   std::uint64_t seed);

struct StarLegend {
  // (threshold, label); p below threshold earns the label.
  std::vector<std::pair<double, std::string>> levels;

  static StarLegend two_level();   // * p<0.01, ** p<0.001
  static StarLegend four_level();  // ° p<0.3, * p<0.1, ** p<0.01, *** p<0.001
};

std::string significance_stars(double p, const StarLegend& legend);

// One joined lexicon/corpus record. context_info[k] holds I_{k+2}.
struct JoinedRecord {
  std::string word;
  double valence = 0.0;
  std::size_t length = 0;
  double frequency = 0.0;
  double self_info = 0.0;
  std::array<std::optional<double>, 3> context_info{};
  std::optional<double> alt_self_info;
};

struct Statistic {
  std::string name;   // e.g. "rho(v,I|l)"
  std::string table;  // information | additional | partial
  CorrelationResult result;
  std::string stars;
  std::optional<CorrelationResult> spearman;
  std::string spearman_stars;
};

struct CorrelationTable {
  std::vector<Statistic> statistics;

  const Statistic* find(std::string_view name) const;
};

inline constexpr std::size_t kMinJoinedRecords = 10;

// Every correlation the analysis reports. Context-size statistics use the
// records that carry that context value (pairwise exclusion). Throws
// insufficient_data listing each statistic that could not be computed.
CorrelationTable correlation_table(std::span<const JoinedRecord> records);

}  // namespace affectinfo::stats
