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

#include "affectinfo/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

#include "affectinfo/error.hpp"

namespace affectinfo::stats {

WeightedDistribution::WeightedDistribution(std::vector<double> values, std::vector<double> weights)
    : values_(std::move(values)), weights_(std::move(weights)) {
  if (values_.size() != weights_.size()) {
    throw Error(ErrorCode::mismatch, "values and weights differ in length");
  }
  if (values_.empty()) throw Error(ErrorCode::empty_input, "distribution has no values");
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!std::isfinite(values_[i])) throw Error(ErrorCode::domain, "non-finite value");
    if (!std::isfinite(weights_[i]) || weights_[i] < 0.0) {
      throw Error(ErrorCode::domain, "weights must be finite and non-negative");
    }
    total_ += weights_[i];
  }
  if (!(total_ > 0.0)) throw Error(ErrorCode::degenerate_input, "distribution has zero total weight");
}

WeightedDistribution WeightedDistribution::unit(std::span<const double> values) {
  return {std::vector<double>(values.begin(), values.end()), std::vector<double>(values.size(), 1.0)};
}

double weighted_mean(const WeightedDistribution& d) {
  double sum = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) sum += d.weights()[i] * d.values()[i];
  return sum / d.total_weight();
}

double weighted_median(const WeightedDistribution& d) {
  std::vector<std::size_t> order(d.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return d.values()[a] < d.values()[b]; });
  const double half = 0.5 * d.total_weight();
  double cumulative = 0.0;
  for (const auto i : order) {
    cumulative += d.weights()[i];
    if (cumulative >= half) return d.values()[i];
  }
  return d.values()[order.back()];
}

double pos_neg_ratio(const WeightedDistribution& d) {
  double pos = 0.0;
  double neg = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d.values()[i] > 0.0) pos += d.weights()[i];
    if (d.values()[i] < 0.0) neg += d.weights()[i];
  }
  if (!(neg > 0.0)) throw Error(ErrorCode::undefined_ratio, "no weight on negative values");
  return pos / neg;
}

std::vector<double> histogram(const WeightedDistribution& d, std::size_t bins) {
  if (bins < 2) throw Error(ErrorCode::domain, "histogram needs at least 2 bins");
  std::vector<double> mass(bins, 0.0);
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double v = d.values()[i];
    if (v < -1.0 || v > 1.0) throw Error(ErrorCode::domain, "histogram value outside [-1, 1]");
    auto bin = static_cast<std::size_t>(std::floor((v + 1.0) * static_cast<double>(bins) / 2.0));
    bin = std::min(bin, bins - 1);
    mass[bin] += d.weights()[i];
  }
  for (auto& m : mass) m /= d.total_weight();
  return mass;
}

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::pearson: return "pearson";
    case Method::spearman: return "spearman";
    case Method::partial: return "partial";
  }
  return "unknown";
}

double correlation_p_value(double r, std::size_t n, std::size_t controls) {
  if (n < 3 + controls) return 1.0;
  const double df = static_cast<double>(n - 2 - controls);
  const double r2 = r * r;
  if (r2 >= 1.0) return 0.0;
  const double t = std::abs(r) * std::sqrt(df / (1.0 - r2));
  const boost::math::students_t dist(df);
  const double p = 2.0 * boost::math::cdf(boost::math::complement(dist, t));
  return std::clamp(p, 0.0, 1.0);
}

namespace {

void check_pair(std::span<const double> x, std::span<const double> y, std::size_t min_n) {
  if (x.size() != y.size()) throw Error(ErrorCode::mismatch, "correlation inputs differ in length");
  if (x.size() < min_n) {
    throw Error(ErrorCode::insufficient_data,
                "correlation needs at least " + std::to_string(min_n) + " observations");
  }
}

double pearson_coefficient(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(ErrorCode::undefined_correlation, "correlation undefined for constant input");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace

CorrelationResult pearson(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y, 3);
  const double r = pearson_coefficient(x, y);
  return {r, x.size(), correlation_p_value(r, x.size()), Method::pearson};
}

std::vector<double> average_ranks(std::span<const double> x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(x.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

CorrelationResult spearman(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y, 3);
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double r = pearson_coefficient(rx, ry);
  return {r, x.size(), correlation_p_value(r, x.size()), Method::spearman};
}

double partial_coefficient(double r_xy, double r_xz, double r_yz) {
  const double denom = (1.0 - r_xz * r_xz) * (1.0 - r_yz * r_yz);
  if (!(denom > 0.0)) {
    throw Error(ErrorCode::singular_control, "control variable is perfectly correlated");
  }
  return std::clamp((r_xy - r_xz * r_yz) / std::sqrt(denom), -1.0, 1.0);
}

CorrelationResult partial_correlation(std::span<const double> x, std::span<const double> y,
                                      std::span<const double> z, Method base) {
  check_pair(x, y, 4);
  check_pair(x, z, 4);
  const auto corr = [base](std::span<const double> a, std::span<const double> b) {
    return base == Method::spearman ? spearman(a, b).coefficient : pearson(a, b).coefficient;
  };
  const double r = partial_coefficient(corr(x, y), corr(x, z), corr(y, z));
  return {r, x.size(), correlation_p_value(r, x.size(), 1), Method::partial};
}

StarLegend StarLegend::two_level() { return {{{0.01, "*"}, {0.001, "**"}}}; }

StarLegend StarLegend::four_level() {
  return {{{0.3, "°"}, {0.1, "*"}, {0.01, "**"}, {0.001, "***"}}};
}

std::string significance_stars(double p, const StarLegend& legend) {
  const std::string* best = nullptr;
  double best_threshold = 0.0;
  for (const auto& [threshold, label] : legend.levels) {
    if (p < threshold && (best == nullptr || threshold < best_threshold)) {
      best = &label;
      best_threshold = threshold;
    }
  }
  return best ? *best : std::string();
}

const Statistic* CorrelationTable::find(std::string_view name) const {
  for (const auto& s : statistics) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

CorrelationTable correlation_table(std::span<const JoinedRecord> records) {
  if (records.size() < kMinJoinedRecords) {
    throw Error(ErrorCode::insufficient_data,
                "correlation table needs at least " + std::to_string(kMinJoinedRecords) +
                    " joined records, got " + std::to_string(records.size()));
  }

  const auto two = StarLegend::two_level();
  const auto four = StarLegend::four_level();

  std::vector<double> v, abs_v, f, info, len;
  for (const auto& r : records) {
    v.push_back(r.valence);
    abs_v.push_back(std::abs(r.valence));
    f.push_back(r.frequency);
    info.push_back(r.self_info);
    len.push_back(static_cast<double>(r.length));
  }

  CorrelationTable table;
  std::vector<std::string> failures;

  const auto pairwise = [&](std::string name, std::string tab, const StarLegend& legend,
                            std::span<const double> x, std::span<const double> y) {
    try {
      Statistic s{name, tab, pearson(x, y), {}, spearman(x, y), {}};
      s.stars = significance_stars(s.result.p_value, legend);
      s.spearman_stars = significance_stars(s.spearman->p_value, legend);
      table.statistics.push_back(std::move(s));
    } catch (const Error& e) {
      failures.push_back(name + ": " + e.what());
    }
  };
  const auto partial = [&](std::string name, std::string tab, std::span<const double> x,
                           std::span<const double> y, std::span<const double> z) {
    try {
      Statistic s{name, tab, partial_correlation(x, y, z), {}, {}, {}};
      s.stars = significance_stars(s.result.p_value, four);
      table.statistics.push_back(std::move(s));
    } catch (const Error& e) {
      failures.push_back(name + ": " + e.what());
    }
  };

  pairwise("rho(v,f)", "information", two, v, f);
  pairwise("rho(v,I)", "information", two, v, info);

  const bool any_alt = std::any_of(records.begin(), records.end(),
                                   [](const JoinedRecord& r) { return r.alt_self_info.has_value(); });
  if (any_alt) {
    std::vector<double> vv, alt;
    for (const auto& r : records) {
      if (r.alt_self_info) {
        vv.push_back(r.valence);
        alt.push_back(*r.alt_self_info);
      }
    }
    pairwise("rho(v,I')", "information", two, vv, alt);
  }

  struct ContextColumns {
    std::vector<double> v, ctx, self;
  };
  std::array<std::optional<ContextColumns>, 3> contexts;
  for (std::size_t k = 0; k < 3; ++k) {
    const bool any = std::any_of(records.begin(), records.end(),
                                 [k](const JoinedRecord& r) { return r.context_info[k].has_value(); });
    if (!any) continue;
    ContextColumns cols;
    for (const auto& r : records) {
      if (r.context_info[k]) {
        cols.v.push_back(r.valence);
        cols.ctx.push_back(*r.context_info[k]);
        cols.self.push_back(r.self_info);
      }
    }
    pairwise("rho(v,I" + std::to_string(k + 2) + ")", "information", two, cols.v, cols.ctx);
    contexts[k] = std::move(cols);
  }

  pairwise("rho(abs(v),I)", "additional", four, abs_v, info);
  pairwise("rho(l,I)", "additional", four, len, info);
  pairwise("rho(v,l)", "additional", four, v, len);
  partial("rho(v,I|l)", "additional", v, info, len);
  partial("rho(l,I|v)", "additional", len, info, v);

  for (std::size_t k = 0; k < 3; ++k) {
    if (!contexts[k]) continue;
    partial("rho(v,I" + std::to_string(k + 2) + "|I)", "partial", contexts[k]->v, contexts[k]->ctx,
            contexts[k]->self);
  }

  if (!failures.empty()) {
    std::string msg = "could not compute:";
    for (const auto& f_msg : failures) msg += "\n  " + f_msg;
    throw Error(ErrorCode::insufficient_data, msg);
  }
  return table;
}

}  // namespace affectinfo::stats
