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

#include <doctest.h>

#include <cmath>
#include <random>

#include "affectinfo/error.hpp"
#include "affectinfo/stats.hpp"
#include "oracles.hpp"

using namespace affectinfo::stats;
using affectinfo::Error;
using affectinfo::ErrorCode;
using V = std::vector<double>;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an affectinfo::Error");
  return ErrorCode::io;
}

V random_vector(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  V v(n);
  for (auto& x : v) x = g(rng);
  return v;
}

std::vector<JoinedRecord> records_with(const V& valence, const V& info) {
  std::vector<JoinedRecord> out;
  for (std::size_t i = 0; i < valence.size(); ++i) {
    JoinedRecord r;
    r.word = "w" + std::to_string(i);
    r.valence = valence[i];
    r.self_info = info[i];
    r.frequency = std::exp(-info[i]);
    r.length = 3 + i % 5;
    out.push_back(r);
  }
  return out;
}

}  // namespace

TEST_CASE("weighted mean and median examples") {
  const auto uniform = WeightedDistribution::unit(V{-1, 0, 1});
  CHECK(weighted_mean(uniform) == 0.0);
  CHECK(weighted_median(uniform) == 0.0);

  const WeightedDistribution skewed(V{-1, 1}, V{1, 3});
  CHECK(weighted_mean(skewed) == 0.5);
  CHECK(weighted_median(skewed) == 1.0);
}

TEST_CASE("median takes the first value reaching half the weight") {
  CHECK(weighted_median(WeightedDistribution(V{3, 1, 2}, V{1, 1, 2})) == 2.0);
  CHECK(weighted_median(WeightedDistribution(V{0.2, -0.4}, V{1, 1})) == -0.4);
  CHECK(weighted_median(WeightedDistribution(V{5, 7}, V{0, 1})) == 7.0);
}

TEST_CASE("unit weights reproduce unweighted statistics") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 30; ++t) {
    const auto v = random_vector(rng, 1 + t * 3);
    const auto d = WeightedDistribution::unit(v);
    CHECK(std::abs(weighted_mean(d) - oracle::mean(v)) < 1e-12);
    CHECK(weighted_median(d) == oracle::median_by_sort(v));
  }
}

TEST_CASE("WeightedDistribution invariants") {
  CHECK(code_of([] { WeightedDistribution(V{1, 2}, V{1}); }) == ErrorCode::mismatch);
  CHECK(code_of([] { WeightedDistribution(V{1}, V{-1}); }) == ErrorCode::domain);
  CHECK(code_of([] { WeightedDistribution(V{1, 2}, V{0, 0}); }) == ErrorCode::degenerate_input);
  CHECK(code_of([] { WeightedDistribution(V{}, V{}); }) == ErrorCode::empty_input);
}

TEST_CASE("pos_neg_ratio") {
  CHECK(pos_neg_ratio(WeightedDistribution(V{0.5, -0.5}, V{2, 1})) == 2.0);
  CHECK(pos_neg_ratio(WeightedDistribution::unit(V{-0.3, 0.3, -0.9, 0.9, 0.0})) == 1.0);
  CHECK(code_of([] { pos_neg_ratio(WeightedDistribution::unit(V{0.0, 0.5})); }) == ErrorCode::undefined_ratio);

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1, 1), w(0.1, 10);
  V values(100), weights(100);
  for (std::size_t i = 0; i < 100; ++i) {
    values[i] = u(rng);
    weights[i] = w(rng);
  }
  const double base = pos_neg_ratio(WeightedDistribution(values, weights));
  for (const double k : {0.001, 3.0, 1e6}) {
    V scaled = weights;
    for (auto& x : scaled) x *= k;
    CHECK(pos_neg_ratio(WeightedDistribution(values, scaled)) == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("histogram placement") {
  CHECK(histogram(WeightedDistribution::unit(V{0.0}), 4) == V{0, 0, 1, 0});
  CHECK(histogram(WeightedDistribution::unit(V{1.0}), 4) == V{0, 0, 0, 1});
  CHECK(histogram(WeightedDistribution::unit(V{-1.0}), 4) == V{1, 0, 0, 0});
  CHECK(histogram(WeightedDistribution::unit(V{-0.75, -0.25, 0.25, 0.75}), 4) == V{0.25, 0.25, 0.25, 0.25});
  CHECK(code_of([] { histogram(WeightedDistribution::unit(V{0.0}), 1); }) == ErrorCode::domain);
}

TEST_CASE("histogram masses are non-negative and sum to one") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-1, 1), w(0, 5);
  for (int t = 0; t < 50; ++t) {
    V values(1 + t * 11), weights(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      values[i] = u(rng);
      weights[i] = w(rng) + (i == 0 ? 1.0 : 0.0);
    }
    const auto masses = histogram(WeightedDistribution(values, weights), 2 + t % 19);
    double sum = 0.0;
    for (const double m : masses) {
      CHECK(m >= 0.0);
      sum += m;
    }
    CHECK(std::abs(sum - 1.0) < 1e-12);
  }
}

TEST_CASE("pearson examples") {
  CHECK(pearson(V{1, 2, 3}, V{2, 4, 6}).coefficient == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(pearson(V{1, 2, 3}, V{6, 4, 2}).coefficient == doctest::Approx(-1.0).epsilon(1e-15));
  const auto r = pearson(V{1, 2, 3, 4}, V{1, 3, 2, 4});
  CHECK(r.coefficient == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(r.n == 4);
  CHECK(r.method == Method::pearson);
  // t = 0.8 * sqrt(2 / 0.36) = 1.8856; two-sided p with 2 df.
  CHECK(r.p_value == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("pearson errors") {
  CHECK(code_of([] { pearson(V{1, 1, 1}, V{1, 2, 3}); }) == ErrorCode::undefined_correlation);
  CHECK(code_of([] { pearson(V{1, 2, 3}, V{1, 2}); }) == ErrorCode::mismatch);
  CHECK(code_of([] { pearson(V{1, 2}, V{1, 2}); }) == ErrorCode::insufficient_data);
}

TEST_CASE("pearson matches the covariance formula") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 100; ++t) {
    const auto x = random_vector(rng, 3 + t);
    auto y = random_vector(rng, 3 + t);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += 0.3 * x[i];
    CHECK(std::abs(pearson(x, y).coefficient - oracle::pearson(x, y)) < 1e-12);
  }
}

TEST_CASE("correlation p-values use the t distribution") {
  // Reference values from the t distribution with n - 2 df.
  CHECK(correlation_p_value(0.5, 12) == doctest::Approx(0.0979).epsilon(1e-3));
  CHECK(correlation_p_value(0.0, 50) == 1.0);
  CHECK(correlation_p_value(1.0, 50) == 0.0);
  CHECK(correlation_p_value(0.3, 103, 1) == doctest::Approx(correlation_p_value(0.3, 102)).epsilon(1e-12));
}

TEST_CASE("spearman and average ranks") {
  CHECK(average_ranks(V{1, 2, 2, 4}) == V{1, 2.5, 2.5, 4});
  CHECK(average_ranks(V{3, 1, 3, 3}) == V{3, 1, 3, 3});
  CHECK(spearman(V{1, 2, 3, 4, 5}, V{1, 8, 27, 64, 125}).coefficient == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(spearman(V{1, 2, 3}, V{3, 2, 1}).method == Method::spearman);

  std::mt19937_64 rng(10);
  std::uniform_int_distribution<int> small(0, 6);
  for (int t = 0; t < 100; ++t) {
    V x(5 + t), y(5 + t);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = small(rng);
      y[i] = small(rng) + 0.5 * x[i];
    }
    if (oracle::covariance(x, x) == 0.0 || oracle::covariance(y, y) == 0.0) continue;
    CHECK(average_ranks(x) == oracle::ranks(x));
    CHECK(std::abs(spearman(x, y).coefficient - oracle::pearson(oracle::ranks(x), oracle::ranks(y))) < 1e-12);
  }
}

TEST_CASE("partial correlation examples") {
  CHECK(partial_coefficient(0.5, 0.0, 0.0) == 0.5);
  CHECK(partial_coefficient(0.6, 0.5, 0.5) == doctest::Approx(0.35 / 0.75).epsilon(1e-15));
  CHECK(code_of([] { partial_coefficient(0.5, 1.0, 0.2); }) == ErrorCode::singular_control);
  CHECK(code_of([] { partial_coefficient(0.5, 0.2, -1.0); }) == ErrorCode::singular_control);
  CHECK(code_of([] { partial_correlation(V{1, 3, 2, 5}, V{2, 1, 4, 3}, V{1, 3, 2, 5}); }) ==
        ErrorCode::singular_control);
}

TEST_CASE("partial correlation matches residual regression") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 50; ++t) {
    const auto z = random_vector(rng, 100);
    auto x = random_vector(rng, 100);
    auto y = random_vector(rng, 100);
    for (std::size_t i = 0; i < 100; ++i) {
      x[i] += 0.7 * z[i];
      y[i] += 0.4 * x[i] - 0.5 * z[i];
    }
    const auto r = partial_correlation(x, y, z);
    CHECK(std::abs(r.coefficient - oracle::partial_correlation(x, y, z)) < 1e-10);
    CHECK(r.n == 100);
    CHECK(r.method == Method::partial);
    CHECK(r.p_value == doctest::Approx(correlation_p_value(r.coefficient, 100, 1)));
  }
}

TEST_CASE("coefficients are invariant under positive affine transforms") {
  std::mt19937_64 rng(14);
  const auto x = random_vector(rng, 60);
  const auto y = random_vector(rng, 60);
  const auto z = random_vector(rng, 60);
  V x2 = x, y2 = y, z2 = z, x3 = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    x2[i] = 3.5 * x[i] - 2.0;
    y2[i] = 0.01 * y[i] + 100.0;
    z2[i] = 7.0 * z[i] + 1.0;
    x3[i] = std::exp(x[i]);
  }
  CHECK(std::abs(pearson(x, y).coefficient - pearson(x2, y2).coefficient) < 1e-12);
  CHECK(std::abs(spearman(x, y).coefficient - spearman(x2, y2).coefficient) < 1e-12);
  CHECK(std::abs(spearman(x, y).coefficient - spearman(x3, y).coefficient) < 1e-12);
  CHECK(std::abs(partial_correlation(x, y, z).coefficient - partial_correlation(x2, y2, z2).coefficient) < 1e-12);
}

TEST_CASE("significance stars") {
  const auto two = StarLegend::two_level();
  CHECK(significance_stars(0.0005, two) == "**");
  CHECK(significance_stars(0.005, two) == "*");
  CHECK(significance_stars(0.5, two) == "");
  CHECK(significance_stars(0.01, two) == "");
  const auto four = StarLegend::four_level();
  CHECK(significance_stars(0.0001, four) == "***");
  CHECK(significance_stars(0.005, four) == "**");
  CHECK(significance_stars(0.05, four) == "*");
  CHECK(significance_stars(0.2, four) == "\xC2\xB0");
  CHECK(significance_stars(0.9, four) == "");
}

TEST_CASE("correlation table lists undefined partials when v = -I") {
  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> u(1.0, 12.0);
  V info(40), valence(40);
  for (std::size_t i = 0; i < 40; ++i) {
    info[i] = u(rng);
    valence[i] = -info[i];
  }
  auto records = records_with(valence, info);
  for (std::size_t i = 0; i < records.size(); ++i) records[i].context_info[0] = info[i] * 0.5 + (i % 3);
  try {
    correlation_table(records);
    FAIL("expected insufficient_data");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::insufficient_data);
    const std::string msg = e.what();
    CHECK(msg.find("rho(l,I|v)") != std::string::npos);
    CHECK(msg.find("rho(v,I2|I)") != std::string::npos);
    CHECK(msg.find("rho(v,I|l)") == std::string::npos);
  }
}

TEST_CASE("correlation table with v close to -I") {
  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> u(1.0, 12.0);
  std::normal_distribution<double> noise(0.0, 0.05);
  V info(40), valence(40), freq(40);
  for (std::size_t i = 0; i < 40; ++i) {
    info[i] = u(rng);
    valence[i] = -info[i] + noise(rng);
  }
  auto records = records_with(valence, info);
  for (std::size_t i = 0; i < records.size(); ++i) {
    records[i].context_info[0] = info[i] * 0.5 + (i % 3);
    records[i].alt_self_info = info[i] + 0.1 * (i % 2);
    freq[i] = records[i].frequency;
  }
  const auto table = correlation_table(records);
  for (const char* name : {"rho(v,f)", "rho(v,I)", "rho(v,I')", "rho(v,I2)", "rho(abs(v),I)", "rho(l,I)",
                           "rho(v,l)", "rho(v,I|l)", "rho(l,I|v)", "rho(v,I2|I)"}) {
    CHECK_MESSAGE(table.find(name) != nullptr, name);
  }
  CHECK(table.find("rho(v,I3)") == nullptr);
  CHECK(table.find("rho(v,I)")->result.coefficient == doctest::Approx(oracle::pearson(valence, info)).epsilon(1e-12));
  CHECK(table.find("rho(v,I)")->result.coefficient < -0.99);
  CHECK(table.find("rho(v,I)")->table == "information");
  CHECK(table.find("rho(v,I)")->stars == "**");
  CHECK(table.find("rho(v,I|l)")->table == "additional");
  CHECK(table.find("rho(v,I2|I)")->table == "partial");
  REQUIRE(table.find("rho(v,f)")->spearman.has_value());
  CHECK(table.find("rho(v,f)")->spearman->coefficient ==
        doctest::Approx(oracle::pearson(oracle::ranks(valence), oracle::ranks(freq))).epsilon(1e-12));
}

TEST_CASE("correlation table partial statistics control for I") {
  std::mt19937_64 rng(18);
  const auto info = random_vector(rng, 200);
  auto valence = random_vector(rng, 200);
  auto records = records_with(valence, info);
  for (std::size_t i = 0; i < 200; ++i) {
    records[i].context_info[1] = info[i] + valence[i];
    if (i % 4 == 0) records[i].context_info[2] = 2.0 * info[i] - valence[i] * 0.2 + 0.01 * (i % 7);
  }
  const auto table = correlation_table(records);
  const auto* p3 = table.find("rho(v,I3|I)");
  REQUIRE(p3);
  CHECK(p3->table == "partial");
  std::vector<double> v, c, s;
  for (const auto& r : records) {
    v.push_back(r.valence);
    c.push_back(*r.context_info[1]);
    s.push_back(r.self_info);
  }
  CHECK(std::abs(p3->result.coefficient - oracle::partial_correlation(v, c, s)) < 1e-10);
  const auto* p4 = table.find("rho(v,I4|I)");
  REQUIRE(p4);
  CHECK(p4->result.n == 50);
  CHECK(table.find("rho(v,I4)")->result.n == 50);
}

TEST_CASE("independent columns give small coefficients") {
  std::mt19937_64 rng(20);
  const auto records = records_with(random_vector(rng, 10'000), random_vector(rng, 10'000));
  const auto table = correlation_table(records);
  for (const char* name : {"rho(v,I)", "rho(abs(v),I)", "rho(v,l)", "rho(v,I|l)"}) {
    CHECK(std::abs(table.find(name)->result.coefficient) < 0.1);
  }
}

TEST_CASE("correlation table needs ten records") {
  std::mt19937_64 rng(22);
  const auto records = records_with(random_vector(rng, 9), random_vector(rng, 9));
  CHECK(code_of([&] { correlation_table(records); }) == ErrorCode::insufficient_data);
}

TEST_CASE("correlation table names the failing statistic") {
  V valence(12), info(12);
  for (std::size_t i = 0; i < 12; ++i) {
    valence[i] = static_cast<double>(i);
    info[i] = static_cast<double>(i * i);
  }
  auto records = records_with(valence, info);
  for (auto& r : records) r.length = 4;
  try {
    correlation_table(records);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::insufficient_data);
    CHECK(std::string(e.what()).find("rho(v,l)") != std::string::npos);
  }
}
