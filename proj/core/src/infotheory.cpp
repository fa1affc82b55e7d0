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

#include "affectinfo/infotheory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "affectinfo/error.hpp"

namespace affectinfo::info {

namespace {

double to_base(double nats, LogBase base) { return base == LogBase::two ? nats / std::numbers::ln2 : nats; }

}  // namespace

LogBase parse_log_base(std::string_view name) {
  if (name == "e" || name == "natural") return LogBase::natural;
  if (name == "2" || name == "two") return LogBase::two;
  throw Error(ErrorCode::validation, "log base must be 'e' or '2', got '" + std::string(name) + "'");
}

std::string_view to_string(LogBase base) noexcept { return base == LogBase::two ? "2" : "e"; }

double self_information(double p, LogBase base) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::domain, "probability must lie in (0, 1], got " + std::to_string(p));
  }
  return to_base(-std::log(p), base);
}

ContextModel::ContextModel(const corpus::CountTable& ngrams) : order_(ngrams.order()) {
  if (order_ < 2) throw Error(ErrorCode::domain, "context model needs n >= 2");
  for (const auto& [key, count] : ngrams.counts()) {
    const auto split = key.rfind(' ');
    const std::string_view context = std::string_view(key).substr(0, split);
    const std::string_view word = std::string_view(key).substr(split + 1);
    // Keys sharing a context are adjacent in a sorted table.
    if (context_names_.empty() || context_names_.back() != context) {
      context_names_.emplace_back(context);
      context_totals_.push_back(0);
      context_max_.push_back(0);
    }
    const std::size_t c = context_names_.size() - 1;
    context_totals_[c] += count;
    context_max_[c] = std::max(context_max_[c], count);
    auto w = by_word_.find(word);
    if (w == by_word_.end()) w = by_word_.emplace(std::string(word), std::vector<Continuation>{}).first;
    w->second.push_back({c, count});
  }
  context_lookup_.resize(context_names_.size());
  std::iota(context_lookup_.begin(), context_lookup_.end(), 0);
  const auto by_name = [this](std::size_t a, std::size_t b) { return context_names_[a] < context_names_[b]; };
  if (!std::is_sorted(context_lookup_.begin(), context_lookup_.end(), by_name)) {
    std::sort(context_lookup_.begin(), context_lookup_.end(), by_name);
  }
}

std::optional<double> ContextModel::information(std::string_view word, LogBase base) const {
  const auto it = by_word_.find(word);
  if (it == by_word_.end()) return std::nullopt;
  double n = 0.0;
  double sum = 0.0;
  for (const auto& c : it->second) {
    const auto count = static_cast<double>(c.count);
    n += count;
    sum += count * std::log(static_cast<double>(context_totals_[c.context]) / count);
  }
  return to_base(sum / n, base);
}

std::uint64_t ContextModel::continuations(std::string_view word) const {
  const auto it = by_word_.find(word);
  if (it == by_word_.end()) return 0;
  std::uint64_t n = 0;
  for (const auto& c : it->second) n += c.count;
  return n;
}

std::uint64_t ContextModel::continuation_total(std::string_view context) const {
  const auto it = std::lower_bound(context_lookup_.begin(), context_lookup_.end(), context,
                                   [this](std::size_t i, std::string_view c) { return context_names_[i] < c; });
  return it != context_lookup_.end() && context_names_[*it] == context ? context_totals_[*it] : 0;
}

ContextModel::Integrity ContextModel::check_against(const corpus::CountTable& lower) const {
  if (lower.order() + 1 != order_) {
    throw Error(ErrorCode::mismatch, "integrity check needs the " + std::to_string(order_ - 1) + "-gram table");
  }
  Integrity out;
  for (std::size_t i = 0; i < context_names_.size(); ++i) {
    const std::uint64_t context_count = lower.count(context_names_[i]);
    if (context_max_[i] > context_count) {
      throw Error(ErrorCode::data_integrity,
                  "n-gram count " + std::to_string(context_max_[i]) + " exceeds count " +
                      std::to_string(context_count) + " of its context '" + context_names_[i] + "'");
    }
    ++out.contexts_checked;
    const double gap = std::abs(static_cast<double>(context_count) - static_cast<double>(context_totals_[i])) /
                       static_cast<double>(context_count);
    out.worst_discrepancy = std::max(out.worst_discrepancy, gap);
    if (gap > kIntegrityTolerance) ++out.contexts_discrepant;
  }
  return out;
}

std::optional<double> contextual_information(std::string_view word, const corpus::CountTable& ngrams,
                                             const corpus::CountTable* lower, LogBase base) {
  const ContextModel model(ngrams);
  if (lower) model.check_against(*lower);
  return model.information(word, base);
}

ScoringResult score_lexicon(const Lexicon& lexicon, const corpus::CountTables& tables,
                            const ScoringOptions& options) {
  if (options.max_context < 1 || options.max_context > 4) {
    throw Error(ErrorCode::validation, "context size must be 1..4");
  }
  if (!tables.has_order(1) || tables.order(1).total() == 0) {
    throw Error(ErrorCode::empty_input, "unigram table is empty");
  }
  const auto& unigrams = tables.order(1);

  ScoringResult out;
  std::vector<ContextModel> models;
  for (std::size_t n = 2; n <= options.max_context; ++n) {
    if (!tables.has_order(n)) {
      throw Error(ErrorCode::validation,
                  "context size " + std::to_string(n) + " requires the " + std::to_string(n) + "-gram table");
    }
    models.emplace_back(tables.order(n));
    out.integrity[n - 2] = models.back().check_against(tables.order(n - 1));
  }

  const auto total = static_cast<double>(unigrams.total());
  for (const auto& entry : lexicon.entries()) {
    const std::uint64_t count = unigrams.count(entry.word);
    if (count == 0) {
      out.missing.push_back(entry.word);
      continue;
    }
    InformationScores s;
    s.word = entry.word;
    s.valence = entry.valence;
    s.length = entry.length;
    s.occurrences = count;
    s.frequency_per_million = 1e6 * static_cast<double>(count) / total;
    s.self_info = self_information(static_cast<double>(count) / total, options.base);
    for (std::size_t k = 0; k < models.size(); ++k) {
      s.context_info[k] = models[k].information(entry.word, options.base);
      if (s.context_info[k]) ++out.context_pairs[k];
    }
    out.scores.push_back(std::move(s));
  }
  return out;
}

std::vector<InfoBin> bin_by_information(std::span<const double> info, std::span<const double> valences,
                                        std::size_t bins) {
  if (info.size() != valences.size()) throw Error(ErrorCode::mismatch, "info and valence lengths differ");
  if (bins == 0) throw Error(ErrorCode::domain, "bin count must be positive");
  if (info.size() < bins) {
    throw Error(ErrorCode::insufficient_data, "need at least " + std::to_string(bins) + " scored words, got " +
                                                  std::to_string(info.size()));
  }
  std::vector<std::size_t> order(info.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return info[a] < info[b]; });

  const std::size_t base = info.size() / bins;
  const std::size_t extra = info.size() % bins;
  std::vector<InfoBin> out(bins);
  std::size_t pos = 0;
  for (std::size_t b = 0; b < bins; ++b) {
    const std::size_t size = base + (b < extra ? 1 : 0);
    auto& bin = out[b];
    bin.members.assign(order.begin() + static_cast<std::ptrdiff_t>(pos),
                       order.begin() + static_cast<std::ptrdiff_t>(pos + size));
    pos += size;
    double info_sum = 0.0;
    double val_sum = 0.0;
    for (const auto i : bin.members) {
      info_sum += info[i];
      val_sum += valences[i];
    }
    const auto k = static_cast<double>(size);
    bin.mean_info = info_sum / k;
    bin.mean_valence = val_sum / k;
    bin.min_info = info[bin.members.front()];
    bin.max_info = info[bin.members.back()];
    if (size > 1) {
      double ss = 0.0;
      for (const auto i : bin.members) ss += (valences[i] - bin.mean_valence) * (valences[i] - bin.mean_valence);
      bin.valence_stderr = std::sqrt(ss / (k - 1.0)) / std::sqrt(k);
    }
  }
  return out;
}

std::vector<double> rescale_for_display(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::degenerate_input, "nothing to rescale");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (!(*hi > *lo)) throw Error(ErrorCode::degenerate_input, "all values are equal");
  std::vector<double> out;
  out.reserve(values.size());
  const double span = *hi - *lo;
  for (const double v : values) out.push_back((v - *lo) / span);
  return out;
}

}  // namespace affectinfo::info
