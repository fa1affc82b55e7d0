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

#include "affectinfo/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "affectinfo/error.hpp"
#include "affectinfo/report.hpp"

namespace affectinfo::pipeline {

namespace {

using nlohmann::json;

const char* const kContextLabels[] = {"I2", "I3", "I4"};

[[noreturn]] void invalid(const std::string& message) { throw Error(ErrorCode::validation, message); }

fs::path resolve(const fs::path& p, const fs::path& base_dir) {
  if (p.empty() || p.is_absolute()) return p;
  if (const char* data = std::getenv(kDataDirEnv); data != nullptr && *data != '\0') {
    return fs::path(data) / p;
  }
  return base_dir / p;
}

std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (const unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[v & 0xF];
    v >>= 4;
  }
  return out;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

json read_json(const fs::path& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse, "malformed JSON in '" + path.string() + "': " + e.what());
  }
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

template <typename T>
T get_or(const json& doc, const char* key, T fallback) {
  if (!doc.contains(key)) return fallback;
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    invalid(std::string("config field '") + key + "' has the wrong type");
  }
}

void reject_unknown(const json& doc, std::initializer_list<const char*> allowed, const std::string& where) {
  for (const auto& [key, value] : doc.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }) == allowed.end()) {
      invalid("unknown config key '" + key + "' in " + where);
    }
  }
}

json correlation_json(const stats::CorrelationResult& r, const std::string& stars) {
  return {{"coefficient", r.coefficient},
          {"n", r.n},
          {"p", r.p_value},
          {"stars", stars},
          {"method", std::string(stats::to_string(r.method))}};
}

json shift_json(const stats::RankTestResult& r, std::size_t sample_size, std::uint64_t seed) {
  return {{"shift", r.shift},
          {"ci_low", r.ci_low},
          {"ci_high", r.ci_high},
          {"n", r.n_a + r.n_b},
          {"n_weighted_sample", r.n_a},
          {"n_values", r.n_b},
          {"p", r.p_value},
          {"stars", stats::significance_stars(r.p_value, stats::StarLegend::two_level())},
          {"u_statistic", r.u_statistic},
          {"exact", r.exact},
          {"sample_size", sample_size},
          {"seed", seed}};
}

json bin_json(const info::InfoBin& bin, const std::vector<std::string>& words) {
  std::vector<std::string> members;
  for (const auto i : bin.members) members.push_back(words[i]);
  return {{"mean_info", bin.mean_info},     {"mean_valence", bin.mean_valence},
          {"valence_stderr", bin.valence_stderr}, {"min_info", bin.min_info},
          {"max_info", bin.max_info},       {"words", members}};
}

corpus::CountTables load_tables(const RunConfig& c, corpus::CorpusStats* stats) {
  const std::size_t max_order = std::max<std::size_t>(1, c.max_context);
  if (c.corpus_kind == CorpusKind::raw) {
    const auto docs = corpus::list_documents(c.raw_corpus);
    return corpus::count_documents(docs, max_order, c.shards, stats);
  }
  corpus::CountTables tables(max_order);
  for (std::size_t n = 1; n <= max_order; ++n) tables.set(corpus::load_count_table(c.count_paths.at(n), n));
  return tables;
}

std::string scores_csv(const info::ScoringResult& scoring) {
  std::ostringstream out;
  out << "word,valence,freq_per_million,I,I2,I3,I4\n";
  for (const auto& s : scoring.scores) {
    out << s.word << ',' << shortest(s.valence) << ',' << shortest(s.frequency_per_million) << ','
        << shortest(s.self_info);
    for (const auto& ctx : s.context_info) {
      out << ',';
      if (ctx) out << shortest(*ctx);
    }
    out << '\n';
  }
  return std::move(out).str();
}

std::string table_csv(const stats::CorrelationTable& table, const std::string& name) {
  std::ostringstream out;
  out << "statistic,coefficient,stars,n,p_value,spearman,spearman_stars\n";
  for (const auto& s : table.statistics) {
    if (s.table != name) continue;
    out << '"' << s.name << "\"," << shortest(s.result.coefficient) << ',' << s.stars << ',' << s.result.n
        << ',' << shortest(s.result.p_value) << ',';
    if (s.spearman) out << shortest(s.spearman->coefficient);
    out << ',' << s.spearman_stars << '\n';
  }
  return std::move(out).str();
}

json manifest(const std::string& command, const std::string& hash, std::optional<std::uint64_t> seed,
              const std::vector<fs::path>& files, const json& extra = json::object()) {
  std::vector<std::string> names;
  for (const auto& f : files) names.push_back(f.filename().string());
  std::sort(names.begin(), names.end());
  json doc = {{"command", command}, {"config_hash", hash}, {"files", names}, {"version", "0.1.0"}};
  doc["seed"] = seed ? json(*seed) : json(nullptr);
  for (const auto& [k, v] : extra.items()) doc[k] = v;
  return doc;
}

}  // namespace

RunConfig parse_config(const json& doc, const fs::path& base_dir) {
  if (!doc.is_object()) invalid("config must be a JSON object");
  reject_unknown(doc,
                 {"lexicon", "corpus", "alternate_unigrams", "max_context", "log_base", "bins", "histogram_bins",
                  "resample", "shards", "output", "render"},
                 "config");
  RunConfig c;
  if (!doc.contains("lexicon") || !doc["lexicon"].is_object()) invalid("config needs a 'lexicon' object");
  const auto& lex = doc["lexicon"];
  reject_unknown(lex, {"path", "scale", "language"}, "lexicon");
  if (!lex.contains("path")) invalid("lexicon.path is required");
  c.lexicon_path = resolve(get_or<std::string>(lex, "path", ""), base_dir);
  if (!lex.contains("scale")) invalid("lexicon.scale is required (preset name or {min, max})");
  const auto& scale = lex["scale"];
  if (scale.is_string()) {
    c.scale = ValenceScale::preset(scale.get<std::string>());
  } else if (scale.is_object() && scale.contains("min") && scale.contains("max") && scale["min"].is_number() &&
             scale["max"].is_number()) {
    try {
      c.scale = ValenceScale(scale["min"].get<double>(), scale["max"].get<double>());
    } catch (const Error& e) {
      invalid(std::string("lexicon.scale: ") + e.what());
    }
  } else {
    invalid("lexicon.scale must be a preset name or {\"min\": a, \"max\": b}");
  }
  c.language = get_or<std::string>(lex, "language", c.language);

  if (!doc.contains("corpus") || !doc["corpus"].is_object()) invalid("config needs a 'corpus' object");
  const auto& corp = doc["corpus"];
  reject_unknown(corp, {"raw", "counts"}, "corpus");
  if (corp.contains("raw") == corp.contains("counts")) invalid("corpus needs exactly one of 'raw' or 'counts'");
  if (corp.contains("raw")) {
    c.corpus_kind = CorpusKind::raw;
    c.raw_corpus = resolve(get_or<std::string>(corp, "raw", ""), base_dir);
  } else {
    c.corpus_kind = CorpusKind::counts;
    if (!corp["counts"].is_object()) invalid("corpus.counts must map orders to count-TSV paths");
    for (const auto& [key, value] : corp["counts"].items()) {
      std::size_t order = 0;
      const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), order);
      if (ec != std::errc{} || ptr != key.data() + key.size() || order < 1 || order > corpus::kMaxOrder) {
        invalid("corpus.counts key '" + key + "' is not an order in 1..5");
      }
      if (!value.is_string()) invalid("corpus.counts['" + key + "'] must be a path");
      c.count_paths[order] = resolve(value.get<std::string>(), base_dir);
    }
  }
  if (doc.contains("alternate_unigrams")) {
    c.alternate_unigrams = resolve(get_or<std::string>(doc, "alternate_unigrams", ""), base_dir);
  }
  c.max_context = get_or<std::size_t>(doc, "max_context", c.max_context);
  if (doc.contains("log_base")) {
    const auto& b = doc["log_base"];
    c.log_base = info::parse_log_base(b.is_number() ? std::to_string(b.get<int>()) : get_or<std::string>(doc, "log_base", "e"));
  }
  c.bins = get_or<std::size_t>(doc, "bins", c.bins);
  c.histogram_bins = get_or<std::size_t>(doc, "histogram_bins", c.histogram_bins);
  if (doc.contains("resample")) {
    const auto& r = doc["resample"];
    if (!r.is_object()) invalid("resample must be an object");
    reject_unknown(r, {"size", "seed"}, "resample");
    c.resample_size = get_or<std::size_t>(r, "size", c.resample_size);
    c.seed = get_or<std::uint64_t>(r, "seed", c.seed);
  }
  c.shards = get_or<std::size_t>(doc, "shards", c.shards);
  if (doc.contains("output")) {
    const fs::path out = get_or<std::string>(doc, "output", "run");
    c.output_dir = out.is_absolute() ? out : base_dir / out;
  } else {
    c.output_dir = base_dir / "run";
  }
  if (doc.contains("render")) {
    const auto& r = doc["render"];
    if (!r.is_object()) invalid("render must be an object");
    reject_unknown(r, {"width", "height", "size_exponent", "max_words"}, "render");
    c.cloud_width = get_or<double>(r, "width", c.cloud_width);
    c.cloud_height = get_or<double>(r, "height", c.cloud_height);
    c.size_exponent = get_or<double>(r, "size_exponent", c.size_exponent);
    c.cloud_max_words = get_or<std::size_t>(r, "max_words", c.cloud_max_words);
  }
  return c;
}

RunConfig load_config(const fs::path& path) {
  if (!fs::is_regular_file(path)) invalid("config file '" + path.string() + "' does not exist");
  json doc;
  try {
    doc = json::parse(read_text(path));
  } catch (const json::exception& e) {
    invalid("config '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return parse_config(doc, fs::absolute(path).lexically_normal().parent_path());
}

json to_json(const RunConfig& c) {
  json doc;
  doc["lexicon"] = {{"path", c.lexicon_path.string()},
                    {"scale", {{"min", c.scale.min_raw()}, {"max", c.scale.max_raw()}}},
                    {"language", c.language}};
  if (c.corpus_kind == CorpusKind::raw) {
    doc["corpus"] = {{"raw", c.raw_corpus.string()}};
  } else {
    json counts = json::object();
    for (const auto& [n, p] : c.count_paths) counts[std::to_string(n)] = p.string();
    doc["corpus"] = {{"counts", counts}};
  }
  if (c.alternate_unigrams) doc["alternate_unigrams"] = c.alternate_unigrams->string();
  doc["max_context"] = c.max_context;
  doc["log_base"] = std::string(info::to_string(c.log_base));
  doc["bins"] = c.bins;
  doc["histogram_bins"] = c.histogram_bins;
  doc["resample"] = {{"size", c.resample_size}, {"seed", c.seed}};
  doc["shards"] = c.shards;
  doc["output"] = c.output_dir.string();
  doc["render"] = {{"width", c.cloud_width},
                   {"height", c.cloud_height},
                   {"size_exponent", c.size_exponent},
                   {"max_words", c.cloud_max_words}};
  return doc;
}

std::string config_hash(const RunConfig& config) {
  // Shard count does not change any output, so it stays out of the hash.
  auto doc = to_json(config);
  doc.erase("shards");
  return hex64(fnv1a(doc.dump()));
}

void validate(const RunConfig& c) {
  if (!fs::is_regular_file(c.lexicon_path)) invalid("lexicon file '" + c.lexicon_path.string() + "' does not exist");
  if (c.max_context < 1 || c.max_context > 4) invalid("max_context must be 1..4");
  if (c.corpus_kind == CorpusKind::raw) {
    if (c.raw_corpus.empty() || !fs::exists(c.raw_corpus)) {
      invalid("raw corpus '" + c.raw_corpus.string() + "' does not exist");
    }
  } else {
    std::vector<std::size_t> missing;
    for (std::size_t n = 1; n <= c.max_context; ++n) {
      if (!c.count_paths.count(n)) missing.push_back(n);
    }
    if (!missing.empty()) {
      std::string msg = "context size " + std::to_string(c.max_context) + " needs count tables for order";
      msg += missing.size() > 1 ? "s" : "";
      for (std::size_t i = 0; i < missing.size(); ++i) msg += (i ? ", " : " ") + std::to_string(missing[i]);
      invalid(msg + " (missing " + std::to_string(missing.front()) + "-gram table)");
    }
    for (const auto& [n, p] : c.count_paths) {
      if (!fs::is_regular_file(p)) invalid(std::to_string(n) + "-gram table '" + p.string() + "' does not exist");
    }
  }
  if (c.alternate_unigrams && !fs::is_regular_file(*c.alternate_unigrams)) {
    invalid("alternate unigram table '" + c.alternate_unigrams->string() + "' does not exist");
  }
  if (c.bins < 1) invalid("bins must be at least 1");
  if (c.histogram_bins < 2) invalid("histogram_bins must be at least 2");
  if (c.resample_size < stats::kMinResampleSize) {
    invalid("resample.size must be at least " + std::to_string(stats::kMinResampleSize));
  }
  if (c.shards < 1) invalid("shards must be at least 1");
  if (c.output_dir.empty()) invalid("output directory is empty");
  if (!(c.cloud_width > 0.0 && c.cloud_height > 0.0)) invalid("render width and height must be positive");
  if (!(c.size_exponent > 0.0)) invalid("render.size_exponent must be positive");
  if (c.cloud_max_words < 1) invalid("render.max_words must be at least 1");
}

void write_atomic(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::io, "cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::io, "write to '" + tmp.string() + "' failed");
  }
  fs::rename(tmp, path);
}

int exit_code_for(const std::exception& error) noexcept {
  if (const auto* e = dynamic_cast<const Error*>(&error); e != nullptr && e->code() == ErrorCode::validation) {
    return 2;
  }
  return 1;
}

std::vector<fs::path> run_count(const CountOptions& o) {
  if (o.inputs.empty()) invalid("count needs at least one input path");
  for (const auto& p : o.inputs) {
    if (!fs::exists(p)) invalid("input '" + p.string() + "' does not exist");
  }
  if (o.max_order < 1 || o.max_order > corpus::kMaxOrder) invalid("max order must be 1..5");
  if (o.shards < 1) invalid("shards must be at least 1");
  if (o.output_dir.empty()) invalid("output directory is required");
  if (o.lexicon_path && !fs::is_regular_file(*o.lexicon_path)) {
    invalid("lexicon file '" + o.lexicon_path->string() + "' does not exist");
  }
  if (o.lexicon_path && !o.scale) invalid("a lexicon needs an explicit valence scale");

  std::vector<fs::path> documents;
  for (const auto& p : o.inputs) {
    auto listed = corpus::list_documents(p);
    documents.insert(documents.end(), listed.begin(), listed.end());
  }
  corpus::CorpusStats stats;
  const auto tables = corpus::count_documents(documents, o.max_order, o.shards, &stats);

  std::vector<std::pair<fs::path, std::string>> outputs;
  json orders = json::object();
  for (std::size_t n = 1; n <= o.max_order; ++n) {
    std::ostringstream tsv;
    corpus::write_count_table(tsv, tables.order(n));
    outputs.emplace_back(o.output_dir / ("counts_" + std::to_string(n) + ".tsv"), std::move(tsv).str());
    orders[std::to_string(n)] = {{"types", tables.order(n).size()}, {"total", tables.order(n).total()}};
  }
  json diag = {{"documents", stats.documents},
               {"tokens_seen", stats.tokenizer.tokens},
               {"replacements", stats.tokenizer.replacements},
               {"orders", orders}};
  if (o.lexicon_path) {
    const auto lexicon = load_lexicon(o.lexicon_path->string(), *o.scale, "lexicon");
    std::vector<std::string> missing;
    for (const auto& e : lexicon.entries()) {
      if (tables.order(1).count(e.word) == 0) missing.push_back(e.word);
    }
    const auto found = lexicon.size() - missing.size();
    diag["lexicon_coverage"] = {
        {"entries", lexicon.size()},
        {"found", found},
        {"coverage", lexicon.empty() ? 0.0 : static_cast<double>(found) / static_cast<double>(lexicon.size())},
        {"missing", missing}};
  }
  outputs.emplace_back(o.output_dir / "diagnostics.json", dump(diag));

  std::vector<fs::path> files;
  for (const auto& [p, _] : outputs) files.push_back(p);
  json cfg = {{"max_order", o.max_order}};
  std::vector<std::string> inputs;
  for (const auto& p : o.inputs) inputs.push_back(p.string());
  cfg["inputs"] = inputs;
  const fs::path manifest_path = o.output_dir / "manifest.json";
  files.push_back(manifest_path);
  outputs.emplace_back(manifest_path, dump(manifest("count", hex64(fnv1a(cfg.dump())), std::nullopt, files,
                                                    {{"shards", o.shards}})));
  for (const auto& [p, content] : outputs) write_atomic(p, content);
  return files;
}

fs::path run_import(const ImportOptions& o) {
  if (o.inputs.empty()) invalid("import-ngrams needs at least one input file");
  for (const auto& p : o.inputs) {
    if (!fs::is_regular_file(p)) invalid("input '" + p.string() + "' does not exist");
  }
  if (o.order < 1 || o.order > corpus::kMaxOrder) invalid("order must be 1..5");
  if (o.output.empty()) invalid("output path is required");
  std::vector<corpus::CountTable> parts;
  for (const auto& p : o.inputs) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error(ErrorCode::io, "cannot open '" + p.string() + "'");
    parts.push_back(corpus::import_ngrams(in, o.order, o.format, o.strip_pos_tags));
  }
  std::ostringstream tsv;
  corpus::write_count_table(tsv, corpus::merge(parts));
  write_atomic(o.output, std::move(tsv).str());
  return o.output;
}

AnalysisResult analyze(const RunConfig& c) {
  validate(c);
  AnalysisResult out;
  const auto lexicon = load_lexicon(c.lexicon_path.string(), c.scale, c.language);
  if (lexicon.empty()) throw Error(ErrorCode::empty_input, "lexicon '" + c.lexicon_path.string() + "' is empty");
  corpus::CorpusStats corpus_stats;
  const auto tables = load_tables(c, &corpus_stats);

  out.scoring = info::score_lexicon(lexicon, tables, {c.log_base, c.max_context});
  const auto& scores = out.scoring.scores;
  if (scores.size() < stats::kMinJoinedRecords) {
    throw Error(ErrorCode::insufficient_data, "only " + std::to_string(scores.size()) +
                                                  " lexicon words occur in the corpus; at least " +
                                                  std::to_string(stats::kMinJoinedRecords) + " are needed");
  }

  std::optional<corpus::CountTable> alternate;
  if (c.alternate_unigrams) alternate = corpus::load_count_table(*c.alternate_unigrams, 1);

  std::vector<stats::JoinedRecord> records;
  for (const auto& s : scores) {
    stats::JoinedRecord r;
    r.word = s.word;
    r.valence = s.valence;
    r.length = s.length;
    r.frequency = s.frequency_per_million;
    r.self_info = s.self_info;
    r.context_info = s.context_info;
    if (alternate && alternate->total() > 0) {
      if (const auto count = alternate->count(s.word); count > 0) {
        r.alt_self_info = info::self_information(
            static_cast<double>(count) / static_cast<double>(alternate->total()), c.log_base);
      }
    }
    records.push_back(std::move(r));
  }
  out.table = stats::correlation_table(records);
  out.lexicon = lexicon_summary(lexicon);

  std::vector<double> lexicon_values;
  for (const auto& e : lexicon.entries()) lexicon_values.push_back(e.valence);
  std::vector<double> values, weights, self_info;
  std::vector<std::string> words;
  for (const auto& s : scores) {
    values.push_back(s.valence);
    weights.push_back(static_cast<double>(s.occurrences));
    self_info.push_back(s.self_info);
    words.push_back(s.word);
  }
  const auto unweighted = stats::WeightedDistribution::unit(lexicon_values);
  const stats::WeightedDistribution weighted(values, weights);
  out.weighted_mean = stats::weighted_mean(weighted);
  out.weighted_median = stats::weighted_median(weighted);
  out.shift = stats::weighted_shift_test(weighted, c.resample_size, c.seed);

  // Statistics report.
  json statistics = json::object();
  for (const auto& s : out.table.statistics) {
    auto entry = correlation_json(s.result, s.stars);
    entry["table"] = s.table;
    if (s.spearman) entry["spearman"] = correlation_json(*s.spearman, s.spearman_stars);
    statistics[s.name] = std::move(entry);
  }
  statistics["wilcoxon_shift"] = shift_json(out.shift, c.resample_size, c.seed);
  out.statistics = {{"statistics", statistics},
                    {"log_base", std::string(info::to_string(c.log_base))},
                    {"records", records.size()}};

  // Distributions and information bins.
  const auto panel = [&](const stats::WeightedDistribution& d, bool with_weights) {
    json p = {{"mean", stats::weighted_mean(d)},
              {"median", stats::weighted_median(d)},
              {"histogram", stats::histogram(d, c.histogram_bins)},
              {"values", std::vector<double>(d.values().begin(), d.values().end())}};
    if (with_weights) p["weights"] = std::vector<double>(d.weights().begin(), d.weights().end());
    try {
      p["pos_neg_ratio"] = stats::pos_neg_ratio(d);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::undefined_ratio) throw;
      p["pos_neg_ratio"] = nullptr;
    }
    return p;
  };
  json bins = json::object();
  {
    const auto rows = info::bin_by_information(self_info, values, c.bins);
    json list = json::array();
    for (const auto& b : rows) list.push_back(bin_json(b, words));
    bins["I"] = std::move(list);
  }
  for (std::size_t k = 0; k + 2 <= c.max_context; ++k) {
    std::vector<double> ctx, ctx_values;
    std::vector<std::string> ctx_words;
    for (const auto& s : scores) {
      if (!s.context_info[k]) continue;
      ctx.push_back(*s.context_info[k]);
      ctx_values.push_back(s.valence);
      ctx_words.push_back(s.word);
    }
    const auto rows = info::bin_by_information(ctx, ctx_values, c.bins);
    json list = json::array();
    for (const auto& b : rows) list.push_back(bin_json(b, ctx_words));
    bins[kContextLabels[k]] = std::move(list);
  }
  out.distribution = {{"lexicon", {{"count", out.lexicon.count}, {"mean", out.lexicon.mean}, {"median", out.lexicon.median}}},
                      {"unweighted", panel(unweighted, false)},
                      {"weighted", panel(weighted, true)},
                      {"histogram_bins", c.histogram_bins},
                      {"shift_test", shift_json(out.shift, c.resample_size, c.seed)},
                      {"information_bins", std::move(bins)}};

  // Diagnostics.
  json pairs = json::object();
  json integrity = json::object();
  for (std::size_t k = 0; k + 2 <= c.max_context; ++k) {
    pairs[kContextLabels[k]] = out.scoring.context_pairs[k];
    if (const auto& ig = out.scoring.integrity[k]) {
      integrity[kContextLabels[k]] = {{"contexts_checked", ig->contexts_checked},
                                      {"contexts_discrepant", ig->contexts_discrepant},
                                      {"worst_discrepancy", ig->worst_discrepancy},
                                      {"tolerance", info::kIntegrityTolerance}};
    }
  }
  out.diagnostics = {{"lexicon_entries", lexicon.size()},
                     {"scored", scores.size()},
                     {"missing", out.scoring.missing},
                     {"coverage", static_cast<double>(scores.size()) / static_cast<double>(lexicon.size())},
                     {"context_pairs", pairs},
                     {"integrity", integrity}};
  if (c.corpus_kind == CorpusKind::raw) {
    out.diagnostics["corpus"] = {{"documents", corpus_stats.documents},
                                 {"tokens_seen", corpus_stats.tokenizer.tokens},
                                 {"replacements", corpus_stats.tokenizer.replacements}};
  }
  return out;
}

AnalysisResult run_analyze(const RunConfig& c) {
  auto out = analyze(c);
  const auto& dir = c.output_dir;
  std::vector<std::pair<fs::path, std::string>> outputs = {
      {dir / "scores.csv", scores_csv(out.scoring)},
      {dir / "statistics.json", dump(out.statistics)},
      {dir / "distribution.json", dump(out.distribution)},
      {dir / "diagnostics.json", dump(out.diagnostics)},
      {dir / "table_information.csv", table_csv(out.table, "information")},
      {dir / "table_additional.csv", table_csv(out.table, "additional")},
      {dir / "table_partial.csv", table_csv(out.table, "partial")},
  };
  for (const auto& [p, _] : outputs) out.files.push_back(p);
  out.files.push_back(dir / "manifest.json");
  json extra = {{"config", to_json(c)}};
  extra["config"].erase("shards");
  outputs.emplace_back(dir / "manifest.json", dump(manifest("analyze", config_hash(c), c.seed, out.files, extra)));
  for (const auto& [p, content] : outputs) write_atomic(p, content);
  return out;
}

FigureKind parse_figure(const std::string& name) {
  if (name == "cloud") return FigureKind::cloud;
  if (name == "histogram") return FigureKind::histogram;
  if (name == "bins") return FigureKind::bins;
  invalid("unknown figure '" + name + "' (expected cloud, histogram or bins)");
}

std::vector<fs::path> run_render(const RunConfig& c, FigureKind figure) {
  const auto& dir = c.output_dir;
  const fs::path distribution_path = dir / "distribution.json";
  const fs::path scores_path = dir / "scores.csv";
  if (!fs::is_regular_file(distribution_path) || !fs::is_regular_file(scores_path)) {
    invalid("no analyze outputs in '" + dir.string() + "'; run analyze first");
  }

  std::string name;
  report::Figure fig;
  if (figure == FigureKind::cloud) {
    name = "cloud";
    std::istringstream in(read_text(scores_path));
    std::string line;
    std::getline(in, line);  // header
    std::vector<report::CloudEntry> entries;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      std::vector<std::string> fields;
      std::stringstream ss(line);
      std::string f;
      while (std::getline(ss, f, ',')) fields.push_back(f);
      if (fields.size() < 3) throw Error(ErrorCode::parse, "malformed scores.csv row", line_no);
      try {
        entries.push_back({fields[0], std::stod(fields[2]), std::stod(fields[1])});
      } catch (const std::exception&) {
        throw Error(ErrorCode::parse, "non-numeric field in scores.csv", line_no);
      }
    }
    std::stable_sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
      if (a.frequency != b.frequency) return a.frequency > b.frequency;
      return a.word < b.word;
    });
    if (entries.size() > c.cloud_max_words) entries.resize(c.cloud_max_words);
    report::CloudOptions options;
    options.size_exponent = c.size_exponent;
    const auto cloud = report::wordcloud(entries, {c.cloud_width, c.cloud_height}, c.seed, options);
    fig.svg = cloud.svg;
    fig.data = cloud.geometry();
  } else {
    const auto doc = read_json(distribution_path);
    try {
      if (figure == FigureKind::histogram) {
        name = "histogram";
        const auto unweighted =
            stats::WeightedDistribution::unit(doc.at("unweighted").at("values").get<std::vector<double>>());
        const stats::WeightedDistribution weighted(doc.at("weighted").at("values").get<std::vector<double>>(),
                                                   doc.at("weighted").at("weights").get<std::vector<double>>());
        fig = report::histogram_figure(unweighted, weighted, doc.at("histogram_bins").get<std::size_t>());
      } else {
        name = "bins";
        std::vector<report::BinRow> rows;
        for (const char* label : {"I", "I2", "I3", "I4"}) {
          if (!doc.at("information_bins").contains(label)) continue;
          report::BinRow row{label, {}};
          for (const auto& b : doc["information_bins"][label]) {
            info::InfoBin bin;
            bin.mean_info = b.at("mean_info").get<double>();
            bin.mean_valence = b.at("mean_valence").get<double>();
            bin.valence_stderr = b.at("valence_stderr").get<double>();
            bin.min_info = b.at("min_info").get<double>();
            bin.max_info = b.at("max_info").get<double>();
            bin.members.resize(b.at("words").size());
            for (std::size_t i = 0; i < bin.members.size(); ++i) bin.members[i] = i;
            row.bins.push_back(std::move(bin));
          }
          rows.push_back(std::move(row));
        }
        fig = report::info_bins_figure(rows);
      }
    } catch (const json::exception& e) {
      throw Error(ErrorCode::parse, "distribution.json is missing fields: " + std::string(e.what()));
    }
  }

  const fs::path svg_path = dir / ("figure_" + name + ".svg");
  const fs::path json_path = dir / ("figure_" + name + ".json");
  const fs::path manifest_path = dir / ("manifest_" + name + ".json");
  std::vector<fs::path> files = {svg_path, json_path, manifest_path};
  write_atomic(svg_path, fig.svg);
  write_atomic(json_path, dump(fig.data));
  write_atomic(manifest_path, dump(manifest("render " + name, config_hash(c), c.seed, files)));
  return files;
}

}  // namespace affectinfo::pipeline
