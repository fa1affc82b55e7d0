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

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "affectinfo/error.hpp"
#include "affectinfo/pipeline.hpp"

namespace {

namespace fs = std::filesystem;
namespace pl = affectinfo::pipeline;

affectinfo::ValenceScale parse_scale(const std::string& text) {
  if (const auto colon = text.find(':'); colon != std::string::npos) {
    try {
      return affectinfo::ValenceScale(std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1)));
    } catch (const std::invalid_argument&) {
    } catch (const std::out_of_range&) {
    }
    throw affectinfo::Error(affectinfo::ErrorCode::validation, "scale '" + text + "' is not MIN:MAX");
  }
  return affectinfo::ValenceScale::preset(text);
}

affectinfo::corpus::NgramFormat parse_format(const std::string& text) {
  using affectinfo::corpus::NgramFormat;
  if (text == "auto") return NgramFormat::automatic;
  if (text == "counts") return NgramFormat::counts;
  if (text == "books") return NgramFormat::books;
  throw affectinfo::Error(affectinfo::ErrorCode::validation, "unknown n-gram format '" + text + "'");
}

struct Overrides {
  std::optional<std::string> output;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> shards;
  std::optional<std::size_t> max_context;
  std::optional<std::string> log_base;
  std::optional<std::size_t> bins;
  std::optional<std::size_t> resample_size;

  void attach(CLI::App& cmd) {
    cmd.add_option("--output", output, "Run directory (overrides config)");
    cmd.add_option("--seed", seed, "Random seed (overrides config)");
    cmd.add_option("--shards", shards, "Counting threads (overrides config)");
    cmd.add_option("--max-context", max_context, "Largest n-gram order for context information");
    cmd.add_option("--log-base", log_base, "Logarithm base: e or 2");
    cmd.add_option("--bins", bins, "Number of information bins");
    cmd.add_option("--resample-size", resample_size, "Weighted resample size for the shift test");
  }

  void apply(pl::RunConfig& c) const {
    if (output) c.output_dir = *output;
    if (seed) c.seed = *seed;
    if (shards) c.shards = *shards;
    if (max_context) c.max_context = *max_context;
    if (log_base) c.log_base = affectinfo::info::parse_log_base(*log_base);
    if (bins) c.bins = *bins;
    if (resample_size) c.resample_size = *resample_size;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Affective information content of words"};
  app.require_subcommand(1);

  std::vector<std::string> inputs;
  std::size_t max_order = 5;
  std::size_t shards = 1;
  std::string output;
  std::optional<std::string> lexicon;
  std::optional<std::string> scale;
  auto* count = app.add_subcommand("count", "Count 1..N-grams of a raw text corpus");
  count->add_option("--input", inputs, "Input file or directory (repeatable)")->required();
  count->add_option("--max-order", max_order, "Largest n-gram order (1..5)");
  count->add_option("--shards", shards, "Counting threads");
  count->add_option("--output", output, "Output directory")->required();
  count->add_option("--lexicon", lexicon, "Lexicon for the coverage report");
  count->add_option("--scale", scale, "Lexicon scale: sam9, bipolar3 or MIN:MAX");

  std::vector<std::string> import_inputs;
  std::size_t order = 1;
  std::string format = "auto";
  bool strip_pos = false;
  std::string import_output;
  auto* import = app.add_subcommand("import-ngrams", "Convert public n-gram exports to a count table");
  import->add_option("--input", import_inputs, "N-gram export file (repeatable)")->required();
  import->add_option("--order", order, "N-gram order")->required();
  import->add_option("--format", format, "auto, counts or books");
  import->add_flag("--strip-pos", strip_pos, "Drop part-of-speech suffixes such as _NOUN");
  import->add_option("--output", import_output, "Output count table")->required();

  std::string config_path;
  Overrides analyze_overrides;
  auto* analyze = app.add_subcommand("analyze", "Score a lexicon and compute all statistics");
  analyze->add_option("--config", config_path, "Run configuration (JSON)")->required();
  analyze_overrides.attach(*analyze);

  std::string figure;
  Overrides render_overrides;
  auto* render = app.add_subcommand("render", "Render a figure from analyze outputs");
  render->add_option("--config", config_path, "Run configuration (JSON)")->required();
  render->add_option("--figure", figure, "cloud, histogram or bins")->required();
  render_overrides.attach(*render);

  Overrides validate_overrides;
  auto* validate = app.add_subcommand("validate", "Check a configuration without running it");
  validate->add_option("--config", config_path, "Run configuration (JSON)")->required();
  validate_overrides.attach(*validate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*count) {
      pl::CountOptions o;
      o.inputs.assign(inputs.begin(), inputs.end());
      o.max_order = max_order;
      o.shards = shards;
      o.output_dir = output;
      if (lexicon) o.lexicon_path = *lexicon;
      if (scale) o.scale = parse_scale(*scale);
      for (const auto& f : pl::run_count(o)) std::cout << f.string() << '\n';
    } else if (*import) {
      pl::ImportOptions o;
      o.inputs.assign(import_inputs.begin(), import_inputs.end());
      o.order = order;
      o.format = parse_format(format);
      o.strip_pos_tags = strip_pos;
      o.output = import_output;
      std::cout << pl::run_import(o).string() << '\n';
    } else if (*analyze) {
      auto c = pl::load_config(config_path);
      analyze_overrides.apply(c);
      for (const auto& f : pl::run_analyze(c).files) std::cout << f.string() << '\n';
    } else if (*render) {
      const auto kind = pl::parse_figure(figure);
      auto c = pl::load_config(config_path);
      render_overrides.apply(c);
      for (const auto& f : pl::run_render(c, kind)) std::cout << f.string() << '\n';
    } else if (*validate) {
      auto c = pl::load_config(config_path);
      validate_overrides.apply(c);
      pl::validate(c);
      std::cout << "config ok (hash " << pl::config_hash(c) << ")\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "affectinfo: error: " << e.what() << '\n';
    return pl::exit_code_for(e);
  }
  return 0;
}
