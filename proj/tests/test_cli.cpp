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

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "affectinfo/corpus.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kFixture = fs::path(AFFECTINFO_FIXTURES) / "synthetic";

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string quote(const std::string& s) { return "'" + s + "'"; }

Run run(const std::string& args, const oracle::TempDir& scratch) {
  const auto err_path = scratch.path / "stderr.txt";
  const std::string cmd = quote(AFFECTINFO_CLI) + " " + args + " 2>" + quote(err_path.string());
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = slurp(err_path);
  return r;
}

void write_config(const fs::path& path, const fs::path& out) {
  std::ofstream(path) << R"({"lexicon": {"path": ")" << (kFixture / "lexicon.csv").string()
                      << R"(", "scale": "sam9"}, "corpus": {"raw": ")" << (kFixture / "corpus").string()
                      << R"("}, "resample": {"size": 10000, "seed": 1}, "output": ")" << out.string() << "\"}";
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) files[fs::relative(e.path(), dir).string()] = slurp(e.path());
  }
  return files;
}

}  // namespace

TEST_CASE("count produces tables that reload identically") {
  oracle::TempDir tmp("cli-count");
  fs::create_directories(tmp.path / "docs");
  std::ofstream(tmp.path / "docs" / "one.txt") << "Fluffy bunnies are violent. Don't stop!";
  std::ofstream(tmp.path / "docs" / "two.txt") << "\xC3\x9C" "ber alles, bunnies.";
  const auto r = run("count --input " + quote((tmp.path / "docs").string()) + " --max-order 3 --output " +
                         quote((tmp.path / "out").string()),
                     tmp);
  REQUIRE(r.code == 0);
  CHECK(r.out.find("counts_1.tsv") != std::string::npos);
  const auto tables = affectinfo::corpus::count_texts(
      std::vector<std::string>{slurp(tmp.path / "docs" / "one.txt"), slurp(tmp.path / "docs" / "two.txt")}, 3, 1);
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto loaded =
        affectinfo::corpus::load_count_table(tmp.path / "out" / ("counts_" + std::to_string(n) + ".tsv"), n);
    CHECK(loaded == tables.order(n));
  }
  CHECK(fs::is_regular_file(tmp.path / "out" / "diagnostics.json"));
  CHECK(fs::is_regular_file(tmp.path / "out" / "manifest.json"));
}

TEST_CASE("count on a missing directory exits 2 without output") {
  oracle::TempDir tmp("cli-missing");
  const auto r =
      run("count --input " + quote((tmp.path / "nope").string()) + " --output " + quote((tmp.path / "out").string()),
          tmp);
  CHECK(r.code == 2);
  CHECK(r.err.find("does not exist") != std::string::npos);
  CHECK_FALSE(fs::exists(tmp.path / "out"));
}

TEST_CASE("sharded count output equals the unsharded output") {
  oracle::TempDir tmp("cli-shards");
  const auto base = run("count --input " + quote((kFixture / "corpus").string()) + " --output " +
                            quote((tmp.path / "s1").string()),
                        tmp);
  REQUIRE(base.code == 0);
  const auto sharded = run("count --shards 4 --input " + quote((kFixture / "corpus").string()) + " --output " +
                               quote((tmp.path / "s4").string()),
                           tmp);
  REQUIRE(sharded.code == 0);
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto name = "counts_" + std::to_string(n) + ".tsv";
    CHECK(slurp(tmp.path / "s1" / name) == slurp(tmp.path / "s4" / name));
  }
  CHECK(slurp(tmp.path / "s1" / "diagnostics.json") == slurp(tmp.path / "s4" / "diagnostics.json"));
}

TEST_CASE("analyze twice gives identical bytes and does not touch inputs") {
  oracle::TempDir tmp("cli-analyze");
  write_config(tmp.path / "config.json", tmp.path / "run");
  const auto inputs = snapshot(kFixture / "corpus");
  const auto first = run("analyze --config " + quote((tmp.path / "config.json").string()), tmp);
  REQUIRE(first.code == 0);
  const auto a = snapshot(tmp.path / "run");
  const auto second = run("analyze --config " + quote((tmp.path / "config.json").string()), tmp);
  REQUIRE(second.code == 0);
  CHECK(a == snapshot(tmp.path / "run"));
  CHECK(first.out == second.out);
  CHECK(inputs == snapshot(kFixture / "corpus"));
  const auto stats = nlohmann::json::parse(a.at("statistics.json"));
  CHECK(stats["statistics"]["rho(v,I)"]["coefficient"].get<double>() < 0.0);
}

TEST_CASE("flags override the config") {
  oracle::TempDir tmp("cli-flags");
  write_config(tmp.path / "config.json", tmp.path / "run");
  const auto r = run("analyze --config " + quote((tmp.path / "config.json").string()) + " --output " +
                         quote((tmp.path / "other").string()) + " --seed 5 --max-context 2",
                     tmp);
  REQUIRE(r.code == 0);
  CHECK_FALSE(fs::exists(tmp.path / "run"));
  const auto manifest = nlohmann::json::parse(slurp(tmp.path / "other" / "manifest.json"));
  CHECK(manifest["seed"] == 5);
  CHECK(slurp(tmp.path / "other" / "scores.csv").find(",,\n") != std::string::npos);
}

TEST_CASE("render lists its files and respects the figure name") {
  oracle::TempDir tmp("cli-render");
  write_config(tmp.path / "config.json", tmp.path / "run");
  const auto cfg = quote((tmp.path / "config.json").string());
  REQUIRE(run("analyze --config " + cfg, tmp).code == 0);
  for (const char* figure : {"cloud", "histogram", "bins"}) {
    const auto r = run("render --config " + cfg + " --figure " + figure, tmp);
    REQUIRE(r.code == 0);
    const auto svg_path = tmp.path / "run" / (std::string("figure_") + figure + ".svg");
    CHECK(r.out.find(svg_path.filename().string()) != std::string::npos);
    const auto svg = slurp(svg_path);
    CHECK(oracle::well_formed_xml(svg));
    REQUIRE(run("render --config " + cfg + " --figure " + figure, tmp).code == 0);
    CHECK(slurp(svg_path) == svg);
  }
  const auto bad = run("render --config " + cfg + " --figure pie", tmp);
  CHECK(bad.code == 2);
  CHECK(bad.err.find("pie") != std::string::npos);
}

TEST_CASE("usage and validation errors exit 2") {
  oracle::TempDir tmp("cli-usage");
  CHECK(run("", tmp).code == 2);
  CHECK(run("frobnicate", tmp).code == 2);
  CHECK(run("analyze", tmp).code == 2);
  CHECK(run("analyze --config " + quote((tmp.path / "none.json").string()), tmp).code == 2);
  std::ofstream(tmp.path / "broken.json") << "{not json";
  CHECK(run("validate --config " + quote((tmp.path / "broken.json").string()), tmp).code == 2);
  CHECK(run("--help", tmp).code == 0);

  write_config(tmp.path / "config.json", tmp.path / "run");
  const auto ok = run("validate --config " + quote((tmp.path / "config.json").string()), tmp);
  CHECK(ok.code == 0);
  CHECK(ok.out.find("config ok") != std::string::npos);
  CHECK(run("validate --config " + quote((tmp.path / "config.json").string()) + " --log-base 10", tmp).code == 2);
}

TEST_CASE("data errors exit 1") {
  oracle::TempDir tmp("cli-data");
  std::ofstream(tmp.path / "lexicon.csv") << "word,valence\nhappy,8\nsad,oops\n";
  fs::create_directories(tmp.path / "corpus");
  std::ofstream(tmp.path / "corpus" / "a.txt") << "happy sad";
  std::ofstream(tmp.path / "config.json")
      << R"({"lexicon": {"path": "lexicon.csv", "scale": "sam9"}, "corpus": {"raw": "corpus"}})";
  const auto r = run("analyze --config " + quote((tmp.path / "config.json").string()), tmp);
  CHECK(r.code == 1);
  CHECK(r.err.find("line 3") != std::string::npos);
  CHECK_FALSE(fs::exists(tmp.path / "run"));
}

TEST_CASE("import-ngrams writes a canonical table") {
  oracle::TempDir tmp("cli-import");
  std::ofstream(tmp.path / "export.tsv") << "Party_NOUN\t2000\t7\t3\nparty\t2001\t3\t1\n";
  const auto r = run("import-ngrams --input " + quote((tmp.path / "export.tsv").string()) +
                         " --order 1 --strip-pos --output " + quote((tmp.path / "counts_1.tsv").string()),
                     tmp);
  REQUIRE(r.code == 0);
  CHECK(slurp(tmp.path / "counts_1.tsv") == "party\t10\n");
  const auto bad = run("import-ngrams --input " + quote((tmp.path / "export.tsv").string()) +
                           " --order 1 --format weird --output " + quote((tmp.path / "x.tsv").string()),
                       tmp);
  CHECK(bad.code == 2);
}
