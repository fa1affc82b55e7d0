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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "affectinfo/pipeline.hpp"
#include "affectinfo/synthetic.hpp"

int main(int argc, char** argv) {
  namespace fs = std::filesystem;
  namespace syn = affectinfo::synthetic;

  CLI::App app{"Write a synthetic lexicon, corpus and run configuration"};
  std::string output;
  std::size_t words = 50;
  syn::CorpusOptions options;
  app.add_option("--output", output, "Output directory")->required();
  app.add_option("--words", words, "Lexicon size");
  app.add_option("--documents", options.documents, "Number of documents");
  app.add_option("--tokens", options.tokens_per_document, "Tokens per document");
  app.add_option("--seed", options.seed, "Corpus seed");
  app.add_option("--slope", options.valence_slope, "Log-weight slope over valence");
  CLI11_PARSE(app, argc, argv);

  try {
    const fs::path dir = output;
    std::ostringstream lex;
    syn::write_lexicon(lex, words);
    affectinfo::pipeline::write_atomic(dir / "lexicon.csv", lex.str());

    std::istringstream in(lex.str());
    const auto lexicon = affectinfo::parse_lexicon(in, affectinfo::ValenceScale::sam9(), "synthetic");
    const auto docs = syn::make_corpus(lexicon, options);
    for (std::size_t i = 0; i < docs.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof name, "doc_%05zu.txt", i);
      affectinfo::pipeline::write_atomic(dir / "corpus" / name, docs[i]);
    }
    const nlohmann::json config = {{"lexicon", {{"path", "lexicon.csv"}, {"scale", "sam9"}}},
                                   {"corpus", {{"raw", "corpus"}}},
                                   {"resample", {{"size", 10000}, {"seed", 1}}},
                                   {"output", "run"}};
    affectinfo::pipeline::write_atomic(dir / "config.json", config.dump(2) + "\n");
  } catch (const std::exception& e) {
    std::cerr << "affectinfo-synth: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
