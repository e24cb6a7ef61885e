// Copyright 2026 The codelm Authors
// SPDX-License-Identifier: Apache-2.0

// Writes a synthetic C-like corpus as <output>/<project>/<file>.c.

#include <CLI11.hpp>

#include <iostream>

#include "codelm/corpus.hpp"
#include "codelm/synthetic.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Generate a synthetic C-like source corpus"};
  codelm::synthetic::CorpusSpec spec;
  std::string output;
  app.add_option("--output", output, "Output directory")->required();
  app.add_option("--projects", spec.projects, "Number of projects");
  app.add_option("--files", spec.files_per_project, "Files per project");
  app.add_option("--bytes", spec.bytes_per_file, "Approximate bytes per file");
  app.add_option("--repetition", spec.repetition, "Probability of repeating an earlier statement");
  app.add_option("--seed", spec.seed, "Random seed");
  CLI11_PARSE(app, argc, argv);
  for (const auto& f : codelm::synthetic::generate_corpus(spec))
    codelm::write_text_file(std::filesystem::path(output) / f.project_id / (f.file_id + ".c"), f.text);
  return 0;
}
