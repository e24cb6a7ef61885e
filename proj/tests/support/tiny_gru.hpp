#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "codelm/gru_model.hpp"
#include "support/fixtures.hpp"

namespace codelm::fixtures {

// The committed V=5, E=H=3 model and the values an independent numpy forward
// pass produced for it (data/fixtures/tiny_gru.py).
struct TinyGru {
  GruModel<double> model;
  std::vector<int> sequence;
  std::vector<std::vector<double>> distributions;
  std::vector<double> bits;
};

inline TinyGru load_tiny_gru() {
  std::ifstream in(data_dir() / "fixtures" / "tiny_gru.txt");
  std::map<std::string, std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    double v;
    while (ls >> v) rows[key].push_back(v);
  }
  TinyGru t;
  const auto& dims = rows.at("dims");
  t.model = zero_model<double>({static_cast<std::size_t>(dims[0]), static_cast<std::size_t>(dims[1]),
                                static_cast<std::size_t>(dims[2]), 1.0, 8});
  t.model.params.for_each([&](const char* name, std::span<double> block) {
    const auto& values = rows.at(name);
    std::copy(values.begin(), values.end(), block.begin());
  });
  for (double u : rows.at("sequence")) t.sequence.push_back(static_cast<int>(u));
  for (std::size_t i = 0; i < t.sequence.size(); ++i) t.distributions.push_back(rows.at("dist" + std::to_string(i)));
  t.bits = rows.at("bits");
  return t;
}

}  // namespace codelm::fixtures
