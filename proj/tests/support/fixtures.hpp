#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "codelm/corpus.hpp"

namespace codelm::fixtures {

inline std::filesystem::path data_dir() { return CODELM_DATA_DIR; }

inline std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::vector<std::string> lines;
  std::string text = read_text_file(path);
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    lines.push_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  return lines;
}

inline std::vector<std::string> texts(const TokenStream& s) {
  std::vector<std::string> out;
  for (const auto& t : s.tokens) out.push_back(t.text);
  return out;
}

inline TokenStream stream_of(std::vector<std::string> words, std::string project = "p", std::string file = "f") {
  TokenStream s{std::move(project), std::move(file), {}};
  for (auto& w : words) s.tokens.push_back({std::move(w), TokenKind::kIdentifier});
  return s;
}

// Scratch directory removed when the test ends.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = std::filesystem::temp_directory_path() /
            ("codelm-" + tag + "-" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace codelm::fixtures
