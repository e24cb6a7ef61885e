// Copyright 2026 The codelm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "codelm/corpus.hpp"
#include "codelm/error.hpp"

namespace codelm {

inline constexpr std::string_view kUnknownChar = "<unk-char>";

inline bool ends_with_marker(std::string_view unit) { return unit.ends_with(kEndOfToken); }

struct MergeTable {
  std::vector<std::pair<std::string, std::string>> merges;
  std::set<char> characters;  // single characters observed while learning
  std::size_t max_ops = 0;

  // characters + end-of-token marker + one unit per merge.
  std::set<std::string> vocabulary() const {
    std::set<std::string> vocab;
    for (char c : characters) vocab.insert(std::string(1, c));
    vocab.insert(std::string(kEndOfToken));
    for (const auto& [left, right] : merges) vocab.insert(left + right);
    return vocab;
  }

  friend bool operator==(const MergeTable&, const MergeTable&) = default;
};

struct SubwordSequence {
  std::vector<std::string> units;
  std::vector<std::size_t> token_boundaries;  // indices of units that end a token
};

namespace detail {

// Greedy left-to-right non-overlapping pair occurrences of one symbol string.
template <typename Fn>
void for_each_pair(std::span<const int> symbols, Fn&& fn) {
  bool prev_counted = false;
  for (std::size_t i = 0; i + 1 < symbols.size(); ++i) {
    const bool overlaps = prev_counted && symbols[i] == symbols[i + 1] && symbols[i - 1] == symbols[i];
    if (overlaps) {
      prev_counted = false;
      continue;
    }
    fn(symbols[i], symbols[i + 1]);
    prev_counted = true;
  }
}

// Replaces left-to-right non-overlapping occurrences of (left, right) by merged.
inline bool merge_pair(std::vector<int>& symbols, int left, int right, int merged) {
  bool changed = false;
  std::size_t out = 0;
  for (std::size_t i = 0; i < symbols.size();) {
    if (i + 1 < symbols.size() && symbols[i] == left && symbols[i + 1] == right) {
      symbols[out++] = merged;
      i += 2;
      changed = true;
    } else {
      symbols[out++] = symbols[i++];
    }
  }
  symbols.resize(out);
  return changed;
}

inline std::uint64_t pair_key(int left, int right) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(left)) << 32) |
         static_cast<std::uint32_t>(right);
}

class MergeLearner {
 public:
  explicit MergeLearner(const std::vector<TokenStream>& corpus) {
    marker_ = intern(std::string(kEndOfToken));
    std::unordered_map<std::string, std::size_t> word_index;
    for (const auto& stream : corpus) {
      for (const auto& token : stream.tokens) {
        auto [it, inserted] = word_index.try_emplace(token.text, words_.size());
        if (inserted) {
          std::vector<int> symbols;
          for (char c : token.text) {
            characters_.insert(c);
            symbols.push_back(intern(std::string(1, c)));
          }
          symbols.push_back(marker_);
          words_.push_back(std::move(symbols));
          freq_.push_back(0);
        }
        ++freq_[it->second];
      }
    }
    for (std::size_t w = 0; w < words_.size(); ++w) add_word(w, +1);
  }

  MergeTable run(std::size_t max_ops) {
    MergeTable table;
    table.max_ops = max_ops;
    table.characters = characters_;
    while (table.merges.size() < max_ops && !ranked_.empty()) {
      const Ranked best = *ranked_.begin();
      if (best.count < 2) break;
      const int left = best.left_id, right = best.right_id;
      const int merged = intern(text_[left] + text_[right]);
      table.merges.emplace_back(text_[left], text_[right]);
      auto where = std::move(where_[pair_key(left, right)]);
      where_.erase(pair_key(left, right));
      std::sort(where.begin(), where.end());
      where.erase(std::unique(where.begin(), where.end()), where.end());
      for (std::size_t w : where) {
        auto copy = words_[w];
        if (!merge_pair(copy, left, right, merged)) continue;
        add_word(w, -1);
        words_[w] = std::move(copy);
        add_word(w, +1);
      }
    }
    return table;
  }

 private:
  struct Ranked {
    std::int64_t count;
    std::string left, right;
    int left_id, right_id;
    bool operator<(const Ranked& o) const {
      if (count != o.count) return count > o.count;
      if (left != o.left) return left < o.left;
      return right < o.right;
    }
  };

  int intern(const std::string& text) {
    auto [it, inserted] = ids_.try_emplace(text, static_cast<int>(text_.size()));
    if (inserted) text_.push_back(text);
    return it->second;
  }

  void bump(int left, int right, std::int64_t delta, std::size_t word) {
    const auto key = pair_key(left, right);
    auto& count = counts_[key];
    if (count > 0) ranked_.erase(Ranked{count, text_[left], text_[right], left, right});
    count += delta;
    if (count > 0) {
      ranked_.insert(Ranked{count, text_[left], text_[right], left, right});
    } else {
      counts_.erase(key);
    }
    if (delta > 0) where_[key].push_back(word);
  }

  void add_word(std::size_t w, int sign) {
    std::map<std::pair<int, int>, std::int64_t> local;
    for_each_pair(words_[w], [&](int l, int r) { ++local[{l, r}]; });
    for (const auto& [pair, n] : local) bump(pair.first, pair.second, sign * n * freq_[w], w);
  }

  int marker_ = 0;
  std::vector<std::string> text_;
  std::unordered_map<std::string, int> ids_;
  std::set<char> characters_;
  std::vector<std::vector<int>> words_;
  std::vector<std::int64_t> freq_;
  std::unordered_map<std::uint64_t, std::int64_t> counts_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> where_;
  std::set<Ranked> ranked_;
};

}  // namespace detail

/// Learns up to `max_ops` merges. Each step merges the most frequent adjacent
/// pair inside tokens (ties go to the lexicographically smallest pair) and
/// stops early once no pair occurs at least twice.
inline MergeTable learn_merges(const std::vector<TokenStream>& corpus, std::size_t max_ops) {
  bool any = false;
  for (const auto& s : corpus) any = any || !s.tokens.empty();
  if (!any) throw ConfigError("cannot learn merges from an empty corpus");
  return detail::MergeLearner(corpus).run(max_ops);
}

/// Applies a merge table to tokens. Merges are applied once each, in learned
/// order, to every adjacent occurrence. Results are memoized per token text.
class Segmenter {
 public:
  explicit Segmenter(const MergeTable& table) : characters_(table.characters) {
    for (std::size_t i = 0; i < table.merges.size(); ++i) {
      const auto& [left, right] = table.merges[i];
      rank_.try_emplace(left + '\x1f' + right, i);
    }
  }

  std::vector<std::string> segment(std::string_view token) const {
    if (auto it = cache_.find(std::string(token)); it != cache_.end()) return it->second;
    std::vector<std::string> symbols;
    symbols.reserve(token.size() + 1);
    for (char c : token) {
      symbols.push_back(characters_.contains(c) ? std::string(1, c) : std::string(kUnknownChar));
    }
    symbols.emplace_back(kEndOfToken);
    std::size_t floor = 0;
    while (symbols.size() > 1) {
      std::size_t best = std::numeric_limits<std::size_t>::max();
      for (std::size_t i = 0; i + 1 < symbols.size(); ++i) {
        auto it = rank_.find(symbols[i] + '\x1f' + symbols[i + 1]);
        if (it != rank_.end() && it->second >= floor) best = std::min(best, it->second);
      }
      if (best == std::numeric_limits<std::size_t>::max()) break;
      std::vector<std::string> next;
      next.reserve(symbols.size());
      for (std::size_t i = 0; i < symbols.size();) {
        if (i + 1 < symbols.size()) {
          auto it = rank_.find(symbols[i] + '\x1f' + symbols[i + 1]);
          if (it != rank_.end() && it->second == best) {
            next.push_back(symbols[i] + symbols[i + 1]);
            i += 2;
            continue;
          }
        }
        next.push_back(symbols[i++]);
      }
      symbols = std::move(next);
      floor = best + 1;
    }
    cache_.emplace(std::string(token), symbols);
    return symbols;
  }

  SubwordSequence segment(const TokenStream& stream) const {
    SubwordSequence seq;
    for (const auto& token : stream.tokens) {
      for (auto& unit : segment(token.text)) seq.units.push_back(std::move(unit));
      seq.token_boundaries.push_back(seq.units.size() - 1);
    }
    return seq;
  }

 private:
  std::set<char> characters_;
  std::unordered_map<std::string, std::size_t> rank_;
  mutable std::unordered_map<std::string, std::vector<std::string>> cache_;
};

inline std::vector<std::string> segment_token(const Token& token, const MergeTable& table) {
  return Segmenter(table).segment(token.text);
}

struct SegmentedFile {
  std::string project_id;
  std::string file_id;
  SubwordSequence sequence;
};

inline std::vector<SegmentedFile> segment_corpus(const std::vector<TokenStream>& corpus, const MergeTable& table) {
  Segmenter segmenter(table);
  std::vector<SegmentedFile> out;
  out.reserve(corpus.size());
  for (const auto& stream : corpus) out.push_back({stream.project_id, stream.file_id, segmenter.segment(stream)});
  return out;
}

/// Concatenates units and splits at each end-of-token marker.
inline std::vector<std::string> join(std::span<const std::string> units) {
  std::vector<std::string> tokens;
  std::string current;
  for (const auto& unit : units) {
    if (ends_with_marker(unit)) {
      current.append(unit, 0, unit.size() - kEndOfToken.size());
      tokens.push_back(std::move(current));
      current.clear();
    } else {
      current += unit;
    }
  }
  if (!units.empty() && !ends_with_marker(units.back()))
    throw DataError("subword sequence ends inside an incomplete token");
  return tokens;
}

inline std::vector<std::string> join(const SubwordSequence& sequence) { return join(sequence.units); }

// ---------------------------------------------------------------------------
// Merge-table file:
//   #bpe-v1 <max_ops>
//   #chars <observed characters, spaces written as U+2423>
//   <left> <right>          one line per merge, in learning order

inline std::string format_merge_table(const MergeTable& table) {
  std::string out = "#bpe-v1 " + std::to_string(table.max_ops) + "\n#chars ";
  for (char c : table.characters) out += encode_field(std::string_view(&c, 1));
  out += '\n';
  for (const auto& [left, right] : table.merges) out += encode_field(left) + ' ' + encode_field(right) + '\n';
  return out;
}

inline MergeTable parse_merge_table(std::string_view text) {
  MergeTable table;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    if (line_no == 1) {
      if (!line.starts_with("#bpe-v1 ")) throw DataError("merge table: missing '#bpe-v1' header");
      try {
        table.max_ops = std::stoul(std::string(line.substr(8)));
      } catch (const std::exception&) {
        throw DataError("merge table: malformed operation budget in header");
      }
      continue;
    }
    if (line_no == 2) {
      if (!line.starts_with("#chars")) throw DataError("merge table: missing '#chars' line");
      const auto chars = decode_field(line.size() > 7 ? line.substr(7) : std::string_view{});
      table.characters.insert(chars.begin(), chars.end());
      continue;
    }
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 2) throw DataError("merge table: line " + std::to_string(line_no) + " is not '<left> <right>'");
    table.merges.emplace_back(fields[0], fields[1]);
  }
  if (line_no < 2) throw DataError("merge table: truncated header");
  if (table.merges.size() > table.max_ops) throw DataError("merge table: more merges than the declared budget");
  return table;
}

inline MergeTable read_merge_table(const std::filesystem::path& path) {
  return parse_merge_table(read_text_file(path));
}

inline std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h = 14695981039346656037ull) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::uint64_t content_hash(const MergeTable& table) { return fnv1a64(format_merge_table(table)); }

// Segmented-corpus file: one source file per line, units separated by spaces.
inline std::string format_segmented_line(const SubwordSequence& sequence) {
  std::string line;
  for (std::size_t i = 0; i < sequence.units.size(); ++i) {
    if (i) line += ' ';
    line += encode_field(sequence.units[i]);
  }
  line += '\n';
  return line;
}

inline SubwordSequence parse_segmented_line(std::string_view content) {
  while (!content.empty() && (content.back() == '\n' || content.back() == '\r')) content.remove_suffix(1);
  SubwordSequence seq;
  seq.units = split_fields(content);
  for (std::size_t i = 0; i < seq.units.size(); ++i)
    if (ends_with_marker(seq.units[i])) seq.token_boundaries.push_back(i);
  return seq;
}

inline std::vector<SegmentedFile> read_segmented_corpus(const std::filesystem::path& root) {
  std::vector<SegmentedFile> out;
  for (const auto& entry : list_corpus(root, ".seg"))
    out.push_back({entry.project_id, entry.file_id, parse_segmented_line(read_text_file(entry.path))});
  return out;
}

inline void write_segmented_file(const std::filesystem::path& root, const SegmentedFile& file) {
  write_text_file(root / file.project_id / (file.file_id + ".seg"), format_segmented_line(file.sequence));
}

/// Dense ids for the model's unit vocabulary: the table's vocabulary plus the
/// reserved unknown-character unit.
class SubwordVocabulary {
 public:
  SubwordVocabulary() = default;
  explicit SubwordVocabulary(const MergeTable& table) : hash_(content_hash(table)) {
    for (char c : table.characters) add(std::string(1, c));
    add(std::string(kEndOfToken));
    add(std::string(kUnknownChar));
    for (const auto& [left, right] : table.merges) add(left + right);
  }

  // For fixtures that name units directly.
  explicit SubwordVocabulary(std::vector<std::string> units, std::uint64_t hash = 0) : hash_(hash) {
    for (auto& u : units) add(std::move(u));
  }

  std::size_t size() const { return units_.size(); }
  const std::string& text(int id) const { return units_.at(static_cast<std::size_t>(id)); }
  bool is_terminal(int id) const { return terminal_[static_cast<std::size_t>(id)]; }
  std::uint64_t hash() const { return hash_; }
  const std::vector<std::string>& units() const { return units_; }

  int id(std::string_view unit) const {
    auto it = ids_.find(std::string(unit));
    if (it == ids_.end()) throw DataError("unit '" + std::string(unit) + "' is not in the vocabulary");
    return it->second;
  }

  std::vector<int> encode(const SubwordSequence& sequence) const {
    std::vector<int> ids;
    ids.reserve(sequence.units.size());
    for (const auto& u : sequence.units) ids.push_back(id(u));
    return ids;
  }

 private:
  void add(std::string unit) {
    if (ids_.contains(unit)) return;
    ids_.emplace(unit, static_cast<int>(units_.size()));
    terminal_.push_back(ends_with_marker(unit));
    units_.push_back(std::move(unit));
  }

  std::uint64_t hash_ = 0;
  std::vector<std::string> units_;
  std::vector<bool> terminal_;
  std::unordered_map<std::string, int> ids_;
};

}  // namespace codelm
