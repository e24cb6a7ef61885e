// Copyright 2026 The codelm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "codelm/bpe.hpp"
#include "codelm/decoder.hpp"
#include "codelm/gru_model.hpp"
#include "codelm/parallel.hpp"

namespace codelm {

/// A segmented file mapped onto model unit ids.
struct EncodedFile {
  std::string project_id;
  std::string file_id;
  std::vector<int> units;
  std::vector<std::size_t> token_ends;  // index one past the last unit of each token
  std::vector<std::string> tokens;      // token texts, for completion ranking
};

inline EncodedFile encode_file(const SegmentedFile& file, const SubwordVocabulary& vocab) {
  EncodedFile out{file.project_id, file.file_id, vocab.encode(file.sequence), {}, join(file.sequence)};
  for (std::size_t i = 0; i < out.units.size(); ++i)
    if (vocab.is_terminal(out.units[i])) out.token_ends.push_back(i + 1);
  return out;
}

inline std::vector<EncodedFile> encode_corpus(const std::vector<SegmentedFile>& files, const SubwordVocabulary& vocab) {
  std::vector<EncodedFile> out;
  out.reserve(files.size());
  for (const auto& f : files) out.push_back(encode_file(f, vocab));
  return out;
}

/// Bits for each token of a file: the sum of its units' bits.
template <typename Scalar>
std::vector<double> token_bits(const GruModel<Scalar>& model, const EncodedFile& file) {
  const auto unit_bits = sequence_nll(model, file.units);
  std::vector<double> out;
  out.reserve(file.token_ends.size());
  std::size_t begin = 0;
  for (std::size_t end : file.token_ends) {
    double sum = 0.0;
    for (std::size_t i = begin; i < end; ++i) sum += unit_bits[i];
    out.push_back(sum);
    begin = end;
  }
  return out;
}

struct CrossEntropy {
  double bits_per_token = 0.0;
  double total_bits = 0.0;
  std::size_t token_count = 0;
};

/// Average per-token entropy in bits over all files; a token's probability
/// is the product of its units' probabilities.
template <typename Scalar>
CrossEntropy token_cross_entropy(const GruModel<Scalar>& model, std::span<const EncodedFile> files,
                                 std::size_t jobs = 1) {
  std::vector<std::vector<double>> per_file(files.size());
  parallel_for(files.size(), jobs, [&](std::size_t i) { per_file[i] = token_bits(model, files[i]); });
  CrossEntropy ce;
  for (const auto& bits : per_file) {
    for (double b : bits) ce.total_bits += b;
    ce.token_count += bits.size();
  }
  ce.bits_per_token = ce.token_count ? ce.total_bits / static_cast<double>(ce.token_count) : 0.0;
  return ce;
}

/// 1-based rank of `truth` within the first ten entries, 0 when absent.
inline std::size_t rank_of(const CompletionList& ranked, const std::string& truth) {
  const std::size_t n = std::min<std::size_t>(ranked.size(), 10);
  for (std::size_t r = 0; r < n; ++r)
    if (ranked[r].text == truth) return r + 1;
  return 0;
}

inline double reciprocal_rank(const CompletionList& ranked, const std::string& truth) {
  const std::size_t r = rank_of(ranked, truth);
  return r ? 1.0 / static_cast<double>(r) : 0.0;
}

/// How often the truth landed at each rank (index 0: not in the top ten).
/// Averaging per rank keeps uniform-rank results exact, e.g. 0.1 for rank 10.
struct RankCounts {
  std::array<std::size_t, 11> by_rank{};

  void add(std::size_t rank) { ++by_rank.at(rank); }
  std::size_t total() const { return std::accumulate(by_rank.begin(), by_rank.end(), std::size_t{0}); }

  double mrr() const {
    const std::size_t n = total();
    if (n == 0) return 0.0;
    double sum = 0.0;
    for (std::size_t r = 1; r < by_rank.size(); ++r)
      sum += static_cast<double>(by_rank[r]) / (static_cast<double>(r) * static_cast<double>(n));
    return sum;
  }

  RankCounts& operator+=(const RankCounts& other) {
    for (std::size_t r = 0; r < by_rank.size(); ++r) by_rank[r] += other.by_rank[r];
    return *this;
  }
};

inline double mrr(std::span<const CompletionList> completions, std::span<const std::string> truth) {
  if (completions.size() != truth.size()) throw ConfigError("mrr: one ranked list per truth token is required");
  RankCounts counts;
  for (std::size_t i = 0; i < truth.size(); ++i) counts.add(rank_of(completions[i], truth[i]));
  return counts.mrr();
}

// ---------------------------------------------------------------------------
// Scenario reports

struct FileScore {
  std::string project_id;
  std::string file_id;
  std::size_t tokens = 0;
  double total_bits = 0.0;
  std::size_t positions = 0;  // completion queries ranked
  RankCounts ranks;

  double bits_per_token() const { return tokens ? total_bits / static_cast<double>(tokens) : 0.0; }
  double mrr() const { return ranks.mrr(); }
};

struct EvalReport {
  std::string scenario;
  std::string corpus_id;
  double bits_per_token = 0.0;
  double mrr = 0.0;
  std::size_t token_count = 0;
  std::size_t positions = 0;
  std::vector<FileScore> files;
};

inline EvalReport make_report(std::string scenario, std::string corpus_id, std::vector<FileScore> files) {
  EvalReport report{std::move(scenario), std::move(corpus_id), 0.0, 0.0, 0, 0, std::move(files)};
  double bits = 0.0;
  RankCounts ranks;
  for (const auto& f : report.files) {
    bits += f.total_bits;
    ranks += f.ranks;
    report.token_count += f.tokens;
    report.positions += f.positions;
  }
  if (report.token_count) report.bits_per_token = bits / static_cast<double>(report.token_count);
  report.mrr = ranks.mrr();
  return report;
}

inline std::string format_report(const EvalReport& r) {
  auto fixed4 = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return std::string(buf);
  };
  std::string out;
  out += "scenario " + r.scenario + "\n";
  out += "corpus " + r.corpus_id + "\n";
  out += "bits_per_token " + fixed4(r.bits_per_token) + "\n";
  out += "mrr " + fixed4(r.mrr) + "\n";
  out += "token_count " + std::to_string(r.token_count) + "\n";
  out += "mrr_positions " + std::to_string(r.positions) + "\n";
  for (const auto& f : r.files) {
    out += "file " + f.project_id + "/" + f.file_id + " tokens=" + std::to_string(f.tokens) +
           " bits_per_token=" + fixed4(f.bits_per_token()) + " mrr=" + fixed4(f.mrr()) +
           " positions=" + std::to_string(f.positions) + "\n";
  }
  return out;
}

struct EvalOptions {
  std::size_t k = 10;
  std::size_t beam = 10;
  SearchLimits limits;
  // Completion queries across the whole corpus, in file order.
  std::size_t max_positions = std::numeric_limits<std::size_t>::max();
  std::size_t jobs = 1;
};

struct AdaptationPolicy {
  std::size_t unroll = 20;
  std::size_t steps_per_sequence = 1;
  double lr = 0.1;
  double clip_norm = 5.0;
  LossScaling scaling = LossScaling::kSumOverTime;
};

/// Scores one file: entropy over every token plus completion ranks for the
/// first `mrr_quota` token positions.
template <typename Scalar>
FileScore score_file(const GruModel<Scalar>& model, const SubwordVocabulary& vocab, const EncodedFile& file,
                     std::size_t mrr_quota, const EvalOptions& options) {
  FileScore score{file.project_id, file.file_id, file.token_ends.size(), 0.0, 0, {}};
  for (double b : token_bits(model, file)) score.total_bits += b;
  const std::size_t positions = std::min(mrr_quota, file.token_ends.size());
  auto state = model.initial_state();
  std::size_t begin = 0;
  for (std::size_t t = 0; t < positions; ++t) {
    const auto ranked = predict_top_k(model, vocab, state, options.k, options.beam, options.limits);
    score.ranks.add(rank_of(ranked, file.tokens[t]));
    for (std::size_t i = begin; i < file.token_ends[t]; ++i) state = advance(model, state, file.units[i]);
    begin = file.token_ends[t];
  }
  score.positions = positions;
  return score;
}

namespace detail {

inline std::vector<std::size_t> mrr_quotas(std::span<const EncodedFile> files, std::size_t max_positions) {
  std::vector<std::size_t> quotas;
  std::size_t remaining = max_positions;
  for (const auto& f : files) {
    const std::size_t q = std::min(remaining, f.token_ends.size());
    quotas.push_back(q);
    remaining -= q;
  }
  return quotas;
}

// [begin, end) index ranges of consecutive files sharing a project id.
inline std::vector<std::pair<std::size_t, std::size_t>> project_ranges(std::span<const EncodedFile> files) {
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  for (std::size_t i = 0; i < files.size();) {
    std::size_t j = i;
    while (j < files.size() && files[j].project_id == files[i].project_id) ++j;
    ranges.emplace_back(i, j);
    i = j;
  }
  return ranges;
}

template <typename Scalar>
void check_vocabulary(const GruModel<Scalar>& model, const SubwordVocabulary& vocab) {
  if (model.vocab_hash != vocab.hash())
    throw DataError("model and merge table disagree (vocabulary hash mismatch)");
  if (model.vocab_size() != vocab.size()) throw DataError("model and vocabulary sizes disagree");
}

}  // namespace detail

/// Cross-project evaluation with no parameter updates.
template <typename Scalar>
EvalReport run_static(const GruModel<Scalar>& model, const SubwordVocabulary& vocab,
                      std::span<const EncodedFile> files, const EvalOptions& options = {},
                      std::string corpus_id = "test") {
  detail::check_vocabulary(model, vocab);
  const auto quotas = detail::mrr_quotas(files, options.max_positions);
  std::vector<FileScore> scores(files.size());
  parallel_for(files.size(), options.jobs,
               [&](std::size_t i) { scores[i] = score_file(model, vocab, files[i], quotas[i], options); });
  return make_report("static", std::move(corpus_id), std::move(scores));
}

struct AdaptResult {
  std::size_t windows = 0;  // windows whose update was applied
  bool aborted = false;     // a non-finite loss stopped adaptation early
};

/// One pass over `units` in unroll-length windows, one gradient step per
/// window, hidden state carried between windows.
template <typename Scalar>
AdaptResult adapt_online(GruModel<Scalar>& model, std::span<const int> units, const AdaptationPolicy& policy) {
  if (policy.unroll < 1 || policy.steps_per_sequence < 1 || !(policy.lr >= 0.0))
    throw ConfigError("adaptation policy needs positive unroll and steps and a non-negative learning rate");
  AdaptResult result;
  StepOptions step{1.0, policy.clip_norm, policy.scaling, nullptr};
  auto state = model.initial_state();
  for (std::size_t begin = 0; begin < units.size(); begin += policy.unroll) {
    const std::size_t len = std::min(policy.unroll, units.size() - begin);
    TrainWindow<Scalar> window{units.subspan(begin, len), state};
    const auto last_good = model.params;
    try {
      typename GruModel<Scalar>::Vector next_state;
      for (std::size_t s = 0; s < policy.steps_per_sequence; ++s) {
        auto loss = sgd_step(model, std::span<const TrainWindow<Scalar>>(&window, 1), policy.lr, step);
        if (s == 0) next_state = loss.final_states.front();
      }
      state = next_state;
    } catch (const NumericError&) {
      model.params = last_good;
      result.aborted = true;
      return result;
    }
    ++result.windows;
  }
  return result;
}

/// Per project: start from the global model, score each file, then adapt on
/// it. Adapted weights are discarded when the project ends.
template <typename Scalar>
EvalReport run_dynamic(const GruModel<Scalar>& global, const SubwordVocabulary& vocab,
                       std::span<const EncodedFile> files, const AdaptationPolicy& policy,
                       const EvalOptions& options = {}, std::string corpus_id = "test") {
  detail::check_vocabulary(global, vocab);
  const auto quotas = detail::mrr_quotas(files, options.max_positions);
  const auto projects = detail::project_ranges(files);
  std::vector<FileScore> scores(files.size());
  parallel_for(projects.size(), options.jobs, [&](std::size_t p) {
    GruModel<Scalar> model = global;
    for (std::size_t i = projects[p].first; i < projects[p].second; ++i) {
      scores[i] = score_file(model, vocab, files[i], quotas[i], options);
      adapt_online(model, files[i].units, policy);
    }
  });
  return make_report("dynamic", std::move(corpus_id), std::move(scores));
}

/// Contiguous, balanced partition of `n` files into min(partitions, n) groups.
inline std::vector<std::pair<std::size_t, std::size_t>> partition_files(std::size_t n, std::size_t partitions) {
  std::vector<std::pair<std::size_t, std::size_t>> groups;
  if (n == 0) return groups;
  const std::size_t p = std::max<std::size_t>(1, std::min(partitions, n));
  std::size_t begin = 0;
  for (std::size_t g = 0; g < p; ++g) {
    const std::size_t size = n / p + (g < n % p ? 1 : 0);
    groups.emplace_back(begin, begin + size);
    begin += size;
  }
  return groups;
}

/// Per project and partition: adapt a copy of the global model for one pass
/// over every project file outside the partition, then score the partition.
template <typename Scalar>
EvalReport run_maintenance(const GruModel<Scalar>& global, const SubwordVocabulary& vocab,
                           std::span<const EncodedFile> files, const AdaptationPolicy& policy,
                           std::size_t partitions = 10, const EvalOptions& options = {},
                           std::string corpus_id = "test") {
  detail::check_vocabulary(global, vocab);
  const auto quotas = detail::mrr_quotas(files, options.max_positions);
  struct Task {
    std::size_t project_begin, project_end, group_begin, group_end;
  };
  std::vector<Task> tasks;
  for (const auto& [pb, pe] : detail::project_ranges(files))
    for (const auto& [gb, ge] : partition_files(pe - pb, partitions)) tasks.push_back({pb, pe, pb + gb, pb + ge});

  std::vector<FileScore> scores(files.size());
  parallel_for(tasks.size(), options.jobs, [&](std::size_t t) {
    const auto& task = tasks[t];
    GruModel<Scalar> model = global;
    for (std::size_t i = task.project_begin; i < task.project_end; ++i) {
      if (i >= task.group_begin && i < task.group_end) continue;
      adapt_online(model, files[i].units, policy);
    }
    for (std::size_t i = task.group_begin; i < task.group_end; ++i)
      scores[i] = score_file(model, vocab, files[i], quotas[i], options);
  });
  return make_report("maintenance", std::move(corpus_id), std::move(scores));
}

}  // namespace codelm
