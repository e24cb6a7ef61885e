// Copyright 2026 The codelm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "codelm/bpe.hpp"
#include "codelm/gru_model.hpp"

namespace codelm {

/// Termination thresholds for the complete-token search. The search stops
/// as soon as tokens_done > max_tokens_done, total > max_total or
/// iterations > max_iterations, or when the worst retained token is at least
/// as probable as the best open candidate.
struct SearchLimits {
  std::size_t max_tokens_done = 5000;
  double max_total = 0.8;
  std::size_t max_iterations = 7;
  // Open candidates are capped at this multiple of the beam width; 0 = no cap.
  std::size_t candidate_cap_factor = 10;

  // Only the probability bound remains active.
  static SearchLimits disabled() {
    return {std::numeric_limits<std::size_t>::max(), std::numeric_limits<double>::infinity(),
            std::numeric_limits<std::size_t>::max(), 0};
  }
};

struct Completion {
  std::string text;        // token text without the end-of-token marker
  double prob = 0.0;       // product of the unit probabilities
  std::vector<int> units;  // unit ids making up the token

  friend bool operator==(const Completion&, const Completion&) = default;
};

using CompletionList = std::vector<Completion>;

// Descending probability; ties broken by text, then unit ids.
inline bool completion_before(const Completion& a, const Completion& b) {
  if (a.prob != b.prob) return a.prob > b.prob;
  if (a.text != b.text) return a.text < b.text;
  return a.units < b.units;
}

enum class StopReason { kTokensDone, kTotalMass, kIterations, kBound };

inline const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::kTokensDone: return "tokens_done";
    case StopReason::kTotalMass: return "total";
    case StopReason::kIterations: return "iterations";
    case StopReason::kBound: return "bound";
  }
  return "?";
}

struct SearchTrace {
  StopReason reason = StopReason::kBound;
  std::size_t iterations = 0;
  std::size_t tokens_done = 0;
  double total = 0.0;
  std::size_t expansions = 0;  // candidates popped and expanded
  std::size_t max_depth = 0;   // longest unit sequence generated
};

namespace detail {

template <typename Scalar>
struct SearchCandidate {
  std::string text;
  double prob = 0.0;
  std::vector<int> units;
  typename GruModel<Scalar>::Vector parent_state;  // state before units.back()
};

// Ids of the `n` most probable entries, ties to the smaller id.
template <typename Vec>
std::vector<int> top_ids(const Vec& dist, std::size_t n) {
  std::vector<int> ids(static_cast<std::size_t>(dist.size()));
  std::iota(ids.begin(), ids.end(), 0);
  n = std::min(n, ids.size());
  std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(n), ids.end(), [&](int a, int b) {
    if (dist(a) != dist(b)) return dist(a) > dist(b);
    return a < b;
  });
  ids.resize(n);
  return ids;
}

}  // namespace detail

/// Beam search for the k most probable complete tokens following the context
/// summarized by `state` (the hidden state after the history). A bare
/// end-of-token unit right at the start would form an empty token and is
/// never proposed.
template <typename Scalar>
CompletionList predict_top_k(const GruModel<Scalar>& model, const SubwordVocabulary& vocab,
                             const typename GruModel<Scalar>::Vector& state, std::size_t k, std::size_t beam,
                             const SearchLimits& limits = {}, SearchTrace* trace = nullptr) {
  if (k < 1 || beam < 1) throw ConfigError("top-k search needs k >= 1 and beam >= 1");
  if (vocab.size() != model.vocab_size()) throw DataError("vocabulary size does not match the model");
  using Candidate = detail::SearchCandidate<Scalar>;
  auto candidate_before = [](const Candidate& a, const Candidate& b) {
    if (a.prob != b.prob) return a.prob > b.prob;
    if (a.text != b.text) return a.text < b.text;
    return a.units < b.units;
  };
  auto unit_text = [&](int id) -> std::string_view {
    std::string_view t = vocab.text(id);
    if (vocab.is_terminal(id)) t.remove_suffix(kEndOfToken.size());
    return t;
  };

  SearchTrace local;
  SearchTrace& tr = trace ? *trace : local;
  tr = SearchTrace{};

  CompletionList best;
  std::vector<Candidate> candidates;
  {
    const auto dist = predict(model, state);
    std::vector<int> order(vocab.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return dist(a) > dist(b); });
    for (int id : order) {
      const double p = static_cast<double>(dist(id));
      if (vocab.is_terminal(id)) {
        if (best.size() < k && !unit_text(id).empty()) best.push_back({std::string(unit_text(id)), p, {id}});
      } else if (candidates.size() < beam) {
        candidates.push_back({std::string(unit_text(id)), p, {id}, state});
      }
    }
    std::sort(best.begin(), best.end(), completion_before);
    std::sort(candidates.begin(), candidates.end(), candidate_before);
    for (const auto& c : best) tr.total += c.prob;
    tr.max_depth = 1;
  }

  auto stop = [&]() -> bool {
    if (tr.tokens_done > limits.max_tokens_done) {
      tr.reason = StopReason::kTokensDone;
      return true;
    }
    if (tr.total > limits.max_total) {
      tr.reason = StopReason::kTotalMass;
      return true;
    }
    if (tr.iterations > limits.max_iterations) {
      tr.reason = StopReason::kIterations;
      return true;
    }
    // Missing bestTokens slots count as probability 0, an empty candidate
    // queue as maximum 0.
    const double lowest = best.size() < k ? 0.0 : best.back().prob;
    const double highest = candidates.empty() ? 0.0 : candidates.front().prob;
    if (lowest >= highest) {
      tr.reason = StopReason::kBound;
      return true;
    }
    return false;
  };

  while (!stop()) {
    const std::size_t take = std::min(beam, candidates.size());
    std::vector<Candidate> to_expand(std::make_move_iterator(candidates.begin()),
                                     std::make_move_iterator(candidates.begin() + static_cast<std::ptrdiff_t>(take)));
    candidates.erase(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(take));
    for (auto& cand : to_expand) {
      ++tr.expansions;
      const auto cand_state = advance(model, cand.parent_state, cand.units.back());
      const auto dist = predict(model, cand_state);
      for (int id : detail::top_ids(dist, beam)) {
        const double p = cand.prob * static_cast<double>(dist(id));
        std::vector<int> units = cand.units;
        units.push_back(id);
        tr.max_depth = std::max(tr.max_depth, units.size());
        std::string text = cand.text + std::string(unit_text(id));
        if (vocab.is_terminal(id)) {
          Completion done{std::move(text), p, std::move(units)};
          best.insert(std::upper_bound(best.begin(), best.end(), done, completion_before), std::move(done));
          if (best.size() > k) best.pop_back();
          tr.total += p;
          ++tr.tokens_done;
        } else {
          candidates.push_back({std::move(text), p, std::move(units), cand_state});
        }
      }
    }
    std::sort(candidates.begin(), candidates.end(), candidate_before);
    if (limits.candidate_cap_factor > 0 && candidates.size() > limits.candidate_cap_factor * beam)
      candidates.resize(limits.candidate_cap_factor * beam);
    ++tr.iterations;
  }
  return best;
}

/// Convenience overload: runs the history through the model first.
template <typename Scalar>
CompletionList predict_top_k(const GruModel<Scalar>& model, const SubwordVocabulary& vocab,
                             std::span<const int> history, std::size_t k, std::size_t beam,
                             const SearchLimits& limits = {}, SearchTrace* trace = nullptr) {
  auto state = model.initial_state();
  for (int u : history) state = advance(model, state, u);
  return predict_top_k(model, vocab, state, k, beam, limits, trace);
}

}  // namespace codelm
