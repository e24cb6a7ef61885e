// Copyright 2026 The codelm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "codelm/corpus.hpp"
#include "codelm/evaluation.hpp"

namespace codelm {

struct NgramConfig {
  std::size_t order = 3;
  std::size_t vocab_cutoff = 3;  // tokens seen fewer times map to the OOV symbol
  // Jelinek-Mercer weight of the maximum-likelihood estimate at each order
  // (index 0 = unigram); the remainder goes to the next lower order, and the
  // unigram backs off to a uniform distribution.
  std::vector<double> lambdas = {0.95, 0.7, 0.6};
  double cache_lambda = 0.2;  // mixing weight of the file cache
  double cache_decay = 0.99;  // per-token decay of cached counts

  void validate() const {
    if (order < 1) throw ConfigError("n-gram order must be at least 1");
    if (lambdas.size() < order) throw ConfigError("one interpolation weight per n-gram order is required");
    for (double l : lambdas)
      if (!(l >= 0.0 && l <= 1.0)) throw ConfigError("interpolation weights must lie in [0, 1]");
    if (!(cache_lambda >= 0.0 && cache_lambda < 1.0)) throw ConfigError("cache weight must lie in [0, 1)");
    if (!(cache_decay > 0.0 && cache_decay <= 1.0)) throw ConfigError("cache decay must lie in (0, 1]");
  }
};

/// Closed-vocabulary interpolated n-gram model. Id 0 is the OOV symbol.
class NgramModel {
 public:
  static constexpr int kOov = 0;

  static NgramModel train(const std::vector<TokenStream>& corpus, const NgramConfig& config) {
    config.validate();
    std::unordered_map<std::string, std::size_t> freq;
    std::size_t total = 0;
    for (const auto& s : corpus)
      for (const auto& t : s.tokens) {
        ++freq[t.text];
        ++total;
      }
    if (total == 0) throw ConfigError("cannot train an n-gram model on an empty corpus");

    NgramModel m;
    m.config_ = config;
    m.words_.push_back("<oov>");
    std::vector<std::string> kept;
    for (const auto& [text, n] : freq)
      if (n >= std::max<std::size_t>(config.vocab_cutoff, 1)) kept.push_back(text);
    std::sort(kept.begin(), kept.end());
    for (auto& w : kept) {
      m.ids_.emplace(w, static_cast<int>(m.words_.size()));
      m.words_.push_back(std::move(w));
    }
    m.counts_.resize(config.order);
    for (const auto& s : corpus) {
      const auto ids = m.map(s);
      for (std::size_t i = 0; i < ids.size(); ++i) {
        for (std::size_t k = 1; k <= config.order && k <= i + 1; ++k) {
          auto& ctx = m.counts_[k - 1][key(std::span<const int>(ids).subspan(i + 1 - k, k - 1))];
          ++ctx.total;
          ++ctx.next[ids[i]];
        }
      }
    }
    return m;
  }

  const NgramConfig& config() const { return config_; }
  std::size_t vocabulary_size() const { return words_.size(); }  // including OOV
  const std::string& word(int id) const { return words_[static_cast<std::size_t>(id)]; }

  int id(const std::string& token) const {
    auto it = ids_.find(token);
    return it == ids_.end() ? kOov : it->second;
  }

  std::vector<int> map(const TokenStream& stream) const {
    std::vector<int> ids;
    ids.reserve(stream.tokens.size());
    for (const auto& t : stream.tokens) ids.push_back(id(t.text));
    return ids;
  }

  // Relative frequency c(history, w) / c(history) at the order implied by
  // the history length; 0 for unseen histories.
  double ml_probability(int w, std::span<const int> history) const {
    const auto& table = counts_.at(history.size());
    auto it = table.find(key(history));
    if (it == table.end()) return 0.0;
    auto jt = it->second.next.find(w);
    return jt == it->second.next.end() ? 0.0 : static_cast<double>(jt->second) / static_cast<double>(it->second.total);
  }

  /// Interpolated probability of `w` after `history` (only the last order-1
  /// ids are used).
  double probability(int w, std::span<const int> history) const {
    double p = 1.0 / static_cast<double>(words_.size());
    const std::size_t h = std::min(history.size(), config_.order - 1);
    for (std::size_t k = 1; k <= h + 1; ++k) {
      const auto ctx = history.subspan(history.size() - (k - 1), k - 1);
      auto it = counts_[k - 1].find(key(ctx));
      if (it == counts_[k - 1].end()) continue;
      const double lambda = config_.lambdas[k - 1];
      auto jt = it->second.next.find(w);
      const double ml = jt == it->second.next.end() ? 0.0 : static_cast<double>(jt->second) / static_cast<double>(it->second.total);
      p = lambda * ml + (1.0 - lambda) * p;
    }
    return p;
  }

  /// Full distribution over the vocabulary (OOV included) after `history`.
  std::vector<double> distribution(std::span<const int> history) const {
    std::vector<double> dist(words_.size(), 1.0 / static_cast<double>(words_.size()));
    const std::size_t h = std::min(history.size(), config_.order - 1);
    for (std::size_t k = 1; k <= h + 1; ++k) {
      const auto ctx = history.subspan(history.size() - (k - 1), k - 1);
      auto it = counts_[k - 1].find(key(ctx));
      if (it == counts_[k - 1].end()) continue;
      const double lambda = config_.lambdas[k - 1];
      for (auto& v : dist) v *= 1.0 - lambda;
      const double total = static_cast<double>(it->second.total);
      for (const auto& [w, c] : it->second.next) dist[static_cast<std::size_t>(w)] += lambda * static_cast<double>(c) / total;
    }
    return dist;
  }

 private:
  struct ContextCounts {
    std::size_t total = 0;
    std::unordered_map<int, std::size_t> next;
  };

  static std::string key(std::span<const int> ctx) {
    return std::string(reinterpret_cast<const char*>(ctx.data()), ctx.size_bytes());
  }

  NgramConfig config_;
  std::vector<std::string> words_;
  std::unordered_map<std::string, int> ids_;
  std::vector<std::unordered_map<std::string, ContextCounts>> counts_;  // [order-1][context]
};

/// Exponentially decayed unigram counts over the tokens of the current file.
class TokenCache {
 public:
  TokenCache(std::size_t vocab_size, double decay) : counts_(vocab_size, 0.0), decay_(decay) {}

  bool empty() const { return mass_ == 0.0; }
  double probability(int w) const { return mass_ == 0.0 ? 0.0 : counts_[static_cast<std::size_t>(w)] / mass_; }

  void observe(int w) {
    if (decay_ != 1.0) {
      for (auto& c : counts_) c *= decay_;
      mass_ *= decay_;
    }
    counts_[static_cast<std::size_t>(w)] += 1.0;
    mass_ += 1.0;
  }

 private:
  std::vector<double> counts_;
  double mass_ = 0.0;
  double decay_;
};

struct NgramScoreOptions {
  bool cache = false;
  std::size_t k = 10;
  std::size_t max_positions = std::numeric_limits<std::size_t>::max();
  std::size_t jobs = 1;
};

struct NgramFileScore {
  std::vector<double> bits;                  // per token
  std::vector<std::vector<std::string>> top;  // top-k list for each ranked position
};

/// Scores one file; with the cache enabled the cache starts empty, mixes in
/// with weight cache_lambda once it holds anything, and is updated after
/// each token is scored.
inline NgramFileScore ngram_score(const NgramModel& model, const TokenStream& stream, bool cache_enabled,
                                  std::size_t ranked_positions = 0, std::size_t k = 10) {
  NgramFileScore out;
  const auto ids = model.map(stream);
  const double lc = model.config().cache_lambda;
  TokenCache cache(model.vocabulary_size(), model.config().cache_decay);
  auto mix = [&](double p_static, int w) {
    if (!cache_enabled || cache.empty() || lc == 0.0) return p_static;
    return (1.0 - lc) * p_static + lc * cache.probability(w);
  };
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const auto history = std::span<const int>(ids).first(i);
    out.bits.push_back(-std::log2(mix(model.probability(ids[i], history), ids[i])));
    if (i < ranked_positions) {
      auto dist = model.distribution(history);
      for (std::size_t w = 0; w < dist.size(); ++w) dist[w] = mix(dist[w], static_cast<int>(w));
      std::vector<int> order;
      for (int w = 1; w < static_cast<int>(dist.size()); ++w) order.push_back(w);
      const std::size_t n = std::min(k, order.size());
      std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n), order.end(), [&](int a, int b) {
        if (dist[static_cast<std::size_t>(a)] != dist[static_cast<std::size_t>(b)])
          return dist[static_cast<std::size_t>(a)] > dist[static_cast<std::size_t>(b)];
        return model.word(a) < model.word(b);
      });
      std::vector<std::string> top;
      for (std::size_t r = 0; r < n; ++r) top.push_back(model.word(order[r]));
      out.top.push_back(std::move(top));
    }
    if (cache_enabled) cache.observe(ids[i]);
  }
  return out;
}

/// Entropy and MRR of the n-gram baseline in the common report format.
inline EvalReport ngram_evaluate(const NgramModel& model, const std::vector<TokenStream>& test,
                                 const NgramScoreOptions& options, std::string corpus_id = "test") {
  std::vector<std::size_t> quotas;
  std::size_t remaining = options.max_positions;
  for (const auto& s : test) {
    quotas.push_back(std::min(remaining, s.tokens.size()));
    remaining -= quotas.back();
  }
  std::vector<FileScore> scores(test.size());
  parallel_for(test.size(), options.jobs, [&](std::size_t i) {
    const auto s = ngram_score(model, test[i], options.cache, quotas[i], options.k);
    FileScore f{test[i].project_id, test[i].file_id, s.bits.size(), 0.0, s.top.size(), {}};
    for (double b : s.bits) f.total_bits += b;
    for (std::size_t p = 0; p < s.top.size(); ++p) {
      const auto& truth = test[i].tokens[p].text;
      std::size_t rank = 0;
      for (std::size_t r = 0; r < s.top[p].size() && r < 10 && rank == 0; ++r)
        if (s.top[p][r] == truth) rank = r + 1;
      f.ranks.add(rank);
    }
    scores[i] = std::move(f);
  });
  return make_report(options.cache ? "ngram-cache" : "ngram", std::move(corpus_id), std::move(scores));
}

}  // namespace codelm
