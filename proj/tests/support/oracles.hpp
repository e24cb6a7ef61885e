// Copyright 2026 The codelm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Independent reference implementations used only by tests. None of these
// share code paths with the library routines they check.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "codelm/bpe.hpp"
#include "codelm/gru_model.hpp"

namespace codelm::oracle {

// Number of replacements a left-to-right merge of (a, b) would perform.
inline std::size_t simulated_merge_count(const std::vector<std::string>& symbols, const std::string& a,
                                         const std::string& b) {
  std::size_t n = 0;
  for (std::size_t i = 0; i + 1 < symbols.size();) {
    if (symbols[i] == a && symbols[i + 1] == b) {
      ++n;
      i += 2;
    } else {
      ++i;
    }
  }
  return n;
}

inline std::vector<std::string> simulated_merge(const std::vector<std::string>& symbols, const std::string& a,
                                                const std::string& b) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < symbols.size();) {
    if (i + 1 < symbols.size() && symbols[i] == a && symbols[i + 1] == b) {
      out.push_back(a + b);
      i += 2;
    } else {
      out.push_back(symbols[i++]);
    }
  }
  return out;
}

// Brute-force merge learning over every token occurrence: each step tries
// every distinct adjacent pair and counts its replacements directly.
inline std::vector<std::pair<std::string, std::string>> brute_force_merges(const std::vector<std::string>& tokens,
                                                                          std::size_t max_ops) {
  std::vector<std::vector<std::string>> seqs;
  for (const auto& t : tokens) {
    std::vector<std::string> s;
    for (char c : t) s.emplace_back(1, c);
    s.emplace_back("</t>");
    seqs.push_back(std::move(s));
  }
  std::vector<std::pair<std::string, std::string>> merges;
  while (merges.size() < max_ops) {
    std::map<std::pair<std::string, std::string>, std::size_t> counts;
    for (const auto& s : seqs)
      for (std::size_t i = 0; i + 1 < s.size(); ++i) counts[{s[i], s[i + 1]}] = 0;
    for (auto& [pair, n] : counts)
      for (const auto& s : seqs) n += simulated_merge_count(s, pair.first, pair.second);
    std::pair<std::string, std::string> best;
    std::size_t best_n = 0;
    for (const auto& [pair, n] : counts)  // map order = lexicographic, so strict > keeps the smallest on ties
      if (n > best_n) {
        best_n = n;
        best = pair;
      }
    if (best_n < 2) break;
    merges.push_back(best);
    for (auto& s : seqs) s = simulated_merge(s, best.first, best.second);
  }
  return merges;
}

// Applies every merge in recorded order, one full pass each.
inline std::vector<std::string> naive_segment(const std::string& token, const MergeTable& table) {
  std::vector<std::string> s;
  for (char c : token) s.push_back(table.characters.count(c) ? std::string(1, c) : std::string("<unk-char>"));
  s.emplace_back("</t>");
  for (const auto& [a, b] : table.merges) s = simulated_merge(s, a, b);
  return s;
}

// Scalar-loop GRU forward pass on plain vectors.
struct PlainGru {
  std::size_t V, E, H;
  std::vector<double> emb, wz, uz, bz, wr, ur, br, wn, un, bn, wo, bo;

  template <typename Scalar>
  static PlainGru from(const GruModel<Scalar>& m) {
    PlainGru g{m.config.vocab_size, m.config.embed_dim, m.config.hidden_dim, {}, {}, {}, {}, {}, {}, {}, {}, {}, {}, {}, {}};
    std::vector<std::vector<double>*> dst = {&g.emb, &g.wz, &g.uz, &g.bz, &g.wr, &g.ur,
                                             &g.br,  &g.wn, &g.un, &g.bn, &g.wo, &g.bo};
    std::size_t i = 0;
    m.params.for_each([&](const char*, std::span<const Scalar> b) {
      dst[i++]->assign(b.begin(), b.end());
    });
    return g;
  }

  // Column-major element (r, c) of a rows x cols block.
  static double at(const std::vector<double>& m, std::size_t rows, std::size_t r, std::size_t c) { return m[c * rows + r]; }

  std::vector<double> step(const std::vector<double>& h, int unit) const {
    std::vector<double> x(E);
    for (std::size_t e = 0; e < E; ++e) x[e] = at(emb, E, e, static_cast<std::size_t>(unit));
    std::vector<double> z(H), r(H), out(H);
    auto sig = [](double v) { return 1.0 / (1.0 + std::exp(-v)); };
    for (std::size_t j = 0; j < H; ++j) {
      double az = bz[j], ar = br[j];
      for (std::size_t e = 0; e < E; ++e) {
        az += at(wz, H, j, e) * x[e];
        ar += at(wr, H, j, e) * x[e];
      }
      for (std::size_t k = 0; k < H; ++k) {
        az += at(uz, H, j, k) * h[k];
        ar += at(ur, H, j, k) * h[k];
      }
      z[j] = sig(az);
      r[j] = sig(ar);
    }
    for (std::size_t j = 0; j < H; ++j) {
      double an = bn[j];
      for (std::size_t e = 0; e < E; ++e) an += at(wn, H, j, e) * x[e];
      for (std::size_t k = 0; k < H; ++k) an += at(un, H, j, k) * r[k] * h[k];
      out[j] = (1.0 - z[j]) * h[j] + z[j] * std::tanh(an);
    }
    return out;
  }

  std::vector<double> distribution(const std::vector<double>& h) const {
    std::vector<double> logits(V);
    double mx = -1e300;
    for (std::size_t v = 0; v < V; ++v) {
      logits[v] = bo[v];
      for (std::size_t k = 0; k < H; ++k) logits[v] += at(wo, V, v, k) * h[k];
      mx = std::max(mx, logits[v]);
    }
    double sum = 0.0;
    for (auto& l : logits) sum += (l = std::exp(l - mx));
    for (auto& l : logits) l /= sum;
    return logits;
  }

  std::vector<double> zero_state() const { return std::vector<double>(H, 0.0); }
};

struct EnumeratedToken {
  std::string text;
  double prob;
  std::vector<int> units;
};

// Every complete token of at most `max_len` units after state `h`, with its
// chain-rule probability. A leading bare end-of-token unit is not a token.
inline std::vector<EnumeratedToken> enumerate_tokens(const PlainGru& g, const SubwordVocabulary& vocab,
                                                     const std::vector<double>& h, std::size_t max_len) {
  std::vector<EnumeratedToken> out;
  std::function<void(const std::vector<double>&, std::string, double, std::vector<int>)> rec =
      [&](const std::vector<double>& state, std::string text, double prob, std::vector<int> units) {
        if (units.size() >= max_len) return;
        const auto dist = g.distribution(state);
        for (int u = 0; u < static_cast<int>(vocab.size()); ++u) {
          auto next_units = units;
          next_units.push_back(u);
          const double p = prob * dist[static_cast<std::size_t>(u)];
          std::string piece = vocab.text(u);
          if (vocab.is_terminal(u)) {
            piece.resize(piece.size() - 4);
            if (text.empty() && piece.empty()) continue;
            out.push_back({text + piece, p, next_units});
          } else {
            rec(g.step(state, u), text + piece, p, next_units);
          }
        }
      };
  rec(h, "", 1.0, {});
  std::sort(out.begin(), out.end(), [](const EnumeratedToken& a, const EnumeratedToken& b) {
    if (a.prob != b.prob) return a.prob > b.prob;
    if (a.text != b.text) return a.text < b.text;
    return a.units < b.units;
  });
  return out;
}

}  // namespace codelm::oracle
