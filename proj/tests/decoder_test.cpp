#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "codelm/decoder.hpp"
#include "support/decoder_fixtures.hpp"

namespace codelm {
namespace {

const SubwordVocabulary& six_units() {
  static const SubwordVocabulary v({"a", "b", "a</t>", "b</t>", "ab</t>", "</t>"});
  return v;
}

TEST(PredictTopK, AllTerminalVocabularyNeedsNoSearch) {
  const SubwordVocabulary vocab({"x</t>", "y</t>", "z</t>", "w</t>"});
  const auto model = fixtures::peaked_model(vocab, 3, 1, 20.0);
  SearchTrace trace;
  const auto got = predict_top_k(model, vocab, std::span<const int>(), 2, 4, SearchLimits{}, &trace);
  const auto dist = predict(model, model.initial_state());
  std::vector<int> order = {0, 1, 2, 3};
  std::sort(order.begin(), order.end(), [&](int a, int b) { return dist(a) > dist(b); });
  ASSERT_EQ(got.size(), 2u);
  for (int i = 0; i < 2; ++i) {
    EXPECT_EQ(got[static_cast<std::size_t>(i)].units, std::vector<int>{order[static_cast<std::size_t>(i)]});
    EXPECT_DOUBLE_EQ(got[static_cast<std::size_t>(i)].prob, dist(order[static_cast<std::size_t>(i)]));
  }
  EXPECT_EQ(trace.iterations, 0u);
  EXPECT_EQ(trace.reason, StopReason::kBound);
}

TEST(PredictTopK, SixUnitFixtureMatchesEnumeration) {
  for (std::uint64_t seed = 1; seed <= 12; ++seed)
    for (std::size_t k : {1, 3, 5}) {
      const auto model = fixtures::peaked_model(six_units(), 3, seed);
      EXPECT_EQ(fixtures::compare_with_oracle(model, six_units(), {0, 4, 1}, k), "") << "seed " << seed << " k " << k;
    }
}

TEST(PredictTopK, ThreeBestWithinLengthThree) {
  // With beam = V the three best complete tokens of at most three units are
  // found even with the default limits in place.
  const auto model = fixtures::peaked_model(six_units(), 4, 21, 10.0);
  const auto got = predict_top_k(model, six_units(), std::span<const int>(), 3, 6);
  const auto g = oracle::PlainGru::from(model);
  const auto want = oracle::enumerate_tokens(g, six_units(), g.zero_state(), 3);
  ASSERT_EQ(got.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(got[i].units, want[i].units);
}

TEST(PredictTopK, NeverProposesEmptyToken) {
  const SubwordVocabulary vocab({"a", "</t>"});
  auto model = fixtures::peaked_model(vocab, 2, 3, 1.0);
  model.params.out_b(1) = 5.0;  // the bare marker dominates
  const auto got = predict_top_k(model, vocab, std::span<const int>(), 3, 2, SearchLimits::disabled());
  for (const auto& c : got) EXPECT_FALSE(c.text.empty());
  ASSERT_FALSE(got.empty());
  EXPECT_EQ(got[0].text, "a");
}

TEST(PredictTopK, ResultsAreSoundUnderDefaultLimits) {
  std::vector<std::string> units = {"</t>"};
  for (char c = 'a'; c <= 'h'; ++c) {
    units.emplace_back(1, c);
    units.push_back(std::string(1, c) + "</t>");
  }
  const SubwordVocabulary vocab(units);
  const std::vector<int> history = {3, 1, 6, 2};
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto model = fixtures::peaked_model(vocab, 6, seed, 6.0);
    const auto got = predict_top_k(model, vocab, std::span<const int>(history), 10, 5);
    for (std::size_t i = 0; i < got.size(); ++i) {
      const auto& c = got[i];
      ASSERT_FALSE(c.units.empty());
      for (std::size_t j = 0; j + 1 < c.units.size(); ++j) EXPECT_FALSE(vocab.is_terminal(c.units[j]));
      EXPECT_TRUE(vocab.is_terminal(c.units.back()));
      std::vector<int> full = history;
      full.insert(full.end(), c.units.begin(), c.units.end());
      const auto bits = sequence_nll(model, std::span<const int>(full));
      double sum = 0.0;
      for (std::size_t j = history.size(); j < bits.size(); ++j) sum += bits[j];
      EXPECT_NEAR(std::log2(c.prob), -sum, 1e-9);
      if (i > 0) EXPECT_FALSE(completion_before(c, got[i - 1]));
    }
  }
}

TEST(PredictTopK, ArgumentChecks) {
  const auto model = fixtures::peaked_model(six_units(), 2, 1);
  EXPECT_THROW(predict_top_k(model, six_units(), std::span<const int>(), 0, 3), ConfigError);
  EXPECT_THROW(predict_top_k(model, six_units(), std::span<const int>(), 3, 0), ConfigError);
  const SubwordVocabulary other({"a</t>"});
  EXPECT_THROW(predict_top_k(model, other, std::span<const int>(), 3, 3), DataError);
}

TEST(SearchLimits, DefaultThresholds) {
  const SearchLimits d;
  EXPECT_EQ(d.max_tokens_done, 5000u);
  EXPECT_DOUBLE_EQ(d.max_total, 0.8);
  EXPECT_EQ(d.max_iterations, 7u);
}

// "a" carries half the mass and twenty single-unit tokens share the rest, so
// every expansion of the lone candidate a...a completes twenty tokens.
struct Chain {
  SubwordVocabulary vocab;
  GruModel<double> model;
};

Chain chain() {
  std::vector<std::string> units = {"a"};
  for (int i = 0; i < 20; ++i) units.push_back("t" + std::to_string(10 + i) + "</t>");
  Chain c{SubwordVocabulary(units), {}};
  c.model = fixtures::peaked_model(c.vocab, 3, 1, 0.0);
  c.model.params.out_b(0) = std::log(20.0);
  return c;
}

TEST(Termination, TokensDoneThreshold) {
  const auto c = chain();
  SearchLimits limits = SearchLimits::disabled();
  limits.max_tokens_done = 50;
  SearchTrace trace;
  predict_top_k(c.model, c.vocab, std::span<const int>(), 20, 21, limits, &trace);
  EXPECT_EQ(trace.reason, StopReason::kTokensDone);
  EXPECT_EQ(trace.tokens_done, 60u);
  EXPECT_EQ(trace.iterations, 3u);
}

TEST(Termination, TotalMassThreshold) {
  const auto c = chain();
  SearchLimits limits = SearchLimits::disabled();
  limits.max_total = 0.6;
  SearchTrace trace;
  predict_top_k(c.model, c.vocab, std::span<const int>(), 20, 21, limits, &trace);
  EXPECT_EQ(trace.reason, StopReason::kTotalMass);
  EXPECT_NEAR(trace.total, 0.75, 1e-12);  // 0.5 from the first step, then 0.25
  EXPECT_EQ(trace.iterations, 1u);
}

TEST(Termination, IterationThreshold) {
  const auto c = chain();
  SearchLimits limits = SearchLimits::disabled();
  limits.max_iterations = 2;
  SearchTrace trace;
  predict_top_k(c.model, c.vocab, std::span<const int>(), 20, 21, limits, &trace);
  EXPECT_EQ(trace.reason, StopReason::kIterations);
  EXPECT_EQ(trace.iterations, 3u);
}

TEST(Termination, ProbabilityBound) {
  // Candidates a^j have probability 2^-j; the twenty first-step tokens have
  // 1/40 each, so the bound fires once 2^-j < 1/40, after five expansions.
  const auto c = chain();
  SearchTrace trace;
  const auto got = predict_top_k(c.model, c.vocab, std::span<const int>(), 20, 21, SearchLimits::disabled(), &trace);
  EXPECT_EQ(trace.reason, StopReason::kBound);
  EXPECT_EQ(trace.iterations, 5u);
  ASSERT_EQ(got.size(), 20u);
  for (const auto& t : got) {
    EXPECT_EQ(t.units.size(), 1u);
    EXPECT_NEAR(t.prob, 1.0 / 40, 1e-15);
  }
}

SubwordVocabulary letters() {
  std::vector<std::string> units;
  for (char ch = 'a'; ch < 'a' + 20; ++ch) {
    units.emplace_back(1, ch);
    units.push_back(std::string(1, ch) + "</t>");
  }
  return SubwordVocabulary(units);
}

TEST(Termination, DefaultLimitsAlwaysHalt) {
  const auto vocab = letters();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto model = fixtures::peaked_model(vocab, 5, seed, static_cast<double>(seed % 5) * 10.0);
    SearchTrace trace;
    predict_top_k(model, vocab, std::span<const int>(), 10, 10, SearchLimits{}, &trace);
    EXPECT_LE(trace.iterations, 8u);
    switch (trace.reason) {
      case StopReason::kTokensDone: EXPECT_GT(trace.tokens_done, 5000u); break;
      case StopReason::kTotalMass: EXPECT_GT(trace.total, 0.8); break;
      case StopReason::kIterations: EXPECT_EQ(trace.iterations, 8u); break;
      case StopReason::kBound: break;
    }
  }
}

}  // namespace
}  // namespace codelm
