#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "codelm/gru_model.hpp"
#include "support/oracles.hpp"
#include "support/tiny_gru.hpp"

namespace codelm {
namespace {

ModelConfig config(std::size_t V, std::size_t dim, std::size_t unroll = 8) { return {V, dim, dim, 1.0, unroll}; }

TEST(InitModel, ParameterCount) {
  const auto m = init_model(config(10, 8), 1);
  EXPECT_EQ(m.params.parameter_count(), 10u * 8 + 3 * (8 * 8 + 8 * 8 + 8) + 8 * 10 + 10);
}

TEST(InitModel, DeterministicPerSeed) {
  const auto a = init_model(config(10, 8), 42), b = init_model(config(10, 8), 42), c = init_model(config(10, 8), 43);
  EXPECT_EQ(parameter_checksum(a), parameter_checksum(b));
  EXPECT_NE(parameter_checksum(a), parameter_checksum(c));
}

TEST(InitModel, ValuesWithinInitRange) {
  const auto m = init_model(config(20, 16), 3);
  m.params.for_each([](const char*, std::span<const float> b) {
    for (float v : b) {
      ASSERT_GE(v, -0.05f);
      ASSERT_LE(v, 0.05f);
    }
  });
}

TEST(InitModel, RejectsBadConfig) {
  EXPECT_THROW(init_model(config(0, 8), 1), ConfigError);
  EXPECT_THROW(init_model(ModelConfig{5, 4, 4, 0.0, 8}, 1), ConfigError);
}

TEST(Forward, ZeroModelIsUniform) {
  const auto m = zero_model(config(7, 4));
  const auto step = forward_step(m, m.initial_state(), 3);
  for (Eigen::Index v = 0; v < 7; ++v) EXPECT_FLOAT_EQ(step.distribution(v), 1.0f / 7);
}

TEST(Forward, MatchesCommittedFixture) {
  const auto tiny = fixtures::load_tiny_gru();
  auto state = tiny.model.initial_state();
  for (std::size_t t = 0; t < tiny.sequence.size(); ++t) {
    const auto dist = predict(tiny.model, state);
    for (std::size_t v = 0; v < 5; ++v) EXPECT_NEAR(dist(static_cast<Eigen::Index>(v)), tiny.distributions[t][v], 1e-12);
    state = forward_step(tiny.model, state, tiny.sequence[t]).state;
  }
  const auto bits = sequence_nll(tiny.model, std::span<const int>(tiny.sequence));
  ASSERT_EQ(bits.size(), tiny.bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) EXPECT_NEAR(bits[i], tiny.bits[i], 1e-10);
  // Single precision tracks the same values.
  const auto as_float = cast_model<float>(tiny.model);
  const auto fbits = sequence_nll(as_float, std::span<const int>(tiny.sequence));
  for (std::size_t i = 0; i < bits.size(); ++i) EXPECT_NEAR(fbits[i], tiny.bits[i], 1e-4);
}

TEST(Forward, MatchesScalarLoopOracle) {
  const auto m = init_model<double>(config(9, 6), 17);
  auto g = oracle::PlainGru::from(m);
  std::mt19937_64 rng(1);
  std::vector<int> units;
  for (int i = 0; i < 40; ++i) units.push_back(static_cast<int>(rng() % 9));
  // Larger weights exercise the nonlinearities.
  auto big = m;
  big.params.for_each([](const char*, std::span<double> b) {
    for (auto& v : b) v *= 30.0;
  });
  g = oracle::PlainGru::from(big);
  const auto bits = sequence_nll(big, std::span<const int>(units));
  auto h = g.zero_state();
  for (std::size_t i = 0; i < units.size(); ++i) {
    const auto d = g.distribution(h);
    EXPECT_NEAR(bits[i], -std::log2(d[static_cast<std::size_t>(units[i])]), 1e-9);
    h = g.step(h, units[i]);
  }
}

TEST(Forward, DistributionsAreNormalized) {
  const auto m = init_model(config(50, 16), 5);
  auto big = m;
  big.params.for_each([](const char*, std::span<float> b) {
    for (auto& v : b) v *= 40.0f;
  });
  std::mt19937_64 rng(2);
  auto state = big.initial_state();
  for (int i = 0; i < 300; ++i) {
    const auto step = forward_step(big, state, static_cast<int>(rng() % 50));
    ASSERT_NEAR(static_cast<double>(step.distribution.sum()), 1.0, 1e-6);
    ASSERT_GE(step.distribution.minCoeff(), 0.0f);
    state = step.state;
  }
}

TEST(Forward, RejectsOutOfRangeUnit) {
  const auto m = zero_model(config(4, 2));
  EXPECT_THROW(forward_step(m, m.initial_state(), 4), DataError);
  const std::vector<int> bad = {0, -1};
  EXPECT_THROW(sequence_nll(m, std::span<const int>(bad)), DataError);
}

TEST(SequenceNll, UniformIsTwoBitsForFourUnits) {
  const auto m = zero_model(config(4, 3));
  const std::vector<int> units = {0, 3, 2, 2, 1};
  for (double b : sequence_nll(m, std::span<const int>(units))) EXPECT_DOUBLE_EQ(b, 2.0);
  EXPECT_TRUE(sequence_nll(m, std::span<const int>()).empty());
}

TEST(SequenceNll, PrefixInvariance) {
  const auto m = init_model<double>(config(8, 5), 9);
  auto big = m;
  big.params.for_each([](const char*, std::span<double> b) {
    for (auto& v : b) v *= 20.0;
  });
  std::vector<int> units = {1, 4, 2, 7, 0, 3, 3, 6, 5, 1};
  const auto base = sequence_nll(big, std::span<const int>(units));
  for (std::size_t j = 0; j < units.size(); ++j) {
    auto changed = units;
    changed[j] = (changed[j] + 1) % 8;
    const auto other = sequence_nll(big, std::span<const int>(changed));
    for (std::size_t i = 0; i < j; ++i) ASSERT_EQ(other[i], base[i]) << "i=" << i << " j=" << j;
    EXPECT_NE(other[j], base[j]);
  }
}

// Central finite differences on every parameter of a double model.
void check_gradients(const ModelConfig& cfg, std::uint64_t seed, const StepOptions& options,
                     const std::vector<std::vector<int>>& windows, bool carried_state) {
  auto model = init_model<double>(cfg, seed);
  model.params.for_each([](const char*, std::span<double> b) {
    for (auto& v : b) v *= 16.0;  // roughly [-0.8, 0.8]
  });
  std::vector<TrainWindow<double>> batch;
  std::mt19937_64 srng(seed + 1);
  for (const auto& w : windows) {
    auto h = model.initial_state();
    if (carried_state)
      for (Eigen::Index i = 0; i < h.size(); ++i) h(i) = 0.5 * std::sin(static_cast<double>(srng() % 100));
    batch.push_back({std::span<const int>(w), h});
  }
  const std::uint64_t mask_seed = 77;
  auto objective = [&](const GruModel<double>& m, GruParameters<double>* grads) {
    std::mt19937_64 rng(mask_seed);
    auto opts = options;
    opts.rng = &rng;
    return batch_loss(m, std::span<const TrainWindow<double>>(batch), opts, grads).objective;
  };
  GruParameters<double> grads;
  objective(model, &grads);
  std::vector<std::span<const double>> analytic;
  grads.for_each([&](const char*, std::span<const double> b) { analytic.push_back(b); });

  std::size_t block = 0;
  const double eps = 1e-5;
  auto probe = model;
  std::vector<std::pair<std::string, std::span<double>>> blocks;
  probe.params.for_each([&](const char* name, std::span<double> b) { blocks.emplace_back(name, b); });
  for (auto& [name, b] : blocks) {
    double max_abs = 0.0;
    for (std::size_t k = 0; k < b.size(); ++k) {
      const double keep = b[k];
      b[k] = keep + eps;
      const double up = objective(probe, nullptr);
      b[k] = keep - eps;
      const double down = objective(probe, nullptr);
      b[k] = keep;
      const double numeric = (up - down) / (2 * eps);
      const double a = analytic[block][k];
      max_abs = std::max(max_abs, std::abs(a));
      EXPECT_NEAR(a, numeric, 1e-3 * std::max(std::abs(a), std::abs(numeric)) + 1e-8) << name << "[" << k << "]";
    }
    if (name != "embedding") EXPECT_GT(max_abs, 0.0) << name << " received no gradient";
    ++block;
  }
}

TEST(Gradient, MatchesFiniteDifferences) {
  check_gradients(config(7, 4, 6), 1, {}, {{0, 3, 6, 2, 2, 5}}, false);
}

TEST(Gradient, MultipleWindowsWithCarriedState) {
  check_gradients(config(6, 3, 5), 2, {}, {{1, 2, 3, 4, 5}, {5, 5, 0, 1}, {2}}, true);
}

TEST(Gradient, UnitMeanScaling) {
  StepOptions o;
  o.scaling = LossScaling::kUnitMean;
  check_gradients(config(5, 3, 4), 3, o, {{1, 2, 3, 4}, {0, 0, 1}}, true);
}

TEST(Gradient, WithDropoutMasksHeldFixed) {
  StepOptions o;
  o.dropout_keep = 0.6;
  check_gradients(config(6, 4, 5), 4, o, {{0, 1, 2, 3, 4}, {5, 4, 3, 2, 1}}, false);
}

TEST(SgdStep, ZeroLearningRateChangesNothing) {
  auto m = init_model(config(6, 4), 8);
  const auto before = parameter_checksum(m);
  const std::vector<int> units = {1, 2, 3, 4, 5, 0};
  const std::vector<TrainWindow<float>> batch = {{units, m.initial_state()}};
  const auto loss = sgd_step(m, std::span<const TrainWindow<float>>(batch), 0.0);
  EXPECT_GT(loss.objective, 0.0);
  EXPECT_EQ(parameter_checksum(m), before);
  EXPECT_THROW(sgd_step(m, std::span<const TrainWindow<float>>(batch), -0.1), ConfigError);
}

TEST(SgdStep, MemorizesTwoTokenCycle) {
  auto m = init_model(config(4, 8, 20), 12);
  std::vector<int> units;
  for (int i = 0; i < 20; ++i) units.push_back(i % 2 == 0 ? 1 : 3);
  const std::vector<TrainWindow<float>> batch = {{units, m.initial_state()}};
  double first = 0.0, last = 0.0;
  for (int step = 0; step < 300; ++step) {
    const auto loss = sgd_step(m, std::span<const TrainWindow<float>>(batch), 0.1);
    if (step == 0) first = loss.bits_per_unit;
    last = loss.bits_per_unit;
  }
  EXPECT_NEAR(first, 2.0, 0.05);
  EXPECT_LT(last, 0.1);
}

TEST(SgdStep, ClippingBoundsTheUpdate) {
  auto m = init_model<double>(config(6, 4), 8);
  m.params.for_each([](const char*, std::span<double> b) {
    for (auto& v : b) v *= 40.0;
  });
  const std::vector<int> units = {1, 2, 3, 4, 5, 0, 1, 2};
  const std::vector<TrainWindow<double>> batch = {{units, m.initial_state()}};
  auto before = m;
  StepOptions o;
  o.clip_norm = 0.5;
  sgd_step(m, std::span<const TrainWindow<double>>(batch), 1.0, o);
  double sq = 0.0;
  std::vector<std::span<const double>> old;
  before.params.for_each([&](const char*, std::span<const double> b) { old.push_back(b); });
  std::size_t i = 0;
  m.params.for_each([&](const char*, std::span<const double> b) {
    for (std::size_t k = 0; k < b.size(); ++k) sq += (b[k] - old[i][k]) * (b[k] - old[i][k]);
    ++i;
  });
  EXPECT_LE(std::sqrt(sq), 0.5 + 1e-9);
}

TEST(SgdStep, NonFiniteLossAbortsWithoutWriting) {
  auto m = init_model(config(4, 3), 1);
  m.params.out_b(2) = std::numeric_limits<float>::quiet_NaN();
  const auto before = parameter_checksum(m);
  const std::vector<int> units = {0, 1, 2};
  const std::vector<TrainWindow<float>> batch = {{units, m.initial_state()}};
  EXPECT_THROW(sgd_step(m, std::span<const TrainWindow<float>>(batch), 0.1), NumericError);
  EXPECT_EQ(parameter_checksum(m), before);
}

TEST(SgdStep, DropoutRequiresEngine) {
  auto m = init_model(config(4, 3), 1);
  const std::vector<int> units = {0, 1, 2};
  const std::vector<TrainWindow<float>> batch = {{units, m.initial_state()}};
  StepOptions o;
  o.dropout_keep = 0.5;
  EXPECT_THROW(sgd_step(m, std::span<const TrainWindow<float>>(batch), 0.1, o), ConfigError);
}

TEST(BatchLoss, MatchesSequenceNllWithoutDropout) {
  const auto m = init_model(config(9, 6), 4);
  const std::vector<int> units = {1, 5, 2, 8, 8, 0, 3};
  const std::vector<TrainWindow<float>> batch = {{units, m.initial_state()}};
  const auto loss = batch_loss(m, std::span<const TrainWindow<float>>(batch), StepOptions{}, static_cast<GruParameters<float>*>(nullptr));
  double sum = 0.0;
  for (double b : sequence_nll(m, std::span<const int>(units))) sum += b;
  EXPECT_NEAR(loss.bits_per_unit, sum / units.size(), 1e-5);
  EXPECT_EQ(loss.units, units.size());
}

}  // namespace
}  // namespace codelm
