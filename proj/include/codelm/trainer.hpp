// Copyright 2026 The codelm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdio>
#include <functional>
#include <numeric>
#include <optional>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "codelm/evaluation.hpp"
#include "codelm/gru_model.hpp"

namespace codelm {

struct TrainSchedule {
  double initial_lr = 0.1;
  std::size_t max_epochs = 50;
  std::size_t max_halvings = 4;
  std::size_t batch_size = 32;
  std::size_t unroll = 200;

  void validate() const {
    if (!(initial_lr > 0.0) || max_epochs < 1 || batch_size < 1 || unroll < 1)
      throw ConfigError("training schedule fields must be positive");
  }
};

struct EpochRecord {
  std::size_t epoch = 0;  // 1-based
  double train_loss = 0.0;  // mean bits per unit over the epoch
  double valid_bits = 0.0;  // validation bits per token after the epoch
  double lr = 0.0;          // learning rate used during the epoch
};

struct TrainLog {
  std::vector<EpochRecord> epochs;
};

inline std::string format_epoch(const EpochRecord& r) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "epoch=%zu loss=%.6f valid_bits=%.6f lr=%.6g", r.epoch, r.train_loss, r.valid_bits,
                r.lr);
  return buf;
}

inline std::string format_train_log(const TrainLog& log) {
  std::string out;
  for (const auto& r : log.epochs) out += format_epoch(r) + "\n";
  return out;
}

/// Learning-rate halving rule: whenever validation entropy rises above the
/// previous epoch's value the rate is halved; the increase after
/// `max_halvings` halvings stops training instead.
class LrSchedule {
 public:
  enum class Decision { kContinue, kHalve, kStop };

  LrSchedule(double initial_lr, std::size_t max_halvings) : lr_(initial_lr), max_halvings_(max_halvings) {}

  Decision observe(double valid_bits) {
    Decision d = Decision::kContinue;
    if (previous_ && valid_bits > *previous_) {
      if (halvings_ >= max_halvings_) {
        d = Decision::kStop;
      } else {
        ++halvings_;
        lr_ *= 0.5;
        d = Decision::kHalve;
      }
    }
    previous_ = valid_bits;
    return d;
  }

  double lr() const { return lr_; }
  std::size_t halvings() const { return halvings_; }

 private:
  double lr_;
  std::size_t max_halvings_;
  std::size_t halvings_ = 0;
  std::optional<double> previous_;
};

struct TrainOptions {
  std::uint64_t seed = 1;
  double clip_norm = 5.0;
  LossScaling scaling = LossScaling::kSumOverTime;
  std::size_t jobs = 1;  // validation only; updates are sequential
  std::function<void(const EpochRecord&)> on_epoch;
};

template <typename Scalar>
struct TrainResult {
  GruModel<Scalar> model;  // weights from the epoch with the lowest validation entropy
  TrainLog log;
};

/// Validation entropy in bits per token; no parameter updates.
template <typename Scalar>
double validate(const GruModel<Scalar>& model, std::span<const EncodedFile> valid, std::size_t jobs = 1) {
  return token_cross_entropy(model, valid, jobs).bits_per_token;
}

namespace detail {

// Streams files through `lanes` parallel slots. Each slot walks one file in
// unroll-length windows, carrying its hidden state, and takes the next file
// (fresh state) when its current one ends.
template <typename Scalar>
class WindowBatcher {
 public:
  WindowBatcher(const GruModel<Scalar>& model, std::span<const EncodedFile> files, std::vector<std::size_t> order,
                std::size_t lanes, std::size_t unroll)
      : model_(model), files_(files), order_(std::move(order)), unroll_(unroll), lanes_(lanes) {}

  // False once every file has been consumed.
  bool next(std::vector<TrainWindow<Scalar>>& batch, std::vector<std::size_t>& lane_of) {
    batch.clear();
    lane_of.clear();
    for (std::size_t l = 0; l < lanes_.size(); ++l) {
      auto& lane = lanes_[l];
      if (!lane.active || lane.offset >= files_[lane.file].units.size()) {
        lane.active = false;
        while (next_file_ < order_.size()) {
          const std::size_t f = order_[next_file_++];
          if (files_[f].units.empty()) continue;
          lane = {true, f, 0, model_.initial_state()};
          break;
        }
        if (!lane.active) continue;
      }
      const auto& units = files_[lane.file].units;
      const std::size_t len = std::min(unroll_, units.size() - lane.offset);
      batch.push_back({std::span<const int>(units).subspan(lane.offset, len), lane.state});
      lane_of.push_back(l);
      lane.offset += len;
    }
    return !batch.empty();
  }

  void carry(const std::vector<std::size_t>& lane_of, const BatchLoss<Scalar>& loss) {
    for (std::size_t i = 0; i < lane_of.size(); ++i) lanes_[lane_of[i]].state = loss.final_states[i];
  }

 private:
  struct Lane {
    bool active = false;
    std::size_t file = 0;
    std::size_t offset = 0;
    typename GruModel<Scalar>::Vector state;
  };
  const GruModel<Scalar>& model_;
  std::span<const EncodedFile> files_;
  std::vector<std::size_t> order_;
  std::size_t unroll_;
  std::size_t next_file_ = 0;
  std::vector<Lane> lanes_;
};

}  // namespace detail

/// Epoch loop with dropout from the model config, validation after every
/// epoch, learning-rate halving, and best-checkpoint selection.
template <typename Scalar>
TrainResult<Scalar> train(GruModel<Scalar> model, std::span<const EncodedFile> train_files,
                          std::span<const EncodedFile> valid_files, const TrainSchedule& schedule,
                          const TrainOptions& options = {}) {
  schedule.validate();
  std::size_t train_units = 0;
  for (const auto& f : train_files) train_units += f.units.size();
  if (train_units == 0) throw ConfigError("training corpus is empty");

  std::mt19937_64 rng(options.seed);
  LrSchedule lr_schedule(schedule.initial_lr, schedule.max_halvings);
  TrainResult<Scalar> result{model, {}};
  double best_valid = std::numeric_limits<double>::infinity();
  StepOptions step{model.config.dropout_keep, options.clip_norm, options.scaling, &rng};

  for (std::size_t epoch = 1; epoch <= schedule.max_epochs; ++epoch) {
    std::vector<std::size_t> order(train_files.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng() % i]);

    const double lr = lr_schedule.lr();
    detail::WindowBatcher<Scalar> batcher(model, train_files, std::move(order), schedule.batch_size, schedule.unroll);
    std::vector<TrainWindow<Scalar>> batch;
    std::vector<std::size_t> lane_of;
    double bits_sum = 0.0;
    std::size_t units = 0;
    while (batcher.next(batch, lane_of)) {
      const auto loss = sgd_step(model, std::span<const TrainWindow<Scalar>>(batch), lr, step);
      bits_sum += loss.bits_per_unit * static_cast<double>(loss.units);
      units += loss.units;
      batcher.carry(lane_of, loss);
    }

    EpochRecord record{epoch, units ? bits_sum / static_cast<double>(units) : 0.0,
                       validate(model, valid_files, options.jobs), lr};
    result.log.epochs.push_back(record);
    if (options.on_epoch) options.on_epoch(record);
    if (record.valid_bits < best_valid) {
      best_valid = record.valid_bits;
      result.model = model;
    }
    if (lr_schedule.observe(record.valid_bits) == LrSchedule::Decision::kStop) break;
  }
  result.model.final_lr = result.log.epochs.back().lr;
  return result;
}

}  // namespace codelm
