// Copyright 2026 The codelm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <cstring>
#include <random>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "codelm/error.hpp"

namespace codelm {

struct ModelConfig {
  std::size_t vocab_size = 0;
  std::size_t embed_dim = 512;
  std::size_t hidden_dim = 512;
  double dropout_keep = 0.5;
  std::size_t unroll = 200;

  void validate() const {
    if (vocab_size < 1 || embed_dim < 1 || hidden_dim < 1 || unroll < 1)
      throw ConfigError("model dimensions and unroll length must be at least 1");
    if (!(dropout_keep > 0.0 && dropout_keep <= 1.0)) throw ConfigError("dropout keep probability must be in (0, 1]");
  }

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

/// Parameter blocks of a single-layer GRU language model. Block order here is
/// the checkpoint order.
template <typename Scalar>
struct GruParameters {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Matrix embedding;  // embed_dim x V, one column per unit
  Matrix w_update, u_update;
  Vector b_update;
  Matrix w_reset, u_reset;
  Vector b_reset;
  Matrix w_cand, u_cand;
  Vector b_cand;
  Matrix out_w;  // V x hidden_dim
  Vector out_b;

  void resize(const ModelConfig& c) {
    const auto V = static_cast<Eigen::Index>(c.vocab_size), E = static_cast<Eigen::Index>(c.embed_dim),
               H = static_cast<Eigen::Index>(c.hidden_dim);
    embedding.resize(E, V);
    for (Matrix* w : {&w_update, &w_reset, &w_cand}) w->resize(H, E);
    for (Matrix* u : {&u_update, &u_reset, &u_cand}) u->resize(H, H);
    for (Vector* b : {&b_update, &b_reset, &b_cand}) b->resize(H);
    out_w.resize(V, H);
    out_b.resize(V);
  }

  void set_zero() {
    for_each([](const char*, std::span<Scalar> block) { std::fill(block.begin(), block.end(), Scalar(0)); });
  }

  // fn(name, span over the block's storage), in checkpoint order.
  template <typename Fn>
  void for_each(Fn&& fn) {
    visit(*this, fn);
  }
  template <typename Fn>
  void for_each(Fn&& fn) const {
    visit(*this, fn);
  }

  std::size_t parameter_count() const {
    std::size_t n = 0;
    for_each([&](const char*, std::span<const Scalar> block) { n += block.size(); });
    return n;
  }

 private:
  template <typename Self, typename Fn>
  static void visit(Self& self, Fn& fn) {
    auto block = [&](const char* name, auto& m) {
      using Elem = std::remove_pointer_t<decltype(m.data())>;
      fn(name, std::span<Elem>(m.data(), static_cast<std::size_t>(m.size())));
    };
    block("embedding", self.embedding);
    block("w_update", self.w_update);
    block("u_update", self.u_update);
    block("b_update", self.b_update);
    block("w_reset", self.w_reset);
    block("u_reset", self.u_reset);
    block("b_reset", self.b_reset);
    block("w_cand", self.w_cand);
    block("u_cand", self.u_cand);
    block("b_cand", self.b_cand);
    block("out_w", self.out_w);
    block("out_b", self.out_b);
  }
};

template <typename Scalar>
struct GruModel {
  using Matrix = typename GruParameters<Scalar>::Matrix;
  using Vector = typename GruParameters<Scalar>::Vector;

  ModelConfig config;
  GruParameters<Scalar> params;
  std::uint64_t vocab_hash = 0;  // content hash of the merge table the model was built for
  double final_lr = 0.0;         // learning rate in effect when training finished

  std::size_t vocab_size() const { return config.vocab_size; }
  Vector initial_state() const { return Vector::Zero(static_cast<Eigen::Index>(config.hidden_dim)); }
};

namespace detail {

// Uniform double in [0, 1) from the raw 53 high bits; identical on every
// standard library, unlike std::uniform_real_distribution.
inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

template <typename Scalar>
Scalar sigmoid(Scalar x) {
  return Scalar(1) / (Scalar(1) + std::exp(-x));
}

// In-place column softmax with max subtraction.
template <typename Derived>
void softmax_columns(Eigen::MatrixBase<Derived>& logits) {
  for (Eigen::Index j = 0; j < logits.cols(); ++j) {
    auto col = logits.col(j);
    const auto mx = col.maxCoeff();
    col = (col.array() - mx).exp().matrix();
    col /= col.sum();
  }
}

}  // namespace detail

/// Uniform [-0.05, 0.05] initialization, deterministic in `seed`.
template <typename Scalar = float>
GruModel<Scalar> init_model(const ModelConfig& config, std::uint64_t seed) {
  config.validate();
  GruModel<Scalar> model;
  model.config = config;
  model.params.resize(config);
  std::mt19937_64 rng(seed);
  model.params.for_each([&](const char*, std::span<Scalar> block) {
    for (auto& v : block) v = static_cast<Scalar>(detail::unit_uniform(rng) * 0.1 - 0.05);
  });
  return model;
}

template <typename Scalar = float>
GruModel<Scalar> zero_model(const ModelConfig& config) {
  config.validate();
  GruModel<Scalar> model;
  model.config = config;
  model.params.resize(config);
  model.params.set_zero();
  return model;
}

template <typename To, typename From>
GruModel<To> cast_model(const GruModel<From>& src) {
  GruModel<To> dst;
  dst.config = src.config;
  dst.vocab_hash = src.vocab_hash;
  dst.final_lr = src.final_lr;
  dst.params.resize(src.config);
  std::vector<std::span<const From>> blocks;
  src.params.for_each([&](const char*, std::span<const From> b) { blocks.push_back(b); });
  std::size_t i = 0;
  dst.params.for_each([&](const char*, std::span<To> b) {
    for (std::size_t k = 0; k < b.size(); ++k) b[k] = static_cast<To>(blocks[i][k]);
    ++i;
  });
  return dst;
}

/// Next-unit distribution for a hidden state (inference, no dropout).
template <typename Scalar>
typename GruModel<Scalar>::Vector predict(const GruModel<Scalar>& model, const typename GruModel<Scalar>::Vector& state) {
  typename GruModel<Scalar>::Vector logits = model.params.out_w * state + model.params.out_b;
  detail::softmax_columns(logits);
  return logits;
}

/// One GRU transition consuming `unit_id`.
template <typename Scalar>
typename GruModel<Scalar>::Vector advance(const GruModel<Scalar>& model, const typename GruModel<Scalar>::Vector& state,
                                          int unit_id) {
  const auto& p = model.params;
  const auto x = p.embedding.col(unit_id);
  using Vector = typename GruModel<Scalar>::Vector;
  Vector z = (p.w_update * x + p.u_update * state + p.b_update).unaryExpr(&detail::sigmoid<Scalar>);
  Vector r = (p.w_reset * x + p.u_reset * state + p.b_reset).unaryExpr(&detail::sigmoid<Scalar>);
  Vector n = (p.w_cand * x + p.u_cand * r.cwiseProduct(state) + p.b_cand).array().tanh().matrix();
  return (Vector::Ones(z.size()) - z).cwiseProduct(state) + z.cwiseProduct(n);
}

template <typename Scalar>
struct StepResult {
  typename GruModel<Scalar>::Vector distribution;  // over the unit following `unit_id`
  typename GruModel<Scalar>::Vector state;
};

/// Consumes one unit and returns the distribution over the next one.
template <typename Scalar>
StepResult<Scalar> forward_step(const GruModel<Scalar>& model, const typename GruModel<Scalar>::Vector& state,
                                int unit_id) {
  if (unit_id < 0 || static_cast<std::size_t>(unit_id) >= model.vocab_size())
    throw DataError("unit id " + std::to_string(unit_id) + " outside the model vocabulary");
  StepResult<Scalar> out;
  out.state = advance(model, state, unit_id);
  out.distribution = predict(model, out.state);
  return out;
}

/// Per-unit -log2 p(unit_i | units before i). `state` enters as the context
/// before units[0] and leaves as the state after the last unit.
template <typename Scalar>
std::vector<double> score_units(const GruModel<Scalar>& model, std::span<const int> units,
                                typename GruModel<Scalar>::Vector& state) {
  using Matrix = typename GruModel<Scalar>::Matrix;
  const auto H = static_cast<Eigen::Index>(model.config.hidden_dim);
  const std::size_t V = model.vocab_size();
  std::vector<double> bits;
  bits.reserve(units.size());
  constexpr std::size_t kChunk = 256;
  Matrix states(H, static_cast<Eigen::Index>(kChunk));
  for (std::size_t begin = 0; begin < units.size(); begin += kChunk) {
    const std::size_t len = std::min(kChunk, units.size() - begin);
    for (std::size_t t = 0; t < len; ++t) {
      const int u = units[begin + t];
      if (u < 0 || static_cast<std::size_t>(u) >= V)
        throw DataError("unit id " + std::to_string(u) + " outside the model vocabulary");
      states.col(static_cast<Eigen::Index>(t)) = state;
      state = advance(model, state, u);
    }
    Matrix logits = model.params.out_w * states.leftCols(static_cast<Eigen::Index>(len));
    logits.colwise() += model.params.out_b;
    for (std::size_t t = 0; t < len; ++t) {
      auto col = logits.col(static_cast<Eigen::Index>(t));
      const double mx = static_cast<double>(col.maxCoeff());
      const double lse = mx + std::log(static_cast<double>((col.array() - static_cast<Scalar>(mx)).exp().sum()));
      bits.push_back((lse - static_cast<double>(col(units[begin + t]))) / std::log(2.0));
    }
  }
  return bits;
}

/// Per-unit negative log2-probabilities from the zero initial state.
template <typename Scalar>
std::vector<double> sequence_nll(const GruModel<Scalar>& model, std::span<const int> units) {
  auto state = model.initial_state();
  return score_units(model, units, state);
}

// ---------------------------------------------------------------------------
// Training

/// A contiguous run of units scored and consumed in order, starting from a
/// carried-in hidden state that is treated as a constant (truncated BPTT).
template <typename Scalar>
struct TrainWindow {
  std::span<const int> units;
  typename GruModel<Scalar>::Vector initial_state;
};

enum class LossScaling {
  kSumOverTime,  // sum of unit losses over each window, averaged over windows
  kUnitMean,     // average over every unit in the batch
};

struct StepOptions {
  double dropout_keep = 1.0;
  double clip_norm = 5.0;  // global gradient norm; <= 0 disables clipping
  LossScaling scaling = LossScaling::kSumOverTime;
  std::mt19937_64* rng = nullptr;  // required when dropout_keep < 1
};

template <typename Scalar>
struct BatchLoss {
  double objective = 0.0;      // the differentiated quantity (nats)
  double bits_per_unit = 0.0;  // mean unit cross-entropy, base 2
  std::size_t units = 0;
  std::vector<typename GruModel<Scalar>::Vector> final_states;  // per window, after its last unit
};

/// Computes the loss of a batch and, when `grads` is non-null, its exact
/// gradient (accumulated into zeroed `grads`).
template <typename Scalar>
BatchLoss<Scalar> batch_loss(const GruModel<Scalar>& model, std::span<const TrainWindow<Scalar>> batch,
                             const StepOptions& options, GruParameters<Scalar>* grads) {
  using Matrix = typename GruModel<Scalar>::Matrix;
  using Vector = typename GruModel<Scalar>::Vector;
  using Eigen::Index;
  const auto& p = model.params;
  const Index E = static_cast<Index>(model.config.embed_dim), H = static_cast<Index>(model.config.hidden_dim);
  const Index V = static_cast<Index>(model.vocab_size());
  const bool dropout = options.dropout_keep < 1.0;
  if (dropout && options.rng == nullptr) throw ConfigError("dropout requires a random engine");
  const Scalar inv_keep = static_cast<Scalar>(1.0 / options.dropout_keep);

  BatchLoss<Scalar> result;
  for (const auto& w : batch) result.units += w.units.size();
  if (grads) {
    grads->resize(model.config);
    grads->set_zero();
  }
  if (result.units == 0) {
    for (const auto& w : batch) result.final_states.push_back(w.initial_state);
    return result;
  }
  const double scale = options.scaling == LossScaling::kUnitMean ? 1.0 / static_cast<double>(result.units)
                                                                  : 1.0 / static_cast<double>(batch.size());
  auto mask = [&](Index rows, Index cols) {
    Matrix m = Matrix::Constant(rows, cols, Scalar(1));
    if (dropout) {
      for (Index k = 0; k < m.size(); ++k)
        m.data()[k] = detail::unit_uniform(*options.rng) < options.dropout_keep ? inv_keep : Scalar(0);
    }
    return m;
  };

  double total_nats = 0.0;
  for (const auto& window : batch) {
    const Index L = static_cast<Index>(window.units.size());
    if (L == 0) {
      result.final_states.push_back(window.initial_state);
      continue;
    }
    for (int u : window.units)
      if (u < 0 || u >= V) throw DataError("unit id " + std::to_string(u) + " outside the model vocabulary");
    const Matrix emb_mask = mask(E, L);
    const Matrix out_mask = mask(H, L);
    Matrix X(E, L);
    for (Index t = 0; t < L; ++t) X.col(t) = p.embedding.col(window.units[static_cast<std::size_t>(t)]).cwiseProduct(emb_mask.col(t));

    Matrix ax_z = p.w_update * X, ax_r = p.w_reset * X, ax_n = p.w_cand * X;
    ax_z.colwise() += p.b_update;
    ax_r.colwise() += p.b_reset;
    ax_n.colwise() += p.b_cand;

    Matrix Hs(H, L + 1), Z(H, L), R(H, L), N(H, L);
    Hs.col(0) = window.initial_state;
    for (Index t = 0; t < L; ++t) {
      const auto h = Hs.col(t);
      Z.col(t) = (ax_z.col(t) + p.u_update * h).unaryExpr(&detail::sigmoid<Scalar>);
      R.col(t) = (ax_r.col(t) + p.u_reset * h).unaryExpr(&detail::sigmoid<Scalar>);
      N.col(t) = (ax_n.col(t) + p.u_cand * R.col(t).cwiseProduct(h)).array().tanh().matrix();
      Hs.col(t + 1) = (Vector::Ones(H) - Z.col(t)).cwiseProduct(h) + Z.col(t).cwiseProduct(N.col(t));
    }
    result.final_states.push_back(Hs.col(L));

    // Output at t predicts units[t] from the state before consuming it.
    const Matrix Hd = Hs.leftCols(L).cwiseProduct(out_mask);
    Matrix probs = p.out_w * Hd;
    probs.colwise() += p.out_b;
    detail::softmax_columns(probs);
    for (Index t = 0; t < L; ++t) total_nats -= std::log(static_cast<double>(probs(window.units[static_cast<std::size_t>(t)], t)));
    if (!grads) continue;

    Matrix& dlogits = probs;
    for (Index t = 0; t < L; ++t) dlogits(window.units[static_cast<std::size_t>(t)], t) -= Scalar(1);
    dlogits *= static_cast<Scalar>(scale);
    grads->out_w.noalias() += dlogits * Hd.transpose();
    grads->out_b += dlogits.rowwise().sum();
    const Matrix dH_out = (p.out_w.transpose() * dlogits).cwiseProduct(out_mask);

    // Step t consumes units[t]; its output h_{t+1} feeds the loss at t+1, so
    // the last step carries no gradient.
    Matrix dAz = Matrix::Zero(H, L), dAr = Matrix::Zero(H, L), dAn = Matrix::Zero(H, L);
    Vector carry = Vector::Zero(H);
    for (Index t = L - 2; t >= 0; --t) {
      const Vector dh_next = dH_out.col(t + 1) + carry;
      const auto h = Hs.col(t);
      const auto z = Z.col(t);
      const auto r = R.col(t);
      const auto n = N.col(t);
      const Vector dn = dh_next.cwiseProduct(z);
      const Vector dz = dh_next.cwiseProduct(n - h);
      dAn.col(t) = dn.cwiseProduct((Vector::Ones(H) - n.cwiseProduct(n)));
      const Vector d_rh = p.u_cand.transpose() * dAn.col(t);
      const Vector dr = d_rh.cwiseProduct(h);
      dAz.col(t) = dz.cwiseProduct(z.cwiseProduct(Vector::Ones(H) - z));
      dAr.col(t) = dr.cwiseProduct(r.cwiseProduct(Vector::Ones(H) - r));
      carry = dh_next.cwiseProduct(Vector::Ones(H) - z) + d_rh.cwiseProduct(r) + p.u_update.transpose() * dAz.col(t) +
              p.u_reset.transpose() * dAr.col(t);
    }
    const Matrix Hprev = Hs.leftCols(L);
    grads->w_update.noalias() += dAz * X.transpose();
    grads->w_reset.noalias() += dAr * X.transpose();
    grads->w_cand.noalias() += dAn * X.transpose();
    grads->u_update.noalias() += dAz * Hprev.transpose();
    grads->u_reset.noalias() += dAr * Hprev.transpose();
    grads->u_cand.noalias() += dAn * R.cwiseProduct(Hprev).transpose();
    grads->b_update += dAz.rowwise().sum();
    grads->b_reset += dAr.rowwise().sum();
    grads->b_cand += dAn.rowwise().sum();
    const Matrix dX = (p.w_update.transpose() * dAz + p.w_reset.transpose() * dAr + p.w_cand.transpose() * dAn)
                          .cwiseProduct(emb_mask);
    for (Index t = 0; t < L; ++t) grads->embedding.col(window.units[static_cast<std::size_t>(t)]) += dX.col(t);
  }
  result.objective = total_nats * scale;
  result.bits_per_unit = total_nats / static_cast<double>(result.units) / std::log(2.0);
  return result;
}

template <typename Scalar>
double global_norm(const GruParameters<Scalar>& params) {
  double sq = 0.0;
  params.for_each([&](const char*, std::span<const Scalar> b) {
    for (Scalar v : b) sq += static_cast<double>(v) * static_cast<double>(v);
  });
  return std::sqrt(sq);
}

template <typename Scalar>
bool all_finite(const GruParameters<Scalar>& params) {
  bool ok = true;
  params.for_each([&](const char*, std::span<const Scalar> b) {
    for (Scalar v : b) ok = ok && std::isfinite(static_cast<double>(v));
  });
  return ok;
}

/// One SGD update on a batch of windows; returns the pre-update loss. A
/// non-finite loss or gradient throws NumericError before any write.
template <typename Scalar>
BatchLoss<Scalar> sgd_step(GruModel<Scalar>& model, std::span<const TrainWindow<Scalar>> batch, double lr,
                           const StepOptions& options = {}) {
  if (!(lr >= 0.0)) throw ConfigError("learning rate must be non-negative");
  GruParameters<Scalar> grads;
  auto loss = batch_loss(model, batch, options, &grads);
  if (!std::isfinite(loss.objective)) throw NumericError("non-finite training loss (" + std::to_string(loss.objective) + ")");
  double factor = lr;
  const double norm = global_norm(grads);
  if (!std::isfinite(norm)) throw NumericError("non-finite gradient norm");
  if (options.clip_norm > 0.0 && norm > options.clip_norm) factor *= options.clip_norm / norm;
  if (factor == 0.0) return loss;
  std::vector<std::span<const Scalar>> g;
  grads.for_each([&](const char*, std::span<const Scalar> b) { g.push_back(b); });
  std::size_t i = 0;
  const auto f = static_cast<Scalar>(factor);
  model.params.for_each([&](const char*, std::span<Scalar> b) {
    for (std::size_t k = 0; k < b.size(); ++k) b[k] -= f * g[i][k];
    ++i;
  });
  if (!all_finite(model.params)) throw NumericError("parameters became non-finite after an update");
  return loss;
}

/// FNV-1a over the raw parameter bytes; used to assert that evaluation does
/// not write to a model.
template <typename Scalar>
std::uint64_t parameter_checksum(const GruModel<Scalar>& model) {
  std::uint64_t h = 14695981039346656037ull;
  model.params.for_each([&](const char*, std::span<const Scalar> b) {
    const auto* bytes = reinterpret_cast<const unsigned char*>(b.data());
    for (std::size_t k = 0; k < b.size_bytes(); ++k) {
      h ^= bytes[k];
      h *= 1099511628211ull;
    }
  });
  return h;
}

}  // namespace codelm
