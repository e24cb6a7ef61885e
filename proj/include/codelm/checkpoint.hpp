// Copyright 2026 The codelm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "codelm/bpe.hpp"
#include "codelm/gru_model.hpp"

namespace codelm {

// Checkpoint layout, all integers and floats little-endian:
//   "CDLMCKPT"                     8-byte magic
//   u32 format version (1)
//   u64 vocab_size, embed_dim, hidden_dim, unroll
//   f64 dropout_keep, f64 final_lr
//   u64 merge-table content hash
//   u64 parameter count
//   f32 x count                    blocks in GruParameters order, each block
//                                  in column-major storage order
//   u64 FNV-1a of every preceding byte
inline constexpr char kCheckpointMagic[8] = {'C', 'D', 'L', 'M', 'C', 'K', 'P', 'T'};
inline constexpr std::uint32_t kCheckpointVersion = 1;

namespace detail {

class ByteWriter {
 public:
  template <typename T>
  void put(T value) {
    static_assert(std::is_trivially_copyable_v<T>);
    unsigned char raw[sizeof(T)];
    std::memcpy(raw, &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(raw, raw + sizeof(T));
    bytes_.insert(bytes_.end(), raw, raw + sizeof(T));
  }
  void put_bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    bytes_.insert(bytes_.end(), p, p + n);
  }
  std::vector<unsigned char>& bytes() { return bytes_; }

 private:
  std::vector<unsigned char> bytes_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const unsigned char> bytes) : bytes_(bytes) {}
  template <typename T>
  T get() {
    if (pos_ + sizeof(T) > bytes_.size()) throw DataError("checkpoint is truncated or corrupt");
    unsigned char raw[sizeof(T)];
    std::memcpy(raw, bytes_.data() + pos_, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(raw, raw + sizeof(T));
    pos_ += sizeof(T);
    T value;
    std::memcpy(&value, raw, sizeof(T));
    return value;
  }
  std::size_t position() const { return pos_; }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  std::span<const unsigned char> bytes_;
  std::size_t pos_ = 0;
};

inline std::uint64_t fnv1a64_bytes(std::span<const unsigned char> bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace detail

inline std::vector<unsigned char> save_checkpoint(const GruModel<float>& model) {
  detail::ByteWriter w;
  w.put_bytes(kCheckpointMagic, sizeof(kCheckpointMagic));
  w.put<std::uint32_t>(kCheckpointVersion);
  const auto& c = model.config;
  for (std::size_t v : {c.vocab_size, c.embed_dim, c.hidden_dim, c.unroll}) w.put<std::uint64_t>(v);
  w.put<double>(c.dropout_keep);
  w.put<double>(model.final_lr);
  w.put<std::uint64_t>(model.vocab_hash);
  w.put<std::uint64_t>(model.params.parameter_count());
  model.params.for_each([&](const char*, std::span<const float> block) {
    for (float v : block) w.put<float>(v);
  });
  w.put<std::uint64_t>(detail::fnv1a64_bytes(w.bytes()));
  return std::move(w.bytes());
}

/// Restores a model. Refuses corrupt data, unknown versions, and, when
/// `expected_hash` is given, checkpoints built for a different merge table.
inline GruModel<float> load_checkpoint(std::span<const unsigned char> bytes,
                                       std::optional<std::uint64_t> expected_hash = std::nullopt) {
  if (bytes.size() < sizeof(kCheckpointMagic) + sizeof(std::uint64_t) ||
      std::memcmp(bytes.data(), kCheckpointMagic, sizeof(kCheckpointMagic)) != 0)
    throw DataError("not a model checkpoint (bad magic)");
  const auto body = bytes.first(bytes.size() - sizeof(std::uint64_t));
  detail::ByteReader trailer(bytes.last(sizeof(std::uint64_t)));
  const bool intact = trailer.get<std::uint64_t>() == detail::fnv1a64_bytes(body);

  detail::ByteReader r(body);
  r.get<std::uint64_t>();  // magic
  const auto version = r.get<std::uint32_t>();
  if (version != kCheckpointVersion)
    throw DataError("unsupported checkpoint version " + std::to_string(version));
  if (!intact) throw DataError("checkpoint is truncated or corrupt (checksum mismatch)");
  GruModel<float> model;
  model.config.vocab_size = r.get<std::uint64_t>();
  model.config.embed_dim = r.get<std::uint64_t>();
  model.config.hidden_dim = r.get<std::uint64_t>();
  model.config.unroll = r.get<std::uint64_t>();
  model.config.dropout_keep = r.get<double>();
  model.final_lr = r.get<double>();
  model.vocab_hash = r.get<std::uint64_t>();
  try {
    model.config.validate();
  } catch (const ConfigError& e) {
    throw DataError(std::string("checkpoint has an invalid configuration: ") + e.what());
  }
  if (expected_hash && *expected_hash != model.vocab_hash)
    throw DataError("checkpoint was trained with a different merge table (vocabulary hash mismatch)");
  const auto count = r.get<std::uint64_t>();
  model.params.resize(model.config);
  if (count != model.params.parameter_count() || r.remaining() != count * sizeof(float))
    throw DataError("checkpoint parameter count does not match its configuration");
  model.params.for_each([&](const char*, std::span<float> block) {
    for (auto& v : block) v = r.get<float>();
  });
  return model;
}

inline void write_checkpoint(const std::filesystem::path& path, const GruModel<float>& model) {
  const auto bytes = save_checkpoint(model);
  write_text_file(path, std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

inline GruModel<float> read_checkpoint(const std::filesystem::path& path,
                                       std::optional<std::uint64_t> expected_hash = std::nullopt) {
  const auto text = read_text_file(path);
  return load_checkpoint(std::span(reinterpret_cast<const unsigned char*>(text.data()), text.size()), expected_hash);
}

}  // namespace codelm
