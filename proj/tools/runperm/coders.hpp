#pragma once

// Uniform handle over the four permutation coders, keyed by their file
// magic.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "runperm/perm_wavelet.hpp"
#include "runperm/strict_perm.hpp"
#include "runperm/sus.hpp"

namespace runperm::cli {

enum class CoderKind { runs, strict, sus, strict_sus };

struct EncodeOptions {
  CoderKind kind = CoderKind::runs;
  CoderConfig config;
  // SUS coder only: use this partition instead of the greedy one.
  const SusPartition* partition = nullptr;
};

[[nodiscard]] CoderKind parse_coder_kind(const std::string& name);
[[nodiscard]] std::string coder_kind_name(CoderKind kind);

class AnyCoder {
 public:
  static AnyCoder encode(std::span<const std::size_t> perm, const EncodeOptions& options);
  static AnyCoder deserialize(std::span<const std::uint8_t> bytes);

  [[nodiscard]] CoderKind kind() const noexcept { return static_cast<CoderKind>(impl_.index()); }
  [[nodiscard]] std::size_t size() const;
  [[nodiscard]] std::size_t apply(std::size_t i) const;
  [[nodiscard]] std::size_t inverse(std::size_t j) const;
  [[nodiscard]] Permutation decode() const;
  [[nodiscard]] std::vector<std::uint8_t> serialize() const;
  [[nodiscard]] double payload_entropy_bits() const;
  // Measured size components in bits, in a fixed order, ending with "total".
  [[nodiscard]] std::vector<std::pair<std::string, std::size_t>> size_components() const;

 private:
  using Impl = std::variant<PermutationCoder, StrictPermutationCoder, SusCoder, StrictSusCoder>;
  explicit AnyCoder(Impl impl) : impl_(std::move(impl)) {}

  Impl impl_;
};

}  // namespace runperm::cli
