#include "coders.hpp"

#include <stdexcept>

#include "runperm/binary_io.hpp"

namespace runperm::cli {

namespace {

void add_breakdown(std::vector<std::pair<std::string, std::size_t>>& out, const std::string& prefix,
                   const SizeBreakdown& b) {
  out.emplace_back(prefix + "payload", b.payload);
  out.emplace_back(prefix + "index", b.index);
  out.emplace_back(prefix + "tree", b.tree);
  out.emplace_back(prefix + "phi", b.phi);
  out.emplace_back(prefix + "run_starts", b.run_starts);
  out.emplace_back(prefix + "directions", b.directions);
}

}  // namespace

CoderKind parse_coder_kind(const std::string& name) {
  if (name == "runs") return CoderKind::runs;
  if (name == "strict") return CoderKind::strict;
  if (name == "sus") return CoderKind::sus;
  if (name == "strict-sus") return CoderKind::strict_sus;
  throw std::invalid_argument("unknown coder '" + name + "' (expected runs, strict, sus or strict-sus)");
}

std::string coder_kind_name(CoderKind kind) {
  switch (kind) {
    case CoderKind::runs: return "runs";
    case CoderKind::strict: return "strict";
    case CoderKind::sus: return "sus";
    case CoderKind::strict_sus: return "strict-sus";
  }
  return "?";
}

AnyCoder AnyCoder::encode(std::span<const std::size_t> perm, const EncodeOptions& options) {
  switch (options.kind) {
    case CoderKind::runs: return AnyCoder(PermutationCoder::encode(perm, options.config));
    case CoderKind::strict: return AnyCoder(StrictPermutationCoder::encode(perm, options.config));
    case CoderKind::sus:
      if (options.partition != nullptr) return AnyCoder(SusCoder::encode(perm, *options.partition, options.config));
      return AnyCoder(SusCoder::encode(perm, options.config));
    case CoderKind::strict_sus: return AnyCoder(StrictSusCoder::encode(perm, options.config));
  }
  throw std::invalid_argument("unknown coder kind");
}

AnyCoder AnyCoder::deserialize(std::span<const std::uint8_t> bytes) {
  const ByteReader probe(bytes);
  const auto magic = probe.peek_magic();
  if (magic == "RPRM") return AnyCoder(PermutationCoder::deserialize(bytes));
  if (magic == "RPSR") return AnyCoder(StrictPermutationCoder::deserialize(bytes));
  if (magic == "RPSU") return AnyCoder(SusCoder::deserialize(bytes));
  if (magic == "RPSI") return AnyCoder(StrictSusCoder::deserialize(bytes));
  throw FormatError("not a permutation coder file (magic '" + std::string(magic) + "')");
}

std::size_t AnyCoder::size() const {
  return std::visit([](const auto& c) { return c.size(); }, impl_);
}

std::size_t AnyCoder::apply(std::size_t i) const {
  return std::visit([i](const auto& c) { return c.apply(i); }, impl_);
}

std::size_t AnyCoder::inverse(std::size_t j) const {
  return std::visit([j](const auto& c) { return c.inverse(j); }, impl_);
}

Permutation AnyCoder::decode() const {
  return std::visit([](const auto& c) { return c.decode(); }, impl_);
}

std::vector<std::uint8_t> AnyCoder::serialize() const {
  return std::visit([](const auto& c) { return c.serialize(); }, impl_);
}

double AnyCoder::payload_entropy_bits() const {
  if (const auto* c = std::get_if<PermutationCoder>(&impl_)) return c->payload_entropy_bits();
  if (const auto* c = std::get_if<StrictPermutationCoder>(&impl_)) return c->inner().payload_entropy_bits();
  if (const auto* c = std::get_if<SusCoder>(&impl_)) return c->payload_entropy_bits();
  return std::get<StrictSusCoder>(impl_).inverse_coder().payload_entropy_bits();
}

std::vector<std::pair<std::string, std::size_t>> AnyCoder::size_components() const {
  std::vector<std::pair<std::string, std::size_t>> out;
  std::size_t total = 0;
  if (const auto* c = std::get_if<PermutationCoder>(&impl_)) {
    const auto b = c->measured_size_bits();
    add_breakdown(out, "", b);
    total = b.total();
  } else if (const auto* c = std::get_if<StrictPermutationCoder>(&impl_)) {
    const auto b = c->measured_size_bits();
    add_breakdown(out, "inner_", b.inner);
    out.emplace_back("heads", b.heads);
    out.emplace_back("head_values", b.head_values);
    out.emplace_back("header", b.header);
    total = b.total();
  } else if (const auto* c = std::get_if<SusCoder>(&impl_)) {
    const auto b = c->measured_size_bits();
    add_breakdown(out, "labels_", b.labels);
    add_breakdown(out, "inner_", b.inner);
    out.emplace_back("boundaries", b.boundaries);
    out.emplace_back("directions", b.directions);
    out.emplace_back("header", b.header);
    total = b.total();
  } else {
    const auto b = std::get<StrictSusCoder>(impl_).measured_size_bits();
    add_breakdown(out, "", b);
    total = b.total();
  }
  out.emplace_back("total", total);
  return out;
}

}  // namespace runperm::cli
