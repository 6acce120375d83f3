#pragma once

// Text interchange formats.
//
// Permutation / array file: first token n, then n whitespace-separated
// positive integers. Partition file: "n k" on the first line, then n labels
// in [1..k].

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "runperm/sus.hpp"

namespace runperm {

// With require_permutation, the values must form a permutation of [1..n];
// otherwise any non-negative integers are accepted (array mode). Throws
// FormatError with the offending token position.
[[nodiscard]] std::vector<std::size_t> read_values(std::istream& in, bool require_permutation = true);
void write_values(std::ostream& out, std::span<const std::size_t> values);

[[nodiscard]] SusPartition read_partition(std::istream& in);
void write_partition(std::ostream& out, const SusPartition& partition);

}  // namespace runperm
