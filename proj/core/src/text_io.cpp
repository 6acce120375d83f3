#include "runperm/text_io.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <string>

#include "runperm/binary_io.hpp"
#include "runperm/runs.hpp"

namespace runperm {

namespace {

std::size_t next_number(std::istream& in, const char* what, std::size_t index) {
  std::string token;
  if (!(in >> token)) {
    throw FormatError(std::string("unexpected end of input reading ") + what + " " + std::to_string(index));
  }
  std::size_t value = 0;
  const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || end != token.data() + token.size()) {
    throw FormatError(std::string("malformed ") + what + " " + std::to_string(index) + ": '" + token + "'");
  }
  return value;
}

void expect_end(std::istream& in) {
  std::string extra;
  if (in >> extra) throw FormatError("trailing data after the last value: '" + extra + "'");
}

}  // namespace

std::vector<std::size_t> read_values(std::istream& in, bool require_permutation) {
  const std::size_t n = next_number(in, "length", 0);
  std::vector<std::size_t> values;
  values.reserve(std::min<std::size_t>(n, std::size_t{1} << 24));
  for (std::size_t i = 1; i <= n; ++i) values.push_back(next_number(in, "value", i));
  expect_end(in);
  if (require_permutation) {
    try {
      validate_permutation(values);
    } catch (const std::invalid_argument& e) {
      throw FormatError(e.what());
    }
  }
  return values;
}

void write_values(std::ostream& out, std::span<const std::size_t> values) {
  out << values.size() << '\n';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out << ' ';
    out << values[i];
  }
  out << '\n';
}

SusPartition read_partition(std::istream& in) {
  const std::size_t n = next_number(in, "length", 0);
  const std::size_t k = next_number(in, "label count", 0);
  std::vector<std::size_t> labels;
  labels.reserve(std::min<std::size_t>(n, std::size_t{1} << 24));
  for (std::size_t i = 1; i <= n; ++i) labels.push_back(next_number(in, "label", i));
  expect_end(in);
  SusPartition p;
  try {
    p = partition_from_labels(labels);
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  if (p.k != k) throw FormatError("partition header says k=" + std::to_string(k) + " but labels use " + std::to_string(p.k));
  return p;
}

void write_partition(std::ostream& out, const SusPartition& partition) {
  out << partition.size() << ' ' << partition.k << '\n';
  for (std::size_t i = 0; i < partition.size(); ++i) {
    if (i > 0) out << ' ';
    out << partition.labels[i];
  }
  out << '\n';
}

}  // namespace runperm
