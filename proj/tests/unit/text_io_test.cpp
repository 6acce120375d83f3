#include "runperm/text_io.hpp"

#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "runperm/binary_io.hpp"
#include "runperm/generate.hpp"

using runperm::FormatError;
using Values = std::vector<std::size_t>;

namespace {

Values read(const std::string& text, bool perm = true) {
  std::istringstream in(text);
  return runperm::read_values(in, perm);
}

runperm::SusPartition read_part(const std::string& text) {
  std::istringstream in(text);
  return runperm::read_partition(in);
}

}  // namespace

TEST(TextIo, ReadsPermutations) {
  EXPECT_EQ(read("5\n3 1 2 5 4\n"), (Values{3, 1, 2, 5, 4}));
  // Any whitespace layout is accepted.
  EXPECT_EQ(read("  3\t2\n\n1\r\n3 "), (Values{2, 1, 3}));
  EXPECT_EQ(read("1\n1"), (Values{1}));
}

TEST(TextIo, RejectsMalformedPermutations) {
  EXPECT_THROW((void)read(""), FormatError);
  EXPECT_THROW((void)read("3\n1 2"), FormatError);
  EXPECT_THROW((void)read("3\n1 2 3 4"), FormatError);
  EXPECT_THROW((void)read("3\n1 2 x"), FormatError);
  EXPECT_THROW((void)read("3\n1 2 -3"), FormatError);
  EXPECT_THROW((void)read("3\n1 2 3.0"), FormatError);
  EXPECT_THROW((void)read("3\n1 1 2"), FormatError);
  EXPECT_THROW((void)read("3\n0 1 2"), FormatError);
  EXPECT_THROW((void)read("3\n1 2 4"), FormatError);
  EXPECT_THROW((void)read("n\n1"), FormatError);
  try {
    (void)read("4\n1 2 zz 3");
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("value 3"), std::string::npos) << e.what();
  }
}

TEST(TextIo, ArrayModeAllowsDuplicates) {
  EXPECT_EQ(read("4\n7 7 0 100", false), (Values{7, 7, 0, 100}));
  EXPECT_EQ(read("0\n", false), Values{});
  EXPECT_THROW((void)read("2\n7 -1", false), FormatError);
}

TEST(TextIo, ValuesRoundTrip) {
  runperm::Rng rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = runperm::random_permutation(1 + rng.below(3000), rng);
    std::ostringstream out;
    runperm::write_values(out, p);
    EXPECT_EQ(read(out.str()), p);
  }
  std::ostringstream out;
  runperm::write_values(out, Values{3, 1, 2});
  EXPECT_EQ(out.str(), "3\n3 1 2\n");
}

TEST(TextIo, Partitions) {
  const auto p = read_part("10 2\n1 1 2 1 2 1 2 1 2 1\n");
  EXPECT_EQ(p.k, 2u);
  EXPECT_EQ(p.lengths, (Values{6, 4}));
  std::ostringstream out;
  runperm::write_partition(out, p);
  EXPECT_EQ(out.str(), "10 2\n1 1 2 1 2 1 2 1 2 1\n");
  EXPECT_EQ(read_part(out.str()).labels, p.labels);

  EXPECT_THROW((void)read_part("3 2\n1 1 1"), FormatError);  // label 2 unused
  EXPECT_THROW((void)read_part("3 3\n1 2 2"), FormatError);  // header disagrees
  EXPECT_THROW((void)read_part("3 2\n1 0 2"), FormatError);
  EXPECT_THROW((void)read_part("3 2\n1 2"), FormatError);
  EXPECT_THROW((void)read_part("3 2\n1 2 1 1"), FormatError);
  EXPECT_THROW((void)read_part("3\n"), FormatError);
}
