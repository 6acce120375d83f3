#include "commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coders.hpp"
#include "runperm/adaptive_sort.hpp"
#include "runperm/generate.hpp"
#include "runperm/runs.hpp"
#include "runperm/sus.hpp"
#include "runperm/text_io.hpp"

namespace runperm::cli {

namespace {

class CommandError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CoderFlags {
  std::string coder = "runs";
  unsigned arity = 0;
  std::string bitvector = "compressed";
  bool mixed = false;
  bool no_depth_limit = false;
  std::string partition;

  void add_to(CLI::App* app) {
    app->add_option("--coder", coder, "runs, strict, sus or strict-sus")->capture_default_str();
    app->add_option("--arity", arity, "wavelet tree arity (0 = automatic)")->capture_default_str();
    app->add_option("--bitvector", bitvector, "plain, compressed or sparse")->capture_default_str();
    app->add_flag("--mixed", mixed, "code descending runs too");
    app->add_flag("--no-depth-limit", no_depth_limit, "keep the plain Huffman shape");
    app->add_option("--partition", partition, "partition file for the sus coder");
  }

  [[nodiscard]] CoderConfig config() const {
    CoderConfig c;
    c.arity = arity;
    c.depth_limit = !no_depth_limit;
    c.mixed_runs = mixed;
    c.bitvector = parse_bitvector_kind(bitvector);
    if (arity == 1 || arity > 255) throw CommandError("--arity must be 0 or in [2, 255]");
    return c;
  }
};

std::string read_text(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CommandError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::uint8_t> read_bytes(const std::string& path) {
  const std::string s = read_text(path);
  return {s.begin(), s.end()};
}

std::vector<std::size_t> load_values(const std::string& path, bool array_mode) {
  std::istringstream in(read_text(path));
  try {
    return read_values(in, !array_mode);
  } catch (const FormatError& e) {
    throw CommandError(path + ": " + e.what());
  }
}

void write_output(const std::string& path, const std::string& data, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << data;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << data)) throw CommandError("cannot write '" + path + "'");
}

std::string values_text(std::span<const std::size_t> values) {
  std::ostringstream s;
  write_values(s, values);
  return s.str();
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed, bool required) {
  if (seed) return *seed;
  if (const char* env = std::getenv("RUNPERM_SEED"); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw CommandError(std::string("RUNPERM_SEED is not an unsigned integer: '") + env + "'");
  }
  if (required) throw CommandError("a seed is required: pass --seed or set RUNPERM_SEED");
  return 1;
}

std::vector<RunDirection> parse_directions(const std::vector<std::string>& names) {
  std::vector<RunDirection> out;
  for (const auto& d : names) {
    if (d == "asc" || d == "a" || d == "up") {
      out.push_back(RunDirection::ascending);
    } else if (d == "desc" || d == "d" || d == "down") {
      out.push_back(RunDirection::descending);
    } else {
      throw CommandError("unknown run direction '" + d + "' (expected asc or desc)");
    }
  }
  return out;
}

AnyCoder load_coder(const std::string& path) {
  try {
    return AnyCoder::deserialize(read_bytes(path));
  } catch (const FormatError& e) {
    throw CommandError(path + ": " + e.what());
  }
}

AnyCoder encode_with(std::span<const std::size_t> perm, const CoderFlags& flags) {
  EncodeOptions options;
  options.kind = parse_coder_kind(flags.coder);
  options.config = flags.config();
  std::optional<SusPartition> partition;
  if (!flags.partition.empty()) {
    if (options.kind != CoderKind::sus) throw CommandError("--partition applies to the sus coder only");
    std::istringstream in(read_text(flags.partition));
    partition = read_partition(in);
    if (partition->size() != perm.size()) throw CommandError("partition length does not match the permutation");
    options.partition = &*partition;
  }
  return AnyCoder::encode(perm, options);
}

std::string fmt(double x) {
  std::ostringstream s;
  s << std::setprecision(10) << x;
  return s.str();
}

// ---- subcommands ---------------------------------------------------------

struct GenArgs {
  std::string kind;
  std::size_t n = 0;
  std::vector<std::size_t> lengths;
  std::vector<std::string> dirs;
  std::size_t rho = 0;
  std::size_t tau = 0;
  std::vector<std::size_t> heads;
  std::size_t k = 0;
  std::string law = "uniform";
  bool strict = false;
  std::optional<std::uint64_t> seed;
  std::string output;
};

void cmd_gen(const GenArgs& a, std::ostream& out) {
  Rng rng(resolve_seed(a.seed, true));
  Permutation p;
  if (a.kind == "random") {
    if (a.n == 0) throw CommandError("gen random needs --n >= 1");
    p = random_permutation(a.n, rng);
  } else if (a.kind == "runs") {
    auto lengths = a.lengths;
    if (lengths.empty()) {
      if (a.n == 0 || a.rho == 0) throw CommandError("gen runs needs --lengths, or --n and --rho");
      lengths = random_composition(a.n, a.rho, rng);
    } else if (a.n != 0 && a.n != std::accumulate(lengths.begin(), lengths.end(), std::size_t{0})) {
      throw CommandError("run lengths do not sum to --n");
    }
    p = runs_permutation(lengths, parse_directions(a.dirs), rng);
  } else if (a.kind == "strict") {
    auto lengths = a.lengths;
    if (lengths.empty()) {
      if (a.n == 0 || a.tau == 0) throw CommandError("gen strict needs --lengths, or --n and --tau");
      lengths = random_composition(a.n, a.tau, rng);
    }
    p = strict_permutation(lengths, a.heads, rng);
  } else if (a.kind == "sus") {
    if (a.n == 0 || a.k == 0) throw CommandError("gen sus needs --n and --k");
    InterleaveLaw law;
    if (a.law == "uniform") {
      law = InterleaveLaw::uniform;
    } else if (a.law == "geometric") {
      law = InterleaveLaw::geometric;
    } else {
      throw CommandError("unknown --law '" + a.law + "' (expected uniform or geometric)");
    }
    p = sus_permutation(a.n, a.k, law, a.strict, rng);
  } else {
    throw CommandError("unknown kind '" + a.kind + "' (expected random, runs, strict or sus)");
  }
  write_output(a.output, values_text(p), out);
}

void cmd_encode(const std::string& input, const std::string& output, const CoderFlags& flags, std::ostream& out) {
  const auto perm = load_values(input, false);
  const auto coder = encode_with(perm, flags);
  const auto bytes = coder.serialize();
  if (output.empty()) throw CommandError("encode needs -o FILE");
  write_output(output, std::string(bytes.begin(), bytes.end()), out);
}

void cmd_decode(const std::string& input, const std::string& output, std::ostream& out) {
  const auto coder = load_coder(input);
  write_output(output, values_text(coder.decode()), out);
}

void cmd_query(const std::string& input, const std::optional<std::size_t>& apply,
               const std::optional<std::size_t>& inverse, std::ostream& out) {
  if (apply.has_value() == inverse.has_value()) throw CommandError("query needs exactly one of --apply or --inverse");
  const auto coder = load_coder(input);
  out << (apply ? coder.apply(*apply) : coder.inverse(*inverse)) << '\n';
}

void cmd_stats(const std::string& input, const CoderFlags& flags, std::ostream& out) {
  const auto perm = load_values(input, false);
  const auto runs = ascending_runs(perm);
  const auto monotone = monotone_runs(perm);
  const auto strict = strict_ascending_runs(perm);
  const auto heads = head_run_profile(strict);
  const auto sus = partition_sus(std::span<const std::size_t>(perm));
  out << "n=" << perm.size() << '\n';
  out << "rho=" << runs.count() << '\n';
  out << "H_runs=" << fmt(runs.entropy()) << '\n';
  out << "monotone_runs=" << monotone.count() << '\n';
  out << "H_monotone_runs=" << fmt(monotone.entropy()) << '\n';
  out << "tau=" << strict.count() << '\n';
  out << "hruns=" << heads.count() << '\n';
  out << "H_hruns=" << fmt(heads.entropy()) << '\n';
  out << "nsus=" << sus.k << '\n';
  out << "H_sus=" << fmt(sus.entropy()) << '\n';
  const auto coder = encode_with(perm, flags);
  out << "coder=" << coder_kind_name(coder.kind()) << '\n';
  out << "payload_entropy_bits=" << fmt(coder.payload_entropy_bits()) << '\n';
  for (const auto& [name, bits] : coder.size_components()) out << "bits_" << name << '=' << bits << '\n';
}

void cmd_sort(const std::string& input, const std::string& by, bool mixed, bool array_mode, const std::string& output,
              std::ostream& out) {
  const auto values = load_values(input, array_mode);
  SortResult<std::size_t> r;
  if (by == "runs") {
    r = sort_by_runs(std::span<const std::size_t>(values), mixed);
  } else if (by == "sus") {
    if (mixed) throw CommandError("--mixed applies to --by runs only");
    r = sort_by_sus(std::span<const std::size_t>(values));
  } else {
    throw CommandError("unknown --by '" + by + "' (expected runs or sus)");
  }
  const double n = static_cast<double>(values.size());
  out << "n=" << values.size() << '\n';
  out << "comparisons=" << r.stats.comparisons << '\n';
  out << "runs_detected=" << r.stats.runs_detected << '\n';
  out << "entropy=" << fmt(r.stats.entropy) << '\n';
  out << "element_moves=" << r.stats.element_moves << '\n';
  out << "comparison_budget=" << fmt(n * (2 + r.stats.entropy) + 2 * n) << '\n';
  if (!output.empty()) write_output(output, values_text(r.sorted), out);
}

int cmd_verify(const std::string& input, const std::string& encoded, const CoderFlags& flags, std::size_t queries,
               const std::optional<std::uint64_t>& seed, std::ostream& out, std::ostream& err) {
  const auto perm = load_values(input, false);
  const AnyCoder coder = encoded.empty() ? encode_with(perm, flags) : load_coder(encoded);
  const auto bytes = coder.serialize();
  const AnyCoder reloaded = AnyCoder::deserialize(bytes);
  int failures = 0;
  auto fail = [&](const std::string& what) {
    err << "verify: " << what << '\n';
    ++failures;
  };

  const auto decoded = reloaded.decode();
  if (decoded != perm) {
    std::size_t i = 0;
    while (i < std::min(decoded.size(), perm.size()) && decoded[i] == perm[i]) ++i;
    fail("decoded permutation differs from the source at position " + std::to_string(i + 1));
  }
  if (reloaded.serialize() != bytes) fail("re-serialization is not byte-identical");
  if (encoded.empty()) {
    if (encode_with(decoded, flags).serialize() != bytes) fail("re-encoding the decoded permutation changed the bytes");
  }

  Rng rng(resolve_seed(seed, false));
  const std::size_t n = perm.size();
  const auto inv = inverse_permutation(perm);
  for (std::size_t q = 0; q < queries && failures < 10; ++q) {
    const std::size_t i = rng.between(1, n);
    const std::size_t j = rng.between(1, n);
    if (reloaded.apply(i) != perm[i - 1]) {
      fail("apply(" + std::to_string(i) + ") = " + std::to_string(reloaded.apply(i)) + ", expected " +
           std::to_string(perm[i - 1]));
    }
    if (reloaded.inverse(j) != inv[j - 1]) {
      fail("inverse(" + std::to_string(j) + ") = " + std::to_string(reloaded.inverse(j)) + ", expected " +
           std::to_string(inv[j - 1]));
    }
  }
  out << "coder=" << coder_kind_name(coder.kind()) << '\n';
  out << "bytes=" << bytes.size() << '\n';
  out << "queries=" << queries << '\n';
  out << "status=" << (failures == 0 ? "ok" : "FAILED") << '\n';
  return failures == 0 ? 0 : 1;
}

void cmd_partition(const std::string& input, bool array_mode, const std::string& output, std::ostream& out) {
  const auto values = load_values(input, array_mode);
  if (values.empty()) throw CommandError("cannot partition an empty input");
  const auto p = partition_sus(std::span<const std::size_t>(values));
  out << "n=" << values.size() << '\n';
  out << "k=" << p.k << '\n';
  out << "H_sus=" << fmt(p.entropy()) << '\n';
  if (!output.empty()) {
    std::ostringstream s;
    write_partition(s, p);
    write_output(output, s.str(), out);
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compressed permutations over runs and shuffled sequences", "runperm"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate a structured permutation");
  g->add_option("kind", gen.kind, "random, runs, strict or sus")->required();
  g->add_option("--n", gen.n, "length");
  g->add_option("--lengths", gen.lengths, "run lengths (runs, strict)")->delimiter(',');
  g->add_option("--dirs", gen.dirs, "run directions asc/desc (runs)")->delimiter(',');
  g->add_option("--rho", gen.rho, "number of runs for a random length vector");
  g->add_option("--tau", gen.tau, "number of strict runs for a random length vector");
  g->add_option("--heads", gen.heads, "block rank of each strict run (strict)")->delimiter(',');
  g->add_option("--k", gen.k, "number of subsequences (sus)");
  g->add_option("--law", gen.law, "interleaving law: uniform or geometric (sus)");
  g->add_flag("--strict", gen.strict, "subsequences of consecutive values (sus)");
  g->add_option("--seed", gen.seed, "64-bit seed (default: RUNPERM_SEED)");
  g->add_option("-o,--output", gen.output, "output file (default: stdout)");

  std::string input;
  std::string output;
  CoderFlags flags;

  auto* e = app.add_subcommand("encode", "Encode a permutation file");
  e->add_option("input", input, "permutation file")->required();
  e->add_option("-o,--output", output, "coder file")->required();
  flags.add_to(e);

  auto* d = app.add_subcommand("decode", "Decode a coder file to a permutation file");
  d->add_option("input", input, "coder file")->required();
  d->add_option("-o,--output", output, "output file (default: stdout)");

  std::optional<std::size_t> apply_at;
  std::optional<std::size_t> inverse_at;
  auto* q = app.add_subcommand("query", "Evaluate pi(i) or pi^-1(j) on a coder file");
  q->add_option("input", input, "coder file")->required();
  q->add_option("--apply", apply_at, "position i");
  q->add_option("--inverse", inverse_at, "value j");

  auto* s = app.add_subcommand("stats", "Print run statistics and coder sizes as key=value lines");
  s->add_option("input", input, "permutation file")->required();
  flags.add_to(s);

  std::string by = "runs";
  bool mixed_sort = false;
  bool array_mode = false;
  auto* so = app.add_subcommand("sort", "Sort with the adaptive merge sort and print statistics");
  so->add_option("input", input, "input file")->required();
  so->add_option("--by", by, "runs or sus")->capture_default_str();
  so->add_flag("--mixed", mixed_sort, "detect descending runs too");
  so->add_flag("--array", array_mode, "accept any values, duplicates included");
  so->add_option("-o,--output", output, "write the sorted values here");

  std::string encoded;
  std::size_t queries = 1000;
  std::optional<std::uint64_t> seed;
  auto* v = app.add_subcommand("verify", "Round-trip a permutation through a coder and check random queries");
  v->add_option("input", input, "permutation file")->required();
  v->add_option("--encoded", encoded, "check this coder file instead of encoding");
  v->add_option("--queries", queries, "random point queries")->capture_default_str();
  v->add_option("--seed", seed, "seed for the query positions (default: RUNPERM_SEED, else 1)");
  flags.add_to(v);

  auto* pa = app.add_subcommand("partition", "Greedy partition into shuffled upsequences");
  pa->add_option("input", input, "input file")->required();
  pa->add_flag("--array", array_mode, "accept any values, duplicates included");
  pa->add_option("-o,--output", output, "write the partition file here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    return app.exit(ex, out, err) == 0 ? 0 : 2;
  }

  try {
    if (*g) {
      cmd_gen(gen, out);
    } else if (*e) {
      cmd_encode(input, output, flags, out);
    } else if (*d) {
      cmd_decode(input, output, out);
    } else if (*q) {
      cmd_query(input, apply_at, inverse_at, out);
    } else if (*s) {
      cmd_stats(input, flags, out);
    } else if (*so) {
      cmd_sort(input, by, mixed_sort, array_mode, output, out);
    } else if (*v) {
      return cmd_verify(input, encoded, flags, queries, seed, out, err);
    } else if (*pa) {
      cmd_partition(input, array_mode, output, out);
    }
  } catch (const std::exception& ex) {
    err << "runperm: " << ex.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace runperm::cli
