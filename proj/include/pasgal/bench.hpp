#pragma once

// Benchmark harness: warmup plus timed rounds per (algorithm, thread count),
// a result checksum per run as a determinism guard, and CSV reports.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pasgal/graph_io.hpp"

namespace pasgal::bench {

enum class Algo { kBfs, kScc, kBcc, kSssp, kSeqBfs, kSeqScc, kSeqBcc, kSeqSssp };

std::optional<Algo> parse_algo(std::string_view name);
std::string_view algo_name(Algo a);
bool is_sequential(Algo a);
/// The sequential counterpart of a parallel algorithm (identity for
/// sequential ones).
Algo baseline_of(Algo a);

/// Checksum divergence between runs that must agree.
class DeterminismError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BenchConfig {
  std::string graph;  // file path, or grid:ROWSxCOLS, or er:N:DEG
  std::vector<Algo> algos;
  std::size_t rounds = 3;
  std::size_t warmup = 1;
  std::vector<int> threads{1};
  std::size_t tau = 512;
  std::vector<std::uint64_t> sources{0};
  std::uint64_t seed = 42;
  std::string output;  // CSV path; empty for none
  bool symmetrize = false;
  bool canonical = false;  // canonicalize partitions before checksumming
  std::optional<double> delta;

  /// Throws std::invalid_argument on rounds == 0, empty or non-positive or
  /// decreasing thread lists, tau == 0, no algorithms or no sources.
  void validate() const;
};

struct RunRecord {
  std::string algo;
  std::string graph;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  int threads = 1;
  std::size_t tau = 0;
  std::size_t round = 0;
  double seconds = 0.0;
  std::uint64_t checksum = 0;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

struct Aggregate {
  std::string algo;
  int threads = 1;
  double min_seconds = 0.0;
  double median_seconds = 0.0;
  std::optional<double> speedup;  // sequential median / this median
};

struct BenchReport {
  std::vector<RunRecord> records;
  std::vector<Aggregate> aggregates;
};

/// Parses grid:ROWSxCOLS and er:N:DEG; nullopt for anything else.
struct GeneratorSpec {
  enum class Kind { kGrid, kRandom } kind;
  std::size_t a = 0;  // rows or n
  std::size_t b = 0;  // cols
  double degree = 0.0;
};
std::optional<GeneratorSpec> parse_generator(std::string_view text);

/// Loads or generates the graph of `cfg`, applying --symmetrize.
AnyGraph prepare_graph(const BenchConfig& cfg);

/// Runs every configured algorithm and thread count. Throws
/// DeterminismError if the checksums of one algorithm differ across runs.
BenchReport run_bench(const BenchConfig& cfg);
BenchReport run_bench(const BenchConfig& cfg, const AnyGraph& g, std::string graph_name);

double median(std::vector<double> values);
std::vector<Aggregate> aggregate(const std::vector<RunRecord>& records);

inline constexpr std::string_view kCsvHeader = "algo,graph,n,m,threads,tau,round,seconds,checksum";
std::string format_csv(const std::vector<RunRecord>& records);
std::vector<RunRecord> parse_csv(std::string_view text);
void emit_csv(const BenchReport& report, const std::filesystem::path& path);

/// Order-independent fold of per-element hashes.
std::uint64_t fold_checksum(const std::vector<std::uint64_t>& values);

}  // namespace pasgal::bench
