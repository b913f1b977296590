// pasgal-bench: times parallel and sequential graph algorithms and writes a
// CSV report. Exit status 1 on usage or input errors, 2 when a result
// checksum changes between runs.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "pasgal/bench.hpp"
#include "pasgal/parallel.hpp"

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

template <typename T>
std::vector<T> parse_list(const std::string& s, const char* what) {
  std::vector<T> out;
  for (const auto& item : split(s, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || v < 0) throw CLI::ValidationError(what, "bad list element '" + item + "'");
    out.push_back(static_cast<T>(v));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmark parallel graph algorithms against their sequential baselines"};
  std::string algos = "bfs", input, gen, sources = "0", threads, output;
  pasgal::bench::BenchConfig cfg;
  double delta = 0.0;
  app.add_option("--algo,-a", algos, "Comma-separated: bfs,scc,bcc,sssp,seq-bfs,seq-scc,seq-bcc,seq-sssp");
  auto* in_opt = app.add_option("--input,-i", input, "Graph file (.adj, .bin, .wbin)");
  auto* gen_opt = app.add_option("--gen", gen, "Generator: grid:ROWSxCOLS or er:N:DEG");
  in_opt->excludes(gen_opt);
  app.add_option("--sources,-r", sources, "Comma-separated source vertices for bfs/sssp");
  app.add_option("--threads,-t", threads, "Comma-separated non-decreasing thread counts (default: all cores)");
  app.add_option("--tau", cfg.tau, "Local search budget")->check(CLI::PositiveNumber);
  app.add_option("--rounds", cfg.rounds, "Timed rounds per configuration")->check(CLI::PositiveNumber);
  app.add_option("--warmup", cfg.warmup, "Untimed warmup rounds");
  app.add_option("--seed", cfg.seed, "Seed for generators, pivots, forests and weights");
  app.add_option("--output,-o", output, "CSV report path");
  auto* delta_opt = app.add_option("--delta", delta, "SSSP step width (default: total weight / n)");
  app.add_flag("--symmetrize,-s", cfg.symmetrize, "Symmetrize the input (needed for bcc on digraphs)");
  app.add_flag("--canonical", cfg.canonical, "Canonicalize partitions before checksumming");

  try {
    app.parse(argc, argv);
    if (input.empty() && gen.empty()) throw CLI::RequiredError("--input or --gen");
    cfg.graph = input.empty() ? gen : input;
    cfg.algos.clear();
    for (const auto& name : split(algos, ',')) {
      auto a = pasgal::bench::parse_algo(name);
      if (!a) throw CLI::ValidationError("--algo", "unknown algorithm '" + name + "'");
      cfg.algos.push_back(*a);
    }
    cfg.sources = parse_list<std::uint64_t>(sources, "--sources");
    cfg.threads = threads.empty() ? std::vector<int>{pasgal::num_workers()} : parse_list<int>(threads, "--threads");
    cfg.output = output;
    if (*delta_opt) cfg.delta = delta;
    cfg.validate();
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }

  try {
    auto report = pasgal::bench::run_bench(cfg);
    std::printf("%-9s %7s %12s %12s %9s\n", "algo", "threads", "min_s", "median_s", "speedup");
    for (const auto& a : report.aggregates) {
      std::string sp = a.speedup ? std::to_string(*a.speedup) : "-";
      std::printf("%-9s %7d %12.6f %12.6f %9s\n", a.algo.c_str(), a.threads, a.min_seconds, a.median_seconds,
                  sp.c_str());
    }
    if (!report.records.empty())
      std::printf("n=%llu m=%llu\n", static_cast<unsigned long long>(report.records[0].n),
                  static_cast<unsigned long long>(report.records[0].m));
  } catch (const pasgal::bench::DeterminismError& e) {
    std::fprintf(stderr, "determinism failure: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
