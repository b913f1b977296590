#include "pasgal/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstring>
#include <map>
#include <type_traits>
#include <utility>
#include <variant>

#include "pasgal/bcc.hpp"
#include "pasgal/bfs.hpp"
#include "pasgal/generators.hpp"
#include "pasgal/graph_ops.hpp"
#include "pasgal/labels.hpp"
#include "pasgal/oracles.hpp"
#include "pasgal/random.hpp"
#include "pasgal/scc.hpp"
#include "pasgal/sssp.hpp"

namespace pasgal::bench {
namespace {

struct AlgoName {
  Algo algo;
  std::string_view name;
};

constexpr AlgoName kAlgos[] = {
    {Algo::kBfs, "bfs"},         {Algo::kScc, "scc"},         {Algo::kBcc, "bcc"},
    {Algo::kSssp, "sssp"},       {Algo::kSeqBfs, "seq-bfs"},  {Algo::kSeqScc, "seq-scc"},
    {Algo::kSeqBcc, "seq-bcc"},  {Algo::kSeqSssp, "seq-sssp"},
};

template <typename T>
std::optional<T> parse_number(std::string_view s) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::uint64_t partition_checksum(const std::vector<std::uint64_t>& labels, bool canonical) {
  std::vector<std::uint64_t> keyed = canonical ? canonical_labels(labels) : labels;
  for (std::size_t i = 0; i < keyed.size(); ++i) keyed[i] = hash_combine(i, keyed[i]);
  return fold_checksum(keyed);
}

template <VertexIdType V>
std::vector<std::uint64_t> widen(const std::vector<V>& v) {
  return std::vector<std::uint64_t>(v.begin(), v.end());
}

template <VertexIdType V>
std::uint64_t distance_checksum(const DistanceArray<V>& d) {
  std::vector<std::uint64_t> keyed(d.dist.size());
  for (std::size_t i = 0; i < keyed.size(); ++i) keyed[i] = hash_combine(i, d.dist[i]);
  return fold_checksum(keyed);
}

std::uint64_t distance_checksum(const WeightedDistanceArray& d) {
  std::vector<std::uint64_t> keyed(d.dist.size());
  for (std::size_t i = 0; i < keyed.size(); ++i) {
    std::uint64_t bits;
    std::memcpy(&bits, &d.dist[i], sizeof bits);
    keyed[i] = hash_combine(i, bits);
  }
  return fold_checksum(keyed);
}

template <VertexIdType V>
std::uint64_t bcc_checksum(const Graph<V>& g, const BccLabels<V>& b, bool canonical) {
  std::uint64_t edges = partition_checksum(b.edge_labels(g), canonical);
  std::vector<std::uint64_t> cut(b.articulation.begin(), b.articulation.end());
  return hash_combine(edges, partition_checksum(cut, false));
}

// Inputs each algorithm needs, built once before any timing.
template <VertexIdType V>
struct Inputs {
  const Graph<V>& base;
  std::optional<Graph<V>> with_in_edges;
  std::optional<Graph<V>> weighted;

  const Graph<V>& directed() {
    if (base.in_edges()) return base;
    if (!with_in_edges) with_in_edges = with_transpose(base);
    return *with_in_edges;
  }
  const Graph<V>& weights(std::uint64_t seed) {
    if (base.weighted()) return base;
    if (!weighted) weighted = with_random_weights(base, 1, 100, seed);
    return *weighted;
  }
};

struct Timed {
  double seconds;
  std::uint64_t checksum;
};

template <typename F>
double time_call(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <VertexIdType V>
Timed run_once(Algo algo, Inputs<V>& in, const BenchConfig& cfg) {
  VgcConfig vgc;
  vgc.tau = cfg.tau;
  const std::size_t n = in.base.num_vertices();
  auto check_source = [&](std::uint64_t s) {
    if (s >= n) throw std::out_of_range("source " + std::to_string(s) + " out of range for n = " + std::to_string(n));
    return static_cast<V>(s);
  };
  Timed out{0.0, 0};
  auto per_source = [&](auto&& call) {
    for (std::size_t k = 0; k < cfg.sources.size(); ++k) {
      V s = check_source(cfg.sources[k]);
      std::uint64_t cs = 0;
      out.seconds += call(s, cs);
      out.checksum += hash_combine(k, cs);
    }
  };
  switch (algo) {
    case Algo::kBfs:
    case Algo::kSeqBfs: {
      const Graph<V>& g = in.base;
      per_source([&](V s, std::uint64_t& cs) {
        DistanceArray<V> d;
        double t = time_call([&] { d = algo == Algo::kBfs ? bfs_parallel(g, s, vgc) : seq::bfs_queue(g, s); });
        cs = distance_checksum(d);
        return t;
      });
      break;
    }
    case Algo::kSssp:
    case Algo::kSeqSssp: {
      const Graph<V>& g = in.weights(cfg.seed);
      per_source([&](V s, std::uint64_t& cs) {
        WeightedDistanceArray d;
        double t = time_call(
            [&] { d = algo == Algo::kSssp ? sssp_parallel(g, s, vgc, cfg.delta) : seq::sssp_dijkstra(g, s); });
        cs = distance_checksum(d);
        return t;
      });
      break;
    }
    case Algo::kScc:
    case Algo::kSeqScc: {
      const Graph<V>& g = in.directed();
      SccLabels<V> r;
      out.seconds = time_call([&] { r = algo == Algo::kScc ? scc_parallel(g, vgc, cfg.seed) : seq::scc_tarjan(g); });
      out.checksum = partition_checksum(widen(r.label), cfg.canonical);
      break;
    }
    case Algo::kBcc:
    case Algo::kSeqBcc: {
      const Graph<V>& g = in.base;
      BccLabels<V> r;
      out.seconds = time_call([&] { r = algo == Algo::kBcc ? bcc_parallel(g, cfg.seed) : seq::bcc_hopcroft_tarjan(g); });
      out.checksum = bcc_checksum(g, r, cfg.canonical);
      break;
    }
  }
  return out;
}

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

void append_field(std::string& out, std::string_view field) {
  bool quote = field.find_first_of(",\"\r\n") != std::string_view::npos;
  if (!quote) {
    out += field;
    return;
  }
  out += '"';
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

// RFC 4180 rows; accepts LF or CRLF line ends.
std::vector<std::vector<std::string>> split_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, field_started = false;
  std::size_t line = 1;
  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    rows.push_back(std::move(row));
    row.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    if (c == '"') {
      if (field_started) throw std::runtime_error("csv: stray quote on line " + std::to_string(line));
      quoted = field_started = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\n' || (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n')) {
      if (c == '\r') ++i;
      end_row();
      ++line;
    } else {
      field += c;
      field_started = true;
    }
  }
  if (quoted) throw std::runtime_error("csv: unterminated quoted field");
  if (field_started || !row.empty()) end_row();
  return rows;
}

}  // namespace

std::optional<Algo> parse_algo(std::string_view name) {
  for (const auto& a : kAlgos)
    if (a.name == name) return a.algo;
  return std::nullopt;
}

std::string_view algo_name(Algo algo) {
  for (const auto& a : kAlgos)
    if (a.algo == algo) return a.name;
  return "?";
}

bool is_sequential(Algo a) {
  return a == Algo::kSeqBfs || a == Algo::kSeqScc || a == Algo::kSeqBcc || a == Algo::kSeqSssp;
}

Algo baseline_of(Algo a) {
  switch (a) {
    case Algo::kBfs: return Algo::kSeqBfs;
    case Algo::kScc: return Algo::kSeqScc;
    case Algo::kBcc: return Algo::kSeqBcc;
    case Algo::kSssp: return Algo::kSeqSssp;
    default: return a;
  }
}

void BenchConfig::validate() const {
  if (graph.empty()) throw std::invalid_argument("no graph given");
  if (algos.empty()) throw std::invalid_argument("no algorithm given");
  if (rounds == 0) throw std::invalid_argument("rounds must be >= 1");
  if (tau == 0) throw std::invalid_argument("tau must be >= 1");
  if (threads.empty()) throw std::invalid_argument("thread list is empty");
  for (std::size_t i = 0; i < threads.size(); ++i) {
    if (threads[i] <= 0) throw std::invalid_argument("thread counts must be positive");
    if (i > 0 && threads[i] < threads[i - 1]) throw std::invalid_argument("thread counts must be non-decreasing");
  }
  if (sources.empty()) throw std::invalid_argument("source list is empty");
  if (delta && !(*delta > 0.0)) throw std::invalid_argument("delta must be positive");
}

std::optional<GeneratorSpec> parse_generator(std::string_view text) {
  if (text.starts_with("grid:")) {
    std::string_view dims = text.substr(5);
    auto x = dims.find('x');
    if (x == std::string_view::npos) return std::nullopt;
    auto r = parse_number<std::size_t>(dims.substr(0, x));
    auto c = parse_number<std::size_t>(dims.substr(x + 1));
    if (!r || !c) return std::nullopt;
    return GeneratorSpec{GeneratorSpec::Kind::kGrid, *r, *c, 0.0};
  }
  if (text.starts_with("er:")) {
    std::string_view rest = text.substr(3);
    auto colon = rest.find(':');
    if (colon == std::string_view::npos) return std::nullopt;
    auto n = parse_number<std::size_t>(rest.substr(0, colon));
    auto d = parse_number<double>(rest.substr(colon + 1));
    if (!n || !d) return std::nullopt;
    return GeneratorSpec{GeneratorSpec::Kind::kRandom, *n, 0, *d};
  }
  return std::nullopt;
}

AnyGraph prepare_graph(const BenchConfig& cfg) {
  AnyGraph g;
  if (auto spec = parse_generator(cfg.graph)) {
    std::size_t n = spec->kind == GeneratorSpec::Kind::kGrid ? spec->a * spec->b : spec->a;
    bool wide = n >= static_cast<std::size_t>(kNoVertex<std::uint32_t>);
    auto make = [&]<typename V>(V) -> Graph<V> {
      if (spec->kind == GeneratorSpec::Kind::kGrid) return gen_grid<V>(spec->a, spec->b, cfg.seed);
      return gen_random<V>(spec->a, spec->degree, cfg.seed, true);
    };
    if (wide) g = make(std::uint64_t{});
    else g = make(std::uint32_t{});
  } else if (cfg.graph.find(':') != std::string::npos && !std::filesystem::exists(cfg.graph)) {
    throw std::invalid_argument("cannot parse generator spec '" + cfg.graph + "'");
  } else {
    g = load_graph(cfg.graph);
  }
  if (cfg.symmetrize) std::visit([](auto& h) { h = symmetrize(h); }, g);
  return g;
}

BenchReport run_bench(const BenchConfig& cfg) {
  cfg.validate();
  AnyGraph g = prepare_graph(cfg);
  std::string name = parse_generator(cfg.graph) ? cfg.graph : std::filesystem::path(cfg.graph).filename().string();
  return run_bench(cfg, g, std::move(name));
}

BenchReport run_bench(const BenchConfig& cfg, const AnyGraph& any, std::string graph_name) {
  cfg.validate();
  BenchReport report;
  std::visit(
      [&](const auto& g) {
        using V = std::remove_cvref_t<decltype(g.targets()[0])>;
        Inputs<V> in{g, std::nullopt, std::nullopt};
        for (Algo algo : cfg.algos) {
          std::vector<int> sweep = is_sequential(algo) ? std::vector<int>{1} : cfg.threads;
          std::optional<std::uint64_t> expected;
          for (int t : sweep) {
            with_workers(t, [&] {
              for (std::size_t w = 0; w < cfg.warmup; ++w) run_once(algo, in, cfg);
              for (std::size_t r = 0; r < cfg.rounds; ++r) {
                Timed res = run_once(algo, in, cfg);
                if (!expected) expected = res.checksum;
                if (*expected != res.checksum)
                  throw DeterminismError(std::string(algo_name(algo)) + ": checksum changed at threads=" +
                                         std::to_string(t) + " round " + std::to_string(r));
                report.records.push_back(RunRecord{std::string(algo_name(algo)), graph_name, g.num_vertices(),
                                                   g.num_edges(), t, cfg.tau, r, res.seconds, res.checksum});
              }
            });
          }
        }
      },
      any);
  report.aggregates = aggregate(report.records);
  if (!cfg.output.empty()) emit_csv(report, cfg.output);
  return report;
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of an empty set");
  std::sort(values.begin(), values.end());
  std::size_t k = values.size() / 2;
  return values.size() % 2 ? values[k] : (values[k - 1] + values[k]) / 2.0;
}

std::vector<Aggregate> aggregate(const std::vector<RunRecord>& records) {
  std::map<std::pair<std::string, int>, std::vector<double>> groups;
  std::vector<std::pair<std::string, int>> order;
  for (const auto& r : records) {
    auto key = std::make_pair(r.algo, r.threads);
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(r.seconds);
  }
  std::vector<Aggregate> out;
  for (const auto& key : order) {
    const auto& times = groups[key];
    out.push_back({key.first, key.second, *std::min_element(times.begin(), times.end()), median(times), std::nullopt});
  }
  for (auto& a : out) {
    auto algo = parse_algo(a.algo);
    if (!algo || is_sequential(*algo)) continue;
    auto base = std::find_if(out.begin(), out.end(),
                             [&](const Aggregate& b) { return b.algo == algo_name(baseline_of(*algo)); });
    if (base != out.end() && a.median_seconds > 0.0) a.speedup = base->median_seconds / a.median_seconds;
  }
  return out;
}

std::uint64_t fold_checksum(const std::vector<std::uint64_t>& values) {
  std::uint64_t sum = 0;
  for (auto v : values) sum += splitmix64(v);
  return sum;
}

std::string format_csv(const std::vector<RunRecord>& records) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : records) {
    append_field(out, r.algo);
    out += ',';
    append_field(out, r.graph);
    out += ',' + std::to_string(r.n) + ',' + std::to_string(r.m) + ',' + std::to_string(r.threads) + ',' +
           std::to_string(r.tau) + ',' + std::to_string(r.round) + ',' + format_double(r.seconds) + ',' +
           std::to_string(r.checksum) + '\n';
  }
  return out;
}

std::vector<RunRecord> parse_csv(std::string_view text) {
  auto rows = split_csv(text);
  if (rows.empty()) throw std::runtime_error("csv: missing header");
  std::string header;
  for (std::size_t i = 0; i < rows[0].size(); ++i) header += (i ? "," : "") + rows[0][i];
  if (header != kCsvHeader) throw std::runtime_error("csv: unexpected header '" + header + "'");
  std::vector<RunRecord> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& f = rows[i];
    auto fail = [&](const char* what) {
      return std::runtime_error("csv: row " + std::to_string(i + 1) + ": " + what);
    };
    if (f.size() != 9) throw fail("expected 9 fields");
    RunRecord r;
    r.algo = f[0];
    r.graph = f[1];
    auto n = parse_number<std::uint64_t>(f[2]), m = parse_number<std::uint64_t>(f[3]);
    auto t = parse_number<int>(f[4]);
    auto tau = parse_number<std::size_t>(f[5]), round = parse_number<std::size_t>(f[6]);
    auto sec = parse_number<double>(f[7]);
    auto cs = parse_number<std::uint64_t>(f[8]);
    if (!n || !m || !t || !tau || !round || !sec || !cs) throw fail("bad numeric field");
    r.n = *n, r.m = *m, r.threads = *t, r.tau = *tau, r.round = *round, r.seconds = *sec, r.checksum = *cs;
    out.push_back(std::move(r));
  }
  return out;
}

void emit_csv(const BenchReport& report, const std::filesystem::path& path) {
  write_file(path, format_csv(report.records));
}

}  // namespace pasgal::bench
