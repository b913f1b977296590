#include "pasgal/graph_io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <optional>
#include <vector>

namespace pasgal {

FormatError::FormatError(const std::string& what, std::size_t line, std::size_t byte)
    : std::runtime_error(what + (line ? " (line " + std::to_string(line) + ", byte " : " (byte ") +
                         std::to_string(byte) + ")"),
      line_(line),
      byte_(byte) {}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string data;
  in.seekg(0, std::ios::end);
  auto size = in.tellg();
  if (size < 0) throw std::runtime_error("cannot determine size of " + path.string());
  data.resize(static_cast<std::size_t>(size));
  in.seekg(0);
  in.read(data.data(), size);
  if (!in) throw std::runtime_error("read failed for " + path.string());
  return data;
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

namespace {

constexpr std::string_view kAdjHeader = "AdjacencyGraph";
constexpr std::string_view kWeightedAdjHeader = "WeightedAdjacencyGraph";

class Tokenizer {
 public:
  explicit Tokenizer(std::string_view text) : text_(text) {}

  struct Token {
    std::string_view text;
    std::size_t line;
    std::size_t byte;
  };

  std::optional<Token> next() {
    while (pos_ < text_.size() && is_space(text_[pos_])) {
      if (text_[pos_] == '\n') ++line_;
      ++pos_;
    }
    if (pos_ == text_.size()) return std::nullopt;
    std::size_t start = pos_;
    while (pos_ < text_.size() && !is_space(text_[pos_])) ++pos_;
    return Token{text_.substr(start, pos_ - start), line_, start};
  }

  Token expect(std::string_view what) {
    auto t = next();
    if (!t) throw FormatError("unexpected end of file, expected " + std::string(what), line_, pos_);
    return *t;
  }

 private:
  static bool is_space(char c) { return c == ' ' || c == '\n' || c == '\t' || c == '\r'; }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

std::uint64_t parse_u64(const Tokenizer::Token& t, std::string_view what) {
  std::uint64_t value = 0;
  const char* end = t.text.data() + t.text.size();
  auto [ptr, ec] = std::from_chars(t.text.data(), end, value);
  if (ec != std::errc() || ptr != end)
    throw FormatError("invalid " + std::string(what) + " '" + std::string(t.text) + "'", t.line,
                      t.byte);
  return value;
}

Weight parse_weight(const Tokenizer::Token& t) {
  Weight value = 0;
  const char* end = t.text.data() + t.text.size();
  auto [ptr, ec] = std::from_chars(t.text.data(), end, value);
  if (ec != std::errc() || ptr != end)
    throw FormatError("invalid weight '" + std::string(t.text) + "'", t.line, t.byte);
  if (!(value >= 0.0f) || value == std::numeric_limits<Weight>::infinity())
    throw FormatError("weight must be finite and non-negative", t.line, t.byte);
  return value;
}

template <typename T>
void append_number(std::string& out, T value) {
  std::array<char, 32> buf;
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  out.append(buf.data(), ptr);
  out.push_back('\n');
}

template <typename T>
void put_le(std::string& out, T value) {
  static_assert(std::is_unsigned_v<T>);
  for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<char>((value >> (8 * i)) & 0xff));
}

template <typename T>
T get_le(std::span<const std::byte> data, std::size_t pos) {
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i)
    value |= static_cast<T>(std::to_integer<unsigned char>(data[pos + i])) << (8 * i);
  return value;
}

}  // namespace

template <VertexIdType V>
Graph<V> parse_adj(std::string_view text, bool weighted) {
  Tokenizer tok(text);
  auto header = tok.expect("header");
  std::string_view expected = weighted ? kWeightedAdjHeader : kAdjHeader;
  if (header.text != expected)
    throw FormatError("malformed header '" + std::string(header.text) + "', expected " +
                          std::string(expected),
                      header.line, header.byte);
  auto n_tok = tok.expect("vertex count");
  std::uint64_t n = parse_u64(n_tok, "vertex count");
  auto m_tok = tok.expect("edge count");
  std::uint64_t m = parse_u64(m_tok, "edge count");
  if (n > static_cast<std::uint64_t>(kNoVertex<V>))
    throw FormatError("vertex count exceeds id width", n_tok.line, n_tok.byte);
  // Each token needs at least two bytes; reject absurd counts before allocating.
  std::uint64_t budget = text.size() / 2 + 1;
  if (n > budget || m > budget)
    throw FormatError("token count mismatch: file too short for the declared sizes", m_tok.line,
                      m_tok.byte);

  std::vector<EdgeId> offsets(n + 1);
  for (std::uint64_t v = 0; v < n; ++v) {
    auto t = tok.expect("offset");
    std::uint64_t off = parse_u64(t, "offset");
    if (off > m) throw FormatError("offset out of range: " + std::to_string(off) + " > m", t.line, t.byte);
    if (v == 0 && off != 0) throw FormatError("offset out of range: first offset must be 0", t.line, t.byte);
    if (v > 0 && off < offsets[v - 1])
      throw FormatError("offset out of range: offsets must be non-decreasing", t.line, t.byte);
    offsets[v] = off;
  }
  offsets[n] = m;
  if (n == 0 && m != 0) throw FormatError("edges declared for an empty vertex set", m_tok.line, m_tok.byte);

  std::vector<V> targets(m);
  for (std::uint64_t e = 0; e < m; ++e) {
    auto t = tok.expect("edge target");
    std::uint64_t v = parse_u64(t, "edge target");
    if (v >= n) throw FormatError("target " + std::to_string(v) + " >= n", t.line, t.byte);
    targets[e] = static_cast<V>(v);
  }
  std::optional<std::vector<Weight>> weights;
  if (weighted) {
    weights.emplace(m);
    for (std::uint64_t e = 0; e < m; ++e) (*weights)[e] = parse_weight(tok.expect("edge weight"));
  }
  if (auto extra = tok.next())
    throw FormatError("token count mismatch: trailing token '" + std::string(extra->text) + "'",
                      extra->line, extra->byte);
  return Graph<V>::from_csr_unchecked(std::move(offsets), std::move(targets), std::move(weights));
}

template <VertexIdType V>
std::string format_adj(const Graph<V>& g) {
  std::string out;
  out.reserve(16 + 8 * (g.num_vertices() + 2 * g.num_edges()));
  out.append(g.weighted() ? kWeightedAdjHeader : kAdjHeader);
  out.push_back('\n');
  append_number(out, static_cast<std::uint64_t>(g.num_vertices()));
  append_number(out, static_cast<std::uint64_t>(g.num_edges()));
  auto offsets = g.offsets();
  for (std::size_t v = 0; v < g.num_vertices(); ++v) append_number(out, offsets[v]);
  for (V t : g.targets()) append_number(out, static_cast<std::uint64_t>(t));
  for (Weight w : g.weights()) append_number(out, w);
  return out;
}

template <VertexIdType V>
Graph<V> load_adj(const std::filesystem::path& path, bool weighted) {
  return parse_adj<V>(read_file(path), weighted);
}

template <VertexIdType V>
void save_adj(const Graph<V>& g, const std::filesystem::path& path) {
  write_file(path, format_adj(g));
}

template <VertexIdType V>
Graph<V> parse_bin(std::span<const std::byte> data, bool weighted) {
  constexpr std::size_t kHeader = 24;
  if (data.size() < kHeader) throw FormatError("truncated file", 0, data.size());
  std::uint64_t n = get_le<std::uint64_t>(data, 0);
  std::uint64_t m = get_le<std::uint64_t>(data, 8);
  std::uint64_t size = get_le<std::uint64_t>(data, 16);
  constexpr std::uint64_t kLimit = std::numeric_limits<std::uint64_t>::max() / 16;
  if (n >= kLimit || m >= kLimit) throw FormatError("size-field mismatch: counts overflow", 0, 0);
  std::uint64_t expected = kHeader + (n + 1) * 8 + m * 4;
  if (size != expected)
    throw FormatError("size-field mismatch: header says " + std::to_string(size) + ", layout needs " +
                          std::to_string(expected),
                      0, 16);
  std::uint64_t total = expected + (weighted ? m * 4 : 0);
  if (data.size() < total) throw FormatError("truncated file", 0, data.size());
  if (data.size() > total) throw FormatError("trailing bytes after graph data", 0, total);
  if (n > static_cast<std::uint64_t>(kNoVertex<V>) || n > (std::uint64_t{1} << 32))
    throw FormatError("vertex count exceeds id width", 0, 0);

  std::vector<EdgeId> offsets(n + 1);
  for (std::uint64_t v = 0; v <= n; ++v) {
    std::size_t pos = kHeader + v * 8;
    std::uint64_t off = get_le<std::uint64_t>(data, pos);
    if (off > m || (v > 0 && off < offsets[v - 1]) || (v == 0 && off != 0) || (v == n && off != m))
      throw FormatError("offset out of range at vertex " + std::to_string(v), 0, pos);
    offsets[v] = off;
  }
  std::size_t target_base = kHeader + (n + 1) * 8;
  std::vector<V> targets(m);
  for (std::uint64_t e = 0; e < m; ++e) {
    std::size_t pos = target_base + e * 4;
    std::uint32_t t = get_le<std::uint32_t>(data, pos);
    if (t >= n) throw FormatError("target " + std::to_string(t) + " >= n", 0, pos);
    targets[e] = static_cast<V>(t);
  }
  std::optional<std::vector<Weight>> weights;
  if (weighted) {
    weights.emplace(m);
    std::size_t weight_base = expected;
    for (std::uint64_t e = 0; e < m; ++e) {
      std::size_t pos = weight_base + e * 4;
      Weight w = std::bit_cast<Weight>(get_le<std::uint32_t>(data, pos));
      if (!(w >= 0.0f) || w == std::numeric_limits<Weight>::infinity())
        throw FormatError("weight must be finite and non-negative", 0, pos);
      (*weights)[e] = w;
    }
  }
  return Graph<V>::from_csr_unchecked(std::move(offsets), std::move(targets), std::move(weights));
}

template <VertexIdType V>
std::string format_bin(const Graph<V>& g) {
  std::uint64_t n = g.num_vertices(), m = g.num_edges();
  if (n > (std::uint64_t{1} << 32)) throw std::runtime_error(".bin targets are 32-bit; graph too large");
  std::string out;
  out.reserve(24 + (n + 1) * 8 + m * (g.weighted() ? 8 : 4));
  put_le<std::uint64_t>(out, n);
  put_le<std::uint64_t>(out, m);
  put_le<std::uint64_t>(out, 24 + (n + 1) * 8 + m * 4);
  for (EdgeId off : g.offsets()) put_le<std::uint64_t>(out, off);
  for (V t : g.targets()) put_le<std::uint32_t>(out, static_cast<std::uint32_t>(t));
  for (Weight w : g.weights()) put_le<std::uint32_t>(out, std::bit_cast<std::uint32_t>(w));
  return out;
}

template <VertexIdType V>
Graph<V> load_bin(const std::filesystem::path& path, bool weighted) {
  std::string data = read_file(path);
  return parse_bin<V>(std::as_bytes(std::span<const char>(data)), weighted);
}

template <VertexIdType V>
void save_bin(const Graph<V>& g, const std::filesystem::path& path) {
  write_file(path, format_bin(g));
}

namespace {

// Reads the declared vertex count without parsing the body.
std::uint64_t declared_vertices_adj(std::string_view text) {
  Tokenizer tok(text);
  tok.expect("header");
  return parse_u64(tok.expect("vertex count"), "vertex count");
}

}  // namespace

AnyGraph load_graph(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  if (ext == ".bin" || ext == ".wbin") {
    std::string data = read_file(path);
    return parse_bin<std::uint32_t>(std::as_bytes(std::span<const char>(data)), ext == ".wbin");
  }
  if (ext == ".adj") {
    std::string text = read_file(path);
    bool weighted = text.starts_with(kWeightedAdjHeader);
    if (declared_vertices_adj(text) < static_cast<std::uint64_t>(kNoVertex<std::uint32_t>))
      return parse_adj<std::uint32_t>(text, weighted);
    return parse_adj<std::uint64_t>(text, weighted);
  }
  throw std::runtime_error("unknown graph extension '" + ext + "' (expected .adj, .bin or .wbin)");
}

void save_graph(const AnyGraph& g, const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::visit([&](const auto& graph) {
    if (ext == ".adj") {
      save_adj(graph, path);
    } else if (ext == ".bin" || ext == ".wbin") {
      if (graph.weighted() != (ext == ".wbin"))
        throw std::runtime_error("use .wbin for weighted graphs and .bin for unweighted ones");
      save_bin(graph, path);
    } else {
      throw std::runtime_error("unknown graph extension '" + ext + "'");
    }
  }, g);
}

#define PASGAL_INSTANTIATE_IO(V)                                                   \
  template Graph<V> parse_adj<V>(std::string_view, bool);                          \
  template std::string format_adj<V>(const Graph<V>&);                             \
  template Graph<V> load_adj<V>(const std::filesystem::path&, bool);               \
  template void save_adj<V>(const Graph<V>&, const std::filesystem::path&);        \
  template Graph<V> parse_bin<V>(std::span<const std::byte>, bool);                \
  template std::string format_bin<V>(const Graph<V>&);                             \
  template Graph<V> load_bin<V>(const std::filesystem::path&, bool);               \
  template void save_bin<V>(const Graph<V>&, const std::filesystem::path&);

PASGAL_INSTANTIATE_IO(std::uint32_t)
PASGAL_INSTANTIATE_IO(std::uint64_t)

}  // namespace pasgal
