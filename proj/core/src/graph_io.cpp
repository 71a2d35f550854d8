#include "fppa/graph_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "fppa/errors.hpp"

namespace fppa {

namespace {

template <class T>
T parse_number(std::string_view token, std::size_t line, const char* what) {
  T value{};
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw ParseError(std::string("invalid ") + what + " '" + std::string(token) + "'", line);
  }
  return value;
}

std::vector<std::string_view> split(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < s.size() && !(s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

// m from an "fpa(m=<m>,...)" tag, which fixes the edge count to m(t-1).
std::optional<int> fpa_outdegree(std::string_view variant) {
  constexpr std::string_view prefix = "fpa(m=";
  if (variant.substr(0, prefix.size()) != prefix) return std::nullopt;
  const auto rest = variant.substr(prefix.size());
  int m = 0;
  auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), m);
  if (ec != std::errc{} || ptr == rest.data()) return std::nullopt;
  return m;
}

}  // namespace

void write_graph(std::ostream& out, const GrowthGraph& g) {
  const auto& prov = g.provenance();
  out << kGraphFormatMagic << ' ' << kGraphFormatVersion
      << " variant=" << (prov.variant.empty() ? "unknown" : prov.variant) << " t=" << g.size()
      << " seed=" << prov.seed << '\n';
  const auto edges = g.edges();
  const auto weights = g.weights();
  char buf[64];
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    out << e.born << ' ' << e.src << ' ' << e.dst;
    if (!weights.empty()) {
      std::snprintf(buf, sizeof buf, " %.17g", weights[i]);
      out << buf;
    }
    out << '\n';
  }
}

LoadedGraph read_graph(std::istream& in, const std::string& expected_variant) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw ParseError("empty file, missing #pa-graph header", 1);
  ++lineno;
  const auto head = split(line);
  if (head.size() < 2 || head[0] != kGraphFormatMagic) {
    throw ParseError("missing #pa-graph header", lineno);
  }
  if (head[1] != kGraphFormatVersion) {
    throw ParseError("unsupported format version '" + std::string(head[1]) + "'", lineno);
  }
  std::string variant;
  std::optional<Vertex> t;
  std::uint64_t seed = 0;
  for (std::size_t i = 2; i < head.size(); ++i) {
    const auto eq = head[i].find('=');
    if (eq == std::string_view::npos) throw ParseError("malformed header field", lineno);
    const auto key = head[i].substr(0, eq);
    const auto value = head[i].substr(eq + 1);
    if (key == "variant") {
      variant = std::string(value);
    } else if (key == "t") {
      t = parse_number<Vertex>(value, lineno, "t");
    } else if (key == "seed") {
      seed = parse_number<std::uint64_t>(value, lineno, "seed");
    }
  }
  if (!t) throw ParseError("header lacks t=<size>", lineno);

  LoadedGraph result;
  if (!expected_variant.empty() && variant != expected_variant) {
    result.warnings.push_back("header variant '" + variant + "' does not match requested '" +
                              expected_variant + "'");
  }

  std::vector<Edge> edges;
  std::vector<double> weights;
  std::optional<bool> weighted;
  Vertex last_born = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto tok = split(line);
    if (tok.empty()) continue;
    if (in.eof()) throw ParseError("truncated record (missing end of line)", lineno);
    if (tok.size() != 3 && tok.size() != 4) {
      throw ParseError("expected 'born src dst [weight]'", lineno);
    }
    const bool has_w = tok.size() == 4;
    if (weighted && *weighted != has_w) throw ParseError("inconsistent weight column", lineno);
    weighted = has_w;
    Edge e{parse_number<Vertex>(tok[0], lineno, "born"), parse_number<Vertex>(tok[1], lineno, "src"),
           parse_number<Vertex>(tok[2], lineno, "dst")};
    if (e.born != e.src) throw ParseError("born must equal src", lineno);
    if (e.src > *t || e.dst < 1 || e.dst >= e.src) {
      throw ParseError("endpoints must satisfy 1 <= dst < src <= t", lineno);
    }
    if (e.born < last_born) throw ParseError("edges out of birth order", lineno);
    last_born = e.born;
    edges.push_back(e);
    if (has_w) {
      const double w = parse_number<double>(tok[3], lineno, "weight");
      if (!(w >= 0.0)) throw ParseError("negative weight", lineno);
      weights.push_back(w);
    }
  }
  if (in.bad()) throw ParseError("read error", lineno);
  if (const auto m = fpa_outdegree(variant)) {
    const std::size_t expected = static_cast<std::size_t>(*m) * (*t - 1);
    if (edges.size() != expected) {
      throw ParseError("truncated edge list: " + std::to_string(edges.size()) + " of " +
                           std::to_string(expected) + " edges",
                       lineno);
    }
  }
  result.graph = GrowthGraph(*t, std::move(edges), GraphProvenance{variant, seed}, std::move(weights));
  return result;
}

void save_graph(const GrowthGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  write_graph(out, g);
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

LoadedGraph load_graph(const std::filesystem::path& path, const std::string& expected_variant) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'", 0);
  return read_graph(in, expected_variant);
}

}  // namespace fppa
