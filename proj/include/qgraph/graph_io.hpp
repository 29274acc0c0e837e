#pragma once

// Plain-text instance files.
//
//   G <n> <m> <directed:0|1>          then m lines  <u> <v>
//   N <n> <m> <source> <sink> <U>     then m lines  <u> <v> <cap>
//
// Vertices are 0-based; '#' starts a comment; tokens are whitespace-separated
// decimal integers.

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "qgraph/graph_core.hpp"

namespace qgraph {

using Instance = std::variant<BlackBoxGraph, IntegerNetwork>;

namespace detail {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

inline std::vector<Line> tokenize(std::istream& in) {
  std::vector<Line> lines;
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream ss(raw);
    Line line{number, {}};
    for (std::string tok; ss >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

inline std::int64_t parse_int(const std::string& tok, std::size_t line) {
  std::int64_t value = 0;
  const char* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, value);
  if (ec != std::errc() || ptr != end) throw ParseError(line, "not an integer: '" + tok + "'");
  return value;
}

inline Vertex parse_vertex(const std::string& tok, std::size_t n, std::size_t line) {
  const auto v = parse_int(tok, line);
  if (v < 0 || static_cast<std::size_t>(v) >= n) {
    throw ParseError(line, "vertex " + tok + " out of range");
  }
  return static_cast<Vertex>(v);
}

inline void expect_tokens(const Line& line, std::size_t count, const char* what) {
  if (line.tokens.size() != count) {
    throw ParseError(line.number, std::string("expected ") + std::to_string(count) +
                                      " fields in " + what);
  }
}

}  // namespace detail

/// Reads either file kind. The query model and hole layout are chosen by
/// the caller since the file only records the edge set.
inline Instance read_instance(std::istream& in, Model model = Model::List, ListLayout layout = {}) {
  using namespace detail;
  const auto lines = tokenize(in);
  if (lines.empty()) throw ParseError(1, "empty file");
  const Line& header = lines.front();
  const std::string& kind = header.tokens.front();
  if (kind != "G" && kind != "N") throw ParseError(header.number, "unknown header '" + kind + "'");
  const bool network = kind == "N";
  expect_tokens(header, network ? 6 : 4, "header");

  const auto n_raw = parse_int(header.tokens[1], header.number);
  const auto m_raw = parse_int(header.tokens[2], header.number);
  if (n_raw < 1) throw ParseError(header.number, "n must be at least 1");
  if (m_raw < 1) throw ParseError(header.number, "m must be at least 1");
  const auto n = static_cast<std::size_t>(n_raw);
  const auto m = static_cast<std::size_t>(m_raw);
  if (lines.size() - 1 != m) {
    const std::size_t where = lines.size() - 1 < m ? lines.back().number : lines[m + 1].number;
    throw ParseError(where, "expected " + std::to_string(m) + " edge lines, found " +
                                std::to_string(lines.size() - 1));
  }

  bool directed = true;
  Vertex source = 0;
  Vertex sink = 0;
  std::int64_t bound = 1;
  if (network) {
    source = parse_vertex(header.tokens[3], n, header.number);
    sink = parse_vertex(header.tokens[4], n, header.number);
    bound = parse_int(header.tokens[5], header.number);
    if (source == sink) throw ParseError(header.number, "source equals sink");
    if (bound < 1) throw ParseError(header.number, "U must be at least 1");
  } else {
    const auto flag = parse_int(header.tokens[3], header.number);
    if (flag != 0 && flag != 1) throw ParseError(header.number, "directed flag must be 0 or 1");
    directed = flag == 1;
  }

  std::set<Edge> seen;
  std::vector<Edge> edges;
  std::vector<Arc> arcs;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& line = lines[i];
    expect_tokens(line, network ? 3 : 2, network ? "arc line" : "edge line");
    const Vertex u = parse_vertex(line.tokens[0], n, line.number);
    const Vertex v = parse_vertex(line.tokens[1], n, line.number);
    if (u == v) throw ParseError(line.number, "self-loop");
    const Edge key = directed ? Edge{u, v} : Edge{std::min(u, v), std::max(u, v)};
    if (!seen.insert(key).second) throw ParseError(line.number, "parallel edge");
    if (network) {
      const auto cap = parse_int(line.tokens[2], line.number);
      if (cap < 1 || cap > bound) throw ParseError(line.number, "capacity outside [1, U]");
      arcs.push_back({u, v, cap});
    } else {
      edges.push_back({u, v});
    }
  }

  if (network) return IntegerNetwork::create(n, std::move(arcs), source, sink, bound, model, layout);
  return BlackBoxGraph::from_edges(n, std::move(edges), directed, model, layout);
}

inline void write_graph(std::ostream& out, const BlackBoxGraph& g) {
  out << "G " << g.vertex_count() << ' ' << g.edge_count() << ' ' << (g.directed() ? 1 : 0) << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

inline void write_network(std::ostream& out, const IntegerNetwork& net) {
  out << "N " << net.vertex_count() << ' ' << net.arc_count() << ' ' << net.source() << ' '
      << net.sink() << ' ' << net.capacity_bound() << '\n';
  for (const Arc& a : net.arcs()) out << a.tail << ' ' << a.head << ' ' << a.capacity << '\n';
}

inline Instance read_instance_file(const std::string& path, Model model = Model::List,
                                   ListLayout layout = {}) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  return read_instance(in, model, layout);
}

inline BlackBoxGraph read_graph_file(const std::string& path, Model model = Model::List,
                                     ListLayout layout = {}) {
  auto inst = read_instance_file(path, model, layout);
  if (auto* g = std::get_if<BlackBoxGraph>(&inst)) return std::move(*g);
  throw ParseError(1, "'" + path + "' holds a network, expected a graph");
}

inline IntegerNetwork read_network_file(const std::string& path, Model model = Model::List,
                                        ListLayout layout = {}) {
  auto inst = read_instance_file(path, model, layout);
  if (auto* net = std::get_if<IntegerNetwork>(&inst)) return std::move(*net);
  throw ParseError(1, "'" + path + "' holds a graph, expected a network");
}

inline void write_graph_file(const std::string& path, const BlackBoxGraph& g) {
  std::ofstream out(path);
  write_graph(out, g);
}

inline void write_network_file(const std::string& path, const IntegerNetwork& net) {
  std::ofstream out(path);
  write_network(out, net);
}

}  // namespace qgraph
