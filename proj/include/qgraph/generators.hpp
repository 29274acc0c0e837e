#pragma once

// Seeded instance generators. Every generator is a pure function of its
// arguments: the same call yields a bit-identical instance on any platform.

#include <cstdint>
#include <set>
#include <vector>

#include "qgraph/core.hpp"
#include "qgraph/graph_core.hpp"

namespace qgraph {

/// Random bipartite graph on V1 = [0, n1), V2 = [n1, n1 + n2). Each pair is
/// an edge with probability p; an empty draw gets one forced random edge.
inline BlackBoxGraph gen_random_bipartite(std::size_t n1, std::size_t n2, double p,
                                          std::uint64_t seed, Model model = Model::List,
                                          ListLayout layout = {}) {
  if (n1 == 0 || n2 == 0) throw ContractViolation("both sides need at least one vertex");
  if (!(p > 0.0 && p <= 1.0)) throw ContractViolation("edge probability must lie in (0, 1]");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (std::size_t x = 0; x < n1; ++x) {
    for (std::size_t y = 0; y < n2; ++y) {
      if (uniform_unit(rng) < p) {
        edges.push_back({static_cast<Vertex>(x), static_cast<Vertex>(n1 + y)});
      }
    }
  }
  if (edges.empty()) {
    const auto x = static_cast<Vertex>(uniform_below(rng, n1));
    const auto y = static_cast<Vertex>(n1 + uniform_below(rng, n2));
    edges.push_back({x, y});
  }
  return BlackBoxGraph::from_edges(n1 + n2, std::move(edges), false, model, layout);
}

/// Erdos-Renyi G(n, p), undirected; forces one edge on an empty draw.
inline BlackBoxGraph gen_random_graph(std::size_t n, double p, std::uint64_t seed,
                                      Model model = Model::List, ListLayout layout = {}) {
  if (n < 2) throw ContractViolation("random graph needs at least two vertices");
  if (!(p > 0.0 && p <= 1.0)) throw ContractViolation("edge probability must lie in (0, 1]");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (uniform_unit(rng) < p) edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
    }
  }
  if (edges.empty()) {
    const auto u = static_cast<Vertex>(uniform_below(rng, n));
    auto v = static_cast<Vertex>(uniform_below(rng, n - 1));
    if (v >= u) ++v;
    edges.push_back({std::min(u, v), std::max(u, v)});
  }
  return BlackBoxGraph::from_edges(n, std::move(edges), false, model, layout);
}

/// Random digraph with exactly m distinct arcs (no self-loops).
inline BlackBoxGraph gen_random_digraph(std::size_t n, std::size_t m, std::uint64_t seed,
                                        Model model = Model::List, ListLayout layout = {}) {
  if (n < 2) throw ContractViolation("random digraph needs at least two vertices");
  if (m == 0 || m > n * (n - 1)) throw InfeasibleError("arc count outside [1, n(n-1)]");
  Rng rng(seed);
  std::vector<Edge> edges;
  if (2 * m > n * (n - 1)) {
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = 0; v < n; ++v) {
        if (u != v) edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
      }
    }
    shuffle(edges, rng);
    edges.resize(m);
  } else {
    std::set<Edge> seen;
    while (edges.size() < m) {
      const auto u = static_cast<Vertex>(uniform_below(rng, n));
      const auto v = static_cast<Vertex>(uniform_below(rng, n));
      if (u == v || !seen.insert({u, v}).second) continue;
      edges.push_back({u, v});
    }
  }
  return BlackBoxGraph::from_edges(n, std::move(edges), true, model, layout);
}

/// Random s-t network on n vertices with source 0 and sink n-1. A random
/// arborescence rooted at the source keeps every vertex reachable; the
/// remaining arcs are placed uniformly among unused vertex pairs (no
/// antiparallel pairs), so cycles are allowed. Capacities are uniform in
/// [1, U].
inline IntegerNetwork gen_random_network(std::size_t n, std::size_t m_target, std::int64_t U,
                                         std::uint64_t seed, Model model = Model::List,
                                         ListLayout layout = {}) {
  if (n < 2) throw ContractViolation("network needs at least two vertices");
  if (U < 1) throw ContractViolation("capacity bound must be at least 1");
  if (m_target < n - 1) throw InfeasibleError("m_target < n - 1 cannot connect the network");
  if (m_target > n * (n - 1) / 2) throw InfeasibleError("m_target exceeds the number of vertex pairs");

  Rng rng(seed);
  std::vector<Vertex> order;
  for (std::size_t v = 1; v < n; ++v) order.push_back(static_cast<Vertex>(v));
  shuffle(order, rng);
  order.insert(order.begin(), 0);

  std::set<Edge> used;  // unordered pairs
  std::vector<Arc> arcs;
  auto capacity = [&] { return 1 + static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(U))); };
  for (std::size_t i = 1; i < n; ++i) {
    const Vertex parent = order[uniform_below(rng, i)];
    const Vertex child = order[i];
    used.insert({std::min(parent, child), std::max(parent, child)});
    arcs.push_back({parent, child, capacity()});
  }

  const std::size_t pairs = n * (n - 1) / 2;
  if (2 * m_target > pairs) {
    std::vector<Edge> free_pairs;
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = u + 1; v < n; ++v) {
        Edge e{static_cast<Vertex>(u), static_cast<Vertex>(v)};
        if (!used.count(e)) free_pairs.push_back(e);
      }
    }
    shuffle(free_pairs, rng);
    for (std::size_t i = 0; arcs.size() < m_target; ++i) {
      Edge e = free_pairs[i];
      if (uniform_below(rng, 2) == 1) std::swap(e.u, e.v);
      arcs.push_back({e.u, e.v, capacity()});
    }
  } else {
    while (arcs.size() < m_target) {
      auto u = static_cast<Vertex>(uniform_below(rng, n));
      auto v = static_cast<Vertex>(uniform_below(rng, n));
      if (u == v || !used.insert({std::min(u, v), std::max(u, v)}).second) continue;
      arcs.push_back({u, v, capacity()});
    }
  }
  return IntegerNetwork::create(n, std::move(arcs), 0, static_cast<Vertex>(n - 1), U, model, layout);
}

/// Four-layer network: source, two middle layers of width p, sink. Source
/// and sink attach to every middle vertex with capacity n = 2p + 2; the
/// middle layers share floor(p^2 / 2) + extra random unit arcs, which form
/// the minimum cut.
inline IntegerNetwork gen_majority_hard_instance(std::size_t p, int extra, std::uint64_t seed,
                                                 Model model = Model::List,
                                                 ListLayout layout = {}) {
  if (p < 1) throw ContractViolation("layer width must be at least 1");
  if (extra != 0 && extra != 1) throw ContractViolation("extra must be 0 or 1");
  const std::size_t n = 2 * p + 2;
  const auto big = static_cast<std::int64_t>(n);
  const auto source = Vertex{0};
  const auto sink = static_cast<Vertex>(n - 1);
  std::vector<Arc> arcs;
  for (std::size_t i = 0; i < p; ++i) arcs.push_back({source, static_cast<Vertex>(1 + i), big});
  for (std::size_t i = 0; i < p; ++i) arcs.push_back({static_cast<Vertex>(1 + p + i), sink, big});

  std::vector<Edge> middle;
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      middle.push_back({static_cast<Vertex>(1 + i), static_cast<Vertex>(1 + p + j)});
    }
  }
  Rng rng(seed);
  shuffle(middle, rng);
  const std::size_t count = p * p / 2 + static_cast<std::size_t>(extra);
  for (std::size_t i = 0; i < count; ++i) arcs.push_back({middle[i].u, middle[i].v, 1});
  return IntegerNetwork::create(n, std::move(arcs), source, sink, big, model, layout);
}

// Small named families used by tests and the CLI.

inline BlackBoxGraph complete_graph(std::size_t n, Model model = Model::List) {
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  return BlackBoxGraph::from_edges(n, std::move(edges), false, model);
}

inline BlackBoxGraph complete_bipartite(std::size_t a, std::size_t b, Model model = Model::List) {
  return gen_random_bipartite(a, b, 1.0, 0, model);
}

inline BlackBoxGraph path_graph(std::size_t n, Model model = Model::List) {
  std::vector<Edge> edges;
  for (std::size_t v = 0; v + 1 < n; ++v) edges.push_back({static_cast<Vertex>(v), static_cast<Vertex>(v + 1)});
  return BlackBoxGraph::from_edges(n, std::move(edges), false, model);
}

inline BlackBoxGraph cycle_graph(std::size_t n, Model model = Model::List) {
  std::vector<Edge> edges;
  for (std::size_t v = 0; v < n; ++v) {
    edges.push_back({static_cast<Vertex>(v), static_cast<Vertex>((v + 1) % n)});
  }
  return BlackBoxGraph::from_edges(n, std::move(edges), false, model);
}

inline BlackBoxGraph star_graph(std::size_t leaves, Model model = Model::List) {
  std::vector<Edge> edges;
  for (std::size_t v = 1; v <= leaves; ++v) edges.push_back({0, static_cast<Vertex>(v)});
  return BlackBoxGraph::from_edges(leaves + 1, std::move(edges), false, model);
}

inline BlackBoxGraph petersen_graph(Model model = Model::List) {
  std::vector<Edge> edges;
  for (Vertex i = 0; i < 5; ++i) {
    edges.push_back({i, static_cast<Vertex>((i + 1) % 5)});       // outer cycle
    edges.push_back({i, static_cast<Vertex>(5 + i)});             // spokes
    edges.push_back({static_cast<Vertex>(5 + i), static_cast<Vertex>(5 + (i + 2) % 5)});  // pentagram
  }
  return BlackBoxGraph::from_edges(10, std::move(edges), false, model);
}

}  // namespace qgraph
