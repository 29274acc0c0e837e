#pragma once

// Breadth-first layering driven by Grover search: every processed vertex
// issues one batch search over its domain for slots that lead to vertices
// without a layer yet.

#include <cstdint>
#include <deque>
#include <limits>
#include <vector>

#include "qgraph/graph_core.hpp"
#include "qgraph/quantum_cost.hpp"

namespace qgraph {

inline constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

struct LayerAssignment {
  Vertex start = 0;
  std::vector<std::uint32_t> layer;
  /// Vertices in the order they were discovered (start first).
  std::vector<Vertex> visit_order;
  /// n_v: vertices first discovered while processing v.
  std::vector<std::uint32_t> found;
  /// Search-domain size of each processed vertex, 0 for the others.
  std::vector<std::uint64_t> domain;
  /// How many times each vertex was taken from the queue.
  std::vector<std::uint32_t> times_processed;

  bool reached(Vertex v) const { return layer[v] != kUnreached; }
  std::size_t reached_count() const { return visit_order.size(); }
};

template <SearchableGraph G>
LayerAssignment assign_layers(const G& g, Vertex start, QuantumEmulator& quantum) {
  const std::size_t n = g.vertex_count();
  if (start < 0 || static_cast<std::size_t>(start) >= n) throw BoundsError("start vertex out of range");

  LayerAssignment out;
  out.start = start;
  out.layer.assign(n, kUnreached);
  out.found.assign(n, 0);
  out.domain.assign(n, 0);
  out.times_processed.assign(n, 0);
  out.layer[start] = 0;
  out.visit_order.push_back(start);

  std::deque<Vertex> queue{start};
  while (!queue.empty()) {
    const Vertex x = queue.front();
    queue.pop_front();
    ++out.times_processed[x];
    const std::size_t size = g.domain_size(x);
    out.domain[x] = size;
    const auto hits = quantum.find_all(size, [&](std::size_t i) {
      const auto y = g.slot(x, i, quantum.meter());
      return y && out.layer[*y] == kUnreached;
    });
    for (std::size_t i : hits) {
      const Vertex y = *g.slot(x, i, quantum.meter());
      // Two slots may name the same vertex in multigraph views.
      if (out.layer[y] != kUnreached) continue;
      out.layer[y] = out.layer[x] + 1;
      ++out.found[x];
      out.visit_order.push_back(y);
      queue.push_back(y);
    }
  }
  return out;
}

}  // namespace qgraph
