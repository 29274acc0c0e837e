#pragma once

// Maximum bipartite matching by rounds of shortest vertex-disjoint
// augmenting paths. Each round layers an implicit digraph H built on-line
// from the input graph and the current matching, then extracts a maximal set
// of disjoint a->b paths by a marking depth-first search whose descendant
// lookups are Grover searches.

#include <cstdint>
#include <optional>
#include <vector>

#include "qgraph/graph_core.hpp"
#include "qgraph/layered_bfs.hpp"
#include "qgraph/quantum_cost.hpp"

namespace qgraph {

enum class Side : std::uint8_t { Left, Right };

/// Two-colors an undirected graph with Grover-driven BFS, then searches each
/// vertex's domain for a same-colored neighbor. Throws NotBipartite.
inline std::vector<Side> two_color(const BlackBoxGraph& g, QuantumEmulator& quantum) {
  if (g.directed()) throw ContractViolation("bipartite matching needs an undirected graph");
  const std::size_t n = g.vertex_count();
  std::vector<std::int8_t> color(n, -1);
  std::vector<Vertex> queue;
  for (std::size_t s = 0; s < n; ++s) {
    if (color[s] != -1) continue;
    color[s] = 0;
    queue.assign(1, static_cast<Vertex>(s));
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex x = queue[head];
      const auto hits = quantum.find_all(g.domain_size(x), [&](std::size_t i) {
        const auto y = g.slot(x, i, quantum.meter());
        return y && color[*y] == -1;
      });
      for (std::size_t i : hits) {
        const Vertex y = *g.slot(x, i, quantum.meter());
        if (color[y] != -1) continue;
        color[y] = static_cast<std::int8_t>(1 - color[x]);
        queue.push_back(y);
      }
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    const auto x = static_cast<Vertex>(v);
    const auto clash = quantum.find_one(g.domain_size(x), [&](std::size_t i) {
      const auto y = g.slot(x, i, quantum.meter());
      return y && color[*y] == color[v];
    });
    if (clash) throw NotBipartite("graph has an odd cycle through vertex " + std::to_string(v));
  }
  std::vector<Side> side(n);
  for (std::size_t v = 0; v < n; ++v) side[v] = color[v] == 0 ? Side::Left : Side::Right;
  return side;
}

/// The digraph H over V ∪ {a, b}, generated on demand:
///   a -> free Left vertices, Left -> Right along unmatched edges,
///   Right -> Left along matched edges, free Right vertices -> b.
/// Each slot read costs at most one probe of the base graph.
class AugmentingDigraphView {
 public:
  AugmentingDigraphView(const BlackBoxGraph& base, const std::vector<Side>& side,
                        const Matching& matching)
      : base_(base), side_(side), matching_(matching), n_(base.vertex_count()) {}

  std::size_t vertex_count() const { return n_ + 2; }
  Vertex source() const { return static_cast<Vertex>(n_); }
  Vertex sink() const { return static_cast<Vertex>(n_ + 1); }

  std::size_t domain_size(Vertex v) const {
    if (base_.model() == Model::Adjacency) return n_ + 2;
    if (v == source()) return n_;
    if (v == sink()) return 0;
    const std::size_t d = base_.list_length(v);
    return side_[v] == Side::Right ? d + 1 : d;
  }

  std::optional<Vertex> slot(Vertex v, std::size_t i, QueryLedger* meter) const {
    if (v == sink()) return std::nullopt;
    if (v == source()) {
      if (i < n_ && side_[i] == Side::Left && matching_.is_free(static_cast<Vertex>(i))) {
        return static_cast<Vertex>(i);
      }
      return std::nullopt;
    }
    return base_.model() == Model::Adjacency ? adjacency_slot(v, i, meter) : list_slot(v, i, meter);
  }

  const BlackBoxGraph& base() const { return base_; }
  const Matching& matching() const { return matching_; }

 private:
  std::optional<Vertex> adjacency_slot(Vertex v, std::size_t i, QueryLedger* meter) const {
    if (side_[v] == Side::Right && i == n_ + 1) {
      if (matching_.is_free(v)) return sink();
      return std::nullopt;
    }
    if (i >= n_) return std::nullopt;
    const auto w = static_cast<Vertex>(i);
    if (side_[v] == Side::Left) {
      if (side_[w] != Side::Right || matching_.mate(v) == w) return std::nullopt;
      if (base_.probe_adjacency(v, w, meter)) return w;
      return std::nullopt;
    }
    if (matching_.mate(v) == w) return w;
    return std::nullopt;
  }

  std::optional<Vertex> list_slot(Vertex v, std::size_t i, QueryLedger* meter) const {
    const std::size_t d = base_.list_length(v);
    if (i == d) {  // the extra slot of a Right vertex
      if (matching_.is_free(v)) return sink();
      return std::nullopt;
    }
    const Vertex w = base_.probe_list(v, i, meter);
    if (w == kHole) return std::nullopt;
    const bool matched_edge = matching_.mate(v) == w;
    if (side_[v] == Side::Left) return matched_edge ? std::nullopt : std::optional<Vertex>(w);
    return matched_edge ? std::optional<Vertex>(w) : std::nullopt;
  }

  const BlackBoxGraph& base_;
  const std::vector<Side>& side_;
  const Matching& matching_;
  std::size_t n_;
};

static_assert(SearchableGraph<AugmentingDigraphView>);

struct AugmentingPathSet {
  /// Base-graph augmenting paths, each starting in Left and ending in Right.
  std::vector<std::vector<Vertex>> paths;
  /// Common length of the paths in H (edges from a to b), 0 if none.
  std::uint32_t length = 0;
  LayerAssignment layers;
  /// How many times the DFS pushed each H vertex.
  std::vector<std::uint32_t> visits;
};

/// Maximal set of vertex-disjoint shortest a->b paths in the layered H.
inline AugmentingPathSet find_disjoint_augmenting_paths(const AugmentingDigraphView& view,
                                                        QuantumEmulator& quantum) {
  AugmentingPathSet out;
  out.layers = assign_layers(view, view.source(), quantum);
  const Vertex a = view.source();
  const Vertex b = view.sink();
  out.visits.assign(view.vertex_count(), 0);
  if (!out.layers.reached(b)) return out;
  const std::uint32_t target = out.layers.layer[b];
  out.length = target;

  std::vector<bool> marked(view.vertex_count(), false);
  std::vector<Vertex> stack{a};
  out.visits[a] = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    if (v == b) {
      out.paths.emplace_back(stack.begin() + 1, stack.end() - 1);
      stack.resize(1);
      continue;
    }
    const std::uint32_t next = out.layers.layer[v] + 1;
    const auto hit = quantum.find_one(view.domain_size(v), [&](std::size_t i) {
      const auto w = view.slot(v, i, quantum.meter());
      return w && !marked[*w] && out.layers.layer[*w] == next && (next < target || *w == b);
    });
    if (!hit) {
      stack.pop_back();
      continue;
    }
    const Vertex w = *view.slot(v, *hit, quantum.meter());
    if (w != b) {
      marked[w] = true;
      ++out.visits[w];
    }
    stack.push_back(w);
  }
  return out;
}

/// Flips every path; the paths must be vertex-disjoint augmenting paths.
inline Matching augment(Matching matching, const std::vector<std::vector<Vertex>>& paths) {
  std::vector<bool> used(matching.vertex_count(), false);
  for (const auto& path : paths) {
    for (Vertex v : path) {
      if (v < 0 || static_cast<std::size_t>(v) >= used.size()) {
        throw ContractViolation("path vertex out of range");
      }
      if (used[v]) throw ContractViolation("augmenting paths are not vertex-disjoint");
      used[v] = true;
    }
  }
  for (const auto& path : paths) matching.augment(path);
  return matching;
}

struct BipartiteIteration {
  std::size_t paths_found = 0;
  /// Length of the round's paths in H; strictly increases across rounds.
  std::uint32_t path_length = 0;
  /// Matching size after the round.
  std::size_t matching_size = 0;
  /// Ledger units (before amplification) spent in this round.
  std::uint64_t units = 0;
  /// Σ of H search-domain sizes over all vertices, for cost bounds.
  std::uint64_t domain_total = 0;
  std::uint64_t ledger_units_after = 0;
  /// Matching after the round.
  std::vector<Vertex> mates;
};

struct MatchingRunReport {
  std::vector<BipartiteIteration> iterations;
  std::vector<Side> side;
  std::uint64_t coloring_units = 0;
  /// Number of DFS pushes of one vertex in one round, maximised over rounds.
  std::uint32_t max_visits = 0;
};

struct BipartiteResult {
  Matching matching;
  MatchingRunReport report;
  QueryLedger ledger;
};

inline BipartiteResult max_bipartite_matching(const BlackBoxGraph& g, const OracleConfig& config) {
  QuantumEmulator quantum(config, g.vertex_count());
  BipartiteResult result;
  result.report.side = two_color(g, quantum);
  result.report.coloring_units = quantum.ledger().units();
  result.matching = Matching(g.vertex_count());

  while (true) {
    const std::uint64_t before = quantum.ledger().units();
    AugmentingDigraphView view(g, result.report.side, result.matching);
    AugmentingPathSet set = find_disjoint_augmenting_paths(view, quantum);
    if (set.paths.empty()) break;

    BipartiteIteration it;
    it.paths_found = set.paths.size();
    it.path_length = set.length;
    for (std::size_t v = 0; v < view.vertex_count(); ++v) {
      it.domain_total += view.domain_size(static_cast<Vertex>(v));
    }
    for (std::uint32_t c : set.visits) result.report.max_visits = std::max(result.report.max_visits, c);
    result.matching = augment(std::move(result.matching), set.paths);
    it.matching_size = result.matching.size();
    it.units = quantum.ledger().units() - before;
    it.ledger_units_after = quantum.ledger().units();
    it.mates.assign(result.matching.mates().begin(), result.matching.mates().end());
    result.report.iterations.push_back(std::move(it));
  }
  result.ledger = quantum.ledger();
  return result;
}

}  // namespace qgraph
