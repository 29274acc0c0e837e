#pragma once

// Classical reference solvers used to check the emulated algorithms. None of
// them touch the metered probe interface; they read the edge set directly.
// Two independent solvers exist for each quantity so a shared bug has to
// hide in two unrelated places.

#include <chrono>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/max_cardinality_matching.hpp>

#include "qgraph/graph_core.hpp"
#include "qgraph/layered_bfs.hpp"

namespace qgraph {

template <class W>
struct OracleResult {
  std::int64_t value = 0;
  std::optional<W> witness;
  std::chrono::nanoseconds elapsed{0};
};

namespace detail {

template <class F>
auto timed(F&& body) {
  const auto start = std::chrono::steady_clock::now();
  auto result = body();
  result.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(
      std::chrono::steady_clock::now() - start);
  return result;
}

}  // namespace detail

inline constexpr std::size_t kBruteForceLimit = 20;

/// Exact maximum matching by memoized search over vertex subsets: the lowest
/// unused vertex is either left unmatched or matched to an unused neighbor.
inline OracleResult<Matching> brute_force_max_matching(const BlackBoxGraph& g) {
  const std::size_t n = g.vertex_count();
  if (n > kBruteForceLimit) {
    throw SizeGuardError("brute-force matching is limited to n <= " +
                         std::to_string(kBruteForceLimit));
  }
  return detail::timed([&] {
    const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
    std::vector<std::int8_t> memo(std::size_t{1} << n, -1);
    std::function<int(std::uint32_t)> best = [&](std::uint32_t used) -> int {
      if (used == full) return 0;
      if (memo[used] >= 0) return memo[used];
      int v = 0;
      while (used & (1u << v)) ++v;
      const std::uint32_t with_v = used | (1u << v);
      int result = best(with_v);
      for (Vertex w : g.neighbors(v)) {
        if (used & (1u << w)) continue;
        result = std::max(result, 1 + best(with_v | (1u << w)));
      }
      memo[used] = static_cast<std::int8_t>(result);
      return result;
    };

    OracleResult<Matching> out;
    out.value = best(0);
    Matching witness(n);
    std::uint32_t used = 0;
    while (used != full) {
      int v = 0;
      while (used & (1u << v)) ++v;
      const std::uint32_t with_v = used | (1u << v);
      const int target = best(used);
      std::uint32_t next = with_v;
      if (best(with_v) != target) {
        for (Vertex w : g.neighbors(v)) {
          if (used & (1u << w)) continue;
          if (1 + best(with_v | (1u << w)) == target) {
            witness.match(static_cast<Vertex>(v), w);
            next = with_v | (1u << w);
            break;
          }
        }
      }
      used = next;
    }
    out.witness = std::move(witness);
    return out;
  });
}

/// Every simple augmenting path with at most max_edges edges that avoids the
/// excluded vertices, reported through visit (return false to stop early).
/// Paths start at the smaller free endpoint so each appears once.
inline void enumerate_augmenting_paths(const BlackBoxGraph& g, const Matching& matching,
                                       std::size_t max_edges, const std::vector<bool>& excluded,
                                       const std::function<bool(const std::vector<Vertex>&)>& visit) {
  const std::size_t n = g.vertex_count();
  std::vector<bool> on_path(n, false);
  std::vector<Vertex> path;
  bool stop = false;
  std::function<void(Vertex)> extend = [&](Vertex v) {
    // v was reached by an unmatched edge (or is the start): leave by an
    // unmatched edge to a free vertex, or by one to a matched vertex and
    // then its matched edge.
    for (Vertex w : g.neighbors(v)) {
      if (stop) return;
      if (on_path[w] || excluded[w] || matching.mate(v) == w) continue;
      if (path.size() > max_edges) continue;
      if (matching.is_free(w)) {
        if (w > path.front()) {
          path.push_back(w);
          if (!visit(path)) stop = true;
          path.pop_back();
        }
        continue;
      }
      const Vertex x = matching.mate(w);
      if (on_path[x] || excluded[x] || path.size() + 2 > max_edges) continue;
      on_path[w] = on_path[x] = true;
      path.push_back(w);
      path.push_back(x);
      extend(x);
      path.pop_back();
      path.pop_back();
      on_path[w] = on_path[x] = false;
    }
  };
  for (std::size_t s = 0; s < n && !stop; ++s) {
    const auto a = static_cast<Vertex>(s);
    if (!matching.is_free(a) || excluded[a]) continue;
    path.assign(1, a);
    on_path[a] = true;
    extend(a);
    on_path[a] = false;
  }
}

/// First augmenting path found by exhaustive search, if any.
inline std::optional<std::vector<Vertex>> find_augmenting_path_exhaustive(
    const BlackBoxGraph& g, const Matching& matching) {
  std::optional<std::vector<Vertex>> found;
  enumerate_augmenting_paths(g, matching, g.vertex_count(), std::vector<bool>(g.vertex_count(), false),
                             [&](const std::vector<Vertex>& p) {
                               found = p;
                               return false;
                             });
  return found;
}

/// Second matching oracle: grow from the empty matching by exhaustive
/// augmenting-path searches until none is left (Berge).
inline OracleResult<Matching> augmenting_sweep_max_matching(const BlackBoxGraph& g) {
  return detail::timed([&] {
    OracleResult<Matching> out;
    Matching m(g.vertex_count());
    while (auto path = find_augmenting_path_exhaustive(g, m)) m.augment(*path);
    out.value = static_cast<std::int64_t>(m.size());
    out.witness = std::move(m);
    return out;
  });
}

/// Maximum matching at any size through Boost.Graph's Edmonds
/// implementation; used where the exhaustive oracles are out of reach.
inline OracleResult<Matching> reference_max_matching(const BlackBoxGraph& g) {
  return detail::timed([&] {
    using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
    const std::size_t n = g.vertex_count();
    BoostGraph bg(n);
    for (const Edge& e : g.edges()) boost::add_edge(e.u, e.v, bg);
    std::vector<boost::graph_traits<BoostGraph>::vertex_descriptor> mate(n);
    boost::edmonds_maximum_cardinality_matching(bg, &mate[0]);
    const auto none = boost::graph_traits<BoostGraph>::null_vertex();
    Matching m(n);
    for (std::size_t v = 0; v < n; ++v) {
      if (mate[v] != none && v < mate[v]) m.match(static_cast<Vertex>(v), static_cast<Vertex>(mate[v]));
    }
    OracleResult<Matching> out;
    out.value = static_cast<std::int64_t>(m.size());
    out.witness = std::move(m);
    return out;
  });
}

/// Hop distances from start along out-arcs; kUnreached where unreachable.
inline std::vector<std::uint32_t> classical_bfs(const BlackBoxGraph& g, Vertex start) {
  std::vector<std::uint32_t> dist(g.vertex_count(), kUnreached);
  std::deque<Vertex> queue{start};
  dist[start] = 0;
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w : g.neighbors(v)) {
      if (dist[w] != kUnreached) continue;
      dist[w] = dist[v] + 1;
      queue.push_back(w);
    }
  }
  return dist;
}

/// Shortest augmenting paths in the residual network, found by plain BFS.
inline OracleResult<IntegerFlow> edmonds_karp(const IntegerNetwork& net) {
  return detail::timed([&] {
    const std::size_t n = net.vertex_count();
    IntegerFlow flow;
    flow.flow.assign(net.arc_count(), 0);
    // parent[v] = (arc, forward?) used to reach v.
    std::vector<std::pair<ArcId, bool>> parent(n);
    while (true) {
      std::vector<bool> seen(n, false);
      std::deque<Vertex> queue{net.source()};
      seen[net.source()] = true;
      while (!queue.empty() && !seen[net.sink()]) {
        const Vertex v = queue.front();
        queue.pop_front();
        for (ArcId e : net.out_arcs(v)) {
          const Vertex w = net.arc(e).head;
          if (seen[w] || flow.flow[e] >= net.arc(e).capacity) continue;
          seen[w] = true;
          parent[w] = {e, true};
          queue.push_back(w);
        }
        for (ArcId e : net.in_arcs(v)) {
          const Vertex w = net.arc(e).tail;
          if (seen[w] || flow.flow[e] <= 0) continue;
          seen[w] = true;
          parent[w] = {e, false};
          queue.push_back(w);
        }
      }
      if (!seen[net.sink()]) break;
      std::int64_t mu = std::numeric_limits<std::int64_t>::max();
      for (Vertex v = net.sink(); v != net.source();) {
        const auto [e, forward] = parent[v];
        mu = std::min(mu, forward ? net.arc(e).capacity - flow.flow[e] : flow.flow[e]);
        v = forward ? net.arc(e).tail : net.arc(e).head;
      }
      for (Vertex v = net.sink(); v != net.source();) {
        const auto [e, forward] = parent[v];
        flow.flow[e] += forward ? mu : -mu;
        v = forward ? net.arc(e).tail : net.arc(e).head;
      }
      flow.value += mu;
    }
    OracleResult<IntegerFlow> out;
    out.value = flow.value;
    out.witness = std::move(flow);
    return out;
  });
}

inline constexpr std::size_t kMinCutLimit = 24;

/// Second flow oracle: minimum s-t cut capacity over all vertex subsets.
/// The witness holds the source side.
inline OracleResult<std::vector<bool>> brute_force_min_cut(const IntegerNetwork& net) {
  const std::size_t n = net.vertex_count();
  if (n > kMinCutLimit) {
    throw SizeGuardError("brute-force min cut is limited to n <= " + std::to_string(kMinCutLimit));
  }
  return detail::timed([&] {
    std::vector<Vertex> others;
    for (std::size_t v = 0; v < n; ++v) {
      const auto x = static_cast<Vertex>(v);
      if (x != net.source() && x != net.sink()) others.push_back(x);
    }
    OracleResult<std::vector<bool>> out;
    out.value = std::numeric_limits<std::int64_t>::max();
    std::vector<bool> side(n, false);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << others.size()); ++mask) {
      std::fill(side.begin(), side.end(), false);
      side[net.source()] = true;
      for (std::size_t i = 0; i < others.size(); ++i) {
        if (mask >> i & 1) side[others[i]] = true;
      }
      std::int64_t cut = 0;
      for (const Arc& a : net.arcs()) {
        if (side[a.tail] && !side[a.head]) cut += a.capacity;
      }
      if (cut < out.value) {
        out.value = cut;
        out.witness = side;
      }
    }
    return out;
  });
}

struct AlternatingComponent {
  /// Vertices in walk order; a cycle does not repeat its first vertex.
  std::vector<Vertex> vertices;
  bool cycle = false;
  std::size_t edges_first = 0;   ///< edges taken from the first matching
  std::size_t edges_second = 0;  ///< edges taken from the second matching
  /// A path whose end edges both belong to the second matching: flipping it
  /// grows the first matching by one.
  bool augments_first = false;
};

/// Splits the symmetric difference of two matchings into alternating paths
/// and even cycles.
inline std::vector<AlternatingComponent> decompose_symmetric_difference(const Matching& m1,
                                                                        const Matching& m2) {
  const std::size_t n = m1.vertex_count();
  if (m2.vertex_count() != n) throw ContractViolation("matchings on different vertex sets");
  auto partner = [&](Vertex v, int which) {
    const Vertex a = m1.mate(v);
    const Vertex b = m2.mate(v);
    if (a == b) return kNoVertex;  // shared edge or both free
    return which == 1 ? a : b;
  };
  auto degree = [&](Vertex v) {
    return (partner(v, 1) != kNoVertex ? 1 : 0) + (partner(v, 2) != kNoVertex ? 1 : 0);
  };

  std::vector<bool> seen(n, false);
  std::vector<AlternatingComponent> out;
  auto walk = [&](Vertex start, bool cycle) {
    AlternatingComponent comp;
    comp.cycle = cycle;
    Vertex v = start;
    int next = partner(start, 1) != kNoVertex ? 1 : 2;
    while (true) {
      seen[v] = true;
      comp.vertices.push_back(v);
      const Vertex w = partner(v, next);
      if (w == kNoVertex || (cycle && w == start)) {
        if (w != kNoVertex) ++(next == 1 ? comp.edges_first : comp.edges_second);
        break;
      }
      ++(next == 1 ? comp.edges_first : comp.edges_second);
      v = w;
      next = 3 - next;
    }
    if (!cycle && comp.edges_second == comp.edges_first + 1) comp.augments_first = true;
    out.push_back(std::move(comp));
  };
  for (std::size_t v = 0; v < n; ++v) {
    const auto x = static_cast<Vertex>(v);
    if (!seen[x] && degree(x) == 1) walk(x, false);
  }
  for (std::size_t v = 0; v < n; ++v) {
    const auto x = static_cast<Vertex>(v);
    if (!seen[x] && degree(x) == 2) walk(x, true);
  }
  return out;
}

inline std::size_t count_augmenting_components(const std::vector<AlternatingComponent>& parts) {
  std::size_t c = 0;
  for (const auto& p : parts) c += p.augments_first ? 1 : 0;
  return c;
}

}  // namespace qgraph
