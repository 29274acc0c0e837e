#pragma once

// Black-box graphs and the solution objects built on top of them.
//
// A BlackBoxGraph is reachable through one of two query interfaces:
//   - Adjacency: probe_adjacency(v, w) reads one entry of the n x n relation.
//   - List:      probe_list(v, i) reads slot i of v's neighbor array, which
//                holds a vertex id or kHole.
// Both probes bump the raw-probe counter of the ledger passed in. The
// algorithms only see graphs through the SearchableGraph interface: each
// vertex owns a search domain of slots, and a slot either names an
// out-neighbor or is empty.

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qgraph/core.hpp"
#include "qgraph/quantum_cost.hpp"

namespace qgraph {

inline constexpr Vertex kHole = -2;

enum class Model : std::uint8_t { Adjacency, List };

inline const char* model_name(Model m) { return m == Model::Adjacency ? "adjacency" : "list"; }

struct Edge {
  Vertex u;
  Vertex v;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Where holes go in List-model neighbor arrays.
struct ListLayout {
  /// Holes appended to each array, capped so that d_v <= n.
  std::size_t holes_per_vertex = 0;
  /// Shuffle neighbors and holes together at seeded positions.
  bool scatter = false;
  std::uint64_t seed = 0;
};

template <class G>
concept SearchableGraph = requires(const G& g, Vertex v, std::size_t i, QueryLedger* meter) {
  { g.vertex_count() } -> std::convertible_to<std::size_t>;
  { g.domain_size(v) } -> std::convertible_to<std::size_t>;
  { g.slot(v, i, meter) } -> std::same_as<std::optional<Vertex>>;
};

class BlackBoxGraph {
 public:
  /// Validates n >= 1, m >= 1, endpoints in range, no self-loops and no
  /// parallel edges. Undirected edges become two arcs in the list model.
  static BlackBoxGraph from_edges(std::size_t n, std::vector<Edge> edges, bool directed,
                                  Model model = Model::List, ListLayout layout = {}) {
    if (n == 0) throw InvalidGraph("graph needs at least one vertex");
    if (edges.empty()) throw InvalidGraph("graph needs at least one edge (m >= 1)");
    std::set<Edge> seen;
    for (const Edge& e : edges) {
      if (e.u < 0 || e.v < 0 || static_cast<std::size_t>(e.u) >= n ||
          static_cast<std::size_t>(e.v) >= n) {
        throw InvalidGraph("edge endpoint out of range");
      }
      if (e.u == e.v) throw InvalidGraph("self-loops are not allowed");
      Edge key = directed ? e : Edge{std::min(e.u, e.v), std::max(e.u, e.v)};
      if (!seen.insert(key).second) throw InvalidGraph("parallel edges are not allowed");
    }

    BlackBoxGraph g;
    g.n_ = n;
    g.directed_ = directed;
    g.model_ = model;
    g.layout_ = layout;
    g.edges_ = std::move(edges);
    g.neighbors_.assign(n, {});
    for (const Edge& e : g.edges_) {
      g.neighbors_[e.u].push_back(e.v);
      if (!directed) g.neighbors_[e.v].push_back(e.u);
    }
    if (model == Model::Adjacency) {
      g.matrix_.assign(n * n, 0);
      for (const Edge& e : g.edges_) {
        g.matrix_[static_cast<std::size_t>(e.u) * n + e.v] = 1;
        if (!directed) g.matrix_[static_cast<std::size_t>(e.v) * n + e.u] = 1;
      }
    } else {
      Rng rng(layout.seed);
      g.lists_.resize(n);
      for (std::size_t v = 0; v < n; ++v) {
        auto& list = g.lists_[v];
        list = g.neighbors_[v];
        const std::size_t holes = std::min(layout.holes_per_vertex, n - list.size());
        list.insert(list.end(), holes, kHole);
        if (layout.scatter) shuffle(list, rng);
      }
    }
    return g;
  }

  /// List-model graph with explicit arrays (kHole marks holes). Undirected
  /// graphs must list every edge from both endpoints.
  static BlackBoxGraph from_lists(std::size_t n, std::vector<std::vector<Vertex>> lists,
                                  bool directed) {
    if (lists.size() != n) throw InvalidGraph("need one neighbor array per vertex");
    std::vector<Edge> edges;
    std::vector<Edge> arcs;
    for (std::size_t v = 0; v < n; ++v) {
      if (lists[v].size() > n) throw InvalidGraph("neighbor array longer than n");
      for (Vertex w : lists[v]) {
        if (w == kHole) continue;
        if (w < 0 || static_cast<std::size_t>(w) >= n) throw InvalidGraph("edge endpoint out of range");
        const auto u = static_cast<Vertex>(v);
        arcs.push_back({u, w});
        if (directed || u < w) edges.push_back({u, w});
      }
    }
    BlackBoxGraph g = from_edges(n, std::move(edges), directed, Model::List);
    std::sort(arcs.begin(), arcs.end());
    std::vector<Edge> expected;
    for (std::size_t v = 0; v < n; ++v) {
      for (Vertex w : g.neighbors_[v]) expected.push_back({static_cast<Vertex>(v), w});
    }
    std::sort(expected.begin(), expected.end());
    if (arcs != expected) throw InvalidGraph("undirected neighbor arrays are not symmetric");
    g.lists_ = std::move(lists);
    return g;
  }

  /// Same edge set behind the other (or a re-laid-out) query interface.
  BlackBoxGraph with_model(Model model, ListLayout layout = {}) const {
    return from_edges(n_, edges_, directed_, model, layout);
  }

  std::size_t vertex_count() const { return n_; }
  /// m: arcs for directed graphs, undirected edges otherwise.
  std::size_t edge_count() const { return edges_.size(); }
  bool directed() const { return directed_; }
  Model model() const { return model_; }
  const ListLayout& layout() const { return layout_; }
  std::span<const Edge> edges() const { return edges_; }

  bool probe_adjacency(Vertex v, Vertex w, QueryLedger* meter = nullptr) const {
    if (model_ != Model::Adjacency) throw ModelMismatch("probe_adjacency on a list-model graph");
    check_vertex(v);
    check_vertex(w);
    if (meter) meter->count_probe();
    return matrix_[static_cast<std::size_t>(v) * n_ + w] != 0;
  }

  /// N_v[i]: a vertex id or kHole.
  Vertex probe_list(Vertex v, std::size_t i, QueryLedger* meter = nullptr) const {
    if (model_ != Model::List) throw ModelMismatch("probe_list on an adjacency-model graph");
    check_vertex(v);
    if (i >= lists_[v].size()) throw BoundsError("list index out of range");
    if (meter) meter->count_probe();
    return lists_[v][i];
  }

  /// d_v, holes included.
  std::size_t list_length(Vertex v) const {
    if (model_ != Model::List) throw ModelMismatch("list_length on an adjacency-model graph");
    check_vertex(v);
    return lists_[v].size();
  }

  std::size_t domain_size(Vertex v) const {
    return model_ == Model::Adjacency ? n_ : lists_[v].size();
  }

  std::optional<Vertex> slot(Vertex v, std::size_t i, QueryLedger* meter) const {
    if (model_ == Model::Adjacency) {
      const auto w = static_cast<Vertex>(i);
      if (probe_adjacency(v, w, meter)) return w;
      return std::nullopt;
    }
    const Vertex w = probe_list(v, i, meter);
    if (w == kHole) return std::nullopt;
    return w;
  }

  /// Unmetered neighbor list, for classical oracles and generators.
  std::span<const Vertex> neighbors(Vertex v) const { return neighbors_[v]; }

  bool has_edge(Vertex u, Vertex v) const {
    const auto& nb = neighbors_[u];
    return std::find(nb.begin(), nb.end(), v) != nb.end();
  }

  /// Edge set in canonical sorted form.
  std::vector<Edge> canonical_edges() const {
    std::vector<Edge> out;
    out.reserve(edges_.size());
    for (const Edge& e : edges_) {
      out.push_back(directed_ ? e : Edge{std::min(e.u, e.v), std::max(e.u, e.v)});
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Equal vertex count, orientation and edge set; the query model is ignored.
  friend bool same_graph(const BlackBoxGraph& a, const BlackBoxGraph& b) {
    return a.n_ == b.n_ && a.directed_ == b.directed_ && a.canonical_edges() == b.canonical_edges();
  }

 private:
  BlackBoxGraph() = default;

  void check_vertex(Vertex v) const {
    if (v < 0 || static_cast<std::size_t>(v) >= n_) throw BoundsError("vertex out of range");
  }

  std::size_t n_ = 0;
  bool directed_ = false;
  Model model_ = Model::List;
  ListLayout layout_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> neighbors_;
  std::vector<std::uint8_t> matrix_;
  std::vector<std::vector<Vertex>> lists_;
};

static_assert(SearchableGraph<BlackBoxGraph>);

// ---------------------------------------------------------------------------
// Integer networks
// ---------------------------------------------------------------------------

struct Arc {
  Vertex tail;
  Vertex head;
  std::int64_t capacity;
  friend bool operator==(const Arc&, const Arc&) = default;
};

using ArcId = std::int32_t;
inline constexpr ArcId kNoArc = -1;

class IntegerNetwork {
 public:
  static IntegerNetwork create(std::size_t n, std::vector<Arc> arcs, Vertex source, Vertex sink,
                               std::int64_t capacity_bound, Model model = Model::List,
                               ListLayout layout = {}) {
    if (capacity_bound < 1) throw InvalidGraph("capacity bound U must be at least 1");
    if (source == sink) throw InvalidGraph("source and sink must differ");
    if (source < 0 || sink < 0 || static_cast<std::size_t>(source) >= n ||
        static_cast<std::size_t>(sink) >= n) {
      throw InvalidGraph("source or sink out of range");
    }
    std::vector<Edge> edges;
    edges.reserve(arcs.size());
    for (const Arc& a : arcs) {
      if (a.capacity < 1 || a.capacity > capacity_bound) {
        throw InvalidGraph("arc capacity outside [1, U]");
      }
      edges.push_back({a.tail, a.head});
    }

    IntegerNetwork net(BlackBoxGraph::from_edges(n, std::move(edges), true, model, layout));
    net.arcs_ = std::move(arcs);
    net.source_ = source;
    net.sink_ = sink;
    net.bound_ = capacity_bound;
    net.in_arcs_.assign(n, {});
    net.out_arcs_.assign(n, {});
    for (std::size_t e = 0; e < net.arcs_.size(); ++e) {
      net.out_arcs_[net.arcs_[e].tail].push_back(static_cast<ArcId>(e));
      net.in_arcs_[net.arcs_[e].head].push_back(static_cast<ArcId>(e));
    }
    if (model == Model::Adjacency) {
      net.arc_matrix_.assign(n * n, kNoArc);
      for (std::size_t e = 0; e < net.arcs_.size(); ++e) {
        net.arc_matrix_[static_cast<std::size_t>(net.arcs_[e].tail) * n + net.arcs_[e].head] =
            static_cast<ArcId>(e);
      }
    } else {
      // Slot i of N_v maps to the arc it encodes; holes map to kNoArc.
      std::vector<ArcId> by_head(n, kNoArc);
      net.slot_arc_.assign(n, {});
      for (std::size_t v = 0; v < n; ++v) {
        for (ArcId e : net.out_arcs_[v]) by_head[net.arcs_[e].head] = e;
        const auto len = net.graph_.list_length(static_cast<Vertex>(v));
        for (std::size_t i = 0; i < len; ++i) {
          const Vertex w = net.graph_.probe_list(static_cast<Vertex>(v), i);
          net.slot_arc_[v].push_back(w == kHole ? kNoArc : by_head[w]);
        }
        for (ArcId e : net.out_arcs_[v]) by_head[net.arcs_[e].head] = kNoArc;
      }
    }
    return net;
  }

  const BlackBoxGraph& graph() const { return graph_; }
  std::size_t vertex_count() const { return graph_.vertex_count(); }
  std::size_t arc_count() const { return arcs_.size(); }
  Model model() const { return graph_.model(); }
  std::span<const Arc> arcs() const { return arcs_; }
  const Arc& arc(ArcId e) const { return arcs_[e]; }
  Vertex source() const { return source_; }
  Vertex sink() const { return sink_; }
  std::int64_t capacity_bound() const { return bound_; }

  std::span<const ArcId> out_arcs(Vertex v) const { return out_arcs_[v]; }
  std::span<const ArcId> in_arcs(Vertex v) const { return in_arcs_[v]; }

  /// Arc (u, v) through the adjacency matrix; adjacency model only.
  ArcId arc_between(Vertex u, Vertex v) const {
    if (model() != Model::Adjacency) throw ModelMismatch("arc_between needs the adjacency model");
    return arc_matrix_[static_cast<std::size_t>(u) * vertex_count() + v];
  }

  /// Arc encoded by slot i of N_v; list model only.
  ArcId slot_arc(Vertex v, std::size_t i) const { return slot_arc_[v][i]; }

  /// In-arc j of v, read as one probe of v's incoming array.
  ArcId probe_in_arc(Vertex v, std::size_t j, QueryLedger* meter) const {
    if (j >= in_arcs_[v].size()) throw BoundsError("in-arc index out of range");
    if (meter) meter->count_probe();
    return in_arcs_[v][j];
  }

  IntegerNetwork with_model(Model model, ListLayout layout = {}) const {
    return create(vertex_count(), arcs_, source_, sink_, bound_, model, layout);
  }

  friend bool same_network(const IntegerNetwork& a, const IntegerNetwork& b) {
    auto sorted = [](std::vector<Arc> v) {
      std::sort(v.begin(), v.end(), [](const Arc& x, const Arc& y) {
        return std::tie(x.tail, x.head, x.capacity) < std::tie(y.tail, y.head, y.capacity);
      });
      return v;
    };
    return a.vertex_count() == b.vertex_count() && a.source_ == b.source_ &&
           a.sink_ == b.sink_ && a.bound_ == b.bound_ &&
           sorted(a.arcs_) == sorted(b.arcs_);
  }

 private:
  explicit IntegerNetwork(BlackBoxGraph g) : graph_(std::move(g)) {}

  BlackBoxGraph graph_;
  std::vector<Arc> arcs_;
  Vertex source_ = 0;
  Vertex sink_ = 0;
  std::int64_t bound_ = 1;
  std::vector<std::vector<ArcId>> out_arcs_;
  std::vector<std::vector<ArcId>> in_arcs_;
  std::vector<ArcId> arc_matrix_;
  std::vector<std::vector<ArcId>> slot_arc_;
};

/// Per-arc flow plus its value. Each entry lies in [0, capacity].
struct IntegerFlow {
  std::vector<std::int64_t> flow;
  std::int64_t value = 0;

  /// Throws ContractViolation when capacity, conservation or value fail.
  void validate(const IntegerNetwork& net) const {
    if (flow.size() != net.arc_count()) throw ContractViolation("flow size mismatch");
    std::vector<std::int64_t> excess(net.vertex_count(), 0);
    for (std::size_t e = 0; e < flow.size(); ++e) {
      const Arc& a = net.arc(static_cast<ArcId>(e));
      if (flow[e] < 0 || flow[e] > a.capacity) {
        throw ContractViolation("arc " + std::to_string(e) + " violates its capacity");
      }
      excess[a.tail] -= flow[e];
      excess[a.head] += flow[e];
    }
    for (std::size_t v = 0; v < excess.size(); ++v) {
      const auto vv = static_cast<Vertex>(v);
      if (vv != net.source() && vv != net.sink() && excess[v] != 0) {
        throw ContractViolation("conservation fails at vertex " + std::to_string(v));
      }
    }
    if (-excess[net.source()] != value) throw ContractViolation("flow value mismatch");
  }
};

// ---------------------------------------------------------------------------
// Matchings
// ---------------------------------------------------------------------------

class Matching {
 public:
  Matching() = default;
  explicit Matching(std::size_t n) : mate_(n, kNoVertex) {}

  std::size_t vertex_count() const { return mate_.size(); }
  std::size_t size() const { return size_; }
  Vertex mate(Vertex v) const { return mate_[v]; }
  bool is_free(Vertex v) const { return mate_[v] == kNoVertex; }
  bool contains(Vertex u, Vertex v) const { return mate_[u] == v; }
  std::span<const Vertex> mates() const { return mate_; }

  void match(Vertex u, Vertex v) {
    if (u == v) throw ContractViolation("cannot match a vertex with itself");
    if (!is_free(u) || !is_free(v)) throw ContractViolation("vertex already matched");
    mate_[u] = v;
    mate_[v] = u;
    ++size_;
  }

  void unmatch(Vertex v) {
    const Vertex u = mate_[v];
    if (u == kNoVertex) return;
    mate_[u] = kNoVertex;
    mate_[v] = kNoVertex;
    --size_;
  }

  /// Pairs (u, v) with u < v, ordered by u.
  std::vector<Edge> pairs() const {
    std::vector<Edge> out;
    for (std::size_t v = 0; v < mate_.size(); ++v) {
      if (mate_[v] != kNoVertex && static_cast<Vertex>(v) < mate_[v]) {
        out.push_back({static_cast<Vertex>(v), mate_[v]});
      }
    }
    return out;
  }

  /// Flips an augmenting path v0 .. v_{2t+1}: free endpoints, matched pairs
  /// (v1,v2), (v3,v4), ... Grows the matching by one.
  void augment(std::span<const Vertex> path) {
    if (path.size() < 2 || path.size() % 2 != 0) {
      throw ContractViolation("augmenting path must have an odd number of edges");
    }
    std::set<Vertex> distinct(path.begin(), path.end());
    if (distinct.size() != path.size()) throw ContractViolation("augmenting path is not simple");
    for (Vertex v : path) {
      if (v < 0 || static_cast<std::size_t>(v) >= mate_.size()) {
        throw ContractViolation("augmenting path vertex out of range");
      }
    }
    if (!is_free(path.front()) || !is_free(path.back())) {
      throw ContractViolation("augmenting path endpoints must be free");
    }
    for (std::size_t i = 1; i + 1 < path.size(); i += 2) {
      if (mate_[path[i]] != path[i + 1]) {
        throw ContractViolation("augmenting path does not alternate");
      }
    }
    for (std::size_t i = 0; i < path.size(); i += 2) {
      mate_[path[i]] = path[i + 1];
      mate_[path[i + 1]] = path[i];
    }
    ++size_;
  }

  /// Every pair must be an edge of g; mate must be a symmetric involution.
  void validate(const BlackBoxGraph& g) const {
    if (mate_.size() != g.vertex_count()) throw ContractViolation("matching size mismatch");
    std::size_t matched = 0;
    for (std::size_t v = 0; v < mate_.size(); ++v) {
      const Vertex u = mate_[v];
      if (u == kNoVertex) continue;
      ++matched;
      if (u < 0 || static_cast<std::size_t>(u) >= mate_.size() ||
          mate_[u] != static_cast<Vertex>(v)) {
        throw ContractViolation("mate is not a symmetric involution");
      }
      if (!g.has_edge(static_cast<Vertex>(v), u)) {
        throw ContractViolation("matched pair is not an edge");
      }
    }
    if (matched != 2 * size_) throw ContractViolation("matching size counter out of sync");
  }

  friend bool operator==(const Matching& a, const Matching& b) { return a.mate_ == b.mate_; }

 private:
  std::vector<Vertex> mate_;
  std::size_t size_ = 0;
};

}  // namespace qgraph
