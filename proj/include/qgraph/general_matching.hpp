#pragma once

// Maximum matching in general graphs: one alternating breadth-first search
// per free vertex, with blossoms collapsed on the fly.
//
// Every even (outer) vertex v keeps
//   link   - the even vertex it was reached from, or v's side of the bridge
//            when v became even inside a collapsed blossom;
//   bridge - the other side of that bridge, kNoVertex otherwise;
//   first  - the last odd vertex on v's alternating path to the root, read
//            through a union tree so that collapsed blossoms resolve to their
//            nearest common odd ancestor.
// The root's first is a sentinel (index n) standing for its virtual
// predecessor; it compares unequal to every real vertex.
//
// Per processed even vertex three Grover searches run over its domain:
// a free neighbor, odd neighbors whose mate is still odd, and even
// neighbors whose first differs (bridges).

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <set>
#include <vector>

#include "qgraph/graph_core.hpp"
#include "qgraph/quantum_cost.hpp"

namespace qgraph {

/// Parent links over odd vertices with path compression. attach() hangs a
/// subtree under a new parent; resolve() returns the current representative.
class UnionTree {
 public:
  explicit UnionTree(std::size_t size = 0) { reset(size); }

  void reset(std::size_t size) {
    parent_.resize(size);
    for (std::size_t i = 0; i < size; ++i) parent_[i] = static_cast<Vertex>(i);
  }

  void attach(Vertex child, Vertex new_parent) { parent_[child] = new_parent; }

  Vertex resolve(Vertex v) {
    Vertex root = v;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[v] != root) {
      const Vertex next = parent_[v];
      parent_[v] = root;
      v = next;
    }
    return root;
  }

  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<Vertex> parent_;
};

struct BlossomRecord {
  Vertex bridge_from;
  Vertex bridge_to;
  /// Nearest common odd ancestor; the root sentinel is reported as kNoVertex.
  Vertex ancestor;
  std::uint32_t side_a = 0;  ///< p1: odd vertices collapsed on bridge_from's side
  std::uint32_t side_b = 0;  ///< p2: odd vertices collapsed on bridge_to's side
  std::uint32_t insertions = 0;
};

struct PhaseCounters {
  /// f: even vertices created in the phase, root included.
  std::uint32_t even = 0;
  std::uint32_t processed = 0;
  std::uint64_t sum_e = 0;  ///< odd vertices promoted by the second search
  std::uint64_t sum_b = 0;  ///< bridges handled by the third search
  std::uint64_t sum_r = 0;  ///< odd vertices turned even by collapses
  std::uint64_t found_odd = 0;     ///< items returned by second searches
  std::uint64_t found_bridge = 0;  ///< items returned by third searches
  std::uint64_t domain_total = 0;  ///< Σ d_v over processed even vertices
  std::uint64_t insertions = 0;
  std::vector<BlossomRecord> blossoms;
};

enum class Parity : std::uint8_t { Odd, Even };

template <SearchableGraph G>
class BlossomSearch {
 public:
  BlossomSearch(const G& graph, const Matching& matching, QuantumEmulator& quantum)
      : graph_(graph), matching_(matching), quantum_(quantum) {}

  /// Searches for an augmenting path from the free vertex root. The path
  /// starts at root and ends at another free vertex.
  std::optional<std::vector<Vertex>> run(Vertex root) {
    const std::size_t n = graph_.vertex_count();
    if (root < 0 || static_cast<std::size_t>(root) >= n) throw BoundsError("root out of range");
    if (!matching_.is_free(root)) throw ContractViolation("search root must be a free vertex");
    reset(root);
    make_even(root, kNoVertex, kNoVertex, sentinel());

    while (!queue_.empty()) {
      const Vertex v = queue_.front();
      queue_.pop_front();
      ++counters_.processed;
      const std::size_t size = graph_.domain_size(v);
      counters_.domain_total += size;

      // Free neighbor: augment right away.
      const auto free_hit = quantum_.find_one(size, [&](std::size_t i) {
        const auto w = graph_.slot(v, i, quantum_.meter());
        return w && *w != root_ && matching_.is_free(*w);
      });
      if (free_hit) {
        const Vertex w = *graph_.slot(v, *free_hit, quantum_.meter());
        std::vector<Vertex> path = trace(v);
        std::reverse(path.begin(), path.end());
        path.push_back(w);
        return path;
      }

      // Odd neighbors whose mate is still odd: the mate becomes even.
      const auto odd_hits = quantum_.find_all(size, [&](std::size_t i) {
        const auto w = graph_.slot(v, i, quantum_.meter());
        return w && promotable(*w);
      });
      counters_.found_odd += odd_hits.size();
      for (std::size_t i : odd_hits) {
        const Vertex w = *graph_.slot(v, i, quantum_.meter());
        if (!promotable(w)) continue;
        discovered_[w] = true;
        make_even(matching_.mate(w), v, kNoVertex, w);
        ++counters_.sum_e;
      }

      // Even neighbors with a different first: bridges closing odd circles.
      const auto bridge_hits = quantum_.find_all(size, [&](std::size_t i) {
        const auto w = graph_.slot(v, i, quantum_.meter());
        return w && is_bridge(v, *w);
      });
      counters_.found_bridge += bridge_hits.size();
      for (std::size_t i : bridge_hits) {
        const Vertex w = *graph_.slot(v, i, quantum_.meter());
        if (!is_bridge(v, w)) continue;
        collapse_blossom(v, w);
        ++counters_.sum_b;
      }
    }
    return std::nullopt;
  }

  /// Alternating path from the even vertex v back to the root, v first.
  std::vector<Vertex> trace(Vertex v) const {
    if (parity_[v] != Parity::Even) throw ContractViolation("trace needs an even vertex");
    std::vector<Vertex> out;
    trace_into(v, kNoVertex, out);
    return out;
  }

  /// Collapses the odd circle closed by the edge (v, w) between two even
  /// vertices whose first pointers resolve differently.
  void collapse_blossom(Vertex v, Vertex w) {
    if (parity_[v] != Parity::Even || parity_[w] != Parity::Even) {
      throw ContractViolation("bridge endpoints must be even");
    }
    Vertex r = resolve_raw(first_[v]);
    Vertex s = resolve_raw(first_[w]);
    if (r == s) throw ContractViolation("bridge endpoints share their first vertex");

    // Synchronized insertion into two ordered sets until a vertex shows up
    // in both; that vertex is the nearest common odd ancestor.
    std::set<Vertex> seen_a;
    std::set<Vertex> seen_b;
    std::vector<Vertex> chain_a;
    std::vector<Vertex> chain_b;
    std::uint32_t insertions = 0;
    bool done_a = false;
    bool done_b = false;
    Vertex ancestor = kNoVertex;
    while (ancestor == kNoVertex) {
      if (done_a && done_b) throw ContractViolation("bridge endpoints have no common ancestor");
      if (!done_a) {
        seen_a.insert(r);
        chain_a.push_back(r);
        ++insertions;
        if (seen_b.count(r)) {
          ancestor = r;
          break;
        }
        if (r == sentinel()) done_a = true; else r = next_odd(r);
      }
      if (!done_b) {
        seen_b.insert(s);
        chain_b.push_back(s);
        ++insertions;
        if (seen_a.count(s)) {
          ancestor = s;
          break;
        }
        if (s == sentinel()) done_b = true; else s = next_odd(s);
      }
    }

    BlossomRecord record{v, w, ancestor == sentinel() ? kNoVertex : ancestor, 0, 0, insertions};
    for (Vertex o : chain_a) {
      if (o == ancestor) break;
      make_even(o, v, w, ancestor);
      tree_.attach(o, ancestor);
      ++record.side_a;
    }
    for (Vertex o : chain_b) {
      if (o == ancestor) break;
      make_even(o, w, v, ancestor);
      tree_.attach(o, ancestor);
      ++record.side_b;
    }
    counters_.sum_r += record.side_a + record.side_b;
    counters_.insertions += insertions;
    counters_.blossoms.push_back(record);
  }

  Parity parity(Vertex v) const { return parity_[v]; }
  bool discovered(Vertex v) const { return discovered_[v]; }
  Vertex link(Vertex v) const { return link_[v]; }
  Vertex bridge(Vertex v) const { return bridge_[v]; }
  /// Resolved first pointer of an even vertex; kNoVertex for the sentinel.
  Vertex resolve_first(Vertex v) {
    const Vertex r = resolve_raw(first_[v]);
    return r == sentinel() ? kNoVertex : r;
  }
  const PhaseCounters& counters() const { return counters_; }
  Vertex root() const { return root_; }

 private:
  Vertex sentinel() const { return static_cast<Vertex>(graph_.vertex_count()); }

  void reset(Vertex root) {
    const std::size_t n = graph_.vertex_count();
    root_ = root;
    parity_.assign(n, Parity::Odd);
    discovered_.assign(n, false);
    link_.assign(n, kNoVertex);
    bridge_.assign(n, kNoVertex);
    first_.assign(n, kNoVertex);
    tree_.reset(n + 1);
    queue_.clear();
    counters_ = {};
  }

  void make_even(Vertex v, Vertex link, Vertex bridge, Vertex first) {
    parity_[v] = Parity::Even;
    link_[v] = link;
    bridge_[v] = bridge;
    first_[v] = first;
    queue_.push_back(v);
    ++counters_.even;
  }

  bool promotable(Vertex w) const {
    if (parity_[w] == Parity::Even || matching_.is_free(w)) return false;
    return parity_[matching_.mate(w)] != Parity::Even;
  }

  bool is_bridge(Vertex v, Vertex w) {
    return parity_[w] == Parity::Even && resolve_raw(first_[v]) != resolve_raw(first_[w]);
  }

  Vertex resolve_raw(Vertex f) { return tree_.resolve(f); }

  /// The next odd vertex after o on the path towards the root.
  Vertex next_odd(Vertex o) {
    const Vertex even = matching_.mate(o);
    return resolve_raw(first_[link_[even]]);
  }

  /// Appends the path from v towards the root, stopping once `stop` has been
  /// appended. Returns whether `stop` was met.
  bool trace_into(Vertex v, Vertex stop, std::vector<Vertex>& out) const {
    const std::size_t limit = graph_.vertex_count();
    auto append = [&](Vertex x) {
      out.push_back(x);
      if (out.size() > limit) throw ContractViolation("cycle detected while tracing");
      return x == stop;
    };
    while (true) {
      if (append(v)) return true;
      if (v == root_) return false;
      if (bridge_[v] == kNoVertex) {
        if (append(matching_.mate(v))) return true;
        v = link_[v];
        continue;
      }
      // v became even inside a blossom: walk from link back to v, reversed,
      // then continue from the far side of the bridge.
      std::vector<Vertex> segment;
      if (!trace_into(link_[v], v, segment)) {
        throw ContractViolation("blossom vertex missing from its link's path");
      }
      for (std::size_t i = segment.size() - 1; i-- > 0;) {
        if (append(segment[i])) return true;
      }
      v = bridge_[v];
    }
  }

  const G& graph_;
  const Matching& matching_;
  QuantumEmulator& quantum_;
  Vertex root_ = kNoVertex;
  std::vector<Parity> parity_;
  std::vector<bool> discovered_;
  std::vector<Vertex> link_;
  std::vector<Vertex> bridge_;
  std::vector<Vertex> first_;
  UnionTree tree_;
  std::deque<Vertex> queue_;
  PhaseCounters counters_;
};

struct GeneralPhase {
  Vertex start = kNoVertex;
  bool augmented = false;
  std::size_t path_edges = 0;
  std::uint64_t units = 0;
  PhaseCounters counters;
};

struct GeneralRunReport {
  std::vector<GeneralPhase> phases;
};

struct GeneralResult {
  Matching matching;
  GeneralRunReport report;
  QueryLedger ledger;
};

/// Runs one search from every vertex that is free when its turn comes.
inline GeneralResult max_general_matching(const BlackBoxGraph& g, const OracleConfig& config) {
  if (g.directed()) throw ContractViolation("general matching needs an undirected graph");
  QuantumEmulator quantum(config, g.vertex_count());
  GeneralResult result;
  result.matching = Matching(g.vertex_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const auto start = static_cast<Vertex>(v);
    if (!result.matching.is_free(start)) continue;
    const std::uint64_t before = quantum.ledger().units();
    BlossomSearch<BlackBoxGraph> search(g, result.matching, quantum);
    auto path = search.run(start);
    GeneralPhase phase;
    phase.start = start;
    if (path) {
      phase.augmented = true;
      phase.path_edges = path->size() - 1;
      result.matching.augment(*path);
    }
    phase.units = quantum.ledger().units() - before;
    phase.counters = search.counters();
    result.report.phases.push_back(std::move(phase));
  }
  result.ledger = quantum.ledger();
  return result;
}

}  // namespace qgraph
