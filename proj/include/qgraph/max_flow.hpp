#pragma once

// Integer maximum flow by blocking flows in layered residual networks.
// While the layered depth stays at most k the algorithm adds a blocking flow
// per phase; once the depth exceeds k it only looks for one augmenting path
// per layered network until none is left.
//
// The residual network is never materialised. Its arcs are produced on-line
// from the black box and the classical per-arc flow array:
//   - Adjacency model: slot w of v has residual c(v,w) - f(v,w) + f(w,v).
//   - List model: v's domain is its out-array (holes included) followed by
//     its in-arcs; an out-slot has residual c - f, an in-slot has residual f.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "qgraph/graph_core.hpp"
#include "qgraph/layered_bfs.hpp"
#include "qgraph/quantum_cost.hpp"

namespace qgraph {

class ResidualView {
 public:
  ResidualView(const IntegerNetwork& net, std::vector<std::int64_t>& flow)
      : net_(net), flow_(flow), n_(net.vertex_count()) {
    if (flow_.size() != net.arc_count()) throw ContractViolation("flow size mismatch");
  }

  std::size_t vertex_count() const { return n_; }

  std::size_t domain_size(Vertex v) const {
    if (net_.model() == Model::Adjacency) return n_;
    return net_.graph().list_length(v) + net_.in_arcs(v).size();
  }

  std::optional<Vertex> slot(Vertex v, std::size_t i, QueryLedger* meter) const {
    if (residual(v, i, meter) <= 0) return std::nullopt;
    return target(v, i);
  }

  /// Residual capacity of slot i of v; reading it costs one or two probes.
  std::int64_t residual(Vertex v, std::size_t i, QueryLedger* meter) const {
    if (net_.model() == Model::Adjacency) {
      const auto w = static_cast<Vertex>(i);
      if (v == w) return 0;
      if (meter) {
        meter->count_probe();
        meter->count_probe();
      }
      std::int64_t r = 0;
      if (ArcId e = net_.arc_between(v, w); e != kNoArc) r += net_.arc(e).capacity - flow_[e];
      if (ArcId e = net_.arc_between(w, v); e != kNoArc) r += flow_[e];
      return r;
    }
    const std::size_t d = net_.graph().list_length(v);
    if (i < d) {
      if (net_.graph().probe_list(v, i, meter) == kHole) return 0;
      const ArcId e = net_.slot_arc(v, i);
      return net_.arc(e).capacity - flow_[e];
    }
    return flow_[net_.probe_in_arc(v, i - d, meter)];
  }

  /// Vertex slot i of v leads to, ignoring residual capacity. Unmetered.
  Vertex target(Vertex v, std::size_t i) const {
    if (net_.model() == Model::Adjacency) return static_cast<Vertex>(i);
    const std::size_t d = net_.graph().list_length(v);
    if (i < d) {
      const ArcId e = net_.slot_arc(v, i);
      return e == kNoArc ? kHole : net_.arc(e).head;
    }
    return net_.arc(net_.in_arcs(v)[i - d]).tail;
  }

  /// Sends amount units through slot i of v. Adjacency slots cancel reverse
  /// flow before adding forward flow.
  void push(Vertex v, std::size_t i, std::int64_t amount) {
    if (amount <= 0) throw ContractViolation("push amount must be positive");
    if (residual(v, i, nullptr) < amount) throw ContractViolation("push exceeds residual capacity");
    if (net_.model() == Model::Adjacency) {
      const auto w = static_cast<Vertex>(i);
      if (ArcId back = net_.arc_between(w, v); back != kNoArc) {
        const std::int64_t cancel = std::min(amount, flow_[back]);
        flow_[back] -= cancel;
        amount -= cancel;
      }
      if (amount > 0) flow_[net_.arc_between(v, w)] += amount;
      return;
    }
    const std::size_t d = net_.graph().list_length(v);
    if (i < d) {
      flow_[net_.slot_arc(v, i)] += amount;
    } else {
      flow_[net_.in_arcs(v)[i - d]] -= amount;
    }
  }

  const IntegerNetwork& network() const { return net_; }

 private:
  const IntegerNetwork& net_;
  std::vector<std::int64_t>& flow_;
  std::size_t n_;
};

static_assert(SearchableGraph<ResidualView>);

/// Depth at which the algorithm stops adding blocking flows:
/// ceil(min(n^{2/3} U^{1/3}, sqrt(mU))) when U^4 <= n, else
/// ceil(min(n^{2/3}, sqrt(m))).
inline std::uint64_t switching_threshold(std::uint64_t n, std::uint64_t m, std::uint64_t U) {
  if (n < 1 || m < 1 || U < 1) throw ContractViolation("switching threshold needs n, m, U >= 1");
  const unsigned __int128 u4 = static_cast<unsigned __int128>(U) * U * U * U;
  if (u4 <= n) return std::min(ceil_cbrt(n * n * U), ceil_sqrt(m * U));
  return std::min(ceil_cbrt(n * n), ceil_sqrt(m));
}

/// Residual flow bound for a layered residual network of depth k:
/// min(ceil((2n/k)^2) * P, ceil(m/k) * U), where P bounds the residual
/// capacity between one vertex pair (U unless antiparallel arcs exist).
inline std::uint64_t residual_bound(std::uint64_t n, std::uint64_t m, std::uint64_t U,
                                    std::uint64_t k, std::uint64_t pair_cap = 0) {
  if (k < 1) throw ContractViolation("depth must be at least 1");
  if (pair_cap == 0) pair_cap = U;
  const std::uint64_t k2 = k * k;
  const std::uint64_t squares = (4 * n * n + k2 - 1) / k2;
  const std::uint64_t per_cut = (m + k - 1) / k;
  return std::min(squares * pair_cap, per_cut * U);
}

/// Largest c(u,w) + c(w,u) over vertex pairs.
inline std::uint64_t pair_capacity_bound(const IntegerNetwork& net) {
  std::int64_t best = 0;
  for (std::size_t e = 0; e < net.arc_count(); ++e) {
    const Arc& a = net.arc(static_cast<ArcId>(e));
    std::int64_t c = a.capacity;
    for (ArcId back : net.out_arcs(a.head)) {
      if (net.arc(back).head == a.tail) c += net.arc(back).capacity;
    }
    best = std::max(best, c);
  }
  return static_cast<std::uint64_t>(best);
}

enum class PhaseMode : std::uint8_t { BlockingFlow, SingleAugmenting };

inline const char* phase_mode_name(PhaseMode m) {
  return m == PhaseMode::BlockingFlow ? "blocking" : "single";
}

struct PhaseStats {
  std::size_t index = 0;
  PhaseMode mode = PhaseMode::BlockingFlow;
  /// Layered depth j: the sink's layer at the start of the phase.
  std::uint32_t depth = 0;
  std::int64_t flow_before = 0;
  /// A_j: flow added in this phase.
  std::int64_t flow_added = 0;
  std::size_t paths = 0;
  std::uint64_t units = 0;
  /// a_v: augmenting paths of this phase through v (source and sink included).
  std::vector<std::uint32_t> a;
  /// c_v: vertices found from v that were disabled later.
  std::vector<std::uint32_t> c;
  /// Search-domain size of v in the residual view.
  std::vector<std::uint64_t> d;
  std::vector<std::uint32_t> layer;
  std::size_t disabled = 0;
  /// Searches checked against e_{v,i} >= ceil(i / slot capacity).
  std::size_t degree_checks = 0;
  std::size_t degree_violations = 0;
};

namespace detail {

struct DegreeProbe {
  Vertex v;
  std::uint64_t marked;
  std::uint32_t a_at_search;
};

}  // namespace detail

/// Adds a blocking flow of the layered residual network given by layers, or
/// a single augmenting path when single is set. Fills the per-vertex
/// counters of stats.
inline std::int64_t blocking_flow(ResidualView& view, const LayerAssignment& layers,
                                  QuantumEmulator& quantum, bool single, PhaseStats& stats) {
  const IntegerNetwork& net = view.network();
  const std::size_t n = view.vertex_count();
  const Vertex s = net.source();
  const Vertex t = net.sink();
  stats.a.assign(n, 0);
  stats.c.assign(n, 0);
  stats.d.assign(n, 0);
  stats.layer = layers.layer;
  for (std::size_t v = 0; v < n; ++v) stats.d[v] = view.domain_size(static_cast<Vertex>(v));
  if (!layers.reached(t)) return 0;
  const std::uint32_t depth = layers.layer[t];

  std::vector<bool> enabled(n, true);
  std::vector<detail::DegreeProbe> probes;
  std::vector<Vertex> stack{s};
  std::vector<std::size_t> slots;  // slots[i] leads from stack[i] to stack[i + 1]
  std::int64_t added = 0;

  while (!stack.empty()) {
    const Vertex v = stack.back();
    if (v == t) {
      std::int64_t mu = view.residual(stack[0], slots[0], quantum.meter());
      for (std::size_t i = 1; i < slots.size(); ++i) {
        mu = std::min(mu, view.residual(stack[i], slots[i], quantum.meter()));
      }
      for (std::size_t i = 0; i < slots.size(); ++i) view.push(stack[i], slots[i], mu);
      for (Vertex x : stack) ++stats.a[x];
      added += mu;
      ++stats.paths;
      if (single) break;
      stack.assign(1, s);
      slots.clear();
      continue;
    }
    const std::uint32_t next = layers.layer[v] + 1;
    const auto hit = quantum.find_one(view.domain_size(v), [&](std::size_t i) {
      const auto w = view.slot(v, i, quantum.meter());
      return w && enabled[*w] && layers.layer[*w] == next && (next < depth || *w == t);
    });
    probes.push_back({v, quantum.last_marked_count(), stats.a[v]});
    if (hit) {
      slots.push_back(*hit);
      stack.push_back(view.target(v, *hit));
      continue;
    }
    // No way to the sink from v any more.
    enabled[v] = false;
    ++stats.disabled;
    stack.pop_back();
    if (!slots.empty()) slots.pop_back();
    if (!stack.empty()) ++stats.c[stack.back()];
  }

  // Paths through v after a search must leave through arcs the search saw
  // marked: enabled sets and layered residuals only shrink within a phase.
  const std::uint64_t slot_cap = net.model() == Model::Adjacency
                                     ? pair_capacity_bound(net)
                                     : static_cast<std::uint64_t>(net.capacity_bound());
  for (const auto& p : probes) {
    if (p.v == t) continue;
    const std::uint64_t remaining = stats.a[p.v] - p.a_at_search;
    ++stats.degree_checks;
    if (p.marked < (remaining + slot_cap - 1) / slot_cap) ++stats.degree_violations;
  }
  return added;
}

struct FlowResult {
  IntegerFlow flow;
  std::vector<PhaseStats> phases;
  QueryLedger ledger;
  std::uint64_t k = 0;
  std::size_t blocking_phases = 0;
  std::size_t single_iterations = 0;
  /// Layered depth of the first single-path phase, 0 if none ran.
  std::uint32_t switch_depth = 0;
  /// Σ sqrt(j · A_j) over blocking phases divided by k^{3/2}.
  double dyadic_constant = 0.0;
};

inline FlowResult max_flow_integer(const IntegerNetwork& net, const OracleConfig& config) {
  const std::size_t n = net.vertex_count();
  QuantumEmulator quantum(config, n);
  FlowResult result;
  result.k = switching_threshold(n, net.arc_count(), static_cast<std::uint64_t>(net.capacity_bound()));
  result.flow.flow.assign(net.arc_count(), 0);
  ResidualView view(net, result.flow.flow);

  bool switched = false;
  std::size_t idle = 0;
  double dyadic = 0.0;
  while (true) {
    const std::uint64_t before = quantum.ledger().units();
    const LayerAssignment layers = assign_layers(view, net.source(), quantum);
    if (!layers.reached(net.sink())) break;

    PhaseStats stats;
    stats.index = result.phases.size();
    stats.depth = layers.layer[net.sink()];
    if (!switched && stats.depth > result.k) {
      switched = true;
      result.switch_depth = stats.depth;
    }
    stats.mode = switched ? PhaseMode::SingleAugmenting : PhaseMode::BlockingFlow;
    stats.flow_before = result.flow.value;
    stats.flow_added = blocking_flow(view, layers, quantum, switched, stats);
    result.flow.value += stats.flow_added;
    stats.units = quantum.ledger().units() - before;
    if (switched) {
      ++result.single_iterations;
    } else {
      ++result.blocking_phases;
      dyadic += std::sqrt(static_cast<double>(stats.depth) * static_cast<double>(stats.flow_added));
    }
    result.phases.push_back(std::move(stats));

    // Only an injected search failure can leave a reachable sink unserved.
    if (result.phases.back().flow_added == 0) {
      if (++idle > 64) throw Error("max flow made no progress in 64 consecutive phases");
    } else {
      idle = 0;
    }
  }
  const double k = static_cast<double>(result.k);
  result.dyadic_constant = dyadic / (k * std::sqrt(k));
  result.ledger = quantum.ledger();
  return result;
}

struct ResidualVerdict {
  std::size_t phase;
  std::uint32_t depth;
  std::int64_t residual;
  std::uint64_t bound;
  bool pass;
};

/// Checks the residual flow bound at the start of every phase.
inline std::vector<ResidualVerdict> residual_bound_check(const IntegerNetwork& net,
                                                         const std::vector<PhaseStats>& phases,
                                                         std::int64_t true_max) {
  const std::uint64_t pair_cap = pair_capacity_bound(net);
  std::vector<ResidualVerdict> out;
  for (const PhaseStats& p : phases) {
    if (p.depth < 1) continue;
    const std::int64_t residual = true_max - p.flow_before;
    const std::uint64_t bound =
        residual_bound(net.vertex_count(), net.arc_count(),
                       static_cast<std::uint64_t>(net.capacity_bound()), p.depth, pair_cap);
    out.push_back({p.index, p.depth, residual, bound,
                   residual >= 0 && static_cast<std::uint64_t>(residual) <= bound});
  }
  return out;
}

}  // namespace qgraph
