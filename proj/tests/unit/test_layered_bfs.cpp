#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "qgraph/baselines.hpp"
#include "qgraph/generators.hpp"
#include "qgraph/layered_bfs.hpp"

using namespace qgraph;

namespace {

QuantumEmulator emulator(std::uint64_t seed, std::size_t n) {
  OracleConfig c;
  c.seed = seed;
  return QuantumEmulator(c, n);
}

}  // namespace

TEST(Layers, DirectedPath) {
  const auto g = BlackBoxGraph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}}, true);
  auto q = emulator(1, 4);
  const auto l = assign_layers(g, 0, q);
  EXPECT_EQ(l.layer, (std::vector<std::uint32_t>{0, 1, 2, 3}));
  EXPECT_EQ(l.visit_order, (std::vector<Vertex>{0, 1, 2, 3}));
}

TEST(Layers, DirectedPathFromTheMiddle) {
  const auto g = BlackBoxGraph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}}, true, Model::Adjacency);
  auto q = emulator(1, 4);
  const auto l = assign_layers(g, 2, q);
  EXPECT_EQ(l.layer[0], kUnreached);
  EXPECT_EQ(l.layer[1], kUnreached);
  EXPECT_EQ(l.layer[3], 1u);
  EXPECT_EQ(l.reached_count(), 2u);
}

TEST(Layers, StarLeavesShareLayerOne) {
  for (Model model : {Model::List, Model::Adjacency}) {
    auto q = emulator(3, 6);
    const auto l = assign_layers(star_graph(5, model), 0, q);
    for (Vertex v = 1; v <= 5; ++v) EXPECT_EQ(l.layer[v], 1u);
    EXPECT_EQ(l.found[0], 5u);
  }
}

TEST(Layers, StartOutOfRange) {
  auto q = emulator(1, 3);
  EXPECT_THROW(assign_layers(path_graph(3), 3, q), BoundsError);
}

TEST(Layers, MatchClassicalBfsOnRandomDigraphs) {
  Rng rng(21);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + uniform_below(rng, 11);
    const std::size_t m = 1 + uniform_below(rng, n * (n - 1));
    const Model model = t % 2 ? Model::List : Model::Adjacency;
    const auto g = gen_random_digraph(n, m, t, model, {uniform_below(rng, 3), true, static_cast<std::uint64_t>(t)});
    const auto start = static_cast<Vertex>(uniform_below(rng, n));
    auto q = emulator(t, n);
    const auto l = assign_layers(g, start, q);
    ASSERT_EQ(l.layer, classical_bfs(g, start)) << "trial " << t;
  }
}

TEST(Layers, StructuralInvariants) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto g = gen_random_digraph(30, 90, seed, Model::List, {1, true, seed});
    auto q = emulator(seed, 30);
    const auto l = assign_layers(g, 0, q);
    EXPECT_EQ(l.layer[0], 0u);
    std::uint64_t found = std::accumulate(l.found.begin(), l.found.end(), std::uint64_t{0});
    EXPECT_EQ(found, l.reached_count() - 1);
    for (auto c : l.times_processed) EXPECT_LE(c, 1u);
    // layer(y) = 1 + min over reached in-neighbors.
    for (Vertex y = 1; y < 30; ++y) {
      std::uint32_t best = kUnreached;
      for (const Edge& e : g.edges()) {
        if (e.v == y && l.reached(e.u)) best = std::min(best, l.layer[e.u] + 1);
      }
      EXPECT_EQ(l.layer[y], best);
    }
    // Discovery order is by layer.
    for (std::size_t i = 1; i < l.visit_order.size(); ++i) {
      EXPECT_LE(l.layer[l.visit_order[i - 1]], l.layer[l.visit_order[i]]);
    }
  }
}

TEST(Layers, AdjacencyChargeIsOrderSqrtNPerVertex) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = 50;
    const auto g = gen_random_digraph(n, 300 + 20 * seed, seed, Model::Adjacency);
    auto q = emulator(seed, n);
    assign_layers(g, 0, q);
    EXPECT_LE(q.ledger().units(), n * ceil_sqrt(n) * 2 + n);
  }
}

TEST(Layers, ListChargeFollowsCauchySchwarz) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t n = 80;
    const auto g = gen_random_digraph(n, 4 * n, seed, Model::List, {seed % 3, seed % 2 == 1, seed});
    auto q = emulator(seed, n);
    const auto l = assign_layers(g, 0, q);
    double sum_n = 0, sum_d = 0, empty = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (l.times_processed[v] == 0) continue;
      sum_n += l.found[v];
      sum_d += static_cast<double>(l.domain[v]);
      empty += static_cast<double>(ceil_sqrt(l.domain[v]));
    }
    const double batch = static_cast<double>(q.ledger().entry(Primitive::GroverBatch).units);
    // Each batch rounds up once, hence the extra term per processed vertex.
    EXPECT_LE(batch, std::sqrt(sum_n) * std::sqrt(sum_d) + static_cast<double>(l.reached_count()));
    EXPECT_EQ(static_cast<double>(q.ledger().entry(Primitive::GroverEmptyCheck).units), empty);
  }
}

TEST(Layers, HolesAreNeverMarked) {
  const auto g = BlackBoxGraph::from_lists(3, {{kHole, 1, kHole}, {kHole, 2}, {}}, true);
  auto q = emulator(1, 3);
  const auto l = assign_layers(g, 0, q);
  EXPECT_EQ(l.layer, (std::vector<std::uint32_t>{0, 1, 2}));
  EXPECT_EQ(l.domain[0], 3u);
}
