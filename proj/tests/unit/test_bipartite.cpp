#include <gtest/gtest.h>

#include <set>

#include "qgraph/baselines.hpp"
#include "qgraph/bipartite_matching.hpp"
#include "qgraph/generators.hpp"

using namespace qgraph;

namespace {

OracleConfig config(std::uint64_t seed) {
  OracleConfig c;
  c.seed = seed;
  return c;
}

struct Fixture {
  const BlackBoxGraph& g;
  std::vector<Side> side;
  Matching matching;
  QuantumEmulator quantum;

  Fixture(const BlackBoxGraph& graph, std::uint64_t seed)
      : g(graph), matching(graph.vertex_count()), quantum(config(seed), graph.vertex_count()) {
    side = two_color(g, quantum);
  }
  AugmentingPathSet paths() { return find_disjoint_augmenting_paths(AugmentingDigraphView(g, side, matching), quantum); }
};

}  // namespace

TEST(TwoColor, RejectsOddCycles) {
  OracleConfig c;
  QuantumEmulator q(c, 5);
  EXPECT_THROW(two_color(cycle_graph(5), q), NotBipartite);
  EXPECT_THROW(max_bipartite_matching(complete_graph(3), c), NotBipartite);
  EXPECT_NO_THROW(two_color(cycle_graph(6), q));
}

TEST(TwoColor, RejectsDirectedInput) {
  OracleConfig c;
  EXPECT_THROW(max_bipartite_matching(BlackBoxGraph::from_edges(2, {{0, 1}}, true), c),
               ContractViolation);
}

TEST(View, EdgesFollowTheMatching) {
  for (Model model : {Model::List, Model::Adjacency}) {
    const auto g = path_graph(4, model);  // 0-1-2-3, sides L R L R
    Fixture f(g, 1);
    f.matching.match(1, 2);
    AugmentingDigraphView view(g, f.side, f.matching);
    auto outs = [&](Vertex v) {
      std::set<Vertex> s;
      for (std::size_t i = 0; i < view.domain_size(v); ++i) {
        if (auto w = view.slot(v, i, nullptr)) s.insert(*w);
      }
      return s;
    };
    EXPECT_EQ(outs(view.source()), (std::set<Vertex>{0}));
    EXPECT_EQ(outs(0), (std::set<Vertex>{1}));
    EXPECT_EQ(outs(1), (std::set<Vertex>{2}));
    EXPECT_EQ(outs(2), (std::set<Vertex>{3}));
    EXPECT_EQ(outs(3), (std::set<Vertex>{view.sink()}));
    EXPECT_TRUE(outs(view.sink()).empty());
    EXPECT_EQ(view.domain_size(view.source()), model == Model::List ? 4u : 6u);
  }
}

TEST(View, ListDomainsGrowByAtMostTwoN) {
  const auto g = gen_random_bipartite(8, 9, 0.3, 4, Model::List);
  Fixture f(g, 4);
  AugmentingDigraphView view(g, f.side, f.matching);
  std::size_t base = 0, viewed = 0;
  for (Vertex v = 0; v < 17; ++v) base += g.list_length(v);
  for (std::size_t v = 0; v < view.vertex_count(); ++v) viewed += view.domain_size(static_cast<Vertex>(v));
  EXPECT_LE(viewed, base + 2 * 17);
}

TEST(DisjointPaths, CompleteTwoByTwo) {
  const auto g = complete_bipartite(2, 2);
  Fixture f(g, 3);
  const auto set = f.paths();
  EXPECT_EQ(set.paths.size(), 2u);
  EXPECT_EQ(set.length, 3u);
  for (const auto& p : set.paths) EXPECT_EQ(p.size(), 2u);
}

TEST(DisjointPaths, PerfectMatchingLeavesNothing) {
  const auto g = complete_bipartite(3, 3);
  Fixture f(g, 3);
  f.matching.match(0, 3);
  f.matching.match(1, 4);
  f.matching.match(2, 5);
  EXPECT_TRUE(f.paths().paths.empty());
}

TEST(DisjointPaths, MinimalLengthAndMaximalOnRandomGraphs) {
  Rng rng(5);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n1 = 1 + uniform_below(rng, 6);
    const std::size_t n2 = 1 + uniform_below(rng, 6);
    const auto g = gen_random_bipartite(n1, n2, 0.2 + 0.6 * uniform_unit(rng), t,
                                        t % 2 ? Model::List : Model::Adjacency);
    Fixture f(g, t);
    // Start from a random greedy matching so paths are longer than 1.
    for (const Edge& e : g.edges()) {
      if (f.matching.is_free(e.u) && f.matching.is_free(e.v) && uniform_below(rng, 2)) {
        f.matching.match(e.u, e.v);
      }
    }
    const auto set = f.paths();
    std::size_t shortest = 0;
    std::vector<bool> none(g.vertex_count(), false);
    enumerate_augmenting_paths(g, f.matching, g.vertex_count(), none, [&](const std::vector<Vertex>& p) {
      if (shortest == 0 || p.size() - 1 < shortest) shortest = p.size() - 1;
      return true;
    });
    if (shortest == 0) {
      EXPECT_TRUE(set.paths.empty());
      continue;
    }
    ASSERT_FALSE(set.paths.empty());
    std::vector<bool> used(g.vertex_count(), false);
    for (const auto& p : set.paths) {
      EXPECT_EQ(p.size() - 1, shortest);
      EXPECT_EQ(set.length, shortest + 2);
      for (Vertex v : p) {
        EXPECT_FALSE(used[v]);
        used[v] = true;
      }
      for (std::size_t i = 0; i + 1 < p.size(); ++i) EXPECT_TRUE(g.has_edge(p[i], p[i + 1]));
    }
    // Maximal: nothing of that length survives among unused vertices.
    bool extra = false;
    enumerate_augmenting_paths(g, f.matching, shortest, used, [&](const std::vector<Vertex>&) {
      extra = true;
      return false;
    });
    EXPECT_FALSE(extra) << "trial " << t;
    for (auto c : set.visits) EXPECT_LE(c, 1u);
  }
}

TEST(Augment, GrowsBySetSize) {
  Matching m(4);
  const auto out = augment(m, {{0, 2}, {1, 3}});
  EXPECT_EQ(out.size(), 2u);
  EXPECT_EQ(augment(out, {}), out);
  EXPECT_THROW(augment(m, {{0, 2}, {2, 1}}), ContractViolation);
}

TEST(Augment, EqualsSymmetricDifference) {
  const auto g = path_graph(6);
  Matching m(6);
  m.match(1, 2);
  m.match(3, 4);
  const auto out = augment(m, {{0, 1, 2, 3, 4, 5}});
  EXPECT_EQ(out.pairs(), (std::vector<Edge>{{0, 1}, {2, 3}, {4, 5}}));
  EXPECT_THROW(augment(m, {{0, 2, 1, 3}}), ContractViolation);
}

TEST(MaxBipartite, SmallFamilies) {
  EXPECT_EQ(max_bipartite_matching(complete_bipartite(3, 3), config(1)).matching.size(), 3u);
  EXPECT_EQ(max_bipartite_matching(path_graph(4), config(1)).matching.size(), 2u);
  EXPECT_EQ(max_bipartite_matching(star_graph(6), config(1)).matching.size(), 1u);
  const auto k33 = max_bipartite_matching(complete_bipartite(3, 3, Model::Adjacency), config(2));
  EXPECT_LE(k33.report.iterations.size(), 4u);
}

TEST(MaxBipartite, AgreesWithBruteForce) {
  Rng rng(99);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n1 = 1 + uniform_below(rng, 7);
    const std::size_t n2 = 1 + uniform_below(rng, 7);
    const auto g = gen_random_bipartite(n1, n2, 0.1 + 0.8 * uniform_unit(rng), t,
                                        t % 2 ? Model::List : Model::Adjacency, {t % 3u, true, static_cast<std::uint64_t>(t)});
    const auto r = max_bipartite_matching(g, config(t));
    ASSERT_NO_THROW(r.matching.validate(g));
    ASSERT_EQ(static_cast<std::int64_t>(r.matching.size()), brute_force_max_matching(g).value) << t;
  }
}

TEST(MaxBipartite, ReportInvariants) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto g = gen_random_bipartite(30, 30, 0.1, seed, Model::List);
    const auto r = max_bipartite_matching(g, config(seed));
    const auto& it = r.report.iterations;
    EXPECT_LE(it.size(), ceil_sqrt(4 * 60) + 1);
    for (std::size_t i = 1; i < it.size(); ++i) {
      EXPECT_GT(it[i].path_length, it[i - 1].path_length);
      EXPECT_EQ(it[i].matching_size, it[i - 1].matching_size + it[i].paths_found);
    }
    EXPECT_LE(r.report.max_visits, 1u);
    EXPECT_EQ(r.matching.size(), static_cast<std::size_t>(reference_max_matching(g).value));
    // Per-round cost: O(sqrt(N S)) for N = n + 2 vertices of H and total domain S.
    for (const auto& round : it) {
      const std::uint64_t big_n = 62;
      EXPECT_LE(round.units, 5 * ceil_sqrt(big_n * round.domain_total) + 3 * big_n);
    }
  }
}

TEST(MaxBipartite, DeterministicLedger) {
  const auto g = gen_random_bipartite(20, 20, 0.2, 8);
  const auto a = max_bipartite_matching(g, config(5));
  const auto b = max_bipartite_matching(g, config(5));
  EXPECT_EQ(a.matching, b.matching);
  EXPECT_EQ(a.ledger, b.ledger);
}
