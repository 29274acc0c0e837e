#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "qgraph/baselines.hpp"
#include "qgraph/generators.hpp"
#include "qgraph/graph_io.hpp"

using namespace qgraph;

namespace {

BlackBoxGraph triangle(Model model) {
  return BlackBoxGraph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}}, false, model);
}

}  // namespace

TEST(AdjacencyProbe, ReadsTheRelation) {
  const auto g = triangle(Model::Adjacency);
  QueryLedger ledger;
  EXPECT_TRUE(g.probe_adjacency(0, 1, &ledger));
  EXPECT_TRUE(g.probe_adjacency(1, 0, &ledger));
  EXPECT_FALSE(g.probe_adjacency(0, 0, &ledger));
  EXPECT_EQ(ledger.raw_probes(), 3u);
}

TEST(AdjacencyProbe, WrongModelAndRange) {
  EXPECT_THROW(triangle(Model::List).probe_adjacency(0, 1), ModelMismatch);
  EXPECT_THROW(triangle(Model::Adjacency).probe_adjacency(0, 3), BoundsError);
  EXPECT_THROW(triangle(Model::Adjacency).probe_list(0, 0), ModelMismatch);
}

TEST(Construction, RejectsBadEdgeSets) {
  EXPECT_THROW(BlackBoxGraph::from_edges(3, {}, false), InvalidGraph);
  EXPECT_THROW(BlackBoxGraph::from_edges(0, {{0, 1}}, false), InvalidGraph);
  EXPECT_THROW(BlackBoxGraph::from_edges(3, {{1, 1}}, false), InvalidGraph);
  EXPECT_THROW(BlackBoxGraph::from_edges(3, {{0, 1}, {1, 0}}, false), InvalidGraph);
  EXPECT_NO_THROW(BlackBoxGraph::from_edges(3, {{0, 1}, {1, 0}}, true));
  EXPECT_THROW(BlackBoxGraph::from_edges(3, {{0, 3}}, false), InvalidGraph);
}

TEST(ListProbe, StarCenterReadsInOrder) {
  const auto g = star_graph(3);
  QueryLedger ledger;
  EXPECT_EQ(g.list_length(0), 3u);
  EXPECT_EQ(g.probe_list(0, 1, &ledger), 2);
  EXPECT_EQ(ledger.raw_probes(), 1u);
  EXPECT_THROW(g.probe_list(0, 3), BoundsError);
}

TEST(ListProbe, ExplicitArrayWithHole) {
  const auto g = BlackBoxGraph::from_lists(3, {{1, kHole, 2}, {0}, {0}}, false);
  EXPECT_EQ(g.probe_list(0, 0), 1);
  EXPECT_EQ(g.probe_list(0, 1), kHole);
  EXPECT_EQ(g.probe_list(0, 2), 2);
  EXPECT_FALSE(g.slot(0, 1, nullptr));
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_THROW(BlackBoxGraph::from_lists(3, {{1}, {}, {}}, false), InvalidGraph);
}

TEST(ListProbe, EmptyArraysAreAllowed) {
  const auto g = BlackBoxGraph::from_edges(4, {{0, 1}}, false, Model::List);
  EXPECT_EQ(g.list_length(3), 0u);
  EXPECT_EQ(g.domain_size(3), 0u);
}

TEST(ListProbe, SlotsCoverEveryEdgeEndpoint) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto g = gen_random_graph(20, 0.2, seed, Model::List, {3, true, seed});
    std::size_t slots = 0;
    for (Vertex v = 0; v < 20; ++v) slots += g.list_length(v);
    EXPECT_GE(slots, g.edge_count());
    EXPECT_GE(slots, 2 * g.edge_count());
  }
}

TEST(ListProbe, HolesNeverPushLengthPastN) {
  const auto g = complete_graph(6).with_model(Model::List, {10, false, 0});
  for (Vertex v = 0; v < 6; ++v) EXPECT_LE(g.list_length(v), 6u);
}

TEST(Models, BothViewsAgreeOnTheEdgeSet) {
  Rng rng(12);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + uniform_below(rng, 63);
    const bool directed = t % 2 == 0;
    const auto list = directed ? gen_random_digraph(n, 1 + uniform_below(rng, n * (n - 1)), t,
                                                    Model::List, {2, true, static_cast<std::uint64_t>(t)})
                               : gen_random_graph(n, 0.15, t, Model::List, {2, true, static_cast<std::uint64_t>(t)});
    const auto adj = list.with_model(Model::Adjacency);
    std::set<Edge> from_lists;
    std::set<Edge> from_matrix;
    for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) {
      for (std::size_t i = 0; i < list.list_length(v); ++i) {
        if (auto w = list.slot(v, i, nullptr)) from_lists.insert({v, *w});
      }
      for (Vertex w = 0; w < static_cast<Vertex>(n); ++w) {
        if (adj.probe_adjacency(v, w)) from_matrix.insert({v, w});
      }
    }
    EXPECT_EQ(from_lists, from_matrix);
  }
}

TEST(RandomBipartite, FullProbabilityIsComplete) {
  const auto g = gen_random_bipartite(3, 3, 1.0, 99);
  EXPECT_EQ(g.edge_count(), 9u);
  EXPECT_TRUE(same_graph(g, complete_bipartite(3, 3)));
}

TEST(RandomBipartite, DeterministicPerSeed) {
  const auto a = gen_random_bipartite(2, 2, 0.5, 7);
  const auto b = gen_random_bipartite(2, 2, 0.5, 7);
  EXPECT_TRUE(same_graph(a, b));
  EXPECT_EQ(a.canonical_edges(), b.canonical_edges());
  std::ostringstream sa, sb;
  write_graph(sa, gen_random_bipartite(30, 40, 0.3, 5));
  write_graph(sb, gen_random_bipartite(30, 40, 0.3, 5));
  EXPECT_EQ(sa.str(), sb.str());
}

TEST(RandomBipartite, EmptyDrawForcesOneEdge) {
  const auto g = gen_random_bipartite(1, 1, 0.0001, 1);
  EXPECT_EQ(g.edge_count(), 1u);
}

TEST(RandomBipartite, EdgesCrossTheSides) {
  const auto g = gen_random_bipartite(5, 7, 0.4, 3);
  for (const Edge& e : g.edges()) {
    EXPECT_LT(e.u, 5);
    EXPECT_GE(e.v, 5);
  }
}

TEST(RandomNetwork, SingleArc) {
  const auto net = gen_random_network(2, 1, 1, 4);
  ASSERT_EQ(net.arc_count(), 1u);
  EXPECT_EQ(net.arc(0).tail, 0);
  EXPECT_EQ(net.arc(0).head, 1);
  EXPECT_EQ(net.arc(0).capacity, 1);
  EXPECT_EQ(edmonds_karp(net).value, 1);
}

TEST(RandomNetwork, MatchesEdmondsKarpAndMinCut) {
  const auto net = gen_random_network(5, 8, 3, 11);
  EXPECT_EQ(net.arc_count(), 8u);
  EXPECT_EQ(edmonds_karp(net).value, brute_force_min_cut(net).value);
}

TEST(RandomNetwork, UnitCapacities) {
  const auto net = gen_random_network(30, 100, 1, 2);
  for (const Arc& a : net.arcs()) EXPECT_EQ(a.capacity, 1);
}

TEST(RandomNetwork, ShapeInvariants) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto net = gen_random_network(12, 11 + seed % 40, 4, seed);
    std::set<Edge> pairs;
    for (const Arc& a : net.arcs()) {
      EXPECT_GE(a.capacity, 1);
      EXPECT_LE(a.capacity, 4);
      EXPECT_TRUE(pairs.insert({std::min(a.tail, a.head), std::max(a.tail, a.head)}).second)
          << "antiparallel arcs";
    }
    // Every vertex hangs off the source.
    const auto dist = classical_bfs(net.graph(), net.source());
    for (auto d : dist) EXPECT_NE(d, kUnreached);
  }
}

TEST(RandomNetwork, InfeasibleArcCount) {
  EXPECT_THROW(gen_random_network(10, 8, 1, 0), InfeasibleError);
  EXPECT_THROW(gen_random_network(4, 7, 1, 0), InfeasibleError);
}

TEST(MajorityInstance, SmallValues) {
  EXPECT_EQ(edmonds_karp(gen_majority_hard_instance(3, 0, 1)).value, 4);
  EXPECT_EQ(edmonds_karp(gen_majority_hard_instance(3, 1, 1)).value, 5);
  EXPECT_EQ(edmonds_karp(gen_majority_hard_instance(1, 0, 1)).value, 0);
}

TEST(MajorityInstance, FlowIsTheMiddleArcCount) {
  for (std::size_t p = 1; p <= 12; ++p) {
    for (int extra = 0; extra <= 1; ++extra) {
      const auto net = gen_majority_hard_instance(p, extra, 100 + p);
      EXPECT_EQ(net.vertex_count(), 2 * p + 2);
      EXPECT_EQ(net.capacity_bound(), static_cast<std::int64_t>(2 * p + 2));
      EXPECT_EQ(edmonds_karp(net).value, static_cast<std::int64_t>(p * p / 2 + extra)) << "p=" << p;
    }
  }
}

TEST(NetworkConstruction, Validation) {
  EXPECT_THROW(IntegerNetwork::create(3, {{0, 1, 0}}, 0, 1, 2), InvalidGraph);
  EXPECT_THROW(IntegerNetwork::create(3, {{0, 1, 3}}, 0, 1, 2), InvalidGraph);
  EXPECT_THROW(IntegerNetwork::create(3, {{0, 1, 1}}, 1, 1, 2), InvalidGraph);
  EXPECT_THROW(IntegerNetwork::create(3, {{0, 1, 1}}, 0, 1, 0), InvalidGraph);
}

TEST(NetworkSlots, ListSlotsMapToTheirArcs) {
  const auto net = gen_random_network(10, 25, 3, 8, Model::List, {2, true, 8});
  for (Vertex v = 0; v < 10; ++v) {
    for (std::size_t i = 0; i < net.graph().list_length(v); ++i) {
      const Vertex w = net.graph().probe_list(v, i);
      const ArcId e = net.slot_arc(v, i);
      if (w == kHole) {
        EXPECT_EQ(e, kNoArc);
      } else {
        ASSERT_NE(e, kNoArc);
        EXPECT_EQ(net.arc(e).tail, v);
        EXPECT_EQ(net.arc(e).head, w);
      }
    }
  }
}

TEST(FlowObject, ValidateCatchesViolations) {
  const auto net = IntegerNetwork::create(3, {{0, 1, 2}, {1, 2, 2}}, 0, 2, 2);
  IntegerFlow f{{1, 1}, 1};
  EXPECT_NO_THROW(f.validate(net));
  f.flow = {2, 1};
  EXPECT_THROW(f.validate(net), ContractViolation);
  f.flow = {3, 3};
  f.value = 3;
  EXPECT_THROW(f.validate(net), ContractViolation);
  f.flow = {1, 1};
  f.value = 2;
  EXPECT_THROW(f.validate(net), ContractViolation);
}

TEST(MatchingObject, AugmentFlipsThePath) {
  const auto g = path_graph(4);
  Matching m(4);
  m.match(1, 2);
  m.augment(std::vector<Vertex>{0, 1, 2, 3});
  EXPECT_EQ(m.size(), 2u);
  EXPECT_TRUE(m.contains(0, 1));
  EXPECT_TRUE(m.contains(2, 3));
  EXPECT_NO_THROW(m.validate(g));
}

TEST(MatchingObject, AugmentRejectsBadPaths) {
  Matching m(5);
  m.match(1, 2);
  EXPECT_THROW(m.augment(std::vector<Vertex>{0, 1, 2}), ContractViolation);
  EXPECT_THROW(m.augment(std::vector<Vertex>{0, 1, 3, 4}), ContractViolation);
  EXPECT_THROW(m.augment(std::vector<Vertex>{1, 0}), ContractViolation);
  EXPECT_THROW(m.augment(std::vector<Vertex>{0, 1, 2, 0}), ContractViolation);
  EXPECT_EQ(m.size(), 1u);
}

TEST(MatchingObject, ValidateChecksEdges) {
  const auto g = path_graph(4);
  Matching m(4);
  m.match(0, 2);
  EXPECT_THROW(m.validate(g), ContractViolation);
  EXPECT_THROW(m.match(0, 3), ContractViolation);
}

TEST(GraphFile, RoundTrip) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = seed % 2 ? gen_random_digraph(15, 40, seed) : gen_random_graph(15, 0.3, seed);
    std::stringstream buf;
    write_graph(buf, g);
    const auto back = std::get<BlackBoxGraph>(read_instance(buf));
    EXPECT_TRUE(same_graph(g, back));
    EXPECT_EQ(g.edges().size(), back.edges().size());
  }
}

TEST(GraphFile, NetworkRoundTrip) {
  const auto net = gen_random_network(9, 20, 5, 3);
  std::stringstream buf;
  write_network(buf, net);
  EXPECT_TRUE(same_network(net, std::get<IntegerNetwork>(read_instance(buf))));
}

TEST(GraphFile, FileHelpers) {
  const std::string path = ::testing::TempDir() + "qgraph_roundtrip.txt";
  const auto g = petersen_graph();
  write_graph_file(path, g);
  EXPECT_TRUE(same_graph(g, read_graph_file(path, Model::Adjacency)));
  EXPECT_THROW(read_network_file(path), ParseError);
}

TEST(GraphFile, CommentsAndBlankLines) {
  std::istringstream in("# a triangle\nG 3 3 0\n\n0 1 # first\n1 2\n0 2\n");
  EXPECT_TRUE(same_graph(std::get<BlackBoxGraph>(read_instance(in)), triangle(Model::List)));
}

namespace {

std::size_t parse_error_line(const std::string& text) {
  std::istringstream in(text);
  try {
    read_instance(in);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST(GraphFile, ParseErrorsCarryLineNumbers) {
  EXPECT_EQ(parse_error_line("G 0 1 0\n0 0\n"), 1u);
  EXPECT_EQ(parse_error_line("N 3 2 0 2 2\n0 1 1\n1 2 0\n"), 3u);
  EXPECT_EQ(parse_error_line("N 3 1 0 2 2\n0 1 3\n"), 2u);
  EXPECT_EQ(parse_error_line("G 3 1 0\n0 x\n"), 2u);
  EXPECT_EQ(parse_error_line("G 3 2 0\n0 1\n"), 2u);
  EXPECT_EQ(parse_error_line("G 3 1 0\n0 1\n1 2\n"), 3u);
  EXPECT_EQ(parse_error_line("X 3 1\n"), 1u);
  EXPECT_EQ(parse_error_line("G 3 2 0\n0 1\n1 0\n"), 3u);
  EXPECT_EQ(parse_error_line("G 3 1 0\n1 1\n"), 2u);
  EXPECT_EQ(parse_error_line("G 3 1 0\n1 5\n"), 2u);
  EXPECT_EQ(parse_error_line("N 3 1 0 0 2\n0 1 1\n"), 1u);
}

TEST(NamedGraphs, Shapes) {
  EXPECT_EQ(petersen_graph().edge_count(), 15u);
  for (Vertex v = 0; v < 10; ++v) EXPECT_EQ(petersen_graph().neighbors(v).size(), 3u);
  EXPECT_EQ(complete_graph(5).edge_count(), 10u);
  EXPECT_EQ(cycle_graph(7).edge_count(), 7u);
}
