// Small tour of the library: build instances, run each algorithm and read
// the query ledger.

#include <iostream>

#include "qgraph/qgraph.hpp"

int main() {
  using namespace qgraph;

  OracleConfig config;
  config.seed = 7;

  // Bipartite matching on K_{3,3}, list model.
  const BlackBoxGraph k33 = complete_bipartite(3, 3);
  const BipartiteResult bip = max_bipartite_matching(k33, config);
  std::cout << "K33 matching size " << bip.matching.size() << " in " << bip.report.iterations.size()
            << " rounds, " << to_string(bip.ledger.charged_queries()) << " charged queries\n";

  // General matching needs blossoms on the Petersen graph.
  const GeneralResult gen = max_general_matching(petersen_graph(Model::Adjacency), config);
  std::cout << "Petersen matching size " << gen.matching.size() << ", "
            << to_string(gen.ledger.charged_queries()) << " charged queries\n";

  // Max flow on a random network, checked against Edmonds-Karp.
  const IntegerNetwork net = gen_random_network(40, 200, 3, 11);
  const FlowResult flow = max_flow_integer(net, config);
  std::cout << "flow value " << flow.flow.value << " (Edmonds-Karp " << edmonds_karp(net).value << "), "
            << flow.blocking_phases << " blocking phases, threshold depth " << flow.k << '\n';

  // Per-primitive breakdown of the last ledger.
  for (std::size_t i = 0; i < kPrimitiveCount; ++i) {
    const auto& e = flow.ledger.breakdown()[i];
    std::cout << "  " << primitive_name(static_cast<Primitive>(i)) << ": " << e.calls << " calls, " << e.units
              << " units\n";
  }
}
