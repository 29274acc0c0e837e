#pragma once

#include "qgraph/core.hpp"
#include "qgraph/quantum_cost.hpp"
#include "qgraph/graph_core.hpp"
#include "qgraph/generators.hpp"
#include "qgraph/graph_io.hpp"
#include "qgraph/layered_bfs.hpp"
#include "qgraph/bipartite_matching.hpp"
#include "qgraph/general_matching.hpp"
#include "qgraph/max_flow.hpp"
#include "qgraph/baselines.hpp"
#include "qgraph/bench.hpp"
