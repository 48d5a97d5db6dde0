#pragma once

#include "qlp/graph.hpp"
#include "qlp/random.hpp"

namespace qlp {

// Erdos-Renyi G(N, p) with p = k_av / (N - 1), so the expected mean degree
// is exactly k_av. Requires 0 < k_av < N - 1.
Graph gen_er(NodeId node_count, double k_av, RandomStream& rng);

// Barabasi-Albert preferential attachment: seed clique on m + 1 nodes with
// m = round(k_av / 2) >= 1, then m edges per arriving node, targets drawn
// degree-proportionally (repeated-endpoint list) without duplicates.
// Requires node_count > m.
Graph gen_ba(NodeId node_count, double k_av, RandomStream& rng);

// Random geometric graph on the unit torus with connection radius
// r = sqrt(k_av / (pi (N - 1))), which makes the expected degree exactly
// k_av with no boundary bias. Requires r < 1/2.
Graph gen_rgg(NodeId node_count, double k_av, RandomStream& rng);

// Dispatch by model name: "er", "ba" or "rgg".
Graph gen_model(const std::string& model, NodeId node_count, double k_av,
                RandomStream& rng);

}  // namespace qlp
