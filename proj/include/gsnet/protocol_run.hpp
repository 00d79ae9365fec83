#pragma once

// Gate-by-gate execution of the three distribution protocols on the explicit
// mixture simulator.  Every CPHASE, measurement and noise event is applied to
// the density matrix, so the resulting correlators are an independent check
// of the closed-form products in correlators.hpp.  Sizes are limited by the
// simulator (coefficient tables grow as 2^generators), which is plenty for
// cross-validation on small graphs.

#include <cstdint>
#include <vector>

#include "gsnet/correlators.hpp"
#include "gsnet/graph.hpp"
#include "gsnet/mixture.hpp"
#include "gsnet/noise.hpp"

namespace gsnet {

struct OracleRun {
    MixtureState state;
    // Simulator qubit that ends up holding vertex u of the target graph.
    std::vector<int> node_qubit;
};

// Central preparation + teleportation: a local copy of the graph state is
// built from noisy |+> qubits (one per vertex, CPHASE per edge in `order`),
// then every vertex qubit is teleported through a purified Bell pair with a
// CPHASE and two X measurements.
OracleRun run_bipartite_a(const Graph& g, const EdgeOrder& order,
                          const NoiseParams& noise,
                          const PurificationModel& purif,
                          SupportRule rule = SupportRule::union_or);

// Direct connection: each vertex holds a purified Bell pair; the connector
// halves are joined by a CPHASE per edge in `order` and one X measurement
// per vertex moves the state onto the kept halves.
OracleRun run_bipartite_b(const Graph& g, const EdgeOrder& order,
                          const NoiseParams& noise,
                          const PurificationModel& purif,
                          SupportRule rule = SupportRule::union_or);

// Star merging: every vertex with outgoing edges distributes a purified star
// (one leaf per outgoing edge); incoming leaves are merged into the local
// qubit with CPHASE + Y measurement + phase corrections on both neighbors of
// the measured leaf.  A vertex with no outgoing edges adopts its first
// incoming leaf as its local qubit.
OracleRun run_subgraph(const OrientedGraph& og, const NoiseParams& noise,
                       const PurificationModel& purif,
                       SupportRule rule = SupportRule::union_or);

// prod_{u: x_u = 1} X_{node_qubit[u]} prod_{v in N(u)} Z_{node_qubit[v]}.
PauliString stabilizer_product(const Graph& g,
                               const std::vector<int>& node_qubit,
                               std::uint64_t x);

// <K_x> on the final state.
double oracle_correlator(const OracleRun& run, const Graph& g, std::uint64_t x);

// 2^-N sum_x <K_x>.
double oracle_fidelity(const OracleRun& run, const Graph& g);

}  // namespace gsnet
