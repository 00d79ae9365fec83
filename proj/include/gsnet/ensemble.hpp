#pragma once

// Ensemble averages over random graphs with a prescribed degree distribution.
// In the leading order of p = p1 = p2 (purification at its first-order fixed
// point) the per-node decay rate averages to closed forms in the degree pgf
// g_p, the excess-degree pgf g_r and the mean degree; the subgraph protocol
// uses the bivariate in/out pgf of the randomly oriented ensemble.  A
// Monte-Carlo path samples graphs from the configuration model and estimates
// the same quantity from sampled stabilizer configurations.

#include <cstdint>
#include <vector>

#include "gsnet/correlators.hpp"
#include "gsnet/degree_distribution.hpp"
#include "gsnet/noise.hpp"

namespace gsnet {

double ensemble_decay_bipartite_a(const DegreeDistribution& dist);

// The two printed forms of the bipartite-B average disagree in the arguments
// of g_r; the equation form is the default, the text form is kept for
// comparison.
enum class BipartiteBEnsembleForm { equation, text };
double ensemble_decay_bipartite_b(
    const DegreeDistribution& dist,
    BipartiteBEnsembleForm form = BipartiteBEnsembleForm::equation);

double ensemble_decay_subgraph(const DegreeDistribution& dist);

double ensemble_decay(Protocol protocol, const DegreeDistribution& dist);

// Expected leading-order exponent of a single node with the given in/out
// degree under the subgraph protocol (adopted-leaf rule); the ensemble
// average is the pmf-weighted sum of these.
double subgraph_node_decay(int in_deg, int out_deg);

// Mean degree of the Poisson family at which the subgraph average crosses
// the better of the two bipartite averages.
double ensemble_crossover(double lo = 0.5, double hi = 10.0);

struct EnsembleMcParams {
    int num_graphs = 10;
    int num_nodes = 100;
    std::uint64_t samples_per_graph = 1000;
    std::uint64_t seed = 1;
    int threads = 0;
    // The closed forms average the annealed order model (independent
    // half-probability priors per connection), so that is the default here;
    // `realized` follows one concrete shuffled gate sequence per graph, which
    // sits measurably below the annealed value on dense graphs because an
    // early edge sees few established neighbors on both endpoints at once.
    OrderStats order_stats = OrderStats::annealed;
};

struct EnsembleMcResult {
    double f_mean = 0.0;    // average of the per-graph decay estimates
    double f_stderr = 0.0;  // standard error over graphs
    int graphs_used = 0;
    int excluded = 0;  // graphs whose fidelity estimate was non-positive
    std::vector<double> per_graph_f;
    std::vector<double> per_graph_fidelity;
};

// Samples graphs from the configuration model (random orientation for the
// subgraph protocol; annealed or shuffled gate order for the bipartite ones,
// see EnsembleMcParams::order_stats), estimates each graph's fidelity at
// p1 = p2 = p by configuration sampling, and converts to the per-node decay
// rate -log(F)/(N p).
EnsembleMcResult mc_ensemble_decay(Protocol protocol,
                                   const DegreeDistribution& dist, double p,
                                   const EnsembleMcParams& params);

}  // namespace gsnet
