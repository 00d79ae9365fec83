#include "gsnet/ensemble.hpp"

#include <cmath>
#include <stdexcept>

#include "gsnet/graph.hpp"
#include "gsnet/rng.hpp"
#include "gsnet/statmech.hpp"

namespace gsnet {

double ensemble_decay_bipartite_a(const DegreeDistribution& dist) {
    const double k = dist.mean();
    const double gr34 = dist.gr(0.75);
    return 15.0 / 4.0 - 1.25 * dist.gp(0.0) - 0.5 * dist.gp(0.5) +
           0.5 * k * (1.0 - 0.25 * gr34 * gr34);
}

double ensemble_decay_bipartite_b(const DegreeDistribution& dist,
                                  BipartiteBEnsembleForm form) {
    const double k = dist.mean();
    const double s = form == BipartiteBEnsembleForm::equation
                         ? dist.gr(0.75) + dist.gr(0.25)
                         : dist.gr(0.5) + dist.gr(0.75);
    return 7.0 / 4.0 - 0.25 * dist.gp(0.0) + 0.5 * k * (1.0 - s * s / 16.0);
}

double ensemble_decay_subgraph(const DegreeDistribution& dist) {
    const double k = dist.mean();
    return 5.0 / 8.0 + 17.0 * k / 16.0 + 1.75 * dist.gp2(0.0, 0.0) -
           15.0 / 8.0 * dist.gp2(1.0, 0.0) -
           0.5 * (dist.gp2(1.0, 0.5) - dist.gp2(0.5, 0.5));
}

double ensemble_decay(Protocol protocol, const DegreeDistribution& dist) {
    switch (protocol) {
        case Protocol::bipartite_a: return ensemble_decay_bipartite_a(dist);
        case Protocol::bipartite_b: return ensemble_decay_bipartite_b(dist);
        case Protocol::subgraph: return ensemble_decay_subgraph(dist);
    }
    throw std::logic_error("unknown protocol");
}

double subgraph_node_decay(int in_deg, int out_deg) {
    const double i = in_deg, j = out_deg;
    if (out_deg > 0)
        return 0.625 * (j + 1.0) + 1.5 * i - std::ldexp(1.0, -1 - out_deg) +
               std::ldexp(1.0, -1 - out_deg - in_deg);
    if (in_deg > 0) return 1.5 * (i - 1.0) - 0.25 + std::ldexp(1.0, -1 - in_deg);
    return 0.5;
}

double ensemble_crossover(double lo, double hi) {
    auto gap = [](double k) {
        const auto d = DegreeDistribution::poisson(k);
        const double bip = std::min(ensemble_decay_bipartite_a(d),
                                    ensemble_decay_bipartite_b(d));
        return ensemble_decay_subgraph(d) - bip;
    };
    double glo = gap(lo), ghi = gap(hi);
    if (glo == 0.0) return lo;
    if (ghi == 0.0) return hi;
    if ((glo < 0.0) == (ghi < 0.0))
        throw std::invalid_argument("no crossover inside the bracket");
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double gm = gap(mid);
        if (gm == 0.0) return mid;
        if ((gm < 0.0) == (glo < 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

EnsembleMcResult mc_ensemble_decay(Protocol protocol,
                                   const DegreeDistribution& dist, double p,
                                   const EnsembleMcParams& params) {
    const NoiseParams noise{p, p, p};
    const auto purif = PurificationModel::first_order(p);
    EnsembleMcResult res;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < params.num_graphs; ++i) {
        const std::uint64_t gseed = substream_seed(params.seed, 3 * i);
        const std::uint64_t oseed = substream_seed(params.seed, 3 * i + 1);
        const std::uint64_t mseed = substream_seed(params.seed, 3 * i + 2);
        const Graph g = configuration_model(dist, params.num_nodes, gseed);
        McResult mc;
        if (protocol == Protocol::subgraph) {
            const OrientedGraph og = orient_random(g, oseed);
            GeneralCorrelator corr(og, noise, purif);
            mc = mc_fidelity(corr, params.samples_per_graph, mseed,
                             params.threads);
        } else {
            GeneralCorrelator corr(protocol, g, shuffled_order(g, oseed),
                                   noise, purif, SupportRule::union_or,
                                   params.order_stats);
            mc = mc_fidelity(corr, params.samples_per_graph, mseed,
                             params.threads);
        }
        res.per_graph_fidelity.push_back(mc.mean);
        if (!(mc.mean > 0.0)) {
            ++res.excluded;
            res.per_graph_f.push_back(
                std::numeric_limits<double>::quiet_NaN());
            continue;
        }
        const double f = decay_rate(mc.mean, g.n, p);
        res.per_graph_f.push_back(f);
        ++res.graphs_used;
        sum += f;
        sum2 += f * f;
    }
    if (res.graphs_used > 0) res.f_mean = sum / res.graphs_used;
    if (res.graphs_used > 1) {
        const double var =
            (sum2 - sum * sum / res.graphs_used) / (res.graphs_used - 1);
        res.f_stderr = std::sqrt(std::max(0.0, var) / res.graphs_used);
    }
    return res;
}

}  // namespace gsnet
