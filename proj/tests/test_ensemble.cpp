#include <doctest.h>

#include <cmath>

#include "gsnet/degree_distribution.hpp"
#include "gsnet/ensemble.hpp"

using namespace gsnet;

TEST_CASE("closed forms at vanishing mean degree") {
    // isolated nodes: only local preparation and measurement noise survive
    const auto d = DegreeDistribution::poisson(1e-12);
    CHECK(ensemble_decay_bipartite_a(d) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(ensemble_decay_bipartite_b(d) == doctest::Approx(1.5).epsilon(1e-9));
    CHECK(ensemble_decay_subgraph(d) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("protocol dispatch helper") {
    const auto d = DegreeDistribution::poisson(2.0);
    CHECK(ensemble_decay(Protocol::bipartite_a, d) ==
          doctest::Approx(ensemble_decay_bipartite_a(d)).epsilon(1e-15));
    CHECK(ensemble_decay(Protocol::bipartite_b, d) ==
          doctest::Approx(ensemble_decay_bipartite_b(d)).epsilon(1e-15));
    CHECK(ensemble_decay(Protocol::subgraph, d) ==
          doctest::Approx(ensemble_decay_subgraph(d)).epsilon(1e-15));
}

TEST_CASE("subgraph ensemble equals the degree-class average") {
    for (double k : {0.8, 1.5, 2.8, 4.0}) {
        const auto d = DegreeDistribution::poisson(k);
        // orientation splits Poisson(k) into independent Poisson(k/2) halves
        const double half = k / 2.0;
        auto pois = [&](int m) {
            return std::exp(-half + m * std::log(half) - std::lgamma(m + 1.0));
        };
        double avg = 0.0;
        for (int i = 0; i < 40; ++i)
            for (int j = 0; j < 40; ++j)
                avg += pois(i) * pois(j) * subgraph_node_decay(i, j);
        CHECK(ensemble_decay_subgraph(d) == doctest::Approx(avg).epsilon(1e-10));
    }
}

TEST_CASE("per-class rates") {
    CHECK(subgraph_node_decay(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
    // j > 0 classes: (5/8)(j+1) + (3/2)i - 2^-(1+j) + 2^-(1+j+i)
    CHECK(subgraph_node_decay(0, 1) ==
          doctest::Approx(5.0 / 4.0 - 0.25 + 0.25).epsilon(1e-15));
    CHECK(subgraph_node_decay(2, 3) ==
          doctest::Approx(5.0 / 8.0 * 4 + 3.0 - std::ldexp(1.0, -4) +
                          std::ldexp(1.0, -6))
              .epsilon(1e-15));
    // pure collectors (j = 0, i >= 1): (3/2)(i-1) - 1/4 + 2^-(i+1)
    CHECK(subgraph_node_decay(1, 0) ==
          doctest::Approx(-0.25 + 0.25).epsilon(1e-15));
    CHECK(subgraph_node_decay(3, 0) ==
          doctest::Approx(3.0 - 0.25 + std::ldexp(1.0, -4)).epsilon(1e-15));
}

TEST_CASE("bipartite-b closed-form variants differ but stay close") {
    const auto d = DegreeDistribution::poisson(2.0);
    const double eq = ensemble_decay_bipartite_b(d, BipartiteBEnsembleForm::equation);
    const double tx = ensemble_decay_bipartite_b(d, BipartiteBEnsembleForm::text);
    CHECK(eq != tx);
    CHECK(std::abs(eq - tx) < 0.2);
}

TEST_CASE("crossover between the subgraph and bipartite strategies") {
    const double k = ensemble_crossover();
    CHECK(k == doctest::Approx(2.773079).epsilon(1e-4));
    // below: subgraph wins; above: a bipartite protocol wins
    const auto lo = DegreeDistribution::poisson(k - 0.3);
    CHECK(ensemble_decay_subgraph(lo) <
          std::min(ensemble_decay_bipartite_a(lo), ensemble_decay_bipartite_b(lo)));
    const auto hi = DegreeDistribution::poisson(k + 0.3);
    CHECK(ensemble_decay_subgraph(hi) >
          std::min(ensemble_decay_bipartite_a(hi), ensemble_decay_bipartite_b(hi)));
}

TEST_CASE("sampled ensembles agree with the closed forms") {
    EnsembleMcParams prm;
    prm.num_graphs = 6;
    prm.num_nodes = 60;
    prm.samples_per_graph = 400;
    prm.seed = 7;
    const double p = 1e-3;
    const auto d = DegreeDistribution::poisson(2.0);
    for (Protocol proto :
         {Protocol::bipartite_a, Protocol::bipartite_b, Protocol::subgraph}) {
        const auto r = mc_ensemble_decay(proto, d, p, prm);
        CHECK(r.graphs_used + r.excluded == 6);
        CHECK(r.per_graph_f.size() == 6);
        const double closed = ensemble_decay(proto, d);
        CHECK(std::abs(r.f_mean - closed) < 4.0 * r.f_stderr + 0.05);
    }
    // determinism
    const auto a = mc_ensemble_decay(Protocol::subgraph, d, p, prm);
    const auto b = mc_ensemble_decay(Protocol::subgraph, d, p, prm);
    CHECK(a.f_mean == b.f_mean);
    CHECK(a.f_stderr == b.f_stderr);
}

TEST_CASE("realized gate order sits below the annealed ensemble average") {
    // a concrete shuffled sequence leaves early edges with no established
    // neighbors at all, so it damps less than the annealed model the closed
    // forms average; the effect grows with density
    EnsembleMcParams an, re;
    an.num_graphs = re.num_graphs = 8;
    an.num_nodes = re.num_nodes = 80;
    an.samples_per_graph = re.samples_per_graph = 600;
    an.seed = re.seed = 21;
    re.order_stats = OrderStats::realized;
    const auto d = DegreeDistribution::poisson(4.0);
    const auto ra = mc_ensemble_decay(Protocol::bipartite_a, d, 1e-3, an);
    const auto rr = mc_ensemble_decay(Protocol::bipartite_a, d, 1e-3, re);
    CHECK(ra.f_mean > rr.f_mean);
    // realized mode stays reproducible
    const auto rr2 = mc_ensemble_decay(Protocol::bipartite_a, d, 1e-3, re);
    CHECK(rr.f_mean == rr2.f_mean);
}
