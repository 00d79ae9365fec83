#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "gsnet/correlators.hpp"
#include "gsnet/graph.hpp"
#include "gsnet/protocol_run.hpp"

using namespace gsnet;

namespace {

const NoiseParams kNoise{0.03, 0.05, 0.1};

// compares the gate-level simulation against the closed-form evaluator for
// every stabilizer configuration of the graph
double worst_diff(const OracleRun& run, const GeneralCorrelator& corr,
                  const Graph& g) {
    double worst = 0.0;
    for (Config x = 0; x < (Config(1) << g.n); ++x)
        worst = std::max(worst,
                         std::abs(oracle_correlator(run, g, x) - corr(x)));
    return worst;
}

}  // namespace

TEST_CASE("noiseless runs reproduce the ideal graph state") {
    const Graph g = ring(4);
    const NoiseParams clean{0.0, 0.0, 0.0};
    const auto ideal = PurificationModel::ideal();
    const auto order = canonical_order(g);
    std::vector<OracleRun> runs;
    runs.push_back(run_bipartite_a(g, order, clean, ideal));
    runs.push_back(run_bipartite_b(g, order, clean, ideal));
    runs.push_back(run_subgraph(orient_ring_forward(g), clean, ideal));
    for (const auto& run : runs)
        for (Config x = 0; x < 16; ++x)
            CHECK(oracle_correlator(run, g, x) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("bipartite protocols match their closed forms per configuration") {
    const auto purif = PurificationModel::fixed_point(0.03, 0.05, 0.1, 8);
    for (SupportRule rule : {SupportRule::union_or, SupportRule::exact_xor}) {
        const int rule_id = int(rule);
        CAPTURE(rule_id);
        for (const Graph& g : {ring(4), ring(5), erdos_renyi(5, 2.0, 21)}) {
            for (const EdgeOrder& order :
                 {canonical_order(g), shuffled_order(g, 5)}) {
                const auto ra = run_bipartite_a(g, order, kNoise, purif, rule);
                GeneralCorrelator ca(Protocol::bipartite_a, g, order, kNoise,
                                     purif, rule);
                CHECK(worst_diff(ra, ca, g) < 1e-12);

                const auto rb = run_bipartite_b(g, order, kNoise, purif, rule);
                GeneralCorrelator cb(Protocol::bipartite_b, g, order, kNoise,
                                     purif, rule);
                CHECK(worst_diff(rb, cb, g) < 1e-12);
            }
        }
    }
}

TEST_CASE("subgraph protocol matches its closed form per configuration") {
    const auto purif = PurificationModel::fixed_point(0.03, 0.05, 0.1, 8);
    for (SupportRule rule : {SupportRule::union_or, SupportRule::exact_xor}) {
        const int rule_id = int(rule);
        CAPTURE(rule_id);
        const Graph r4 = ring(4);
        for (const OrientedGraph& og :
             {orient_ring_forward(r4), orient_ring_alternating(r4)}) {
            const auto run = run_subgraph(og, kNoise, purif, rule);
            GeneralCorrelator c(og, kNoise, purif, rule);
            CHECK(worst_diff(run, c, r4) < 1e-12);
        }
        const Graph r5 = ring(5);
        const auto og5 = orient_ring_forward(r5);
        CHECK(worst_diff(run_subgraph(og5, kNoise, purif, rule),
                         GeneralCorrelator(og5, kNoise, purif, rule), r5) < 1e-12);
        const Graph er = erdos_renyi(5, 2.0, 33);
        const auto oge = orient_random(er, 7);
        CHECK(worst_diff(run_subgraph(oge, kNoise, purif, rule),
                         GeneralCorrelator(oge, kNoise, purif, rule), er) < 1e-12);
    }
}

TEST_CASE("oracle fidelity averages the correlators") {
    const Graph g = ring(4);
    const auto purif = PurificationModel::first_order(0.02);
    const auto run = run_bipartite_b(g, canonical_order(g), kNoise, purif);
    double sum = 0.0;
    for (Config x = 0; x < 16; ++x) sum += oracle_correlator(run, g, x);
    CHECK(oracle_fidelity(run, g) == doctest::Approx(sum / 16).epsilon(1e-14));
}

TEST_CASE("support rules disagree once measurements recombine generators") {
    const auto purif = PurificationModel::ideal();
    // in-degree <= 1 everywhere: each fold touches one connector, nothing can
    // cancel, and the folded support equals the union of original supports
    const Graph rg = ring(4);
    const auto ru = run_subgraph(orient_ring_forward(rg), kNoise, purif,
                                 SupportRule::union_or);
    const auto re = run_subgraph(orient_ring_forward(rg), kNoise, purif,
                                 SupportRule::exact_xor);
    CHECK(oracle_fidelity(ru, rg) ==
          doctest::Approx(oracle_fidelity(re, rg)).epsilon(1e-13));

    // a hub with in-degree 3 recombines generators on the same home qubit;
    // Z factors cancel, the folded support shrinks, and the union rule damps
    // strictly more
    Graph star(4);
    for (int v = 1; v < 4; ++v) star.add_edge(0, v);
    OrientedGraph inward{star, {{}, {0}, {0}, {0}}, {{1, 2, 3}, {}, {}, {}}};
    const auto su = run_subgraph(inward, kNoise, purif, SupportRule::union_or);
    const auto se = run_subgraph(inward, kNoise, purif, SupportRule::exact_xor);
    CHECK(oracle_fidelity(su, star) < oracle_fidelity(se, star) - 1e-4);
}
