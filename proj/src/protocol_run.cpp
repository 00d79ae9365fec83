#include "gsnet/protocol_run.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace gsnet {

namespace {

// Purified Bell pair appended as a two-generator group; bit 0 selects the
// center generator, bit 1 the leaf generator.  In graph form the generators
// are X_c Z_l and X_l Z_c.  A single X-measurement teleports the connector
// with a residual Hadamard on the kept half, so where only one measurement
// happens per node the pair is used Hadamard-rotated on the leaf
// (generators X_c X_l and Z_c Z_l); the coefficients are unchanged.
void add_bell(MixtureState& st, const PurificationModel& purif, int center,
              int leaf, bool rotate_leaf) {
    std::vector<PauliString> gens;
    if (rotate_leaf)
        gens = {PauliString::pauli_x(center) * PauliString::pauli_x(leaf),
                PauliString::pauli_z(leaf) * PauliString::pauli_z(center)};
    else
        gens = {PauliString::pauli_x(center) * PauliString::pauli_z(leaf),
                PauliString::pauli_x(leaf) * PauliString::pauli_z(center)};
    std::vector<double> coeff(4);
    for (int y = 0; y < 4; ++y) coeff[y] = purif.bell(y & 1, (y >> 1) & 1);
    st.add_group(std::move(gens), std::move(coeff));
}

void add_star(MixtureState& st, const PurificationModel& purif, int center,
              const std::vector<int>& leaves) {
    const int j = int(leaves.size());
    std::vector<PauliString> gens;
    PauliString kc = PauliString::pauli_x(center);
    for (int q : leaves) kc = kc * PauliString::pauli_z(q);
    gens.push_back(kc);
    for (int q : leaves)
        gens.push_back(PauliString::pauli_x(q) * PauliString::pauli_z(center));
    std::vector<double> coeff(std::size_t(1) << (j + 1));
    for (std::size_t y = 0; y < coeff.size(); ++y)
        coeff[y] = purif.ghz(j, int(y & 1), std::popcount(y >> 1));
    st.add_group(std::move(gens), std::move(coeff));
}

std::uint64_t pair_mask(int a, int b) {
    return (std::uint64_t(1) << a) | (std::uint64_t(1) << b);
}

}  // namespace

OracleRun run_bipartite_a(const Graph& g, const EdgeOrder& order,
                          const NoiseParams& noise,
                          const PurificationModel& purif, SupportRule rule) {
    const int n = g.n;
    MixtureState st(3 * n);
    // qubits: u = local copy, n+u = connector half, 2n+u = kept half
    for (int u = 0; u < n; ++u) {
        st.add_plus(u);
        st.depolarize(std::uint64_t(1) << u, noise.p1, rule);
        add_bell(st, purif, n + u, 2 * n + u, false);
    }
    for (const auto& [u, v] : order.edges) {
        st.apply_cphase(u, v);
        st.depolarize(pair_mask(u, v), noise.p2, rule);
    }
    // all gates first, then the measurements: the operations commute, and
    // the generator-union bookkeeping then sees every gate in the
    // pre-measurement generator basis
    for (int u = 0; u < n; ++u) {
        st.apply_cphase(u, n + u);
        st.depolarize(pair_mask(u, n + u), noise.p2, rule);
    }
    for (int u = 0; u < n; ++u) {
        st.measure(Basis::x, u, noise.p1);
        st.measure(Basis::x, n + u, noise.p1);
    }
    OracleRun run{std::move(st), {}};
    run.node_qubit.resize(n);
    for (int u = 0; u < n; ++u) run.node_qubit[u] = 2 * n + u;
    return run;
}

OracleRun run_bipartite_b(const Graph& g, const EdgeOrder& order,
                          const NoiseParams& noise,
                          const PurificationModel& purif, SupportRule rule) {
    const int n = g.n;
    MixtureState st(2 * n);
    // qubits: u = connector half (Bell center), n+u = kept half
    for (int u = 0; u < n; ++u) add_bell(st, purif, u, n + u, true);
    for (const auto& [u, v] : order.edges) {
        st.apply_cphase(u, v);
        st.depolarize(pair_mask(u, v), noise.p2, rule);
    }
    for (int u = 0; u < n; ++u) st.measure(Basis::x, u, noise.p1);
    OracleRun run{std::move(st), {}};
    run.node_qubit.resize(n);
    for (int u = 0; u < n; ++u) run.node_qubit[u] = n + u;
    return run;
}

OracleRun run_subgraph(const OrientedGraph& og, const NoiseParams& noise,
                       const PurificationModel& purif, SupportRule rule) {
    const Graph& g = og.g;
    const int n = g.n;
    const int m = g.edge_count();
    MixtureState st(n + m);
    // qubits: u = vertex slot (star center / isolated qubit), n + e = leaf
    // for directed edge e
    std::vector<std::vector<int>> leaf_of(n);  // leaf_of[u][k]: leaf u->out[u][k]
    int next_leaf = n;
    for (int u = 0; u < n; ++u) {
        const int j = og.out_degree(u);
        if (j > 0) {
            std::vector<int> leaves;
            for (int k = 0; k < j; ++k) leaves.push_back(next_leaf++);
            leaf_of[u] = leaves;
            add_star(st, purif, u, leaves);
        } else if (og.in_degree(u) == 0) {
            st.add_plus(u);
            st.depolarize(std::uint64_t(1) << u, noise.p1, rule);
        }
    }
    auto leaf_qubit = [&](int src, int dst) {
        const auto& outs = og.out[src];
        for (std::size_t k = 0; k < outs.size(); ++k)
            if (outs[k] == dst) return leaf_of[src][k];
        throw std::logic_error("missing directed edge");
    };
    std::vector<int> home(n);
    for (int u = 0; u < n; ++u) {
        if (og.out_degree(u) > 0)
            home[u] = u;
        else if (og.in_degree(u) > 0)
            home[u] = leaf_qubit(og.in[u][0], u);
        else
            home[u] = u;
    }
    for (int u = 0; u < n; ++u) {
        const int start = og.out_degree(u) > 0 ? 0 : 1;
        for (int k = start; k < og.in_degree(u); ++k) {
            const int w = og.in[u][k];
            const int q = leaf_qubit(w, u);
            st.apply_cphase(home[u], q);
            st.depolarize(pair_mask(home[u], q), noise.p2, rule);
            st.measure(Basis::y, q, noise.p1);
            st.apply_phase_correction(home[u]);
            st.apply_phase_correction(home[w]);
        }
    }
    OracleRun run{std::move(st), std::move(home)};
    return run;
}

PauliString stabilizer_product(const Graph& g,
                               const std::vector<int>& node_qubit,
                               std::uint64_t x) {
    PauliString p;
    for (int u = 0; u < g.n; ++u) {
        if (!((x >> u) & 1)) continue;
        PauliString k = PauliString::pauli_x(node_qubit[u]);
        for (int v : g.adj[u]) k = k * PauliString::pauli_z(node_qubit[v]);
        p = p * k;
    }
    return p;
}

double oracle_correlator(const OracleRun& run, const Graph& g,
                         std::uint64_t x) {
    return run.state.expectation(stabilizer_product(g, run.node_qubit, x));
}

double oracle_fidelity(const OracleRun& run, const Graph& g) {
    double sum = 0.0;
    for (std::uint64_t x = 0; x < (std::uint64_t(1) << g.n); ++x)
        sum += oracle_correlator(run, g, x);
    return std::ldexp(sum, -g.n);
}

}  // namespace gsnet
