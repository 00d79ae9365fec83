#pragma once

// Fidelity and decay-rate computation.  The correlator product over stabilizer
// elements maps onto a classical spin model: F = 2^-N sum_x <K_x> with
// <K_x> ~ exp(-beta H(x)) and beta = -log(1-p).  This header provides
//   * exact enumeration of the 2^N configurations (threaded, deterministic),
//   * transfer-matrix evaluation for the ring factorizations,
//   * Monte-Carlo sampling of configurations for large graphs,
//   * the exact leading-order decay rate f = lim_{p->0} -log(F)/(N p) as a
//     rational number, obtained by integer enumeration of the exponent H,
//   * the mean-field solution of the spin model.

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

#include "gsnet/correlators.hpp"
#include "gsnet/rational.hpp"

namespace gsnet {

// threads <= 0 resolves to the GSNET_THREADS environment variable, or to the
// hardware concurrency if unset.
int resolve_threads(int threads);

namespace detail {

inline constexpr std::uint64_t kChunkSize = 4096;

// Sum of term(i) for i in [0, total).  The sum is accumulated per fixed-size
// chunk and the chunk sums are combined in index order, so the result is
// bit-identical for any thread count.
template <class F>
double chunked_sum(std::uint64_t total, int threads, F&& term) {
    if (total == 0) return 0.0;
    const std::uint64_t nchunks = (total + kChunkSize - 1) / kChunkSize;
    std::vector<double> partial(nchunks, 0.0);
    auto work = [&](std::uint64_t c) {
        const std::uint64_t lo = c * kChunkSize;
        const std::uint64_t hi = std::min(total, lo + kChunkSize);
        double s = 0.0;
        for (std::uint64_t i = lo; i < hi; ++i) s += term(i);
        partial[c] = s;
    };
    const int nt = int(std::min<std::uint64_t>(std::uint64_t(resolve_threads(threads)), nchunks));
    if (nt <= 1) {
        for (std::uint64_t c = 0; c < nchunks; ++c) work(c);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(nt);
        for (int t = 0; t < nt; ++t)
            pool.emplace_back([&] {
                for (std::uint64_t c; (c = next.fetch_add(1)) < nchunks;) work(c);
            });
        for (auto& th : pool) th.join();
    }
    double s = 0.0;
    for (double v : partial) s += v;
    return s;
}

}  // namespace detail

// --- exact enumeration ------------------------------------------------------

// F = 2^-N sum over all configurations; graphs are limited to 28 vertices.
double fidelity_exact(const GeneralCorrelator& corr, int threads = 0);
double fidelity_exact(const RingFactor& factor, int n, int threads = 0);

// --- transfer matrix (ring factorizations) ----------------------------------

// Dense transfer matrix over the (width - step) sites shared by consecutive
// windows; bit k of a state is the site value at window position k.
std::vector<std::vector<double>> transfer_matrix(const RingFactor& factor);

// F = 2^-N tr(T^(N/step)), evaluated with renormalized matrix powers; the log
// version stays finite where F itself underflows.
double transfer_fidelity(const RingFactor& factor, int n);
double transfer_log_fidelity(const RingFactor& factor, int n);

// --- Monte-Carlo sampling ---------------------------------------------------

struct McResult {
    double mean = 0.0;       // sample mean of the correlator = fidelity estimate
    double std_error = 0.0;  // standard error of the mean
    std::uint64_t samples = 0;
    std::uint64_t nonpositive = 0;  // samples with correlator value <= 0
};

// Averages the correlator over `samples` uniform configurations.  Sample i is
// drawn from an independent substream of `seed`, so results are identical for
// any thread count.
McResult mc_fidelity(const GeneralCorrelator& corr, std::uint64_t samples,
                     std::uint64_t seed, int threads = 0);

// --- leading-order decay rate -----------------------------------------------

// Exact per-node decay rate at first order in p = p1 = p2: every noise factor
// is (1-p)^h or a first-order purified correlator 1 - p*h, so
// -log<K_x> = p*H(x) + O(p^2) with integer H, and f = E_x[H]/N exactly.
Rational first_order_decay(RingVariant variant, int ring_n = 12);
Rational first_order_decay(Protocol protocol, const Graph& g, const EdgeOrder& order);
Rational first_order_decay(const OrientedGraph& og,
                           LeafExponentRule leaf_rule = LeafExponentRule::adopted);

// beta_f = -log(F)/N and f = -log(F)/(N p)
double log_decay(double fidelity, int n);
double decay_rate(double fidelity, int n, double p);

// --- mean field -------------------------------------------------------------

enum class MeanFieldModel { ideal, first_order };

struct MeanFieldResult {
    double f = 0.0;         // per-node decay rate
    double s = 0.5;         // self-consistent mean occupation
    int iterations = 0;
    bool converged = true;
};

// Linearizes H around the mean occupation s and solves the self-consistency
// equation s = 1/2 - (1/2N) sum_u tanh(beta B_u(s)/2) by damped iteration;
// f = A(s) + (1/N) sum_u [B_u/2 - log(cosh(beta B_u/2))/beta].  At p = 0 this
// reduces to the exact first-order decay rate evaluated at s = 1/2.
MeanFieldResult mean_field_decay(RingVariant variant, MeanFieldModel model, double p);

}  // namespace gsnet
