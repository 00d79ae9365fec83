#include "gsnet/statmech.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "gsnet/rng.hpp"

namespace gsnet {

namespace {

inline int parity(std::uint32_t v) { return std::popcount(v) & 1; }
inline std::uint32_t bit(int u) { return std::uint32_t(1) << u; }

}  // namespace

int resolve_threads(int threads) {
    if (threads > 0) return threads;
    if (const char* env = std::getenv("GSNET_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? int(hc) : 1;
}

// --- exact enumeration ------------------------------------------------------

double fidelity_exact(const GeneralCorrelator& corr, int threads) {
    const int n = corr.num_vertices();
    if (n > 28) throw std::invalid_argument("exact enumeration limited to 28 vertices");
    const std::uint64_t total = std::uint64_t(1) << n;
    const double sum =
        detail::chunked_sum(total, threads, [&](std::uint64_t i) { return corr(Config(i)); });
    return std::ldexp(sum, -n);
}

double fidelity_exact(const RingFactor& factor, int n, int threads) {
    if (n > 28) throw std::invalid_argument("exact enumeration limited to 28 sites");
    if (n < 3) throw std::invalid_argument("ring needs n >= 3");
    if (factor.variant == RingVariant::s2 && n % 2)
        throw std::invalid_argument("s2 needs an even ring");
    const int w = factor.width(), step = factor.step(), off = factor.anchor_offset();
    std::vector<double> tab(std::size_t(1) << w);
    for (unsigned b = 0; b < tab.size(); ++b) tab[b] = factor(b);
    // site index of window position k for every window
    std::vector<int> sites;
    for (int u = 0; u < n; u += step)
        for (int k = 0; k < w; ++k) sites.push_back(((u + off + k) % n + n) % n);
    const std::size_t nwin = sites.size() / std::size_t(w);
    const std::uint64_t total = std::uint64_t(1) << n;
    const double sum = detail::chunked_sum(total, threads, [&](std::uint64_t x) {
        double val = 1.0;
        const int* p = sites.data();
        for (std::size_t win = 0; win < nwin; ++win, p += w) {
            unsigned bits = 0;
            for (int k = 0; k < w; ++k) bits |= unsigned((x >> p[k]) & 1) << k;
            val *= tab[bits];
        }
        return val;
    });
    return std::ldexp(sum, -n);
}

// --- transfer matrix --------------------------------------------------------

std::vector<std::vector<double>> transfer_matrix(const RingFactor& factor) {
    const int w = factor.width(), s = factor.step(), m = w - s;
    const int dim = 1 << m, overlap = m - s;
    std::vector<std::vector<double>> mat(dim, std::vector<double>(dim, 0.0));
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) {
            if (overlap > 0 && (r >> s) != (c & ((1 << overlap) - 1))) continue;
            const unsigned bits = unsigned(r) | ((unsigned(c) >> overlap) << m);
            mat[r][c] = factor(bits);
        }
    return mat;
}

namespace {

using Mat = std::vector<std::vector<double>>;

Mat matmul(const Mat& a, const Mat& b) {
    const std::size_t d = a.size();
    Mat r(d, std::vector<double>(d, 0.0));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k) {
            const double aik = a[i][k];
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < d; ++j) r[i][j] += aik * b[k][j];
        }
    return r;
}

// Factors the largest entry's binary exponent out of the matrix.  Powers of
// two keep the scaling lossless, so integer matrices (e.g. the noiseless
// all-ones factor) stay exact through the whole power chain.
void renormalize(Mat& m, std::int64_t& scale_exp) {
    double mx = 0.0;
    for (const auto& row : m)
        for (double v : row) mx = std::max(mx, std::abs(v));
    if (mx <= 0.0) return;
    int e = 0;
    std::frexp(mx, &e);
    if (e == 0) return;
    for (auto& row : m)
        for (double& v : row) v = std::ldexp(v, -e);
    scale_exp += e;
}

// base^k with per-step renormalization; returns the scaled matrix and the
// base-2 exponent of the factored-out scale.
std::pair<Mat, std::int64_t> matpow(Mat base, std::uint64_t k) {
    const std::size_t d = base.size();
    Mat result(d, std::vector<double>(d, 0.0));
    for (std::size_t i = 0; i < d; ++i) result[i][i] = 1.0;
    std::int64_t rexp = 0, bexp = 0;
    while (k) {
        if (k & 1) {
            result = matmul(result, base);
            rexp += bexp;
            renormalize(result, rexp);
        }
        k >>= 1;
        if (k) {
            base = matmul(base, base);
            bexp *= 2;
            renormalize(base, bexp);
        }
    }
    return {std::move(result), rexp};
}

std::pair<double, std::int64_t> transfer_trace(const RingFactor& factor, int n) {
    if (n < 3) throw std::invalid_argument("ring needs n >= 3");
    const int s = factor.step();
    if (n % s) throw std::invalid_argument("ring size must be a multiple of the step");
    auto [m, scale_exp] = matpow(transfer_matrix(factor), std::uint64_t(n / s));
    double tr = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) tr += m[i][i];
    return {tr, scale_exp};
}

}  // namespace

double transfer_log_fidelity(const RingFactor& factor, int n) {
    auto [tr, scale_exp] = transfer_trace(factor, n);
    if (tr <= 0.0) return std::numeric_limits<double>::quiet_NaN();
    // log F = log(frac) + (binary exponents - n) * ln 2; a dyadic trace (the
    // noiseless case) leaves frac = 1/2 exactly and the result is exact
    int te = 0;
    const double frac = std::frexp(tr, &te);
    return std::log(frac) + double(scale_exp + te - n) * M_LN2;
}

double transfer_fidelity(const RingFactor& factor, int n) {
    auto [tr, scale_exp] = transfer_trace(factor, n);
    const std::int64_t sh = scale_exp - n;
    if (sh < std::numeric_limits<int>::min() || sh > std::numeric_limits<int>::max())
        return sh < 0 ? 0.0 : std::numeric_limits<double>::infinity();
    return std::ldexp(tr, int(sh));
}

// --- Monte-Carlo sampling ---------------------------------------------------

McResult mc_fidelity(const GeneralCorrelator& corr, std::uint64_t samples,
                     std::uint64_t seed, int threads) {
    if (samples < 2) throw std::invalid_argument("need at least 2 samples");
    const int n = corr.num_vertices();
    const bool mask_path = corr.has_mask_path();
    struct Partial {
        double s = 0.0, s2 = 0.0;
        std::uint64_t nonpos = 0;
    };
    const std::uint64_t nchunks = (samples + detail::kChunkSize - 1) / detail::kChunkSize;
    std::vector<Partial> partial(nchunks);
    auto work = [&](std::uint64_t c) {
        const std::uint64_t lo = c * detail::kChunkSize;
        const std::uint64_t hi = std::min(samples, lo + detail::kChunkSize);
        Partial acc;
        std::vector<std::uint8_t> buf(mask_path ? 0 : n);
        for (std::uint64_t i = lo; i < hi; ++i) {
            auto rng = make_rng(substream_seed(seed, i));
            double v;
            if (mask_path) {
                const Config x = Config(rng() & ((std::uint64_t(1) << n) - 1));
                v = corr(x);
            } else {
                for (int u = 0; u < n; ++u) buf[u] = std::uint8_t(rng() & 1);
                v = corr(buf);
            }
            acc.s += v;
            acc.s2 += v * v;
            if (v <= 0.0) ++acc.nonpos;
        }
        partial[c] = acc;
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
    double s = 0.0, s2 = 0.0;
    std::uint64_t nonpos = 0;
    for (const auto& p : partial) {
        s += p.s;
        s2 += p.s2;
        nonpos += p.nonpos;
    }
    McResult r;
    r.samples = samples;
    r.nonpositive = nonpos;
    r.mean = s / double(samples);
    const double var = std::max(0.0, s2 - double(samples) * r.mean * r.mean) /
                       double(samples - 1);
    r.std_error = std::sqrt(var / double(samples));
    return r;
}

// --- leading-order decay rate -----------------------------------------------

namespace {

// first-order exponents of the purified-state correlators
inline long ghz_h(int j, unsigned a, int w) { return a ? j + 1 : (w + 1) / 2; }

long ring_h(RingVariant v, unsigned bits) {
    auto b = [&](int k) -> unsigned { return (bits >> k) & 1u; };
    switch (v) {
        case RingVariant::s1: {
            const unsigned x0 = b(0), x1 = b(1), x2 = b(2);
            return long((x0 | x1 | x2) != 0) + long(x0 ^ x1) + ghz_h(1, x0, int(x0 ^ x1));
        }
        case RingVariant::s2: {
            const unsigned xm = b(0), x0 = b(1), x1 = b(2), x2 = b(3);
            return long((x0 | x1 | x2) != 0) + long(x1 ^ x2) +
                   ghz_h(2, x0, int(x0 ^ xm) + int(x1));
        }
        case RingVariant::bipartite_a: {
            const unsigned xm = b(0), x0 = b(1), x1 = b(2);
            return 2 * long(x0) + long(xm ^ x1) + 2 * long((xm | x0 | x1) != 0) +
                   ghz_h(1, xm ^ x1, int(x0));
        }
        case RingVariant::bipartite_b: {
            const unsigned xm = b(0), x0 = b(1), x1 = b(2), x2 = b(3);
            return long(x0) + long((xm | x0 | x1 | x2) != 0) + ghz_h(1, x0, int(xm ^ x1));
        }
    }
    return 0;
}

long h_bipartite(Protocol proto, int n, const std::vector<std::uint32_t>& nbr,
                 const std::vector<std::pair<int, int>>& edges, Config x) {
    long h = 0;
    for (int u = 0; u < n; ++u) {
        const unsigned xu = (x >> u) & 1;
        const std::uint32_t nb = x & nbr[u];
        const unsigned a = unsigned(parity(nb));
        if (proto == Protocol::bipartite_a) {
            h += 2 * long(xu) + long(a);
            h += ghz_h(1, a, int(xu));
            h += long((xu | unsigned(nb != 0)) != 0);
        } else {
            h += long(xu);
            h += ghz_h(1, xu, int(a));
        }
    }
    std::vector<std::uint32_t> tilde(n, 0);
    for (const auto& [u, v] : edges) {
        const unsigned xu = (x >> u) & 1, xv = (x >> v) & 1;
        unsigned touched;
        if (proto == Protocol::bipartite_a) {
            touched = xu | xv | unsigned((x & tilde[u]) != 0) | unsigned((x & tilde[v]) != 0);
        } else {
            touched = xu | xv | unsigned(parity(x & nbr[u])) | unsigned(parity(x & nbr[v])) |
                      unsigned((x & tilde[u]) != 0) | unsigned((x & tilde[v]) != 0);
        }
        h += long(touched != 0);
        tilde[u] |= bit(v);
        tilde[v] |= bit(u);
    }
    return h;
}

long h_subgraph(const OrientedGraph& og, LeafExponentRule leaf_rule,
                const std::vector<std::uint32_t>& out_mask, Config x) {
    const int n = og.g.n;
    long h = 0;
    for (int u = 0; u < n; ++u) {
        const unsigned xu = (x >> u) & 1;
        const int j = int(og.out[u].size()), i = int(og.in[u].size());
        if (j > 0) {
            int w = 0;
            for (int vtx : og.out[u]) {
                const unsigned xv = (x >> vtx) & 1;
                const bool adopts = og.out[vtx].empty() && !og.in[vtx].empty() &&
                                    og.in[vtx][0] == u;
                w += int((leaf_rule == LeafExponentRule::adopted && adopts) ? xv : (xu ^ xv));
            }
            h += ghz_h(j, xu, w);
        } else if (i == 0) {
            h += long(xu);
            continue;
        }
        if (i == 0) continue;
        const auto& L = og.in[u];
        const int start = (j > 0) ? 0 : 1;
        const unsigned out_any = unsigned((x & out_mask[u]) != 0);
        unsigned prefix_any = (j == 0) ? unsigned((x >> L[0]) & 1) : 0;
        for (int k = start; k < i; ++k) {
            const unsigned xv = (x >> L[k]) & 1;
            h += long(xu ^ xv);
            prefix_any |= xv;
            h += long((xu | out_any | prefix_any) != 0);
        }
    }
    return h;
}

template <class H>
Rational mean_h(int n, H&& h) {
    if (n > 24) throw std::invalid_argument("first-order enumeration limited to 24 vertices");
    long long sum = 0;
    const std::uint64_t total = std::uint64_t(1) << n;
    for (std::uint64_t x = 0; x < total; ++x) sum += h(Config(x));
    return Rational(BigInt(sum), BigInt(1) << n) / n;
}

}  // namespace

Rational first_order_decay(RingVariant variant, int ring_n) {
    if (ring_n < 6 || ring_n > 24)
        throw std::invalid_argument("ring size out of range for exact enumeration");
    if (variant == RingVariant::s2 && ring_n % 2)
        throw std::invalid_argument("s2 needs an even ring");
    const RingFactor shape{variant, {}, PurificationModel::ideal()};
    const int w = shape.width(), step = shape.step(), off = shape.anchor_offset();
    const int n = ring_n;
    return mean_h(n, [&](Config x) {
        long h = 0;
        for (int u = 0; u < n; u += step) {
            unsigned bits = 0;
            for (int k = 0; k < w; ++k) {
                const int site = ((u + off + k) % n + n) % n;
                bits |= unsigned((x >> site) & 1) << k;
            }
            h += ring_h(variant, bits);
        }
        return h;
    });
}

Rational first_order_decay(Protocol protocol, const Graph& g, const EdgeOrder& order) {
    if (protocol == Protocol::subgraph)
        throw std::invalid_argument("subgraph protocol needs an oriented graph");
    std::vector<std::uint32_t> nbr(g.n, 0);
    for (int u = 0; u < g.n; ++u)
        for (int v : g.adj[u]) nbr[u] |= bit(v);
    return mean_h(g.n, [&](Config x) { return h_bipartite(protocol, g.n, nbr, order.edges, x); });
}

Rational first_order_decay(const OrientedGraph& og, LeafExponentRule leaf_rule) {
    std::vector<std::uint32_t> out_mask(og.g.n, 0);
    for (int u = 0; u < og.g.n; ++u)
        for (int v : og.out[u]) out_mask[u] |= bit(v);
    return mean_h(og.g.n, [&](Config x) { return h_subgraph(og, leaf_rule, out_mask, x); });
}

// + 0.0 turns the -0 produced at F = 1 into a plain zero
double log_decay(double fidelity, int n) { return -std::log(fidelity) / n + 0.0; }

double decay_rate(double fidelity, int n, double p) {
    return -std::log(fidelity) / (n * p);
}

// --- mean field -------------------------------------------------------------

namespace {

struct MfSpec {
    // per-node constant term A(s)
    double (*A)(double);
    // (weight, B(s)) per site class; weights sum to 1
    std::vector<std::pair<double, double (*)(double)>> B;
};

double sq(double v) { return v * v; }
double cube(double v) { return v * v * v; }

MfSpec mf_spec(RingVariant variant, MeanFieldModel model) {
    const bool fo = model == MeanFieldModel::first_order;
    switch (variant) {
        case RingVariant::s1:
            if (fo)
                return {[](double s) { return s * s * (6 - 2 * s); },
                        {{1.0, [](double s) { return 8 - 12 * s + 3 * s * s; }}}};
            return {[](double s) { return s * s * (5 - 2 * s); },
                    {{1.0, [](double s) { return 5 - 10 * s + 3 * s * s; }}}};
        case RingVariant::s2:
            // one local term per pair of sites: the per-node constant is half
            // the per-term one, and even/odd sites form two B classes
            if (fo)
                return {[](double s) { return s * s * (4 - 2 * s); },
                        {{0.5,
                          [](double s) { return 2 * sq(1 - s) + (1 - 2 * s) + s * s - 2 * s + 3; }},
                         {0.5, [](double s) { return 3 * sq(1 - s) + (1 - 2 * s); }}}};
            return {[](double s) { return s * s * (5 - 2 * s) / 2; },
                    {{0.5, [](double s) { return 2 * sq(1 - s) + (1 - 2 * s); }},
                     {0.5, [](double s) { return sq(1 - s) + (1 - 2 * s); }}}};
        case RingVariant::bipartite_a:
            if (fo)
                return {[](double s) { return 14 * s * s - 8 * cube(s); },
                        {{1.0, [](double s) { return 15 - 28 * s + 12 * s * s; }}}};
            return {[](double s) { return 8 * s * s - 4 * cube(s); },
                    {{1.0, [](double s) { return 4 - 4 * s + 6 * sq(1 - s); }}}};
        case RingVariant::bipartite_b:
            if (fo)
                return {[](double s) {
                            return 1 - sq(sq(1 - s)) - 4 * s * cube(1 - s) + 4 * s * s -
                                   4 * cube(s);
                        },
                        {{1.0, [](double s) { return 5 - 8 * s + 6 * s * s + 4 * cube(1 - s); }}}};
            return {[](double s) { return 1 - sq(sq(1 - s)) - 4 * s * cube(1 - s); },
                    {{1.0, [](double s) { return 1 + 4 * cube(1 - s); }}}};
    }
    throw std::invalid_argument("unknown ring variant");
}

double log_cosh(double y) {
    y = std::abs(y);
    return y + std::log1p(std::exp(-2 * y)) - M_LN2;
}

}  // namespace

MeanFieldResult mean_field_decay(RingVariant variant, MeanFieldModel model, double p) {
    const MfSpec spec = mf_spec(variant, model);
    MeanFieldResult r;
    if (p <= 0.0) {
        r.s = 0.5;
        r.f = spec.A(0.5);
        for (const auto& [wgt, B] : spec.B) r.f += wgt * B(0.5) / 2;
        return r;
    }
    const double beta = -std::log1p(-p);
    double s = 0.5;
    const int max_iter = 100000;
    const double tol = 1e-12;
    bool converged = false;
    int iter = 0;
    for (; iter < max_iter; ++iter) {
        double target = 0.5;
        for (const auto& [wgt, B] : spec.B) target -= 0.5 * wgt * std::tanh(beta * B(s) / 2);
        const double snew = 0.5 * s + 0.5 * target;
        if (std::abs(snew - s) < tol) {
            s = snew;
            converged = true;
            break;
        }
        s = snew;
    }
    r.s = s;
    r.iterations = iter;
    r.converged = converged;
    r.f = spec.A(s);
    for (const auto& [wgt, B] : spec.B) {
        const double b = B(s);
        r.f += wgt * (b / 2 - log_cosh(beta * b / 2) / beta);
    }
    return r;
}

}  // namespace gsnet
