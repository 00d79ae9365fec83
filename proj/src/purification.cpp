#include "gsnet/purification.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace gsnet {

namespace {

// Pascal triangle row, double precision (j stays small).
std::vector<double> binom_row(int n) {
    std::vector<double> row(n + 1, 1.0);
    for (int k = 1; k <= n; ++k) row[k] = row[k - 1] * (n - k + 1) / k;
    return row;
}

int theta(int a, int b, int c = 0, int d = 0) { return (a | b | c | d) ? 1 : 0; }

CorrelatorTable normalized(CorrelatorTable t) {
    const double norm = t.c[0][0];
    for (auto& row : t.c)
        for (auto& v : row) v /= norm;
    if (t.has_full()) {
        const double fnorm = t.full[0];
        for (auto& v : t.full) v /= fnorm;
    }
    return t;
}

}  // namespace

CorrelatorTable initial_distributed_ghz(int j, double pc, bool make_full,
                                        bool noisy_preparation, double p2) {
    if (j < 0) throw std::invalid_argument("initial_distributed_ghz: j < 0");
    CorrelatorTable t;
    t.j = j;
    t.c[0].resize(j + 1);
    t.c[1].resize(j + 1);
    const auto binom = binom_row(j);
    for (int w = 0; w <= j; ++w) {
        double prep0 = 1.0, prep1 = 1.0;
        if (noisy_preparation) {
            // Gate factors of the j star-building gates, averaged over the
            // order in which leaves attach.  For a = 0 only gates at or after
            // the first selected leaf contribute; the first selected leaf
            // sits at position z+1 with probability C(j-z-1,w-1)/C(j,w).
            prep1 = std::pow(1.0 - p2, j);
            if (w >= 1) {
                prep0 = 0.0;
                for (int z = 0; z + w <= j; ++z) {
                    double cnt = 1.0;  // C(j-z-1, w-1)
                    for (int i = 0; i < w - 1; ++i) cnt *= double(j - z - 1 - i) / (i + 1);
                    prep0 += cnt / binom[w] * std::pow(1.0 - p2, j - z);
                }
            }
        }
        t.c[0][w] = std::pow(1.0 - pc, w) * prep0;
        t.c[1][w] = std::pow(1.0 - pc, j) * prep1;
    }
    const double renorm = t.c[0][0];
    for (auto& row : t.c)
        for (auto& v : row) v /= renorm;
    if (make_full) {
        t.full.resize(std::size_t(1) << (j + 1));
        for (std::size_t x = 0; x < t.full.size(); ++x)
            t.full[x] = t.c[x & 1][std::popcount(x >> 1)];
    }
    return t;
}

CorrelatorTable p1_step(const CorrelatorTable& t, double p1, double p2) {
    const int j = t.j;
    CorrelatorTable out;
    out.j = j;
    out.c[0].assign(j + 1, 0.0);
    out.c[1].assign(j + 1, 0.0);
    const double q1 = 1.0 - p1, q2 = 1.0 - p2;
    for (int a = 0; a <= 1; ++a)
        for (int w = 0; w <= j; ++w) {
            double s = 0.0;
            for (int a2 = 0; a2 <= 1; ++a2) {
                const int e2 = theta(a, a2, w & 1) + w + (j - w) * theta(a, a2);
                s += t.c[a ^ a2][w] * t.c[a2][w] * std::pow(q2, e2) *
                     std::pow(q1, a2 * (j + 1));
            }
            out.c[a][w] = 0.5 * s;
        }
    if (t.has_full()) {
        out.full.assign(t.full.size(), 0.0);
        for (std::size_t x = 0; x < t.full.size(); ++x) {
            const int a = int(x & 1);
            const std::size_t b = x >> 1;
            const int w = std::popcount(b);
            double s = 0.0;
            for (int a2 = 0; a2 <= 1; ++a2) {
                const int e2 = theta(a, a2, std::popcount(b) & 1) + w + (j - w) * theta(a, a2);
                s += t.full[(std::size_t(a ^ a2)) | (b << 1)] *
                     t.full[std::size_t(a2) | (b << 1)] * std::pow(q2, e2) *
                     std::pow(q1, a2 * (j + 1));
            }
            out.full[x] = 0.5 * s;
        }
    }
    return normalized(std::move(out));
}

CorrelatorTable p2_step(const CorrelatorTable& t, double p1, double p2) {
    const int j = t.j;
    CorrelatorTable out;
    out.j = j;
    out.c[0].assign(j + 1, 0.0);
    out.c[1].assign(j + 1, 0.0);
    const double q1 = 1.0 - p1, q2 = 1.0 - p2;
    for (int a = 0; a <= 1; ++a)
        for (int w = 0; w <= j; ++w) {
            const auto cw = binom_row(w);
            const auto cjw = binom_row(j - w);
            double s = 0.0;
            for (int m = 0; m <= j; ++m) {
                for (int o = std::max(0, w + m - j); o <= std::min(w, m); ++o) {
                    const int e2 = theta(a, m & 1, w & 1) + (a ? j : w + m - o);
                    s += cw[o] * cjw[m - o] * t.c[a][w + m - 2 * o] * t.c[a][m] *
                         std::pow(q2, e2) * std::pow(q1, (m & 1) + m);
                }
            }
            out.c[a][w] = std::ldexp(s, -j);
        }
    if (t.has_full()) {
        out.full.assign(t.full.size(), 0.0);
        const std::size_t leaves = t.full.size() >> 1;
        for (std::size_t x = 0; x < t.full.size(); ++x) {
            const int a = int(x & 1);
            const std::size_t b = x >> 1;
            double s = 0.0;
            for (std::size_t b2 = 0; b2 < leaves; ++b2) {
                const int m = std::popcount(b2);
                const int uni = std::popcount(b | b2);
                const int e2 = theta(a, m & 1, std::popcount(b) & 1) + (a ? j : uni);
                s += t.full[std::size_t(a) | ((b ^ b2) << 1)] *
                     t.full[std::size_t(a) | (b2 << 1)] * std::pow(q2, e2) *
                     std::pow(q1, (m & 1) + m);
            }
            out.full[x] = std::ldexp(s, -j);
        }
    }
    return normalized(std::move(out));
}

CorrelatorTable first_order_fixed_point(int j, double p) {
    CorrelatorTable t;
    t.j = j;
    t.c[0].resize(j + 1);
    t.c[1].resize(j + 1);
    for (int w = 0; w <= j; ++w) {
        t.c[0][w] = 1.0 - p * ((w + 1) / 2);
        t.c[1][w] = 1.0 - p * (j + 1);
    }
    return t;
}

CorrelatorTable bell_first_order(double p) { return first_order_fixed_point(1, p); }

double ghz_fidelity(const CorrelatorTable& t) {
    const auto binom = binom_row(t.j);
    double s = 0.0;
    for (int a = 0; a <= 1; ++a)
        for (int w = 0; w <= t.j; ++w) s += binom[w] * t.c[a][w];
    return std::ldexp(s, -(t.j + 1));
}

namespace {

bool table_sane(const CorrelatorTable& t) {
    for (const auto& row : t.c)
        for (double v : row)
            if (!std::isfinite(v) || std::abs(v) > 2.0) return false;
    return true;
}

double table_delta(const CorrelatorTable& a, const CorrelatorTable& b) {
    double d = 0.0;
    for (int s = 0; s <= 1; ++s)
        for (int w = 0; w <= a.j; ++w)
            d = std::max(d, std::abs(a.c[s][w] - b.c[s][w]));
    return d;
}

}  // namespace

PurifyResult purify_fixed_point(int j, double p1, double p2, double pc,
                                double tol, int max_rounds) {
    PurifyResult r;
    r.table = initial_distributed_ghz(j, pc);
    for (int round = 1; round <= max_rounds; ++round) {
        CorrelatorTable next = p2_step(p1_step(r.table, p1, p2), p1, p2);
        if (!table_sane(next)) {
            r.status = PurifyStatus::diverged;
            r.rounds = round;
            return r;
        }
        r.residual = table_delta(next, r.table);
        r.table = std::move(next);
        r.rounds = round;
        if (r.residual < tol) {
            r.status = PurifyStatus::converged;
            return r;
        }
    }
    r.status = PurifyStatus::max_iterations;
    return r;
}

double purification_threshold(int j, double pc, double tol) {
    // The iteration always settles somewhere; what disappears at the
    // threshold is the purifying branch.  Past it the map falls onto a dead
    // fixed point whose center-type correlators vanish (c[1][*] ~ 0), so the
    // branch is identified by the survival of c[1][0].
    auto ok = [&](double p) {
        const PurifyResult r = purify_fixed_point(j, p, p, pc);
        return r.status == PurifyStatus::converged && r.table.value(1, 0) > 0.5;
    };
    double lo = 0.0, hi = 0.3;
    if (ok(hi)) return hi;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (ok(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace gsnet
