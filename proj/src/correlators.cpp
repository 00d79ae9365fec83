#include "gsnet/correlators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace gsnet {

namespace {
inline int parity(std::uint32_t v) { return std::popcount(v) & 1; }
inline std::uint32_t bit(int u) { return std::uint32_t(1) << u; }
}  // namespace

PurificationModel PurificationModel::ideal() { return PurificationModel(); }

PurificationModel PurificationModel::first_order(double p) {
    PurificationModel m;
    m.kind_ = Kind::first_order;
    m.p_ = p;
    return m;
}

PurificationModel PurificationModel::tables(std::map<int, CorrelatorTable> t) {
    PurificationModel m;
    m.kind_ = Kind::tables;
    m.tables_ = std::make_shared<const std::map<int, CorrelatorTable>>(std::move(t));
    return m;
}

PurificationModel PurificationModel::fixed_point(double p1, double p2, double pc,
                                                 int max_j) {
    std::map<int, CorrelatorTable> t;
    for (int j = 1; j <= max_j; ++j) {
        PurifyResult r = purify_fixed_point(j, p1, p2, pc);
        if (r.status == PurifyStatus::diverged)
            throw std::runtime_error("purification diverges for j=" + std::to_string(j));
        t.emplace(j, std::move(r.table));
    }
    return tables(std::move(t));
}

double PurificationModel::ghz(int j, int a, int w) const {
    switch (kind_) {
        case Kind::ideal:
            return 1.0;
        case Kind::first_order:
            return a ? 1.0 - p_ * (j + 1) : 1.0 - p_ * ((w + 1) / 2);
        case Kind::tables:
            return tables_->at(j).value(a, w);
    }
    return 1.0;
}

GeneralCorrelator::GeneralCorrelator(Protocol protocol, const Graph& g,
                                     const EdgeOrder& order, const NoiseParams& noise,
                                     const PurificationModel& purif, SupportRule rule,
                                     OrderStats order_stats)
    : protocol_(protocol), n_(g.n), noise_(noise), purif_(purif), rule_(rule),
      order_stats_(order_stats) {
    if (protocol == Protocol::subgraph)
        throw std::invalid_argument("subgraph protocol needs an oriented graph");
    if (order_stats == OrderStats::annealed && rule != SupportRule::union_or)
        throw std::invalid_argument(
            "annealed order statistics require the union support rule");
    nbr_ = g.adj;
    if (n_ <= 31) {
        nbr_mask_.assign(n_, 0);
        for (int u = 0; u < n_; ++u)
            for (int v : g.adj[u]) nbr_mask_[u] |= bit(v);
    }
    edges_ = order.edges;
}

GeneralCorrelator::GeneralCorrelator(const OrientedGraph& og, const NoiseParams& noise,
                                     const PurificationModel& purif, SupportRule rule,
                                     LeafExponentRule leaf_rule)
    : protocol_(Protocol::subgraph), n_(og.g.n), noise_(noise), purif_(purif),
      rule_(rule), leaf_rule_(leaf_rule) {
    nbr_ = og.g.adj;
    out_list_ = og.out;
    out_deg_.assign(n_, 0);
    in_deg_.assign(n_, 0);
    in_list_ = og.in;
    adopts_from_.assign(n_, 0);
    for (int u = 0; u < n_; ++u) {
        out_deg_[u] = int(og.out[u].size());
        in_deg_[u] = int(og.in[u].size());
    }
    if (n_ <= 31) {
        nbr_mask_.assign(n_, 0);
        out_mask_.assign(n_, 0);
        for (int u = 0; u < n_; ++u) {
            for (int v : og.g.adj[u]) nbr_mask_[u] |= bit(v);
            for (int v : og.out[u]) out_mask_[u] |= bit(v);
        }
    }
    for (int u = 0; u < n_; ++u)
        adopts_from_[u] = (out_deg_[u] == 0 && in_deg_[u] > 0) ? 1 : 0;
}

double GeneralCorrelator::operator()(Config x) const {
    if (n_ > 31) throw std::invalid_argument("config mask limited to 31 vertices");
    switch (protocol_) {
        case Protocol::bipartite_a: return eval_bipartite_a(x);
        case Protocol::bipartite_b: return eval_bipartite_b(x);
        case Protocol::subgraph: return eval_subgraph(x);
    }
    return 0.0;
}

double GeneralCorrelator::operator()(const std::vector<std::uint8_t>& x) const {
    if (int(x.size()) != n_) throw std::invalid_argument("config size mismatch");
    switch (protocol_) {
        case Protocol::bipartite_a: return eval_bipartite_a(x.data());
        case Protocol::bipartite_b: return eval_bipartite_b(x.data());
        case Protocol::subgraph: return eval_subgraph(x.data());
    }
    return 0.0;
}

double GeneralCorrelator::eval_bipartite_a(Config x) const {
    const double q1 = 1.0 - noise_.p1, q2 = 1.0 - noise_.p2;
    double val = 1.0;
    for (int u = 0; u < n_; ++u) {
        const unsigned xu = (x >> u) & 1;
        const std::uint32_t nb = x & nbr_mask_[u];
        const unsigned a = parity(nb);
        val *= purif_.bell(a, xu);
        // preparation of u plus the two teleportation measurements; the
        // folded supports at measurement time are X^{x_u} and X^{a}.
        for (int e = 2 * int(xu) + int(a); e > 0; --e) val *= q1;
        // teleportation CPHASE
        const int th = rule_ == SupportRule::union_or ? theta(xu | nb) : theta(xu | a);
        if (th) val *= q2;
    }
    if (order_stats_ == OrderStats::annealed) {
        for (const auto& [u, v] : edges_) {
            if (((x >> u) & 1) | ((x >> v) & 1)) {
                val *= q2;
                continue;
            }
            const int z = std::popcount(x & (nbr_mask_[u] & ~bit(v))) +
                          std::popcount(x & (nbr_mask_[v] & ~bit(u)));
            val *= 1.0 - noise_.p2 * (1.0 - std::ldexp(1.0, -z));
        }
        return val;
    }
    std::uint32_t tilde[32] = {};
    for (const auto& [u, v] : edges_) {
        unsigned touched;
        if (rule_ == SupportRule::union_or) {
            touched = ((x >> u) & 1) | ((x >> v) & 1) | (x & tilde[u]) | (x & tilde[v]);
        } else {
            const unsigned fu = ((x >> u) & 1) | parity(x & (tilde[u] | bit(v)));
            const unsigned fv = ((x >> v) & 1) | parity(x & (tilde[v] | bit(u)));
            touched = fu | fv;
        }
        if (touched) val *= q2;
        tilde[u] |= bit(v);
        tilde[v] |= bit(u);
    }
    return val;
}

double GeneralCorrelator::eval_bipartite_b(Config x) const {
    const double q1 = 1.0 - noise_.p1, q2 = 1.0 - noise_.p2;
    double val = 1.0;
    for (int u = 0; u < n_; ++u) {
        const unsigned xu = (x >> u) & 1;
        val *= purif_.bell(xu, parity(x & nbr_mask_[u]));
        if (xu) val *= q1;  // teleportation X measurement
    }
    if (order_stats_ == OrderStats::annealed) {
        for (const auto& [u, v] : edges_) {
            const unsigned base = ((x >> u) & 1) | ((x >> v) & 1) |
                                  parity(x & nbr_mask_[u]) |
                                  parity(x & nbr_mask_[v]);
            if (base) {
                val *= q2;
                continue;
            }
            const int z = std::popcount(x & (nbr_mask_[u] & ~bit(v))) +
                          std::popcount(x & (nbr_mask_[v] & ~bit(u)));
            val *= 1.0 - noise_.p2 * (1.0 - std::ldexp(1.0, -z));
        }
        return val;
    }
    std::uint32_t tilde[32] = {};
    for (const auto& [u, v] : edges_) {
        const unsigned xu = (x >> u) & 1, xv = (x >> v) & 1;
        unsigned touched;
        if (rule_ == SupportRule::union_or) {
            touched = xu | xv | parity(x & nbr_mask_[u]) | parity(x & nbr_mask_[v]) |
                      unsigned((x & tilde[u]) != 0) | unsigned((x & tilde[v]) != 0);
        } else {
            const unsigned ru = xu | parity(x & (nbr_mask_[u] & ~(tilde[u] | bit(v))));
            const unsigned rv = xv | parity(x & (nbr_mask_[v] & ~(tilde[v] | bit(u))));
            touched = ru | rv;
        }
        if (touched) val *= q2;
        tilde[u] |= bit(v);
        tilde[v] |= bit(u);
    }
    return val;
}

double GeneralCorrelator::eval_subgraph(Config x) const {
    const double q1 = 1.0 - noise_.p1, q2 = 1.0 - noise_.p2;
    double val = 1.0;
    for (int u = 0; u < n_; ++u) {
        const unsigned xu = (x >> u) & 1;
        const int j = out_deg_[u], i = in_deg_[u];
        if (j > 0) {
            int w = 0;
            for (int vtx = 0, seen = 0; seen < j && vtx < n_; ++vtx) {
                if (!(out_mask_[u] & bit(vtx))) continue;
                ++seen;
                const unsigned xv = (x >> vtx) & 1;
                unsigned e;
                if (leaf_rule_ == LeafExponentRule::adopted && adopts_from_[vtx] &&
                    in_list_[vtx][0] == u)
                    e = xv;
                else
                    e = xu ^ xv;
                w += int(e);
            }
            val *= purif_.ghz(j, int(xu), w);
        } else if (i == 0) {
            if (xu) val *= q1;  // locally prepared qubit
            continue;
        }
        if (i == 0) continue;
        const auto& L = in_list_[u];
        const int start = (j > 0) ? 0 : 1;
        std::uint32_t prefix = (j == 0) ? bit(L[0]) : 0;
        // exact mode: xor of Z contributions already sitting on the home qubit
        unsigned home_fold = 0;
        if (rule_ == SupportRule::exact_xor) {
            if (j > 0) {
                for (int vtx = 0, seen = 0; seen < j && vtx < n_; ++vtx) {
                    if (!(out_mask_[u] & bit(vtx))) continue;
                    ++seen;
                    const unsigned xv = (x >> vtx) & 1;
                    if (leaf_rule_ == LeafExponentRule::adopted && adopts_from_[vtx] &&
                        in_list_[vtx][0] == u)
                        home_fold ^= xv;
                    else
                        home_fold ^= xu ^ xv;
                }
            } else {
                home_fold = (x >> L[0]) & 1;
            }
        }
        for (int k = start; k < i; ++k) {
            const int v = L[k];
            const unsigned xv = (x >> v) & 1;
            if (xu ^ xv) val *= q1;  // Y measurement of the incoming leaf
            prefix |= bit(v);
            unsigned th;
            if (rule_ == SupportRule::union_or) {
                th = xu | unsigned((x & (out_mask_[u] | prefix)) != 0);
            } else {
                const unsigned lnew = xu ^ xv;
                const unsigned home = xu | (home_fold ^ lnew);
                th = home | lnew;
                home_fold ^= xv;  // far center now contributes Z on home(u)
            }
            if (th) val *= q2;
        }
    }
    return val;
}

double GeneralCorrelator::eval_bipartite_a(const std::uint8_t* x) const {
    const double q1 = 1.0 - noise_.p1, q2 = 1.0 - noise_.p2;
    double val = 1.0;
    for (int u = 0; u < n_; ++u) {
        const unsigned xu = x[u] & 1;
        unsigned a = 0, any = 0;
        for (int v : nbr_[u]) {
            a ^= x[v] & 1;
            any |= x[v] & 1;
        }
        val *= purif_.bell(int(a), int(xu));
        for (int e = 2 * int(xu) + int(a); e > 0; --e) val *= q1;
        const unsigned th = rule_ == SupportRule::union_or ? (xu | any) : (xu | a);
        if (th) val *= q2;
    }
    if (order_stats_ == OrderStats::annealed) {
        for (const auto& [u, v] : edges_) {
            if ((x[u] | x[v]) & 1) {
                val *= q2;
                continue;
            }
            int z = 0;
            for (int w : nbr_[u]) z += (w != v) & x[w] & 1;
            for (int w : nbr_[v]) z += (w != u) & x[w] & 1;
            val *= 1.0 - noise_.p2 * (1.0 - std::ldexp(1.0, -z));
        }
        return val;
    }
    std::vector<std::vector<int>> tilde(n_);
    for (const auto& [u, v] : edges_) {
        const unsigned xu = x[u] & 1, xv = x[v] & 1;
        unsigned touched;
        if (rule_ == SupportRule::union_or) {
            touched = xu | xv;
            for (int w : tilde[u]) touched |= x[w] & 1;
            for (int w : tilde[v]) touched |= x[w] & 1;
        } else {
            unsigned fu = xv, fv = xu;
            for (int w : tilde[u]) fu ^= x[w] & 1;
            for (int w : tilde[v]) fv ^= x[w] & 1;
            touched = xu | fu | xv | fv;
        }
        if (touched) val *= q2;
        tilde[u].push_back(v);
        tilde[v].push_back(u);
    }
    return val;
}

double GeneralCorrelator::eval_bipartite_b(const std::uint8_t* x) const {
    const double q1 = 1.0 - noise_.p1, q2 = 1.0 - noise_.p2;
    double val = 1.0;
    for (int u = 0; u < n_; ++u) {
        const unsigned xu = x[u] & 1;
        unsigned a = 0;
        for (int v : nbr_[u]) a ^= x[v] & 1;
        val *= purif_.bell(int(xu), int(a));
        if (xu) val *= q1;
    }
    if (order_stats_ == OrderStats::annealed) {
        for (const auto& [u, v] : edges_) {
            unsigned base = (x[u] | x[v]) & 1;
            unsigned pu = 0, pv = 0;
            for (int w : nbr_[u]) pu ^= x[w] & 1;
            for (int w : nbr_[v]) pv ^= x[w] & 1;
            base |= pu | pv;
            if (base) {
                val *= q2;
                continue;
            }
            int z = 0;
            for (int w : nbr_[u]) z += (w != v) & x[w] & 1;
            for (int w : nbr_[v]) z += (w != u) & x[w] & 1;
            val *= 1.0 - noise_.p2 * (1.0 - std::ldexp(1.0, -z));
        }
        return val;
    }
    std::vector<std::vector<int>> tilde(n_);
    auto gated = [](const std::vector<int>& t, int w) {
        return std::find(t.begin(), t.end(), w) != t.end();
    };
    for (const auto& [u, v] : edges_) {
        const unsigned xu = x[u] & 1, xv = x[v] & 1;
        unsigned touched;
        if (rule_ == SupportRule::union_or) {
            unsigned pu = 0, pv = 0;
            for (int w : nbr_[u]) pu ^= x[w] & 1;
            for (int w : nbr_[v]) pv ^= x[w] & 1;
            touched = xu | xv | pu | pv;
            for (int w : tilde[u]) touched |= x[w] & 1;
            for (int w : tilde[v]) touched |= x[w] & 1;
        } else {
            unsigned fu = 0, fv = 0;
            for (int w : nbr_[u])
                if (w != v && !gated(tilde[u], w)) fu ^= x[w] & 1;
            for (int w : nbr_[v])
                if (w != u && !gated(tilde[v], w)) fv ^= x[w] & 1;
            touched = (xu | fu) | (xv | fv);
        }
        if (touched) val *= q2;
        tilde[u].push_back(v);
        tilde[v].push_back(u);
    }
    return val;
}

double GeneralCorrelator::eval_subgraph(const std::uint8_t* x) const {
    const double q1 = 1.0 - noise_.p1, q2 = 1.0 - noise_.p2;
    double val = 1.0;
    for (int u = 0; u < n_; ++u) {
        const unsigned xu = x[u] & 1;
        const int j = out_deg_[u], i = in_deg_[u];
        auto leaf_exp = [&](int vtx) -> unsigned {
            const unsigned xv = x[vtx] & 1;
            if (leaf_rule_ == LeafExponentRule::adopted && adopts_from_[vtx] &&
                in_list_[vtx][0] == u)
                return xv;
            return xu ^ xv;
        };
        if (j > 0) {
            int w = 0;
            for (int vtx : out_list_[u]) w += int(leaf_exp(vtx));
            val *= purif_.ghz(j, int(xu), w);
        } else if (i == 0) {
            if (xu) val *= q1;  // locally prepared qubit
            continue;
        }
        if (i == 0) continue;
        const auto& L = in_list_[u];
        const int start = (j > 0) ? 0 : 1;
        unsigned out_any = 0;
        for (int vtx : out_list_[u]) out_any |= x[vtx] & 1;
        unsigned prefix_any = (j == 0) ? (x[L[0]] & 1) : 0;
        unsigned home_fold = 0;
        if (rule_ == SupportRule::exact_xor) {
            if (j > 0)
                for (int vtx : out_list_[u]) home_fold ^= leaf_exp(vtx);
            else
                home_fold = x[L[0]] & 1;
        }
        for (int k = start; k < i; ++k) {
            const int v = L[k];
            const unsigned xv = x[v] & 1;
            if (xu ^ xv) val *= q1;  // Y measurement of the incoming leaf
            prefix_any |= xv;
            unsigned th;
            if (rule_ == SupportRule::union_or) {
                th = xu | out_any | prefix_any;
            } else {
                const unsigned lnew = xu ^ xv;
                const unsigned home = xu | (home_fold ^ lnew);
                th = home | lnew;
                home_fold ^= xv;  // far center now contributes Z on home(u)
            }
            if (th) val *= q2;
        }
    }
    return val;
}

int RingFactor::width() const {
    switch (variant) {
        case RingVariant::s1: return 3;
        case RingVariant::s2: return 4;
        case RingVariant::bipartite_a: return 3;
        case RingVariant::bipartite_b: return 4;
    }
    return 0;
}

int RingFactor::step() const { return variant == RingVariant::s2 ? 2 : 1; }

int RingFactor::anchor_offset() const { return variant == RingVariant::s1 ? 0 : -1; }

double RingFactor::operator()(unsigned bits) const {
    const double q1 = 1.0 - noise.p1, q2 = 1.0 - noise.p2;
    auto b = [&](int k) -> unsigned { return (bits >> k) & 1; };
    switch (variant) {
        case RingVariant::s1: {
            // window (x_u, x_{u+1}, x_{u+2})
            const unsigned x0 = b(0), x1 = b(1), x2 = b(2);
            double v = theta(x0 | x1 | x2) ? q2 : 1.0;
            if (x0 ^ x1) v *= q1;
            return v * purif.ghz(1, int(x0), int(x0 ^ x1));
        }
        case RingVariant::s2: {
            // window (x_{u-1}, x_u, x_{u+1}, x_{u+2}), u even
            const unsigned xm = b(0), x0 = b(1), x1 = b(2), x2 = b(3);
            double v = theta(x0 | x1 | x2) ? q2 : 1.0;
            if (x1 ^ x2) v *= q1;
            return v * purif.ghz(2, int(x0), int(x0 ^ xm) + int(x1));
        }
        case RingVariant::bipartite_a: {
            // window (x_{u-1}, x_u, x_{u+1})
            const unsigned xm = b(0), x0 = b(1), x1 = b(2);
            double v = 1.0;
            for (int e = 2 * int(x0) + int(xm ^ x1); e > 0; --e) v *= q1;
            if (theta(xm | x0 | x1)) v *= q2 * q2;
            return v * purif.bell(int(xm ^ x1), int(x0));
        }
        case RingVariant::bipartite_b: {
            // window (x_{u-1}, x_u, x_{u+1}, x_{u+2})
            const unsigned xm = b(0), x0 = b(1), x1 = b(2), x2 = b(3);
            double v = x0 ? q1 : 1.0;
            if (theta(xm | x0 | x1 | x2)) v *= q2;
            return v * purif.bell(int(x0), int(xm ^ x1));
        }
    }
    return 0.0;
}

double ring_correlator(const RingFactor& f, int n, Config x) {
    if (n < 3) throw std::invalid_argument("ring needs n >= 3");
    if (f.variant == RingVariant::s2 && n % 2)
        throw std::invalid_argument("s2 needs an even ring");
    const int w = f.width(), s = f.step(), off = f.anchor_offset();
    double val = 1.0;
    for (int u = 0; u < n; u += s) {
        unsigned bits = 0;
        for (int k = 0; k < w; ++k) {
            const int site = ((u + off + k) % n + n) % n;
            bits |= ((x >> site) & 1) << k;
        }
        val *= f(bits);
    }
    return val;
}

}  // namespace gsnet
