#include "gsnet/mixture.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace gsnet {

namespace {
inline std::uint64_t qbit(int q) { return std::uint64_t(1) << q; }
inline unsigned par(std::uint64_t v) { return unsigned(std::popcount(v)) & 1; }
}  // namespace

MixtureState::MixtureState(int num_qubits) : n_(num_qubits), coeff_{1.0} {
    if (num_qubits < 1 || num_qubits > 64)
        throw std::invalid_argument("mixture supports 1..64 qubits");
}

void MixtureState::add_plus(int q) {
    add_group({PauliString::pauli_x(q)}, {1.0, 1.0});
}

void MixtureState::add_group(std::vector<PauliString> gens, std::vector<double> coeff) {
    const int mg = int(gens.size());
    if (coeff.size() != (std::size_t(1) << mg))
        throw std::invalid_argument("coefficient table size mismatch");
    if (coeff[0] != 1.0) throw std::invalid_argument("identity coefficient must be 1");
    const int m = num_generators();
    if (m + mg > 24) throw std::invalid_argument("too many generators for the mixture");
    for (std::size_t a = 0; a < gens.size(); ++a) {
        if (!gens[a].is_hermitian()) throw std::invalid_argument("generator not Hermitian");
        for (std::size_t b = a + 1; b < gens.size(); ++b)
            if (!commutes(gens[a], gens[b]))
                throw std::invalid_argument("generators must commute");
        for (const auto& h : gens_)
            if (!commutes(gens[a], h))
                throw std::invalid_argument("generators must commute with the state");
    }
    std::vector<double> cnew(std::size_t(1) << (m + mg));
    for (std::uint64_t yn = 0; yn < (std::uint64_t(1) << mg); ++yn)
        for (std::uint64_t yo = 0; yo < coeff_.size(); ++yo)
            cnew[(yn << m) | yo] = coeff[yn] * coeff_[yo];
    coeff_ = std::move(cnew);
    for (const auto& g : gens) {
        if (origin_gens_.size() >= 64)
            throw std::invalid_argument("too many original generators");
        origin_gens_.push_back(g);
        origin_mask_.push_back(std::uint64_t(1) << (origin_gens_.size() - 1));
    }
    gens_.insert(gens_.end(), gens.begin(), gens.end());
}

namespace {
void conj_cphase(std::vector<PauliString>& gens, int u, int v) {
    for (auto& g : gens) {
        const bool xu = g.x & qbit(u), xv = g.x & qbit(v);
        if (xu) g.z ^= qbit(v);
        if (xv) g.z ^= qbit(u);
        if (xu && xv) g.phase = (g.phase + 2) & 3;
    }
}

void conj_phase_correction(std::vector<PauliString>& gens, int u) {
    for (auto& g : gens)
        if (g.x & qbit(u)) {
            g.z ^= qbit(u);
            g.phase = (g.phase + 3) & 3;
        }
}
}  // namespace

void MixtureState::apply_cphase(int u, int v) {
    conj_cphase(gens_, u, v);
    conj_cphase(origin_gens_, u, v);
}

void MixtureState::apply_phase_correction(int u) {
    conj_phase_correction(gens_, u);
    conj_phase_correction(origin_gens_, u);
}

void MixtureState::depolarize(std::uint64_t qubits, double p, SupportRule rule) {
    if (p == 0.0) return;
    const int m = num_generators();
    const double q = 1.0 - p;
    if (rule == SupportRule::union_or) {
        std::uint64_t touch = 0;
        for (std::size_t o = 0; o < origin_gens_.size(); ++o)
            if (origin_gens_[o].support() & qubits) touch |= std::uint64_t(1) << o;
        if (!touch) return;
        // fold[y] = parity-of-originals of the term; touched iff any original
        // in the fold acts on the gate qubits
        std::vector<std::uint64_t> fold(coeff_.size());
        for (std::uint64_t y = 1; y < coeff_.size(); ++y)
            fold[y] = fold[y & (y - 1)] ^ origin_mask_[std::countr_zero(y)];
        for (std::uint64_t y = 1; y < coeff_.size(); ++y)
            if (fold[y] & touch) coeff_[y] *= q;
    } else {
        // folded product: qubit q is touched iff the xor of the selected
        // generators' masks is non-identity there
        std::vector<std::array<std::uint64_t, 2>> masks;
        for (std::uint64_t rest = qubits; rest;) {
            const int qb = std::countr_zero(rest);
            rest &= rest - 1;
            std::array<std::uint64_t, 2> xm{0, 0};
            for (int k = 0; k < m; ++k) {
                if (gens_[k].x & qbit(qb)) xm[0] |= std::uint64_t(1) << k;
                if (gens_[k].z & qbit(qb)) xm[1] |= std::uint64_t(1) << k;
            }
            masks.push_back(xm);
        }
        for (std::uint64_t y = 0; y < coeff_.size(); ++y) {
            unsigned touched = 0;
            for (const auto& xm : masks) touched |= par(y & xm[0]) | par(y & xm[1]);
            if (touched) coeff_[y] *= q;
        }
    }
}

PauliString MixtureState::product(std::uint64_t y) const {
    PauliString r;
    for (std::uint64_t rest = y; rest;) {
        const int k = std::countr_zero(rest);
        rest &= rest - 1;
        r = r * gens_[k];
    }
    return r;
}

void MixtureState::strip_qubit(int q) {
    const std::uint64_t b = qbit(q);
    for (auto& g : gens_) {
        if ((g.x & b) && (g.z & b)) g.phase = (g.phase + 3) & 3;  // XZ = -i Y
        g.x &= ~b;
        g.z &= ~b;
    }
}

void MixtureState::reduce_dependency(std::uint64_t ystar) {
    if (!ystar) throw std::logic_error("empty dependency");
    const PauliString prod = product(ystar);
    if (!prod.is_identity() || (prod.phase & 1))
        throw std::logic_error("generators are not dependent as expected");
    const double phi = prod.phase == 0 ? 1.0 : -1.0;
    const int k0 = std::countr_zero(ystar);
    std::vector<double> cnew(coeff_.size() >> 1);
    for (std::uint64_t zz = 0; zz < cnew.size(); ++zz) {
        const std::uint64_t low = zz & ((std::uint64_t(1) << k0) - 1);
        const std::uint64_t y = ((zz >> k0) << (k0 + 1)) | low;
        cnew[zz] = 0.5 * (coeff_[y] + phi * coeff_[y ^ ystar]);
    }
    if (std::abs(cnew[0] - 1.0) > 1e-9)
        throw std::logic_error("dependency reduction lost normalization");
    cnew[0] = 1.0;
    coeff_ = std::move(cnew);
    gens_.erase(gens_.begin() + k0);
    origin_mask_.erase(origin_mask_.begin() + k0);
}

void MixtureState::measure(Basis basis, int q, double p1) {
    // Measurement noise acts on one physical qubit, so only the actual
    // (folded) operator support decides which terms it touches.
    depolarize(qbit(q), p1, SupportRule::exact_xor);
    const PauliString P = basis == Basis::x   ? PauliString::pauli_x(q)
                          : basis == Basis::y ? PauliString::pauli_y(q)
                                              : PauliString::pauli_z(q);
    const int m = num_generators();
    std::uint64_t A = 0;
    for (int k = 0; k < m; ++k)
        if (!commutes(gens_[k], P)) A |= std::uint64_t(1) << k;
    if (A) {
        const int g0 = std::countr_zero(A);
        const std::uint64_t others = A & ~(std::uint64_t(1) << g0);
        for (std::uint64_t rest = others; rest;) {
            const int k = std::countr_zero(rest);
            rest &= rest - 1;
            gens_[k] = gens_[k] * gens_[g0];
            origin_mask_[k] ^= origin_mask_[g0];
        }
        // re-route the g0 exponent so the new generator set carries the terms
        std::vector<double> c2(coeff_.size());
        for (std::uint64_t f = 0; f < coeff_.size(); ++f)
            c2[f ^ (std::uint64_t(par(f & others)) << g0)] = coeff_[f];
        // the projection removes every term that still selects g0
        std::vector<double> c3(coeff_.size() >> 1);
        for (std::uint64_t zz = 0; zz < c3.size(); ++zz) {
            const std::uint64_t low = zz & ((std::uint64_t(1) << g0) - 1);
            c3[zz] = c2[((zz >> g0) << (g0 + 1)) | low];
        }
        coeff_ = std::move(c3);
        gens_.erase(gens_.begin() + g0);
        origin_mask_.erase(origin_mask_.begin() + g0);
        strip_qubit(q);
    } else {
        const Lookup lk = lookup(P);
        if (!lk.found)
            throw std::runtime_error("measurement operator independent of the stabilizer group");
        std::vector<double> c2(coeff_.size());
        for (std::uint64_t y = 0; y < coeff_.size(); ++y)
            c2[y] = 0.5 * (coeff_[y] + lk.phi * coeff_[y ^ lk.y]);
        const double prob = c2[0];
        if (!(prob > 1e-12))
            throw std::runtime_error("projection onto a zero-probability branch");
        for (auto& v : c2) v /= prob;
        c2[0] = 1.0;
        coeff_ = std::move(c2);
        strip_qubit(q);
        reduce_dependency(lk.y);
    }
}

MixtureState::Lookup MixtureState::lookup(const PauliString& target) const {
    const int m = num_generators();
    std::vector<std::array<std::uint64_t, 2>> v(m);
    std::vector<std::uint64_t> comb(m);
    for (int k = 0; k < m; ++k) {
        v[k] = {gens_[k].x, gens_[k].z};
        comb[k] = std::uint64_t(1) << k;
    }
    std::array<std::uint64_t, 2> t{target.x, target.z};
    std::uint64_t tcomb = 0;
    int row = 0;
    for (int word = 0; word < 2 && row < m; ++word) {
        for (int bitpos = 0; bitpos < n_ && row < m; ++bitpos) {
            const std::uint64_t b = std::uint64_t(1) << bitpos;
            int pivot = -1;
            for (int k = row; k < m; ++k)
                if (v[k][word] & b) {
                    pivot = k;
                    break;
                }
            if (pivot < 0) continue;
            std::swap(v[pivot], v[row]);
            std::swap(comb[pivot], comb[row]);
            for (int k = 0; k < m; ++k)
                if (k != row && (v[k][word] & b)) {
                    v[k][0] ^= v[row][0];
                    v[k][1] ^= v[row][1];
                    comb[k] ^= comb[row];
                }
            if (t[word] & b) {
                t[0] ^= v[row][0];
                t[1] ^= v[row][1];
                tcomb ^= comb[row];
            }
            ++row;
        }
    }
    Lookup lk;
    if (t[0] || t[1]) return lk;  // not in the group
    const PauliString prod = product(tcomb);
    if (prod.x != target.x || prod.z != target.z)
        throw std::logic_error("inconsistent generator decomposition");
    const unsigned d = (prod.phase - target.phase) & 3;
    if (d & 1) throw std::logic_error("non-Hermitian phase in decomposition");
    lk.found = true;
    lk.y = tcomb;
    lk.phi = d == 0 ? 1 : -1;
    return lk;
}

double MixtureState::expectation(const PauliString& target) const {
    const Lookup lk = lookup(target);
    if (!lk.found) return 0.0;
    return lk.phi * coeff_[lk.y];
}

}  // namespace gsnet

