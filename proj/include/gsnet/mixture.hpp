#pragma once

// Explicit density-matrix simulator for mixtures that are diagonal in a
// stabilizer basis: rho = 2^-n sum_y c[y] prod_k g_k^{y_k}, with pairwise
// commuting, independent, Hermitian Pauli generators g_k and c[0] = 1.
// This covers every state the distribution protocols produce (graph states
// under the depolarizing noise model stay graph-diagonal), and supports the
// full protocol tool set: CPHASE, phase corrections, per-term depolarizing
// noise, and destructive Pauli measurements with post-selection on the +1
// outcome.

#include <cstdint>
#include <vector>

#include "gsnet/noise.hpp"
#include "gsnet/pauli.hpp"

namespace gsnet {

enum class Basis { x, y, z };

class MixtureState {
  public:
    explicit MixtureState(int num_qubits);

    int num_qubits() const { return n_; }
    int num_generators() const { return int(gens_.size()); }
    const std::vector<PauliString>& generators() const { return gens_; }
    const std::vector<double>& coefficients() const { return coeff_; }

    // Register a fresh qubit in |+> (stabilizer X_q, coefficients {1, 1}).
    void add_plus(int q);
    // Register a subsystem: generators plus the coefficient of every product
    // of them (coeff.size() == 2^gens.size(), coeff[0] == 1).  The new index
    // bits sit above the existing ones.
    void add_group(std::vector<PauliString> gens, std::vector<double> coeff);

    void apply_cphase(int u, int v);
    // e^{-i pi/4 Z_u}: X_u -> -Y_u, Y_u -> X_u.
    void apply_phase_correction(int u);

    // Multiplies by (1-p) the coefficient of every term that acts on a qubit
    // in `qubits`.  union_or: a term acts there if any generator of its
    // decomposition over the *original* (unitarily evolved, pre-measurement)
    // generator set does; exact_xor: if the folded Pauli product does.
    void depolarize(std::uint64_t qubits, double p, SupportRule rule);

    // Depolarize(q, p1) by the folded support (measurement noise is local, so
    // the bookkeeping rule choice does not apply), project qubit q onto the
    // +1 eigenstate of the basis operator, and remove the qubit.
    void measure(Basis basis, int q, double p1);

    struct Lookup {
        bool found = false;
        std::uint64_t y = 0;  // generator selection with prod g^y = phi*target
        int phi = 1;
    };
    // Decompose a Hermitian Pauli over the generator set.
    Lookup lookup(const PauliString& target) const;
    // tr(rho * target): phi * c[y] when target is in the group, else 0.
    double expectation(const PauliString& target) const;

  private:
    int n_ = 0;
    std::vector<PauliString> gens_;
    std::vector<double> coeff_;  // size 2^m, coeff_[0] == 1
    // Original generators conjugated by unitaries only (measurements leave
    // them untouched), and per current generator the parity of originals it
    // is composed of; together they define the union-rule support.
    std::vector<PauliString> origin_gens_;
    std::vector<std::uint64_t> origin_mask_;

    PauliString product(std::uint64_t y) const;
    void strip_qubit(int q);
    void reduce_dependency(std::uint64_t ystar);
};

}  // namespace gsnet
