#pragma once

// Recurrence-based purification of distributed star-shaped states (a center
// qubit plus j leaves; j = 1 is a Bell pair).  States stay diagonal in the
// generator basis, so they are fully described by the expectation values of
// generator products.  By symmetry these depend only on the center exponent
// a and the number w of selected leaves, giving the table c[a][w].
//
// One round alternates two sub-protocols: P1 purifies the center correlator,
// P2 the leaf correlators.  Both consume two identical copies, apply noisy
// transversal CNOTs ((1-p2) factors) and noisy measurements ((1-p1) factors)
// and renormalize by the (0,0) entry.

#include <array>
#include <cstdint>
#include <vector>

namespace gsnet {

struct CorrelatorTable {
    int j = 0;
    // c[a][w] for a in {0,1}, w in 0..j; c[0][0] == 1 after normalization.
    std::array<std::vector<double>, 2> c;
    // Optional full table over all 2^(j+1) exponent patterns (bit 0 = center,
    // bits 1..j = leaves); used as a cross-check of the symmetric reduction.
    std::vector<double> full;

    double value(int a, int w) const { return c[a].at(w); }
    bool has_full() const { return !full.empty(); }
};

// Perfect star state sent through depolarizing channels of strength pc (one
// per leaf): c[0][w] = (1-pc)^w, c[1][w] = (1-pc)^j.
// With make_full the 2^(j+1) pattern table is also populated.
// noisy_preparation additionally applies the (1-p2) factors of the j gates
// that build the star, averaged over leaf orderings (off by default: the
// distributed input is taken as channel noise only).
CorrelatorTable initial_distributed_ghz(int j, double pc, bool make_full = false,
                                        bool noisy_preparation = false,
                                        double p2 = 0.0);

// One P1 / P2 combination step on the symmetric table (and on the full table
// if present), renormalized by the (0,0) entry.
CorrelatorTable p1_step(const CorrelatorTable& t, double p1, double p2);
CorrelatorTable p2_step(const CorrelatorTable& t, double p1, double p2);

// Exact first-order fixed point of the map: c[0][w] = 1 - p*ceil(w/2),
// c[1][w] = 1 - p*(j+1).
CorrelatorTable first_order_fixed_point(int j, double p);

// Bell-pair special case of the first-order fixed point (j = 1).
CorrelatorTable bell_first_order(double p);

enum class PurifyStatus { converged, max_iterations, diverged };

struct PurifyResult {
    CorrelatorTable table;   // state after the last full round (P1 then P2)
    PurifyStatus status = PurifyStatus::diverged;
    int rounds = 0;
    double residual = 0.0;   // max entry change over the last round
};

// Iterates rounds (P1 followed by P2) from the distributed input until the
// table stops changing.  Divergence means a non-positive normalizer or
// entries leaving [-2, 2].
PurifyResult purify_fixed_point(int j, double p1, double p2, double pc,
                                double tol = 1e-12, int max_rounds = 10000);

// F = 2^-(j+1) * sum_{a,w} C(j,w) c[a][w].
double ghz_fidelity(const CorrelatorTable& t);

// Largest p = p1 = p2 for which the iteration still reaches the purifying
// fixed point (distributed input at channel strength pc).  Beyond it the map
// collapses onto a dead branch with vanishing center-type correlators; the
// branches are told apart by c[1][0] > 1/2.  Returns the bisection midpoint
// with absolute tolerance `tol`.
double purification_threshold(int j, double pc = 0.1, double tol = 1e-4);

}  // namespace gsnet
