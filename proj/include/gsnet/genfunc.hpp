#pragma once

// Ring fidelities from generating functions.  For each ring variant the
// weighted count of stabilizer configurations has a rational generating
// function G(z) = num(z)/den(z) with 2^N F_N = [z^(N/step)] G; the
// coefficients follow from the purified star correlators and the gate/
// measurement noise factors.  The s2 variant (one window per two sites) is
// built from the characteristic polynomial of its 4x4 window transfer
// matrix: G(z) = -z * den'(z)/den(z) with den(z) = det(I - z T).

#include <vector>

#include "gsnet/correlators.hpp"
#include "gsnet/noise.hpp"

namespace gsnet {

// Coefficients c_0..c_{count-1} of num(z)/den(z); den[0] must be non-zero.
std::vector<double> series_coefficients(const std::vector<double>& num,
                                        const std::vector<double>& den,
                                        int count);

struct GenFunc {
    std::vector<double> num;
    std::vector<double> den;
    int sites_per_power = 1;  // 2 for the s2 variant

    // F_N = 2^-N [z^(N/sites_per_power)] num/den; N must be a multiple of
    // sites_per_power and at least 3.
    double fidelity(int n) const;
};

// The bipartite variants require a purification model whose Bell correlator
// does not distinguish <K_c> from <K_c K_l> (true for the ideal and
// first-order models); otherwise an exception is thrown.  s1 accepts any
// model.
GenFunc ring_generating_function(RingVariant variant, const NoiseParams& noise,
                                 const PurificationModel& purif);

}  // namespace gsnet
