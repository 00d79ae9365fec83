#pragma once

namespace gsnet {

struct NoiseParams {
    double p1 = 0.0;  // single-qubit depolarizing attached to measurements / preparation
    double p2 = 0.0;  // two-qubit depolarizing attached to CPHASE gates
    double pc = 0.0;  // depolarizing of the distribution channel (per sent qubit)
};

// Rule deciding whether a stabilizer element "touches" the qubits of a noisy
// two-qubit gate.  union_or: touched if any selected generator has support
// there, so Z contributions stacked from different neighbors never cancel.
// exact_xor: the product is folded first; an even number of Z's on a qubit
// leaves it untouched.  Single-qubit (measurement) noise always uses the
// folded support.  The two rules agree whenever every fold has at most one
// nonzero contribution.
enum class SupportRule { union_or, exact_xor };

}  // namespace gsnet
