#pragma once

// Phase-tracked Pauli strings on up to 64 qubits.  A string is stored as
// i^phase * X^x * Z^z with the X factors to the left of the Z factors; all
// products and conjugations keep the phase exponent exact (mod 4).

#include <bit>
#include <cstdint>

namespace gsnet {

struct PauliString {
    std::uint64_t x = 0;  // X support
    std::uint64_t z = 0;  // Z support
    unsigned phase = 0;   // exponent of i, mod 4

    static PauliString pauli_x(int q) { return {std::uint64_t(1) << q, 0, 0}; }
    static PauliString pauli_z(int q) { return {0, std::uint64_t(1) << q, 0}; }
    // Y = i X Z
    static PauliString pauli_y(int q) {
        return {std::uint64_t(1) << q, std::uint64_t(1) << q, 1};
    }

    std::uint64_t support() const { return x | z; }
    bool is_identity() const { return x == 0 && z == 0; }
    // i^phase X^x Z^z is Hermitian iff phase + |x & z| is even.
    bool is_hermitian() const {
        return ((phase + std::popcount(x & z)) & 1) == 0;
    }

    friend PauliString operator*(const PauliString& a, const PauliString& b) {
        PauliString r;
        r.x = a.x ^ b.x;
        r.z = a.z ^ b.z;
        r.phase = (a.phase + b.phase + 2 * unsigned(std::popcount(a.z & b.x))) & 3;
        return r;
    }

    friend bool operator==(const PauliString& a, const PauliString& b) = default;
};

inline bool commutes(const PauliString& a, const PauliString& b) {
    return ((std::popcount(a.x & b.z) + std::popcount(a.z & b.x)) & 1) == 0;
}

}  // namespace gsnet
