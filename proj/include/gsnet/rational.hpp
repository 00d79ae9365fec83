#pragma once

// Exact rational arithmetic for closed-form decay rates and series
// certification.  Thin wrapper around boost::multiprecision.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace gsnet {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return static_cast<double>(r); }

inline std::string to_string(const Rational& r) { return r.str(); }

// C(n, k) as an exact integer; 0 for k out of range.
inline BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt num = 1;
    for (int i = 0; i < k; ++i) {
        num *= (n - i);
        num /= (i + 1);
    }
    return num;
}

}  // namespace gsnet
