#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "gsnet/correlators.hpp"
#include "gsnet/genfunc.hpp"
#include "gsnet/rational.hpp"
#include "gsnet/statmech.hpp"

using namespace gsnet;

TEST_CASE("series recurrence for rational functions") {
    // 1/(1-z): all-ones
    const auto geo = series_coefficients({1.0}, {1.0, -1.0}, 6);
    for (double c : geo) CHECK(c == doctest::Approx(1.0).epsilon(1e-15));
    // (1+z)/(1-2z): 1, 3, 6, 12, ...
    const auto c = series_coefficients({1.0, 1.0}, {1.0, -2.0}, 5);
    CHECK(c[0] == doctest::Approx(1.0));
    CHECK(c[1] == doctest::Approx(3.0));
    CHECK(c[2] == doctest::Approx(6.0));
    CHECK(c[3] == doctest::Approx(12.0));
    CHECK_THROWS(series_coefficients({1.0}, {0.0, 1.0}, 3));
}

TEST_CASE("generating functions reproduce exact enumeration") {
    const NoiseParams noise{0.02, 0.04, 0.1};
    std::vector<PurificationModel> models{PurificationModel::ideal(),
                                          PurificationModel::first_order(0.03)};
    for (const auto& purif : models) {
        for (RingVariant v : {RingVariant::s1, RingVariant::s2,
                              RingVariant::bipartite_a, RingVariant::bipartite_b}) {
            const GenFunc gf = ring_generating_function(v, noise, purif);
            const RingFactor f{v, noise, purif};
            for (int n : {6, 8, 10, 12, 14}) {
                if (n % (v == RingVariant::s2 ? 2 : 1)) continue;
                CHECK(gf.fidelity(n) ==
                      doctest::Approx(fidelity_exact(f, n)).epsilon(1e-12));
            }
        }
    }
    // s1 additionally accepts asymmetric purified tables
    const auto fp = PurificationModel::fixed_point(0.02, 0.04, 0.1, 2);
    const GenFunc gf = ring_generating_function(RingVariant::s1, noise, fp);
    const RingFactor f{RingVariant::s1, noise, fp};
    CHECK(gf.fidelity(12) == doctest::Approx(fidelity_exact(f, 12)).epsilon(1e-12));
}

TEST_CASE("bipartite generating functions reject asymmetric bell tables") {
    const auto fp = PurificationModel::fixed_point(0.02, 0.04, 0.1, 2);
    CHECK_THROWS(ring_generating_function(RingVariant::bipartite_a,
                                          {0.02, 0.04, 0.1}, fp));
    CHECK_THROWS(ring_generating_function(RingVariant::bipartite_b,
                                          {0.02, 0.04, 0.1}, fp));
}

TEST_CASE("window-pair counting rejects odd sizes") {
    const GenFunc gf = ring_generating_function(
        RingVariant::s2, {0.01, 0.01, 0.1}, PurificationModel::ideal());
    CHECK(gf.sites_per_power == 2);
    CHECK_THROWS(gf.fidelity(9));
}

// --- exact-rational certification of the two-site window construction -------
//
// Rebuilds the s2 generating function with exact rational arithmetic at
// rational noise values and checks its series against a rational brute-force
// enumeration of the ring.  This certifies that num/den encode the correct
// weighted configuration counts before any floating-point comparison is
// trusted.

namespace {

struct RationalS2 {
    Rational q1, q2, p;  // purified tables at first order in p

    Rational ghz2(int a, int w) const {
        if (a) return 1 - 3 * p;
        return 1 - p * ((w + 1) / 2);
    }
    Rational factor(unsigned bits) const {
        const unsigned xm = bits & 1, x0 = (bits >> 1) & 1, x1 = (bits >> 2) & 1,
                       x2 = (bits >> 3) & 1;
        Rational v = (x0 | x1 | x2) ? q2 : Rational(1);
        if (x1 ^ x2) v *= q1;
        return v * ghz2(int(x0), int(x0 ^ xm) + int(x1));
    }
};

// den(z) = det(I - zT) via Newton's identities over rational power sums,
// num(z) = -z den'(z)
void rational_s2_genfunc(const RationalS2& rs, std::array<Rational, 5>& num,
                         std::array<Rational, 5>& den) {
    std::array<std::array<Rational, 4>, 4> t{};
    for (int s = 0; s < 4; ++s)
        for (int u = 0; u < 4; ++u)
            t[s][u] = rs.factor(unsigned(s) | (unsigned(u) << 2));
    std::array<Rational, 5> pow{};  // pow[k] = tr(T^k)
    auto cur = t;
    for (int k = 1; k <= 4; ++k) {
        for (int s = 0; s < 4; ++s) pow[k] += cur[s][s];
        if (k < 4) {
            std::array<std::array<Rational, 4>, 4> nxt{};
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b)
                    for (int c2 = 0; c2 < 4; ++c2) nxt[a][b] += cur[a][c2] * t[c2][b];
            cur = nxt;
        }
    }
    std::array<Rational, 5> e{};
    e[0] = 1;
    for (int k = 1; k <= 4; ++k) {
        Rational s;
        for (int i = 1; i <= k; ++i)
            s += (i % 2 ? Rational(1) : Rational(-1)) * e[k - i] * pow[i];
        e[k] = s / k;
    }
    for (int k = 0; k <= 4; ++k) {
        den[k] = k % 2 ? Rational(-e[k]) : e[k];
        num[k] = -k * den[k];
    }
}

Rational rational_series_coeff(const std::array<Rational, 5>& num,
                               const std::array<Rational, 5>& den, int m) {
    std::vector<Rational> c(m + 1);
    for (int k = 0; k <= m; ++k) {
        Rational v = k <= 4 ? num[k] : Rational(0);
        for (int i = 1; i <= std::min(k, 4); ++i) v -= den[i] * c[k - i];
        c[k] = v;  // den[0] == 1
    }
    return c[m];
}

}  // namespace

TEST_CASE("rational certification of the s2 window transfer construction") {
    const RationalS2 rs{Rational(6, 7), Rational(10, 11), Rational(1, 64)};
    std::array<Rational, 5> num, den;
    rational_s2_genfunc(rs, num, den);
    CHECK(den[0] == 1);
    CHECK(num[0] == 0);

    // series coefficient m = N/2 must equal the brute-force weighted count
    for (int n : {4, 6, 8, 10, 12}) {
        Rational brute;
        for (unsigned x = 0; x < (1u << n); ++x) {
            Rational term(1);
            for (int u = 0; u < n; u += 2) {
                unsigned bits = 0;
                for (int k = 0; k < 4; ++k)
                    bits |= ((x >> ((u - 1 + k + n) % n)) & 1u) << k;
                term *= rs.factor(bits);
            }
            brute += term;
        }
        CHECK(rational_series_coeff(num, den, n / 2) == brute);
    }

    // the floating-point construction matches the certified coefficients
    const NoiseParams noise{1.0 / 7.0, 1.0 / 11.0, 0.1};
    const GenFunc gf = ring_generating_function(
        RingVariant::s2, noise, PurificationModel::first_order(1.0 / 64.0));
    REQUIRE(gf.den.size() == 5);
    REQUIRE(gf.num.size() >= 2);
    for (int k = 0; k <= 4; ++k) {
        CHECK(gf.den[size_t(k)] ==
              doctest::Approx(den[k].convert_to<double>()).epsilon(1e-12));
        const double nk = size_t(k) < gf.num.size() ? gf.num[size_t(k)] : 0.0;
        CHECK(nk == doctest::Approx(num[k].convert_to<double>()).epsilon(1e-12));
    }
    for (int n : {6, 10, 14}) {
        const Rational exact = rational_series_coeff(num, den, n / 2);
        CHECK(gf.fidelity(n) ==
              doctest::Approx(std::ldexp(exact.convert_to<double>(), -n))
                  .epsilon(1e-12));
    }
}
