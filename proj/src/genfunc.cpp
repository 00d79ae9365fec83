#include "gsnet/genfunc.hpp"

#include <cmath>
#include <stdexcept>

#include "gsnet/statmech.hpp"

namespace gsnet {

std::vector<double> series_coefficients(const std::vector<double>& num,
                                        const std::vector<double>& den,
                                        int count) {
    if (den.empty() || den[0] == 0.0)
        throw std::invalid_argument("series: den[0] must be non-zero");
    std::vector<double> c(count, 0.0);
    for (int k = 0; k < count; ++k) {
        double acc = k < int(num.size()) ? num[k] : 0.0;
        for (int i = 1; i <= k && i < int(den.size()); ++i)
            acc -= den[i] * c[k - i];
        c[k] = acc / den[0];
    }
    return c;
}

double GenFunc::fidelity(int n) const {
    if (n < 3 || n % sites_per_power != 0)
        throw std::invalid_argument("generating function: bad ring size");
    const int k = n / sites_per_power;
    const auto c = series_coefficients(num, den, k + 1);
    return std::ldexp(c[k], -n);
}

namespace {

GenFunc gf_s1(const NoiseParams& noise, const PurificationModel& purif) {
    const double q1 = 1.0 - noise.p1, q2 = 1.0 - noise.p2;
    const double c10 = purif.bell(1, 0), c01 = purif.bell(0, 1),
                 c11 = purif.bell(1, 1);
    const double x = q2 * c10;
    const double y1 = q2 * q1 * q1 * c01 * c11 / c10;
    const double y2 = q2 * y1;
    GenFunc g;
    g.num = {1.0, 0.0, -x * (1.0 - y1), -2.0 * x * (y1 - y2)};
    g.den = {1.0, -(1.0 + x), x * (1.0 - y1), x * (y1 - y2)};
    return g;
}

void require_symmetric_bell(const PurificationModel& purif) {
    if (std::abs(purif.bell(1, 0) - purif.bell(1, 1)) > 1e-12)
        throw std::invalid_argument(
            "bipartite generating functions need <K_c> == <K_c K_l>");
}

GenFunc gf_bipartite_a(const NoiseParams& noise,
                       const PurificationModel& purif) {
    require_symmetric_bell(purif);
    const double q1 = 1.0 - noise.p1, q2 = 1.0 - noise.p2;
    const double c10 = purif.bell(1, 0), c01 = purif.bell(0, 1);
    const double x = q1 * q1 * q2 * q2 * c01;
    const double y1 = q2 * q2;
    const double y2 = q1 * q1 * q2 * q2 * q2 * q2 * c10 * c10;
    const double w2 = q1 * q1 * c10 * c10 / (c01 * c01);
    GenFunc g;
    g.num = {1.0, 0.0, x * (y1 - 1.0),
             2.0 * x * (y2 - y1) + 2.0 * (w2 - 1.0) * x * x * y1,
             3.0 * (w2 - 1.0) * x * x * (y2 - y1)};
    g.den = {1.0, -(1.0 + x), x * (1.0 - y1),
             x * (y1 - y2) - (w2 - 1.0) * x * x * y1,
             (w2 - 1.0) * x * x * (y1 - y2)};
    return g;
}

GenFunc gf_bipartite_b(const NoiseParams& noise,
                       const PurificationModel& purif) {
    require_symmetric_bell(purif);
    const double q1 = 1.0 - noise.p1, q2 = 1.0 - noise.p2;
    const double c10 = purif.bell(1, 0), c01 = purif.bell(0, 1);
    const double x = q1 * q2 * c10;
    const double y1 = q2;
    const double y2 = q2 * q2 * c01 * c01;
    const double y3 = q2 * q2 * q2 * c01 * c01;
    GenFunc g;
    g.num = {1.0, 0.0, x * (y1 - 1.0), 2.0 * x * (y2 - y1),
             3.0 * x * (y3 - y2)};
    g.den = {1.0, -(1.0 + x), x * (1.0 - y1), x * (y1 - y2), x * (y2 - y3)};
    return g;
}

GenFunc gf_s2(const NoiseParams& noise, const PurificationModel& purif) {
    const RingFactor f{RingVariant::s2, noise, purif};
    const auto t = transfer_matrix(f);
    const int d = int(t.size());
    // power sums tr(T^k) -> elementary symmetric functions (Newton)
    std::vector<double> p(d + 1, 0.0), e(d + 1, 0.0);
    std::vector<std::vector<double>> tk = t;
    for (int k = 1; k <= d; ++k) {
        if (k > 1) {
            std::vector<std::vector<double>> nx(d, std::vector<double>(d, 0.0));
            for (int i = 0; i < d; ++i)
                for (int l = 0; l < d; ++l)
                    for (int j = 0; j < d; ++j) nx[i][j] += tk[i][l] * t[l][j];
            tk = std::move(nx);
        }
        for (int i = 0; i < d; ++i) p[k] += tk[i][i];
    }
    e[0] = 1.0;
    for (int k = 1; k <= d; ++k) {
        double acc = 0.0;
        for (int i = 1; i <= k; ++i)
            acc += (i % 2 ? 1.0 : -1.0) * e[k - i] * p[i];
        e[k] = acc / k;
    }
    GenFunc g;
    g.sites_per_power = 2;
    // den = det(I - zT) = sum (-1)^k e_k z^k;  num = -z den'
    g.den.resize(d + 1);
    g.num.assign(d + 1, 0.0);
    for (int k = 0; k <= d; ++k) g.den[k] = (k % 2 ? -1.0 : 1.0) * e[k];
    for (int k = 1; k <= d; ++k) g.num[k] = -double(k) * g.den[k];
    return g;
}

}  // namespace

GenFunc ring_generating_function(RingVariant variant, const NoiseParams& noise,
                                 const PurificationModel& purif) {
    switch (variant) {
        case RingVariant::s1: return gf_s1(noise, purif);
        case RingVariant::s2: return gf_s2(noise, purif);
        case RingVariant::bipartite_a: return gf_bipartite_a(noise, purif);
        case RingVariant::bipartite_b: return gf_bipartite_b(noise, purif);
    }
    throw std::logic_error("unknown ring variant");
}

}  // namespace gsnet
