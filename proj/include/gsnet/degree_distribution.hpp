#pragma once

// Degree distributions for ensemble calculations: probability generating
// functions of the degree (g_p), of the excess degree (g_r) and of the joint
// in/out-degree after random edge orientation (bivariate g_p).

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace gsnet {

class DegreeDistribution {
  public:
    // Poisson with the given mean, truncated where the tail mass drops below
    // 1e-12 (only affects sampling; generating functions use closed forms).
    static DegreeDistribution poisson(double mean);

    // Explicit pmf p[k] = P(degree = k); must be non-negative and sum to 1
    // within 1e-9 (renormalized exactly afterwards).
    static DegreeDistribution from_pmf(std::vector<double> p);

    // Explicit joint pmf q[i][j] = P(in = i, out = j).  The univariate
    // marginal is p[k] = sum_{i+j=k} q[i][j].
    static DegreeDistribution from_bivariate(std::vector<std::vector<double>> q);

    // JSON: {"kind":"poisson","mean":2.0} or {"kind":"pmf","p":[...]}.
    static DegreeDistribution from_json(const std::string& text);

    double mean() const { return mean_k_; }

    // g_p(z) = sum_k p_k z^k.
    double gp(double z) const;

    // g_r(z) = g_p'(z)/<k>, the excess-degree generating function; requires
    // <k> > 0.
    double gr(double z) const;

    // Bivariate g_p(x,y) = sum_{i,j} p_{ij} x^i y^j.  Without an explicit
    // joint pmf this uses the random-orientation split
    // p_{ij} = p_{i+j} 2^{-(i+j)} C(i+j, i), for which g_p(x,y) = g_p((x+y)/2).
    double gp2(double x, double y) const;

    int sample(std::mt19937_64& rng) const;

    const std::vector<double>& pmf() const { return pmf_; }
    bool is_poisson() const { return poisson_; }

  private:
    DegreeDistribution() = default;

    bool poisson_ = false;
    double mean_k_ = 0.0;
    std::vector<double> pmf_;                  // truncated for sampling
    std::vector<double> cdf_;
    std::vector<std::vector<double>> joint_;   // empty unless bivariate
};

}  // namespace gsnet
