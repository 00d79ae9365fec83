#include "gsnet/degree_distribution.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "gsnet/rng.hpp"

namespace gsnet {

namespace {

std::vector<double> poisson_pmf(double mean) {
    // Truncate where the remaining tail mass is below 1e-12.
    std::vector<double> p;
    double term = std::exp(-mean);
    double cum = term;
    p.push_back(term);
    for (int k = 1; k < 4096; ++k) {
        term *= mean / k;
        p.push_back(term);
        cum += term;
        if (1.0 - cum < 1e-12 && k > mean) break;
    }
    return p;
}

}  // namespace

DegreeDistribution DegreeDistribution::poisson(double mean) {
    if (mean < 0.0) throw std::invalid_argument("poisson: negative mean");
    DegreeDistribution d;
    d.poisson_ = true;
    d.mean_k_ = mean;
    d.pmf_ = poisson_pmf(mean);
    d.cdf_.resize(d.pmf_.size());
    std::partial_sum(d.pmf_.begin(), d.pmf_.end(), d.cdf_.begin());
    return d;
}

DegreeDistribution DegreeDistribution::from_pmf(std::vector<double> p) {
    if (p.empty()) throw std::invalid_argument("from_pmf: empty pmf");
    double sum = 0.0;
    for (double x : p) {
        if (x < 0.0) throw std::invalid_argument("from_pmf: negative probability");
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("from_pmf: probabilities do not sum to 1");
    for (double& x : p) x /= sum;
    DegreeDistribution d;
    d.pmf_ = std::move(p);
    d.mean_k_ = 0.0;
    for (std::size_t k = 0; k < d.pmf_.size(); ++k) d.mean_k_ += k * d.pmf_[k];
    d.cdf_.resize(d.pmf_.size());
    std::partial_sum(d.pmf_.begin(), d.pmf_.end(), d.cdf_.begin());
    return d;
}

DegreeDistribution DegreeDistribution::from_bivariate(
    std::vector<std::vector<double>> q) {
    if (q.empty()) throw std::invalid_argument("from_bivariate: empty pmf");
    std::size_t cols = 0;
    double sum = 0.0;
    for (auto& row : q) {
        cols = std::max(cols, row.size());
        for (double x : row) {
            if (x < 0.0) throw std::invalid_argument("from_bivariate: negative probability");
            sum += x;
        }
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("from_bivariate: probabilities do not sum to 1");
    std::vector<double> marg(q.size() + cols, 0.0);
    for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = 0; j < q[i].size(); ++j) marg[i + j] += q[i][j] / sum;
    while (marg.size() > 1 && marg.back() == 0.0) marg.pop_back();
    DegreeDistribution d = from_pmf(marg);
    d.joint_ = std::move(q);
    for (auto& row : d.joint_)
        for (double& x : row) x /= sum;
    return d;
}

DegreeDistribution DegreeDistribution::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "poisson") return poisson(j.at("mean").get<double>());
    if (kind == "pmf") return from_pmf(j.at("p").get<std::vector<double>>());
    throw std::invalid_argument("degree distribution JSON: unknown kind '" + kind + "'");
}

double DegreeDistribution::gp(double z) const {
    if (poisson_) return std::exp(mean_k_ * (z - 1.0));
    double acc = 0.0, zk = 1.0;
    for (double pk : pmf_) {
        acc += pk * zk;
        zk *= z;
    }
    return acc;
}

double DegreeDistribution::gr(double z) const {
    if (mean_k_ <= 0.0)
        throw std::domain_error("gr: excess degree undefined for mean degree 0");
    if (poisson_) return std::exp(mean_k_ * (z - 1.0));
    double acc = 0.0, zk = 1.0;
    for (std::size_t k = 1; k < pmf_.size(); ++k) {
        acc += k * pmf_[k] * zk;
        zk *= z;
    }
    return acc / mean_k_;
}

double DegreeDistribution::gp2(double x, double y) const {
    if (!joint_.empty()) {
        double acc = 0.0;
        for (std::size_t i = 0; i < joint_.size(); ++i) {
            double xi = std::pow(x, static_cast<double>(i));
            for (std::size_t j = 0; j < joint_[i].size(); ++j)
                acc += joint_[i][j] * xi * std::pow(y, static_cast<double>(j));
        }
        return acc;
    }
    // Random orientation splits each edge independently, so the joint pgf
    // collapses to g_p of the average argument.
    return gp(0.5 * (x + y));
}

int DegreeDistribution::sample(std::mt19937_64& rng) const {
    const double u = uniform01(rng) * cdf_.back();
    auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
    return static_cast<int>(it - cdf_.begin());
}

}  // namespace gsnet
