#include "hqs/stats.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hqs/constants.hpp"
#include "hqs/errors.hpp"

namespace hqs {

namespace cs = constants;

double bose_population(double temperature, double freq, double offset) {
    if (temperature < 0.0) throw InvalidParameterError("temperature must be >= 0");
    if (freq <= 0.0) throw InvalidParameterError("freq must be > 0");
    if (temperature == 0.0) return offset;
    const double x = std::exp(-cs::planck_h * freq / (cs::k_boltzmann * temperature));
    return (1.0 - x) * x + offset;
}

double effective_temperature(double population, double freq) {
    if (freq <= 0.0) throw InvalidParameterError("freq must be > 0");
    if (!(population > 0.0))
        throw InvalidParameterError("population must be > 0");
    if (population >= 0.25)
        throw InvalidParameterError("no thermal solution for population >= 0.25");
    // smaller root of x (1 - x) = population, written to avoid cancellation
    // for populations near the double-precision floor
    const double x = 2.0 * population / (1.0 + std::sqrt(1.0 - 4.0 * population));
    return cs::planck_h * freq / (cs::k_boltzmann * std::log(1.0 / x));
}

BoseFit fit_bose(const std::vector<ThermometryPoint>& points, double freq) {
    if (points.size() < 4) throw InvalidParameterError("fit_bose requires at least 4 points");
    const auto [t_min, t_max] = std::minmax_element(
        points.begin(), points.end(),
        [](const auto& a, const auto& b) { return a.temperature < b.temperature; });
    if (t_min->temperature <= 0.0)
        throw InvalidParameterError("temperatures must be > 0");
    if (t_max->temperature < 3.0 * t_min->temperature)
        throw InvalidParameterError("points must span at least a factor 3 in temperature");

    auto weight = [](const ThermometryPoint& p) {
        return p.sigma > 0.0 ? 1.0 / (p.sigma * p.sigma) : 1.0;
    };
    auto chi2 = [&](double offset) {
        double acc = 0.0;
        for (const auto& p : points) {
            const double r = p.population - bose_population(p.temperature, freq, offset);
            acc += weight(p) * r * r;
        }
        return acc;
    };

    // Damped (Levenberg-Marquardt) least squares over the single offset
    // parameter; the Jacobian is constant (= 1), so this converges fast.
    BoseFit fit;
    double offset = 0.0;
    double lambda = 1e-3;
    double current = chi2(offset);
    for (fit.iterations = 1; fit.iterations <= 200; ++fit.iterations) {
        double jtj = 0.0, jtr = 0.0;
        for (const auto& p : points) {
            const double r = p.population - bose_population(p.temperature, freq, offset);
            jtj += weight(p);
            jtr += weight(p) * r;
        }
        const double step = jtr / (jtj * (1.0 + lambda));
        const double trial = chi2(offset + step);
        if (trial <= current) {
            offset += step;
            const bool converged = std::abs(step) < 1e-15 + 1e-12 * std::abs(offset);
            current = trial;
            lambda = std::max(lambda * 0.5, 1e-12);
            if (converged) break;
        } else {
            lambda *= 4.0;
        }
        if (fit.iterations == 200)
            throw FitError("fit_bose did not converge within 200 iterations");
    }

    double sum_w = 0.0;
    for (const auto& p : points) sum_w += weight(p);
    fit.offset = offset;
    fit.offset_sigma = 1.0 / std::sqrt(sum_w);
    fit.reduced_chi_square = current / static_cast<double>(points.size() - 1);
    return fit;
}

PopulationRecord weighted_mean(const std::vector<PopulationRecord>& records) {
    if (records.empty()) throw InvalidParameterError("weighted_mean requires records");
    double sum_w = 0.0, sum_wm = 0.0;
    std::int64_t shots = 0;
    for (const auto& r : records) {
        if (!(r.variance > 0.0))
            throw InvalidParameterError("weighted_mean requires all variances > 0 (record '" +
                                        r.label + "')");
        const double w = 1.0 / r.variance;
        sum_w += w;
        sum_wm += w * r.mean;
        shots += r.n_shots;
    }
    PopulationRecord out;
    out.mean = sum_wm / sum_w;
    out.variance = 1.0 / sum_w;
    out.n_shots = shots;
    out.label = "weighted_mean";
    return out;
}

BlockStatistics block_statistics(const std::vector<double>& block_means) {
    if (block_means.size() < 2)
        throw InvalidParameterError("block_statistics requires at least 2 blocks");
    BlockStatistics out;
    const auto n = block_means.size();

    double sum = 0.0, sum_sq = 0.0;
    out.sem.reserve(n - 1);
    // Running sums give the cumulative sample std after each block.
    for (std::size_t k = 0; k < n; ++k) {
        sum += block_means[k];
        sum_sq += block_means[k] * block_means[k];
        if (k == 0) continue;
        const double count = static_cast<double>(k + 1);
        const double var = std::max(0.0, (sum_sq - sum * sum / count) / (count - 1.0));
        out.sem.push_back(std::sqrt(var / count));
    }

    const double count = static_cast<double>(n);
    out.mean = sum / count;
    out.sigma_total = std::sqrt(std::max(0.0, (sum_sq - sum * sum / count) / (count - 1.0)));
    out.reference.reserve(n - 1);
    for (std::size_t k = 2; k <= n; ++k)
        out.reference.push_back(out.sigma_total / std::sqrt(static_cast<double>(k)));
    return out;
}

std::vector<double> synthetic_blocks(double mean, double sigma, int n_blocks,
                                     std::uint64_t seed) {
    if (n_blocks < 1) throw InvalidParameterError("n_blocks must be >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(mean, sigma);
    std::vector<double> blocks(static_cast<std::size_t>(n_blocks));
    for (auto& b : blocks) b = dist(rng);
    return blocks;
}

}  // namespace hqs
