#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hqs {

struct PopulationRecord {
    double mean = 0.0;
    double variance = 0.0;
    std::int64_t n_shots = 0;
    std::string label;
    std::optional<std::string> timestamp;
};

struct ThermometryPoint {
    double temperature = 0.0;  // K
    double population = 0.0;
    double sigma = 0.0;
};

struct BoseFit {
    double offset = 0.0;
    double offset_sigma = 0.0;
    double reduced_chi_square = 0.0;
    int iterations = 0;
};

struct BlockStatistics {
    double mean = 0.0;
    double sigma_total = 0.0;  // sample standard deviation over all blocks
    // Cumulative SEM after k blocks, k = 2..n, and the sigma_total/sqrt(k)
    // reference evaluated on the same k.
    std::vector<double> sem;
    std::vector<double> reference;
};

/// Bose-Einstein first-excited-state population (1 - x) x + offset with
/// x = exp(-h freq / (k_B T)). freq in Hz. T = 0 returns the offset.
double bose_population(double temperature, double freq, double offset);

/// Exact inversion of (1 - x) x = population; population must be in (0, 0.25).
double effective_temperature(double population, double freq);

/// Weighted least-squares fit of the Bose-Einstein curve with the offset as
/// the only free parameter (temperatures taken as measured).
BoseFit fit_bose(const std::vector<ThermometryPoint>& points, double freq);

/// Inverse-variance weighted mean; variance of the result is 1/sum(1/v_i).
PopulationRecord weighted_mean(const std::vector<PopulationRecord>& records);

BlockStatistics block_statistics(const std::vector<double>& block_means);

/// Seeded gaussian block series for synthetic statistics runs.
std::vector<double> synthetic_blocks(double mean, double sigma, int n_blocks,
                                     std::uint64_t seed);

}  // namespace hqs
