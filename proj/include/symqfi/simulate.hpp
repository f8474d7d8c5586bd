#pragma once

// Photon-counting Monte Carlo and maximum-likelihood estimation for
// single-parameter models, used to check that the MSE reaches 1/(M * QFI).

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "symqfi/estimation.hpp"

namespace symqfi {

struct OutcomeCounts {
    std::vector<std::uint64_t> counts;
    std::uint64_t total = 0;
};

/// Multinomial draw of m photons. Probabilities may be off from unit sum by
/// 1e-9 (they are renormalized); entries below -1e-9 are rejected, small
/// negatives are clamped to zero. Deterministic in seed.
OutcomeCounts sample_outcomes(std::span<const double> probabilities, std::uint64_t m, std::uint64_t seed);

/// Independent, individually reproducible seed for (study seed, stream, trial).
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

inline constexpr int kMleGridPoints = 256;
inline constexpr double kMleTolerance = 1e-8;

/// Maximizes sum_n counts_n log q_n(theta) over the interval for a
/// one-parameter model measured in the given basis. Grid scan of
/// kMleGridPoints points (first maximum wins), then golden-section
/// refinement to kMleTolerance around it. Throws NumericalFailure when the
/// likelihood is -inf everywhere or flat on the grid.
double mle_1d(const OutcomeCounts& counts, const ModelFamily& model, const ComplexMatrix& basis, Interval bounds);

/// Log-likelihood; -inf where a counted outcome has zero probability or the
/// parameter is outside the model domain.
double log_likelihood(const OutcomeCounts& counts, const ModelFamily& model, const ComplexMatrix& basis,
                      double theta);

struct StudyConfig {
    ModelFamily model;
    ComplexMatrix basis;
    std::string measurement = "custom";  // label carried into reports
    double truth = 0.0;
    std::vector<std::uint64_t> photons;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    Interval bounds;
    unsigned threads = 1;
};

struct StudyRow {
    std::uint64_t photons = 0;
    std::size_t trials = 0;
    std::size_t failures = 0;
    double mean_estimate = 0.0;
    double mse = 0.0;
    double crb = 0.0;    // 1 / (M * QFI)
    double ratio = 0.0;  // mse * M * QFI
};

struct StudyReport {
    double truth = 0.0;
    double qfi = 0.0;
    double fisher = 0.0;  // classical FI of the configured measurement at the truth
    std::vector<StudyRow> rows;
    // estimates[i] holds the successful trial estimates for photons[i], in trial order.
    std::vector<std::vector<double>> estimates;
};

/// Runs trials per photon count with seeds trial_seed(seed, m_index, trial).
/// Estimator failures below 1% of trials are excluded from the MSE; at or
/// above 1% the study throws NumericalFailure. The result does not depend on
/// cfg.threads.
StudyReport crb_study(const StudyConfig& cfg);

}  // namespace symqfi
