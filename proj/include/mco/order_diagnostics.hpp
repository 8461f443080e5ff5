#pragma once

#include <span>
#include <vector>

#include "mco/random_stream.hpp"

namespace mco {

// Empirical stop-loss transform t -> E[(X - t)_+] with pointwise standard errors.
struct StopLossCurve {
    std::vector<double> t_grid;
    std::vector<double> values;
    std::vector<double> std_errors;
};

StopLossCurve stop_loss_curve(std::span<const double> samples, std::span<const double> t_grid);

// 64 pooled empirical quantiles at probabilities 0.01..0.99 plus the pooled mean, sorted.
std::vector<double> default_t_grid(std::span<const double> a, std::span<const double> b);

enum class Verdict { consistent, violated, inconclusive };
const char* to_string(Verdict v);

struct OrderVerdict {
    Verdict verdict;
    std::vector<double> violation_points;
    double confidence;
};

struct ConvexOrderOptions {
    std::size_t bootstrap_rounds = 1000;
    double level = 0.99;
    bool serial = false; // use the serial reference bootstrap kernel
};

// Tests low <=_CX high through stop-loss dominance. With D(t) = SL_high(t) -
// SL_low(t), q(t) is the upper edge of a bootstrap percentile band for D that
// holds simultaneously over the grid at the given level:
//   violated     q(t) < 0 on at least two adjacent grid points
//   consistent   q(t) >= 0 on every grid point
//   inconclusive otherwise
// Throws PreconditionError when the sample means differ by more than 3 joint SE.
OrderVerdict convex_order_test(std::span<const double> samples_low, std::span<const double> samples_high,
                               std::span<const double> t_grid, const RandomStream& stream,
                               const ConvexOrderOptions& options = {});
// Same, on default_t_grid(low, high).
OrderVerdict convex_order_test(std::span<const double> samples_low, std::span<const double> samples_high,
                               const RandomStream& stream, const ConvexOrderOptions& options = {});

// Generalized Pareto tail fit of importance weights.
struct KhatResult {
    double khat;
    std::size_t tail_count;
    double threshold;      // weight value at the tail cutoff
    bool constant_weights; // tail exceedances numerically zero; khat reported as 0
};

// Fits the M = min(ceil(0.2 S), ceil(3 sqrt(S))) largest weights with the
// Zhang-Stephens profile posterior mean. Needs S >= 25.
KhatResult pareto_khat(std::span<const double> weights);
// Same, from log-weights (avoids overflow for extreme weights).
KhatResult pareto_khat_log(std::span<const double> log_weights);

struct VarianceReport {
    double mean;
    double variance;
    double variance_of_log;
    // Standard errors, used by 3-SE comparisons.
    double mean_se;
    double variance_se;
    double log_mean;
    double log_mean_se;
};

VarianceReport variance_report(std::span<const double> samples);

} // namespace mco
