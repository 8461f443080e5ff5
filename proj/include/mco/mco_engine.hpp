#pragma once

#include <functional>
#include <span>
#include <vector>

#include "mco/extended_real.hpp"
#include "mco/joint_samplers.hpp"
#include "mco/random_stream.hpp"
#include "mco/scalar_models.hpp"
#include "mco/simplex.hpp"

namespace mco {

// Monte Carlo estimate of L_alpha(Q) = E[log(alpha^T w)] in nats.
struct McoEstimate {
    double value;
    double std_error; // sd of per-replication values / sqrt(reps)
    std::size_t reps;
};

// Likelihood gap log(mu) - L. Jensen makes it nonnegative in expectation.
struct GapReport {
    double log_mu;
    McoEstimate mco;
    double gap;
    double gap_ci_halfwidth; // 3 * std_error
};

McoEstimate estimate_from_values(std::span<const double> per_replication);

// Requires alpha.size() == s.dim() and reps >= 2.
McoEstimate mco_weighted(const JointSampler& s, const SimplexVector& alpha, std::size_t reps,
                         const RandomStream& stream);
McoEstimate mco_weighted_serial(const JointSampler& s, const SimplexVector& alpha, std::size_t reps,
                                const RandomStream& stream);

// L_K over the first K <= s.dim() weights.
McoEstimate mco_uniform(const JointSampler& s, std::size_t k, std::size_t reps, const RandomStream& stream);

// L_a, L_b and L_a - L_b evaluated on the same draws (common random numbers).
// The difference has a much smaller standard error than two independent runs.
struct PairedMco {
    McoEstimate first;
    McoEstimate second;
    McoEstimate difference;
};
PairedMco mco_paired(const JointSampler& s, const SimplexVector& a, const SimplexVector& b, std::size_t reps,
                     const RandomStream& stream);

// Exact L_alpha by enumerating the joint support. Every base model must be
// FiniteSupport and the support must have at most 1e6 atoms.
double mco_exact_finite(const JointSampler& s, const SimplexVector& alpha);

GapReport gap(const McoEstimate& est, const JointSampler& s);

struct MonotonicityRow {
    std::size_t k;
    McoEstimate mco;
    GapReport gap;
};

using SamplerFamily = std::function<JointSampler(std::size_t k)>;

// One row per K. Row K uses stream.split(K), so rows are independent.
std::vector<MonotonicityRow> monotonicity_curve(const SamplerFamily& family, std::span<const std::size_t> k_list,
                                                std::size_t reps, const RandomStream& stream);

// Second-order heuristic Var(R) / (2 mu^2) for the gap log(mu) - E[log R].
// Throws HeuristicUnavailableError when Var(R) is infinite.
double second_order_gap(const ScalarModel& m);

// log(E[R]) - E[log R] from closed forms; +inf when E[log R] = -inf.
ExtendedReal exact_gap(const ScalarModel& m);

} // namespace mco
