#pragma once

// Replication kernels. Every kernel has an OpenMP-parallel version and a plain
// serial reference; both draw replication r from stream.split(r) and reduce in
// replication order, so their outputs are bit-identical.

#include <functional>
#include <span>
#include <vector>

#include "mco/random_stream.hpp"

namespace mco::kernels {

// Fills a row of log-weights from an engine.
using RowSampler = std::function<void(Engine&, std::span<double>)>;

// log(sum_k exp(log_alpha[k] + log_w[k])) for log-simplex coefficients, skipping
// terms with log_alpha = -inf.
// log_alpha may be shorter than log_w; extra weights are ignored.
double log_combination(std::span<const double> log_w, std::span<const double> log_alpha);

// out[a][r] = log_combination(row r, log_alphas[a]). All coefficient vectors
// consume the same rows (common random numbers).
std::vector<std::vector<double>> replicate_log_combinations(const RowSampler& sampler, std::size_t row_len,
                                                            const std::vector<std::vector<double>>& log_alphas,
                                                            std::size_t reps, const RandomStream& stream);
std::vector<std::vector<double>> replicate_log_combinations_serial(const RowSampler& sampler, std::size_t row_len,
                                                                   const std::vector<std::vector<double>>& log_alphas,
                                                                   std::size_t reps, const RandomStream& stream);

struct MeanSe {
    double mean;
    double se; // sample sd / sqrt(n); 0 when n < 2
};

// Two-pass mean and standard error in index order.
MeanSe mean_and_se(std::span<const double> values);

// Bootstrap replicates of D(t) = SL_high(t) - SL_low(t), where SL is the
// empirical stop-loss transform E[(X - t)_+]. Inputs must be sorted ascending.
// Round b resamples both sets from stream.split(b). Result is rounds x grid.
std::vector<std::vector<double>> bootstrap_stop_loss_diff(std::span<const double> sorted_low,
                                                          std::span<const double> sorted_high,
                                                          std::span<const double> t_grid, std::size_t rounds,
                                                          const RandomStream& stream);
std::vector<std::vector<double>> bootstrap_stop_loss_diff_serial(std::span<const double> sorted_low,
                                                                 std::span<const double> sorted_high,
                                                                 std::span<const double> t_grid, std::size_t rounds,
                                                                 const RandomStream& stream);

} // namespace mco::kernels
