#include "mco/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "mco/errors.hpp"

namespace mco::kernels {

double log_combination(std::span<const double> log_w, std::span<const double> log_alpha) {
    if (log_alpha.size() > log_w.size()) throw DimensionError("more coefficients than weights");
    double mx = -std::numeric_limits<double>::infinity();
    double common = std::numeric_limits<double>::quiet_NaN();
    bool all_equal = true;
    for (std::size_t k = 0; k < log_alpha.size(); ++k) {
        if (!std::isfinite(log_alpha[k])) continue;
        mx = std::max(mx, log_alpha[k] + log_w[k]);
        if (std::isnan(common)) common = log_w[k];
        all_equal = all_equal && log_w[k] == common;
    }
    if (!std::isfinite(mx)) return mx;
    // Coefficients sum to one, so equal weights give their common value exactly.
    if (all_equal) return common;
    double s = 0.0;
    for (std::size_t k = 0; k < log_alpha.size(); ++k)
        if (std::isfinite(log_alpha[k])) s += std::exp(log_alpha[k] + log_w[k] - mx);
    return mx + std::log(s);
}

namespace {

void check_alphas(std::size_t row_len, const std::vector<std::vector<double>>& log_alphas, std::size_t reps) {
    if (reps == 0) throw PreconditionError("reps must be >= 1");
    for (const auto& a : log_alphas)
        if (a.size() > row_len) throw DimensionError("coefficient vector longer than the weight row");
}

// Stop-loss of a resample given per-index counts over a sorted sample.
// idx[g] = first sorted index with x > t_grid[g].
void resampled_stop_loss(std::span<const double> sorted, std::span<const std::size_t> idx,
                         std::span<const double> t_grid, std::span<const std::uint32_t> counts,
                         std::span<double> out) {
    const std::size_t n = sorted.size();
    // Walk grid points from the right, extending suffix sums.
    double suffix_cx = 0.0, suffix_c = 0.0;
    std::size_t pos = n;
    for (std::size_t g = t_grid.size(); g-- > 0;) {
        while (pos > idx[g]) {
            --pos;
            suffix_cx += counts[pos] * sorted[pos];
            suffix_c += counts[pos];
        }
        out[g] = (suffix_cx - t_grid[g] * suffix_c) / static_cast<double>(n);
    }
}

std::vector<std::size_t> grid_index(std::span<const double> sorted, std::span<const double> t_grid) {
    std::vector<std::size_t> idx(t_grid.size());
    for (std::size_t g = 0; g < t_grid.size(); ++g)
        idx[g] = static_cast<std::size_t>(std::upper_bound(sorted.begin(), sorted.end(), t_grid[g]) - sorted.begin());
    return idx;
}

void one_round(std::span<const double> low, std::span<const double> high, std::span<const std::size_t> idx_low,
               std::span<const std::size_t> idx_high, std::span<const double> t_grid, const RandomStream& round,
               std::vector<std::uint32_t>& c_low, std::vector<std::uint32_t>& c_high, std::vector<double>& sl_low,
               std::vector<double>& sl_high, std::span<double> out) {
    Engine eng = round.engine();
    std::fill(c_low.begin(), c_low.end(), 0u);
    std::fill(c_high.begin(), c_high.end(), 0u);
    std::uniform_int_distribution<std::size_t> pick_low(0, low.size() - 1), pick_high(0, high.size() - 1);
    for (std::size_t i = 0; i < low.size(); ++i) ++c_low[pick_low(eng)];
    for (std::size_t i = 0; i < high.size(); ++i) ++c_high[pick_high(eng)];
    resampled_stop_loss(low, idx_low, t_grid, c_low, sl_low);
    resampled_stop_loss(high, idx_high, t_grid, c_high, sl_high);
    for (std::size_t g = 0; g < t_grid.size(); ++g) out[g] = sl_high[g] - sl_low[g];
}

void check_bootstrap(std::span<const double> low, std::span<const double> high, std::span<const double> t_grid) {
    if (low.empty() || high.empty()) throw PreconditionError("bootstrap needs nonempty samples");
    if (!std::is_sorted(low.begin(), low.end()) || !std::is_sorted(high.begin(), high.end()))
        throw PreconditionError("bootstrap samples must be sorted");
    if (!std::is_sorted(t_grid.begin(), t_grid.end())) throw PreconditionError("t grid must be increasing");
}

} // namespace

std::vector<std::vector<double>> replicate_log_combinations(const RowSampler& sampler, std::size_t row_len,
                                                            const std::vector<std::vector<double>>& log_alphas,
                                                            std::size_t reps, const RandomStream& stream) {
    check_alphas(row_len, log_alphas, reps);
    std::vector<std::vector<double>> out(log_alphas.size(), std::vector<double>(reps));
    const auto n = static_cast<std::int64_t>(reps);
#pragma omp parallel
    {
        std::vector<double> row(row_len);
#pragma omp for schedule(static)
        for (std::int64_t r = 0; r < n; ++r) {
            Engine eng = stream.split(static_cast<std::uint64_t>(r)).engine();
            sampler(eng, row);
            for (std::size_t a = 0; a < log_alphas.size(); ++a)
                out[a][static_cast<std::size_t>(r)] = log_combination(row, log_alphas[a]);
        }
    }
    return out;
}

std::vector<std::vector<double>> replicate_log_combinations_serial(const RowSampler& sampler, std::size_t row_len,
                                                                   const std::vector<std::vector<double>>& log_alphas,
                                                                   std::size_t reps, const RandomStream& stream) {
    check_alphas(row_len, log_alphas, reps);
    std::vector<std::vector<double>> out(log_alphas.size(), std::vector<double>(reps));
    std::vector<double> row(row_len);
    for (std::size_t r = 0; r < reps; ++r) {
        Engine eng = stream.split(r).engine();
        sampler(eng, row);
        for (std::size_t a = 0; a < log_alphas.size(); ++a) out[a][r] = log_combination(row, log_alphas[a]);
    }
    return out;
}

MeanSe mean_and_se(std::span<const double> values) {
    if (values.empty()) throw PreconditionError("mean_and_se needs at least one value");
    const auto n = static_cast<double>(values.size());
    // Accumulate offsets from the first value so that constant input is reproduced exactly.
    const double v0 = values[0];
    double s = 0.0;
    for (double v : values) s += std::isfinite(v0) ? v - v0 : v;
    const double m = std::isfinite(v0) ? v0 + s / n : s / n;
    if (values.size() < 2 || !std::isfinite(m)) return {m, 0.0};
    double ss = 0.0;
    for (double v : values) ss += (v - m) * (v - m);
    return {m, std::sqrt(ss / (n - 1.0) / n)};
}

std::vector<std::vector<double>> bootstrap_stop_loss_diff(std::span<const double> sorted_low,
                                                          std::span<const double> sorted_high,
                                                          std::span<const double> t_grid, std::size_t rounds,
                                                          const RandomStream& stream) {
    check_bootstrap(sorted_low, sorted_high, t_grid);
    const auto idx_low = grid_index(sorted_low, t_grid);
    const auto idx_high = grid_index(sorted_high, t_grid);
    std::vector<std::vector<double>> out(rounds, std::vector<double>(t_grid.size()));
    const auto n = static_cast<std::int64_t>(rounds);
#pragma omp parallel
    {
        std::vector<std::uint32_t> c_low(sorted_low.size()), c_high(sorted_high.size());
        std::vector<double> sl_low(t_grid.size()), sl_high(t_grid.size());
#pragma omp for schedule(static)
        for (std::int64_t b = 0; b < n; ++b)
            one_round(sorted_low, sorted_high, idx_low, idx_high, t_grid, stream.split(static_cast<std::uint64_t>(b)),
                      c_low, c_high, sl_low, sl_high, out[static_cast<std::size_t>(b)]);
    }
    return out;
}

std::vector<std::vector<double>> bootstrap_stop_loss_diff_serial(std::span<const double> sorted_low,
                                                                 std::span<const double> sorted_high,
                                                                 std::span<const double> t_grid, std::size_t rounds,
                                                                 const RandomStream& stream) {
    check_bootstrap(sorted_low, sorted_high, t_grid);
    const auto idx_low = grid_index(sorted_low, t_grid);
    const auto idx_high = grid_index(sorted_high, t_grid);
    std::vector<std::vector<double>> out(rounds, std::vector<double>(t_grid.size()));
    std::vector<std::uint32_t> c_low(sorted_low.size()), c_high(sorted_high.size());
    std::vector<double> sl_low(t_grid.size()), sl_high(t_grid.size());
    for (std::size_t b = 0; b < rounds; ++b)
        one_round(sorted_low, sorted_high, idx_low, idx_high, t_grid, stream.split(b), c_low, c_high, sl_low, sl_high,
                  out[b]);
    return out;
}

} // namespace mco::kernels
