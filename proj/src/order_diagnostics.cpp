#include "mco/order_diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mco/errors.hpp"
#include "mco/kernels.hpp"

namespace mco {

namespace {

double empirical_quantile(std::span<const double> sorted, double p) {
    const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double sample_mean(std::span<const double> x) {
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double mean_se(std::span<const double> x, double m) {
    if (x.size() < 2) return 0.0;
    double ss = 0.0;
    for (double v : x) ss += (v - m) * (v - m);
    const auto n = static_cast<double>(x.size());
    return std::sqrt(ss / (n - 1.0) / n);
}

// Zhang & Stephens (2009) profile posterior mean of the GPD shape, on sorted
// nonnegative exceedances, with the weakly informative prior used by PSIS.
double gpd_shape(std::span<const double> x) {
    const std::size_t n = x.size();
    constexpr double prior = 3.0;
    const std::size_t m = 30 + static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n))));
    double xstar = x[static_cast<std::size_t>(std::floor(static_cast<double>(n) / 4.0 + 0.5)) - 1];
    if (!(xstar > 0.0)) {
        const auto pos = std::upper_bound(x.begin(), x.end(), 0.0);
        xstar = pos == x.end() ? x.back() : *pos;
    }
    std::vector<double> theta(m), log_lik(m);
    for (std::size_t j = 0; j < m; ++j) {
        theta[j] = 1.0 / x[n - 1] +
                   (1.0 - std::sqrt(static_cast<double>(m) / (static_cast<double>(j + 1) - 0.5))) / prior / xstar;
        const double a = -theta[j];
        double k = 0.0;
        for (double xi : x) k += std::log1p(a * xi);
        k /= static_cast<double>(n);
        log_lik[j] = (a == 0.0 || k == 0.0) ? -std::numeric_limits<double>::infinity()
                                            : static_cast<double>(n) * (std::log(a / k) - k - 1.0);
    }
    const double mx = *std::max_element(log_lik.begin(), log_lik.end());
    double wsum = 0.0, theta_hat = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const double w = std::exp(log_lik[j] - mx);
        wsum += w;
        theta_hat += theta[j] * w;
    }
    theta_hat /= wsum;
    double k = 0.0;
    for (double xi : x) k += std::log1p(-theta_hat * xi);
    k /= static_cast<double>(n);
    const auto nd = static_cast<double>(n);
    return (k * nd + 10.0 * 0.5) / (nd + 10.0);
}

} // namespace

StopLossCurve stop_loss_curve(std::span<const double> samples, std::span<const double> t_grid) {
    if (samples.empty()) throw PreconditionError("stop_loss_curve needs samples");
    if (!std::is_sorted(t_grid.begin(), t_grid.end())) throw PreconditionError("t grid must be increasing");
    StopLossCurve c{{t_grid.begin(), t_grid.end()}, {}, {}};
    std::vector<double> excess(samples.size());
    for (double t : t_grid) {
        for (std::size_t i = 0; i < samples.size(); ++i) excess[i] = std::max(samples[i] - t, 0.0);
        const double m = sample_mean(excess);
        c.values.push_back(m);
        c.std_errors.push_back(mean_se(excess, m));
    }
    return c;
}

std::vector<double> default_t_grid(std::span<const double> a, std::span<const double> b) {
    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    if (pooled.empty()) throw PreconditionError("default_t_grid needs samples");
    std::sort(pooled.begin(), pooled.end());
    std::vector<double> grid;
    constexpr int kPoints = 64;
    for (int i = 0; i < kPoints; ++i) grid.push_back(empirical_quantile(pooled, 0.01 + 0.98 * i / (kPoints - 1)));
    grid.push_back(sample_mean(pooled));
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::consistent: return "consistent";
    case Verdict::violated: return "violated";
    case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

OrderVerdict convex_order_test(std::span<const double> samples_low, std::span<const double> samples_high,
                               std::span<const double> t_grid, const RandomStream& stream,
                               const ConvexOrderOptions& options) {
    if (samples_low.empty() || samples_high.empty()) throw PreconditionError("convex_order_test needs samples");
    if (options.bootstrap_rounds < 1 || !(options.level > 0.0 && options.level < 1.0))
        throw PreconditionError("convex_order_test needs rounds >= 1 and level in (0,1)");

    const double m_low = sample_mean(samples_low), m_high = sample_mean(samples_high);
    const double joint_se = std::hypot(mean_se(samples_low, m_low), mean_se(samples_high, m_high));
    if (std::abs(m_low - m_high) > 3.0 * joint_se)
        throw PreconditionError("convex order requires equal means; sample means differ by more than 3 SE");

    std::vector<double> low(samples_low.begin(), samples_low.end());
    std::vector<double> high(samples_high.begin(), samples_high.end());
    std::sort(low.begin(), low.end());
    std::sort(high.begin(), high.end());

    const auto boot = options.serial
                          ? kernels::bootstrap_stop_loss_diff_serial(low, high, t_grid, options.bootstrap_rounds, stream)
                          : kernels::bootstrap_stop_loss_diff(low, high, t_grid, options.bootstrap_rounds, stream);

    // Percentile band calibrated to be simultaneous over the grid: drop the j
    // largest replicates at every t, with j the largest count such that at most
    // (1 - level) * B bootstrap curves leave the band anywhere.
    const std::size_t g_count = t_grid.size();
    const std::size_t rounds = boot.size();
    std::vector<std::size_t> max_rank(rounds, 0);
    std::vector<std::size_t> order(rounds);
    std::vector<std::vector<double>> sorted_cols(g_count, std::vector<double>(rounds));
    for (std::size_t g = 0; g < g_count; ++g) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return boot[a][g] < boot[b][g] || (boot[a][g] == boot[b][g] && a < b);
        });
        for (std::size_t r = 0; r < rounds; ++r) {
            sorted_cols[g][r] = boot[order[r]][g];
            max_rank[order[r]] = std::max(max_rank[order[r]], r);
        }
    }
    const auto allowed = static_cast<std::size_t>(std::floor((1.0 - options.level) * static_cast<double>(rounds)));
    std::vector<std::size_t> leaving(rounds + 1, 0); // leaving[j]: curves with max rank >= rounds - j
    for (std::size_t b = 0; b < rounds; ++b) ++leaving[rounds - max_rank[b]];
    std::size_t j = 0, cum = leaving[0];
    while (j + 1 < rounds && cum + leaving[j + 1] <= allowed) cum += leaving[++j];

    std::vector<bool> below(g_count);
    for (std::size_t g = 0; g < g_count; ++g) below[g] = sorted_cols[g][rounds - 1 - j] < 0.0;

    OrderVerdict out{Verdict::consistent, {}, options.level};
    bool any_below = false;
    for (std::size_t g = 0; g < g_count; ++g) {
        if (!below[g]) continue;
        any_below = true;
        const bool adjacent = (g > 0 && below[g - 1]) || (g + 1 < g_count && below[g + 1]);
        if (adjacent) out.violation_points.push_back(t_grid[g]);
    }
    if (!out.violation_points.empty())
        out.verdict = Verdict::violated;
    else if (any_below)
        out.verdict = Verdict::inconclusive;
    return out;
}

OrderVerdict convex_order_test(std::span<const double> samples_low, std::span<const double> samples_high,
                               const RandomStream& stream, const ConvexOrderOptions& options) {
    const auto grid = default_t_grid(samples_low, samples_high);
    return convex_order_test(samples_low, samples_high, grid, stream, options);
}

KhatResult pareto_khat_log(std::span<const double> log_weights) {
    const std::size_t s = log_weights.size();
    if (s < 25) throw InsufficientDataError("pareto_khat needs at least 25 weights");
    const auto sd = static_cast<double>(s);
    const auto m = static_cast<std::size_t>(std::min(std::ceil(0.2 * sd), std::ceil(3.0 * std::sqrt(sd))));
    if (m < 5 || m >= s) throw InsufficientDataError("pareto_khat needs at least 5 tail points");

    std::vector<double> sorted(log_weights.begin(), log_weights.end());
    std::sort(sorted.begin(), sorted.end());
    const double log_cut = sorted[s - m - 1];
    // Exceedances relative to the cutoff; the shape estimate is scale free.
    std::vector<double> exceed(m);
    for (std::size_t i = 0; i < m; ++i) exceed[i] = std::expm1(sorted[s - m + i] - log_cut);

    KhatResult r{0.0, m, std::exp(log_cut), false};
    if (!(exceed.back() > 1e-10)) {
        r.constant_weights = true;
        return r;
    }
    r.khat = gpd_shape(exceed);
    return r;
}

KhatResult pareto_khat(std::span<const double> weights) {
    std::vector<double> logs(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (!(weights[i] > 0.0)) throw PreconditionError("pareto_khat needs positive weights");
        logs[i] = std::log(weights[i]);
    }
    return pareto_khat_log(logs);
}

VarianceReport variance_report(std::span<const double> samples) {
    if (samples.empty()) throw PreconditionError("variance_report needs samples");
    const auto n = static_cast<double>(samples.size());
    const double m = sample_mean(samples);
    const double l0 = samples[0] > 0.0 ? std::log(samples[0]) : 0.0;
    double m2 = 0.0, m4 = 0.0, lm = 0.0;
    for (double x : samples) {
        const double d = x - m;
        m2 += d * d;
        m4 += d * d * d * d;
        lm += std::log(x) - l0;
    }
    lm = l0 + lm / n;
    double lv = 0.0;
    for (double x : samples) {
        const double d = std::log(x) - lm;
        lv += d * d;
    }
    VarianceReport r{};
    r.mean = m;
    r.variance = samples.size() > 1 ? m2 / (n - 1.0) : 0.0;
    r.variance_of_log = samples.size() > 1 ? lv / (n - 1.0) : 0.0;
    r.mean_se = samples.size() > 1 ? std::sqrt(r.variance / n) : 0.0;
    const double c2 = m2 / n, c4 = m4 / n;
    r.variance_se = std::sqrt(std::max(c4 - c2 * c2, 0.0) / n);
    r.log_mean = lm;
    r.log_mean_se = samples.size() > 1 ? std::sqrt(r.variance_of_log / n) : 0.0;
    return r;
}

} // namespace mco
