#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "mco/joint_samplers.hpp"
#include "mco/kernels.hpp"
#include "mco/order_diagnostics.hpp"
#include "oracles.hpp"

using namespace mco;
using doctest::Approx;

namespace {

std::vector<double> sums(const JointSampler& s, const std::vector<double>& alpha, std::size_t n, std::uint64_t seed) {
    std::vector<double> log_a;
    for (double a : alpha) log_a.push_back(std::log(a));
    const auto w = sample_log_weights(s, RandomStream(seed), n);
    std::vector<double> out(n);
    for (std::size_t r = 0; r < n; ++r) out[r] = std::exp(kernels::log_combination(w.row(r), log_a));
    return out;
}

} // namespace

TEST_CASE("stop-loss transform") {
    const std::vector<double> c(10, 2.0);
    const std::vector<double> grid = {0.5, 1.9, 2.0, 3.0};
    const auto sc = stop_loss_curve(c, grid);
    for (std::size_t g = 0; g < grid.size(); ++g) {
        CHECK(sc.values[g] == std::max(2.0 - grid[g], 0.0));
        CHECK(sc.std_errors[g] == 0.0);
    }

    const auto x = sample(ScalarModel::gamma(2, 2), RandomStream(1), 1000);
    const double lo = *std::min_element(x.begin(), x.end());
    const std::vector<double> below = {lo - 0.5};
    CHECK(stop_loss_curve(x, below).values[0] == Approx(oracle::sample_mean(x) - below[0]).epsilon(1e-12));

    const auto ln = sample(ScalarModel::lognormal(0, 1), RandomStream(2), 400000);
    const std::vector<double> one = {1.0};
    const auto sl = stop_loss_curve(ln, one);
    const double quad = oracle::positive_line([](double v) {
        const double z = std::log(v);
        return std::max(v - 1.0, 0.0) * oracle::normal_pdf(z) / v;
    });
    CHECK(quad == Approx(std::exp(0.5) * oracle::normal_cdf(1.0) - 0.5).epsilon(1e-8));
    CHECK(std::abs(sl.values[0] - quad) < 3.0 * sl.std_errors[0]);
}

TEST_CASE("stop-loss curves are nonincreasing and convex") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto x = sample(ScalarModel::inverse_gamma(3, 2), RandomStream(seed), 5000);
        std::vector<double> grid;
        for (int i = 0; i <= 40; ++i) grid.push_back(0.05 * i);
        const auto sl = stop_loss_curve(x, grid);
        for (std::size_t g = 1; g < grid.size(); ++g) CHECK(sl.values[g] <= sl.values[g - 1]);
        for (std::size_t g = 1; g + 1 < grid.size(); ++g)
            CHECK(sl.values[g - 1] - 2 * sl.values[g] + sl.values[g + 1] >= -3 * sl.std_errors[g] * 1e-9);
    }
}

TEST_CASE("default grid") {
    const auto a = sample(ScalarModel::gamma(2, 2), RandomStream(3), 500);
    const auto b = sample(ScalarModel::gamma(2, 2), RandomStream(4), 700);
    const auto g = default_t_grid(a, b);
    CHECK(g.size() == 65);
    CHECK(std::is_sorted(g.begin(), g.end()));
}

TEST_CASE("same distribution is never reported as violated") {
    const auto m = ScalarModel::gamma(2, 2);
    int violated = 0;
    for (std::uint64_t i = 0; i < 20; ++i) {
        const auto a = sample(m, RandomStream(100 + i), 2000);
        const auto b = sample(m, RandomStream(200 + i), 2000);
        violated += convex_order_test(a, b, RandomStream(i)).verdict == Verdict::violated;
    }
    CHECK(violated == 0);
}

TEST_CASE("known convex orderings") {
    const auto ln = ScalarModel::lognormal(0, 1);
    const auto anti = sums(JointSampler::antithetic(ln), {0.5, 0.5}, 4000, 1);
    const auto indep = sums(JointSampler::iid(ln, 2), {0.5, 0.5}, 4000, 2);
    CHECK(convex_order_test(anti, indep, RandomStream(3)).verdict == Verdict::consistent);

    const auto w = sample_log_weights(JointSampler::iid(ln, 2), RandomStream(4), 4000);
    std::vector<double> r1(w.rows()), r2(w.rows());
    for (std::size_t r = 0; r < w.rows(); ++r) {
        r1[r] = std::exp(w(r, 0));
        r2[r] = 0.5 * (std::exp(w(r, 0)) + std::exp(w(r, 1)));
    }
    CHECK(convex_order_test(r2, r1, RandomStream(5)).verdict == Verdict::consistent);
}

TEST_CASE("clearly separated pairs are ordered one way only") {
    const auto tight = sample(ScalarModel::gamma(4, 4), RandomStream(6), 3000);
    const auto wide = sample(ScalarModel::gamma(1, 1), RandomStream(7), 3000);
    const auto fwd = convex_order_test(tight, wide, RandomStream(8));
    const auto rev = convex_order_test(wide, tight, RandomStream(8));
    CHECK(fwd.verdict == Verdict::consistent);
    CHECK(rev.verdict == Verdict::violated);
    CHECK_FALSE(rev.violation_points.empty());
    CHECK(fwd.confidence == 0.99);
}

TEST_CASE("convex order test preconditions and options") {
    const auto a = sample(ScalarModel::gamma(2, 2), RandomStream(9), 2000);
    const auto b = sample(ScalarModel::gamma(2, 1), RandomStream(10), 2000);
    CHECK_THROWS_AS(convex_order_test(a, b, RandomStream(1)), PreconditionError);

    const auto c = sample(ScalarModel::gamma(1, 1), RandomStream(11), 2000);
    const auto grid = default_t_grid(a, c);
    ConvexOrderOptions serial;
    serial.serial = true;
    const auto p = convex_order_test(a, c, grid, RandomStream(12));
    const auto s = convex_order_test(a, c, grid, RandomStream(12), serial);
    CHECK(p.verdict == s.verdict);
    CHECK(p.violation_points == s.violation_points);
}

TEST_CASE("khat on known tails") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Engine eng = RandomStream(seed).engine();
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::vector<double> pareto(100000);
        for (double& x : pareto) x = std::pow(1.0 - u(eng), -0.5);
        const auto kp = pareto_khat(pareto);
        CHECK(kp.khat >= 0.40);
        CHECK(kp.khat <= 0.60);
        CHECK(kp.tail_count == 949);

        const auto ig = sample(ScalarModel::inverse_gamma(1.5, 1), RandomStream(50 + seed), 100000);
        const double ki = pareto_khat(ig).khat;
        CHECK(ki >= 0.55);
        CHECK(ki <= 0.85);

        const auto ln = sample_log(ScalarModel::lognormal(0, 1), RandomStream(80 + seed), 100000);
        CHECK(pareto_khat_log(ln).khat < 0.35);
    }
}

TEST_CASE("khat details") {
    const auto x = sample(ScalarModel::inverse_gamma(2, 1), RandomStream(1), 5000);
    std::vector<double> scaled = x;
    for (double& v : scaled) v *= 37.5;
    CHECK(std::abs(pareto_khat(x).khat - pareto_khat(scaled).khat) < 1e-10);

    std::vector<double> logs(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) logs[i] = std::log(x[i]) + 900.0;
    CHECK(pareto_khat_log(logs).khat == Approx(pareto_khat(x).khat).epsilon(1e-9));

    const std::vector<double> flat(1000, 3.0);
    const auto kf = pareto_khat(flat);
    CHECK(kf.constant_weights);
    CHECK(kf.khat == 0.0);

    CHECK(pareto_khat(std::vector<double>(25, 1.0)).tail_count >= 5);
    CHECK_THROWS_AS(pareto_khat(std::vector<double>(24, 1.0)), InsufficientDataError);
}

TEST_CASE("variance report") {
    const std::vector<double> c(100, 4.0);
    const auto rc = variance_report(c);
    CHECK(rc.variance == 0.0);
    CHECK(rc.variance_of_log == 0.0);

    const auto g = sample(ScalarModel::gamma(2, 2), RandomStream(2), 1000000);
    const auto rg = variance_report(g);
    CHECK(std::abs(rg.variance - 0.5) < 3 * rg.variance_se);
    CHECK(std::abs(rg.mean - 1.0) < 3 * rg.mean_se);

    const auto ln = sample(ScalarModel::lognormal(0, 1), RandomStream(3), 1000000);
    const auto rl = variance_report(ln);
    // Sample variance of n normals has standard deviation sqrt(2 / (n - 1)).
    CHECK(std::abs(rl.variance_of_log - 1.0) < 3 * std::sqrt(2.0 / (1e6 - 1)));
    CHECK(std::abs(rl.log_mean) < 3 * rl.log_mean_se);
}
