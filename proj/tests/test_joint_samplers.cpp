#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "mco/joint_samplers.hpp"
#include "oracles.hpp"

using namespace mco;
using doctest::Approx;

namespace {
const ScalarModel kCoin = ScalarModel::finite_support({1, 3}, {0.5, 0.5});

double correlation(const std::vector<double>& a, const std::vector<double>& b) {
    const double ma = oracle::sample_mean(a), mb = oracle::sample_mean(b);
    double sab = 0, saa = 0, sbb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}
} // namespace

TEST_CASE("iid finite support rows") {
    const auto w = sample_log_weights(JointSampler::iid(kCoin, 2), RandomStream(1), 1000);
    std::set<std::pair<double, double>> seen;
    for (std::size_t r = 0; r < w.rows(); ++r) {
        CHECK((w(r, 0) == 0.0 || w(r, 0) == std::log(3.0)));
        CHECK((w(r, 1) == 0.0 || w(r, 1) == std::log(3.0)));
        seen.insert({w(r, 0), w(r, 1)});
    }
    CHECK(seen.size() == 4);
    CHECK(w.cols() == 2);
    CHECK(w.stream_key() == RandomStream(1).key());
}

TEST_CASE("antithetic rows sum to twice the location") {
    const auto w = sample_log_weights(JointSampler::antithetic(ScalarModel::lognormal(0.7, 1.3)), RandomStream(2), 10000);
    for (std::size_t r = 0; r < w.rows(); ++r) CHECK(std::abs(w(r, 0) + w(r, 1) - 1.4) < 1e-14 * (1.0 + std::abs(w(r, 0))));
    const auto z = sample_log_weights(JointSampler::antithetic(ScalarModel::lognormal(0.0, 1.3)), RandomStream(2), 10000);
    for (std::size_t r = 0; r < z.rows(); ++r) CHECK(z(r, 0) + z(r, 1) == 0.0);
}

TEST_CASE("copula with identity correlation behaves like independence") {
    const auto m = ScalarModel::lognormal(0, 1);
    const auto c = sample_log_weights(JointSampler::equicorrelated_copula(m, 2, 0.0), RandomStream(3), 1000000);
    const auto i = sample_log_weights(JointSampler::iid(m, 2), RandomStream(3), 1000000);
    const double rc = correlation(c.column(0), c.column(1));
    const double ri = correlation(i.column(0), i.column(1));
    CHECK(std::abs(rc - ri) < 0.01);
}

TEST_CASE("copula marginals and correlation") {
    const auto g = ScalarModel::gamma(2, 3);
    const auto w = sample_log_weights(JointSampler::equicorrelated_copula(g, 3, 0.6), RandomStream(4), 200000);
    for (std::size_t c = 0; c < 3; ++c) {
        auto col = w.column(c);
        for (double& x : col) x = std::exp(x);
        CHECK(std::abs(oracle::sample_mean(col) - 2.0 / 3.0) < 4.0 * std::sqrt(2.0 / 9.0 / 200000));
    }
    CHECK(correlation(w.column(0), w.column(2)) > 0.5);

    // Singular boundary: rho = -1/(K-1).
    const auto b = sample_log_weights(JointSampler::equicorrelated_copula(ScalarModel::lognormal(0, 1), 3, -0.5),
                                      RandomStream(5), 1000);
    for (std::size_t r = 0; r < b.rows(); ++r) CHECK(b(r, 0) + b(r, 1) + b(r, 2) == Approx(0.0).epsilon(1e-9));

    // Deep tails of a gamma marginal stay finite.
    const auto t = sample_log_weights(JointSampler::equicorrelated_copula(ScalarModel::gamma(0.3, 1), 2, 0.99),
                                      RandomStream(6), 100000);
    for (std::size_t r = 0; r < t.rows(); ++r) CHECK(std::isfinite(t(r, 0)));
}

TEST_CASE("copula validation") {
    const auto m = ScalarModel::lognormal(0, 1);
    Eigen::MatrixXd bad(2, 2);
    bad << 1, 0.5, 0.4, 1;
    CHECK_THROWS_AS(JointSampler::gaussian_copula(m, bad), PreconditionError);
    bad << 1, 1.5, 1.5, 1;
    CHECK_THROWS_AS(JointSampler::gaussian_copula(m, bad), PreconditionError);
    bad << 2, 0, 0, 1;
    CHECK_THROWS_AS(JointSampler::gaussian_copula(m, bad), PreconditionError);
    CHECK_THROWS_AS(JointSampler::equicorrelated_copula(m, 3, -0.6), PreconditionError);
    CHECK_THROWS_AS(JointSampler::equicorrelated_copula(ScalarModel::log_stable(0.5, 1), 2, 0.0),
                    NotImplementedError);
    CHECK_THROWS_AS(JointSampler::equicorrelated_copula(ScalarModel::inverse_gamma(0.9, 1), 2, 0.0),
                    InvalidSamplerError);
}

TEST_CASE("marginal log mean") {
    CHECK(marginal_log_mean_of_weights(JointSampler::iid(ScalarModel::lognormal(0, 1), 5)) == Approx(0.5));
    const auto mix = JointSampler::exchangeable_mixture({ScalarModel::gamma(2, 2), ScalarModel::gamma(3, 3)},
                                                        {0.5, 0.5}, 4);
    CHECK(marginal_log_mean_of_weights(mix) == Approx(0.0).epsilon(1e-15));
    CHECK(marginal_log_mean_of_weights(JointSampler::repeat_pattern({kCoin}, {0, 0, 0})) == Approx(std::log(2.0)));
    const auto unequal = JointSampler::repeat_pattern({kCoin, ScalarModel::point_mass(5.0)}, {0, 1});
    CHECK_THROWS_AS(marginal_log_mean_of_weights(unequal), InvalidSamplerError);
    CHECK_THROWS_AS(marginal_log_mean_of_weights(JointSampler::iid(ScalarModel::inverse_gamma(0.5, 1), 2)),
                    InvalidSamplerError);
}

TEST_CASE("exchangeability") {
    CHECK(is_exchangeable(JointSampler::iid(ScalarModel::gamma(2, 2), 7)));
    CHECK(is_exchangeable(JointSampler::equicorrelated_copula(ScalarModel::lognormal(0, 1), 3, -0.4)));
    CHECK(is_exchangeable(JointSampler::antithetic(ScalarModel::lognormal(0, 1))));
    Eigen::MatrixXd c(3, 3);
    c << 1, 0.2, 0.0, 0.2, 1, 0.0, 0.0, 0.0, 1;
    CHECK_FALSE(is_exchangeable(JointSampler::gaussian_copula(ScalarModel::lognormal(0, 1), c)));
    CHECK_FALSE(is_exchangeable(JointSampler::repeat_pattern({kCoin, kCoin}, {0, 1, 0})));
    CHECK(is_exchangeable(JointSampler::repeat_pattern({kCoin, kCoin}, {0, 1})));
}

TEST_CASE("sm ordered pair") {
    const auto m = ScalarModel::lognormal(0, 1);
    const auto [lo, hi] = sm_ordered_pair(m, 2, -0.9, 0.9);
    CHECK(lo.dim() == 2);
    CHECK(std::get<CopulaSpec>(lo.spec()).correlation(0, 1) == -0.9);
    CHECK(std::get<CopulaSpec>(hi.spec()).correlation(0, 1) == 0.9);
    const auto [a, b] = sm_ordered_pair(m, 3, 0.2, 0.2);
    const auto wa = sample_log_weights(a, RandomStream(8), 50);
    const auto wb = sample_log_weights(b, RandomStream(8), 50);
    for (std::size_t r = 0; r < 50; ++r)
        for (std::size_t c = 0; c < 3; ++c) CHECK(wa(r, c) == wb(r, c));
    CHECK_THROWS_AS(sm_ordered_pair(m, 3, -0.6, 0.0), PreconditionError);
    CHECK_THROWS_AS(sm_ordered_pair(m, 2, 0.5, 0.1), PreconditionError);
}

TEST_CASE("identically distributed but not exchangeable") {
    const auto [two, three] = exch_counterexample(kCoin);
    CHECK(two.dim() == 2);
    CHECK(three.dim() == 3);
    CHECK_FALSE(is_exchangeable(three));
    CHECK(marginal_log_mean_of_weights(two) == marginal_log_mean_of_weights(three));
    const auto w = sample_log_weights(three, RandomStream(9), 1000);
    for (std::size_t r = 0; r < w.rows(); ++r) CHECK(w(r, 0) == w(r, 2));
}

TEST_CASE("parallel and serial sampling are bit-identical") {
    const std::vector<JointSampler> samplers = {
        JointSampler::iid(ScalarModel::gamma(0.4, 2), 5),
        JointSampler::exchangeable_mixture({ScalarModel::gamma(2, 2), ScalarModel::gamma(3, 3)}, {0.3, 0.7}, 4),
        JointSampler::equicorrelated_copula(ScalarModel::inverse_gamma(3, 2), 3, -0.3),
        JointSampler::antithetic(ScalarModel::lognormal(0, 2)),
        JointSampler::repeat_pattern({kCoin, kCoin}, {0, 1, 0}),
    };
    for (const auto& s : samplers) {
        const auto p = sample_log_weights(s, RandomStream(10), 20000);
        const auto q = sample_log_weights_serial(s, RandomStream(10), 20000);
        bool same = true;
        for (std::size_t r = 0; r < p.rows(); ++r)
            for (std::size_t c = 0; c < p.cols(); ++c) same = same && p(r, c) == q(r, c);
        CHECK(same);
    }
}
