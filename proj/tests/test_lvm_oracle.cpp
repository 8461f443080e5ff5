#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "mco/experiments.hpp"
#include "mco/lvm_oracle.hpp"
#include "oracles.hpp"

using namespace mco;
using doctest::Approx;

namespace {

LinearGaussianLVM instance() { return default_linear_gaussian_instance(); }

Eigen::VectorXd vec(std::initializer_list<double> v) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out(i++) = x;
    return out;
}

// log N(x; A z + b, s2 I), written out by hand.
double log_lik(const LinearGaussianLVM& m, const Eigen::VectorXd& x, const Eigen::VectorXd& z) {
    const Eigen::VectorXd r = x - m.loading() * z - m.offset();
    const double d = static_cast<double>(x.size());
    return -0.5 * d * std::log(2 * std::numbers::pi * m.noise_variance()) - 0.5 * r.squaredNorm() / m.noise_variance();
}

// E over raw K-tuples, no multiset bookkeeping.
double tuple_f_divergence(const DiscreteLVM& m, const std::vector<std::vector<double>>& q, std::size_t k,
                          FDivergence f) {
    const std::size_t nz = m.latent_count();
    double total = 0.0;
    for (std::size_t x = 0; x < m.observation_count(); ++x) {
        const double px = m.evidence(x);
        std::size_t n = 1;
        for (std::size_t i = 0; i < k; ++i) n *= nz;
        for (std::size_t code = 0; code < n; ++code) {
            std::size_t c = code;
            double pr = 1.0, phat = 0.0;
            for (std::size_t i = 0; i < k; ++i) {
                const std::size_t z = c % nz;
                c /= nz;
                pr *= q[x][z];
                phat += m.prior(z) * m.likelihood(z, x) / q[x][z] / static_cast<double>(k);
            }
            total += px * pr * f_generator(f, phat / px);
        }
    }
    return total;
}

} // namespace

TEST_CASE("model validation") {
    CHECK_THROWS_AS(LinearGaussianLVM(Eigen::MatrixXd::Zero(2, 1), Eigen::VectorXd::Zero(3), 1.0), DimensionError);
    CHECK_THROWS_AS(LinearGaussianLVM(Eigen::MatrixXd::Zero(2, 1), Eigen::VectorXd::Zero(2), 0.0), PreconditionError);
    CHECK_THROWS_AS(DiscreteLVM({0.5, 0.5}, {{0.9, 0.2}, {0.1, 0.9}}), PreconditionError);
    CHECK_THROWS_AS(DiscreteLVM({0.6, 0.5}, {{0.9, 0.1}, {0.1, 0.9}}), PreconditionError);
    Eigen::MatrixXd bad(2, 2);
    bad << 1, 2, 2, 1;
    CHECK_THROWS_AS(GaussianProposal(Eigen::VectorXd::Zero(2), bad), PreconditionError);
    CHECK_THROWS_AS(StudentTProposal(Eigen::VectorXd::Zero(2), Eigen::MatrixXd::Identity(2, 2), 0.0), PreconditionError);
}

TEST_CASE("exact evidence") {
    const LinearGaussianLVM flat(Eigen::MatrixXd::Zero(1, 1), Eigen::VectorXd::Zero(1), 1.0);
    CHECK(exact_log_evidence(flat, vec({0.0})) == Approx(-0.5 * std::log(2 * std::numbers::pi)).epsilon(1e-15));
    const DiscreteLVM sym({0.5, 0.5}, {{0.9, 0.1}, {0.1, 0.9}});
    CHECK(exact_log_evidence(sym, 0) == Approx(std::log(0.5)).epsilon(1e-15));
    CHECK(exact_log_evidence(sym, 1) == Approx(std::log(0.5)).epsilon(1e-15));
}

TEST_CASE("linear-Gaussian evidence matches brute-force Monte Carlo") {
    const auto m = instance();
    const auto x = vec({0.4, -0.9, 1.1});
    Engine eng = RandomStream(1).engine();
    std::normal_distribution<double> nd;
    const std::size_t n = 10000000;
    double s = 0.0, s2 = 0.0;
    Eigen::VectorXd z(2);
    for (std::size_t i = 0; i < n; ++i) {
        z << nd(eng), nd(eng);
        const double l = std::exp(log_lik(m, x, z));
        s += l;
        s2 += l * l;
    }
    const double mean = s / n;
    const double se = std::sqrt((s2 / n - mean * mean) / n);
    CHECK(std::abs(mean - std::exp(exact_log_evidence(m, x))) < 3 * se);
}

TEST_CASE("posterior satisfies Bayes' rule") {
    const auto m = instance();
    const auto x = vec({-0.3, 0.8, 0.2});
    const auto post = exact_posterior(m, x);
    const double le = exact_log_evidence(m, x);
    Engine eng(4);
    std::normal_distribution<double> nd(0.0, 2.0);
    for (int i = 0; i < 50; ++i) {
        const auto z = vec({nd(eng), nd(eng)});
        CHECK(std::abs(post.log_density(z) + le - log_lik(m, x, z) -
                       (-std::log(2 * std::numbers::pi) - 0.5 * z.squaredNorm())) < 1e-10);
        CHECK(std::abs(log_joint(m, x, z) - log_lik(m, x, z) + std::log(2 * std::numbers::pi) + 0.5 * z.squaredNorm()) <
              1e-10);
    }

    const auto d = default_discrete_instance();
    for (std::size_t xo = 0; xo < d.observation_count(); ++xo) {
        const auto p = exact_posterior(d, xo);
        double sum = 0.0;
        for (std::size_t z = 0; z < d.latent_count(); ++z) {
            sum += p.prob(z);
            CHECK(std::abs(std::log(p.prob(z)) + exact_log_evidence(d, xo) -
                           std::log(d.prior(z) * d.likelihood(z, xo))) < 1e-10);
        }
        CHECK(std::abs(sum - 1.0) < 1e-12);
    }
}

TEST_CASE("proposal densities are normalized") {
    const StudentTProposal t1(vec({0.3}), Eigen::MatrixXd::Constant(1, 1, 0.7), 3.0);
    const double i1 = oracle::real_line([&](double z) { return std::exp(t1.log_density(vec({z}))); }, 4000.0, 4000000);
    CHECK(i1 == Approx(1.0).epsilon(1e-4));

    Eigen::MatrixXd sc(2, 2);
    sc << 1.0, 0.3, 0.3, 0.5;
    const StudentTProposal t2(vec({0.0, 0.0}), sc, 5.0);
    const GaussianProposal g2(vec({0.0, 0.0}), sc);
    const int n = 1600;
    const double h = 0.05;
    double st = 0.0, sg = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const auto z = vec({(i - n / 2 + 0.5) * h, (j - n / 2 + 0.5) * h});
            st += std::exp(t2.log_density(z));
            sg += std::exp(g2.log_density(z));
        }
    CHECK(sg * h * h == Approx(1.0).epsilon(1e-6));
    CHECK(st * h * h == Approx(1.0).epsilon(2e-3));
}

TEST_CASE("log weights") {
    const auto m = instance();
    const auto x = vec({0.5, 0.1, -0.4});
    const ContinuousProposal post = exact_posterior(m, x);
    Engine eng(3);
    for (int i = 0; i < 100; ++i)
        CHECK(std::abs(log_weight(m, post, x, sample(post, eng)) - exact_log_evidence(m, x)) < 1e-10);

    const auto d = default_discrete_instance();
    std::vector<double> prior(d.latent_count());
    for (std::size_t z = 0; z < prior.size(); ++z) prior[z] = d.prior(z);
    const CategoricalProposal q(prior);
    for (std::size_t z = 0; z < d.latent_count(); ++z)
        CHECK(log_weight(d, q, 1, z) == Approx(std::log(d.likelihood(z, 1))).epsilon(1e-14));
    CHECK_THROWS_AS(log_weight(d, CategoricalProposal({1.0, 0.0, 0.0}), 0, 1), AbsoluteContinuityError);
}

TEST_CASE("importance weights are unbiased for the evidence") {
    const auto m = instance();
    const auto x = vec({0.5, 0.1, -0.4});
    const auto post = exact_posterior(m, x);
    const std::vector<ContinuousProposal> qs = {
        GaussianProposal(post.mean() + vec({0.2, -0.1}), post.covariance() * 2.0),
        StudentTProposal(post.mean(), post.covariance(), 5.0),
    };
    for (const auto& q : qs) {
        const auto lw = draw_log_weights(m, q, x, 1000000, RandomStream(5));
        std::vector<double> w(lw.size());
        for (std::size_t i = 0; i < lw.size(); ++i) w[i] = std::exp(lw[i]);
        const double mean = oracle::sample_mean(w);
        const double se = std::sqrt(oracle::sample_var(w) / w.size());
        CHECK(std::abs(mean - std::exp(exact_log_evidence(m, x))) < 4 * se);
    }
}

TEST_CASE("iwvi gap curves") {
    const auto m = instance();
    const auto x = vec({0.5, 0.1, -0.4});
    const std::vector<std::size_t> ks = {1, 2, 4, 8};
    const auto exact = iwvi_gap_curve(m, ContinuousProposal(exact_posterior(m, x)), x, ks, 1000, RandomStream(1));
    for (const auto& r : exact) {
        CHECK(std::abs(r.exact_gap) < 1e-12);
        CHECK(r.mco.std_error < 1e-12);
    }

    const auto t = iwvi_gap_curve(m, ContinuousProposal(matched_student_t(m, x, 5.0)), x, ks, 50000, RandomStream(2));
    for (std::size_t i = 0; i < t.size(); ++i) {
        CHECK(t[i].exact_gap >= -t[i].gap_ci_halfwidth);
        if (i > 0)
            CHECK(t[i].exact_gap <= t[i - 1].exact_gap + 3 * std::hypot(t[i].mco.std_error, t[i - 1].mco.std_error));
    }

    const auto d = default_discrete_instance();
    const auto dp = iwvi_gap_curve(d, exact_posterior(d, 0), 0, ks, 1000, RandomStream(3));
    for (const auto& r : dp) CHECK(std::abs(r.exact_gap) < 1e-12);
}

TEST_CASE("single-sample gap equals KL from proposal to posterior") {
    Eigen::MatrixXd a(1, 1);
    a << 1.3;
    const LinearGaussianLVM m(a, vec({0.2}), 0.6);
    const auto x = vec({1.0});
    // Posterior of z given x in one dimension, by hand.
    const double pv = 1.0 / (1.0 + 1.3 * 1.3 / 0.6);
    const double pm = pv * 1.3 * (1.0 - 0.2) / 0.6;
    const double qm = pm + 0.15, qv = pv * 1.3;
    const double kl = oracle::real_line([&](double z) {
        const double lq = -0.5 * std::log(2 * std::numbers::pi * qv) - 0.5 * (z - qm) * (z - qm) / qv;
        const double lp = -0.5 * std::log(2 * std::numbers::pi * pv) - 0.5 * (z - pm) * (z - pm) / pv;
        return std::exp(lq) * (lq - lp);
    }, 20.0);
    const std::vector<std::size_t> one = {1};
    const GaussianProposal q(vec({qm}), Eigen::MatrixXd::Constant(1, 1, qv));
    const auto row = iwvi_gap_curve(m, ContinuousProposal(q), x, one, 1000000, RandomStream(4))[0];
    CHECK(std::abs(row.exact_gap - kl) < 1e-3);
}

TEST_CASE("expected f-divergence") {
    const DiscreteLVM sym({0.5, 0.5}, {{0.9, 0.1}, {0.1, 0.9}});
    const CategoricalProposal half({0.5, 0.5});
    const double h1 = 0.5 * std::pow(std::sqrt(1.8) - 1, 2) + 0.5 * std::pow(std::sqrt(0.2) - 1, 2);
    CHECK(expected_f_divergence(sym, half, 1, FDivergence::squared_hellinger) == Approx(h1).epsilon(1e-14));
    CHECK(expected_f_divergence(sym, half, 2, FDivergence::kl) < expected_f_divergence(sym, half, 1, FDivergence::kl));

    const auto d = default_discrete_instance();
    std::vector<CategoricalProposal> post;
    std::vector<std::vector<double>> prior_q(d.observation_count());
    std::vector<CategoricalProposal> prior;
    for (std::size_t x = 0; x < d.observation_count(); ++x) {
        post.push_back(exact_posterior(d, x));
        for (std::size_t z = 0; z < d.latent_count(); ++z) prior_q[x].push_back(d.prior(z));
        prior.emplace_back(prior_q[x]);
    }
    for (FDivergence f : {FDivergence::kl, FDivergence::reverse_kl, FDivergence::squared_hellinger}) {
        double prev = INFINITY;
        for (std::size_t k = 1; k <= 6; ++k) {
            CHECK(std::abs(expected_f_divergence(d, post, k, f)) < 1e-12);
            const double v = expected_f_divergence(d, prior, k, f);
            CHECK(v == Approx(tuple_f_divergence(d, prior_q, k, f)).epsilon(1e-12));
            CHECK(v < prev);
            prev = v;
        }
    }
    CHECK(f_generator(FDivergence::kl, 1.0) == 0.0);
    CHECK(f_generator(FDivergence::reverse_kl, 1.0) == 0.0);
    CHECK(f_generator(FDivergence::squared_hellinger, 1.0) == 0.0);
    CHECK_THROWS_AS(expected_f_divergence(d, prior[0], 13, FDivergence::kl), EnumerationOverflowError);
}

TEST_CASE("f-divergence is nonincreasing on random instances") {
    Engine eng(9);
    std::uniform_real_distribution<double> u(0.05, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t nz = 2 + trial % 3, nx = 2 + trial % 2;
        std::vector<double> prior(nz), q(nz);
        std::vector<std::vector<double>> lik(nz, std::vector<double>(nx));
        double sp = 0, sq = 0;
        for (std::size_t z = 0; z < nz; ++z) {
            sp += prior[z] = u(eng);
            sq += q[z] = u(eng);
            double sl = 0;
            for (auto& v : lik[z]) sl += v = u(eng);
            for (auto& v : lik[z]) v /= sl;
        }
        for (auto& v : prior) v /= sp;
        for (auto& v : q) v /= sq;
        const DiscreteLVM d(prior, lik);
        for (FDivergence f : {FDivergence::kl, FDivergence::reverse_kl, FDivergence::squared_hellinger}) {
            double prev = INFINITY;
            for (std::size_t k = 1; k <= 5; ++k) {
                const double v = expected_f_divergence(d, CategoricalProposal(q), k, f);
                CHECK(v <= prev);
                prev = v;
            }
        }
    }
}

TEST_CASE("k-hat per observation") {
    const auto m = instance();
    const auto data = synthesize_dataset(m, 20, RandomStream(1));
    CHECK(data.size() == 20);
    CHECK(data[0].size() == 3);
    const ProposalFactory post = [&](const Eigen::VectorXd& x) { return ContinuousProposal(exact_posterior(m, x)); };
    for (const auto& r : khat_per_observation(m, post, data, 2000, RandomStream(2))) CHECK(r.constant_weights);

    const ProposalFactory narrow = [&](const Eigen::VectorXd& x) {
        return ContinuousProposal(scaled_posterior_proposal(m, x, 0.25));
    };
    const auto rn = khat_per_observation(m, narrow, data, 10000, RandomStream(3));
    std::vector<double> ks;
    for (const auto& r : rn) ks.push_back(r.khat);
    std::sort(ks.begin(), ks.end());
    CHECK(ks[10] > 0.5);
    CHECK(khat_per_observation(m, narrow, data, 500, RandomStream(4))[7].khat ==
          khat_per_observation(m, narrow, data, 500, RandomStream(4))[7].khat);
}
