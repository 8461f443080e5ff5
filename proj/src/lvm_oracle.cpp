#include "mco/lvm_oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "mco/errors.hpp"
#include "mco/kernels.hpp"

namespace mco {

namespace {

constexpr double kSimplexTol = 1e-12;
constexpr double kMaxEnumeration = 1e6;
const double kLog2Pi = std::log(2.0 * std::numbers::pi);

template <class... Ts> struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

void check_probability_vector(std::span<const double> p, const char* what) {
    if (p.empty()) throw PreconditionError(std::string(what) + " must be nonempty");
    double total = 0.0;
    for (double v : p) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw PreconditionError(std::string(what) + " must be nonnegative");
        total += v;
    }
    if (std::abs(total - 1.0) > kSimplexTol) throw PreconditionError(std::string(what) + " must sum to 1");
}

Eigen::MatrixXd cholesky_or_throw(const Eigen::MatrixXd& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0) throw DimensionError(std::string(what) + " must be square");
    if (!m.isApprox(m.transpose(), 1e-12)) throw PreconditionError(std::string(what) + " must be symmetric");
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success) throw PreconditionError(std::string(what) + " must be positive definite");
    return llt.matrixL();
}

double log_det_from_chol(const Eigen::MatrixXd& l) { return 2.0 * l.diagonal().array().log().sum(); }

double mahalanobis2(const Eigen::MatrixXd& chol, const Eigen::VectorXd& d) {
    return chol.triangularView<Eigen::Lower>().solve(d).squaredNorm();
}

Eigen::VectorXd std_normal_vector(Eigen::Index n, Engine& eng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = nd(eng);
    return v;
}

std::vector<IwviGapRow> gap_curve(const kernels::RowSampler& row, double log_evidence,
                                  std::span<const std::size_t> k_list, std::size_t reps, const RandomStream& stream) {
    if (reps < 2) throw PreconditionError("iwvi_gap_curve requires reps >= 2");
    std::vector<IwviGapRow> out;
    for (std::size_t k : k_list) {
        if (k == 0) throw PreconditionError("K must be >= 1");
        const std::vector<double> log_alpha(k, -std::log(static_cast<double>(k)));
        const auto values = kernels::replicate_log_combinations(row, k, {log_alpha}, reps, stream.split(k));
        const McoEstimate est = estimate_from_values(values[0]);
        out.push_back({k, est, log_evidence - est.value, 3.0 * est.std_error});
    }
    return out;
}

} // namespace

// ---- models --------------------------------------------------------------

LinearGaussianLVM::LinearGaussianLVM(Eigen::MatrixXd loading, Eigen::VectorXd offset, double noise_variance)
    : a_(std::move(loading)), b_(std::move(offset)), noise_(noise_variance) {
    if (a_.rows() < 1 || a_.cols() < 1) throw DimensionError("loading matrix must be at least 1x1");
    if (b_.size() != a_.rows()) throw DimensionError("offset length must equal the observed dimension");
    if (!(noise_ > 0.0) || !std::isfinite(noise_)) throw PreconditionError("noise variance must be > 0");
}

DiscreteLVM::DiscreteLVM(std::vector<double> prior, std::vector<std::vector<double>> likelihood)
    : prior_(std::move(prior)), lik_(std::move(likelihood)) {
    check_probability_vector(prior_, "prior");
    if (lik_.size() != prior_.size()) throw DimensionError("likelihood needs one row per latent state");
    for (const auto& row : lik_) {
        if (row.size() != lik_.front().size()) throw DimensionError("likelihood rows must have equal length");
        check_probability_vector(row, "likelihood row");
    }
}

double DiscreteLVM::evidence(std::size_t x) const {
    if (x >= observation_count()) throw DimensionError("observation index out of range");
    double s = 0.0;
    for (std::size_t z = 0; z < prior_.size(); ++z) s += prior_[z] * lik_[z][x];
    return s;
}

// ---- proposals -----------------------------------------------------------

GaussianProposal::GaussianProposal(Eigen::VectorXd mean, Eigen::MatrixXd covariance)
    : mean_(std::move(mean)), cov_(std::move(covariance)), chol_(cholesky_or_throw(cov_, "covariance")),
      log_det_(log_det_from_chol(chol_)) {
    if (mean_.size() != cov_.rows()) throw DimensionError("mean and covariance dimensions differ");
}

double GaussianProposal::log_density(const Eigen::VectorXd& z) const {
    const auto d = static_cast<double>(mean_.size());
    return -0.5 * (d * kLog2Pi + log_det_ + mahalanobis2(chol_, z - mean_));
}

Eigen::VectorXd GaussianProposal::sample(Engine& eng) const {
    return mean_ + chol_ * std_normal_vector(mean_.size(), eng);
}

StudentTProposal::StudentTProposal(Eigen::VectorXd location, Eigen::MatrixXd scale, double dof)
    : loc_(std::move(location)), scale_(std::move(scale)), chol_(cholesky_or_throw(scale_, "scale matrix")),
      log_det_(log_det_from_chol(chol_)), dof_(dof) {
    if (loc_.size() != scale_.rows()) throw DimensionError("location and scale dimensions differ");
    if (!(dof_ > 0.0) || !std::isfinite(dof_)) throw PreconditionError("degrees of freedom must be > 0");
}

double StudentTProposal::log_density(const Eigen::VectorXd& z) const {
    const auto d = static_cast<double>(loc_.size());
    const double q = mahalanobis2(chol_, z - loc_);
    return std::lgamma(0.5 * (dof_ + d)) - std::lgamma(0.5 * dof_) - 0.5 * d * std::log(dof_ * std::numbers::pi) -
           0.5 * log_det_ - 0.5 * (dof_ + d) * std::log1p(q / dof_);
}

Eigen::VectorXd StudentTProposal::sample(Engine& eng) const {
    const Eigen::VectorXd y = std_normal_vector(loc_.size(), eng);
    std::chi_squared_distribution<double> chi2(dof_);
    return loc_ + chol_ * y * std::sqrt(dof_ / chi2(eng));
}

CategoricalProposal::CategoricalProposal(std::vector<double> probs) : probs_(std::move(probs)) {
    check_probability_vector(probs_, "categorical proposal");
}

std::size_t CategoricalProposal::sample(Engine& eng) const {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double v = u(eng);
    double cum = 0.0;
    for (std::size_t z = 0; z < probs_.size(); ++z) {
        cum += probs_[z];
        if (v < cum && probs_[z] > 0.0) return z;
    }
    for (std::size_t z = probs_.size(); z-- > 0;)
        if (probs_[z] > 0.0) return z;
    return 0;
}

// ---- evidence and posterior ----------------------------------------------

double exact_log_evidence(const LinearGaussianLVM& model, const Eigen::VectorXd& x) {
    if (x.size() != model.observed_dim()) throw DimensionError("observation has the wrong dimension");
    Eigen::MatrixXd cov = model.loading() * model.loading().transpose();
    cov.diagonal().array() += model.noise_variance();
    const Eigen::MatrixXd l = cholesky_or_throw(cov, "marginal covariance");
    const auto d = static_cast<double>(x.size());
    return -0.5 * (d * kLog2Pi + log_det_from_chol(l) + mahalanobis2(l, x - model.offset()));
}

double exact_log_evidence(const DiscreteLVM& model, std::size_t x) { return std::log(model.evidence(x)); }

GaussianProposal exact_posterior(const LinearGaussianLVM& model, const Eigen::VectorXd& x) {
    if (x.size() != model.observed_dim()) throw DimensionError("observation has the wrong dimension");
    const Eigen::MatrixXd& a = model.loading();
    const double s2 = model.noise_variance();
    Eigen::MatrixXd precision = a.transpose() * a / s2;
    precision.diagonal().array() += 1.0;
    Eigen::LLT<Eigen::MatrixXd> llt(precision);
    Eigen::MatrixXd cov = llt.solve(Eigen::MatrixXd::Identity(a.cols(), a.cols()));
    cov = 0.5 * (cov + cov.transpose());
    Eigen::VectorXd mean = llt.solve(a.transpose() * (x - model.offset()) / s2);
    return {std::move(mean), std::move(cov)};
}

CategoricalProposal exact_posterior(const DiscreteLVM& model, std::size_t x) {
    const double px = model.evidence(x);
    if (!(px > 0.0)) throw PreconditionError("observation has zero evidence");
    std::vector<double> post(model.latent_count());
    double total = 0.0;
    for (std::size_t z = 0; z < post.size(); ++z) total += post[z] = model.prior(z) * model.likelihood(z, x) / px;
    for (double& p : post) p /= total;
    return CategoricalProposal(std::move(post));
}

// ---- weights -------------------------------------------------------------

double log_joint(const LinearGaussianLVM& model, const Eigen::VectorXd& x, const Eigen::VectorXd& z) {
    if (z.size() != model.latent_dim() || x.size() != model.observed_dim())
        throw DimensionError("latent or observation has the wrong dimension");
    const auto dz = static_cast<double>(z.size()), dx = static_cast<double>(x.size());
    const double s2 = model.noise_variance();
    const Eigen::VectorXd resid = x - model.loading() * z - model.offset();
    const double log_prior = -0.5 * (dz * kLog2Pi + z.squaredNorm());
    const double log_lik = -0.5 * (dx * (kLog2Pi + std::log(s2)) + resid.squaredNorm() / s2);
    return log_prior + log_lik;
}

double log_density(const ContinuousProposal& q, const Eigen::VectorXd& z) {
    return std::visit([&](const auto& p) { return p.log_density(z); }, q);
}

Eigen::VectorXd sample(const ContinuousProposal& q, Engine& eng) {
    return std::visit([&](const auto& p) { return p.sample(eng); }, q);
}

double log_weight(const LinearGaussianLVM& model, const ContinuousProposal& q, const Eigen::VectorXd& x,
                  const Eigen::VectorXd& z) {
    const double lq = log_density(q, z);
    if (!std::isfinite(lq)) throw AbsoluteContinuityError("proposal density vanishes at z");
    return log_joint(model, x, z) - lq;
}

double log_weight(const DiscreteLVM& model, const CategoricalProposal& q, std::size_t x, std::size_t z) {
    if (z >= model.latent_count() || q.probs().size() != model.latent_count())
        throw DimensionError("latent index or proposal size mismatch");
    if (!(q.prob(z) > 0.0)) throw AbsoluteContinuityError("proposal probability vanishes at z");
    return std::log(model.prior(z)) + std::log(model.likelihood(z, x)) - std::log(q.prob(z));
}

std::vector<double> draw_log_weights(const LinearGaussianLVM& model, const ContinuousProposal& q,
                                     const Eigen::VectorXd& x, std::size_t n, const RandomStream& stream) {
    Engine eng = stream.engine();
    std::vector<double> out(n);
    for (auto& lw : out) lw = log_weight(model, q, x, sample(q, eng));
    return out;
}

std::vector<IwviGapRow> iwvi_gap_curve(const LinearGaussianLVM& model, const ContinuousProposal& q,
                                       const Eigen::VectorXd& x, std::span<const std::size_t> k_list,
                                       std::size_t reps, const RandomStream& stream) {
    const kernels::RowSampler row = [&](Engine& eng, std::span<double> out) {
        for (auto& lw : out) lw = log_weight(model, q, x, sample(q, eng));
    };
    return gap_curve(row, exact_log_evidence(model, x), k_list, reps, stream);
}

std::vector<IwviGapRow> iwvi_gap_curve(const DiscreteLVM& model, const CategoricalProposal& q, std::size_t x,
                                       std::span<const std::size_t> k_list, std::size_t reps,
                                       const RandomStream& stream) {
    const kernels::RowSampler row = [&](Engine& eng, std::span<double> out) {
        for (auto& lw : out) lw = log_weight(model, q, x, q.sample(eng));
    };
    return gap_curve(row, exact_log_evidence(model, x), k_list, reps, stream);
}

// ---- f-divergences -------------------------------------------------------

const char* to_string(FDivergence f) {
    switch (f) {
    case FDivergence::kl: return "kl";
    case FDivergence::reverse_kl: return "reverse_kl";
    case FDivergence::squared_hellinger: return "squared_hellinger";
    }
    return "?";
}

double f_generator(FDivergence f, double r) {
    switch (f) {
    case FDivergence::kl: return r > 0.0 ? r * std::log(r) - r + 1.0 : 1.0;
    case FDivergence::reverse_kl:
        return r > 0.0 ? -std::log(r) + r - 1.0 : std::numeric_limits<double>::infinity();
    case FDivergence::squared_hellinger: {
        const double d = std::sqrt(r) - 1.0;
        return d * d;
    }
    }
    return 0.0;
}

double expected_f_divergence(const DiscreteLVM& model, std::span<const CategoricalProposal> per_observation,
                             std::size_t k, FDivergence f) {
    const std::size_t nz = model.latent_count(), nx = model.observation_count();
    if (k == 0) throw PreconditionError("K must be >= 1");
    if (per_observation.size() != nx) throw DimensionError("need one proposal per observation value");
    if (std::pow(static_cast<double>(nz), static_cast<double>(k)) > kMaxEnumeration)
        throw EnumerationOverflowError("|Z|^K exceeds 1e6");

    const double log_k_fact = std::lgamma(static_cast<double>(k) + 1.0);
    double total = 0.0;
    for (std::size_t x = 0; x < nx; ++x) {
        const CategoricalProposal& q = per_observation[x];
        if (q.probs().size() != nz) throw DimensionError("proposal size must equal the latent count");
        const double px = model.evidence(x);
        if (!(px > 0.0)) continue;
        std::vector<double> ratio(nz, 0.0); // p(x, z) / q_x(z)
        for (std::size_t z = 0; z < nz; ++z) {
            const double joint = model.prior(z) * model.likelihood(z, x);
            if (q.prob(z) > 0.0)
                ratio[z] = joint / q.prob(z);
            else if (joint > 0.0)
                throw AbsoluteContinuityError("proposal misses a latent state with positive joint mass");
        }
        // Walk all count vectors n_0 + ... + n_{Z-1} = K.
        std::vector<std::size_t> counts(nz, 0);
        double expectation = 0.0;
        std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t z, std::size_t left) {
            if (z + 1 == nz) {
                counts[z] = left;
                double log_p = log_k_fact, p_hat = 0.0;
                for (std::size_t j = 0; j < nz; ++j) {
                    if (counts[j] == 0) continue;
                    if (!(q.prob(j) > 0.0)) return;
                    const auto c = static_cast<double>(counts[j]);
                    log_p += c * std::log(q.prob(j)) - std::lgamma(c + 1.0);
                    p_hat += c * ratio[j];
                }
                p_hat /= static_cast<double>(k);
                expectation += std::exp(log_p) * f_generator(f, p_hat / px);
                return;
            }
            for (std::size_t c = 0; c <= left; ++c) {
                counts[z] = c;
                walk(z + 1, left - c);
            }
        };
        walk(0, k);
        total += px * expectation;
    }
    return total;
}

double expected_f_divergence(const DiscreteLVM& model, const CategoricalProposal& q, std::size_t k, FDivergence f) {
    const std::vector<CategoricalProposal> same(model.observation_count(), q);
    return expected_f_divergence(model, same, k, f);
}

// ---- k-hat ---------------------------------------------------------------

std::vector<Eigen::VectorXd> synthesize_dataset(const LinearGaussianLVM& model, std::size_t n,
                                                const RandomStream& stream) {
    Engine eng = stream.engine();
    std::normal_distribution<double> nd(0.0, 1.0);
    const double sd = std::sqrt(model.noise_variance());
    std::vector<Eigen::VectorXd> out;
    for (std::size_t i = 0; i < n; ++i) {
        const Eigen::VectorXd z = std_normal_vector(model.latent_dim(), eng);
        Eigen::VectorXd x = model.loading() * z + model.offset();
        for (Eigen::Index j = 0; j < x.size(); ++j) x(j) += sd * nd(eng);
        out.push_back(std::move(x));
    }
    return out;
}

GaussianProposal scaled_posterior_proposal(const LinearGaussianLVM& model, const Eigen::VectorXd& x,
                                           double variance_factor) {
    if (!(variance_factor > 0.0)) throw PreconditionError("variance factor must be > 0");
    const GaussianProposal post = exact_posterior(model, x);
    return {post.mean(), post.covariance() * variance_factor};
}

StudentTProposal matched_student_t(const LinearGaussianLVM& model, const Eigen::VectorXd& x, double dof) {
    const GaussianProposal post = exact_posterior(model, x);
    return {post.mean(), post.covariance(), dof};
}

std::vector<KhatResult> khat_per_observation(const LinearGaussianLVM& model, const ProposalFactory& factory,
                                             std::span<const Eigen::VectorXd> dataset, std::size_t samples,
                                             const RandomStream& stream) {
    if (samples < 25) throw InsufficientDataError("khat_per_observation needs S >= 25");
    std::vector<ContinuousProposal> proposals;
    proposals.reserve(dataset.size());
    for (const auto& x : dataset) proposals.push_back(factory(x));
    std::vector<KhatResult> out(dataset.size());
    const auto n = static_cast<std::int64_t>(dataset.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        const auto lw = draw_log_weights(model, proposals[idx], dataset[idx], samples, stream.split(idx));
        out[idx] = pareto_khat_log(lw);
    }
    return out;
}

} // namespace mco
