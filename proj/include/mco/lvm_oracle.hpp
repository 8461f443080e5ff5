#pragma once

#include <functional>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "mco/mco_engine.hpp"
#include "mco/order_diagnostics.hpp"
#include "mco/random_stream.hpp"

namespace mco {

// x = A z + b + eps, z ~ N(0, I_dz), eps ~ N(0, noise_variance I_dx).
class LinearGaussianLVM {
public:
    LinearGaussianLVM(Eigen::MatrixXd loading, Eigen::VectorXd offset, double noise_variance);

    const Eigen::MatrixXd& loading() const { return a_; }
    const Eigen::VectorXd& offset() const { return b_; }
    double noise_variance() const { return noise_; }
    Eigen::Index latent_dim() const { return a_.cols(); }
    Eigen::Index observed_dim() const { return a_.rows(); }

private:
    Eigen::MatrixXd a_;
    Eigen::VectorXd b_;
    double noise_;
};

// Finite latent and observation spaces. likelihood[z][x] = p(x | z).
class DiscreteLVM {
public:
    DiscreteLVM(std::vector<double> prior, std::vector<std::vector<double>> likelihood);

    std::size_t latent_count() const { return prior_.size(); }
    std::size_t observation_count() const { return lik_.front().size(); }
    double prior(std::size_t z) const { return prior_[z]; }
    double likelihood(std::size_t z, std::size_t x) const { return lik_[z][x]; }
    // p(x) by summation.
    double evidence(std::size_t x) const;

private:
    std::vector<double> prior_;
    std::vector<std::vector<double>> lik_;
};

class GaussianProposal {
public:
    GaussianProposal(Eigen::VectorXd mean, Eigen::MatrixXd covariance);
    const Eigen::VectorXd& mean() const { return mean_; }
    const Eigen::MatrixXd& covariance() const { return cov_; }
    double log_density(const Eigen::VectorXd& z) const;
    Eigen::VectorXd sample(Engine& eng) const;

private:
    Eigen::VectorXd mean_;
    Eigen::MatrixXd cov_;
    Eigen::MatrixXd chol_; // lower Cholesky factor
    double log_det_;
};

// Multivariate Student-t with location, scale matrix and dof > 0.
class StudentTProposal {
public:
    StudentTProposal(Eigen::VectorXd location, Eigen::MatrixXd scale, double dof);
    const Eigen::VectorXd& location() const { return loc_; }
    const Eigen::MatrixXd& scale() const { return scale_; }
    double dof() const { return dof_; }
    double log_density(const Eigen::VectorXd& z) const;
    Eigen::VectorXd sample(Engine& eng) const;

private:
    Eigen::VectorXd loc_;
    Eigen::MatrixXd scale_;
    Eigen::MatrixXd chol_;
    double log_det_;
    double dof_;
};

class CategoricalProposal {
public:
    explicit CategoricalProposal(std::vector<double> probs);
    std::span<const double> probs() const { return probs_; }
    double prob(std::size_t z) const { return probs_[z]; }
    std::size_t sample(Engine& eng) const;

private:
    std::vector<double> probs_;
};

using ContinuousProposal = std::variant<GaussianProposal, StudentTProposal>;
using Proposal = std::variant<GaussianProposal, StudentTProposal, CategoricalProposal>;

double exact_log_evidence(const LinearGaussianLVM& model, const Eigen::VectorXd& x);
double exact_log_evidence(const DiscreteLVM& model, std::size_t x);

// p(z | x): Gaussian via the information form, categorical via Bayes' rule.
GaussianProposal exact_posterior(const LinearGaussianLVM& model, const Eigen::VectorXd& x);
CategoricalProposal exact_posterior(const DiscreteLVM& model, std::size_t x);

double log_joint(const LinearGaussianLVM& model, const Eigen::VectorXd& x, const Eigen::VectorXd& z);
double log_density(const ContinuousProposal& q, const Eigen::VectorXd& z);
Eigen::VectorXd sample(const ContinuousProposal& q, Engine& eng);

// log p(x|z) + log p(z) - log q(z|x). Throws AbsoluteContinuityError where q vanishes.
double log_weight(const LinearGaussianLVM& model, const ContinuousProposal& q, const Eigen::VectorXd& x,
                  const Eigen::VectorXd& z);
double log_weight(const DiscreteLVM& model, const CategoricalProposal& q, std::size_t x, std::size_t z);

// Log-weights of n i.i.d. draws from q, drawn from stream.
std::vector<double> draw_log_weights(const LinearGaussianLVM& model, const ContinuousProposal& q,
                                     const Eigen::VectorXd& x, std::size_t n, const RandomStream& stream);

struct IwviGapRow {
    std::size_t k;
    McoEstimate mco;
    double exact_gap;          // exact log p(x) - estimated L_K
    double gap_ci_halfwidth;   // 3 * std_error
};

// L_K for i.i.d. proposal draws, per K in k_list (row K uses stream.split(K)).
std::vector<IwviGapRow> iwvi_gap_curve(const LinearGaussianLVM& model, const ContinuousProposal& q,
                                       const Eigen::VectorXd& x, std::span<const std::size_t> k_list,
                                       std::size_t reps, const RandomStream& stream);
std::vector<IwviGapRow> iwvi_gap_curve(const DiscreteLVM& model, const CategoricalProposal& q, std::size_t x,
                                       std::span<const std::size_t> k_list, std::size_t reps,
                                       const RandomStream& stream);

// Generators normalized so that f(1) = f'(1) = 0:
//   kl: x log x - x + 1, reverse_kl: -log x + x - 1, squared_hellinger: (sqrt x - 1)^2.
enum class FDivergence { kl, reverse_kl, squared_hellinger };
const char* to_string(FDivergence f);
double f_generator(FDivergence f, double ratio);

// Exact E[D_f(p_hat || p)] where p_hat(x) = (1/K) sum_k p(x, z_k) / q_x(z_k),
// z_k i.i.d. from q_x, by multiset enumeration over the K draws. One proposal
// per observation value, or the same proposal for all of them.
double expected_f_divergence(const DiscreteLVM& model, std::span<const CategoricalProposal> per_observation,
                             std::size_t k, FDivergence f);
double expected_f_divergence(const DiscreteLVM& model, const CategoricalProposal& q, std::size_t k, FDivergence f);

// Ancestral samples x_i ~ p(x).
std::vector<Eigen::VectorXd> synthesize_dataset(const LinearGaussianLVM& model, std::size_t n,
                                                const RandomStream& stream);

using ProposalFactory = std::function<ContinuousProposal(const Eigen::VectorXd& x)>;

// Exact posterior with covariance multiplied by variance_factor.
GaussianProposal scaled_posterior_proposal(const LinearGaussianLVM& model, const Eigen::VectorXd& x,
                                           double variance_factor);
// Student-t with the posterior mean as location and posterior covariance as scale.
StudentTProposal matched_student_t(const LinearGaussianLVM& model, const Eigen::VectorXd& x, double dof);

// For observation i, draw S weights from factory(x_i) on stream.split(i) and fit k-hat.
std::vector<KhatResult> khat_per_observation(const LinearGaussianLVM& model, const ProposalFactory& factory,
                                             std::span<const Eigen::VectorXd> dataset, std::size_t samples,
                                             const RandomStream& stream);

} // namespace mco
