#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "mco/random_stream.hpp"
#include "mco/scalar_models.hpp"

namespace mco {

struct IidSpec {
    ScalarModel marginal;
    std::size_t k;
};

// Component drawn once per row, then weights i.i.d. within the row.
struct MixtureSpec {
    std::vector<ScalarModel> components;
    std::vector<double> probs;
    std::size_t k;
};

struct CopulaSpec {
    ScalarModel marginal;
    Eigen::MatrixXd correlation;
    Eigen::MatrixXd factor; // factor * factor^T == correlation
};

struct AntitheticSpec {
    ScalarModel marginal;
};

// w_k = x_{pattern[k]}, where x_j ~ base_models[j] independently.
struct RepeatPatternSpec {
    std::vector<ScalarModel> base_models;
    std::vector<std::size_t> pattern;
};

// Descriptor of a joint distribution Q of K positive weights. Immutable.
class JointSampler {
public:
    using Variant = std::variant<IidSpec, MixtureSpec, CopulaSpec, AntitheticSpec, RepeatPatternSpec>;

    static JointSampler iid(ScalarModel marginal, std::size_t k);
    static JointSampler exchangeable_mixture(std::vector<ScalarModel> components, std::vector<double> probs,
                                             std::size_t k);
    static JointSampler gaussian_copula(ScalarModel marginal, Eigen::MatrixXd correlation);
    // Correlation rho on every off-diagonal entry; rho in [-1/(K-1), 1].
    static JointSampler equicorrelated_copula(ScalarModel marginal, std::size_t k, double rho);
    static JointSampler antithetic(ScalarModel marginal);
    static JointSampler repeat_pattern(std::vector<ScalarModel> base_models, std::vector<std::size_t> pattern);

    std::size_t dim() const;
    const Variant& spec() const { return v_; }
    std::string describe() const;

    // Fill out[0..dim) with one joint draw of log-weights.
    void sample_row(Engine& eng, std::span<double> out) const;

private:
    explicit JointSampler(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

// R x K row-major log-weights, plus what produced them.
class LogWeightMatrix {
public:
    LogWeightMatrix(std::size_t rows, std::size_t cols, std::string sampler, std::uint64_t stream_key);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    std::vector<double> column(std::size_t c) const;

    const std::string& sampler() const { return sampler_; }
    std::uint64_t stream_key() const { return stream_key_; }

private:
    std::size_t rows_, cols_;
    std::vector<double> data_;
    std::string sampler_;
    std::uint64_t stream_key_;
};

// Row r is drawn from stream.split(r), so the result does not depend on the
// number of threads or on evaluation order.
LogWeightMatrix sample_log_weights(const JointSampler& s, const RandomStream& stream, std::size_t reps);
LogWeightMatrix sample_log_weights_serial(const JointSampler& s, const RandomStream& stream, std::size_t reps);

// log mu, the common marginal mean. Throws InvalidSamplerError if the
// marginals disagree or the mean is infinite.
double marginal_log_mean_of_weights(const JointSampler& s);

bool is_exchangeable(const JointSampler& s);

// Two equicorrelated Gaussian copulas with identical marginals. For Gaussian
// copulas, componentwise smaller correlation is smaller in the supermodular
// order, so first <=_SM second.
std::pair<JointSampler, JointSampler> sm_ordered_pair(const ScalarModel& marginal, std::size_t k, double rho_low,
                                                      double rho_high);

// (x, y) and (x, y, x) with x, y i.i.d. from atom_model: identically
// distributed but not exchangeable.
std::pair<JointSampler, JointSampler> exch_counterexample(const ScalarModel& atom_model);

} // namespace mco
