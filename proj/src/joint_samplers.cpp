#include "mco/joint_samplers.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "mco/errors.hpp"

namespace mco {

namespace {

template <class... Ts> struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kCorrTol = 1e-12;
constexpr double kPsdTol = 1e-10;
constexpr double kEqualMeanRelTol = 1e-10;

void require_finite_mean(const ScalarModel& m, const char* who) {
    const ExtendedReal mu = mean(m);
    if (!mu.is_finite() || !(mu.value() > 0.0))
        throw InvalidSamplerError(std::string(who) + ": marginal " + m.describe() + " has no finite positive mean");
}

void require_quantile(const ScalarModel& m, const char* who) {
    if (!has_quantile(m))
        throw NotImplementedError(std::string(who) + ": marginal " + m.describe() + " has no quantile function");
}

std::string matrix_summary(const Eigen::MatrixXd& c) {
    std::ostringstream os;
    os.precision(17);
    os << "[";
    for (Eigen::Index i = 0; i < c.rows(); ++i) {
        os << (i ? ";" : "");
        for (Eigen::Index j = 0; j < c.cols(); ++j) os << (j ? " " : "") << c(i, j);
    }
    os << "]";
    return os.str();
}

bool is_equicorrelated(const Eigen::MatrixXd& c) {
    if (c.rows() < 2) return true;
    const double rho = c(0, 1);
    for (Eigen::Index i = 0; i < c.rows(); ++i)
        for (Eigen::Index j = 0; j < c.cols(); ++j)
            if (i != j && std::abs(c(i, j) - rho) > kCorrTol) return false;
    return true;
}

double standard_normal(Engine& eng) {
    std::normal_distribution<double> n(0.0, 1.0);
    return n(eng);
}

} // namespace

// ---- construction --------------------------------------------------------

JointSampler JointSampler::iid(ScalarModel marginal, std::size_t k) {
    if (k == 0) throw PreconditionError("IID sampler requires K >= 1");
    require_finite_mean(marginal, "IID");
    return JointSampler(IidSpec{std::move(marginal), k});
}

JointSampler JointSampler::exchangeable_mixture(std::vector<ScalarModel> components, std::vector<double> probs,
                                                std::size_t k) {
    if (k == 0) throw PreconditionError("mixture sampler requires K >= 1");
    if (components.empty() || components.size() != probs.size())
        throw PreconditionError("mixture sampler requires matching, nonempty components and probabilities");
    double total = 0.0;
    for (double p : probs) {
        if (!(p >= 0.0)) throw PreconditionError("mixture probabilities must be nonnegative");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12) throw PreconditionError("mixture probabilities must sum to 1");
    for (const auto& c : components) require_finite_mean(c, "ExchangeableMixture");
    return JointSampler(MixtureSpec{std::move(components), std::move(probs), k});
}

JointSampler JointSampler::gaussian_copula(ScalarModel marginal, Eigen::MatrixXd correlation) {
    require_finite_mean(marginal, "GaussianCopula");
    require_quantile(marginal, "GaussianCopula");
    const auto k = correlation.rows();
    if (k < 1 || correlation.cols() != k) throw DimensionError("correlation matrix must be square");
    for (Eigen::Index i = 0; i < k; ++i) {
        if (std::abs(correlation(i, i) - 1.0) > kCorrTol)
            throw PreconditionError("correlation matrix must have a unit diagonal");
        for (Eigen::Index j = 0; j < i; ++j)
            if (std::abs(correlation(i, j) - correlation(j, i)) > kCorrTol)
                throw PreconditionError("correlation matrix must be symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(correlation);
    if (eig.info() != Eigen::Success || eig.eigenvalues().minCoeff() < -kPsdTol)
        throw PreconditionError("correlation matrix must be positive semidefinite");
    // Symmetric square root tolerates singular (boundary) correlations.
    const Eigen::VectorXd root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    Eigen::MatrixXd factor = eig.eigenvectors() * root.asDiagonal() * eig.eigenvectors().transpose();
    return JointSampler(CopulaSpec{std::move(marginal), std::move(correlation), std::move(factor)});
}

JointSampler JointSampler::equicorrelated_copula(ScalarModel marginal, std::size_t k, double rho) {
    if (k == 0) throw PreconditionError("copula sampler requires K >= 1");
    if (k >= 2) {
        const double lower = -1.0 / static_cast<double>(k - 1);
        if (!(rho >= lower - kCorrTol && rho <= 1.0))
            throw PreconditionError("equicorrelation rho must lie in [-1/(K-1), 1]");
    }
    Eigen::MatrixXd c = Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k), rho);
    c.diagonal().setOnes();
    return gaussian_copula(std::move(marginal), std::move(c));
}

JointSampler JointSampler::antithetic(ScalarModel marginal) {
    require_finite_mean(marginal, "Antithetic");
    require_quantile(marginal, "Antithetic");
    return JointSampler(AntitheticSpec{std::move(marginal)});
}

JointSampler JointSampler::repeat_pattern(std::vector<ScalarModel> base_models, std::vector<std::size_t> pattern) {
    if (base_models.empty() || pattern.empty())
        throw PreconditionError("RepeatPattern requires base models and a nonempty pattern");
    for (auto idx : pattern)
        if (idx >= base_models.size()) throw PreconditionError("RepeatPattern index out of range");
    for (const auto& b : base_models) require_finite_mean(b, "RepeatPattern");
    return JointSampler(RepeatPatternSpec{std::move(base_models), std::move(pattern)});
}

std::size_t JointSampler::dim() const {
    return std::visit(overloaded{
                          [](const IidSpec& s) { return s.k; },
                          [](const MixtureSpec& s) { return s.k; },
                          [](const CopulaSpec& s) { return static_cast<std::size_t>(s.correlation.rows()); },
                          [](const AntitheticSpec&) { return std::size_t{2}; },
                          [](const RepeatPatternSpec& s) { return s.pattern.size(); },
                      },
                      v_);
}

std::string JointSampler::describe() const {
    std::ostringstream os;
    os.precision(17);
    std::visit(overloaded{
                   [&](const IidSpec& s) { os << "IID(" << s.marginal.describe() << ",K=" << s.k << ")"; },
                   [&](const MixtureSpec& s) {
                       os << "ExchangeableMixture(";
                       for (std::size_t i = 0; i < s.components.size(); ++i)
                           os << (i ? "," : "") << s.components[i].describe() << "@" << s.probs[i];
                       os << ",K=" << s.k << ")";
                   },
                   [&](const CopulaSpec& s) {
                       os << "GaussianCopula(" << s.marginal.describe() << ",R=" << matrix_summary(s.correlation)
                          << ")";
                   },
                   [&](const AntitheticSpec& s) { os << "Antithetic(" << s.marginal.describe() << ")"; },
                   [&](const RepeatPatternSpec& s) {
                       os << "RepeatPattern(";
                       for (std::size_t i = 0; i < s.base_models.size(); ++i)
                           os << (i ? "," : "") << s.base_models[i].describe();
                       os << ",pattern=";
                       for (std::size_t i = 0; i < s.pattern.size(); ++i) os << (i ? ";" : "") << s.pattern[i];
                       os << ")";
                   },
               },
               v_);
    return os.str();
}

// ---- sampling ------------------------------------------------------------

void JointSampler::sample_row(Engine& eng, std::span<double> out) const {
    if (out.size() != dim()) throw DimensionError("sample_row: output span has the wrong length");
    std::visit(overloaded{
                   [&](const IidSpec& s) {
                       for (auto& x : out) x = sample_log_one(s.marginal, eng);
                   },
                   [&](const MixtureSpec& s) {
                       std::uniform_real_distribution<double> unif(0.0, 1.0);
                       const double u = unif(eng);
                       std::size_t c = 0;
                       double cum = s.probs[0];
                       while (c + 1 < s.probs.size() && u >= cum) cum += s.probs[++c];
                       for (auto& x : out) x = sample_log_one(s.components[c], eng);
                   },
                   [&](const CopulaSpec& s) {
                       const auto k = s.factor.rows();
                       Eigen::VectorXd z(k);
                       for (Eigen::Index i = 0; i < k; ++i) z(i) = standard_normal(eng);
                       const Eigen::VectorXd x = s.factor * z;
                       for (Eigen::Index i = 0; i < k; ++i)
                           out[static_cast<std::size_t>(i)] = log_quantile_of_normal(s.marginal, x(i));
                   },
                   [&](const AntitheticSpec& s) {
                       // Countermonotone pair (U, 1 - U) through the normal scale.
                       const double z = standard_normal(eng);
                       out[0] = log_quantile_of_normal(s.marginal, z);
                       out[1] = log_quantile_of_normal(s.marginal, -z);
                   },
                   [&](const RepeatPatternSpec& s) {
                       std::vector<double> base(s.base_models.size());
                       for (std::size_t j = 0; j < base.size(); ++j) base[j] = sample_log_one(s.base_models[j], eng);
                       for (std::size_t k = 0; k < out.size(); ++k) out[k] = base[s.pattern[k]];
                   },
               },
               v_);
}

LogWeightMatrix::LogWeightMatrix(std::size_t rows, std::size_t cols, std::string sampler, std::uint64_t stream_key)
    : rows_(rows), cols_(cols), data_(rows * cols), sampler_(std::move(sampler)), stream_key_(stream_key) {
    if (rows == 0) throw PreconditionError("LogWeightMatrix requires at least one row");
}

std::vector<double> LogWeightMatrix::column(std::size_t c) const {
    if (c >= cols_) throw DimensionError("column index out of range");
    std::vector<double> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = data_[r * cols_ + c];
    return out;
}

LogWeightMatrix sample_log_weights(const JointSampler& s, const RandomStream& stream, std::size_t reps) {
    if (reps == 0) throw PreconditionError("sample_log_weights requires reps >= 1");
    LogWeightMatrix m(reps, s.dim(), s.describe(), stream.key());
    const auto n = static_cast<std::int64_t>(reps);
#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < n; ++r) {
        Engine eng = stream.split(static_cast<std::uint64_t>(r)).engine();
        s.sample_row(eng, m.row(static_cast<std::size_t>(r)));
    }
    return m;
}

LogWeightMatrix sample_log_weights_serial(const JointSampler& s, const RandomStream& stream, std::size_t reps) {
    if (reps == 0) throw PreconditionError("sample_log_weights requires reps >= 1");
    LogWeightMatrix m(reps, s.dim(), s.describe(), stream.key());
    for (std::size_t r = 0; r < reps; ++r) {
        Engine eng = stream.split(r).engine();
        s.sample_row(eng, m.row(r));
    }
    return m;
}

// ---- properties ----------------------------------------------------------

double marginal_log_mean_of_weights(const JointSampler& s) {
    return std::visit(
        overloaded{
            [](const IidSpec& x) { return std::log(mean(x.marginal).value()); },
            [](const MixtureSpec& x) {
                double m = 0.0;
                for (std::size_t i = 0; i < x.components.size(); ++i)
                    m += x.probs[i] * mean(x.components[i]).value();
                return std::log(m);
            },
            [](const CopulaSpec& x) { return std::log(mean(x.marginal).value()); },
            [](const AntitheticSpec& x) { return std::log(mean(x.marginal).value()); },
            [](const RepeatPatternSpec& x) {
                const double m0 = mean(x.base_models[x.pattern[0]]).value();
                for (auto idx : x.pattern) {
                    const double m = mean(x.base_models[idx]).value();
                    if (std::abs(m - m0) > kEqualMeanRelTol * std::max(m, m0))
                        throw InvalidSamplerError("RepeatPattern base models must share a common mean");
                }
                return std::log(m0);
            },
        },
        s.spec());
}

bool is_exchangeable(const JointSampler& s) {
    return std::visit(overloaded{
                          [](const IidSpec&) { return true; },
                          [](const MixtureSpec&) { return true; },
                          [](const CopulaSpec& x) { return is_equicorrelated(x.correlation); },
                          [](const AntitheticSpec&) { return true; },
                          [](const RepeatPatternSpec& x) {
                              const std::set<std::size_t> used(x.pattern.begin(), x.pattern.end());
                              // A single repeated draw (x, x, ..., x) is trivially exchangeable.
                              if (used.size() == 1) return true;
                              if (used.size() != x.pattern.size()) return false;
                              const auto& first = x.base_models[x.pattern[0]];
                              return std::all_of(x.pattern.begin(), x.pattern.end(),
                                                 [&](std::size_t i) { return x.base_models[i] == first; });
                          },
                      },
                      s.spec());
}

std::pair<JointSampler, JointSampler> sm_ordered_pair(const ScalarModel& marginal, std::size_t k, double rho_low,
                                                      double rho_high) {
    if (k < 2) throw PreconditionError("sm_ordered_pair requires K >= 2");
    if (!(rho_low <= rho_high)) throw PreconditionError("sm_ordered_pair requires rho_low <= rho_high");
    return {JointSampler::equicorrelated_copula(marginal, k, rho_low),
            JointSampler::equicorrelated_copula(marginal, k, rho_high)};
}

std::pair<JointSampler, JointSampler> exch_counterexample(const ScalarModel& atom_model) {
    return {JointSampler::repeat_pattern({atom_model, atom_model}, {0, 1}),
            JointSampler::repeat_pattern({atom_model, atom_model}, {0, 1, 0})};
}

} // namespace mco
