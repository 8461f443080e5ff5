#include "mco/mco_engine.hpp"

#include <cmath>
#include <limits>

#include "mco/errors.hpp"
#include "mco/kernels.hpp"

namespace mco {

namespace {

constexpr double kMaxSupport = 1e6;

std::vector<double> log_coefficients(const SimplexVector& alpha) {
    std::vector<double> out(alpha.size());
    for (std::size_t i = 0; i < alpha.size(); ++i)
        out[i] = alpha[i] > 0.0 ? std::log(alpha[i]) : -std::numeric_limits<double>::infinity();
    return out;
}

kernels::RowSampler row_sampler(const JointSampler& s) {
    return [&s](Engine& eng, std::span<double> row) { s.sample_row(eng, row); };
}

void check_weighted(const JointSampler& s, const SimplexVector& alpha, std::size_t reps) {
    if (alpha.size() != s.dim()) throw DimensionError("coefficient length must equal the sampler dimension");
    if (reps < 2) throw PreconditionError("MCO estimation requires reps >= 2");
}

// Independent discrete draws, and which draw feeds each weight position.
struct DiscreteLayout {
    std::vector<const FiniteSupport*> factors;
    std::vector<std::size_t> position_factor;
};

const FiniteSupport& finite_or_throw(const ScalarModel& m) {
    if (!m.is<FiniteSupport>())
        throw PreconditionError("mco_exact_finite requires FiniteSupport base models, got " + m.describe());
    return m.as<FiniteSupport>();
}

double enumerate_layout(const DiscreteLayout& layout, const std::vector<double>& log_alpha) {
    double support = 1.0;
    for (const auto* f : layout.factors) support *= static_cast<double>(f->atoms.size());
    if (support > kMaxSupport) throw EnumerationOverflowError("joint support exceeds 1e6 atoms");

    const std::size_t nf = layout.factors.size();
    std::vector<std::size_t> digit(nf, 0);
    std::vector<double> log_w(layout.position_factor.size());
    double total = 0.0;
    for (;;) {
        double prob = 1.0;
        for (std::size_t j = 0; j < nf; ++j) prob *= layout.factors[j]->probs[digit[j]];
        if (prob > 0.0) {
            for (std::size_t k = 0; k < log_w.size(); ++k) {
                const std::size_t j = layout.position_factor[k];
                log_w[k] = std::log(layout.factors[j]->atoms[digit[j]]);
            }
            total += prob * kernels::log_combination(log_w, log_alpha);
        }
        std::size_t j = 0;
        while (j < nf && ++digit[j] == layout.factors[j]->atoms.size()) digit[j++] = 0;
        if (j == nf) break;
    }
    return total;
}

DiscreteLayout iid_layout(const FiniteSupport& f, std::size_t k) {
    DiscreteLayout l;
    for (std::size_t i = 0; i < k; ++i) {
        l.factors.push_back(&f);
        l.position_factor.push_back(i);
    }
    return l;
}

} // namespace

McoEstimate estimate_from_values(std::span<const double> per_replication) {
    const auto ms = kernels::mean_and_se(per_replication);
    return {ms.mean, ms.se, per_replication.size()};
}

McoEstimate mco_weighted(const JointSampler& s, const SimplexVector& alpha, std::size_t reps,
                         const RandomStream& stream) {
    check_weighted(s, alpha, reps);
    const auto values = kernels::replicate_log_combinations(row_sampler(s), s.dim(), {log_coefficients(alpha)}, reps,
                                                            stream);
    return estimate_from_values(values[0]);
}

McoEstimate mco_weighted_serial(const JointSampler& s, const SimplexVector& alpha, std::size_t reps,
                                const RandomStream& stream) {
    check_weighted(s, alpha, reps);
    const auto values = kernels::replicate_log_combinations_serial(row_sampler(s), s.dim(),
                                                                   {log_coefficients(alpha)}, reps, stream);
    return estimate_from_values(values[0]);
}

McoEstimate mco_uniform(const JointSampler& s, std::size_t k, std::size_t reps, const RandomStream& stream) {
    if (k == 0 || k > s.dim()) throw DimensionError("mco_uniform requires 1 <= K <= sampler dimension");
    return mco_weighted(s, uniform(k).padded(s.dim()), reps, stream);
}

PairedMco mco_paired(const JointSampler& s, const SimplexVector& a, const SimplexVector& b, std::size_t reps,
                     const RandomStream& stream) {
    check_weighted(s, a, reps);
    check_weighted(s, b, reps);
    const auto values = kernels::replicate_log_combinations(row_sampler(s), s.dim(),
                                                            {log_coefficients(a), log_coefficients(b)}, reps, stream);
    std::vector<double> diff(reps);
    for (std::size_t r = 0; r < reps; ++r) diff[r] = values[0][r] - values[1][r];
    return {estimate_from_values(values[0]), estimate_from_values(values[1]), estimate_from_values(diff)};
}

double mco_exact_finite(const JointSampler& s, const SimplexVector& alpha) {
    if (alpha.size() != s.dim()) throw DimensionError("coefficient length must equal the sampler dimension");
    const auto log_alpha = log_coefficients(alpha);
    if (const auto* x = std::get_if<IidSpec>(&s.spec()))
        return enumerate_layout(iid_layout(finite_or_throw(x->marginal), x->k), log_alpha);
    if (const auto* x = std::get_if<MixtureSpec>(&s.spec())) {
        double total = 0.0;
        for (std::size_t c = 0; c < x->components.size(); ++c)
            if (x->probs[c] > 0.0)
                total += x->probs[c] * enumerate_layout(iid_layout(finite_or_throw(x->components[c]), x->k), log_alpha);
        return total;
    }
    if (const auto* x = std::get_if<RepeatPatternSpec>(&s.spec())) {
        DiscreteLayout l;
        for (const auto& b : x->base_models) l.factors.push_back(&finite_or_throw(b));
        l.position_factor = x->pattern;
        return enumerate_layout(l, log_alpha);
    }
    throw PreconditionError("mco_exact_finite supports IID, mixture and repeat-pattern samplers only");
}

GapReport gap(const McoEstimate& est, const JointSampler& s) {
    const double log_mu = marginal_log_mean_of_weights(s);
    return {log_mu, est, log_mu - est.value, 3.0 * est.std_error};
}

std::vector<MonotonicityRow> monotonicity_curve(const SamplerFamily& family, std::span<const std::size_t> k_list,
                                                std::size_t reps, const RandomStream& stream) {
    std::vector<MonotonicityRow> rows;
    for (std::size_t k : k_list) {
        const JointSampler s = family(k);
        const McoEstimate est = mco_uniform(s, k, reps, stream.split(k));
        rows.push_back({k, est, gap(est, s)});
    }
    return rows;
}

double second_order_gap(const ScalarModel& m) {
    const ExtendedReal v = variance(m);
    const ExtendedReal mu = mean(m);
    if (!v.is_finite() || !mu.is_finite())
        throw HeuristicUnavailableError("second-order gap needs a finite variance, got " + m.describe());
    return v.value() / (2.0 * mu.value() * mu.value());
}

ExtendedReal exact_gap(const ScalarModel& m) {
    const ExtendedReal mu = mean(m);
    if (!mu.is_finite()) throw InfiniteMeanError("exact_gap needs a finite mean");
    return ExtendedReal(std::log(mu.value())) - log_mean(m);
}

} // namespace mco
