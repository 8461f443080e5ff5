#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mco/extended_real.hpp"
#include "mco/random_stream.hpp"

namespace mco {

struct Gamma {
    double shape;
    double rate;
    friend bool operator==(const Gamma&, const Gamma&) = default;
};

struct InverseGamma {
    double shape;
    double scale;
    friend bool operator==(const InverseGamma&, const InverseGamma&) = default;
};

struct LogNormal {
    double log_location;
    double log_scale;
    friend bool operator==(const LogNormal&, const LogNormal&) = default;
};

// R = mean * exp(1 - Z) where Z is one-sided stable with E[exp(-sZ)] = exp(-s^a).
// E[R] = mean, Var(R) is finite and E[log R] = -inf for every a in (0, 1).
struct LogStable {
    double stability;
    double mean;
    friend bool operator==(const LogStable&, const LogStable&) = default;
};

// Atoms are stored sorted ascending with their probabilities.
struct FiniteSupport {
    std::vector<double> atoms;
    std::vector<double> probs;
    friend bool operator==(const FiniteSupport&, const FiniteSupport&) = default;
};

// A positive univariate weight distribution with closed-form moments.
// Construct through the named factories, which validate parameters.
class ScalarModel {
public:
    using Variant = std::variant<Gamma, InverseGamma, LogNormal, LogStable, FiniteSupport>;

    static ScalarModel gamma(double shape, double rate);
    static ScalarModel inverse_gamma(double shape, double scale);
    static ScalarModel lognormal(double log_location, double log_scale);
    static ScalarModel log_stable(double stability, double mean);
    static ScalarModel finite_support(std::vector<double> atoms, std::vector<double> probs);
    static ScalarModel point_mass(double atom) { return finite_support({atom}, {1.0}); }

    const Variant& params() const { return v_; }
    template <class T> bool is() const { return std::holds_alternative<T>(v_); }
    template <class T> const T& as() const { return std::get<T>(v_); }

    std::string family() const;
    std::string describe() const;

    friend bool operator==(const ScalarModel&, const ScalarModel&) = default;

private:
    explicit ScalarModel(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

ExtendedReal mean(const ScalarModel& m);
ExtendedReal variance(const ScalarModel& m);
ExtendedReal log_mean(const ScalarModel& m);
// Throws NotImplementedError for LogStable.
ExtendedReal log_variance(const ScalarModel& m);

// One draw in the natural domain. LogStable draws below the smallest normal
// double are clamped to it so that every value stays strictly positive.
double sample_one(const ScalarModel& m, Engine& eng);
// One draw of log R. Exact in log domain for LogNormal and LogStable.
double sample_log_one(const ScalarModel& m, Engine& eng);
std::vector<double> sample(const ScalarModel& m, const RandomStream& stream, std::size_t n);
std::vector<double> sample_log(const ScalarModel& m, const RandomStream& stream, std::size_t n);

bool has_quantile(const ScalarModel& m);
// Inverse CDF for u in (0,1). Throws NotImplementedError for LogStable.
double quantile(const ScalarModel& m, double u);
// log of quantile(m, Phi(x)), evaluated without forming Phi(x) when a tail
// is involved so that |x| up to ~37 still maps to finite values.
double log_quantile_of_normal(const ScalarModel& m, double x);
// CDF at x > 0. Throws NotImplementedError for LogStable.
double cdf(const ScalarModel& m, double x);

// Standard normal CDF and quantile.
double normal_cdf(double x);
double normal_quantile(double u);

// Throw DomainError for x <= 0.
double digamma(double x);
double trigamma(double x);

// LogNormal with the same mean as InverseGamma(shape, scale) and the given
// log-scale: mu = log(scale) - log(shape - 1) - sigma^2 / 2.
ScalarModel match_lognormal_to_invgamma(double shape, double scale, double sigma);

// Three comparisons between two equal-mean models of one family. Each
// comparison is a sign: -1 (first smaller), 0 (tie), +1 (first larger).
struct HeuristicReport {
    int variance_cmp;     // sign(Var R - Var R')
    int log_variance_cmp; // sign(Var log R - Var log R')
    int log_mean_cmp;     // sign(E log R - E log R')

    bool variance_smaller() const { return variance_cmp < 0; }
    bool log_variance_smaller() const { return log_variance_cmp < 0; }
    bool log_mean_larger() const { return log_mean_cmp > 0; }
    // Smaller variance <=> smaller log-variance <=> larger log-mean.
    bool all_agree() const {
        return variance_cmp == log_variance_cmp && variance_cmp == -log_mean_cmp;
    }
};

HeuristicReport heuristic_equivalence_check(const ScalarModel& m1, const ScalarModel& m2);

} // namespace mco
