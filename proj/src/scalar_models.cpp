#include "mco/scalar_models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>

#include "mco/errors.hpp"

namespace mco {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSimplexTol = 1e-12;
constexpr double kEqualMeanRelTol = 1e-10;

template <class... Ts> struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

double std_normal(Engine& eng) {
    std::normal_distribution<double> n(0.0, 1.0);
    return n(eng);
}

double uniform_open(Engine& eng) {
    // (0, 1): generate_canonical can return 0.
    for (;;) {
        double u = std::generate_canonical<double, 53>(eng);
        if (u > 0.0 && u < 1.0) return u;
    }
}

// log of a Gamma(shape, 1) draw. Boosting shape < 1 keeps tiny draws representable.
double log_std_gamma(double shape, Engine& eng) {
    if (shape < 1.0) {
        std::gamma_distribution<double> g(shape + 1.0, 1.0);
        return std::log(g(eng)) + std::log(uniform_open(eng)) / shape;
    }
    std::gamma_distribution<double> g(shape, 1.0);
    return std::log(g(eng));
}

// One-sided stable variate with Laplace transform exp(-s^a), Kanter's representation.
double log_one_sided_stable(double a, Engine& eng) {
    const double u = std::numbers::pi * uniform_open(eng);
    const double e = -std::log(uniform_open(eng));
    return std::log(std::sin(a * u)) - std::log(std::sin(u)) / a +
           (1.0 - a) / a * (std::log(std::sin((1.0 - a) * u)) - std::log(e));
}

double finite_quantile(const FiniteSupport& f, double u) {
    double cum = 0.0;
    for (std::size_t i = 0; i < f.atoms.size(); ++i) {
        cum += f.probs[i];
        if (u <= cum) return f.atoms[i];
    }
    return f.atoms.back();
}

int sign_of(double d) { return (d > 0.0) - (d < 0.0); }

} // namespace

// ---- ExtendedReal --------------------------------------------------------

std::string ExtendedReal::to_string() const {
    if (is_pos_inf()) return "inf";
    if (is_neg_inf()) return "-inf";
    std::ostringstream os;
    os.precision(17);
    os << v_;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, ExtendedReal x) { return os << x.to_string(); }

// ---- construction --------------------------------------------------------

ScalarModel ScalarModel::gamma(double shape, double rate) {
    if (!positive_finite(shape) || !positive_finite(rate))
        throw PreconditionError("Gamma requires shape > 0 and rate > 0");
    return ScalarModel(Gamma{shape, rate});
}

ScalarModel ScalarModel::inverse_gamma(double shape, double scale) {
    if (!positive_finite(shape) || !positive_finite(scale))
        throw PreconditionError("InverseGamma requires shape > 0 and scale > 0");
    return ScalarModel(InverseGamma{shape, scale});
}

ScalarModel ScalarModel::lognormal(double log_location, double log_scale) {
    if (!std::isfinite(log_location) || !positive_finite(log_scale))
        throw PreconditionError("LogNormal requires a finite location and scale > 0");
    return ScalarModel(LogNormal{log_location, log_scale});
}

ScalarModel ScalarModel::log_stable(double stability, double mean) {
    if (!(stability > 0.0 && stability < 1.0) || !positive_finite(mean))
        throw PreconditionError("LogStable requires stability in (0,1) and mean > 0");
    return ScalarModel(LogStable{stability, mean});
}

ScalarModel ScalarModel::finite_support(std::vector<double> atoms, std::vector<double> probs) {
    if (atoms.empty() || atoms.size() != probs.size())
        throw PreconditionError("FiniteSupport requires matching, nonempty atoms and probs");
    double total = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (!positive_finite(atoms[i])) throw PreconditionError("FiniteSupport atoms must be > 0");
        if (!(probs[i] >= 0.0) || !std::isfinite(probs[i]))
            throw PreconditionError("FiniteSupport probs must be >= 0");
        total += probs[i];
    }
    if (std::abs(total - 1.0) > kSimplexTol)
        throw PreconditionError("FiniteSupport probs must sum to 1");

    std::vector<std::size_t> order(atoms.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return atoms[a] < atoms[b]; });
    FiniteSupport f;
    for (auto i : order) {
        f.atoms.push_back(atoms[i]);
        f.probs.push_back(probs[i]);
    }
    return ScalarModel(std::move(f));
}

std::string ScalarModel::family() const {
    return std::visit(overloaded{
                          [](const Gamma&) { return std::string("gamma"); },
                          [](const InverseGamma&) { return std::string("inverse_gamma"); },
                          [](const LogNormal&) { return std::string("lognormal"); },
                          [](const LogStable&) { return std::string("log_stable"); },
                          [](const FiniteSupport&) { return std::string("finite_support"); },
                      },
                      v_);
}

std::string ScalarModel::describe() const {
    std::ostringstream os;
    os.precision(17);
    std::visit(overloaded{
                   [&](const Gamma& g) { os << "Gamma(" << g.shape << "," << g.rate << ")"; },
                   [&](const InverseGamma& g) {
                       os << "InverseGamma(" << g.shape << "," << g.scale << ")";
                   },
                   [&](const LogNormal& l) {
                       os << "LogNormal(" << l.log_location << "," << l.log_scale << ")";
                   },
                   [&](const LogStable& l) {
                       os << "LogStable(" << l.stability << "," << l.mean << ")";
                   },
                   [&](const FiniteSupport& f) {
                       os << "FiniteSupport(";
                       for (std::size_t i = 0; i < f.atoms.size(); ++i)
                           os << (i ? ";" : "") << f.atoms[i] << ":" << f.probs[i];
                       os << ")";
                   },
               },
               v_);
    return os.str();
}

// ---- closed forms --------------------------------------------------------

ExtendedReal mean(const ScalarModel& m) {
    return std::visit(overloaded{
                          [](const Gamma& g) { return ExtendedReal(g.shape / g.rate); },
                          [](const InverseGamma& g) {
                              if (g.shape <= 1.0) return ExtendedReal::infinity();
                              return ExtendedReal(g.scale / (g.shape - 1.0));
                          },
                          [](const LogNormal& l) {
                              return ExtendedReal(std::exp(l.log_location + 0.5 * l.log_scale * l.log_scale));
                          },
                          [](const LogStable& l) { return ExtendedReal(l.mean); },
                          [](const FiniteSupport& f) {
                              double s = 0.0;
                              for (std::size_t i = 0; i < f.atoms.size(); ++i) s += f.probs[i] * f.atoms[i];
                              return ExtendedReal(s);
                          },
                      },
                      m.params());
}

ExtendedReal variance(const ScalarModel& m) {
    return std::visit(
        overloaded{
            [](const Gamma& g) { return ExtendedReal(g.shape / (g.rate * g.rate)); },
            [](const InverseGamma& g) {
                if (g.shape <= 2.0) return ExtendedReal::infinity();
                const double am1 = g.shape - 1.0;
                return ExtendedReal(g.scale * g.scale / (am1 * am1 * (g.shape - 2.0)));
            },
            [](const LogNormal& l) {
                const double s2 = l.log_scale * l.log_scale;
                return ExtendedReal(std::expm1(s2) * std::exp(2.0 * l.log_location + s2));
            },
            [](const LogStable& l) {
                const double e2 = std::exp(2.0);
                return ExtendedReal(l.mean * l.mean * e2 *
                                    (std::exp(-std::pow(2.0, l.stability)) - std::exp(-2.0)));
            },
            [](const FiniteSupport& f) {
                double mu = 0.0;
                for (std::size_t i = 0; i < f.atoms.size(); ++i) mu += f.probs[i] * f.atoms[i];
                double v = 0.0;
                for (std::size_t i = 0; i < f.atoms.size(); ++i) {
                    const double d = f.atoms[i] - mu;
                    v += f.probs[i] * d * d;
                }
                return ExtendedReal(v);
            },
        },
        m.params());
}

ExtendedReal log_mean(const ScalarModel& m) {
    return std::visit(overloaded{
                          [](const Gamma& g) { return ExtendedReal(digamma(g.shape) - std::log(g.rate)); },
                          [](const InverseGamma& g) {
                              return ExtendedReal(std::log(g.scale) - digamma(g.shape));
                          },
                          [](const LogNormal& l) { return ExtendedReal(l.log_location); },
                          [](const LogStable&) { return ExtendedReal::neg_infinity(); },
                          [](const FiniteSupport& f) {
                              double s = 0.0;
                              for (std::size_t i = 0; i < f.atoms.size(); ++i)
                                  s += f.probs[i] * std::log(f.atoms[i]);
                              return ExtendedReal(s);
                          },
                      },
                      m.params());
}

ExtendedReal log_variance(const ScalarModel& m) {
    return std::visit(overloaded{
                          [](const Gamma& g) { return ExtendedReal(trigamma(g.shape)); },
                          [](const InverseGamma& g) { return ExtendedReal(trigamma(g.shape)); },
                          [](const LogNormal& l) { return ExtendedReal(l.log_scale * l.log_scale); },
                          [](const LogStable&) -> ExtendedReal {
                              throw NotImplementedError("log_variance is not available for LogStable");
                          },
                          [](const FiniteSupport& f) {
                              double lm = 0.0;
                              for (std::size_t i = 0; i < f.atoms.size(); ++i)
                                  lm += f.probs[i] * std::log(f.atoms[i]);
                              double v = 0.0;
                              for (std::size_t i = 0; i < f.atoms.size(); ++i) {
                                  const double d = std::log(f.atoms[i]) - lm;
                                  v += f.probs[i] * d * d;
                              }
                              return ExtendedReal(v);
                          },
                      },
                      m.params());
}

// ---- sampling ------------------------------------------------------------

double sample_log_one(const ScalarModel& m, Engine& eng) {
    return std::visit(overloaded{
                          [&](const Gamma& g) { return log_std_gamma(g.shape, eng) - std::log(g.rate); },
                          [&](const InverseGamma& g) { return std::log(g.scale) - log_std_gamma(g.shape, eng); },
                          [&](const LogNormal& l) { return l.log_location + l.log_scale * std_normal(eng); },
                          [&](const LogStable& l) {
                              return std::log(l.mean) + 1.0 - std::exp(log_one_sided_stable(l.stability, eng));
                          },
                          [&](const FiniteSupport& f) { return std::log(finite_quantile(f, uniform_open(eng))); },
                      },
                      m.params());
}

double sample_one(const ScalarModel& m, Engine& eng) {
    if (const auto* g = std::get_if<Gamma>(&m.params())) {
        std::gamma_distribution<double> d(g->shape, 1.0 / g->rate);
        return std::max(d(eng), std::numeric_limits<double>::min());
    }
    if (const auto* f = std::get_if<FiniteSupport>(&m.params()))
        return finite_quantile(*f, uniform_open(eng));
    return std::max(std::exp(sample_log_one(m, eng)), std::numeric_limits<double>::min());
}

std::vector<double> sample(const ScalarModel& m, const RandomStream& stream, std::size_t n) {
    Engine eng = stream.engine();
    std::vector<double> out(n);
    for (auto& x : out) x = sample_one(m, eng);
    return out;
}

std::vector<double> sample_log(const ScalarModel& m, const RandomStream& stream, std::size_t n) {
    Engine eng = stream.engine();
    std::vector<double> out(n);
    for (auto& x : out) x = sample_log_one(m, eng);
    return out;
}

// ---- quantiles and CDFs --------------------------------------------------

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_quantile(double u) {
    if (!(u > 0.0 && u < 1.0)) throw DomainError("normal_quantile requires u in (0,1)");
    return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * u);
}

bool has_quantile(const ScalarModel& m) { return !m.is<LogStable>(); }

double quantile(const ScalarModel& m, double u) {
    if (!(u > 0.0 && u < 1.0)) throw DomainError("quantile requires u in (0,1)");
    return std::visit(overloaded{
                          [&](const Gamma& g) { return boost::math::gamma_p_inv(g.shape, u) / g.rate; },
                          [&](const InverseGamma& g) { return g.scale / boost::math::gamma_q_inv(g.shape, u); },
                          [&](const LogNormal& l) {
                              return std::exp(l.log_location + l.log_scale * normal_quantile(u));
                          },
                          [](const LogStable&) -> double {
                              throw NotImplementedError("quantile is not available for LogStable");
                          },
                          [&](const FiniteSupport& f) { return finite_quantile(f, u); },
                      },
                      m.params());
}

double log_quantile_of_normal(const ScalarModel& m, double x) {
    // Work with the smaller tail probability to keep precision on both sides.
    const bool lower = x <= 0.0;
    const double tail = normal_cdf(lower ? x : -x);
    return std::visit(
        overloaded{
            [&](const Gamma& g) {
                const double q = lower ? boost::math::gamma_p_inv(g.shape, tail)
                                       : boost::math::gamma_q_inv(g.shape, tail);
                return std::log(q) - std::log(g.rate);
            },
            [&](const InverseGamma& g) {
                const double q = lower ? boost::math::gamma_q_inv(g.shape, tail)
                                       : boost::math::gamma_p_inv(g.shape, tail);
                return std::log(g.scale) - std::log(q);
            },
            [&](const LogNormal& l) { return l.log_location + l.log_scale * x; },
            [](const LogStable&) -> double {
                throw NotImplementedError("quantile is not available for LogStable");
            },
            [&](const FiniteSupport& f) {
                return std::log(finite_quantile(f, lower ? tail : 1.0 - tail));
            },
        },
        m.params());
}

double cdf(const ScalarModel& m, double x) {
    if (!(x > 0.0)) return 0.0;
    return std::visit(overloaded{
                          [&](const Gamma& g) { return boost::math::gamma_p(g.shape, g.rate * x); },
                          [&](const InverseGamma& g) { return boost::math::gamma_q(g.shape, g.scale / x); },
                          [&](const LogNormal& l) {
                              return normal_cdf((std::log(x) - l.log_location) / l.log_scale);
                          },
                          [](const LogStable&) -> double {
                              throw NotImplementedError("cdf is not available for LogStable");
                          },
                          [&](const FiniteSupport& f) {
                              double c = 0.0;
                              for (std::size_t i = 0; i < f.atoms.size() && f.atoms[i] <= x; ++i) c += f.probs[i];
                              return std::min(c, 1.0);
                          },
                      },
                      m.params());
}

// ---- special functions ---------------------------------------------------

double digamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("digamma requires x > 0");
    return boost::math::digamma(x);
}

double trigamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("trigamma requires x > 0");
    return boost::math::trigamma(x);
}

// ---- constructions -------------------------------------------------------

ScalarModel match_lognormal_to_invgamma(double shape, double scale, double sigma) {
    if (!(shape > 1.0)) throw InfiniteMeanError("inverse gamma with shape <= 1 has infinite mean");
    if (!positive_finite(scale) || !positive_finite(sigma))
        throw PreconditionError("match_lognormal_to_invgamma requires scale > 0 and sigma > 0");
    const double mu = std::log(scale) - std::log(shape - 1.0) - 0.5 * sigma * sigma;
    return ScalarModel::lognormal(mu, sigma);
}

HeuristicReport heuristic_equivalence_check(const ScalarModel& m1, const ScalarModel& m2) {
    const bool supported = m1.is<Gamma>() || m1.is<InverseGamma>() || m1.is<LogNormal>();
    if (!supported || m1.params().index() != m2.params().index())
        throw PreconditionError("heuristic_equivalence_check needs two gamma, inverse gamma or lognormal models");

    const ExtendedReal v1 = variance(m1), v2 = variance(m2);
    if (!v1.is_finite() || !v2.is_finite())
        throw PreconditionError("heuristic_equivalence_check needs finite variances");
    const double mu1 = mean(m1).value(), mu2 = mean(m2).value();
    if (std::abs(mu1 - mu2) > kEqualMeanRelTol * std::max(std::abs(mu1), std::abs(mu2)))
        throw PreconditionError("heuristic_equivalence_check needs equal means");

    return HeuristicReport{
        sign_of(v1.value() - v2.value()),
        sign_of(log_variance(m1).value() - log_variance(m2).value()),
        sign_of(log_mean(m1).value() - log_mean(m2).value()),
    };
}

} // namespace mco
