#pragma once
// Reference computations for tests. Deliberately naive and independent of the
// library: plain series, composite Simpson quadrature, brute-force enumeration.

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

// Composite Simpson on [a, b] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 200000) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

// Integral of g(x) over (0, inf) via x = e^u.
inline double positive_line(const std::function<double(double)>& g, double lo = -60.0, double hi = 12.0,
                            int n = 400000) {
    return simpson([&](double u) { const double x = std::exp(u); return g(x) * x; }, lo, hi, n);
}

// Integral over the real line, truncated.
inline double real_line(const std::function<double(double)>& g, double half_width = 40.0, int n = 400000) {
    return simpson(g, -half_width, half_width, n);
}

// psi(x): shift to x >= 20 with the recurrence, then the asymptotic series.
inline double digamma(double x) {
    double acc = 0.0;
    while (x < 20.0) { acc -= 1.0 / x; x += 1.0; }
    const double x2 = 1.0 / (x * x);
    return acc + std::log(x) - 0.5 / x -
           x2 * (1.0 / 12 - x2 * (1.0 / 120 - x2 * (1.0 / 252 - x2 * (1.0 / 240 - x2 / 132))));
}

// psi'(x) = sum_{n>=0} 1/(x+n)^2, partial sum to N plus the integral tail
// bound 1/(x+N) which overshoots by at most 1/(x+N)^2.
inline double trigamma(double x, long n_terms = 2000000) {
    double s = 0.0;
    for (long n = n_terms - 1; n >= 0; --n) s += 1.0 / ((x + n) * (x + n));
    const double t = x + static_cast<double>(n_terms);
    return s + 1.0 / t - 0.5 / (t * t);
}

inline double gamma_pdf(double x, double shape, double rate) {
    return std::exp(shape * std::log(rate) + (shape - 1.0) * std::log(x) - rate * x - std::lgamma(shape));
}

inline double inverse_gamma_pdf(double x, double shape, double scale) {
    return std::exp(shape * std::log(scale) - (shape + 1.0) * std::log(x) - scale / x - std::lgamma(shape));
}

inline double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// E[log(sum_k alpha_k w_k)] for w_k = x[pattern[k]], x_j i.i.d. over (atoms, probs),
// by looping over every assignment of the distinct base variables.
inline double enumerate_pattern(const std::vector<double>& atoms, const std::vector<double>& probs,
                                const std::vector<int>& pattern, const std::vector<double>& alpha) {
    int bases = 0;
    for (int p : pattern) bases = std::max(bases, p + 1);
    const int n = static_cast<int>(atoms.size());
    int total = 1;
    for (int i = 0; i < bases; ++i) total *= n;
    double out = 0.0;
    for (int code = 0; code < total; ++code) {
        std::vector<int> idx(bases);
        int c = code;
        double pr = 1.0;
        for (int j = 0; j < bases; ++j) { idx[j] = c % n; c /= n; pr *= probs[idx[j]]; }
        double s = 0.0;
        for (std::size_t k = 0; k < pattern.size(); ++k) s += alpha[k] * atoms[idx[pattern[k]]];
        out += pr * std::log(s);
    }
    return out;
}

inline double sample_mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

inline double sample_var(const std::vector<double>& v) {
    const double m = sample_mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size() - 1);
}

} // namespace oracle
