#include "mco/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "mco/errors.hpp"

namespace mco {

namespace {
constexpr double kTol = 1e-12;
}

SimplexVector::SimplexVector(std::vector<double> coefficients) : c_(std::move(coefficients)) {
    if (c_.empty()) throw PreconditionError("SimplexVector must have at least one coefficient");
    double total = 0.0;
    for (double x : c_) {
        if (!(x >= 0.0) || !std::isfinite(x))
            throw PreconditionError("SimplexVector coefficients must be nonnegative");
        total += x;
    }
    if (std::abs(total - 1.0) > kTol) throw PreconditionError("SimplexVector coefficients must sum to 1");
}

SimplexVector SimplexVector::padded(std::size_t k) const {
    if (k < c_.size()) throw DimensionError("cannot pad a simplex vector to a shorter length");
    std::vector<double> out(c_);
    out.resize(k, 0.0);
    return SimplexVector(std::move(out));
}

std::string SimplexVector::to_string() const {
    std::ostringstream os;
    os.precision(17);
    for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? ";" : "") << c_[i];
    return os.str();
}

SimplexVector uniform(std::size_t k) {
    if (k == 0) throw PreconditionError("uniform requires K >= 1");
    return SimplexVector(std::vector<double>(k, 1.0 / static_cast<double>(k)));
}

SimplexVector point_mass(std::size_t k) {
    if (k == 0) throw PreconditionError("point_mass requires K >= 1");
    std::vector<double> v(k, 0.0);
    v[0] = 1.0;
    return SimplexVector(std::move(v));
}

bool precedes_m(const SimplexVector& a, const SimplexVector& b) {
    if (a.size() != b.size()) throw DimensionError("precedes_m requires equal lengths");
    std::vector<double> sa(a.coefficients().begin(), a.coefficients().end());
    std::vector<double> sb(b.coefficients().begin(), b.coefficients().end());
    std::sort(sa.begin(), sa.end(), std::greater<>());
    std::sort(sb.begin(), sb.end(), std::greater<>());
    double pa = 0.0, pb = 0.0;
    for (std::size_t i = 0; i < sa.size(); ++i) {
        pa += sa[i];
        pb += sb[i];
        if (pa > pb + kTol) return false;
    }
    return true;
}

std::vector<SimplexVector> padded_uniform_chain(std::size_t k) {
    if (k < 2) throw PreconditionError("padded_uniform_chain requires K >= 2");
    std::vector<SimplexVector> chain;
    for (std::size_t m = k; m >= 1; --m) chain.push_back(uniform(m).padded(k));
    return chain;
}

std::vector<SimplexVector> interpolation_chain(std::size_t k, std::size_t steps) {
    if (k < 2 || steps < 2) throw PreconditionError("interpolation_chain requires K >= 2 and steps >= 2");
    const double u = 1.0 / static_cast<double>(k);
    std::vector<SimplexVector> chain;
    for (std::size_t s = 0; s < steps; ++s) {
        const double t = static_cast<double>(s) / static_cast<double>(steps - 1);
        std::vector<double> v(k, (1.0 - t) * u);
        v[0] += t;
        // Renormalize away rounding so the sum is 1 to machine precision.
        double total = 0.0;
        for (double x : v) total += x;
        for (double& x : v) x /= total;
        chain.emplace_back(std::move(v));
    }
    return chain;
}

SimplexVector sample_dirichlet(std::size_t k, double concentration, Engine& eng) {
    if (k == 0 || !(concentration > 0.0) || !std::isfinite(concentration))
        throw PreconditionError("sample_dirichlet requires K >= 1 and concentration > 0");
    // Log-domain gamma draws so that small concentrations do not underflow.
    std::vector<double> logg(k);
    const bool boost_shape = concentration < 1.0;
    std::gamma_distribution<double> g(boost_shape ? concentration + 1.0 : concentration, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (auto& lg : logg) {
        lg = std::log(g(eng));
        if (boost_shape) lg += std::log(1.0 - unif(eng)) / concentration;
    }
    const double mx = *std::max_element(logg.begin(), logg.end());
    double total = 0.0;
    std::vector<double> v(k);
    for (std::size_t i = 0; i < k; ++i) total += v[i] = std::exp(logg[i] - mx);
    for (double& x : v) x /= total;
    return SimplexVector(std::move(v));
}

SimplexVector sample_dirichlet(std::size_t k, double concentration, const RandomStream& stream) {
    Engine eng = stream.engine();
    return sample_dirichlet(k, concentration, eng);
}

} // namespace mco
