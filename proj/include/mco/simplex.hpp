#pragma once

#include <span>
#include <string>
#include <vector>

#include "mco/random_stream.hpp"

namespace mco {

// Coefficients alpha in the K-simplex: nonnegative, summing to one (abs tol 1e-12).
class SimplexVector {
public:
    explicit SimplexVector(std::vector<double> coefficients);

    std::size_t size() const { return c_.size(); }
    double operator[](std::size_t i) const { return c_[i]; }
    std::span<const double> coefficients() const { return c_; }

    // alpha padded with trailing zeros to length k >= size().
    SimplexVector padded(std::size_t k) const;
    std::string to_string() const;

    friend bool operator==(const SimplexVector&, const SimplexVector&) = default;

private:
    std::vector<double> c_;
};

SimplexVector uniform(std::size_t k);
SimplexVector point_mass(std::size_t k);

// Majorization pre-order: a <=_M b iff every decreasing-sorted prefix sum of
// a is <= the matching prefix sum of b (abs tol 1e-12). uniform(K) is the
// bottom element and point_mass(K) the top.
bool precedes_m(const SimplexVector& a, const SimplexVector& b);

// uniform(K), (1/(K-1),...,0), ..., (1,0,...,0): length K, increasing in <=_M.
std::vector<SimplexVector> padded_uniform_chain(std::size_t k);

// (1-t) uniform(K) + t e_1 on an equispaced t grid over [0,1].
std::vector<SimplexVector> interpolation_chain(std::size_t k, std::size_t steps);

// Symmetric Dirichlet(concentration) draw.
SimplexVector sample_dirichlet(std::size_t k, double concentration, Engine& eng);
SimplexVector sample_dirichlet(std::size_t k, double concentration, const RandomStream& stream);

} // namespace mco
