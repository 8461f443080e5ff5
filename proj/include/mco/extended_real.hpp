#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <ostream>
#include <string>

#include "mco/errors.hpp"

namespace mco {

// A real number or +/- infinity. NaN is rejected at construction, so every
// value that survives is ordered.
class ExtendedReal {
public:
    constexpr ExtendedReal() = default;
    ExtendedReal(double v) : v_(v) { // NOLINT(google-explicit-constructor)
        if (std::isnan(v)) throw DomainError("ExtendedReal: NaN is not an extended real");
    }

    static ExtendedReal infinity() { return {std::numeric_limits<double>::infinity()}; }
    static ExtendedReal neg_infinity() { return {-std::numeric_limits<double>::infinity()}; }

    double value() const { return v_; }
    bool is_finite() const { return std::isfinite(v_); }
    bool is_pos_inf() const { return std::isinf(v_) && v_ > 0; }
    bool is_neg_inf() const { return std::isinf(v_) && v_ < 0; }

    // Raises DomainError on inf - inf.
    friend ExtendedReal operator+(ExtendedReal a, ExtendedReal b) { return {a.v_ + b.v_}; }
    friend ExtendedReal operator-(ExtendedReal a, ExtendedReal b) { return {a.v_ - b.v_}; }
    friend ExtendedReal operator-(ExtendedReal a) { return {-a.v_}; }

    friend bool operator==(ExtendedReal a, ExtendedReal b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(ExtendedReal a, ExtendedReal b) {
        if (a.v_ < b.v_) return std::strong_ordering::less;
        if (a.v_ > b.v_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    std::string to_string() const;

private:
    double v_ = 0.0;
};

std::ostream& operator<<(std::ostream& os, ExtendedReal x);

} // namespace mco
