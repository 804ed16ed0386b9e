#include "ppopt/angle.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace ppopt {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

Angle Angle::pi_frac(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("angle denominator is zero");
    Angle a;
    a.exact_ = true;
    a.num_ = num;
    a.den_ = den;
    a.normalize();
    return a;
}

Angle Angle::from_radians(double r) {
    Angle a;
    a.exact_ = false;
    a.num_ = 0;
    a.den_ = 1;
    a.rad_ = r;
    a.normalize();
    return a;
}

void Angle::normalize() {
    if (exact_) {
        if (den_ < 0) { den_ = -den_; num_ = -num_; }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        // reduce num/den into [0, 2)
        std::int64_t two = 2 * den_;
        num_ %= two;
        if (num_ < 0) num_ += two;
        if (num_ == 0) den_ = 1;
        rad_ = 0.0;
    } else {
        rad_ = std::fmod(rad_, kTwoPi);
        if (rad_ < 0) rad_ += kTwoPi;
        if (rad_ >= kTwoPi) rad_ = 0.0;
    }
}

double Angle::radians() const {
    if (exact_) return M_PI * static_cast<double>(num_) / static_cast<double>(den_);
    return rad_;
}

bool Angle::is_zero() const {
    if (exact_) return num_ == 0;
    return rad_ < kFloatTol || kTwoPi - rad_ < kFloatTol;
}

Angle Angle::operator+(const Angle& o) const {
    if (exact_ && o.exact_) {
        std::int64_t g = std::gcd(den_, o.den_);
        std::int64_t l = den_ / g * o.den_;
        return pi_frac(num_ * (l / den_) + o.num_ * (l / o.den_), l);
    }
    return from_radians(radians() + o.radians());
}

Angle Angle::operator-() const {
    if (exact_) return pi_frac(-num_, den_);
    return from_radians(-rad_);
}

bool Angle::operator==(const Angle& o) const {
    if (exact_ && o.exact_) return num_ == o.num_ && den_ == o.den_;
    double d = std::fabs(radians() - o.radians());
    if (d > M_PI) d = kTwoPi - d;
    return d < kFloatTol;
}

std::string Angle::to_qasm() const {
    if (!exact_) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", rad_);
        return buf;
    }
    std::int64_t n = num_, d = den_;
    bool neg = false;
    if (n > d) {  // print angles in (pi, 2pi) as negative for readability
        n = 2 * d - n;
        neg = true;
    }
    std::string s = neg ? "-" : "";
    if (n == 0) return "0";
    if (n == 1 && d == 1) return s + "pi";
    if (n == 1) return s + "pi/" + std::to_string(d);
    if (d == 1) return s + std::to_string(n) + "*pi";
    return s + std::to_string(n) + "*pi/" + std::to_string(d);
}

}  // namespace ppopt
