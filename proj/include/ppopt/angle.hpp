#pragma once

#include <cstdint>
#include <string>

namespace ppopt {

// A rotation angle, kept exact when it is a rational multiple of pi.
// Exact angles are stored as num/den in units of pi, reduced, and
// normalized into [0, 2).  Angles that come from decimal literals fall
// back to a double in radians, normalized into [0, 2*pi).  Two float
// angles are considered equal (or zero) within 1e-12.
class Angle {
public:
    Angle() : exact_(true), num_(0), den_(1), rad_(0.0) {}

    static Angle pi_frac(std::int64_t num, std::int64_t den);
    static Angle from_radians(double r);
    static Angle zero() { return Angle(); }

    bool exact() const { return exact_; }
    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double radians() const;
    bool is_zero() const;

    Angle operator+(const Angle& o) const;
    Angle operator-() const;
    Angle& operator+=(const Angle& o) { *this = *this + o; return *this; }

    bool operator==(const Angle& o) const;
    bool operator!=(const Angle& o) const { return !(*this == o); }

    // Symbolic form for QASM: pi, pi/2, 3*pi/4, -pi/4, 0, or a decimal.
    // Exact angles above pi are printed as their negative counterpart.
    std::string to_qasm() const;

    static constexpr double kFloatTol = 1e-12;

private:
    bool exact_;
    std::int64_t num_, den_;  // value = num/den * pi, 0 <= num/den < 2
    double rad_;              // used when !exact_, in [0, 2*pi)

    void normalize();
};

}  // namespace ppopt
