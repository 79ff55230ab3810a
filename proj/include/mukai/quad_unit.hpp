#pragma once

// Units of Z[sigma], sigma = (1+sqrt(17))/2, so sigma^2 = sigma + 4 and the
// norm form is N(x + y sigma) = x^2 + xy - 4y^2.  The unit group is
// {±u0^n} with fundamental unit u0 = 3 + 2 sigma = 4 + sqrt(17); powers of
// u0 classify the square ±2 classes of the (H,l) Picard lattice.

#include "mukai/arith.hpp"
#include "mukai/lattice.hpp"

#include <optional>
#include <utility>

namespace mukai {

class QuadraticUnit {
public:
    QuadraticUnit(Int x, Int y) : x_(std::move(x)), y_(std::move(y)) {
        Int n = norm();
        if (n != 1 && n != -1)
            throw std::invalid_argument("QuadraticUnit: norm must be +-1, got " + n.str());
    }

    const Int& x() const { return x_; }
    const Int& y() const { return y_; }

    Int norm() const { return x_ * x_ + x_ * y_ - 4 * y_ * y_; }

    static QuadraticUnit one() { return QuadraticUnit(1, 0); }
    static QuadraticUnit fundamental() { return QuadraticUnit(3, 2); }
    // (3 + 2 sigma)(-5 + 2 sigma) = 1
    static QuadraticUnit fundamental_inverse() { return QuadraticUnit(-5, 2); }

    friend QuadraticUnit operator*(const QuadraticUnit& a, const QuadraticUnit& b) {
        // sigma^2 = sigma + 4
        Int x = a.x_ * b.x_ + 4 * a.y_ * b.y_;
        Int y = a.x_ * b.y_ + a.y_ * b.x_ + a.y_ * b.y_;
        return QuadraticUnit(std::move(x), std::move(y));
    }

    friend QuadraticUnit operator-(const QuadraticUnit& a) { return QuadraticUnit(-a.x_, -a.y_); }

    friend bool operator==(const QuadraticUnit& a, const QuadraticUnit& b) {
        return a.x_ == b.x_ && a.y_ == b.y_;
    }

    // Sign in the real embedding sigma -> (1 + sqrt(17))/2: the value is
    // ((2x + y) + y sqrt(17)) / 2, decided exactly by comparing squares.
    int sign_real() const { return sign_p_q_sqrt17(2 * x_ + y_, y_); }

    // Compares the embedded value against 1 exactly.
    int compare_one() const { return sign_p_q_sqrt17(2 * (x_ - 1) + y_, y_); }

private:
    static int sign_p_q_sqrt17(const Int& p, const Int& q) {
        if (p == 0 && q == 0) return 0;
        if (p >= 0 && q >= 0) return 1;
        if (p <= 0 && q <= 0) return -1;
        Int lhs = p * p, rhs = 17 * q * q;
        if (p > 0) return lhs > rhs ? 1 : (lhs < rhs ? -1 : 0); // q < 0
        return rhs > lhs ? 1 : (rhs < lhs ? -1 : 0);            // p < 0, q > 0
    }

    Int x_, y_;
};

struct UnitPowerClass {
    int sign; // +1 or -1: b - a sigma = sign * u0^exponent
    long exponent;
};

// Writes b - a sigma for C = aH + bl as ±(3 + 2 sigma)^n.  Only classes with
// C.C = ±2 are units of Z[sigma]; C.C = -2 iff n is even.  Failure to land on
// 1 would falsify the unit-group description, hence the exception.
inline UnitPowerClass unit_power_classify(const LatticePtr& lattice, const DivisorClass& C) {
    if (lattice->rank() != 2 || lattice->gram().at(0, 0) != 8 || lattice->gram().at(0, 1) != 1 ||
        lattice->gram().at(1, 1) != -2)
        throw std::invalid_argument("unit_power_classify: expects the (H,l) lattice [[8,1],[1,-2]]");
    if (!C.lattice()->same_as(*lattice))
        throw std::invalid_argument("unit_power_classify: class from another lattice");
    if (!C.integral()) throw std::invalid_argument("unit_power_classify: non-integral class");
    Rat sq = self_pair(C);
    if (sq != 2 && sq != -2)
        throw std::domain_error("unit_power_classify: class must have square +-2");
    Int a = to_int(C.coords()[0]), b = to_int(C.coords()[1]);
    QuadraticUnit z(b, -a);
    int sign = 1;
    if (z.sign_real() < 0) {
        sign = -1;
        z = -z;
    }
    long n = 0;
    const QuadraticUnit u0 = QuadraticUnit::fundamental();
    const QuadraticUnit u0inv = QuadraticUnit::fundamental_inverse();
    int guard = 0;
    while (z.compare_one() > 0) {
        z = z * u0inv;
        ++n;
        if (++guard > 4096) throw std::domain_error("unit_power_classify: no convergence");
    }
    while (z.compare_one() < 0) {
        z = z * u0;
        --n;
        if (++guard > 4096) throw std::domain_error("unit_power_classify: no convergence");
    }
    if (!(z == QuadraticUnit::one()))
        throw std::domain_error("unit_power_classify: classification failure");
    bool even = (n % 2 == 0);
    if ((sq == -2) != even)
        throw std::domain_error("unit_power_classify: parity/square mismatch");
    return UnitPowerClass{sign, n};
}

// Inverse direction: the class ±(aH + bl) with b - a sigma = sign * u0^n.
inline DivisorClass class_from_unit_power(const LatticePtr& lattice, int sign, long n) {
    QuadraticUnit z = QuadraticUnit::one();
    const QuadraticUnit step = n >= 0 ? QuadraticUnit::fundamental() : QuadraticUnit::fundamental_inverse();
    for (long i = 0; i < (n >= 0 ? n : -n); ++i) z = z * step;
    Int b = z.x(), a = -z.y();
    if (sign < 0) { b = -b; a = -a; }
    return DivisorClass(lattice, std::vector<Rat>{Rat(a), Rat(b)});
}

} // namespace mukai
