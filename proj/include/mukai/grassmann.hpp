#pragma once

// Integral cohomology of the four-dimensional quadric Gr(2,4) in its
// Schubert basis (1, s1, s2, s11, s21, pt), with the multiplicative table
//   s1^2 = s2 + s11,  s1 s2 = s1 s11 = s21,
//   s2^2 = s11^2 = s1 s21 = pt,  s2 s11 = 0,
// and everything beyond codimension 4 equal to zero.

#include "mukai/arith.hpp"
#include "mukai/lattice.hpp"
#include "mukai/mukai_vector.hpp"

#include <array>
#include <string>

namespace mukai {

class SchubertClass {
public:
    // basis order: 1, s1, s2, s11, s21, pt with codimensions 0,1,2,2,3,4
    static constexpr std::array<int, 6> codim = {0, 1, 2, 2, 3, 4};

    SchubertClass() : c_{} {}

    explicit SchubertClass(std::array<Int, 6> c) : c_(std::move(c)) {}

    static SchubertClass unit() { return basis(0); }
    static SchubertClass sigma1() { return basis(1); }
    static SchubertClass sigma2() { return basis(2); }
    static SchubertClass sigma11() { return basis(3); }
    static SchubertClass sigma21() { return basis(4); }
    static SchubertClass point() { return basis(5); }

    static SchubertClass basis(int i) {
        SchubertClass s;
        s.c_[i] = 1;
        return s;
    }

    const std::array<Int, 6>& coeffs() const { return c_; }
    const Int& operator[](int i) const { return c_[i]; }

    bool is_homogeneous() const {
        int seen = -1;
        for (int i = 0; i < 6; ++i) {
            if (c_[i] == 0) continue;
            if (seen == -1) seen = codim[i];
            else if (codim[i] != seen) return false;
        }
        return true;
    }

    friend SchubertClass operator+(const SchubertClass& a, const SchubertClass& b) {
        SchubertClass r;
        for (int i = 0; i < 6; ++i) r.c_[i] = a.c_[i] + b.c_[i];
        return r;
    }

    friend SchubertClass operator*(const Int& k, const SchubertClass& a) {
        SchubertClass r;
        for (int i = 0; i < 6; ++i) r.c_[i] = k * a.c_[i];
        return r;
    }

    friend bool operator==(const SchubertClass& a, const SchubertClass& b) { return a.c_ == b.c_; }
    friend bool operator!=(const SchubertClass& a, const SchubertClass& b) { return !(a == b); }

    std::string str() const {
        static const char* names[6] = {"1", "s1", "s2", "s11", "s21", "pt"};
        std::string out;
        for (int i = 0; i < 6; ++i) {
            if (c_[i] == 0) continue;
            Int a = c_[i];
            if (out.empty()) {
                if (a < 0) { out += "-"; a = -a; }
            } else {
                out += a < 0 ? " - " : " + ";
                if (a < 0) a = -a;
            }
            if (i == 0) out += a.str();
            else if (a == 1) out += names[i];
            else out += a.str() + "*" + names[i];
        }
        return out.empty() ? "0" : out;
    }

private:
    std::array<Int, 6> c_;
};

namespace detail {
// cup of basis elements i * j as a coefficient vector.
inline std::array<Int, 6> basis_cup(int i, int j) {
    if (i > j) std::swap(i, j);
    std::array<Int, 6> r{};
    auto set = [&](int k, long v = 1) { r[k] = v; };
    if (i == 0) { set(j); return r; }                         // 1 * x = x
    if (SchubertClass::codim[i] + SchubertClass::codim[j] > 4) return r;
    if (i == 1 && j == 1) { set(2); set(3); return r; }       // s1^2 = s2 + s11
    if (i == 1 && (j == 2 || j == 3)) { set(4); return r; }   // s1 s2 = s1 s11 = s21
    if (i == 1 && j == 4) { set(5); return r; }               // s1 s21 = pt
    if (i == 2 && j == 2) { set(5); return r; }               // s2^2 = pt
    if (i == 2 && j == 3) { return r; }                       // s2 s11 = 0
    if (i == 3 && j == 3) { set(5); return r; }               // s11^2 = pt
    return r;
}
} // namespace detail

inline SchubertClass cup(const SchubertClass& a, const SchubertClass& b) {
    std::array<Int, 6> acc{};
    for (int i = 0; i < 6; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < 6; ++j) {
            if (b[j] == 0) continue;
            auto t = detail::basis_cup(i, j);
            for (int k = 0; k < 6; ++k) acc[k] += a[i] * b[j] * t[k];
        }
    }
    return SchubertClass(acc);
}

// Coefficient of the point class.
inline Int degree(const SchubertClass& a) { return a[5]; }

// Homology class of a degree-8 surface cut by two quadric sections:
// (2 s1)(2 s1) = 4 (s2 + s11).
inline SchubertClass surface_class() {
    return Int(4) * SchubertClass::sigma2() + Int(4) * SchubertClass::sigma11();
}

enum class SpinorBundle { S_dual, F };

// Mukai vector of a spinor bundle restricted to the surface: rank 2,
// c1 = H, c2 = <surface, s11 or s2> = 4, hence (2, H, 2).
inline MukaiVector spinor_mukai_vector(SpinorBundle which, const DivisorClass& H) {
    SchubertClass dual = which == SpinorBundle::S_dual ? SchubertClass::sigma11() : SchubertClass::sigma2();
    Int c2 = degree(cup(surface_class(), dual));
    return from_chern(2, H, c2);
}

} // namespace mukai
