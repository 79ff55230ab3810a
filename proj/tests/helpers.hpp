#pragma once

#include "mukai/lattice.hpp"
#include "mukai/mat.hpp"
#include "mukai/poly.hpp"

#include <initializer_list>
#include <random>

namespace testutil {

using namespace mukai;

inline LatticePtr line_lattice() { return IntegerLattice::create({{8, 1}, {1, -2}}, {"H", "l"}); }
inline LatticePtr conic_lattice() { return IntegerLattice::create({{8, 2}, {2, -2}}, {"H", "C"}); }
inline LatticePtr rank1_lattice() { return IntegerLattice::create({{8}}, {"H"}); }
inline LatticePtr hyperbolic4_lattice() { return IntegerLattice::create({{0, 4}, {4, 0}}, {"f1", "f2"}); }
inline LatticePtr elliptic3_lattice() { return IntegerLattice::create({{8, 3}, {3, 0}}, {"H", "E"}); }

inline DivisorClass cls(const LatticePtr& L, std::initializer_list<long> coords) {
    return DivisorClass(L, std::vector<long>(coords));
}

inline Mat<Int> imat(std::initializer_list<std::initializer_list<long>> rows) {
    std::size_t r = rows.size(), c = rows.begin()->size();
    Mat<Int> m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        std::size_t j = 0;
        for (long v : row) m.at(i, j++) = v;
        ++i;
    }
    return m;
}

inline Mat<Rat> qmat(std::initializer_list<std::initializer_list<long>> rows) {
    std::size_t r = rows.size(), c = rows.begin()->size();
    Mat<Rat> m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        std::size_t j = 0;
        for (long v : row) m.at(i, j++) = v;
        ++i;
    }
    return m;
}

// Random unimodular 2x2 integer matrix as a short word in the elementary
// generators.
inline Mat<Int> random_sl2(std::mt19937& rng) {
    Mat<Int> m = Mat<Int>::identity(2, Int(1), Int(0));
    std::uniform_int_distribution<int> shear(-3, 3);
    std::uniform_int_distribution<int> pick(0, 2);
    for (int step = 0; step < 4; ++step) {
        Mat<Int> g = Mat<Int>::identity(2, Int(1), Int(0));
        switch (pick(rng)) {
            case 0: g.at(0, 1) = shear(rng); break;
            case 1: g.at(1, 0) = shear(rng); break;
            default:
                g.at(0, 0) = 0; g.at(0, 1) = -1; g.at(1, 0) = 1; g.at(1, 1) = 0;
                break;
        }
        m = m * g;
    }
    return m;
}

inline Poly rand_poly(const std::vector<std::string>& vars, std::mt19937& rng, int max_deg = 2,
                      int max_coeff = 3) {
    std::uniform_int_distribution<int> coeff(-max_coeff, max_coeff);
    std::uniform_int_distribution<int> deg(0, max_deg);
    Poly p = Poly::zero(vars);
    int terms = 1 + static_cast<int>(rng() % 3);
    for (int t = 0; t < terms; ++t) {
        Exponents e(vars.size(), 0);
        int d = deg(rng);
        for (int k = 0; k < d; ++k) e[rng() % vars.size()] += 1;
        p.add_term(e, Rat(coeff(rng)));
    }
    return p;
}

} // namespace testutil
