#include "mukai/mat.hpp"
#include "mukai/poly.hpp"

#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace mukai;
using testutil::qmat;
using testutil::rand_poly;

namespace {
const std::vector<std::string> Y = {"y0", "y1", "y2"};
Poly y(int i) { return Poly::var(Y, i); }
Poly c(long v) { return Poly::constant(Y, Rat(v)); }
} // namespace

TEST_CASE("polynomial basics: canonical terms and printing") {
    Poly p = y(0) * y(0) + Rat(2) * y(1) - c(3);
    CHECK(p.str() == "y0^2 + 2*y1 - 3");
    CHECK(p.degree() == 2);
    CHECK_FALSE(p.is_homogeneous());
    CHECK((y(0) * y(1) - y(1) * y(0)).is_zero());
    CHECK(p - p == Poly::zero(Y));
    // structural equality after arbitrary assembly order
    Poly q = c(-3) + Rat(2) * y(1) + y(0).pow(2);
    CHECK(p == q);
}

TEST_CASE("polynomial evaluation, derivative, substitution") {
    Poly p = y(0).pow(3) * y(1) - Rat(2) * y(2);
    CHECK(p.eval({Rat(2), Rat(1), Rat(3)}) == Rat(2));
    CHECK(p.derivative(0) == Rat(3) * y(0).pow(2) * y(1));
    CHECK(p.substitute(1, c(0)) == Rat(-2) * y(2));
    // ring homomorphism: (fg)(y0=0) = f(y0=0) g(y0=0)
    std::mt19937 rng(7);
    for (int i = 0; i < 25; ++i) {
        Poly f = rand_poly(Y, rng), g = rand_poly(Y, rng);
        CHECK((f * g).substitute(0, c(0)) == f.substitute(0, c(0)) * g.substitute(0, c(0)));
    }
}

TEST_CASE("exact polynomial division") {
    std::mt19937 rng(11);
    for (int i = 0; i < 25; ++i) {
        Poly f = rand_poly(Y, rng), g = rand_poly(Y, rng);
        if (g.is_zero()) continue;
        CHECK((f * g) / g == f);
    }
    CHECK_THROWS_AS((y(0) + c(1)) / y(1), std::domain_error);
}

TEST_CASE("determinant of a diagonal polynomial matrix") {
    Mat<Poly> m(6, 6);
    Poly diag[6] = {y(0), y(0), y(0), y(1), y(1), y(2)};
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) m.at(i, j) = (i == j) ? diag[i] : Poly::zero(Y);
    Poly det = det_bareiss(m, c(1));
    CHECK(det == y(0).pow(3) * y(1).pow(2) * y(2));
    CHECK(det == det_cofactor(m));
}

TEST_CASE("determinant of a 1x1 matrix") {
    Mat<Poly> m(1, 1);
    m.at(0, 0) = c(5);
    CHECK(det_bareiss(m, c(1)) == c(5));
}

TEST_CASE("numeric transform matrix: determinant and inverse") {
    // the solved isometry matrix at (a,b,d) = (1,0,-1), c = -1, s = 28, t = 18
    Mat<Rat> P = qmat({{1, 58, 37, 2}, {0, 25, 16, 1}, {-1, 6, 4, 0}, {-1, 45, 29, 2}});
    CHECK(det_bareiss(P, Rat(1)) == 1);
    CHECK(det_cofactor(P) == Rat(1));
    Mat<Rat> inv = inverse(P);
    CHECK(P * inv == Mat<Rat>::identity(4, Rat(1), Rat(0)));
    // last column encodes the skyscraper image (2, -9H+14l, 1)
    CHECK(inv.at(0, 3) == 2);
    CHECK(inv.at(1, 3) == -9);
    CHECK(inv.at(2, 3) == 14);
    CHECK(inv.at(3, 3) == 1);
}

TEST_CASE("rational inverse basics") {
    CHECK(inverse(Mat<Rat>::identity(4, Rat(1), Rat(0))) == Mat<Rat>::identity(4, Rat(1), Rat(0)));
    Mat<Rat> d = qmat({{2, 0}, {0, 4}});
    Mat<Rat> di = inverse(d);
    CHECK(di.at(0, 0) == Rat(1, 2));
    CHECK(di.at(1, 1) == Rat(1, 4));
    CHECK_THROWS_AS(inverse(qmat({{1, 2}, {2, 4}})), std::domain_error);

    std::mt19937 rng(13);
    std::uniform_int_distribution<int> e(-5, 5);
    for (int trial = 0; trial < 20; ++trial) {
        Mat<Rat> m(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m.at(i, j) = Rat(e(rng));
        if (det_bareiss(m, Rat(1)) == 0) continue;
        CHECK(inverse(inverse(m)) == m);
    }
}

TEST_CASE("determinant is multiplicative on block-triangular matrices and alternating") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 15; ++trial) {
        Mat<Poly> A(2, 2), D(2, 2), B(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                A.at(i, j) = rand_poly(Y, rng, 1);
                D.at(i, j) = rand_poly(Y, rng, 1);
                B.at(i, j) = rand_poly(Y, rng, 1);
            }
        Mat<Poly> M(4, 4);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                M.at(i, j) = A.at(i, j);
                M.at(i, 2 + j) = B.at(i, j);
                M.at(2 + i, j) = Poly::zero(Y);
                M.at(2 + i, 2 + j) = D.at(i, j);
            }
        CHECK(det_bareiss(M, c(1)) == det_bareiss(A, c(1)) * det_bareiss(D, c(1)));
        // swapping two rows negates the determinant
        Mat<Poly> S = M;
        for (int j = 0; j < 4; ++j) std::swap(S.at(0, j), S.at(1, j));
        CHECK(det_bareiss(S, c(1)) == -det_bareiss(M, c(1)));
        CHECK(det_bareiss(M, c(1)) == det_cofactor(M));
    }
}

TEST_CASE("restriction commutes with determinant") {
    std::mt19937 rng(19);
    for (int trial = 0; trial < 15; ++trial) {
        Mat<Poly> m(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m.at(i, j) = rand_poly(Y, rng, 1);
        Mat<Poly> m0(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m0.at(i, j) = m.at(i, j).substitute(0, c(0));
        CHECK(det_bareiss(m, c(1)).substitute(0, c(0)) == det_bareiss(m0, c(1)));
    }
}

TEST_CASE("linear system solver") {
    auto sol = solve(qmat({{1, 2}, {3, 4}}), {Rat(5), Rat(6)});
    REQUIRE(sol.has_value());
    CHECK((*sol)[0] == Rat(-4));
    CHECK((*sol)[1] == Rat(9, 2));
    CHECK_FALSE(solve(qmat({{1, 1}, {1, 1}}), {Rat(0), Rat(1)}).has_value());
    auto under = solve(qmat({{1, 1}}), {Rat(3)});
    REQUIRE(under.has_value());
    CHECK((*under)[0] + (*under)[1] == Rat(3));
}
