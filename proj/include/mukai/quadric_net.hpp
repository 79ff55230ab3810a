#pragma once

// Nets of quadrics in P^5 as symmetric 6x6 matrices of linear forms in
// y0,y1,y2: determinant sextic, rank at points, conic-block construction,
// restriction to lines, tritangent certificates, pencil branch forms and a
// bounded singular-point scan for the determinant curve.

#include "mukai/arith.hpp"
#include "mukai/binary_form.hpp"
#include "mukai/mat.hpp"
#include "mukai/poly.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <vector>

namespace mukai {

inline const std::vector<std::string>& net_vars() {
    static const std::vector<std::string> v = {"y0", "y1", "y2"};
    return v;
}

// Q'(y) = y0 N0 + y1 N1 + y2 N2 with each Ni a symmetric integer 6x6 matrix.
class LinearFormMatrix {
public:
    LinearFormMatrix(Mat<Int> n0, Mat<Int> n1, Mat<Int> n2)
        : n_{std::move(n0), std::move(n1), std::move(n2)} {
        for (const auto& m : n_) {
            if (m.rows() != 6 || m.cols() != 6)
                throw std::invalid_argument("LinearFormMatrix: matrices must be 6x6");
            for (std::size_t i = 0; i < 6; ++i)
                for (std::size_t j = i + 1; j < 6; ++j)
                    if (m.at(i, j) != m.at(j, i))
                        throw std::invalid_argument("LinearFormMatrix: coefficient matrix not symmetric");
        }
    }

    const Mat<Int>& coeff(int k) const { return n_.at(k); }

    Poly entry(std::size_t i, std::size_t j) const {
        Poly p = Poly::zero(net_vars());
        for (int k = 0; k < 3; ++k) {
            if (n_[k].at(i, j) == 0) continue;
            p += Rat(n_[k].at(i, j)) * Poly::var(net_vars(), k);
        }
        return p;
    }

    Mat<Poly> symbolic() const {
        Mat<Poly> m(6, 6);
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = 0; j < 6; ++j) m.at(i, j) = entry(i, j);
        return m;
    }

    Mat<Rat> evaluate(const std::array<Rat, 3>& p) const {
        Mat<Rat> m(6, 6);
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = 0; j < 6; ++j)
                m.at(i, j) = Rat(n_[0].at(i, j)) * p[0] + Rat(n_[1].at(i, j)) * p[1] +
                             Rat(n_[2].at(i, j)) * p[2];
        return m;
    }

private:
    std::array<Mat<Int>, 3> n_;
};

// det Q'(y); degenerate (zero or degree < 6) results are flagged.
struct PlaneSextic {
    Poly poly;          // over y0,y1,y2
    bool degenerate;    // not homogeneous of degree 6
};

inline PlaneSextic det_sextic(const LinearFormMatrix& net) {
    Poly det = det_bareiss(net.symbolic(), Poly::constant(net_vars(), 1));
    bool degenerate = det.is_zero() || det.degree() < 6;
    return PlaneSextic{det, degenerate};
}

inline PlaneSextic sextic_from_poly(const Poly& p) {
    if (p.vars() != net_vars()) throw std::invalid_argument("sextic_from_poly: wrong variables");
    if (!p.is_zero() && !p.is_homogeneous())
        throw std::invalid_argument("sextic_from_poly: inhomogeneous polynomial");
    return PlaneSextic{p, p.is_zero() || p.degree() < 6};
}

inline std::size_t rank_at(const LinearFormMatrix& net, const std::array<Rat, 3>& p) {
    if (p[0] == 0 && p[1] == 0 && p[2] == 0)
        throw std::invalid_argument("rank_at: (0,0,0) is not a point of P^2");
    return rank(net.evaluate(p));
}

// Block net of the tritangent construction: upper-left y0 I_3, upper-right
// A, lower-left A^T, lower-right D (symmetric).  Any row of extra linear
// forms in the quadric containing the conic is already folded into A.
inline LinearFormMatrix build_conic_block_net(const std::array<Mat<Int>, 3>& A,
                                              const std::array<Mat<Int>, 3>& D) {
    std::array<Mat<Int>, 3> n;
    for (int k = 0; k < 3; ++k) {
        if (A[k].rows() != 3 || A[k].cols() != 3 || D[k].rows() != 3 || D[k].cols() != 3)
            throw std::invalid_argument("build_conic_block_net: blocks must be 3x3");
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i + 1; j < 3; ++j)
                if (D[k].at(i, j) != D[k].at(j, i))
                    throw std::invalid_argument("build_conic_block_net: D block not symmetric");
        Mat<Int> m(6, 6);
        if (k == 0)
            for (std::size_t i = 0; i < 3; ++i) m.at(i, i) = 1; // y0 I_3
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                m.at(i, 3 + j) = A[k].at(i, j);
                m.at(3 + j, i) = A[k].at(i, j);
                m.at(3 + i, 3 + j) = D[k].at(i, j);
            }
        n[k] = std::move(m);
    }
    return LinearFormMatrix(n[0], n[1], n[2]);
}

// Restriction of a plane curve to the line lam . y = 0, parametrised with
// the two smallest-index free coordinates; the pivot is the largest-index
// nonzero coefficient.  Flags a restriction that vanishes identically
// (line contained in the curve).
struct LineRestriction {
    BinaryForm form;
    bool line_is_component;
};

inline LineRestriction restrict_to_line(const PlaneSextic& C, const std::array<Int, 3>& lam) {
    if (lam[0] == 0 && lam[1] == 0 && lam[2] == 0)
        throw std::invalid_argument("restrict_to_line: zero line");
    int pivot = 2;
    while (lam[pivot] == 0) --pivot;
    static const std::vector<std::string> st = {"s", "t"};
    std::vector<Poly> images;
    Poly s = Poly::var(st, 0), t = Poly::var(st, 1);
    std::vector<Poly> free_params = {s, t};
    std::size_t next = 0;
    std::vector<int> free_idx;
    for (int i = 0; i < 3; ++i)
        if (i != pivot) free_idx.push_back(i);
    for (int i = 0; i < 3; ++i) {
        if (i == pivot) { images.push_back(Poly::zero(st)); continue; }
        images.push_back(free_params[next++]);
    }
    // y_pivot = -(lam_f1 s + lam_f2 t)/lam_pivot
    Poly acc = Poly::zero(st);
    acc += Rat(-Rat(lam[free_idx[0]]) / Rat(lam[pivot])) * s;
    acc += Rat(-Rat(lam[free_idx[1]]) / Rat(lam[pivot])) * t;
    images[pivot] = acc;
    Poly restricted = C.poly.compose(images);
    const int d = C.poly.degree() < 0 ? 0 : C.poly.degree();
    BinaryForm f = BinaryForm::zero(d);
    if (!restricted.is_zero()) {
        std::vector<Rat> coeffs(d + 1, Rat(0));
        for (const auto& [e, c] : restricted.terms()) coeffs.at(e[1]) = c;
        f = BinaryForm(d, coeffs);
    }
    return LineRestriction{f, restricted.is_zero()};
}

// True iff the restriction to the line is a nonzero constant times the
// square of a cubic form; errors when the line is a component of C.
inline bool tritangent_certificate(const PlaneSextic& C, const std::array<Int, 3>& lam) {
    auto r = restrict_to_line(C, lam);
    if (r.line_is_component)
        throw std::domain_error("tritangent_certificate: line is a component of the sextic");
    return square_up_to_constant(r.form).has_value();
}

// Branch form of the pencil of quadrics through two independent points of
// the net plane: det Q' restricted to the parametrised line s p + t q.
struct PencilBranch {
    BinaryForm form;
    bool degenerate;                              // identically zero
    std::vector<std::pair<int, int>> multiplicities; // (multiplicity, #roots)
};

inline PencilBranch pencil_branch_form(const LinearFormMatrix& net, const std::array<Int, 3>& p,
                                       const std::array<Int, 3>& q) {
    // independence check: all 2x2 minors of (p|q) vanish iff collinear
    bool dependent = (p[0] * q[1] - p[1] * q[0] == 0) && (p[0] * q[2] - p[2] * q[0] == 0) &&
                     (p[1] * q[2] - p[2] * q[1] == 0);
    if (dependent) throw std::invalid_argument("pencil_branch_form: coincident points");
    static const std::vector<std::string> st = {"s", "t"};
    Poly s = Poly::var(st, 0), t = Poly::var(st, 1);
    std::vector<Poly> images;
    for (int i = 0; i < 3; ++i) images.push_back(Rat(p[i]) * s + Rat(q[i]) * t);
    Poly restricted = det_sextic(net).poly.compose(images);
    PencilBranch out{BinaryForm::zero(6), restricted.is_zero(), {}};
    if (!restricted.is_zero()) {
        std::vector<Rat> coeffs(7, Rat(0));
        for (const auto& [e, c] : restricted.terms()) coeffs.at(e[1]) = c;
        out.form = BinaryForm(6, coeffs);
        out.multiplicities = multiplicity_profile(out.form);
    }
    return out;
}

// A projective point with small integer coordinates, canonicalised to
// primitive with first nonzero coordinate positive.
struct ProjPoint {
    std::array<Int, 3> c;
    friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.c == b.c; }
    friend bool operator<(const ProjPoint& a, const ProjPoint& b) { return a.c < b.c; }
    std::string str() const { return "[" + a_str(c[0]) + ":" + a_str(c[1]) + ":" + a_str(c[2]) + "]"; }
private:
    static std::string a_str(const Int& v) { return v.str(); }
};

inline std::optional<ProjPoint> canonical_point(long a, long b, long c) {
    if (a == 0 && b == 0 && c == 0) return std::nullopt;
    Int g = gcd(gcd(Int(a), Int(b)), Int(c));
    if (g < 0) g = -g;
    std::array<Int, 3> v = {Int(a) / g, Int(b) / g, Int(c) / g};
    for (int i = 0; i < 3; ++i) {
        if (v[i] == 0) continue;
        if (v[i] < 0)
            for (auto& x : v) x = -x;
        break;
    }
    return ProjPoint{v};
}

struct SingularScan {
    std::vector<ProjPoint> points;                    // canonical, sorted
    std::map<long, long> finite_field_counts;        // prime -> #singular points over F_p
    bool non_reduced_evidence;                        // repeated factor on every probe line
};

// Common zeros of C and its partials among rational points of height <=
// height, plus counts over the supplied prime fields.  Desk-scale evidence,
// not a smoothness proof.
inline SingularScan singular_point_scan(const PlaneSextic& C, long height,
                                        const std::vector<long>& primes = {}) {
    SingularScan out{{}, {}, false};
    std::array<Poly, 3> partials = {C.poly.derivative(0), C.poly.derivative(1), C.poly.derivative(2)};
    auto singular_at = [&](const Rat& a, const Rat& b, const Rat& c) {
        std::vector<Rat> pt = {a, b, c};
        if (C.poly.eval(pt) != 0) return false;
        for (const auto& d : partials)
            if (d.eval(pt) != 0) return false;
        return true;
    };
    for (long a = -height; a <= height; ++a)
        for (long b = -height; b <= height; ++b)
            for (long c = -height; c <= height; ++c) {
                auto cp = canonical_point(a, b, c);
                if (!cp) continue;
                if (cp->c[0] != a || cp->c[1] != b || cp->c[2] != c) continue; // visit once
                if (singular_at(Rat(a), Rat(b), Rat(c))) out.points.push_back(*cp);
            }
    std::sort(out.points.begin(), out.points.end());

    for (long pr : primes) {
        long count = 0;
        auto eval_mod = [&](const Poly& f, long x, long y, long z) -> Int {
            Int acc = 0;
            for (const auto& [e, coef] : f.terms()) {
                if (denominator(coef) % pr == 0)
                    throw std::domain_error("singular_point_scan: denominator divisible by prime");
                Int num = numerator(coef) % pr;
                Int den = denominator(coef) % pr;
                // den inverse mod pr by Fermat
                Int inv = 1, base = den % pr, exp = pr - 2;
                if (base < 0) base += pr;
                while (exp > 0) {
                    if (exp % 2 == 1) inv = inv * base % pr;
                    base = base * base % pr;
                    exp /= 2;
                }
                Int term = num * inv % pr;
                if (term < 0) term += pr;
                auto powm = [&](long v, int k) -> Int {
                    Int r = 1, vv = ((v % pr) + pr) % pr;
                    for (int i = 0; i < k; ++i) r = r * vv % pr;
                    return r;
                };
                term = term * powm(x, e[0]) % pr * powm(y, e[1]) % pr * powm(z, e[2]) % pr;
                acc = (acc + term) % pr;
            }
            return ((acc % pr) + pr) % pr;
        };
        auto singular_mod = [&](long x, long y, long z) {
            if (eval_mod(C.poly, x, y, z) != 0) return false;
            for (const auto& d : partials)
                if (eval_mod(d, x, y, z) != 0) return false;
            return true;
        };
        // canonical representatives of P^2(F_p)
        for (long y = 0; y < pr; ++y)
            for (long z = 0; z < pr; ++z)
                if (singular_mod(1, y, z)) ++count;
        for (long z = 0; z < pr; ++z)
            if (singular_mod(0, 1, z)) ++count;
        if (singular_mod(0, 0, 1)) ++count;
        out.finite_field_counts[pr] = count;
    }

    // Non-reducedness probe: a repeated factor in the restriction to every
    // line of a fixed pencil is strong evidence for a multiple component.
    static const std::array<std::array<Int, 3>, 7> probe_lines = {{{1, 0, 0},
                                                                   {0, 1, 0},
                                                                   {0, 0, 1},
                                                                   {1, 1, 0},
                                                                   {1, 0, 1},
                                                                   {0, 1, 1},
                                                                   {1, 1, 1}}};
    if (!C.poly.is_zero()) {
        bool all_repeated = true;
        for (const auto& lam : probe_lines) {
            auto r = restrict_to_line(C, lam);
            if (r.line_is_component) continue; // containment says nothing about reducedness
            if (is_squarefree(r.form)) {
                all_repeated = false;
                break;
            }
        }
        out.non_reduced_evidence = all_repeated;
    }
    return out;
}

} // namespace mukai
