#pragma once

// Mukai vectors (r, c1, s) over a Picard lattice, the pairing
// (a,b) = a1.b1 - a0 b2 - a2 b0, twist equivalence, similitude, Hilbert
// polynomials and the numeric moduli-space certificates.

#include "mukai/arith.hpp"
#include "mukai/lattice.hpp"

#include <array>
#include <optional>
#include <sstream>
#include <utility>

namespace mukai {

class MukaiVector {
public:
    MukaiVector(Rat r, DivisorClass c1, Rat s)
        : r_(std::move(r)), c1_(std::move(c1)), s_(std::move(s)) {}

    MukaiVector(long r, DivisorClass c1, long s) : r_(r), c1_(std::move(c1)), s_(s) {}

    const Rat& r() const { return r_; }
    const DivisorClass& c1() const { return c1_; }
    const Rat& s() const { return s_; }
    const LatticePtr& lattice() const { return c1_.lattice(); }

    bool integral() const { return is_integer(r_) && c1_.integral() && is_integer(s_); }

    friend bool operator==(const MukaiVector& a, const MukaiVector& b) {
        return a.r_ == b.r_ && a.c1_ == b.c1_ && a.s_ == b.s_;
    }
    friend bool operator!=(const MukaiVector& a, const MukaiVector& b) { return !(a == b); }

    std::string str() const {
        std::ostringstream os;
        os << "(" << to_string(r_) << ", " << c1_.str() << ", " << to_string(s_) << ")";
        return os.str();
    }

private:
    Rat r_;
    DivisorClass c1_;
    Rat s_;
};

// v(E) = (r, c1, r + c1^2/2 - c2) from the Chern data of a sheaf.
inline MukaiVector from_chern(long r, const DivisorClass& c1, const Int& c2) {
    if (r < 0) throw std::invalid_argument("from_chern: negative rank");
    Rat sq = self_pair(c1);
    Rat s = Rat(r) + sq / 2 - Rat(c2);
    if (!is_integer(sq / 2))
        throw std::domain_error("from_chern: odd c1^2 cannot occur on an even lattice");
    return MukaiVector(Rat(r), c1, s);
}

inline Rat chern_c2(const MukaiVector& v) { return self_pair(v.c1()) / 2 + v.r() - v.s(); }

inline Rat mukai_pair(const MukaiVector& a, const MukaiVector& b) {
    return pair(a.c1(), b.c1()) - a.r() * b.s() - a.s() * b.r();
}

inline bool is_isotropic(const MukaiVector& v) { return mukai_pair(v, v) == 0; }

inline bool is_primitive(const MukaiVector& v) {
    if (!v.integral()) return false;
    Int g = gcd(to_int(v.r()), to_int(v.s()));
    for (const Rat& c : v.c1().coords()) g = gcd(g, to_int(c));
    if (g < 0) g = -g;
    return g == 1;
}

// Twist by a line bundle with first Chern class lambda:
// (v0, v1 + v0 lambda, v2 + v1.lambda + v0 lambda^2/2).
inline MukaiVector twist(const MukaiVector& v, const DivisorClass& lambda) {
    DivisorClass c1 = v.c1() + v.r() * lambda;
    Rat s = v.s() + pair(v.c1(), lambda) + v.r() * self_pair(lambda) / 2;
    return MukaiVector(v.r(), c1, s);
}

// lambda with twist(v, lambda) = w, when one exists.  For integral vectors
// of positive rank this needs (w.c1 - v.c1) divisible by r in the lattice;
// for rational inputs the divisibility is automatic and only the
// s-component is checked.
inline std::optional<DivisorClass> twist_equivalent(const MukaiVector& v, const MukaiVector& w) {
    if (!v.lattice()->same_as(*w.lattice())) return std::nullopt;
    if (v.r() != w.r()) return std::nullopt;
    if (v.r() != 0) {
        DivisorClass diff = w.c1() - v.c1();
        std::vector<Rat> lam(diff.coords());
        for (auto& x : lam) x /= v.r();
        DivisorClass lambda(v.lattice(), lam);
        if (v.integral() && w.integral() && !lambda.integral()) return std::nullopt;
        if (twist(v, lambda) == w) return lambda;
        return std::nullopt;
    }
    // r = 0: c1 must match and the s gap must be a pairing value c1.lambda.
    if (v.c1() != w.c1()) return std::nullopt;
    Rat gap = w.s() - v.s();
    if (gap == 0) return std::optional<DivisorClass>(DivisorClass(
        v.lattice(), std::vector<Rat>(v.lattice()->rank(), Rat(0))));
    const Mat<Int>& G = v.lattice()->gram();
    const std::size_t n = v.lattice()->rank();
    // Solve c1^T G lambda = gap by extended gcd over the pairing values.
    std::vector<Rat> u(n, Rat(0));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) u[j] += v.c1().coords()[i] * Rat(G.at(i, j));
    for (std::size_t j = 0; j < n; ++j) {
        if (u[j] == 0) continue;
        std::vector<Rat> lam(n, Rat(0));
        lam[j] = gap / u[j];
        DivisorClass lambda(v.lattice(), lam);
        if (v.integral() && w.integral() && !lambda.integral()) continue;
        if (twist(v, lambda) == w) return lambda;
    }
    return std::nullopt;
}

// gcd of the Mukai pairing of v against the algebraic generators
// (1,0,0), (0, e_i, 0), (0,0,1).  Equals 1 iff the moduli space is fine.
inline Int sigma_min(const LatticePtr& lattice, const MukaiVector& v) {
    if (!v.lattice()->same_as(*lattice))
        throw std::invalid_argument("sigma_min: vector over another lattice");
    if (!v.integral()) throw std::invalid_argument("sigma_min: integral vector required");
    Int g = gcd(to_int(v.r()), to_int(v.s()));
    const Mat<Int>& G = lattice->gram();
    for (std::size_t j = 0; j < lattice->rank(); ++j) {
        Rat p = 0;
        for (std::size_t i = 0; i < lattice->rank(); ++i) p += v.c1().coords()[i] * Rat(G.at(i, j));
        g = gcd(g, to_int(p));
    }
    if (g < 0) g = -g;
    if (g == 0) throw std::domain_error("sigma_min: zero vector");
    return g;
}

inline Rat moduli_dim(const MukaiVector& v) { return mukai_pair(v, v) + 2; }

inline Rat euler_pairing(const MukaiVector& v, const MukaiVector& w) { return -mukai_pair(v, w); }

// chi(D) = 2 + D^2/2 for a line bundle on a K3.
inline Rat rr_line_bundle(const DivisorClass& D) { return 2 + self_pair(D) / 2; }

// Normalised Hilbert polynomial coefficients (constant, linear, quadratic):
// P(n) = (1/r) chi(E otimes H^n) = 1 + s/r + n (c1.H)/r + n^2 H^2/2.
struct QuadraticPolynomial {
    Rat c0, c1, c2;
    friend bool operator==(const QuadraticPolynomial& a, const QuadraticPolynomial& b) {
        return a.c0 == b.c0 && a.c1 == b.c1 && a.c2 == b.c2;
    }
    Rat eval(const Rat& n) const { return c0 + c1 * n + c2 * n * n; }
    std::string str() const {
        std::ostringstream os;
        os << to_string(c0) << " + " << to_string(c1) << "*n + " << to_string(c2) << "*n^2";
        return os.str();
    }
};

inline QuadraticPolynomial hilbert_poly(const MukaiVector& v, const DivisorClass& H) {
    if (v.r() < 1) throw std::invalid_argument("hilbert_poly: rank must be >= 1");
    // chi(E otimes H^n) = -( twist(v, nH), (1,0,1) ) = r + s + n c1.H + n^2 r H^2/2.
    QuadraticPolynomial p;
    p.c0 = 1 + v.s() / v.r();
    p.c1 = pair(v.c1(), H) / v.r();
    p.c2 = self_pair(H) / 2;
    return p;
}

// --- moduli-space certificates -------------------------------------------

struct CompactnessCertificate {
    bool compact;
    std::optional<DivisorClass> witness; // isotropic class of degree 4
};

// Compact iff the lattice has no integral primitive f with f^2=0, f.H=4.
inline CompactnessCertificate compactness_certificate(const LatticePtr& lattice,
                                                      const DivisorClass& H) {
    if (lattice->rank() > 2) throw std::invalid_argument("compactness_certificate: rank <= 2 only");
    auto s = isotropic_with_degree(lattice, H, Int(4));
    if (s.kind == IsotropicSearch::Kind::integral) return {false, s.witness};
    return {true, std::nullopt};
}

struct CICertificate {
    bool complete_intersection;
    std::optional<DivisorClass> witness; // isotropic class of degree 3
};

inline CICertificate ci_certificate(const LatticePtr& lattice, const DivisorClass& H) {
    if (lattice->rank() > 2) throw std::invalid_argument("ci_certificate: rank <= 2 only");
    auto s = isotropic_with_degree(lattice, H, Int(3));
    if (s.kind == IsotropicSearch::Kind::integral) return {false, s.witness};
    return {true, std::nullopt};
}

// Decomposition H = l1 + sigma with l1^2 = sigma^2 = 0 and l1.sigma = 4,
// witnessing the strictly semistable split O(sigma) + O(l1).
inline std::optional<std::pair<DivisorClass, DivisorClass>> strictly_semistable_split(
    const LatticePtr& lattice, const DivisorClass& H) {
    if (lattice->rank() > 2) return std::nullopt;
    // l1 + sigma = H with l1^2 = sigma^2 = 0 and l1.sigma = 4 forces H^2 = 8.
    if (self_pair(H) != 8) return std::nullopt;
    auto s = isotropic_with_degree(lattice, H, Int(4));
    if (s.kind != IsotropicSearch::Kind::integral) return std::nullopt;
    DivisorClass l1 = *s.witness;
    DivisorClass sigma = H - l1;
    // (H - l1)^2 = 8 - 2*4 + 0 = 0 and l1.(H - l1) = 4 are automatic.
    return std::make_pair(l1, sigma);
}

enum class ParityVerdict { obstructed, unobstructed };

// Existence of an isotropic (2, m h + n g, k) of odd degree on the declared
// degree class, decided by exhausting (m,n) mod 2.  On an even lattice both
// the degree parity and c1^2 mod 4 only depend on the parity class.
inline ParityVerdict fineness_parity_check(const LatticePtr& lattice_M,
                                           const DivisorClass& degree_class) {
    if (lattice_M->rank() != 2) throw std::invalid_argument("fineness_parity_check: rank-2 only");
    if (!degree_class.lattice()->same_as(*lattice_M))
        throw std::invalid_argument("fineness_parity_check: degree class from another lattice");
    for (long m = 0; m <= 1; ++m)
        for (long n = 0; n <= 1; ++n) {
            if (m == 0 && n == 0) continue;
            DivisorClass c1(lattice_M, std::vector<long>{m, n});
            Rat deg = pair(c1, degree_class);
            Int degree = to_int(deg);
            if (degree % 2 == 0) continue;
            Int sq = to_int(self_pair(c1));
            Int rem = sq % 4;
            if (rem < 0) rem += 4;
            if (rem == 0) return ParityVerdict::unobstructed;
        }
    return ParityVerdict::obstructed;
}

} // namespace mukai
