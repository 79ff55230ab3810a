#pragma once

// Even integer lattices of small rank with named bases, divisor classes with
// exact (rational when needed) coordinates, and the class-enumeration /
// cone / isometry machinery used by the moduli certificates.

#include "mukai/arith.hpp"
#include "mukai/mat.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace mukai {

class IntegerLattice;
using LatticePtr = std::shared_ptr<const IntegerLattice>;

class IntegerLattice {
public:
    static LatticePtr create(Mat<Int> gram, std::vector<std::string> basis_names) {
        return std::shared_ptr<const IntegerLattice>(
            new IntegerLattice(std::move(gram), std::move(basis_names)));
    }

    static LatticePtr create(const std::vector<std::vector<long>>& gram,
                             std::vector<std::string> basis_names) {
        std::size_t n = gram.size();
        Mat<Int> g(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            if (gram[i].size() != n) throw std::invalid_argument("lattice: gram not square");
            for (std::size_t j = 0; j < n; ++j) g.at(i, j) = gram[i][j];
        }
        return create(std::move(g), std::move(basis_names));
    }

    std::size_t rank() const { return gram_.rows(); }
    const Mat<Int>& gram() const { return gram_; }
    const std::vector<std::string>& basis_names() const { return basis_names_; }

    Int discriminant() const { return det_bareiss(gram_, Int(1)); }

    bool same_as(const IntegerLattice& o) const {
        return gram_ == o.gram_ && basis_names_ == o.basis_names_;
    }

private:
    IntegerLattice(Mat<Int> gram, std::vector<std::string> basis_names)
        : gram_(std::move(gram)), basis_names_(std::move(basis_names)) {
        if (gram_.rows() != gram_.cols()) throw std::invalid_argument("lattice: gram not square");
        if (basis_names_.size() != gram_.rows())
            throw std::invalid_argument("lattice: basis name count != rank");
        for (std::size_t i = 0; i < gram_.rows(); ++i) {
            if (gram_.at(i, i) % 2 != 0)
                throw std::invalid_argument("lattice: odd diagonal entry, only even lattices are supported");
            for (std::size_t j = i + 1; j < gram_.cols(); ++j)
                if (gram_.at(i, j) != gram_.at(j, i))
                    throw std::invalid_argument("lattice: gram not symmetric");
        }
    }

    Mat<Int> gram_;
    std::vector<std::string> basis_names_;
};

class DivisorClass {
public:
    DivisorClass() = default;

    DivisorClass(LatticePtr lattice, std::vector<Rat> coords)
        : lattice_(std::move(lattice)), coords_(std::move(coords)) {
        if (!lattice_) throw std::invalid_argument("DivisorClass: null lattice");
        if (coords_.size() != lattice_->rank())
            throw std::invalid_argument("DivisorClass: coordinate count != rank");
    }

    DivisorClass(LatticePtr lattice, const std::vector<long>& coords)
        : DivisorClass(std::move(lattice), to_rat(coords)) {}

    const LatticePtr& lattice() const { return lattice_; }
    const std::vector<Rat>& coords() const { return coords_; }

    bool integral() const {
        return std::all_of(coords_.begin(), coords_.end(), [](const Rat& c) { return is_integer(c); });
    }

    bool is_zero() const {
        return std::all_of(coords_.begin(), coords_.end(), [](const Rat& c) { return c == 0; });
    }

    // gcd of the integer coordinates; requires an integral class.
    Int content() const {
        Int g = 0;
        for (const Rat& c : coords_) g = gcd(g, to_int(c));
        return g < 0 ? Int(-g) : g;
    }

    bool primitive() const { return integral() && content() == 1; }

    friend DivisorClass operator+(const DivisorClass& a, const DivisorClass& b) {
        a.check_same_lattice(b);
        std::vector<Rat> c(a.coords_);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coords_[i];
        return DivisorClass(a.lattice_, c);
    }

    friend DivisorClass operator-(const DivisorClass& a, const DivisorClass& b) {
        a.check_same_lattice(b);
        std::vector<Rat> c(a.coords_);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.coords_[i];
        return DivisorClass(a.lattice_, c);
    }

    friend DivisorClass operator*(const Rat& k, const DivisorClass& a) {
        std::vector<Rat> c(a.coords_);
        for (auto& x : c) x *= k;
        return DivisorClass(a.lattice_, c);
    }

    friend DivisorClass operator-(const DivisorClass& a) { return Rat(-1) * a; }

    friend bool operator==(const DivisorClass& a, const DivisorClass& b) {
        return a.lattice_->same_as(*b.lattice_) && a.coords_ == b.coords_;
    }
    friend bool operator!=(const DivisorClass& a, const DivisorClass& b) { return !(a == b); }

    // Canonical order for enumeration output: coordinatewise lexicographic.
    friend bool operator<(const DivisorClass& a, const DivisorClass& b) {
        return a.coords_ < b.coords_;
    }

    void check_same_lattice(const DivisorClass& o) const {
        if (!lattice_->same_as(*o.lattice_))
            throw std::invalid_argument("DivisorClass: classes live in different lattices");
    }

    std::string str() const {
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            const Rat& c = coords_[i];
            if (c == 0) continue;
            Rat a = c;
            if (first) {
                if (a < 0) { os << "-"; a = -a; }
            } else {
                os << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            }
            first = false;
            if (a != 1) os << to_string(a) << "*";
            os << lattice_->basis_names()[i];
        }
        if (first) return "0";
        return os.str();
    }

private:
    static std::vector<Rat> to_rat(const std::vector<long>& v) {
        std::vector<Rat> r;
        r.reserve(v.size());
        for (long x : v) r.emplace_back(x);
        return r;
    }

    LatticePtr lattice_;
    std::vector<Rat> coords_;
};

// Intersection pairing u^T G v.
inline Rat pair(const DivisorClass& u, const DivisorClass& v) {
    u.check_same_lattice(v);
    const Mat<Int>& g = u.lattice()->gram();
    Rat acc = 0;
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) acc += u.coords()[i] * Rat(g.at(i, j)) * v.coords()[j];
    return acc;
}

inline Rat self_pair(const DivisorClass& u) { return pair(u, u); }

inline Int discriminant(const IntegerLattice& lattice) { return lattice.discriminant(); }

struct GramInBasis {
    Mat<Int> gram;
    Int change_det;
    bool unimodular;
};

// Gram matrix in a new basis given by integral classes; flags a
// non-unimodular change of basis instead of rejecting it.
inline GramInBasis gram_in_basis(const LatticePtr& lattice, const std::vector<DivisorClass>& basis) {
    const std::size_t n = lattice->rank();
    if (basis.size() != n) throw std::invalid_argument("gram_in_basis: need rank-many classes");
    Mat<Int> change(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        if (!basis[j].lattice()->same_as(*lattice))
            throw std::invalid_argument("gram_in_basis: class from another lattice");
        if (!basis[j].integral()) throw std::invalid_argument("gram_in_basis: non-integral basis class");
        for (std::size_t i = 0; i < n; ++i) change.at(i, j) = to_int(basis[j].coords()[i]);
    }
    Mat<Int> g = change.transpose() * lattice->gram() * change;
    Int d = det_bareiss(change, Int(1));
    return GramInBasis{g, d, d == 1 || d == -1};
}

namespace detail {
inline void box_scan(std::size_t dim, long height, std::vector<long>& cur,
                     const std::function<void(const std::vector<long>&)>& visit) {
    if (cur.size() == dim) {
        visit(cur);
        return;
    }
    for (long v = -height; v <= height; ++v) {
        cur.push_back(v);
        box_scan(dim, height, cur, visit);
        cur.pop_back();
    }
}
} // namespace detail

// All classes in the coordinate box |coords| <= height with self-pairing n,
// sorted coordinatewise.  Bounded box search; the instances of interest all
// have tiny coefficients.
inline std::vector<DivisorClass> classes_with_square(const LatticePtr& lattice, const Int& n,
                                                     long height) {
    if (lattice->rank() > 4) throw std::invalid_argument("classes_with_square: rank > 4 unsupported");
    std::vector<DivisorClass> out;
    std::vector<long> cur;
    detail::box_scan(lattice->rank(), height, cur, [&](const std::vector<long>& v) {
        bool all_zero = std::all_of(v.begin(), v.end(), [](long x) { return x == 0; });
        if (all_zero) return;
        DivisorClass c(lattice, v);
        if (self_pair(c) == Rat(n)) out.push_back(c);
    });
    std::sort(out.begin(), out.end());
    return out;
}

// Decision of f.f = 0 and f.H = k over Q and over Z (rank <= 2).
struct IsotropicSearch {
    enum class Kind { none_rational, rational_only, integral };
    Kind kind = Kind::none_rational;
    std::optional<DivisorClass> witness;       // primitive integral solution
    std::vector<DivisorClass> rational_solutions;
};

inline IsotropicSearch isotropic_with_degree(const LatticePtr& lattice, const DivisorClass& H,
                                             const Int& k) {
    if (!H.lattice()->same_as(*lattice))
        throw std::invalid_argument("isotropic_with_degree: polarization from another lattice");
    if (self_pair(H) <= 0) throw std::domain_error("isotropic_with_degree: degenerate polarization (H^2 <= 0)");
    IsotropicSearch res;
    const std::size_t n = lattice->rank();
    auto push_candidate = [&](const std::vector<Rat>& coords) {
        DivisorClass f(lattice, coords);
        for (const auto& g : res.rational_solutions)
            if (g == f) return;
        res.rational_solutions.push_back(f);
    };

    if (n == 1) {
        // f = a e with e^2 = g: a^2 g = 0 forces a = 0; degree 0 != k unless k = 0,
        // and the zero class is not a witness.
        return res;
    }
    if (n != 2) throw std::invalid_argument("isotropic_with_degree: rank must be <= 2");

    const Mat<Int>& G = lattice->gram();
    // u = G . H, so the degree condition is u . f = k.
    Rat u0 = Rat(G.at(0, 0)) * H.coords()[0] + Rat(G.at(0, 1)) * H.coords()[1];
    Rat u1 = Rat(G.at(1, 0)) * H.coords()[0] + Rat(G.at(1, 1)) * H.coords()[1];
    std::vector<Rat> f0(2);
    if (u0 != 0) { f0 = {Rat(k) / u0, Rat(0)}; }
    else if (u1 != 0) { f0 = {Rat(0), Rat(k) / u1}; }
    else throw std::domain_error("isotropic_with_degree: H pairs to zero with everything");
    std::vector<Rat> w = {-u1, u0};

    auto form = [&](const std::vector<Rat>& a, const std::vector<Rat>& b) {
        Rat acc = 0;
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) acc += a[i] * Rat(G.at(i, j)) * b[j];
        return acc;
    };
    Rat alpha = form(w, w);
    Rat beta = 2 * form(f0, w);
    Rat gamma = form(f0, f0);

    std::vector<Rat> roots;
    if (alpha != 0) {
        Rat disc = beta * beta - 4 * alpha * gamma;
        auto sq = exact_sqrt(disc);
        if (!sq) return res; // irrational or negative discriminant
        roots.push_back((-beta + *sq) / (2 * alpha));
        if (*sq != 0) roots.push_back((-beta - *sq) / (2 * alpha));
    } else if (beta != 0) {
        roots.push_back(-gamma / beta);
    } else if (gamma == 0) {
        // Entire line isotropic; only happens for k = 0, witness is the
        // primitive direction.
        Int g = gcd(to_int(w[0]), to_int(w[1]));
        push_candidate({w[0] / Rat(g), w[1] / Rat(g)});
    } else {
        return res;
    }
    for (const Rat& t : roots) push_candidate({f0[0] + t * w[0], f0[1] + t * w[1]});

    if (res.rational_solutions.empty()) return res;
    res.kind = IsotropicSearch::Kind::rational_only;
    // Canonical pick: lexicographically largest integral primitive solution.
    std::vector<DivisorClass> integral;
    for (const auto& f : res.rational_solutions)
        if (f.integral() && f.primitive()) integral.push_back(f);
    std::sort(integral.begin(), integral.end());
    if (!integral.empty()) {
        res.kind = IsotropicSearch::Kind::integral;
        res.witness = integral.back();
    }
    std::sort(res.rational_solutions.begin(), res.rational_solutions.end());
    return res;
}

// Primitive integral generator of C-perp in a rank-2 lattice, oriented to
// pair positively with the reference class (first nonzero coordinate
// positive when the pairing vanishes).
inline DivisorClass orthogonal_ray(const DivisorClass& C, const DivisorClass& reference) {
    C.check_same_lattice(reference);
    const LatticePtr& L = C.lattice();
    if (L->rank() != 2) throw std::invalid_argument("orthogonal_ray: rank-2 only");
    if (C.is_zero()) throw std::invalid_argument("orthogonal_ray: zero class");
    const Mat<Int>& G = L->gram();
    Rat u0 = Rat(G.at(0, 0)) * C.coords()[0] + Rat(G.at(0, 1)) * C.coords()[1];
    Rat u1 = Rat(G.at(1, 0)) * C.coords()[0] + Rat(G.at(1, 1)) * C.coords()[1];
    // Clear denominators, then reduce to a primitive integer vector.
    Int d0 = denominator(u0), d1 = denominator(u1);
    Int m = d0 * d1 / gcd(d0, d1);
    Int a = to_int(u0 * Rat(m)), b = to_int(u1 * Rat(m));
    Int g = gcd(a, b);
    if (g == 0) throw std::domain_error("orthogonal_ray: class pairs to zero with everything");
    DivisorClass ray(L, std::vector<Rat>{Rat(-b / g), Rat(a / g)});
    Rat orient = pair(ray, reference);
    if (orient < 0) ray = -ray;
    else if (orient == 0) {
        for (const Rat& c : ray.coords()) {
            if (c == 0) continue;
            if (c < 0) ray = -ray;
            break;
        }
    }
    return ray;
}

// Extremal rays of the cone spanned by (-2)-classes pairing positively with
// H, within the height box.  Empty result means no such classes were found.
inline std::vector<DivisorClass> effective_cone_rays(const LatticePtr& lattice,
                                                     const DivisorClass& H, long height) {
    if (lattice->rank() != 2) throw std::invalid_argument("effective_cone_rays: rank-2 only");
    if (self_pair(H) <= 0) throw std::domain_error("effective_cone_rays: need H^2 > 0");
    std::vector<DivisorClass> pos;
    for (const auto& c : classes_with_square(lattice, Int(-2), height))
        if (pair(c, H) > 0) pos.push_back(c);
    if (pos.empty()) return {};
    auto cross = [](const DivisorClass& a, const DivisorClass& b) -> Rat {
        return a.coords()[0] * b.coords()[1] - a.coords()[1] * b.coords()[0];
    };
    std::vector<DivisorClass> rays;
    for (const auto& c : pos) {
        bool all_nonneg = true, all_nonpos = true;
        for (const auto& d : pos) {
            Rat x = cross(c, d);
            if (x > 0) all_nonpos = false;
            if (x < 0) all_nonneg = false;
        }
        if (all_nonneg || all_nonpos) rays.push_back(c);
    }
    std::sort(rays.begin(), rays.end());
    rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
    return rays;
}

// True iff m is a Gram isometry and an involution.
inline bool check_involution(const LatticePtr& lattice, const Mat<Int>& m) {
    const std::size_t n = lattice->rank();
    if (m.rows() != n || m.cols() != n) throw std::invalid_argument("check_involution: size mismatch");
    if (m.transpose() * lattice->gram() * m != lattice->gram()) return false;
    return m * m == Mat<Int>::identity(n, Int(1), Int(0));
}

inline DivisorClass apply_matrix(const Mat<Int>& m, const DivisorClass& c) {
    const std::size_t n = c.lattice()->rank();
    std::vector<Rat> out(n, Rat(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[i] += Rat(m.at(i, j)) * c.coords()[j];
    return DivisorClass(c.lattice(), out);
}

// Number of even theta-characteristics on a genus-g curve: 2^(g-1) (2^g + 1).
inline Int theta_count(int g) {
    if (g < 1) throw std::invalid_argument("theta_count: genus must be >= 1");
    Int p = Int(1) << (g - 1);
    return p * ((Int(1) << g) + 1);
}

// Ampleness evidence at a height budget: positive square and no (-2)-class
// orthogonal to H within the box.  Not a global ampleness decision.
inline bool ample_evidence(const LatticePtr& lattice, const DivisorClass& H, long height) {
    if (self_pair(H) <= 0) return false;
    if (lattice->rank() == 1) return true;
    if (lattice->rank() != 2) return self_pair(H) > 0;
    for (const auto& c : classes_with_square(lattice, Int(-2), height))
        if (pair(c, H) == 0) return false;
    return true;
}

} // namespace mukai
