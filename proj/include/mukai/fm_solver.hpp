#pragma once

// Cohomological Fourier-Mukai computation for the line-containing case:
// the rank-4 algebraic Mukai lattice over Pic = ZH + Zl, image constraints
// for the transform, the isometry equations P^T A P = A, elimination down
// to a residual quadratic, bounded point search, and pointwise assembly and
// verification of the solved isometry.

#include "mukai/arith.hpp"
#include "mukai/lattice.hpp"
#include "mukai/mat.hpp"
#include "mukai/mukai_vector.hpp"
#include "mukai/poly.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mukai {

using Vec4 = std::vector<Rat>; // coordinates in basis (1,0,0),(0,H,0),(0,l,0),(0,0,1)

// The algebraic Mukai lattice of a rank-2 Picard lattice, with Gram matrix
//   [[ 0, 0, 0,-1], [0, G, 0], [-1, 0, 0, 0]]
// in the basis (1,0,0), (0,e1,0), (0,e2,0), (0,0,1).
class AlgebraicMukaiLattice {
public:
    explicit AlgebraicMukaiLattice(LatticePtr picard) : picard_(std::move(picard)) {
        if (picard_->rank() != 2)
            throw std::invalid_argument("AlgebraicMukaiLattice: rank-2 Picard lattice required");
        gram_ = Mat<Int>(4, 4);
        gram_.at(0, 3) = -1;
        gram_.at(3, 0) = -1;
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) gram_.at(1 + i, 1 + j) = picard_->gram().at(i, j);
    }

    const LatticePtr& picard() const { return picard_; }
    const Mat<Int>& gram() const { return gram_; }

    Vec4 coords(const MukaiVector& v) const {
        if (!v.lattice()->same_as(*picard_))
            throw std::invalid_argument("AlgebraicMukaiLattice: vector over another lattice");
        return {v.r(), v.c1().coords()[0], v.c1().coords()[1], v.s()};
    }

    MukaiVector vector(const Vec4& c) const {
        return MukaiVector(c[0], DivisorClass(picard_, std::vector<Rat>{c[1], c[2]}), c[3]);
    }

    Rat pair(const Vec4& a, const Vec4& b) const {
        Rat acc = 0;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) acc += a[i] * Rat(gram_.at(i, j)) * b[j];
        return acc;
    }

private:
    LatticePtr picard_;
    Mat<Int> gram_;
};

// One image constraint f(source) = target; when modulo_fundamental is set
// the target is only known up to multiples of (0,0,0,1), so the preimage
// picks up an unknown multiple of the fundamental constraint's source.
struct FMConstraint {
    Vec4 source;
    Vec4 target;
    bool modulo_fundamental;
};

enum class FMBranch { positive, negative, second };

struct PartialFMMatrix {
    Mat<Poly> P;                     // matrix of f^{-1}, entries over the parameter ring
    std::vector<std::string> params; // declared parameter order
    Vec4 fundamental_source;         // source mapping to (0,0,0,1), if any
    std::vector<FMConstraint> constraints;
};

namespace fm_detail {

inline Vec4 e4() { return {Rat(0), Rat(0), Rat(0), Rat(1)}; }

inline bool is_e4(const Vec4& t) { return t == e4(); }

inline std::vector<std::string> param_names() {
    return {"a", "b", "c", "d", "s", "t", "u", "w"};
}

} // namespace fm_detail

// Solves for the matrix of f^{-1} given the image constraints; basis
// vectors outside the rational span of the targets get a column of fresh
// parameters, and every use of a modulo-fundamental target adds one fresh
// parameter multiplying the fundamental preimage.
inline PartialFMMatrix build_constraints(const AlgebraicMukaiLattice& aml,
                                         const std::vector<FMConstraint>& constraints) {
    std::optional<Vec4> fundamental;
    for (const auto& c : constraints)
        if (fm_detail::is_e4(c.target) && !c.modulo_fundamental) fundamental = c.source;
    for (const auto& c : constraints)
        if (c.modulo_fundamental && !fundamental)
            throw std::invalid_argument("build_constraints: modulo constraint without a fundamental one");

    // Target matrix: columns are the constraint targets.
    Mat<Rat> T(4, constraints.size());
    for (std::size_t k = 0; k < constraints.size(); ++k)
        for (std::size_t i = 0; i < 4; ++i) T.at(i, k) = constraints[k].target[i];

    auto names = fm_detail::param_names();
    std::size_t next_param = 0;
    std::vector<std::string> vars;
    // Two passes: first discover how many parameters are needed so that all
    // entries live over one variable list, then build the entries.
    std::vector<std::optional<std::vector<Rat>>> combos(4);
    std::vector<bool> needs_param(4, false);
    for (std::size_t j = 0; j < 4; ++j) {
        std::vector<Rat> ej(4, Rat(0));
        ej[j] = 1;
        auto gamma = solve(T, ej);
        combos[j] = gamma;
        if (!gamma) {
            next_param += 4; // full column of fresh parameters
            continue;
        }
        bool uses_mod = false;
        for (std::size_t k = 0; k < constraints.size(); ++k)
            if ((*gamma)[k] != 0 && constraints[k].modulo_fundamental) uses_mod = true;
        needs_param[j] = uses_mod;
        if (uses_mod) next_param += 1;
    }
    if (next_param > names.size())
        throw std::invalid_argument("build_constraints: too many free parameters");
    vars.assign(names.begin(), names.begin() + next_param);
    if (vars.empty()) vars.push_back("a"); // constant polynomials still need a ring

    PartialFMMatrix out{Mat<Poly>(4, 4), vars, fundamental ? *fundamental : Vec4(4, Rat(0)),
                        constraints};
    std::size_t p = 0;
    for (std::size_t j = 0; j < 4; ++j) {
        if (!combos[j]) {
            for (std::size_t i = 0; i < 4; ++i)
                out.P.at(i, j) = Poly::var(vars, p + i);
            p += 4;
            continue;
        }
        const auto& gamma = *combos[j];
        std::vector<Rat> col(4, Rat(0));
        for (std::size_t k = 0; k < constraints.size(); ++k)
            for (std::size_t i = 0; i < 4; ++i) col[i] += gamma[k] * constraints[k].source[i];
        for (std::size_t i = 0; i < 4; ++i) out.P.at(i, j) = Poly::constant(vars, col[i]);
        if (needs_param[j]) {
            Poly param = Poly::var(vars, p++);
            for (std::size_t i = 0; i < 4; ++i)
                out.P.at(i, j) += Poly::constant(vars, out.fundamental_source[i]) * param;
        }
    }
    return out;
}

// The three constraint sets of the line case.  v = (2,H,2) always maps to
// the fundamental class; x = (1,0,-1) maps to (0,h,0) with h = 2H-3l (sign
// flipped on the negative branch); the degree-4 partner maps to H-l on the
// first branch and to 9H-14l (preimage 5x - w) on the second.
inline std::vector<FMConstraint> fm_constraint_set(const AlgebraicMukaiLattice& aml,
                                                   FMBranch branch) {
    const auto& G = aml.picard()->gram();
    if (G.at(0, 0) != 8 || G.at(0, 1) != 1 || G.at(1, 1) != -2)
        throw std::invalid_argument("fm_constraint_set: expects the (H,l) lattice [[8,1],[1,-2]]");
    Vec4 v = {Rat(2), Rat(1), Rat(0), Rat(2)};
    Vec4 x = {Rat(1), Rat(0), Rat(0), Rat(-1)};
    Vec4 w = {Rat(1), Rat(-1), Rat(2), Rat(-4)};
    Vec4 target_x = {Rat(0), Rat(2), Rat(-3), Rat(0)};
    Vec4 target_w = {Rat(0), Rat(1), Rat(-1), Rat(0)};
    std::vector<FMConstraint> out;
    out.push_back({v, fm_detail::e4(), false});
    switch (branch) {
        case FMBranch::positive:
            out.push_back({x, target_x, true});
            out.push_back({w, target_w, true});
            break;
        case FMBranch::negative:
            for (auto& c : target_x) c = -c;
            for (auto& c : target_w) c = -c;
            out.push_back({x, target_x, true});
            out.push_back({w, target_w, true});
            break;
        case FMBranch::second: {
            // preimage of 9H-14l in the coset basis: 5x - w
            Vec4 w2(4);
            for (std::size_t i = 0; i < 4; ++i) w2[i] = 5 * x[i] - w[i];
            Vec4 target_w2 = {Rat(0), Rat(9), Rat(-14), Rat(0)};
            out.push_back({x, target_x, true});
            out.push_back({w2, target_w2, true});
            break;
        }
    }
    return out;
}

inline const char* fm_branch_name(FMBranch b) {
    switch (b) {
        case FMBranch::positive: return "positive";
        case FMBranch::negative: return "negative";
        case FMBranch::second: return "second";
    }
    return "?";
}

struct IsometrySystem {
    Poly det_relation;                 // det P - 1, vanishes on solutions
    std::vector<Poly> linear_relations;// leading coefficient positive
    Poly residual_quadratic;           // q
    std::map<std::string, Poly> solved;// eliminated variable -> expression
    bool eliminated = false;
    std::vector<Poly> raw_entries;     // nonzero entries of P^T A P - A
};

namespace fm_detail {

// Coefficient of var^power in p, as a polynomial in the remaining variables
// (same ambient ring).
inline Poly coeff_in_var(const Poly& p, std::size_t var, int power) {
    Poly out = Poly::zero(p.vars());
    for (const auto& [e, c] : p.terms()) {
        if (e[var] != power) continue;
        Exponents f(e);
        f[var] = 0;
        out.add_term(f, c);
    }
    return out;
}

// Solves k*var + rest = 0 for var when k is a nonzero constant.
inline std::optional<Poly> solve_linear_for(const Poly& p, std::size_t var) {
    if (p.degree_in(var) != 1) return std::nullopt;
    Poly k = coeff_in_var(p, var, 1);
    if (!k.is_constant() || k.is_zero()) return std::nullopt;
    Poly rest = coeff_in_var(p, var, 0);
    return (Rat(-1) / k.constant_value()) * rest;
}

inline Poly normalise_sign(const Poly& p) {
    if (p.is_zero()) return p;
    return p.terms().begin()->second < 0 ? -p : p;
}

} // namespace fm_detail

// Reduces P^T A P = A: the determinant relation eliminates "c", the two
// bilinear entries eliminate "s" and "t", and the one remaining entry is the
// residual quadratic in (a,b,d).  When the constraint set does not produce
// this shape the raw polynomial system is returned with eliminated = false.
inline IsometrySystem isometry_system(const AlgebraicMukaiLattice& aml,
                                      const PartialFMMatrix& pm) {
    IsometrySystem out;
    const auto& vars = pm.params;
    Poly one = Poly::constant(vars, 1);
    Mat<Poly> A(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            A.at(i, j) = Poly::constant(vars, Rat(aml.gram().at(i, j)));
    Mat<Poly> E = pm.P.transpose() * A * pm.P - A;
    std::vector<Poly> entries;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i; j < 4; ++j)
            if (!E.at(i, j).is_zero()) entries.push_back(E.at(i, j));
    out.raw_entries = entries;
    out.det_relation = det_bareiss(pm.P, one) - one;

    auto index_of = [&](const std::string& name) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == name) return i;
        return std::nullopt;
    };

    std::vector<Poly> work = entries;
    auto substitute_all = [&](std::size_t var, const Poly& expr) {
        for (auto& p : work) p = p.substitute(var, expr);
    };

    // det relation eliminates c
    auto ci = index_of("c");
    if (!ci || !fm_detail::solve_linear_for(out.det_relation, *ci)) return out;
    Poly c_expr = *fm_detail::solve_linear_for(out.det_relation, *ci);
    out.solved["c"] = c_expr;
    substitute_all(*ci, c_expr);

    for (const std::string& name : {std::string("s"), std::string("t")}) {
        auto vi = index_of(name);
        if (!vi) return out;
        bool done = false;
        for (auto& p : work) {
            if (p.is_zero() || p.degree() != 1) continue;
            auto expr = fm_detail::solve_linear_for(p, *vi);
            if (!expr) continue;
            out.solved[name] = *expr;
            out.linear_relations.push_back(fm_detail::normalise_sign(p));
            substitute_all(*vi, *expr);
            done = true;
            break;
        }
        if (!done) return out;
    }

    std::vector<Poly> residual;
    for (const auto& p : work)
        if (!p.is_zero()) {
            bool dup = false;
            for (const auto& r : residual)
                if (r == p) dup = true;
            if (!dup) residual.push_back(p);
        }
    if (residual.size() != 1) return out;
    out.residual_quadratic = residual.front();
    out.eliminated = true;
    return out;
}

// Integer points in the cube |a|,|b|,|d| <= height plus rational points
// with numerator and denominator bounded by height, sorted lexicographically.
inline std::vector<std::array<Rat, 3>> solve_points(const Poly& q, long height) {
    std::size_t ia = 0, ib = 1, id = 3;
    {
        auto find = [&](const std::string& n) -> std::optional<std::size_t> {
            for (std::size_t i = 0; i < q.vars().size(); ++i)
                if (q.vars()[i] == n) return i;
            return std::nullopt;
        };
        auto a = find("a"), b = find("b"), d = find("d");
        if (!a || !b || !d) throw std::invalid_argument("solve_points: expects variables a, b, d");
        ia = *a; ib = *b; id = *d;
        for (std::size_t i = 0; i < q.vars().size(); ++i)
            if (i != ia && i != ib && i != id && q.degree_in(i) > 0)
                throw std::invalid_argument("solve_points: quadratic involves an uneliminated variable");
    }
    std::vector<Rat> values;
    for (long den = 1; den <= height; ++den)
        for (long num = -height; num <= height; ++num) {
            if (std::gcd(num < 0 ? -num : num, den) != 1 && !(num == 0 && den == 1)) continue;
            if (num == 0 && den != 1) continue;
            values.emplace_back(num, den);
        }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());

    std::vector<std::array<Rat, 3>> points;
    std::vector<Rat> at(q.vars().size(), Rat(0));
    for (const Rat& a : values)
        for (const Rat& b : values)
            for (const Rat& d : values) {
                at[ia] = a; at[ib] = b; at[id] = d;
                if (q.eval(at) == 0) points.push_back({a, b, d});
            }
    std::sort(points.begin(), points.end(), [](const auto& x, const auto& y) {
        for (int i = 0; i < 3; ++i) {
            if (x[i] < y[i]) return true;
            if (y[i] < x[i]) return false;
        }
        return false;
    });
    return points;
}

struct FMSolution {
    std::array<Rat, 3> point;     // (a, b, d)
    std::map<std::string, Rat> eliminated_values; // c, s, t
    Mat<Rat> P_num;               // numeric matrix of f^{-1}
    Mat<Rat> f_E;                 // inverse of P_num
    MukaiVector vEx;              // f_E applied to the fundamental class
    std::optional<DivisorClass> twist_class;  // normalising twist, when vEx ~ (2,H,2)
    std::optional<MukaiVector> normalized;    // twist(vEx, twist_class)
    bool integral;                // all entries of f_E integral
    bool isometry_ok;             // P^T A P = A checked exactly
};

inline FMSolution assemble(const AlgebraicMukaiLattice& aml, const PartialFMMatrix& pm,
                           const IsometrySystem& sys, const std::array<Rat, 3>& point) {
    if (!sys.eliminated) throw std::invalid_argument("assemble: system was not eliminated");
    const auto& vars = pm.params;
    std::vector<Rat> at(vars.size(), Rat(0));
    auto set = [&](const std::string& n, const Rat& v) {
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == n) at[i] = v;
    };
    set("a", point[0]);
    set("b", point[1]);
    set("d", point[2]);
    if (sys.residual_quadratic.eval(at) != 0)
        throw std::domain_error("assemble: point does not satisfy the residual quadratic");
    std::map<std::string, Rat> elim;
    // c depends only on (a,b,d); s and t may depend on c as solved, so
    // evaluate in the order c, s, t.
    for (const std::string& n : {std::string("c"), std::string("s"), std::string("t")}) {
        auto it = sys.solved.find(n);
        if (it == sys.solved.end()) continue;
        Rat v = it->second.eval(at);
        set(n, v);
        elim[n] = v;
    }
    Mat<Rat> P(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) P.at(i, j) = pm.P.at(i, j).eval(at);

    Mat<Rat> A(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) A.at(i, j) = Rat(aml.gram().at(i, j));
    bool isometry_ok = (P.transpose() * A * P == A);
    if (!isometry_ok) throw std::domain_error("assemble: P^T A P != A at a solved point");
    Mat<Rat> fE = inverse(P);
    Vec4 col = fE.column(3);
    MukaiVector vEx = aml.vector(col);
    MukaiVector target(Rat(2), DivisorClass(aml.picard(), std::vector<long>{1, 0}), Rat(2));
    auto lambda = twist_equivalent(vEx, target);
    std::optional<MukaiVector> normalized;
    if (lambda) normalized = twist(vEx, *lambda);
    bool integral = true;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if (!is_integer(fE.at(i, j))) integral = false;
    return FMSolution{point, elim, P, fE, vEx, lambda, normalized, integral, isometry_ok};
}

struct HodgeIsometryReport {
    bool isometry;
    bool det_unimodular;
    bool fundamental_ok; // f_E(v) = (0,0,0,1)
    bool images_ok;      // H^2 components of constrained images match
    bool integral;
    bool all_ok() const { return isometry && det_unimodular && fundamental_ok && images_ok; }
};

inline HodgeIsometryReport verify_hodge_isometry(const AlgebraicMukaiLattice& aml,
                                                 const PartialFMMatrix& pm,
                                                 const FMSolution& sol) {
    Mat<Rat> A(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) A.at(i, j) = Rat(aml.gram().at(i, j));
    HodgeIsometryReport rep{};
    rep.isometry = (sol.P_num.transpose() * A * sol.P_num == A);
    Rat det = det_bareiss(sol.P_num, Rat(1));
    rep.det_unimodular = (det == 1 || det == -1);
    rep.integral = sol.integral;
    rep.fundamental_ok = true;
    rep.images_ok = true;
    for (const auto& c : pm.constraints) {
        std::vector<Rat> img = sol.f_E.apply(c.source);
        if (c.modulo_fundamental) {
            // first three coordinates are pinned, the H^4 part is free
            for (std::size_t i = 0; i < 3; ++i)
                if (img[i] != c.target[i]) rep.images_ok = false;
        } else {
            if (img != c.target) rep.fundamental_ok = false;
        }
    }
    return rep;
}

// The coset basis of v-perp modulo Zv for v = (2,H,2) over the (H,l)
// lattice: x = (1,0,-1) and w = (1,-H+2l,-4), with coset Gram [[2,5],[5,4]].
struct VperpBasis {
    MukaiVector x;
    MukaiVector w;
    Mat<Int> coset_gram;
};

inline VperpBasis vperp_mod_v_basis(const AlgebraicMukaiLattice& aml) {
    const LatticePtr& L = aml.picard();
    if (L->gram().at(0, 0) != 8 || L->gram().at(0, 1) != 1 || L->gram().at(1, 1) != -2)
        throw std::invalid_argument("vperp_mod_v_basis: expects the (H,l) lattice [[8,1],[1,-2]]");
    MukaiVector v(2, DivisorClass(L, std::vector<long>{1, 0}), 2);
    MukaiVector x(1, DivisorClass(L, std::vector<long>{0, 0}), -1);
    MukaiVector w(1, DivisorClass(L, std::vector<long>{-1, 2}), -4);
    if (mukai_pair(v, x) != 0 || mukai_pair(v, w) != 0)
        throw std::domain_error("vperp_mod_v_basis: representatives not orthogonal to v");

    // Completeness: {x, w, v} must be a Z-basis of the full integer kernel
    // of (., v).  Kernel basis by unimodular column reduction of the
    // pairing functional.
    Vec4 vc = aml.coords(v);
    std::array<Int, 4> phi;
    for (std::size_t j = 0; j < 4; ++j) {
        Vec4 ej(4, Rat(0));
        ej[j] = 1;
        phi[j] = to_int(aml.pair(ej, vc));
    }
    Mat<Int> U = Mat<Int>::identity(4, Int(1), Int(0));
    // Column-reduce phi to (g,0,0,0) tracking the transformation.
    std::array<Int, 4> f = phi;
    for (std::size_t j = 1; j < 4; ++j) {
        while (f[j] != 0) {
            Int qout = f[0] / f[j];
            // subtract q * col j from col 0, then swap
            f[0] -= qout * f[j];
            for (std::size_t i = 0; i < 4; ++i) U.at(i, 0) = U.at(i, 0) - qout * U.at(i, j);
            std::swap(f[0], f[j]);
            for (std::size_t i = 0; i < 4; ++i) std::swap(U.at(i, 0), U.at(i, j));
        }
    }
    // Columns 1..3 of U now span the kernel.
    Mat<Rat> K(4, 3);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 3; ++j) K.at(i, j) = Rat(U.at(i, j + 1));
    Mat<Rat> M(3, 3);
    std::array<Vec4, 3> gens = {aml.coords(x), aml.coords(w), vc};
    for (std::size_t col = 0; col < 3; ++col) {
        auto sol = solve(K, gens[col]);
        if (!sol) throw std::domain_error("vperp_mod_v_basis: generator outside the kernel");
        for (std::size_t i = 0; i < 3; ++i) {
            if (!is_integer((*sol)[i]))
                throw std::domain_error("vperp_mod_v_basis: generator not integral over kernel basis");
            M.at(i, col) = (*sol)[i];
        }
    }
    Rat detM = det_bareiss(M, Rat(1));
    if (detM != 1 && detM != -1)
        throw std::domain_error("vperp_mod_v_basis: x, w, v do not span the kernel");

    Mat<Int> gram(2, 2);
    gram.at(0, 0) = to_int(mukai_pair(x, x));
    gram.at(0, 1) = to_int(mukai_pair(x, w));
    gram.at(1, 0) = gram.at(0, 1);
    gram.at(1, 1) = to_int(mukai_pair(w, w));
    return VperpBasis{x, w, gram};
}

// Normalises a coset representative u + Zv so that the rank coordinate lies
// in {0,1} (the rank of v is 2).
inline Vec4 reduce_coset_representative(const Vec4& u, const Vec4& v) {
    Rat r = u[0];
    Rat k;
    // choose k with u0 - 2k in {0,1}
    Int num = numerator(r), den = denominator(r);
    if (den != 1) throw std::invalid_argument("reduce_coset_representative: non-integral rank");
    Int n = num;
    Int kk = n;
    if (n % 2 != 0) kk = n - 1;
    kk /= 2;
    k = Rat(kk);
    Vec4 out(4);
    for (std::size_t i = 0; i < 4; ++i) out[i] = u[i] - k * v[i];
    return out;
}

} // namespace mukai
