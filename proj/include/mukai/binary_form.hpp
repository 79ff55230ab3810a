#pragma once

// Binary forms f(s,t) of fixed degree with rational coefficients, stored as
// the coefficient list of s^(d-i) t^i for i = 0..d.  Used for restrictions
// of plane curves to lines and for branch loci of pencils.

#include "mukai/arith.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

namespace mukai {

class BinaryForm {
public:
    BinaryForm() : degree_(0), coeffs_(1, Rat(0)) {}

    BinaryForm(int degree, std::vector<Rat> coeffs) : degree_(degree), coeffs_(std::move(coeffs)) {
        if (degree_ < 0 || coeffs_.size() != static_cast<std::size_t>(degree_) + 1)
            throw std::invalid_argument("BinaryForm: coefficient count must be degree+1");
    }

    static BinaryForm zero(int degree) { return BinaryForm(degree, std::vector<Rat>(degree + 1, Rat(0))); }

    int degree() const { return degree_; }
    const std::vector<Rat>& coeffs() const { return coeffs_; }
    const Rat& coeff(int i) const { return coeffs_.at(i); }

    bool is_zero() const {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rat& c) { return c == 0; });
    }

    Rat eval(const Rat& s, const Rat& t) const {
        Rat r = 0;
        for (int i = 0; i <= degree_; ++i) {
            Rat term = coeffs_[i];
            for (int k = 0; k < degree_ - i; ++k) term *= s;
            for (int k = 0; k < i; ++k) term *= t;
            r += term;
        }
        return r;
    }

    friend BinaryForm operator*(const BinaryForm& a, const BinaryForm& b) {
        BinaryForm r = zero(a.degree_ + b.degree_);
        for (int i = 0; i <= a.degree_; ++i)
            for (int j = 0; j <= b.degree_; ++j) r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return r;
    }

    friend BinaryForm operator*(const Rat& c, const BinaryForm& f) {
        BinaryForm r = f;
        for (auto& x : r.coeffs_) x *= c;
        return r;
    }

    friend BinaryForm operator-(const BinaryForm& f) { return Rat(-1) * f; }

    friend bool operator==(const BinaryForm& a, const BinaryForm& b) {
        return a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const BinaryForm& a, const BinaryForm& b) { return !(a == b); }

    std::string str() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int i = 0; i <= degree_; ++i) {
            Rat c = coeffs_[i];
            if (c == 0) continue;
            if (first) {
                if (c < 0) { os << "-"; c = -c; }
            } else {
                os << (c < 0 ? " - " : " + ");
                if (c < 0) c = -c;
            }
            first = false;
            std::string mono;
            int se = degree_ - i, te = i;
            if (se > 0) mono += "s" + (se > 1 ? "^" + std::to_string(se) : "");
            if (te > 0) {
                if (!mono.empty()) mono += "*";
                mono += "t" + (te > 1 ? "^" + std::to_string(te) : "");
            }
            if (mono.empty()) os << to_string(c);
            else {
                if (c != 1) os << to_string(c) << "*";
                os << mono;
            }
        }
        return os.str();
    }

private:
    int degree_;
    std::vector<Rat> coeffs_;
};

// --- dehomogenised helpers (dense univariate over Q, ascending powers) ---

namespace uni {

using UPoly = std::vector<Rat>; // p[i] * x^i, normalised with nonzero leading entry

inline void trim(UPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int deg(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

inline UPoly mul(const UPoly& a, const UPoly& b) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

inline UPoly derivative(const UPoly& p) {
    if (p.size() <= 1) return {};
    UPoly r(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) r[i - 1] = p[i] * Rat(static_cast<long>(i));
    return r;
}

inline UPoly rem(UPoly a, const UPoly& b) {
    while (deg(a) >= deg(b) && !a.empty()) {
        Rat f = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        trim(a);
    }
    return a;
}

inline UPoly divide_exact(UPoly a, const UPoly& b) {
    if (b.empty()) throw std::domain_error("uni: division by zero");
    UPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rat(0));
    while (deg(a) >= deg(b) && !a.empty()) {
        Rat f = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        q[shift] = f;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        trim(a);
    }
    if (!a.empty()) throw std::domain_error("uni: division not exact");
    trim(q);
    return q;
}

inline UPoly monic(UPoly p) {
    trim(p);
    if (p.empty()) return p;
    Rat lead = p.back();
    for (auto& c : p) c /= lead;
    return p;
}

inline UPoly gcd(UPoly a, UPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        UPoly r = rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(std::move(a));
}

// Yun's squarefree decomposition: p = prod f_k^k with f_k squarefree and
// pairwise coprime.  Returns the list (k, f_k) for nonconstant f_k.
inline std::vector<std::pair<int, UPoly>> squarefree_decomposition(UPoly p) {
    std::vector<std::pair<int, UPoly>> out;
    p = monic(std::move(p));
    if (deg(p) < 1) return out;
    UPoly dp = derivative(p);
    UPoly a = gcd(p, dp);
    UPoly b = divide_exact(p, a);
    UPoly c = divide_exact(dp, a);
    UPoly d = c;
    {
        UPoly db = derivative(b);
        d.resize(std::max(d.size(), db.size()), Rat(0));
        for (std::size_t i = 0; i < db.size(); ++i) d[i] -= db[i];
        trim(d);
    }
    int k = 1;
    while (deg(b) >= 1) {
        UPoly f = gcd(b, d);
        if (deg(f) >= 1) out.emplace_back(k, f);
        b = divide_exact(b, f.empty() ? UPoly{Rat(1)} : f);
        UPoly w = divide_exact(d, f.empty() ? UPoly{Rat(1)} : f);
        UPoly db = derivative(b);
        d = w;
        d.resize(std::max(d.size(), db.size()), Rat(0));
        for (std::size_t i = 0; i < db.size(); ++i) d[i] -= db[i];
        trim(d);
        ++k;
    }
    return out;
}

} // namespace uni

// Multiplicity of the factor t (root [1:0]) and of s (root [0:1]), plus the
// dehomogenised interior part p(x) = f(x, 1) / x^..., ascending powers.
struct BinaryFactorisation {
    int t_mult = 0;                 // power of t dividing f
    int s_mult = 0;                 // power of s dividing f
    uni::UPoly interior;            // nonzero constant term and leading term
};

inline BinaryFactorisation split_st(const BinaryForm& f) {
    if (f.is_zero()) throw std::domain_error("split_st: zero form");
    BinaryFactorisation r;
    int d = f.degree();
    int lo = 0;
    while (f.coeff(lo) == 0) ++lo; // f divisible by t^lo
    int hi = d;
    while (f.coeff(hi) == 0) --hi; // f divisible by s^(d-hi)
    r.t_mult = lo;
    r.s_mult = d - hi;
    // f = s^(d-i) t^i; substituting s=x, t=1 maps coefficient i to x^(d-i).
    for (int i = hi; i >= lo; --i) r.interior.push_back(f.coeff(i));
    return r;
}

// Root multiplicity profile over an algebraic closure: pairs (multiplicity,
// number of roots with that multiplicity), multiplicities ascending.
inline std::vector<std::pair<int, int>> multiplicity_profile(const BinaryForm& f) {
    std::vector<std::pair<int, int>> prof;
    if (f.is_zero()) return prof;
    auto fac = split_st(f);
    std::vector<std::pair<int, int>> raw; // (mult, count)
    if (fac.t_mult > 0) raw.emplace_back(fac.t_mult, 1);
    if (fac.s_mult > 0) raw.emplace_back(fac.s_mult, 1);
    for (const auto& [k, g] : uni::squarefree_decomposition(fac.interior))
        raw.emplace_back(k, uni::deg(g));
    std::sort(raw.begin(), raw.end());
    for (const auto& [m, c] : raw) {
        if (!prof.empty() && prof.back().first == m) prof.back().second += c;
        else prof.emplace_back(m, c);
    }
    return prof;
}

inline bool is_squarefree(const BinaryForm& f) {
    if (f.is_zero()) return false;
    for (const auto& [m, c] : multiplicity_profile(f))
        if (m > 1) return false;
    return true;
}

// Exact square root over Q by coefficient matching from the leading term.
// Requires even degree; the result is normalised to positive leading
// coefficient.  Returns nullopt when f is not the square of a rational form.
inline std::optional<BinaryForm> binary_form_is_square(const BinaryForm& f) {
    if (f.degree() % 2 != 0) throw std::invalid_argument("binary_form_is_square: odd degree");
    const int m = f.degree() / 2;
    if (f.is_zero()) return BinaryForm::zero(m);
    // Strip s/t powers; both multiplicities must be even.
    auto fac = split_st(f);
    if (fac.t_mult % 2 != 0 || fac.s_mult % 2 != 0) return std::nullopt;
    const uni::UPoly& p = fac.interior;       // ascending in x, nonzero ends
    const int dp = uni::deg(p);
    if (dp % 2 != 0) return std::nullopt;
    const int mg = dp / 2;
    auto lead = exact_sqrt(p[dp]);
    if (!lead) return std::nullopt;
    uni::UPoly g(mg + 1, Rat(0));
    g[mg] = *lead;
    for (int i = mg - 1; i >= 0; --i) {
        // coefficient of x^(mg+i) in g^2 must equal p[mg+i]
        Rat acc = 0;
        for (int j = i + 1; j < mg; ++j) acc += g[j] * g[mg + i - j];
        g[i] = (p[mg + i] - acc) / (2 * g[mg]);
    }
    if (uni::mul(g, g) != p) return std::nullopt;
    // Reassemble: result = s^(s_mult/2) t^(t_mult/2) * (homogenisation of g
    // to degree mg).  G's coefficient of s^(mg-k) t^k is g[mg-k]; the t-shift
    // places it at index k + t_mult/2 in degree m.
    const int t_half = fac.t_mult / 2;
    std::vector<Rat> coeffs(m + 1, Rat(0));
    for (int k = 0; k <= mg; ++k) coeffs[k + t_half] = g[mg - k];
    BinaryForm out(m, coeffs);
    for (const Rat& c : out.coeffs()) {
        if (c == 0) continue;
        if (c < 0) out = -out;
        break;
    }
    return out;
}

// Square up to a nonzero rational constant: f = c * g^2.  The branch sextic
// restricted to a tritangent line has this shape with c = -1.
inline std::optional<std::pair<Rat, BinaryForm>> square_up_to_constant(const BinaryForm& f) {
    if (f.degree() % 2 != 0 || f.is_zero()) return std::nullopt;
    auto fac = split_st(f);
    if (fac.t_mult % 2 != 0 || fac.s_mult % 2 != 0) return std::nullopt;
    const int dp = uni::deg(fac.interior);
    if (dp % 2 != 0) return std::nullopt;
    Rat lead = fac.interior[dp];
    BinaryForm scaled = (Rat(1) / lead) * f;
    auto g = binary_form_is_square(scaled);
    if (!g) return std::nullopt;
    return std::make_pair(lead, *g);
}

} // namespace mukai
