#pragma once

// Sparse multivariate polynomials with rational coefficients over a fixed,
// ordered variable list.  Terms are kept in a canonical map under graded
// lexicographic order (leading term first), so equality of polynomials is
// structural equality and printed forms are deterministic.

#include "mukai/arith.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace mukai {

using Exponents = std::vector<int>;

// Graded-lex, largest first: higher total degree wins, ties broken
// lexicographically on the exponent vector.
struct GrlexGreater {
    bool operator()(const Exponents& a, const Exponents& b) const {
        int da = 0, db = 0;
        for (int e : a) da += e;
        for (int e : b) db += e;
        if (da != db) return da > db;
        return a > b;
    }
};

class Poly {
public:
    using TermMap = std::map<Exponents, Rat, GrlexGreater>;

    Poly() = default;

    explicit Poly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static Poly zero(std::vector<std::string> vars) { return Poly(std::move(vars)); }

    static Poly constant(std::vector<std::string> vars, const Rat& c) {
        Poly p(std::move(vars));
        if (c != 0) p.terms_[Exponents(p.vars_.size(), 0)] = c;
        return p;
    }

    static Poly var(std::vector<std::string> vars, std::size_t index) {
        Poly p(std::move(vars));
        if (index >= p.vars_.size()) throw std::invalid_argument("Poly::var: index out of range");
        Exponents e(p.vars_.size(), 0);
        e[index] = 1;
        p.terms_[e] = 1;
        return p;
    }

    const std::vector<std::string>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
    }

    Rat constant_value() const {
        if (terms_.empty()) return Rat(0);
        if (!is_constant()) throw std::domain_error("Poly: not a constant");
        return terms_.begin()->second;
    }

    // Total degree; -1 for the zero polynomial.
    int degree() const {
        if (terms_.empty()) return -1;
        return total_degree(terms_.begin()->first);
    }

    int degree_in(std::size_t index) const {
        int d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e[index]);
        return d;
    }

    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        int d = total_degree(terms_.begin()->first);
        for (const auto& [e, c] : terms_)
            if (total_degree(e) != d) return false;
        return true;
    }

    Rat coeff(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    void add_term(const Exponents& e, const Rat& c) {
        if (e.size() != vars_.size()) throw std::invalid_argument("Poly::add_term: bad exponent length");
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (c != 0) terms_[e] = c;
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Poly operator-() const {
        Poly r(vars_);
        for (const auto& [e, c] : terms_) r.terms_[e] = -c;
        return r;
    }

    // The default-constructed Poly is the zero polynomial over an
    // unspecified variable list; it combines with any operand.  This lets
    // generic matrix code use T{} as the additive identity.
    Poly& operator+=(const Poly& o) {
        if (o.is_zero() && o.vars_.empty()) return *this;
        if (is_zero() && vars_.empty()) vars_ = o.vars_;
        check_same_vars(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }

    Poly& operator-=(const Poly& o) {
        if (o.is_zero() && o.vars_.empty()) return *this;
        if (is_zero() && vars_.empty()) vars_ = o.vars_;
        check_same_vars(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return zero(a.vars_.empty() ? b.vars_ : a.vars_);
        a.check_same_vars(b);
        Poly r(a.vars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e(ea);
                for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }

    friend Poly operator*(const Rat& c, const Poly& p) {
        Poly r(p.vars_);
        if (c == 0) return r;
        for (const auto& [e, pc] : p.terms_) r.terms_[e] = c * pc;
        return r;
    }

    friend Poly operator*(const Poly& p, const Rat& c) { return c * p; }

    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.is_zero() && b.is_zero()) return true;
        return a.vars_ == b.vars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly pow(int n) const {
        if (n < 0) throw std::invalid_argument("Poly::pow: negative exponent");
        Poly r = constant(vars_, 1);
        for (int i = 0; i < n; ++i) r = r * *this;
        return r;
    }

    // Exact division; throws if the divisor does not divide exactly.
    // Standard leading-term cancellation: for an exact quotient under a
    // monomial order every intermediate leading term is divisible.
    friend Poly operator/(Poly a, const Poly& b) {
        if (b.is_zero()) throw std::domain_error("Poly division by zero");
        if (a.is_zero()) return zero(a.vars_.empty() ? b.vars_ : a.vars_);
        a.check_same_vars(b);
        Poly q(a.vars_);
        const auto& [eb, cb] = *b.terms_.begin();
        while (!a.is_zero()) {
            const auto& [ea, ca] = *a.terms_.begin();
            Exponents e(ea);
            for (std::size_t i = 0; i < e.size(); ++i) {
                e[i] -= eb[i];
                if (e[i] < 0) throw std::domain_error("Poly division: not exact");
            }
            Rat c = ca / cb;
            Poly t(a.vars_);
            t.terms_[e] = c;
            q += t;
            a -= t * b;
        }
        return q;
    }

    Poly derivative(std::size_t index) const {
        Poly r(vars_);
        for (const auto& [e, c] : terms_) {
            if (e[index] == 0) continue;
            Exponents d(e);
            d[index] -= 1;
            r.add_term(d, c * e[index]);
        }
        return r;
    }

    // Simultaneous substitution var_i -> images[i]; the images live over a
    // common (possibly different) variable list.
    Poly compose(const std::vector<Poly>& images) const {
        if (images.size() != vars_.size()) throw std::invalid_argument("Poly::compose: arity mismatch");
        std::vector<std::string> tvars = images.empty() ? vars_ : images[0].vars();
        for (const auto& im : images)
            if (im.vars() != tvars) throw std::invalid_argument("Poly::compose: images over different variables");
        Poly r = zero(tvars);
        for (const auto& [e, c] : terms_) {
            Poly m = constant(tvars, c);
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] > 0) m = m * images[i].pow(e[i]);
            r += m;
        }
        return r;
    }

    Poly substitute(std::size_t index, const Poly& image) const {
        std::vector<Poly> images;
        images.reserve(vars_.size());
        for (std::size_t i = 0; i < vars_.size(); ++i)
            images.push_back(i == index ? image : var(vars_, i));
        return compose(images);
    }

    Rat eval(const std::vector<Rat>& point) const {
        if (point.size() != vars_.size()) throw std::invalid_argument("Poly::eval: arity mismatch");
        Rat r = 0;
        for (const auto& [e, c] : terms_) {
            Rat t = c;
            for (std::size_t i = 0; i < e.size(); ++i)
                for (int k = 0; k < e[i]; ++k) t *= point[i];
            r += t;
        }
        return r;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            Rat a = c;
            if (first) {
                if (a < 0) { os << "-"; a = -a; }
            } else {
                os << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            }
            first = false;
            std::string mono = monomial_str(e);
            if (mono.empty()) {
                os << to_string(a);
            } else {
                if (a != 1) os << to_string(a) << "*";
                os << mono;
            }
        }
        return os.str();
    }

private:
    static int total_degree(const Exponents& e) {
        int d = 0;
        for (int x : e) d += x;
        return d;
    }

    std::string monomial_str(const Exponents& e) const {
        std::string s;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!s.empty()) s += "*";
            s += vars_[i];
            if (e[i] > 1) s += "^" + std::to_string(e[i]);
        }
        return s;
    }

    void check_same_vars(const Poly& o) const {
        if (vars_ != o.vars_) throw std::invalid_argument("Poly: mixed variable lists");
    }

    std::vector<std::string> vars_;
    TermMap terms_;
};

inline Poly exact_div(const Poly& a, const Poly& b) { return a / b; }

} // namespace mukai
