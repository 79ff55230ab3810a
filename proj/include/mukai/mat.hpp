#pragma once

// Small dense matrices over an exact ring (Int, Rat or Poly).  Sizes in this
// library never exceed 6x6, so the algorithms favour exactness and clarity.

#include "mukai/arith.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace mukai {

template <class T>
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}

    Mat(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Mat identity(std::size_t n, const T& one, const T& zero) {
        Mat m(n, n, zero);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = one;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Mat transpose() const {
        Mat m(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
        return m;
    }

    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("Mat: size mismatch in product");
        Mat r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a.at(i, k);
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    T prod = aik * b.at(k, j);
                    r.at(i, j) = r.at(i, j) + prod;
                }
            }
        return r;
    }

    friend Mat operator+(const Mat& a, const Mat& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("Mat: size mismatch in sum");
        Mat r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = a.data_[i] + b.data_[i];
        return r;
    }

    friend Mat operator-(const Mat& a, const Mat& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("Mat: size mismatch in diff");
        Mat r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = a.data_[i] - b.data_[i];
        return r;
    }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

    std::vector<T> column(std::size_t j) const {
        std::vector<T> c;
        c.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c.push_back(at(i, j));
        return c;
    }

    void set_column(std::size_t j, const std::vector<T>& c) {
        if (c.size() != rows_) throw std::invalid_argument("Mat: bad column length");
        for (std::size_t i = 0; i < rows_; ++i) at(i, j) = c[i];
    }

    std::vector<T> apply(const std::vector<T>& v) const {
        if (v.size() != cols_) throw std::invalid_argument("Mat: bad vector length");
        std::vector<T> r(rows_, T{});
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r[i] = r[i] + at(i, j) * v[j];
        return r;
    }

private:
    std::size_t rows_, cols_;
    std::vector<T> data_;
};

namespace detail {
template <class T>
bool entry_is_zero(const T& x) {
    if constexpr (requires { x.is_zero(); }) return x.is_zero();
    else return x == T{};
}
} // namespace detail

// Fraction-free Bareiss elimination.  Divisions by the previous pivot are
// exact over any integral domain, which keeps Int and Poly entries out of
// the fraction field.
template <class T>
T det_bareiss(Mat<T> m, const T& one) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det: non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return one;
    T prev = one;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (detail::entry_is_zero(m.at(k, k))) {
            std::size_t p = k + 1;
            while (p < n && detail::entry_is_zero(m.at(p, k))) ++p;
            if (p == n) return T{};
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                T num = m.at(k, k) * m.at(i, j) - m.at(i, k) * m.at(k, j);
                m.at(i, j) = exact_div(num, prev);
            }
        prev = m.at(k, k);
    }
    T d = m.at(n - 1, n - 1);
    return sign < 0 ? -d : d;
}

// Cofactor expansion along the first row; cross-check for det_bareiss and
// fallback for small sizes.
template <class T>
T det_cofactor(const Mat<T>& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det: non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) throw std::invalid_argument("det: empty matrix");
    if (n == 1) return m.at(0, 0);
    T acc{};
    for (std::size_t j = 0; j < n; ++j) {
        if (detail::entry_is_zero(m.at(0, j))) continue;
        Mat<T> minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i) {
            std::size_t jj = 0;
            for (std::size_t k = 0; k < n; ++k) {
                if (k == j) continue;
                minor.at(i - 1, jj++) = m.at(i, k);
            }
        }
        T term = m.at(0, j) * det_cofactor(minor);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

// Gauss-Jordan inverse over the rationals.
inline Mat<Rat> inverse(const Mat<Rat>& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse: non-square matrix");
    const std::size_t n = m.rows();
    Mat<Rat> a = m;
    Mat<Rat> inv = Mat<Rat>::identity(n, Rat(1), Rat(0));
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a.at(piv, col) == 0) ++piv;
        if (piv == n) throw std::domain_error("inverse: singular matrix");
        if (piv != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a.at(piv, j), a.at(col, j));
                std::swap(inv.at(piv, j), inv.at(col, j));
            }
        Rat d = a.at(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a.at(col, j) /= d;
            inv.at(col, j) /= d;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a.at(i, col) == 0) continue;
            Rat f = a.at(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                a.at(i, j) -= f * a.at(col, j);
                inv.at(i, j) -= f * inv.at(col, j);
            }
        }
    }
    return inv;
}

inline std::size_t rank(Mat<Rat> a) {
    const std::size_t n = a.rows(), m = a.cols();
    std::size_t r = 0;
    for (std::size_t col = 0; col < m && r < n; ++col) {
        std::size_t piv = r;
        while (piv < n && a.at(piv, col) == 0) ++piv;
        if (piv == n) continue;
        if (piv != r)
            for (std::size_t j = 0; j < m; ++j) std::swap(a.at(piv, j), a.at(r, j));
        Rat d = a.at(r, col);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == r || a.at(i, col) == 0) continue;
            Rat f = a.at(i, col) / d;
            for (std::size_t j = 0; j < m; ++j) a.at(i, j) -= f * a.at(r, j);
        }
        ++r;
    }
    return r;
}

// One solution of A x = b over Q, if any.
inline std::optional<std::vector<Rat>> solve(const Mat<Rat>& a0, const std::vector<Rat>& b) {
    const std::size_t n = a0.rows(), m = a0.cols();
    if (b.size() != n) throw std::invalid_argument("solve: size mismatch");
    Mat<Rat> a(n, m + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) a.at(i, j) = a0.at(i, j);
        a.at(i, m) = b[i];
    }
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t col = 0; col < m && r < n; ++col) {
        std::size_t piv = r;
        while (piv < n && a.at(piv, col) == 0) ++piv;
        if (piv == n) continue;
        if (piv != r)
            for (std::size_t j = 0; j <= m; ++j) std::swap(a.at(piv, j), a.at(r, j));
        Rat d = a.at(r, col);
        for (std::size_t j = 0; j <= m; ++j) a.at(r, j) /= d;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == r || a.at(i, col) == 0) continue;
            Rat f = a.at(i, col);
            for (std::size_t j = 0; j <= m; ++j) a.at(i, j) -= f * a.at(r, j);
        }
        pivot_col.push_back(col);
        ++r;
    }
    for (std::size_t i = r; i < n; ++i)
        if (a.at(i, m) != 0) return std::nullopt;
    std::vector<Rat> x(m, Rat(0));
    for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = a.at(i, m);
    return x;
}

} // namespace mukai
