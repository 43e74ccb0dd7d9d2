#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <vector>

namespace arcweb {

using Rational = boost::multiprecision::cpp_rational;

// Prime field with a process-wide runtime modulus (set once before use).
struct Fp {
    static inline long long p = 2;
    long long v = 0;

    Fp() = default;
    Fp(long long x) : v(((x % p) + p) % p) {}

    static void set_modulus(long long prime) {
        if (prime < 2) throw std::invalid_argument("modulus must be a prime >= 2");
        for (long long d = 2; d * d <= prime; ++d)
            if (prime % d == 0) throw std::invalid_argument("modulus must be prime");
        p = prime;
    }

    friend Fp operator+(Fp a, Fp b) { return Fp(a.v + b.v); }
    friend Fp operator-(Fp a, Fp b) { return Fp(a.v - b.v); }
    friend Fp operator*(Fp a, Fp b) { return Fp(a.v * b.v); }
    Fp operator-() const { return Fp(-v); }
    Fp& operator+=(Fp o) { return *this = *this + o; }
    Fp& operator-=(Fp o) { return *this = *this - o; }
    Fp& operator*=(Fp o) { return *this = *this * o; }
    bool operator==(Fp o) const { return v == o.v; }
    bool operator!=(Fp o) const { return v != o.v; }

    Fp inv() const {
        if (v == 0) throw std::domain_error("division by zero");
        // Extended Euclid.
        long long a = v, b = p, x0 = 1, x1 = 0;
        while (b) {
            long long t = a / b;
            a -= t * b;
            std::swap(a, b);
            x0 -= t * x1;
            std::swap(x0, x1);
        }
        return Fp(x0);
    }
    friend Fp operator/(Fp a, Fp b) { return a * b.inv(); }
};

template <class F>
inline F field_inv(const F& x) {
    return F(1) / x;
}
template <>
inline Fp field_inv<Fp>(const Fp& x) {
    return x.inv();
}

template <class F>
struct Matrix {
    int rows = 0, cols = 0;
    std::vector<F> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, F(0)) {}

    F& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const F& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = F(1);
        return m;
    }

    Matrix transposed() const {
        Matrix t(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols != y.rows) throw std::invalid_argument("matrix shapes do not compose");
        Matrix z(x.rows, y.cols);
        for (int i = 0; i < x.rows; ++i)
            for (int k = 0; k < x.cols; ++k) {
                const F& v = x.at(i, k);
                if (v == F(0)) continue;
                for (int j = 0; j < y.cols; ++j) z.at(i, j) += v * y.at(k, j);
            }
        return z;
    }

    friend Matrix operator+(const Matrix& x, const Matrix& y) {
        if (x.rows != y.rows || x.cols != y.cols)
            throw std::invalid_argument("matrix shapes differ");
        Matrix z = x;
        for (size_t k = 0; k < z.a.size(); ++k) z.a[k] += y.a[k];
        return z;
    }

    bool operator==(const Matrix& o) const {
        return rows == o.rows && cols == o.cols && a == o.a;
    }

    bool is_zero() const {
        for (const F& v : a)
            if (!(v == F(0))) return false;
        return true;
    }
};

// In-place reduced row echelon form; returns the pivot columns.
template <class F>
inline std::vector<int> rref(Matrix<F>& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int sel = -1;
        for (int i = r; i < m.rows; ++i)
            if (!(m.at(i, c) == F(0))) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        if (sel != r)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(r, j));
        F inv = field_inv(m.at(r, c));
        for (int j = c; j < m.cols; ++j) m.at(r, j) *= inv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, c) == F(0)) continue;
            F f = m.at(i, c);
            for (int j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class F>
inline int rank(Matrix<F> m) {
    return static_cast<int>(rref(m).size());
}

// Basis of the right kernel, one column vector per row of the result.
template <class F>
inline std::vector<std::vector<F>> nullspace(Matrix<F> m) {
    int n = m.cols;
    std::vector<int> pivots = rref(m);
    std::vector<bool> is_pivot(static_cast<size_t>(n), false);
    for (int c : pivots) is_pivot[static_cast<size_t>(c)] = true;
    std::vector<std::vector<F>> basis;
    for (int freec = 0; freec < n; ++freec) {
        if (is_pivot[static_cast<size_t>(freec)]) continue;
        std::vector<F> v(static_cast<size_t>(n), F(0));
        v[static_cast<size_t>(freec)] = F(1);
        for (size_t pi = 0; pi < pivots.size(); ++pi)
            v[static_cast<size_t>(pivots[pi])] = -m.at(static_cast<int>(pi), freec);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Row-space basis as a matrix in echelon form (zero rows removed).
template <class F>
inline Matrix<F> row_basis(Matrix<F> m) {
    std::vector<int> pivots = rref(m);
    Matrix<F> out(static_cast<int>(pivots.size()), m.cols);
    for (int i = 0; i < out.rows; ++i)
        for (int j = 0; j < m.cols; ++j) out.at(i, j) = m.at(i, j);
    return out;
}

// Solve A x = b; returns false when inconsistent.
template <class F>
inline bool solve(const Matrix<F>& A, const std::vector<F>& b, std::vector<F>& x) {
    Matrix<F> aug(A.rows, A.cols + 1);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, A.cols) = b[static_cast<size_t>(i)];
    }
    std::vector<int> pivots = rref(aug);
    for (int c : pivots)
        if (c == A.cols) return false;
    x.assign(static_cast<size_t>(A.cols), F(0));
    for (size_t pi = 0; pi < pivots.size(); ++pi)
        x[static_cast<size_t>(pivots[pi])] = aug.at(static_cast<int>(pi), A.cols);
    return true;
}

}  // namespace arcweb
