#pragma once

#include <cstdint>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace arcweb {

// Sparse Laurent polynomial in one variable q with 64-bit integer
// coefficients.  Exponents may be negative.  The zero polynomial is the
// empty coefficient map.
class Laurent {
public:
    Laurent() = default;

    static Laurent one() { return monomial(0, 1); }
    static Laurent q(int exp = 1) { return monomial(exp, 1); }

    static Laurent monomial(int exp, long long coeff) {
        Laurent p;
        if (coeff != 0) p.c_[exp] = coeff;
        return p;
    }

    bool is_zero() const { return c_.empty(); }

    long long coeff(int exp) const {
        auto it = c_.find(exp);
        return it == c_.end() ? 0 : it->second;
    }

    // Lowest/highest exponent with nonzero coefficient; throws on zero.
    int min_deg() const { require_nonzero(); return c_.begin()->first; }
    int max_deg() const { require_nonzero(); return c_.rbegin()->first; }

    const std::map<int, long long>& terms() const { return c_; }

    Laurent& operator+=(const Laurent& o) {
        for (auto& [e, v] : o.c_) add_term(e, v);
        return *this;
    }
    Laurent& operator-=(const Laurent& o) {
        for (auto& [e, v] : o.c_) add_term(e, -v);
        return *this;
    }
    Laurent operator+(const Laurent& o) const { Laurent r = *this; r += o; return r; }
    Laurent operator-(const Laurent& o) const { Laurent r = *this; r -= o; return r; }
    Laurent operator-() const {
        Laurent r;
        for (auto& [e, v] : c_) r.c_[e] = -v;
        return r;
    }

    Laurent operator*(const Laurent& o) const {
        Laurent r;
        for (auto& [e1, v1] : c_)
            for (auto& [e2, v2] : o.c_) r.add_term(e1 + e2, v1 * v2);
        return r;
    }
    Laurent& operator*=(const Laurent& o) { *this = *this * o; return *this; }

    Laurent scaled(long long k) const {
        Laurent r;
        if (k == 0) return r;
        for (auto& [e, v] : c_) r.c_[e] = v * k;
        return r;
    }

    // Multiply by q^k (a degree shift).
    Laurent shifted(int k) const {
        Laurent r;
        for (auto& [e, v] : c_) r.c_[e + k] = v;
        return r;
    }

    // Substitute q -> -q: negates coefficients in odd exponents.
    Laurent subst_minus_q() const {
        Laurent r;
        for (auto& [e, v] : c_) r.c_[e] = (e % 2 != 0) ? -v : v;
        return r;
    }

    // Substitute q -> q^{-1}.
    Laurent bar() const {
        Laurent r;
        for (auto& [e, v] : c_) r.c_[-e] = v;
        return r;
    }

    long long eval_at_one() const {
        long long s = 0;
        for (auto& [e, v] : c_) { (void)e; s += v; }
        return s;
    }

    bool operator==(const Laurent& o) const { return c_ == o.c_; }
    bool operator!=(const Laurent& o) const { return !(*this == o); }

    // Rendered with terms in ascending exponent order, e.g. "q^-2+2+q^2",
    // "q^10+2q^12".  Exponent 0 prints the bare coefficient, exponent 1
    // prints "q", and unit coefficients are suppressed next to a power.
    std::string to_string() const {
        if (c_.empty()) return "0";
        std::string out;
        bool first = true;
        for (auto& [e, v] : c_) {
            long long a = v;
            if (first) {
                if (a < 0) { out += '-'; a = -a; }
            } else {
                out += (a < 0) ? '-' : '+';
                if (a < 0) a = -a;
            }
            first = false;
            if (e == 0) {
                out += std::to_string(a);
            } else {
                if (a != 1) out += std::to_string(a);
                out += 'q';
                if (e != 1) out += '^' + std::to_string(e);
            }
        }
        return out;
    }

    static Laurent parse(const std::string& s) {
        Laurent r;
        size_t i = 0;
        auto skip_ws = [&] { while (i < s.size() && std::isspace((unsigned char)s[i])) ++i; };
        skip_ws();
        if (i == s.size()) throw std::invalid_argument("empty Laurent string");
        bool any = false;
        while (i < s.size()) {
            skip_ws();
            long long sign = 1;
            if (s[i] == '+' || s[i] == '-') {
                if (s[i] == '-') sign = -1;
                ++i;
                skip_ws();
            } else if (any) {
                throw std::invalid_argument("expected +/- in Laurent string: " + s);
            }
            long long mag = -1;
            if (i < s.size() && std::isdigit((unsigned char)s[i])) {
                mag = 0;
                while (i < s.size() && std::isdigit((unsigned char)s[i]))
                    mag = mag * 10 + (s[i++] - '0');
            }
            int exp = 0;
            if (i < s.size() && s[i] == 'q') {
                ++i;
                exp = 1;
                if (i < s.size() && s[i] == '^') {
                    ++i;
                    bool neg = false;
                    if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = (s[i++] == '-');
                    if (i >= s.size() || !std::isdigit((unsigned char)s[i]))
                        throw std::invalid_argument("bad exponent in Laurent string: " + s);
                    int v = 0;
                    while (i < s.size() && std::isdigit((unsigned char)s[i]))
                        v = v * 10 + (s[i++] - '0');
                    exp = neg ? -v : v;
                }
                if (mag < 0) mag = 1;
            } else if (mag < 0) {
                throw std::invalid_argument("bad term in Laurent string: " + s);
            }
            r.add_term(exp, sign * mag);
            any = true;
            skip_ws();
        }
        return r;
    }

private:
    void require_nonzero() const {
        if (c_.empty()) throw std::logic_error("degree of zero polynomial");
    }
    void add_term(int e, long long v) {
        if (v == 0) return;
        auto [it, fresh] = c_.try_emplace(e, 0);
        (void)fresh;
        it->second += v;
        if (it->second == 0) c_.erase(it);
    }

    std::map<int, long long> c_;
};

inline Laurent operator*(long long k, const Laurent& p) { return p.scaled(k); }

// Dense matrix of Laurent polynomials (row-major).
struct LMat {
    int rows = 0, cols = 0;
    std::vector<Laurent> a;

    LMat() = default;
    LMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    Laurent& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Laurent& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static LMat identity(int n) {
        LMat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = Laurent::one();
        return m;
    }

    bool operator==(const LMat& o) const {
        return rows == o.rows && cols == o.cols && a == o.a;
    }

    LMat transpose() const {
        LMat t(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    LMat subst_minus_q() const {
        LMat t(rows, cols);
        for (size_t k = 0; k < a.size(); ++k) t.a[k] = a[k].subst_minus_q();
        return t;
    }

    LMat operator*(const LMat& o) const {
        if (cols != o.rows) throw std::invalid_argument("LMat shape mismatch");
        LMat r(rows, o.cols);
        for (int i = 0; i < rows; ++i)
            for (int k = 0; k < cols; ++k) {
                const Laurent& x = at(i, k);
                if (x.is_zero()) continue;
                for (int j = 0; j < o.cols; ++j) {
                    const Laurent& y = o.at(k, j);
                    if (!y.is_zero()) r.at(i, j) += x * y;
                }
            }
        return r;
    }

    bool is_identity() const {
        if (rows != cols) return false;
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) {
                const Laurent& v = at(i, j);
                if (i == j ? v != Laurent::one() : !v.is_zero()) return false;
            }
        return true;
    }
};

// Inverse of an upper unitriangular matrix by back substitution; entries of
// the inverse stay Laurent polynomials.
inline LMat unitriangular_inverse(const LMat& d) {
    if (d.rows != d.cols) throw std::invalid_argument("not square");
    int n = d.rows;
    for (int i = 0; i < n; ++i) {
        if (d.at(i, i) != Laurent::one()) throw std::invalid_argument("diagonal not 1");
        for (int j = 0; j < i; ++j)
            if (!d.at(i, j).is_zero()) throw std::invalid_argument("not upper triangular");
    }
    LMat x = LMat::identity(n);
    for (int j = 0; j < n; ++j)
        for (int i = j - 1; i >= 0; --i) {
            Laurent s;
            for (int k = i + 1; k <= j; ++k) s += d.at(i, k) * x.at(k, j);
            x.at(i, j) = -s;
        }
    return x;
}

}  // namespace arcweb
