#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "arcweb/cupdiag.hpp"
#include "arcweb/laurent.hpp"
#include "arcweb/weights.hpp"

namespace arcweb {

// The caps of a diagram, organised by nesting into a forest.
struct CapForest {
    std::vector<std::pair<int, int>> caps;  // sorted by left endpoint
    std::vector<std::vector<int>> children;
    std::vector<int> roots;
};

inline CapForest cap_forest(const ArcSet& d) {
    CapForest f;
    f.caps = d.arcs;
    std::sort(f.caps.begin(), f.caps.end());
    f.children.resize(f.caps.size());
    // With caps sorted by left endpoint, the parent of a cap is the nearest
    // earlier cap still open at its left endpoint.
    std::vector<int> stack;
    for (size_t c = 0; c < f.caps.size(); ++c) {
        while (!stack.empty() &&
               f.caps[static_cast<size_t>(stack.back())].second < f.caps[c].first)
            stack.pop_back();
        if (stack.empty()) f.roots.push_back(static_cast<int>(c));
        else f.children[static_cast<size_t>(stack.back())].push_back(static_cast<int>(c));
        stack.push_back(static_cast<int>(c));
    }
    return f;
}

namespace detail {

// Strip the transparent vertices: only the up/down pattern matters here.
inline std::string free_pattern(const Weight& w) {
    std::string s;
    for (int pos = w.lo(); pos <= w.hi(); ++pos)
        if (is_free(w.at(pos))) s += lab_char(w.at(pos));
    return s;
}

inline Weight plain_weight(const std::string& pattern) {
    return Weight::parse(pattern.empty() ? std::string("o") : pattern);
}

}  // namespace detail

// Combinatorial Kazhdan-Lusztig polynomial via the chamber-labelling count:
// sum over labellings of the chambers of the cap picture of mu that vanish
// outside, weakly increase towards the inside, and are bounded on innermost
// caps by the running surplus at the cap's left endpoint.
inline Laurent kl_poly(const Weight& lambda, const Weight& mu) {
    std::string ls = detail::free_pattern(lambda), ms = detail::free_pattern(mu);
    if (ls.size() != ms.size()) return Laurent{};
    if (std::count(ls.begin(), ls.end(), 'v') != std::count(ms.begin(), ms.end(), 'v'))
        return Laurent{};
    if (ls == ms) return Laurent::one();
    Weight l = detail::plain_weight(ls), m = detail::plain_weight(ms);
    if (!bruhat_leq(l, m)) return Laurent{};

    CapForest f = cap_forest(cup_diagram_of(m));
    std::vector<int> leaf_bound(f.caps.size(), -1);
    for (size_t c = 0; c < f.caps.size(); ++c)
        if (f.children[c].empty()) leaf_bound[c] = ell_i(l, m, f.caps[c].first);

    std::map<std::pair<int, int>, Laurent> memo;
    std::function<Laurent(int, int)> count = [&](int c, int t) -> Laurent {
        auto key = std::make_pair(c, t);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        Laurent out;
        for (int s = t;; ++s) {
            if (f.children[static_cast<size_t>(c)].empty() &&
                s > leaf_bound[static_cast<size_t>(c)])
                break;
            Laurent term = Laurent::q(-2 * s);
            bool dead = false;
            for (int d : f.children[static_cast<size_t>(c)]) {
                Laurent g = count(d, s);
                if (g.is_zero()) {
                    dead = true;
                    break;
                }
                term = term * g;
            }
            if (dead) break;
            out += term;
        }
        memo[key] = out;
        return out;
    };

    Laurent total = Laurent::q(ell(l, m));
    for (int r : f.roots) total = total * count(r, 0);
    return total;
}

// The same polynomials by the deletion/transposition recursion.  The table
// memoises on stripped up/down patterns, so one instance serves all blocks.
class KlRecursion {
  public:
    Laurent operator()(const Weight& lambda, const Weight& mu) {
        std::string ls = detail::free_pattern(lambda), ms = detail::free_pattern(mu);
        if (ls.size() != ms.size()) return Laurent{};
        if (std::count(ls.begin(), ls.end(), 'v') != std::count(ms.begin(), ms.end(), 'v'))
            return Laurent{};
        return rec(ls, ms);
    }

  private:
    std::map<std::pair<std::string, std::string>, Laurent> memo_;

    static bool leq(const std::string& l, const std::string& m) {
        int surplus = 0;
        for (size_t k = 0; k < l.size(); ++k) {
            if (l[k] == 'v') ++surplus;
            if (m[k] == 'v') --surplus;
            if (surplus < 0) return false;
        }
        return true;
    }

    Laurent rec(const std::string& l, const std::string& m) {
        if (l == m) return Laurent::one();
        if (!leq(l, m)) return Laurent{};
        auto key = std::make_pair(l, m);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;

        size_t i = 0;
        while (i + 1 < l.size() && !(l[i] == 'v' && l[i + 1] == '^')) ++i;
        if (i + 1 >= l.size()) throw std::logic_error("no transposable pair below a larger weight");
        std::string swapped = l;
        swapped[i] = '^';
        swapped[i + 1] = 'v';
        Laurent out = Laurent::q() * rec(swapped, m);
        if (m[i] == 'v' && m[i + 1] == '^') {
            std::string l2 = l, m2 = m;
            l2.erase(i, 2);
            m2.erase(i, 2);
            out += rec(l2, m2);
        }
        memo_[key] = out;
        return out;
    }
};

// ---------------------------------------------------------------------------
// Block-level matrices.
// ---------------------------------------------------------------------------

inline LMat kl_matrix(const Block& b) {
    std::vector<Weight> wts = b.weights();
    int n = static_cast<int>(wts.size());
    LMat p(n, n);
    for (int l = 0; l < n; ++l)
        for (int m = 0; m < n; ++m)
            p.at(l, m) = kl_poly(wts[static_cast<size_t>(l)], wts[static_cast<size_t>(m)]);
    return p;
}

// Graded decomposition numbers straight from the diagram combinatorics.
inline LMat decomposition_matrix(const Block& b) {
    std::vector<Weight> wts = b.weights();
    int n = static_cast<int>(wts.size());
    LMat d(n, n);
    for (int l = 0; l < n; ++l)
        for (int m = 0; m < n; ++m) {
            int e = d_exponent(wts[static_cast<size_t>(l)], wts[static_cast<size_t>(m)]);
            if (e >= 0) d.at(l, m) = Laurent::q(e);
        }
    return d;
}

inline LMat cartan_matrix(const Block& b) {
    LMat d = decomposition_matrix(b);
    return d * d.transpose();
}

// The Yoneda pairing table predicted by the polynomials.
inline LMat ext_matrix(const Block& b) {
    LMat p = kl_matrix(b);
    return p.transpose() * p;
}

// The same table obtained by inverting the sign-twisted Cartan matrix using
// its unitriangular square root.
inline LMat ext_matrix_via_cartan(const Block& b) {
    LMat dneg = decomposition_matrix(b).subst_minus_q();
    LMat inv = unitriangular_inverse(dneg);
    return inv.transpose() * inv;
}

}  // namespace arcweb
