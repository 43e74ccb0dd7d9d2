#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "arcweb/weights.hpp"

namespace arcweb {

// Arcs attached to one side of a number line: paired vertices plus tagged
// rays.  The same shape serves as a cup diagram (arcs hang below the line,
// rays run down) and, mirrored, as a cap diagram (arcs above, rays up).
struct ArcSet {
    std::vector<std::pair<int, int>> arcs;  // (i, j) with i < j, sorted by i
    std::map<int, Lab> rays;                // position -> Down or Up tag

    int narcs() const { return static_cast<int>(arcs.size()); }

    void normalize() {
        for (auto& [i, j] : arcs)
            if (i > j) std::swap(i, j);
        std::sort(arcs.begin(), arcs.end());
    }

    bool covers(int pos) const {
        for (auto& [i, j] : arcs)
            if (i == pos || j == pos) return true;
        return rays.count(pos) > 0;
    }

    bool operator==(const ArcSet& o) const { return arcs == o.arcs && rays == o.rays; }
    bool operator!=(const ArcSet& o) const { return !(*this == o); }

    // Arcs must be pairwise non-crossing and no ray may sit under an arc.
    bool planar() const {
        for (size_t a = 0; a < arcs.size(); ++a)
            for (size_t b = a + 1; b < arcs.size(); ++b) {
                auto [i1, j1] = arcs[a];
                auto [i2, j2] = arcs[b];
                bool nested = (i1 < i2 && j2 < j1) || (i2 < i1 && j1 < j2);
                bool disjoint = j1 < i2 || j2 < i1;
                if (!nested && !disjoint) return false;
            }
        for (auto& [pos, tag] : rays) {
            (void)tag;
            for (auto& [i, j] : arcs)
                if (i < pos && pos < j) return false;
        }
        return true;
    }

    // Canonical shapes have all Up rays to the left of all Down rays.
    bool rays_canonical() const {
        bool seen_down = false;
        for (auto& [pos, tag] : rays) {
            (void)pos;
            if (tag == Lab::Down) seen_down = true;
            else if (seen_down) return false;
        }
        return true;
    }
};

using CupDiagram = ArcSet;
using CapDiagram = ArcSet;

// The canonical cup diagram of a weight: scan free vertices left to right,
// pushing each Down and closing a cup at each Up that can see an unmatched
// Down; unmatched vertices become rays carrying their labels.
inline CupDiagram cup_diagram_of(const Weight& w) {
    CupDiagram c;
    std::vector<int> stack;
    for (int pos = w.lo(); pos <= w.hi(); ++pos) {
        Lab l = w.at(pos);
        if (l == Lab::Down) {
            stack.push_back(pos);
        } else if (l == Lab::Up) {
            if (!stack.empty()) {
                c.arcs.emplace_back(stack.back(), pos);
                stack.pop_back();
            } else {
                c.rays[pos] = Lab::Up;
            }
        }
    }
    for (int pos : stack) c.rays[pos] = Lab::Down;
    c.normalize();
    return c;
}

inline CapDiagram cap_diagram_of(const Weight& w) { return cup_diagram_of(w); }

inline int defect(const Weight& w) { return cup_diagram_of(w).narcs(); }

inline int max_defect(const Block& b) { return std::min(b.ndown, b.nup); }

inline bool is_max_defect(const Weight& w) {
    return defect(w) == max_defect(block_of(w));
}

// Weights of maximal defect in the block, canonical order.
inline std::vector<Weight> max_defect_weights(const Block& b) {
    std::vector<Weight> out;
    for (const Weight& w : b.weights())
        if (defect(w) == max_defect(b)) out.push_back(w);
    return out;
}

// Orientation test for a one-sided diagram against a weight: every arc sees
// one Down and one Up, every ray matches its tag.
inline bool oriented(const ArcSet& c, const Weight& w) {
    for (auto& [i, j] : c.arcs) {
        if (!w.in_window(i) || !w.in_window(j)) return false;
        Lab a = w.at(i), b = w.at(j);
        if (!is_free(a) || !is_free(b) || a == b) return false;
    }
    for (auto& [pos, tag] : c.rays) {
        if (!w.in_window(pos)) return false;
        if (w.at(pos) != tag) return false;
    }
    return true;
}

// Degree contribution of one side: the number of clockwise arcs, i.e. arcs
// whose left endpoint is labelled Up.
inline int side_degree(const ArcSet& c, const Weight& w) {
    int d = 0;
    for (auto& [i, j] : c.arcs) {
        (void)j;
        if (w.at(i) == Lab::Up) ++d;
    }
    return d;
}

// Decomposition-matrix entry exponent: degree of the canonical diagram of
// lambda decorated by mu, or -1 when that diagram is not oriented.
inline int d_exponent(const Weight& lambda, const Weight& mu) {
    CupDiagram c = cup_diagram_of(lambda);
    if (!oriented(c, mu)) return -1;
    return side_degree(c, mu);
}

// The maximal-defect weight whose canonical cup diagram closes off lambda
// with the largest possible degree, together with that diagram.
struct LambdaCirc {
    Weight weight;
    CupDiagram diagram;
    int degree = 0;  // degree of the diagram decorated by the input weight
};

inline LambdaCirc lambda_circ(const Weight& lambda) {
    std::vector<int> free;
    for (int pos = lambda.lo(); pos <= lambda.hi(); ++pos)
        if (is_free(lambda.at(pos))) free.push_back(pos);
    std::map<int, bool> used;
    for (int pos : free) used[pos] = false;

    LambdaCirc out;
    // Stage 1: repeatedly connect Up-Down pairs whose gap is fully used up;
    // these arcs are clockwise against the input weight.
    bool progress = true;
    while (progress) {
        progress = false;
        for (size_t a = 0; a + 1 < free.size(); ++a) {
            if (used[free[a]] || lambda.at(free[a]) != Lab::Up) continue;
            size_t b = a + 1;
            while (b < free.size() && used[free[b]]) ++b;
            if (b >= free.size() || lambda.at(free[b]) != Lab::Down) continue;
            out.diagram.arcs.emplace_back(free[a], free[b]);
            used[free[a]] = used[free[b]] = true;
            ++out.degree;
            progress = true;
        }
    }
    // Stage 2: the surviving labels read Down...Down Up...Up; join as many
    // Down-Up pairs as possible by nested anticlockwise arcs.
    std::vector<int> downs, ups;
    for (int pos : free) {
        if (used[pos]) continue;
        (lambda.at(pos) == Lab::Down ? downs : ups).push_back(pos);
        if (!ups.empty() && lambda.at(pos) == Lab::Down)
            throw std::logic_error("unmatched Down after Up while building socle weight");
    }
    size_t m = std::min(downs.size(), ups.size());
    for (size_t k = 0; k < m; ++k)
        out.diagram.arcs.emplace_back(downs[downs.size() - 1 - k], ups[k]);
    // Stage 3: leftovers become rays, necessarily all of one kind.
    for (size_t k = 0; k + m < downs.size(); ++k) out.diagram.rays[downs[k]] = Lab::Down;
    for (size_t k = m; k < ups.size(); ++k) out.diagram.rays[ups[k]] = Lab::Up;
    out.diagram.normalize();

    // Read off the weight whose canonical diagram this is.
    out.weight = lambda;
    for (auto& [i, j] : out.diagram.arcs) {
        out.weight.set(i, Lab::Down);
        out.weight.set(j, Lab::Up);
    }
    for (auto& [pos, tag] : out.diagram.rays) out.weight.set(pos, tag);
    if (cup_diagram_of(out.weight) != out.diagram)
        throw std::logic_error("socle weight construction is not canonical");
    return out;
}

}  // namespace arcweb
