#pragma once

// Spans of oriented stacked diagrams over piles of matchings, viewed as
// two-sided modules: graded dimensions, the flattening bijection onto the
// squeezed pile, balanced tensor products over the junction algebra, and the
// contraction pairing between a band and its mirror image.

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "arcweb/algebra.hpp"
#include "arcweb/cupdiag.hpp"
#include "arcweb/laurent.hpp"
#include "arcweb/linalg.hpp"
#include "arcweb/matching.hpp"
#include "arcweb/modrep.hpp"
#include "arcweb/surgery.hpp"
#include "arcweb/weights.hpp"

namespace arcweb {

// Graded dimension of the diagram span over a context.
inline Laurent graded_dim(const StackContext& c) {
    Laurent out;
    for (const BasisElem& e : context_basis(c)) out += Laurent::q(elem_degree(c, e));
    return out;
}

// The weight whose canonical diagram is exactly `c`; throws when `c` is not
// canonical for the block.
inline Weight weight_of_canonical(const ArcSet& c, const Block& b) {
    Weight w;
    w.offset = b.offset;
    w.labels.reserve(b.frame.size());
    for (char f : b.frame)
        w.labels.push_back(f == 'o' ? Lab::Hole : f == 'x' ? Lab::Cross : Lab::Down);
    for (auto& [i, j] : c.arcs) {
        w.set(i, Lab::Down);
        w.set(j, Lab::Up);
    }
    for (auto& [p, tag] : c.rays) w.set(p, tag);
    if (!b.contains(w) || cup_diagram_of(w) != c)
        throw std::invalid_argument("diagram is not canonical for the block");
    return w;
}

// Interior circles of a pile of bands (ignoring any closing diagrams), in a
// fixed deterministic order.
inline std::vector<StackComponent> pile_circles(const StackContext& c) {
    Stack s;
    s.lines = c.lines;
    s.bands = c.bands;
    std::vector<StackComponent> out;
    for (StackComponent& comp : s.components())
        if (comp.is_circle) out.push_back(std::move(comp));
    return out;
}

// A basis diagram rewritten over the squeezed pile: the surviving two-line
// diagram plus the turning sense of every interior circle (true where the
// circle runs clockwise), listed in the order of pile_circles.
struct FlattenedElem {
    BasisElem elem;
    std::vector<bool> clockwise;

    bool operator<(const FlattenedElem& o) const {
        if (!(elem == o.elem)) return elem < o.elem;
        return clockwise < o.clockwise;
    }
};

inline FlattenedElem flatten_elem(const StackContext& c, const BasisElem& e) {
    if (c.bands.empty()) throw std::invalid_argument("flattening needs at least one band");
    FlattenedElem out;
    out.elem = {e.alpha, {e.nu.front(), e.nu.back()}, e.beta};
    for (const StackComponent& comp : pile_circles(c)) {
        StackVertex lm = comp.leftmost();
        out.clockwise.push_back(e.nu[static_cast<size_t>(lm.line)].at(lm.pos) == Lab::Up);
    }
    return out;
}

// True when products of elements of degree at most one span the whole
// algebra.  The balanced tensor computation below quotients only by
// relations attached to such elements, which is complete exactly when this
// holds.
inline bool generated_in_low_degrees(const ArcAlgebra& A) {
    int maxdeg = 0;
    for (int d : A.degree) maxdeg = std::max(maxdeg, d);
    std::vector<std::vector<int>> by_deg(static_cast<size_t>(maxdeg) + 1);
    for (int i = 0; i < A.dim(); ++i)
        by_deg[static_cast<size_t>(A.degree[static_cast<size_t>(i)])].push_back(i);
    for (int d = 2; d <= maxdeg; ++d) {
        const auto& target = by_deg[static_cast<size_t>(d)];
        if (target.empty()) continue;
        std::map<int, int> col;
        for (size_t k = 0; k < target.size(); ++k) col[target[k]] = static_cast<int>(k);
        std::vector<std::vector<Rational>> rows;
        for (int p : by_deg[static_cast<size_t>(d - 1)])
            for (int g : by_deg[1]) {
                const auto& prod = A.product(p, g);
                if (prod.empty()) continue;
                std::vector<Rational> row(target.size(), Rational(0));
                for (auto& [k, coeff] : prod) row[static_cast<size_t>(col.at(k))] = coeff;
                rows.push_back(std::move(row));
            }
        Matrix<Rational> m(static_cast<int>(rows.size()), static_cast<int>(target.size()));
        for (size_t r = 0; r < rows.size(); ++r)
            for (size_t cc = 0; cc < target.size(); ++cc)
                m.at(static_cast<int>(r), static_cast<int>(cc)) = rows[r][cc];
        if (rank(m) != static_cast<int>(target.size())) return false;
    }
    return true;
}

// Graded dimension of the tensor product of the two diagram spans over the
// junction algebra: pairs with matching junction weights, modulo moving an
// algebra element across the junction.  `AJ` must be the algebra of the
// shared line.  Only degree-one elements are moved across; see
// generated_in_low_degrees for why that suffices.
inline Laurent balanced_tensor_dim(const ArcAlgebra& AJ, const StackContext& cL,
                                   const StackContext& cR) {
    if (!(cL.lines.back() == AJ.block) || !(cR.lines.front() == AJ.block))
        throw std::invalid_argument("junction algebra does not match the contexts");
    StackContext alg = StackContext::algebra(AJ.block);

    std::vector<BasisElem> X = context_basis(cL), Y = context_basis(cR);
    std::vector<int> degX, degY;
    for (auto& x : X) degX.push_back(elem_degree(cL, x));
    for (auto& y : Y) degY.push_back(elem_degree(cR, y));
    std::map<BasisElem, int> xid, yid;
    for (size_t i = 0; i < X.size(); ++i) xid[X[i]] = static_cast<int>(i);
    for (size_t j = 0; j < Y.size(); ++j) yid[Y[j]] = static_cast<int>(j);

    // Slice the matched pairs by bottom weight, top weight and total degree.
    using Slice = std::tuple<Weight, Weight, int>;
    std::map<Slice, std::map<std::pair<int, int>, int>> coords;
    for (size_t i = 0; i < X.size(); ++i)
        for (size_t j = 0; j < Y.size(); ++j) {
            if (!(X[i].beta == Y[j].alpha)) continue;
            Slice s{X[i].alpha, Y[j].beta, degX[i] + degY[j]};
            auto& m = coords[s];
            int id = static_cast<int>(m.size());
            m[{static_cast<int>(i), static_cast<int>(j)}] = id;
        }

    std::map<Slice, std::vector<std::map<int, Rational>>> rels;
    for (int u = 0; u < AJ.dim(); ++u) {
        if (AJ.degree[static_cast<size_t>(u)] != 1) continue;
        const BasisElem& eu = AJ.basis[static_cast<size_t>(u)];
        std::map<size_t, Combination> uys;
        for (size_t j = 0; j < Y.size(); ++j)
            if (Y[j].alpha == eu.beta) uys[j] = multiply_stacks(alg, eu, cR, Y[j]);
        for (size_t i = 0; i < X.size(); ++i) {
            if (!(X[i].beta == eu.alpha)) continue;
            Combination xu = multiply_stacks(cL, X[i], alg, eu);
            for (auto& [j, uy] : uys) {
                Slice s{X[i].alpha, Y[j].beta, degX[i] + degY[j] + 1};
                auto& m = coords[s];
                std::map<int, Rational> row;
                for (auto& [xe, cx] : xu) {
                    int xi = xid.at(xe);
                    if (degX[static_cast<size_t>(xi)] + degY[j] != degX[i] + degY[j] + 1)
                        throw std::logic_error("product term leaves its degree slice");
                    row[m.at({xi, static_cast<int>(j)})] += Rational(cx);
                }
                for (auto& [ye, cy] : uy) {
                    int yj = yid.at(ye);
                    if (degX[i] + degY[static_cast<size_t>(yj)] != degX[i] + degY[j] + 1)
                        throw std::logic_error("product term leaves its degree slice");
                    row[m.at({static_cast<int>(i), yj})] -= Rational(cy);
                }
                for (auto it = row.begin(); it != row.end();)
                    it = (it->second == 0) ? row.erase(it) : std::next(it);
                if (!row.empty()) rels[s].push_back(std::move(row));
            }
        }
    }

    Laurent total;
    for (auto& [s, m] : coords) {
        int n = static_cast<int>(m.size());
        int r = 0;
        if (auto it = rels.find(s); it != rels.end()) {
            Matrix<Rational> sys(static_cast<int>(it->second.size()), n);
            for (size_t row = 0; row < it->second.size(); ++row)
                for (auto& [cc, v] : it->second[row]) sys.at(static_cast<int>(row), cc) = v;
            r = rank(sys);
        }
        total += Laurent::monomial(std::get<2>(s), n - r);
    }
    return total;
}

// The diagram span of a context as a left module over the algebra of its
// bottom line, with basis vectors keyed by bottom weight and degree.
template <class F>
inline Mod<F> left_module_of_context(const ArcAlgebra& A, const StackContext& c) {
    if (!(A.block == c.lines.front()))
        throw std::invalid_argument("algebra does not match the bottom line");
    StackContext alg = StackContext::algebra(A.block);
    std::vector<BasisElem> basis = context_basis(c);
    std::map<BasisElem, int> index;
    for (size_t i = 0; i < basis.size(); ++i) index[basis[i]] = static_cast<int>(i);
    Mod<F> m;
    m.A = &A;
    m.init_ops();
    for (auto& e : basis) {
        m.deg.push_back(elem_degree(c, e));
        m.wt.push_back(A.wt_index.at(e.alpha));
    }
    m.act.resize(static_cast<size_t>(A.dim()));
    for (int a = 0; a < A.dim(); ++a) {
        const BasisElem& ea = A.basis[static_cast<size_t>(a)];
        for (size_t j = 0; j < basis.size(); ++j) {
            if (!(basis[j].alpha == ea.beta)) continue;
            for (auto& [term, coeff] : multiply_stacks(alg, ea, c, basis[j]))
                m.act[static_cast<size_t>(a)].emplace_back(index.at(term), static_cast<int>(j),
                                                           F(coeff));
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// The contraction pairing of the mirror span against the original.
// ---------------------------------------------------------------------------

namespace detail {

inline bool stack_circle_clockwise(const StackComponent& comp, const std::vector<Weight>& wts) {
    StackVertex lm = comp.leftmost();
    return wts[static_cast<size_t>(lm.line)].at(lm.pos) == Lab::Up;
}

}  // namespace detail

// Pairing of a basis diagram over the mirror band against one over the band
// itself, landing in the algebra of the shared top line.  Zero unless the
// band is proper, the junction closures agree, and each trapped circle turns
// opposite ways on the two sides; otherwise the band is squeezed out and the
// surviving halves are multiplied.
inline Combination pairing_phi(const Matching& t, const BasisElem& x, const BasisElem& y) {
    if (!t.is_proper()) return {};
    if (!(y.alpha == x.beta)) return {};
    const Block lam = t.bottom, gam = t.top;

    Stack sx;  // the mirror band with the junction closed above
    sx.lines = {gam, lam};
    sx.bands = {t.mirrored()};
    sx.above = cap_diagram_of(x.beta);
    Stack sy;  // the band itself with the junction closed below
    sy.lines = {lam, gam};
    sy.bands = {t};
    sy.below = cup_diagram_of(y.alpha);

    std::map<std::vector<StackVertex>, const StackComponent*> mirror;
    std::vector<StackComponent> ycomps = sy.components();
    int ycircles = 0;
    for (const StackComponent& comp : ycomps) {
        if (!comp.is_circle) continue;
        ++ycircles;
        mirror[comp.vertices] = &comp;
    }
    int xcircles = 0;
    for (const StackComponent& comp : sx.components()) {
        if (!comp.is_circle) continue;
        ++xcircles;
        std::vector<StackVertex> flipped_set;
        for (const StackVertex& v : comp.vertices) flipped_set.push_back({1 - v.line, v.pos});
        std::sort(flipped_set.begin(), flipped_set.end());
        auto it = mirror.find(flipped_set);
        if (it == mirror.end()) throw std::logic_error("trapped circle has no mirror image");
        if (detail::stack_circle_clockwise(comp, x.nu) ==
            detail::stack_circle_clockwise(*it->second, y.nu))
            return {};
    }
    if (xcircles != ycircles) throw std::logic_error("trapped circle counts disagree");

    Reduction red = upper_reduction(sx);
    if (!red.diagram.rays_canonical())
        throw std::logic_error("junction reduction is not canonical");
    Weight gamma = weight_of_canonical(red.diagram, gam);

    BasisElem left{x.alpha, {x.nu.front()}, gamma};
    BasisElem right{gamma, {y.nu.back()}, y.beta};
    StackContext alg = StackContext::algebra(gam);
    if (!elem_oriented(alg, left) || !elem_oriented(alg, right))
        throw std::logic_error("squeezed halves are not oriented");
    return multiply_stacks(alg, left, alg, right);
}

// The pairing extended bilinearly to combinations in both slots.
inline Combination pairing_phi(const Matching& t, const Combination& xs, const Combination& ys) {
    Combination out;
    for (auto& [x, cx] : xs)
        for (auto& [y, cy] : ys)
            for (auto& [g, cg] : pairing_phi(t, x, y)) out[g] += cx * cy * cg;
    for (auto it = out.begin(); it != out.end();)
        it = (it->second == 0) ? out.erase(it) : std::next(it);
    return out;
}

// Matrix of the map sending a diagram over the band to the functional it
// induces on diagrams over the mirror band: rows run over (mirror diagram,
// algebra element) pairs, columns over diagrams on the band.
inline Matrix<Rational> pairing_matrix(const ArcAlgebra& AG, const Matching& t) {
    if (!(AG.block == t.top)) throw std::invalid_argument("algebra must sit on the top line");
    StackContext ct = StackContext::of_bands({t});
    StackContext cts = StackContext::of_bands({t.mirrored()});
    std::vector<BasisElem> X = context_basis(cts), Y = context_basis(ct);
    Matrix<Rational> out(static_cast<int>(X.size()) * AG.dim(), static_cast<int>(Y.size()));
    for (size_t j = 0; j < Y.size(); ++j)
        for (size_t i = 0; i < X.size(); ++i)
            for (auto& [g, coeff] : pairing_phi(t, X[i], Y[j]))
                out.at(static_cast<int>(i) * AG.dim() + AG.index_of(g), static_cast<int>(j)) +=
                    Rational(coeff);
    return out;
}

}  // namespace arcweb
