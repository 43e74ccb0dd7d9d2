#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "arcweb/algebra.hpp"
#include "arcweb/linalg.hpp"

namespace arcweb {

// A finite-dimensional graded left module, presented by an explicit basis.
// Every basis vector is homogeneous and lies in a single idempotent slice,
// so it carries a degree and a weight index.  The action is stored per
// algebra basis element as sparse triplets (row, col, coeff).
template <class F>
struct Mod {
    const ArcAlgebra* A = nullptr;
    std::vector<int> deg;
    std::vector<int> wt;
    std::vector<std::vector<std::tuple<int, int, F>>> act;
    // Algebra elements whose action is meaningful here.  Defaults to all of
    // them; idempotent truncations restrict it.
    std::vector<int> ops;

    int dim() const { return static_cast<int>(deg.size()); }

    void init_ops() {
        ops.resize(static_cast<size_t>(A->dim()));
        for (int i = 0; i < A->dim(); ++i) ops[static_cast<size_t>(i)] = i;
    }

    std::vector<F> apply(int a, const std::vector<F>& x) const {
        std::vector<F> out(static_cast<size_t>(dim()), F(0));
        for (auto& [r, c, v] : act[static_cast<size_t>(a)])
            out[static_cast<size_t>(r)] += v * x[static_cast<size_t>(c)];
        return out;
    }

    Matrix<F> action_matrix(int a) const {
        Matrix<F> m(dim(), dim());
        for (auto& [r, c, v] : act[static_cast<size_t>(a)]) m.at(r, c) += v;
        return m;
    }

    // Graded dimension of the slice e_w M.
    Laurent char_idem(int w) const {
        Laurent out;
        for (int i = 0; i < dim(); ++i)
            if (wt[static_cast<size_t>(i)] == w) out += Laurent::q(deg[static_cast<size_t>(i)]);
        return out;
    }

    Laurent char_total() const {
        Laurent out;
        for (int d : deg) out += Laurent::q(d);
        return out;
    }

    // Composition multiplicities: since every irreducible is one dimensional,
    // the graded multiplicity of the w-th one is just char_idem(w).
    std::map<std::pair<int, int>, int> composition_factors() const {
        std::map<std::pair<int, int>, int> out;
        for (int i = 0; i < dim(); ++i)
            ++out[{wt[static_cast<size_t>(i)], deg[static_cast<size_t>(i)]}];
        return out;
    }
};

template <class F>
inline Mod<F> shifted_module(Mod<F> m, int j) {
    for (int& d : m.deg) d += j;
    return m;
}

// The cell module of a weight: one basis vector per diagram closing mu off,
// graded by the diagram's degree; a basis element (alpha|lam|beta) moves the
// vector at beta to the vector at alpha, scaled by the structure constant.
template <class F>
inline Mod<F> cell_module(const ArcAlgebra& A, const Weight& mu) {
    Mod<F> m;
    m.A = &A;
    m.init_ops();
    std::vector<int> wts;  // weight indices whose diagram accepts mu
    std::map<int, int> local;
    for (int w = 0; w < A.nwts(); ++w) {
        const Weight& lam = A.wts[static_cast<size_t>(w)];
        CupDiagram c = cup_diagram_of(lam);
        if (!oriented(c, mu)) continue;
        local[w] = static_cast<int>(wts.size());
        wts.push_back(w);
        m.wt.push_back(w);
        m.deg.push_back(side_degree(c, mu));
    }
    m.act.resize(static_cast<size_t>(A.dim()));
    for (int a = 0; a < A.dim(); ++a) {
        const BasisElem& e = A.basis[static_cast<size_t>(a)];
        auto cit = local.find(A.wt_index.at(e.beta));
        auto rit = local.find(A.wt_index.at(e.alpha));
        if (cit == local.end() || rit == local.end()) continue;
        long long s = A.cell_scalar(a, mu);
        if (s != 0) m.act[static_cast<size_t>(a)].emplace_back(rit->second, cit->second, F(s));
    }
    return m;
}

// The irreducible head of a cell module: one dimensional.
template <class F>
inline Mod<F> simple_module(const ArcAlgebra& A, int w) {
    Mod<F> m;
    m.A = &A;
    m.init_ops();
    m.deg = {0};
    m.wt = {w};
    m.act.resize(static_cast<size_t>(A.dim()));
    m.act[static_cast<size_t>(A.idem(w))].emplace_back(0, 0, F(1));
    return m;
}

// The projective module K e_w, with the algebra acting by left multiplication.
template <class F>
inline Mod<F> proj_module(const ArcAlgebra& A, int w) {
    Mod<F> m;
    m.A = &A;
    m.init_ops();
    std::vector<int> global;
    std::map<int, int> local;
    for (int i = 0; i < A.dim(); ++i) {
        if (!(A.basis[static_cast<size_t>(i)].beta == A.wts[static_cast<size_t>(w)])) continue;
        local[i] = static_cast<int>(global.size());
        global.push_back(i);
        m.deg.push_back(A.degree[static_cast<size_t>(i)]);
        m.wt.push_back(A.wt_index.at(A.basis[static_cast<size_t>(i)].alpha));
    }
    m.act.resize(static_cast<size_t>(A.dim()));
    for (int a = 0; a < A.dim(); ++a)
        for (size_t c = 0; c < global.size(); ++c)
            for (auto& [k, coeff] : A.product(a, global[c]))
                m.act[static_cast<size_t>(a)].emplace_back(local.at(k), static_cast<int>(c),
                                                           F(coeff));
    return m;
}

template <class F>
inline Mod<F> direct_sum(const std::vector<Mod<F>>& parts) {
    if (parts.empty()) throw std::invalid_argument("empty direct sum needs an algebra");
    Mod<F> m;
    m.A = parts.front().A;
    m.ops = parts.front().ops;
    m.act.resize(parts.front().act.size());
    int offset = 0;
    for (auto& p : parts) {
        m.deg.insert(m.deg.end(), p.deg.begin(), p.deg.end());
        m.wt.insert(m.wt.end(), p.wt.begin(), p.wt.end());
        for (size_t a = 0; a < p.act.size(); ++a)
            for (auto& [r, c, v] : p.act[a])
                m.act[a].emplace_back(r + offset, c + offset, v);
        offset += p.dim();
    }
    return m;
}

// The graded dual, with the action twisted by the reflection
// anti-automorphism and all degrees negated.
template <class F>
inline Mod<F> dual_module(const Mod<F>& m) {
    Mod<F> d;
    d.A = m.A;
    d.ops = m.ops;
    d.wt = m.wt;
    for (int x : m.deg) d.deg.push_back(-x);
    d.act.resize(m.act.size());
    for (int a : m.ops)
        for (auto& [r, c, v] : m.act[static_cast<size_t>(m.A->star(a))])
            d.act[static_cast<size_t>(a)].emplace_back(c, r, v);
    return d;
}

// Idempotent truncation: keep only the slices over the given weights, and
// only the action of elements supported there on both sides.
template <class F>
inline Mod<F> truncate_module(const Mod<F>& m, const std::set<int>& keep) {
    Mod<F> t;
    t.A = m.A;
    std::map<int, int> local;
    for (int i = 0; i < m.dim(); ++i) {
        if (!keep.count(m.wt[static_cast<size_t>(i)])) continue;
        local[i] = t.dim();
        t.deg.push_back(m.deg[static_cast<size_t>(i)]);
        t.wt.push_back(m.wt[static_cast<size_t>(i)]);
    }
    t.act.resize(m.act.size());
    for (int a = 0; a < m.A->dim(); ++a) {
        const BasisElem& e = m.A->basis[static_cast<size_t>(a)];
        if (!keep.count(m.A->wt_index.at(e.alpha)) || !keep.count(m.A->wt_index.at(e.beta)))
            continue;
        t.ops.push_back(a);
        for (auto& [r, c, v] : m.act[static_cast<size_t>(a)]) {
            auto rit = local.find(r), cit = local.find(c);
            if (rit != local.end() && cit != local.end())
                t.act[static_cast<size_t>(a)].emplace_back(rit->second, cit->second, v);
        }
    }
    return t;
}

// ---------------------------------------------------------------------------
// Subspace bookkeeping: a self-maintaining reduced echelon span.
// ---------------------------------------------------------------------------

template <class F>
struct RrefSpan {
    int ambient = 0;
    std::vector<std::vector<F>> rows;  // unit pivot entries, pivot columns cleared elsewhere
    std::vector<int> piv;

    explicit RrefSpan(int n) : ambient(n) {}

    int dim() const { return static_cast<int>(rows.size()); }

    // Subtract off the span; returns false when v lies inside it.
    bool reduce(std::vector<F>& v) const {
        for (size_t r = 0; r < rows.size(); ++r) {
            F f = v[static_cast<size_t>(piv[r])];
            if (f == F(0)) continue;
            for (int j = 0; j < ambient; ++j) v[static_cast<size_t>(j)] -= f * rows[r][static_cast<size_t>(j)];
        }
        for (auto& x : v)
            if (!(x == F(0))) return true;
        return false;
    }

    bool insert(std::vector<F> v) {
        if (!reduce(v)) return false;
        int p = 0;
        while (v[static_cast<size_t>(p)] == F(0)) ++p;
        F inv = field_inv(v[static_cast<size_t>(p)]);
        for (auto& x : v) x *= inv;
        for (auto& row : rows) {
            F f = row[static_cast<size_t>(p)];
            if (f == F(0)) continue;
            for (int j = 0; j < ambient; ++j) row[static_cast<size_t>(j)] -= f * v[static_cast<size_t>(j)];
        }
        rows.push_back(std::move(v));
        piv.push_back(p);
        return true;
    }

    bool contains(std::vector<F> v) const { return !reduce(v); }
};

// A homogeneous subspace of a module closed under the action, with its own
// module structure and the embedding rows.
template <class F>
struct SubModule {
    Mod<F> mod;
    std::vector<std::vector<F>> embed;  // mod basis vector -> ambient coordinates
    std::vector<int> piv;               // pivot column per basis vector
};

namespace detail {

template <class F>
inline std::pair<int, int> homogeneity(const Mod<F>& m, const std::vector<F>& v) {
    int w = -1, d = 0;
    for (int i = 0; i < m.dim(); ++i) {
        if (v[static_cast<size_t>(i)] == F(0)) continue;
        if (w < 0) {
            w = m.wt[static_cast<size_t>(i)];
            d = m.deg[static_cast<size_t>(i)];
        } else if (w != m.wt[static_cast<size_t>(i)] || d != m.deg[static_cast<size_t>(i)]) {
            throw std::invalid_argument("submodule generator is not homogeneous");
        }
    }
    return {w, d};
}

}  // namespace detail

// Close homogeneous generators under the action.  Callers that already know
// the span is action-closed (radicals, socles, kernels of module maps) skip
// the worklist sweep; the residual check below still catches violations.
template <class F>
inline SubModule<F> submodule(const Mod<F>& m, const std::vector<std::vector<F>>& gens,
                              bool assume_closed = false) {
    RrefSpan<F> span(m.dim());
    std::vector<std::vector<F>> work;
    for (auto& g : gens) {
        detail::homogeneity(m, g);
        if (span.insert(g)) work.push_back(g);
    }
    // Worklist closure; inserting a reduced vector keeps homogeneity because
    // row operations only ever mix vectors sharing a pivot slice.
    for (size_t k = 0; !assume_closed && k < work.size(); ++k) {
        for (int a : m.ops) {
            if (m.act[static_cast<size_t>(a)].empty()) continue;
            std::vector<F> img = m.apply(a, work[k]);
            bool nz = false;
            for (auto& x : img)
                if (!(x == F(0))) {
                    nz = true;
                    break;
                }
            if (nz && span.insert(img)) work.push_back(std::move(img));
        }
    }
    // Order the final basis by (degree, weight, pivot).
    std::vector<int> order(static_cast<size_t>(span.dim()));
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::vector<std::pair<int, int>> wd(order.size());
    for (size_t i = 0; i < order.size(); ++i) {
        auto h = detail::homogeneity(m, span.rows[i]);
        wd[i] = {h.second, h.first};  // (deg, wt)
    }
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        if (wd[static_cast<size_t>(x)] != wd[static_cast<size_t>(y)])
            return wd[static_cast<size_t>(x)] < wd[static_cast<size_t>(y)];
        return span.piv[static_cast<size_t>(x)] < span.piv[static_cast<size_t>(y)];
    });

    SubModule<F> out;
    out.mod.A = m.A;
    out.mod.ops = m.ops;
    std::vector<int> pivcol;
    for (int i : order) {
        out.embed.push_back(span.rows[static_cast<size_t>(i)]);
        out.piv.push_back(span.piv[static_cast<size_t>(i)]);
        out.mod.deg.push_back(wd[static_cast<size_t>(i)].first);
        out.mod.wt.push_back(wd[static_cast<size_t>(i)].second);
        pivcol.push_back(span.piv[static_cast<size_t>(i)]);
    }
    out.mod.act.resize(m.act.size());
    for (int a : m.ops) {
        if (m.act[static_cast<size_t>(a)].empty()) continue;
        for (int c = 0; c < out.mod.dim(); ++c) {
            std::vector<F> img = m.apply(a, out.embed[static_cast<size_t>(c)]);
            // Coefficients against the echelon basis live at the pivots.
            for (int r = 0; r < out.mod.dim(); ++r) {
                F coeff = img[static_cast<size_t>(pivcol[static_cast<size_t>(r)])];
                if (coeff == F(0)) continue;
                for (int j = 0; j < m.dim(); ++j)
                    img[static_cast<size_t>(j)] -= coeff * out.embed[static_cast<size_t>(r)][static_cast<size_t>(j)];
                out.mod.act[static_cast<size_t>(a)].emplace_back(r, c, coeff);
            }
            for (auto& x : img)
                if (!(x == F(0))) throw std::logic_error("span not closed under the action");
        }
    }
    return out;
}

// The radical: the span of all positive-degree translates.
template <class F>
inline SubModule<F> radical(const Mod<F>& m) {
    std::vector<std::vector<F>> gens;
    for (int a : m.ops) {
        if (m.A->degree[static_cast<size_t>(a)] == 0) continue;
        std::set<int> touched;
        for (auto& [r, c, v] : m.act[static_cast<size_t>(a)]) {
            (void)r;
            (void)v;
            touched.insert(c);
        }
        for (int c : touched) {
            std::vector<F> unit(static_cast<size_t>(m.dim()), F(0));
            unit[static_cast<size_t>(c)] = F(1);
            gens.push_back(m.apply(a, unit));
        }
    }
    return submodule(m, gens, true);
}

// The socle: everything killed by all positive-degree elements, found slice
// by slice so the generators stay homogeneous.
template <class F>
inline SubModule<F> socle(const Mod<F>& m) {
    std::vector<int> pos;
    for (int a : m.ops)
        if (m.A->degree[static_cast<size_t>(a)] > 0 && !m.act[static_cast<size_t>(a)].empty())
            pos.push_back(a);
    std::set<std::pair<int, int>> slices;
    for (int i = 0; i < m.dim(); ++i)
        slices.insert({m.wt[static_cast<size_t>(i)], m.deg[static_cast<size_t>(i)]});
    std::vector<std::vector<F>> gens;
    for (auto& [w, d] : slices) {
        std::vector<int> cols;
        for (int i = 0; i < m.dim(); ++i)
            if (m.wt[static_cast<size_t>(i)] == w && m.deg[static_cast<size_t>(i)] == d)
                cols.push_back(i);
        Matrix<F> sys(static_cast<int>(pos.size()) * m.dim(), static_cast<int>(cols.size()));
        for (size_t ai = 0; ai < pos.size(); ++ai)
            for (auto& [r, c, v] : m.act[static_cast<size_t>(pos[ai])]) {
                auto it = std::find(cols.begin(), cols.end(), c);
                if (it == cols.end()) continue;
                sys.at(static_cast<int>(ai) * m.dim() + r,
                       static_cast<int>(it - cols.begin())) += v;
            }
        for (auto& k : nullspace(sys)) {
            std::vector<F> v(static_cast<size_t>(m.dim()), F(0));
            for (size_t ci = 0; ci < cols.size(); ++ci) v[static_cast<size_t>(cols[ci])] = k[ci];
            gens.push_back(std::move(v));
        }
    }
    return submodule(m, gens, true);
}

// A quotient by a closed homogeneous subspace: basis vectors are the images
// of the ambient basis vectors away from the pivots.
template <class F>
struct Quotient {
    Mod<F> mod;
    std::vector<int> rep;  // ambient basis index representing each quotient vector
};

template <class F>
inline Quotient<F> quotient(const Mod<F>& m, const SubModule<F>& sub) {
    Quotient<F> out;
    out.mod.A = m.A;
    out.mod.ops = m.ops;
    std::set<int> pivots(sub.piv.begin(), sub.piv.end());
    std::map<int, int> local;
    for (int i = 0; i < m.dim(); ++i) {
        if (pivots.count(i)) continue;
        local[i] = static_cast<int>(out.rep.size());
        out.rep.push_back(i);
        out.mod.deg.push_back(m.deg[static_cast<size_t>(i)]);
        out.mod.wt.push_back(m.wt[static_cast<size_t>(i)]);
    }
    out.mod.act.resize(m.act.size());
    for (int a : m.ops) {
        if (m.act[static_cast<size_t>(a)].empty()) continue;
        for (size_t c = 0; c < out.rep.size(); ++c) {
            std::vector<F> unit(static_cast<size_t>(m.dim()), F(0));
            unit[static_cast<size_t>(out.rep[c])] = F(1);
            std::vector<F> img = m.apply(a, unit);
            // Reduce modulo the subspace, then read off surviving coords.
            for (size_t r = 0; r < sub.embed.size(); ++r) {
                F f = img[static_cast<size_t>(sub.piv[r])];
                if (f == F(0)) continue;
                for (int j = 0; j < m.dim(); ++j)
                    img[static_cast<size_t>(j)] -= f * sub.embed[r][static_cast<size_t>(j)];
            }
            for (auto& [i, li] : local)
                if (!(img[static_cast<size_t>(i)] == F(0)))
                    out.mod.act[static_cast<size_t>(a)].emplace_back(li, static_cast<int>(c),
                                                                     img[static_cast<size_t>(i)]);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Projective covers and minimal resolutions.
// ---------------------------------------------------------------------------

template <class F>
struct Cover {
    Mod<F> P;
    std::vector<std::pair<int, int>> summands;  // (weight index, shift)
    Matrix<F> T;                                // map P -> M, columns over P's basis
};

template <class F>
inline Cover<F> projective_cover(const Mod<F>& m) {
    Quotient<F> head = quotient(m, radical(m));
    Cover<F> out;
    std::vector<Mod<F>> parts;
    std::vector<int> lift;
    for (size_t k = 0; k < head.rep.size(); ++k) {
        int w = head.mod.wt[k];
        int d = head.mod.deg[k];
        out.summands.emplace_back(w, d);
        parts.push_back(shifted_module(proj_module<F>(*m.A, w), d));
        lift.push_back(head.rep[k]);
    }
    out.P = parts.empty() ? Mod<F>{} : direct_sum(parts);
    if (parts.empty()) {
        out.P.A = m.A;
        out.P.init_ops();
        out.P.act.resize(static_cast<size_t>(m.A->dim()));
    }
    out.T = Matrix<F>(m.dim(), out.P.dim());
    // The map sends a basis vector x e_w of the k-th summand to x acting on
    // the lift of the k-th head vector.
    int col = 0;
    for (size_t k = 0; k < out.summands.size(); ++k) {
        int w = out.summands[k].first;
        std::vector<F> v(static_cast<size_t>(m.dim()), F(0));
        v[static_cast<size_t>(lift[k])] = F(1);
        for (int i = 0; i < m.A->dim(); ++i) {
            if (!(m.A->basis[static_cast<size_t>(i)].beta == m.A->wts[static_cast<size_t>(w)]))
                continue;
            std::vector<F> img = m.apply(i, v);
            for (int r = 0; r < m.dim(); ++r) out.T.at(r, col) = img[static_cast<size_t>(r)];
            ++col;
        }
    }
    if (col != out.P.dim()) throw std::logic_error("cover columns misaligned");
    return out;
}

// Kernel of a module map as a submodule of the source, solved slice by slice.
template <class F>
inline SubModule<F> kernel(const Mod<F>& src, const Matrix<F>& T) {
    std::set<std::pair<int, int>> slices;
    for (int i = 0; i < src.dim(); ++i)
        slices.insert({src.wt[static_cast<size_t>(i)], src.deg[static_cast<size_t>(i)]});
    std::vector<std::vector<F>> gens;
    for (auto& [w, d] : slices) {
        std::vector<int> cols;
        for (int i = 0; i < src.dim(); ++i)
            if (src.wt[static_cast<size_t>(i)] == w && src.deg[static_cast<size_t>(i)] == d)
                cols.push_back(i);
        Matrix<F> sys(T.rows, static_cast<int>(cols.size()));
        for (int r = 0; r < T.rows; ++r)
            for (size_t ci = 0; ci < cols.size(); ++ci)
                sys.at(r, static_cast<int>(ci)) = T.at(r, cols[ci]);
        for (auto& k : nullspace(sys)) {
            std::vector<F> v(static_cast<size_t>(src.dim()), F(0));
            for (size_t ci = 0; ci < cols.size(); ++ci) v[static_cast<size_t>(cols[ci])] = k[ci];
            gens.push_back(std::move(v));
        }
    }
    return submodule(src, gens, true);
}

// Minimal graded resolution bookkeeping: the projective summands appearing
// in each homological degree.
struct ResolutionSteps {
    std::vector<std::vector<std::pair<int, int>>> steps;  // per step: (weight, shift)
};

template <class F>
inline ResolutionSteps resolve(const Mod<F>& m0, int depth) {
    ResolutionSteps out;
    Mod<F> m = m0;
    for (int i = 0; i <= depth; ++i) {
        Cover<F> c = projective_cover(m);
        out.steps.push_back(c.summands);
        if (i == depth) break;
        SubModule<F> k = kernel(c.P, c.T);
        m = k.mod;
        if (m.dim() == 0) break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Graded homomorphism spaces.
// ---------------------------------------------------------------------------

// Graded dimension of Hom(M, N): the coefficient of q^s counts homs shifting
// degrees up by s.  Commutation is enforced against the listed elements.
template <class F>
inline Laurent hom_graded_dim(const Mod<F>& M, const Mod<F>& N, const std::vector<int>& elems) {
    Laurent total;
    if (M.dim() == 0 || N.dim() == 0) return total;
    int lo = *std::min_element(N.deg.begin(), N.deg.end()) -
             *std::max_element(M.deg.begin(), M.deg.end());
    int hi = *std::max_element(N.deg.begin(), N.deg.end()) -
             *std::min_element(M.deg.begin(), M.deg.end());
    for (int s = lo; s <= hi; ++s) {
        // Unknowns: matrix entries from M-slices to matching N-slices.
        std::vector<std::pair<int, int>> unknowns;  // (row in N, col in M)
        std::map<std::pair<int, int>, int> uid;
        for (int r = 0; r < N.dim(); ++r)
            for (int c = 0; c < M.dim(); ++c)
                if (N.wt[static_cast<size_t>(r)] == M.wt[static_cast<size_t>(c)] &&
                    N.deg[static_cast<size_t>(r)] == M.deg[static_cast<size_t>(c)] + s) {
                    uid[{r, c}] = static_cast<int>(unknowns.size());
                    unknowns.emplace_back(r, c);
                }
        if (unknowns.empty()) continue;
        // Equations: (F . a_M - a_N . F)[i][j] = 0.
        std::map<std::pair<int, int>, std::vector<F>> eqs;
        auto row_of = [&](int i, int j) -> std::vector<F>& {
            auto& v = eqs[{i, j}];
            if (v.empty()) v.assign(unknowns.size(), F(0));
            return v;
        };
        for (int a : elems) {
            for (auto& [c2, j, v] : M.act[static_cast<size_t>(a)])
                for (int i = 0; i < N.dim(); ++i) {
                    auto it = uid.find({i, c2});
                    if (it != uid.end()) row_of(i, j)[static_cast<size_t>(it->second)] += v;
                }
            for (auto& [i, r, v] : N.act[static_cast<size_t>(a)])
                for (int j = 0; j < M.dim(); ++j) {
                    auto it = uid.find({r, j});
                    if (it != uid.end()) row_of(i, j)[static_cast<size_t>(it->second)] -= v;
                }
        }
        Matrix<F> sys(static_cast<int>(eqs.size()), static_cast<int>(unknowns.size()));
        int r = 0;
        for (auto& [key, row] : eqs) {
            (void)key;
            for (size_t c = 0; c < row.size(); ++c) sys.at(r, static_cast<int>(c)) = row[c];
            ++r;
        }
        int d = static_cast<int>(unknowns.size()) - rank(sys);
        if (d > 0) total += Laurent::monomial(s, d);
    }
    return total;
}

// Algebra elements of degree at most one; they generate.
inline std::vector<int> low_degree_generators(const ArcAlgebra& A) {
    std::vector<int> out;
    for (int i = 0; i < A.dim(); ++i)
        if (A.degree[static_cast<size_t>(i)] <= 1) out.push_back(i);
    return out;
}

}  // namespace arcweb
