#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "arcweb/laurent.hpp"
#include "arcweb/surgery.hpp"

namespace arcweb {

// The arc algebra of one block: all oriented diagrams (alpha | lambda | beta)
// with alpha, lambda, beta weights of the block, multiplied by closing off
// the pictures and resolving the middle caps and cups by surgery moves.
struct ArcAlgebra {
    Block block;
    StackContext ctx;
    std::vector<Weight> wts;  // block weights in canonical order
    std::map<Weight, int> wt_index;
    std::vector<BasisElem> basis;
    std::map<BasisElem, int> elem_index;
    std::vector<int> degree;  // per basis element

    using Sparse = std::vector<std::pair<int, long long>>;

    explicit ArcAlgebra(const Block& b) : block(b), ctx(StackContext::algebra(b)) {
        wts = block.weights();
        for (size_t i = 0; i < wts.size(); ++i) wt_index[wts[i]] = static_cast<int>(i);
        basis = context_basis(ctx);
        for (size_t i = 0; i < basis.size(); ++i) {
            elem_index[basis[i]] = static_cast<int>(i);
            degree.push_back(elem_degree(ctx, basis[i]));
        }
    }

    int dim() const { return static_cast<int>(basis.size()); }
    int nwts() const { return static_cast<int>(wts.size()); }

    int index_of(const BasisElem& e) const {
        auto it = elem_index.find(e);
        if (it == elem_index.end()) throw std::invalid_argument("not a basis diagram: " + e.str());
        return it->second;
    }

    // The idempotent of a weight: the diagram (lambda | lambda | lambda).
    int idem(int w) const {
        return index_of({wts[static_cast<size_t>(w)],
                         {wts[static_cast<size_t>(w)]},
                         wts[static_cast<size_t>(w)]});
    }

    // Reflection through the number line, an anti-automorphism.
    int star(int i) const {
        const BasisElem& e = basis[static_cast<size_t>(i)];
        return index_of({e.beta, e.nu, e.alpha});
    }

    // Safe to call from several threads: the memo table is guarded, map
    // entries never move, and a racing recomputation just discards its copy.
    const Sparse& product(int i, int j) const {
        auto key = std::make_pair(i, j);
        {
            std::lock_guard<std::mutex> hold(memo_lock_);
            auto it = memo_.find(key);
            if (it != memo_.end()) return it->second;
        }
        Combination c = multiply_stacks(ctx, basis[static_cast<size_t>(i)], ctx,
                                        basis[static_cast<size_t>(j)]);
        Sparse s;
        for (auto& [e, coeff] : c) {
            int k = index_of(e);
            if (degree[static_cast<size_t>(k)] !=
                degree[static_cast<size_t>(i)] + degree[static_cast<size_t>(j)])
                throw std::logic_error("product term off the expected degree");
            s.emplace_back(k, coeff);
        }
        std::lock_guard<std::mutex> hold(memo_lock_);
        return memo_.emplace(key, std::move(s)).first->second;
    }

    // Structure scalar of the cell action: the diagram (alpha|lambda|beta)
    // sends the cell vector at beta to `scalar` times the one at alpha,
    // provided the bottom diagram accepts mu; the scalar does not depend on
    // which such mu is used beyond orientability.
    long long cell_scalar(int i, const Weight& mu) const {
        const BasisElem& e = basis[static_cast<size_t>(i)];
        if (!oriented(cup_diagram_of(e.beta), mu)) return 0;
        if (!oriented(cup_diagram_of(e.alpha), mu)) return 0;
        BasisElem y{e.beta, {mu}, mu};
        Combination c = multiply_stacks(ctx, e, ctx, y);
        BasisElem want{e.alpha, {mu}, mu};
        auto it = c.find(want);
        return it == c.end() ? 0 : it->second;
    }

    // Graded dimension of e_lam K e_mu.
    Laurent hom_dim(int wl, int wm) const {
        Laurent d;
        for (size_t i = 0; i < basis.size(); ++i)
            if (basis[i].alpha == wts[static_cast<size_t>(wl)] &&
                basis[i].beta == wts[static_cast<size_t>(wm)])
                d += Laurent::q(degree[i]);
        return d;
    }

    // Cartan matrix: graded dimensions of the idempotent slices.
    LMat cartan() const {
        LMat c(nwts(), nwts());
        for (int i = 0; i < nwts(); ++i)
            for (int j = 0; j < nwts(); ++j) c.at(i, j) = hom_dim(i, j);
        return c;
    }

    // Graded decomposition matrix: rows and columns over block weights,
    // entry (l, m) = q^(degree of the canonical diagram of wts[l] decorated
    // by wts[m]) when oriented.
    LMat decomposition() const {
        LMat d(nwts(), nwts());
        for (int l = 0; l < nwts(); ++l)
            for (int m = 0; m < nwts(); ++m) {
                int e = d_exponent(wts[static_cast<size_t>(l)], wts[static_cast<size_t>(m)]);
                if (e >= 0) d.at(l, m) = Laurent::q(e);
            }
        return d;
    }

  private:
    mutable std::map<std::pair<int, int>, Sparse> memo_;
    mutable std::mutex memo_lock_;
};

}  // namespace arcweb
