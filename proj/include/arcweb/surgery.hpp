#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "arcweb/cupdiag.hpp"
#include "arcweb/matching.hpp"
#include "arcweb/weights.hpp"

namespace arcweb {

// A pile of number lines joined by matchings; the shared shape underlying a
// family of basis diagrams.  An algebra has one line and no bands.
struct StackContext {
    std::vector<Block> lines;     // bottom to top
    std::vector<Matching> bands;  // bands[i] joins lines[i] and lines[i+1]

    static StackContext algebra(const Block& b) { return {{b}, {}}; }

    static StackContext of_bands(const std::vector<Matching>& bands) {
        if (bands.empty()) throw std::invalid_argument("need at least one matching");
        StackContext c;
        c.bands = bands;
        c.lines.push_back(bands.front().bottom);
        for (auto& m : bands) {
            if (!(m.bottom == c.lines.back()))
                throw std::invalid_argument("matchings do not stack");
            c.lines.push_back(m.top);
        }
        return c;
    }

    // Stack `top` above this context; the junction line must agree.
    StackContext stacked_under(const StackContext& top) const {
        if (!(lines.back() == top.lines.front()))
            throw std::invalid_argument("contexts do not share the junction line");
        StackContext c = *this;
        c.lines.insert(c.lines.end(), top.lines.begin() + 1, top.lines.end());
        c.bands.insert(c.bands.end(), top.bands.begin(), top.bands.end());
        return c;
    }

    int nlines() const { return static_cast<int>(lines.size()); }

    int total_caps() const {
        int n = 0;
        for (auto& m : bands) n += m.ncaps();
        return n;
    }
    int total_cups() const {
        int n = 0;
        for (auto& m : bands) n += m.ncups();
        return n;
    }

    bool operator==(const StackContext& o) const {
        if (!(lines == o.lines)) return false;
        if (bands.size() != o.bands.size()) return false;
        for (size_t i = 0; i < bands.size(); ++i)
            if (bands[i].caps != o.bands[i].caps || bands[i].cups != o.bands[i].cups)
                return false;
        return true;
    }
};

// A basis diagram over a stack context: the canonical cup diagram of `alpha`
// below, one weight per line, and the canonical cap diagram of `beta` above.
struct BasisElem {
    Weight alpha;
    std::vector<Weight> nu;  // bottom to top, one per context line
    Weight beta;

    bool operator==(const BasisElem& o) const {
        return alpha == o.alpha && nu == o.nu && beta == o.beta;
    }
    bool operator<(const BasisElem& o) const {
        if (alpha != o.alpha) return alpha < o.alpha;
        if (nu != o.nu) return nu < o.nu;
        return beta < o.beta;
    }

    std::string str() const {
        std::ostringstream os;
        os << "(" << alpha.str() << "|";
        for (size_t i = 0; i < nu.size(); ++i) os << (i ? ";" : "") << nu[i].str();
        os << "|" << beta.str() << ")";
        return os.str();
    }

    static BasisElem parse(const std::string& text) {
        if (text.size() < 2 || text.front() != '(' || text.back() != ')')
            throw std::invalid_argument("basis element must look like (a|n;...;n|b)");
        std::string body = text.substr(1, text.size() - 2);
        auto p1 = body.find('|');
        auto p2 = body.rfind('|');
        if (p1 == std::string::npos || p2 == p1)
            throw std::invalid_argument("basis element needs two | separators");
        BasisElem e;
        e.alpha = Weight::parse(body.substr(0, p1));
        e.beta = Weight::parse(body.substr(p2 + 1));
        std::istringstream is(body.substr(p1 + 1, p2 - p1 - 1));
        std::string tok;
        while (std::getline(is, tok, ';')) e.nu.push_back(Weight::parse(tok));
        return e;
    }
};

using Combination = std::map<BasisElem, long long>;

inline DecoratedStack decorated(const StackContext& c, const BasisElem& e) {
    DecoratedStack d;
    d.shape.lines = c.lines;
    d.shape.bands = c.bands;
    d.shape.below = cup_diagram_of(e.alpha);
    d.shape.above = cap_diagram_of(e.beta);
    d.weights = e.nu;
    return d;
}

inline bool elem_oriented(const StackContext& c, const BasisElem& e) {
    if (static_cast<int>(e.nu.size()) != c.nlines()) return false;
    for (int i = 0; i < c.nlines(); ++i)
        if (!c.lines[i].contains(e.nu[i])) return false;
    if (!(block_of(e.alpha) == c.lines.front()) || !(block_of(e.beta) == c.lines.back()))
        return false;
    return decorated(c, e).is_oriented();
}

inline int elem_degree(const StackContext& c, const BasisElem& e) {
    return decorated(c, e).degree();
}

// All oriented basis diagrams of the context, ordered (alpha, nu, beta).
inline std::vector<BasisElem> context_basis(const StackContext& c) {
    std::vector<std::vector<Weight>> line_weights;
    for (auto& b : c.lines) line_weights.push_back(b.weights());
    std::vector<BasisElem> out;
    // Depth-first over decorations, pruning each band as soon as both of its
    // lines are fixed.
    std::vector<Weight> nu;
    auto band_ok = [&](int bi) {
        return matching_oriented(nu[bi], c.bands[bi], nu[bi + 1]);
    };
    std::function<void(int)> rec = [&](int li) {
        if (li == c.nlines()) {
            for (const Weight& alpha : line_weights.front()) {
                CupDiagram a = cup_diagram_of(alpha);
                if (!oriented(a, nu.front())) continue;
                for (const Weight& beta : line_weights.back()) {
                    if (!oriented(cap_diagram_of(beta), nu.back())) continue;
                    out.push_back({alpha, nu, beta});
                }
            }
            return;
        }
        for (const Weight& w : line_weights[li]) {
            nu.push_back(w);
            if (li == 0 || band_ok(li - 1)) rec(li + 1);
            nu.pop_back();
        }
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Closing off a stack: pad every line with Down slots on the left and Up
// slots on the right so that all rays become arcs, multiply by iterated
// surgery moves, then cut the pads off again.
// ---------------------------------------------------------------------------

inline Block padded_block(const Block& b, int p, int q) {
    Block out;
    out.offset = b.offset - p;
    out.frame = std::string(static_cast<size_t>(p), '*') + b.frame +
                std::string(static_cast<size_t>(q), '*');
    out.ndown = b.ndown + p;
    out.nup = b.nup + q;
    return out;
}

inline Weight padded_weight(const Weight& w, int p, int q) {
    Weight out;
    out.offset = w.offset - p;
    out.labels.assign(static_cast<size_t>(p), Lab::Down);
    out.labels.insert(out.labels.end(), w.labels.begin(), w.labels.end());
    out.labels.insert(out.labels.end(), static_cast<size_t>(q), Lab::Up);
    return out;
}

// Arcs of the closed diagram: original arcs plus one arc per ray reaching
// into the pads (leftmost Up ray to the innermost left pad and so on), plus
// nested arcs joining the leftover pads pairwise.
inline std::vector<std::pair<int, int>> close_arc_set(const ArcSet& c, const Block& b, int p,
                                                      int q) {
    if (!c.rays_canonical())
        throw std::invalid_argument("can only close a diagram with Up rays left of Down rays");
    std::vector<std::pair<int, int>> arcs = c.arcs;
    std::vector<int> up_rays, down_rays;
    for (auto& [pos, tag] : c.rays) (tag == Lab::Up ? up_rays : down_rays).push_back(pos);
    int m = static_cast<int>(up_rays.size());
    int m2 = static_cast<int>(down_rays.size());
    if (p < m || q < m2 || p - m != q - m2)
        throw std::invalid_argument("padding cannot absorb the rays");
    int lo = b.lo(), hi = b.hi();
    for (int i = 0; i < m; ++i) arcs.emplace_back(lo - 1 - i, up_rays[static_cast<size_t>(i)]);
    for (int j = 0; j < m2; ++j)
        arcs.emplace_back(down_rays[static_cast<size_t>(j)], hi + m2 - j);
    for (int k = 1; k <= p - m; ++k) arcs.emplace_back(lo - m - k, hi + m2 + k);
    std::sort(arcs.begin(), arcs.end());
    return arcs;
}

namespace detail {

// The closed picture as a plain 2-regular graph on integer vertex ids.
struct ClosedGraph {
    std::vector<int> vline, vpos;
    std::map<std::pair<int, int>, int> vid;
    struct Arc {
        int u, v;
        bool flip;
    };
    std::vector<Arc> arcs;
    std::vector<std::vector<int>> inc;  // exactly two arc ids per vertex

    int vertex(int line, int pos) {
        auto key = std::make_pair(line, pos);
        auto it = vid.find(key);
        if (it != vid.end()) return it->second;
        int id = static_cast<int>(vline.size());
        vid[key] = id;
        vline.push_back(line);
        vpos.push_back(pos);
        inc.emplace_back();
        return id;
    }

    int add_arc(int u, int v, bool flip) {
        int id = static_cast<int>(arcs.size());
        arcs.push_back({u, v, flip});
        inc[static_cast<size_t>(u)].push_back(id);
        inc[static_cast<size_t>(v)].push_back(id);
        return id;
    }

    int other_end(int arc, int v) const { return arcs[static_cast<size_t>(arc)].u == v
                                                     ? arcs[static_cast<size_t>(arc)].v
                                                     : arcs[static_cast<size_t>(arc)].u; }

    int other_arc(int v, int arc) const {
        auto& pair = inc[static_cast<size_t>(v)];
        return pair[0] == arc ? pair[1] : pair[0];
    }

    // Walk the unique circle through v0 (the graph is 2-regular).
    std::vector<int> circle_of(int v0) const {
        std::vector<int> verts{v0};
        int a = inc[static_cast<size_t>(v0)][0];
        int v = v0;
        while (true) {
            int w = other_end(a, v);
            if (w == v0) break;
            verts.push_back(w);
            a = other_arc(w, a);
            v = w;
        }
        return verts;
    }

    int leftmost(const std::vector<int>& verts) const {
        int best = verts.front();
        for (int v : verts)
            if (vpos[static_cast<size_t>(v)] < vpos[static_cast<size_t>(best)] ||
                (vpos[static_cast<size_t>(v)] == vpos[static_cast<size_t>(best)] &&
                 vline[static_cast<size_t>(v)] < vline[static_cast<size_t>(best)]))
                best = v;
        return best;
    }

    bool is_clockwise(const std::vector<Lab>& lab, const std::vector<int>& verts) const {
        return lab[static_cast<size_t>(leftmost(verts))] == Lab::Up;
    }

    // Repaint a circle: fix the leftmost vertex to the orientation's label
    // and push it around the circle, flipping across cups and caps.
    void repaint(std::vector<Lab>& lab, const std::vector<int>& verts, bool clockwise) const {
        int lv = leftmost(verts);
        lab[static_cast<size_t>(lv)] = clockwise ? Lab::Up : Lab::Down;
        int v = lv;
        int a = inc[static_cast<size_t>(lv)][0];
        while (true) {
            int w = other_end(a, v);
            Lab next = arcs[static_cast<size_t>(a)].flip ? flipped(lab[static_cast<size_t>(v)])
                                                         : lab[static_cast<size_t>(v)];
            if (w == lv) {
                if (lab[static_cast<size_t>(lv)] != next)
                    throw std::logic_error("circle repaint came back inconsistent");
                break;
            }
            lab[static_cast<size_t>(w)] = next;
            a = other_arc(w, a);
            v = w;
        }
    }
};

}  // namespace detail

// Product of two stacked basis diagrams, x drawn underneath y.  The result
// lives over the composite context; terms carry nonnegative integer
// coefficients.  Zero unless the cap diagram of x matches the cup diagram
// of y, i.e. x.beta == y.alpha.  `extra_pad` widens the closure by that many
// surplus pad columns on each side; the result must not depend on it.
inline Combination multiply_stacks(const StackContext& cx, const BasisElem& x,
                                   const StackContext& cy, const BasisElem& y,
                                   int extra_pad = 0) {
    if (!(cx.lines.back() == cy.lines.front()))
        throw std::invalid_argument("factors do not share the junction block");
    if (!(x.beta == y.alpha)) return {};

    const int nx = cx.nlines(), ny = cy.nlines();
    const int n = nx + ny;
    std::vector<Block> all_lines = cx.lines;
    all_lines.insert(all_lines.end(), cy.lines.begin(), cy.lines.end());
    std::vector<Weight> all_wts = x.nu;
    all_wts.insert(all_wts.end(), y.nu.begin(), y.nu.end());

    // Every line must live on the same window with the same label imbalance.
    const Block& b0 = all_lines.front();
    int imbalance = b0.nup - b0.ndown;
    int p = 0;
    for (auto& b : all_lines) {
        if (b.offset != b0.offset || b.size() != b0.size())
            throw std::invalid_argument("lines of a product must share the window");
        if (b.nup - b.ndown != imbalance)
            throw std::invalid_argument("lines of a product must share the label imbalance");
        p = std::max(p, b.nup);
    }
    if (extra_pad < 0) throw std::invalid_argument("extra padding must be nonnegative");
    p += extra_pad;
    const int q = p - imbalance;
    const int lo = b0.lo(), hi = b0.hi();

    detail::ClosedGraph g;
    // Vertices, line by line, and the initial labelling.
    std::vector<Lab> labels;
    for (int li = 0; li < n; ++li) {
        Weight cw = padded_weight(all_wts[static_cast<size_t>(li)], p, q);
        for (int pos = cw.lo(); pos <= cw.hi(); ++pos) {
            if (!is_free(cw.at(pos))) continue;
            int id = g.vertex(li, pos);
            labels.resize(static_cast<size_t>(id) + 1);
            labels[static_cast<size_t>(id)] = cw.at(pos);
        }
    }
    auto add_band = [&](const Matching& m, int bot_line) {
        for (auto& [i, j] : m.caps) g.add_arc(g.vertex(bot_line, i), g.vertex(bot_line, j), true);
        for (auto& [i, j] : m.cups)
            g.add_arc(g.vertex(bot_line + 1, i), g.vertex(bot_line + 1, j), true);
        for (auto& [b, t] : m.segs)
            g.add_arc(g.vertex(bot_line, b), g.vertex(bot_line + 1, t), false);
        for (int k = 1; k <= p; ++k)
            g.add_arc(g.vertex(bot_line, lo - k), g.vertex(bot_line + 1, lo - k), false);
        for (int k = 1; k <= q; ++k)
            g.add_arc(g.vertex(bot_line, hi + k), g.vertex(bot_line + 1, hi + k), false);
    };
    for (auto& [i, j] : close_arc_set(cup_diagram_of(x.alpha), all_lines.front(), p, q))
        g.add_arc(g.vertex(0, i), g.vertex(0, j), true);
    for (int bi = 0; bi < nx - 1; ++bi) add_band(cx.bands[static_cast<size_t>(bi)], bi);
    // The junction: mirror-image cap and cup pairs awaiting surgery.
    auto junction = close_arc_set(cap_diagram_of(x.beta), all_lines[static_cast<size_t>(nx - 1)],
                                  p, q);
    std::vector<std::pair<int, int>> pending;  // (cap arc id, cup arc id), left to right
    for (auto& [i, j] : junction) {
        int cap = g.add_arc(g.vertex(nx - 1, i), g.vertex(nx - 1, j), true);
        int cup = g.add_arc(g.vertex(nx, i), g.vertex(nx, j), true);
        pending.emplace_back(cap, cup);
    }
    for (int bi = 0; bi < ny - 1; ++bi) add_band(cy.bands[static_cast<size_t>(bi)], nx + bi);
    for (auto& [i, j] : close_arc_set(cap_diagram_of(y.beta), all_lines.back(), p, q))
        g.add_arc(g.vertex(n - 1, i), g.vertex(n - 1, j), true);

    for (auto& lst : g.inc)
        if (lst.size() != 2) throw std::logic_error("closed diagram is not 2-regular");

    // Terms of the product, keyed by the full closed labelling.
    std::map<std::vector<Lab>, long long> terms;
    terms.emplace(labels, 1);

    for (auto& [capA, cupA] : pending) {
        const int capU = g.arcs[static_cast<size_t>(capA)].u;
        const int capV = g.arcs[static_cast<size_t>(capA)].v;
        const int cupU = g.arcs[static_cast<size_t>(cupA)].u;
        const int cupV = g.arcs[static_cast<size_t>(cupA)].v;
        std::vector<int> c1 = g.circle_of(capU);
        bool same = std::find(c1.begin(), c1.end(), cupU) != c1.end();
        std::vector<int> c2;
        if (!same) c2 = g.circle_of(cupU);

        // Rewire: the cap and cup become two vertical segments.
        int s1 = static_cast<int>(g.arcs.size());
        g.arcs.push_back({capU, cupU, false});
        int s2 = static_cast<int>(g.arcs.size());
        g.arcs.push_back({capV, cupV, false});
        auto replace = [&](int v, int from, int to) {
            for (int& id : g.inc[static_cast<size_t>(v)])
                if (id == from) id = to;
        };
        replace(capU, capA, s1);
        replace(cupU, cupA, s1);
        replace(capV, capA, s2);
        replace(cupV, cupA, s2);

        std::map<std::vector<Lab>, long long> next;
        auto account = [&](std::vector<Lab> lab, long long coeff) {
            next[std::move(lab)] += coeff;
        };
        if (!same) {
            // Merge.  Two squares multiply to zero; otherwise the merged
            // circle is clockwise iff either factor was.
            std::vector<int> merged = g.circle_of(capU);
            for (auto& [lab, coeff] : terms) {
                bool cw1 = g.is_clockwise(lab, c1), cw2 = g.is_clockwise(lab, c2);
                if (cw1 && cw2) continue;
                std::vector<Lab> out = lab;
                g.repaint(out, merged, cw1 || cw2);
                account(std::move(out), coeff);
            }
        } else {
            // Split.  An anticlockwise circle splits two ways, a clockwise
            // one forces both parts clockwise.
            std::vector<int> ca = g.circle_of(capU);
            if (std::find(ca.begin(), ca.end(), capV) != ca.end())
                throw std::logic_error("surgery split failed to separate the circle");
            std::vector<int> cb = g.circle_of(capV);
            for (auto& [lab, coeff] : terms) {
                if (g.is_clockwise(lab, c1)) {
                    std::vector<Lab> out = lab;
                    g.repaint(out, ca, true);
                    g.repaint(out, cb, true);
                    account(std::move(out), coeff);
                } else {
                    std::vector<Lab> out = lab;
                    g.repaint(out, ca, true);
                    g.repaint(out, cb, false);
                    account(std::move(out), coeff);
                    out = lab;
                    g.repaint(out, ca, false);
                    g.repaint(out, cb, true);
                    account(std::move(out), coeff);
                }
            }
        }
        terms = std::move(next);
    }

    // Cut the pads off: terms whose pads drifted away from Down-left/Up-right
    // fall out of the image and are dropped; the two junction lines now carry
    // equal weights and collapse into one.
    Combination result;
    for (auto& [lab, coeff] : terms) {
        bool good = true;
        std::vector<Weight> wts;
        for (int li = 0; li < n && good; ++li) {
            Weight w = all_wts[static_cast<size_t>(li)];  // window + frame template
            for (int k = 1; k <= p; ++k)
                if (lab[static_cast<size_t>(g.vid.at({li, lo - k}))] != Lab::Down) good = false;
            for (int k = 1; k <= q; ++k)
                if (lab[static_cast<size_t>(g.vid.at({li, hi + k}))] != Lab::Up) good = false;
            if (!good) break;
            for (int pos = lo; pos <= hi; ++pos)
                if (is_free(w.at(pos)))
                    w.set(pos, lab[static_cast<size_t>(g.vid.at({li, pos}))]);
            wts.push_back(std::move(w));
        }
        if (!good) continue;
        if (!(wts[static_cast<size_t>(nx - 1)] == wts[static_cast<size_t>(nx)]))
            throw std::logic_error("junction lines disagree after surgery");
        BasisElem e;
        e.alpha = x.alpha;
        e.beta = y.beta;
        e.nu.assign(wts.begin(), wts.begin() + nx);
        e.nu.insert(e.nu.end(), wts.begin() + nx + 1, wts.end());
        result[e] += coeff;
    }
    for (auto it = result.begin(); it != result.end();) {
        if (it->second == 0) it = result.erase(it);
        else ++it;
    }
    return result;
}

// Convenience: product of two algebra basis diagrams over one block.
inline Combination multiply(const Block& b, const BasisElem& x, const BasisElem& y) {
    StackContext c = StackContext::algebra(b);
    return multiply_stacks(c, x, c, y);
}

}  // namespace arcweb
