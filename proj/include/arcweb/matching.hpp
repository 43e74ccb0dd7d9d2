#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "arcweb/cupdiag.hpp"
#include "arcweb/weights.hpp"

namespace arcweb {

// A planar matching in the band between two number lines on a shared window:
// caps pair up vertices of the bottom line, cups pair up vertices of the top
// line, and the remaining free vertices are joined bottom-to-top by
// order-preserving segments.
struct Matching {
    Block bottom, top;
    std::vector<std::pair<int, int>> caps;  // pairs of bottom positions
    std::vector<std::pair<int, int>> cups;  // pairs of top positions
    std::vector<std::pair<int, int>> segs;  // (bottom position, top position)

    int ncaps() const { return static_cast<int>(caps.size()); }
    int ncups() const { return static_cast<int>(cups.size()); }

    Matching() = default;

    Matching(Block bot, Block topb, std::vector<std::pair<int, int>> caps_,
             std::vector<std::pair<int, int>> cups_)
        : bottom(std::move(bot)), top(std::move(topb)), caps(std::move(caps_)),
          cups(std::move(cups_)) {
        for (auto& [i, j] : caps)
            if (i > j) std::swap(i, j);
        for (auto& [i, j] : cups)
            if (i > j) std::swap(i, j);
        std::sort(caps.begin(), caps.end());
        std::sort(cups.begin(), cups.end());
        derive_segments();
        validate();
    }

    // The reflection swapping the two number lines.
    Matching mirrored() const {
        Matching m;
        m.bottom = top;
        m.top = bottom;
        m.caps = cups;
        m.cups = caps;
        for (auto& [b, t] : segs) m.segs.emplace_back(t, b);
        std::sort(m.segs.begin(), m.segs.end());
        return m;
    }

    // The bottom-line up-count drops by one per cap; a matching is proper
    // when that agrees with the top-line count after cups and neither line
    // runs out of either label.
    bool is_proper() const {
        return bottom.nup - ncaps() == top.nup - ncups() && bottom.nup >= ncaps() &&
               bottom.ndown >= ncaps() && top.nup >= ncups() && top.ndown >= ncups();
    }

    // Identity matching on a block: all segments.
    static Matching identity(const Block& b) { return Matching(b, b, {}, {}); }

    std::string str() const {
        std::ostringstream os;
        os << "caps=";
        for (size_t k = 0; k < caps.size(); ++k)
            os << (k ? "," : "") << caps[k].first << "-" << caps[k].second;
        os << ";cups=";
        for (size_t k = 0; k < cups.size(); ++k)
            os << (k ? "," : "") << cups[k].first << "-" << cups[k].second;
        return os.str();
    }

    // Parse "caps=i-j,...;cups=i-j,..." (either list may be empty).
    static Matching parse(const std::string& text, const Block& bot, const Block& top) {
        auto arcs_of = [](const std::string& part, const std::string& prefix) {
            std::vector<std::pair<int, int>> out;
            if (part.rfind(prefix, 0) != 0)
                throw std::invalid_argument("matching part must start with " + prefix);
            std::string body = part.substr(prefix.size());
            if (body.empty()) return out;
            std::istringstream is(body);
            std::string tok;
            while (std::getline(is, tok, ',')) {
                auto dash = tok.find('-', 1);  // allow negative first coordinate
                if (dash == std::string::npos)
                    throw std::invalid_argument("arc must look like i-j: " + tok);
                out.emplace_back(std::stoi(tok.substr(0, dash)), std::stoi(tok.substr(dash + 1)));
            }
            return out;
        };
        auto semi = text.find(';');
        if (semi == std::string::npos)
            throw std::invalid_argument("matching must look like caps=...;cups=...");
        return Matching(bot, top, arcs_of(text.substr(0, semi), "caps="),
                        arcs_of(text.substr(semi + 1), "cups="));
    }

  private:
    void derive_segments() {
        std::set<int> used_bot, used_top;
        for (auto& [i, j] : caps) used_bot.insert(i), used_bot.insert(j);
        for (auto& [i, j] : cups) used_top.insert(i), used_top.insert(j);
        std::vector<int> rest_bot, rest_top;
        for (int p : bottom.free_positions())
            if (!used_bot.count(p)) rest_bot.push_back(p);
        for (int p : top.free_positions())
            if (!used_top.count(p)) rest_top.push_back(p);
        if (rest_bot.size() != rest_top.size())
            throw std::invalid_argument("matching leaves unequal numbers of loose ends");
        segs.clear();
        for (size_t k = 0; k < rest_bot.size(); ++k) segs.emplace_back(rest_bot[k], rest_top[k]);
    }

    void validate() const {
        if (bottom.offset != top.offset || bottom.frame.size() != top.frame.size())
            throw std::invalid_argument("matching requires a shared window");
        auto check_side = [](const std::vector<std::pair<int, int>>& arcs, const Block& blk,
                             const std::vector<int>& seg_ends, const char* side) {
            std::set<int> seen;
            for (auto& [i, j] : arcs) {
                for (int p : {i, j}) {
                    if (!blk.contains_free(p))
                        throw std::invalid_argument(std::string(side) + " arc endpoint " +
                                                    std::to_string(p) + " is not a free vertex");
                    if (!seen.insert(p).second)
                        throw std::invalid_argument(std::string(side) + " vertex used twice");
                }
            }
            for (size_t a = 0; a < arcs.size(); ++a)
                for (size_t b = a + 1; b < arcs.size(); ++b) {
                    auto [i1, j1] = arcs[a];
                    auto [i2, j2] = arcs[b];
                    bool nested = (i1 < i2 && j2 < j1) || (i2 < i1 && j1 < j2);
                    bool disjoint = j1 < i2 || j2 < i1;
                    if (!nested && !disjoint)
                        throw std::invalid_argument(std::string(side) + " arcs cross");
                }
            for (int p : seg_ends)
                for (auto& [i, j] : arcs)
                    if (i < p && p < j)
                        throw std::invalid_argument("segment trapped under a " +
                                                    std::string(side) + " arc");
        };
        std::vector<int> seg_bot, seg_top;
        for (auto& [b, t] : segs) seg_bot.push_back(b), seg_top.push_back(t);
        check_side(caps, bottom, seg_bot, "bottom");
        check_side(cups, top, seg_top, "top");
    }
};

// ---------------------------------------------------------------------------
// Stacked diagrams: a pile of number lines joined by matchings, optionally
// closed off by a cup diagram below line 0 and a cap diagram above the top
// line.  Connected components are traced through the whole picture.
// ---------------------------------------------------------------------------

struct StackVertex {
    int line;
    int pos;
    bool operator<(const StackVertex& o) const {
        return line != o.line ? line < o.line : pos < o.pos;
    }
    bool operator==(const StackVertex& o) const { return line == o.line && pos == o.pos; }
};

// One arc of a stacked diagram.  `flip` records whether the two endpoint
// labels must differ (cups and caps) or agree (segments) in an orientation.
struct StackArc {
    StackVertex a, b;
    bool flip;
    // Left endpoint position of a cup or cap, used for degree counting; the
    // line its labels are read from.
    int deg_line = -1;
    int left_pos = 0;
};

enum class EndKind : unsigned char { Ray, Open };

// A connected component: either a circle, or a path with two loose ends
// (rays of the closing diagrams, or open boundary vertices when a side of
// the stack is left open).
struct StackComponent {
    std::vector<StackVertex> vertices;  // sorted
    std::vector<int> arc_ids;
    bool is_circle = false;
    // For paths: the two end vertices with what terminates them.
    struct End {
        StackVertex v;
        EndKind kind;
        Lab tag = Lab::Down;  // meaningful for rays only
        bool at_bottom = false;
    };
    std::vector<End> ends;

    StackVertex leftmost() const {
        StackVertex best = vertices.front();
        for (auto& v : vertices)
            if (v.pos < best.pos || (v.pos == best.pos && v.line < best.line)) best = v;
        return best;
    }
};

struct Stack {
    std::vector<Block> lines;         // bottom to top
    std::vector<Matching> bands;      // bands[i] joins lines[i] to lines[i+1]
    std::optional<CupDiagram> below;  // closing diagram under line 0
    std::optional<CapDiagram> above;  // closing diagram over the last line

    int nlines() const { return static_cast<int>(lines.size()); }

    void validate() const {
        if (lines.empty()) throw std::invalid_argument("stack needs at least one line");
        if (bands.size() + 1 != lines.size())
            throw std::invalid_argument("stack needs one band per adjacent pair of lines");
        for (size_t i = 0; i < bands.size(); ++i) {
            if (!(bands[i].bottom == lines[i]) || !(bands[i].top == lines[i + 1]))
                throw std::invalid_argument("band " + std::to_string(i) +
                                            " does not match its lines");
        }
        if (below)
            for (int p : lines.front().free_positions())
                if (!below->covers(p))
                    throw std::invalid_argument("bottom diagram misses a vertex");
        if (above)
            for (int p : lines.back().free_positions())
                if (!above->covers(p))
                    throw std::invalid_argument("top diagram misses a vertex");
    }

    // Flatten to arcs plus per-vertex loose-end bookkeeping.  A vertex of a
    // one-line stack may carry a loose end on both sides.
    struct Graph {
        std::vector<StackArc> arcs;
        // For each vertex: indices of incident arcs (size 0..2).
        std::map<StackVertex, std::vector<int>> incidence;
        std::map<StackVertex, std::vector<StackComponent::End>> loose;
        std::vector<StackVertex> vertices;
    };

    Graph graph() const {
        validate();
        Graph g;
        auto add_arc = [&](StackVertex a, StackVertex b, bool flip, int deg_line) {
            StackArc arc{a, b, flip, deg_line, std::min(a.pos, b.pos)};
            int id = static_cast<int>(g.arcs.size());
            g.arcs.push_back(arc);
            g.incidence[a].push_back(id);
            g.incidence[b].push_back(id);
        };
        int top_line = nlines() - 1;
        for (int li = 0; li < nlines(); ++li)
            for (int p : lines[li].free_positions()) g.vertices.push_back({li, p});

        if (below) {
            for (auto& [i, j] : below->arcs) add_arc({0, i}, {0, j}, true, 0);
            for (auto& [p, tag] : below->rays)
                g.loose[{0, p}].push_back({{0, p}, EndKind::Ray, tag, true});
        } else {
            for (int p : lines[0].free_positions())
                g.loose[{0, p}].push_back({{0, p}, EndKind::Open, Lab::Down, true});
        }
        for (int bi = 0; bi < static_cast<int>(bands.size()); ++bi) {
            const Matching& m = bands[bi];
            for (auto& [i, j] : m.caps) add_arc({bi, i}, {bi, j}, true, bi);
            for (auto& [i, j] : m.cups) add_arc({bi + 1, i}, {bi + 1, j}, true, bi + 1);
            for (auto& [b, t] : m.segs) add_arc({bi, b}, {bi + 1, t}, false, -1);
        }
        if (above) {
            for (auto& [i, j] : above->arcs)
                add_arc({top_line, i}, {top_line, j}, true, top_line);
            for (auto& [p, tag] : above->rays)
                g.loose[{top_line, p}].push_back({{top_line, p}, EndKind::Ray, tag, false});
        } else {
            for (int p : lines[top_line].free_positions())
                g.loose[{top_line, p}].push_back({{top_line, p}, EndKind::Open, Lab::Down, false});
        }
        // Sanity: every vertex meets exactly two of (arc ends + loose ends).
        for (auto& v : g.vertices) {
            auto lit = g.loose.find(v);
            int deg = static_cast<int>(g.incidence[v].size()) +
                      (lit == g.loose.end() ? 0 : static_cast<int>(lit->second.size()));
            if (deg != 2)
                throw std::logic_error("stack vertex of degree " + std::to_string(deg));
        }
        return g;
    }

    std::vector<StackComponent> components() const {
        Graph g = graph();
        std::vector<StackComponent> comps;
        std::set<StackVertex> seen;
        for (auto& start : g.vertices) {
            if (seen.count(start)) continue;
            StackComponent comp;
            // Breadth-first over arcs.
            std::vector<StackVertex> queue{start};
            std::set<int> arcs_seen;
            seen.insert(start);
            while (!queue.empty()) {
                StackVertex v = queue.back();
                queue.pop_back();
                comp.vertices.push_back(v);
                if (auto it = g.loose.find(v); it != g.loose.end())
                    for (auto& end : it->second) comp.ends.push_back(end);
                for (int id : g.incidence[v]) {
                    if (!arcs_seen.insert(id).second) continue;
                    comp.arc_ids.push_back(id);
                    StackVertex w = (g.arcs[id].a == v) ? g.arcs[id].b : g.arcs[id].a;
                    if (seen.insert(w).second) queue.push_back(w);
                }
            }
            std::sort(comp.vertices.begin(), comp.vertices.end());
            comp.is_circle = comp.ends.empty();
            if (!comp.is_circle && comp.ends.size() != 2)
                throw std::logic_error("path component without two ends");
            comps.push_back(std::move(comp));
        }
        return comps;
    }
};

// A stacked diagram with a weight decorating every number line.
struct DecoratedStack {
    Stack shape;
    std::vector<Weight> weights;  // one per line, bottom to top

    void check_shape() const {
        if (weights.size() != shape.lines.size())
            throw std::invalid_argument("need one weight per line");
        for (size_t i = 0; i < weights.size(); ++i)
            if (!shape.lines[i].contains(weights[i]))
                throw std::invalid_argument("weight " + std::to_string(i) +
                                            " is not in its line's block");
    }

    Lab label(const StackVertex& v) const { return weights[v.line].at(v.pos); }

    bool is_oriented() const {
        check_shape();
        Stack::Graph g = shape.graph();
        for (auto& arc : g.arcs) {
            Lab x = label(arc.a), y = label(arc.b);
            if (arc.flip ? (x == y) : (x != y)) return false;
        }
        for (auto& [v, ends] : g.loose)
            for (auto& end : ends)
                if (end.kind == EndKind::Ray && label(v) != end.tag) return false;
        return true;
    }

    // Total degree: clockwise cups and caps, i.e. flip arcs whose left
    // endpoint reads Up on its degree line.
    int degree() const {
        check_shape();
        Stack::Graph g = shape.graph();
        int d = 0;
        for (auto& arc : g.arcs) {
            if (!arc.flip) continue;
            Lab left = weights[arc.deg_line].at(arc.left_pos);
            if (left == Lab::Up) ++d;
        }
        return d;
    }
};

// Orientation and degree of the two-line picture "bottom weight, matching,
// top weight" (no closing diagrams).
inline bool matching_oriented(const Weight& bot, const Matching& m, const Weight& top) {
    DecoratedStack d;
    d.shape.lines = {m.bottom, m.top};
    d.shape.bands = {m};
    d.weights = {bot, top};
    return d.is_oriented();
}

inline int matching_degree(const Weight& bot, const Matching& m, const Weight& top) {
    DecoratedStack d;
    d.shape.lines = {m.bottom, m.top};
    d.shape.bands = {m};
    d.weights = {bot, top};
    return d.degree();
}

// ---------------------------------------------------------------------------
// Reductions: squeeze a stacked diagram onto one of its boundary lines.
// ---------------------------------------------------------------------------

// Transport a ray tag along a path: cups and caps swap the label, segments
// keep it.  Returns the label forced at `target` when `source` carries `tag`.
inline Lab transport_tag(const Stack::Graph& g, const StackComponent& comp, StackVertex source,
                         Lab tag, StackVertex target) {
    std::map<StackVertex, Lab> lab;
    lab[source] = tag;
    std::vector<StackVertex> queue{source};
    std::set<int> done;
    while (!queue.empty()) {
        StackVertex v = queue.back();
        queue.pop_back();
        for (int id : comp.arc_ids) {
            const StackArc& arc = g.arcs[id];
            if (!(arc.a == v) && !(arc.b == v)) continue;
            if (!done.insert(id).second) continue;
            StackVertex w = (arc.a == v) ? arc.b : arc.a;
            Lab next = arc.flip ? flipped(lab[v]) : lab[v];
            if (auto it = lab.find(w); it != lab.end()) {
                if (it->second != next) throw std::logic_error("inconsistent tag transport");
            } else {
                lab[w] = next;
                queue.push_back(w);
            }
        }
    }
    auto it = lab.find(target);
    if (it == lab.end()) throw std::logic_error("tag transport never reached target");
    return it->second;
}

// Result of squeezing a stack onto its open top line: the arcs the surviving
// components cut out there, plus what was thrown away.
struct Reduction {
    ArcSet diagram;   // on the open boundary line
    int ncircles = 0;  // components meeting neither boundary ray nor the open line
    // Path components that never reach the open line: their two ray tags.
    std::vector<std::pair<Lab, Lab>> dropped_lines;
};

// Squeeze a stack with a closed bottom (cup diagram plus bands) onto its open
// top line, producing a cup diagram there.  Components that stay below the
// top line are discarded but counted.
inline Reduction lower_reduction(const Stack& s) {
    if (s.above || !s.below)
        throw std::invalid_argument("lower reduction expects a closed bottom and open top");
    Stack::Graph g = s.graph();
    Reduction out;
    for (const StackComponent& comp : s.components()) {
        if (comp.is_circle) {
            ++out.ncircles;
            continue;
        }
        std::vector<StackComponent::End> open, rays;
        for (auto& e : comp.ends) (e.kind == EndKind::Open ? open : rays).push_back(e);
        if (open.size() == 2) {
            out.diagram.arcs.emplace_back(std::min(open[0].v.pos, open[1].v.pos),
                                          std::max(open[0].v.pos, open[1].v.pos));
        } else if (open.size() == 1) {
            out.diagram.rays[open[0].v.pos] =
                transport_tag(g, comp, rays[0].v, rays[0].tag, open[0].v);
        } else {
            out.dropped_lines.emplace_back(rays[0].tag, rays[1].tag);
        }
    }
    out.diagram.normalize();
    return out;
}

// Dual: closed top, open bottom, producing a cap diagram on the bottom line.
inline Reduction upper_reduction(const Stack& s) {
    if (s.below || !s.above)
        throw std::invalid_argument("upper reduction expects a closed top and open bottom");
    Stack::Graph g = s.graph();
    Reduction out;
    for (const StackComponent& comp : s.components()) {
        if (comp.is_circle) {
            ++out.ncircles;
            continue;
        }
        std::vector<StackComponent::End> open, rays;
        for (auto& e : comp.ends) (e.kind == EndKind::Open ? open : rays).push_back(e);
        if (open.size() == 2) {
            out.diagram.arcs.emplace_back(std::min(open[0].v.pos, open[1].v.pos),
                                          std::max(open[0].v.pos, open[1].v.pos));
        } else if (open.size() == 1) {
            out.diagram.rays[open[0].v.pos] =
                transport_tag(g, comp, rays[0].v, rays[0].tag, open[0].v);
        } else {
            out.dropped_lines.emplace_back(rays[0].tag, rays[1].tag);
        }
    }
    out.diagram.normalize();
    return out;
}

// Squeeze a pile of matchings (both boundary lines open) to a single
// matching, counting the circles trapped in the middle.
struct MatchingReduction {
    Matching matching;
    int ncircles = 0;
};

namespace detail {

// Every way to pair up all of the given positions by noncrossing arcs whose
// interiors are fully paired.
inline std::vector<std::vector<std::pair<int, int>>> full_pairings(const std::vector<int>& pos) {
    if (pos.size() % 2 != 0) return {};
    if (pos.empty()) return {{}};
    std::vector<std::vector<std::pair<int, int>>> out;
    for (size_t k = 1; k < pos.size(); k += 2) {
        std::vector<int> inside(pos.begin() + 1, pos.begin() + static_cast<long>(k));
        std::vector<int> after(pos.begin() + static_cast<long>(k) + 1, pos.end());
        for (auto& in : full_pairings(inside))
            for (auto& post : full_pairings(after)) {
                std::vector<std::pair<int, int>> arcs{{pos[0], pos[k]}};
                arcs.insert(arcs.end(), in.begin(), in.end());
                arcs.insert(arcs.end(), post.begin(), post.end());
                out.push_back(std::move(arcs));
            }
    }
    return out;
}

// Every arc set usable on one side of a matching: a noncrossing partial
// pairing leaving no loose position trapped under an arc.
inline std::vector<std::vector<std::pair<int, int>>> partial_pairings(
    const std::vector<int>& pos) {
    if (pos.empty()) return {{}};
    std::vector<int> rest(pos.begin() + 1, pos.end());
    std::vector<std::vector<std::pair<int, int>>> out = partial_pairings(rest);
    for (size_t k = 1; k < pos.size(); k += 2) {
        std::vector<int> inside(pos.begin() + 1, pos.begin() + static_cast<long>(k));
        std::vector<int> after(pos.begin() + static_cast<long>(k) + 1, pos.end());
        for (auto& in : full_pairings(inside))
            for (auto& post : partial_pairings(after)) {
                std::vector<std::pair<int, int>> arcs{{pos[0], pos[k]}};
                arcs.insert(arcs.end(), in.begin(), in.end());
                arcs.insert(arcs.end(), post.begin(), post.end());
                out.push_back(std::move(arcs));
            }
    }
    return out;
}

}  // namespace detail

// All matchings between two blocks sharing a window, planar by construction.
inline std::vector<Matching> all_matchings(const Block& bottom, const Block& top) {
    std::vector<Matching> out;
    std::vector<int> bp = bottom.free_positions(), tp = top.free_positions();
    auto caps_list = detail::partial_pairings(bp);
    auto cups_list = detail::partial_pairings(tp);
    for (auto& caps : caps_list)
        for (auto& cups : cups_list) {
            if (bp.size() - 2 * caps.size() != tp.size() - 2 * cups.size()) continue;
            out.emplace_back(bottom, top, caps, cups);
        }
    return out;
}

inline std::vector<Matching> proper_matchings(const Block& bottom, const Block& top) {
    std::vector<Matching> out;
    for (auto& m : all_matchings(bottom, top))
        if (m.is_proper()) out.push_back(m);
    return out;
}

inline MatchingReduction reduce_bands(const std::vector<Block>& lines,
                                      const std::vector<Matching>& bands) {
    Stack s;
    s.lines = lines;
    s.bands = bands;
    MatchingReduction out;
    std::vector<std::pair<int, int>> caps, cups;
    int top_line = s.nlines() - 1;
    for (const StackComponent& comp : s.components()) {
        if (comp.is_circle) {
            ++out.ncircles;
            continue;
        }
        auto &e0 = comp.ends[0], &e1 = comp.ends[1];
        if (e0.kind != EndKind::Open || e1.kind != EndKind::Open)
            throw std::invalid_argument("band pile has rays");
        bool bot0 = e0.v.line == 0, bot1 = e1.v.line == 0;
        int p0 = e0.v.pos, p1 = e1.v.pos;
        if (bot0 && bot1) caps.emplace_back(std::min(p0, p1), std::max(p0, p1));
        else if (!bot0 && !bot1) cups.emplace_back(std::min(p0, p1), std::max(p0, p1));
        (void)top_line;
    }
    out.matching = Matching(lines.front(), lines.back(), caps, cups);
    return out;
}

}  // namespace arcweb
