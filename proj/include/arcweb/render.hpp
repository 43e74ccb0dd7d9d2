#pragma once

// Text and SVG pictures of weights, cup/cap diagrams, matchings and basis
// elements.  Every drawing is deterministic: vertices sit on a fixed pitch,
// arcs are drawn innermost first, and nothing depends on hashing or locale.

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "arcweb/cupdiag.hpp"
#include "arcweb/matching.hpp"
#include "arcweb/surgery.hpp"
#include "arcweb/weights.hpp"

namespace arcweb {

namespace render_detail {

// Nesting depth of each arc: 0 for arcs containing no other arc, one more
// than the deepest arc inside otherwise.
inline std::vector<int> arc_depths(const std::vector<std::pair<int, int>>& arcs) {
    std::vector<size_t> order(arcs.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return arcs[a].second - arcs[a].first < arcs[b].second - arcs[b].first;
    });
    std::vector<int> depth(arcs.size(), 0);
    for (size_t oi = 0; oi < order.size(); ++oi)
        for (size_t oj = 0; oj < oi; ++oj) {
            size_t i = order[oi], j = order[oj];
            if (arcs[i].first < arcs[j].first && arcs[j].second < arcs[i].second)
                depth[i] = std::max(depth[i], depth[j] + 1);
        }
    return depth;
}

// Rows of arc art for one side of a number line.  Row 0 touches the line;
// the caller decides in which order to print the rows.  `below` picks cup
// shapes (\_/) over cap shapes (/-\).
inline std::vector<std::string> arc_rows(const ArcSet& c, int lo, int hi, bool below) {
    int width = hi - lo + 1;
    std::vector<int> depth = arc_depths(c.arcs);
    int nrows = 0;
    for (int d : depth) nrows = std::max(nrows, d + 1);
    if (nrows == 0 && !c.rays.empty()) nrows = 1;
    std::vector<std::string> rows(static_cast<size_t>(nrows),
                                  std::string(static_cast<size_t>(width), ' '));
    auto col = [&](int pos) { return static_cast<size_t>(pos - lo); };
    for (size_t a = 0; a < c.arcs.size(); ++a) {
        auto [i, j] = c.arcs[a];
        for (int r = 0; r < depth[a]; ++r) {
            rows[static_cast<size_t>(r)][col(i)] = '|';
            rows[static_cast<size_t>(r)][col(j)] = '|';
        }
        std::string& row = rows[static_cast<size_t>(depth[a])];
        row[col(i)] = below ? '\\' : '/';
        row[col(j)] = below ? '/' : '\\';
        for (int p = i + 1; p < j; ++p) row[col(p)] = below ? '_' : '-';
    }
    for (auto& [pos, tag] : c.rays) {
        (void)tag;
        for (auto& row : rows) row[col(pos)] = '|';
    }
    return rows;
}

inline std::string frame_row(const Block& b) { return b.frame; }

inline std::string label_row(const Weight& w) {
    std::string s;
    for (Lab l : w.labels) s += lab_char(l);
    return s;
}

inline void append_rows(std::ostringstream& os, const std::vector<std::string>& rows,
                        bool reversed) {
    if (reversed)
        for (auto it = rows.rbegin(); it != rows.rend(); ++it) os << *it << "\n";
    else
        for (auto& r : rows) os << r << "\n";
}

// The middle rows of a band between two number lines: cups hanging from the
// top line, caps rising from the bottom line, segments running through.
inline void append_band(std::ostringstream& os, const Matching& m) {
    int lo = m.bottom.lo(), hi = m.bottom.hi();
    int width = hi - lo + 1;
    auto col = [&](int pos) { return static_cast<size_t>(pos - lo); };

    ArcSet cups, caps;
    cups.arcs = m.cups;
    caps.arcs = m.caps;
    std::vector<std::string> cup_rows = arc_rows(cups, lo, hi, true);
    std::vector<std::string> cap_rows = arc_rows(caps, lo, hi, false);

    bool slide = false;
    for (auto& [b, t] : m.segs) slide = slide || b != t;
    std::string slide_row(static_cast<size_t>(width), ' ');

    for (auto& [b, t] : m.segs) {
        for (auto& row : cup_rows) row[col(t)] = '|';
        for (auto& row : cap_rows) row[col(b)] = '|';
        if (!slide) continue;
        if (b == t) {
            slide_row[col(b)] = '|';
        } else {
            for (int p = std::min(b, t); p <= std::max(b, t); ++p) slide_row[col(p)] = '.';
        }
    }
    append_rows(os, cup_rows, false);
    if (slide) os << slide_row << "\n";
    append_rows(os, cap_rows, true);
}

}  // namespace render_detail

// A weight over its canonical cup diagram.
inline std::string render_weight(const Weight& w) {
    std::ostringstream os;
    if (w.offset != 1) os << "@" << w.offset << "\n";
    os << render_detail::label_row(w) << "\n";
    render_detail::append_rows(os, render_detail::arc_rows(cup_diagram_of(w), w.lo(), w.hi(), true),
                               false);
    return os.str();
}

// A bare one-sided diagram against a block frame; `below` = true draws cups.
inline std::string render_arcset(const ArcSet& c, const Block& b, bool below = true) {
    std::ostringstream os;
    if (b.offset != 1) os << "@" << b.offset << "\n";
    std::vector<std::string> rows = render_detail::arc_rows(c, b.lo(), b.hi(), below);
    if (below) {
        os << render_detail::frame_row(b) << "\n";
        render_detail::append_rows(os, rows, false);
    } else {
        render_detail::append_rows(os, rows, true);
        os << render_detail::frame_row(b) << "\n";
    }
    return os.str();
}

// A matching as a two-line picture with its band in between.
inline std::string render_matching(const Matching& m) {
    std::ostringstream os;
    if (m.bottom.offset != 1) os << "@" << m.bottom.offset << "\n";
    os << render_detail::frame_row(m.top) << "\n";
    render_detail::append_band(os, m);
    os << render_detail::frame_row(m.bottom) << "\n";
    return os.str();
}

// A basis diagram over its stack: cap diagram on top, then lines and bands
// downwards, cup diagram at the bottom.
inline std::string render_elem(const StackContext& c, const BasisElem& e) {
    if (static_cast<int>(e.nu.size()) != c.nlines())
        throw std::invalid_argument("element does not fit the stack");
    std::ostringstream os;
    const Block& b0 = c.lines.front();
    if (b0.offset != 1) os << "@" << b0.offset << "\n";
    render_detail::append_rows(
        os, render_detail::arc_rows(cap_diagram_of(e.beta), b0.lo(), b0.hi(), false), true);
    for (int li = c.nlines() - 1; li >= 0; --li) {
        os << render_detail::label_row(e.nu[static_cast<size_t>(li)]) << "\n";
        if (li > 0) render_detail::append_band(os, c.bands[static_cast<size_t>(li - 1)]);
    }
    render_detail::append_rows(
        os, render_detail::arc_rows(cup_diagram_of(e.alpha), b0.lo(), b0.hi(), true), false);
    return os.str();
}

inline std::string render_elem(const Block& b, const BasisElem& e) {
    return render_elem(StackContext::algebra(b), e);
}

// ---------------------------------------------------------------------------
// SVG output.  Vertices sit on a fixed pitch of 40 units; arcs are circular,
// nested arcs staying nested because their endpoints are.
// ---------------------------------------------------------------------------

namespace render_detail {

constexpr int kPitch = 40;
constexpr int kMargin = 30;
constexpr int kRay = 36;

inline int vx(int pos, int lo) { return kMargin + (pos - lo) * kPitch; }

inline void svg_line_of(std::ostringstream& os, const std::string& chars, int lo, int y) {
    os << "  <line x1=\"" << vx(lo, lo) << "\" y1=\"" << y << "\" x2=\""
       << vx(lo + static_cast<int>(chars.size()) - 1, lo) << "\" y2=\"" << y
       << "\" stroke=\"#999\" stroke-width=\"1\"/>\n";
    for (size_t k = 0; k < chars.size(); ++k) {
        int x = vx(lo + static_cast<int>(k), lo);
        os << "  <circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"2\" fill=\"#000\"/>\n";
        os << "  <text x=\"" << x << "\" y=\"" << y - 8
           << "\" font-family=\"monospace\" font-size=\"14\" text-anchor=\"middle\">" << chars[k]
           << "</text>\n";
    }
}

// below = true bows downward (sweep 0), false bows upward (sweep 1).
inline void svg_arcs(std::ostringstream& os, const ArcSet& c, int lo, int y, bool below) {
    for (auto& [i, j] : c.arcs) {
        int x1 = vx(i, lo), x2 = vx(j, lo);
        int r = (x2 - x1) / 2;
        os << "  <path d=\"M " << x1 << " " << y << " A " << r << " " << r << " 0 0 "
           << (below ? 0 : 1) << " " << x2 << " " << y
           << "\" fill=\"none\" stroke=\"#000\" stroke-width=\"2\"/>\n";
    }
    for (auto& [pos, tag] : c.rays) {
        int x = vx(pos, lo);
        int y2 = below ? y + kRay : y - kRay;
        os << "  <line x1=\"" << x << "\" y1=\"" << y << "\" x2=\"" << x << "\" y2=\"" << y2
           << "\" stroke=\"#000\" stroke-width=\"2\"/>\n";
        os << "  <text x=\"" << x + 6 << "\" y=\"" << y2
           << "\" font-family=\"monospace\" font-size=\"12\">" << lab_char(tag) << "</text>\n";
    }
}

inline std::string svg_document(int width, int height, const std::string& body) {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
       << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
       << body << "</svg>\n";
    return os.str();
}

}  // namespace render_detail

inline std::string svg_weight(const Weight& w) {
    using namespace render_detail;
    int width = 2 * kMargin + (w.size() - 1) * kPitch;
    int depth = 0;
    CupDiagram c = cup_diagram_of(w);
    for (auto& [i, j] : c.arcs) depth = std::max(depth, (vx(j, 0) - vx(i, 0)) / 2);
    int y = kMargin;
    int height = y + std::max(depth, c.rays.empty() ? 0 : kRay) + kMargin;
    std::ostringstream body;
    svg_line_of(body, label_row(w), w.lo(), y);
    svg_arcs(body, c, w.lo(), y, true);
    return svg_document(width, height, body.str());
}

inline std::string svg_matching(const Matching& m) {
    using namespace render_detail;
    int width = 2 * kMargin + (m.bottom.size() - 1) * kPitch;
    int ytop = kMargin, ybot = kMargin + 4 * kPitch;
    std::ostringstream body;
    svg_line_of(body, frame_row(m.top), m.top.lo(), ytop);
    svg_line_of(body, frame_row(m.bottom), m.bottom.lo(), ybot);
    ArcSet cups, caps;
    cups.arcs = m.cups;
    caps.arcs = m.caps;
    svg_arcs(body, cups, m.top.lo(), ytop, true);
    svg_arcs(body, caps, m.bottom.lo(), ybot, false);
    for (auto& [b, t] : m.segs)
        body << "  <line x1=\"" << vx(b, m.bottom.lo()) << "\" y1=\"" << ybot << "\" x2=\""
             << vx(t, m.top.lo()) << "\" y2=\"" << ytop
             << "\" stroke=\"#000\" stroke-width=\"2\"/>\n";
    return svg_document(width, ybot + kMargin, body.str());
}

}  // namespace arcweb
