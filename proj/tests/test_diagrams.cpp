#include <catch2/catch_amalgamated.hpp>

#include "arcweb/cupdiag.hpp"
#include "arcweb/matching.hpp"

using namespace arcweb;

namespace {
std::vector<std::pair<int, int>> arcs(std::initializer_list<std::pair<int, int>> xs) {
    std::vector<std::pair<int, int>> v(xs);
    std::sort(v.begin(), v.end());
    return v;
}
}  // namespace

TEST_CASE("canonical cup diagrams") {
    CupDiagram c = cup_diagram_of(Weight::parse("v^"));
    CHECK(c.arcs == arcs({{1, 2}}));
    CHECK(c.rays.empty());

    CupDiagram r = cup_diagram_of(Weight::parse("^v"));
    CHECK(r.arcs.empty());
    REQUIRE(r.rays.size() == 2);
    CHECK(r.rays.at(1) == Lab::Up);
    CHECK(r.rays.at(2) == Lab::Down);
    CHECK(r.rays_canonical());

    // A fourteen-vertex example with a mix of nesting and rays.
    CupDiagram big = cup_diagram_of(Weight::parse("vv^vv^^^^vvv^v"));
    CHECK(big.arcs == arcs({{2, 3}, {5, 6}, {4, 7}, {1, 8}, {12, 13}}));
    REQUIRE(big.rays.size() == 4);
    CHECK(big.rays.at(9) == Lab::Up);
    CHECK(big.rays.at(10) == Lab::Down);
    CHECK(big.rays.at(11) == Lab::Down);
    CHECK(big.rays.at(14) == Lab::Down);
    CHECK(big.planar());

    CHECK(defect(Weight::parse("vvvvv^v^^vv^^^")) == 6);
    CHECK(defect(Weight::parse("vv^vv^^^^vvv^v")) == 5);
}

TEST_CASE("holes and crosses are skipped when building diagrams") {
    CupDiagram c = cup_diagram_of(Weight::parse("vox^"));
    CHECK(c.arcs == arcs({{1, 4}}));
    CHECK(c.rays.empty());
}

TEST_CASE("orientation and side degree") {
    CupDiagram c = cup_diagram_of(Weight::parse("v^"));
    CHECK(oriented(c, Weight::parse("v^")));
    CHECK(oriented(c, Weight::parse("^v")));
    CHECK(side_degree(c, Weight::parse("v^")) == 0);
    CHECK(side_degree(c, Weight::parse("^v")) == 1);

    CupDiagram r = cup_diagram_of(Weight::parse("^v"));
    CHECK(oriented(r, Weight::parse("^v")));
    CHECK(!oriented(r, Weight::parse("v^")));

    CHECK(d_exponent(Weight::parse("v^"), Weight::parse("^v")) == 1);
    CHECK(d_exponent(Weight::parse("^v"), Weight::parse("v^")) == -1);
    CHECK(d_exponent(Weight::parse("v^"), Weight::parse("v^")) == 0);
}

TEST_CASE("maximal defect weights") {
    Block b = Block::parse("****:2,2");
    auto maxw = max_defect_weights(b);
    REQUIRE(max_defect(b) == 2);
    // Exactly the weights whose diagram has two cups.
    for (auto& w : maxw) CHECK(defect(w) == 2);
    CHECK(maxw.size() == 2);  // vv^^ and v^v^ close fully; the rest have rays
    CHECK(maxw[0] == Weight::parse("vv^^"));
    CHECK(maxw[1] == Weight::parse("v^v^"));
}

TEST_CASE("closing a weight off at maximal degree") {
    LambdaCirc lc = lambda_circ(Weight::parse("vvv^^v^^vv^"));
    CHECK(lc.weight == Weight::parse("vvv^v^vv^^^"));
    CHECK(lc.diagram.arcs == arcs({{5, 6}, {8, 9}, {7, 10}, {3, 4}, {2, 11}}));
    REQUIRE(lc.diagram.rays.size() == 1);
    CHECK(lc.diagram.rays.at(1) == Lab::Down);
    CHECK(lc.degree == 3);
    CHECK(is_max_defect(lc.weight));

    // Fixed points: a weight of maximal defect with no clockwise closure.
    LambdaCirc id = lambda_circ(Weight::parse("v^"));
    CHECK(id.weight == Weight::parse("v^"));
    CHECK(id.degree == 0);

    LambdaCirc swap = lambda_circ(Weight::parse("^v"));
    CHECK(swap.weight == Weight::parse("v^"));
    CHECK(swap.degree == 1);
}

TEST_CASE("matchings parse, mirror and stay planar") {
    Block b = Block::parse("****:2,2");
    Matching t = Matching::parse("caps=2-3;cups=1-2", b, b);
    CHECK(t.ncaps() == 1);
    CHECK(t.ncups() == 1);
    REQUIRE(t.segs.size() == 2);
    CHECK(t.segs[0] == std::pair<int, int>(1, 3));
    CHECK(t.segs[1] == std::pair<int, int>(4, 4));
    CHECK(t.str() == "caps=2-3;cups=1-2");
    CHECK(t.is_proper());

    Matching m = t.mirrored();
    CHECK(m.caps == t.cups);
    CHECK(m.cups == t.caps);

    CHECK_THROWS(Matching::parse("caps=1-3;cups=1-2", b, b));  // segment trapped
    CHECK_THROWS(Matching::parse("caps=1-2,2-3;cups=1-2,3-4", b, b));  // reused vertex

    Matching id = Matching::identity(b);
    CHECK(id.ncaps() == 0);
    CHECK(id.segs.size() == 4);
}

TEST_CASE("two-line orientation and degree") {
    Block b = Block::parse("****:2,2");
    Matching t = Matching::parse("caps=2-3;cups=1-2", b, b);
    // Bottom weight must orient the cap at 2-3, top weight the cup at 1-2,
    // and the segments 1->3 and 4->4 must copy labels.
    Weight bot = Weight::parse("vv^^");
    Weight top = Weight::parse("v^v^");
    CHECK(matching_oriented(bot, t, top));
    CHECK(matching_degree(bot, t, top) == 0);  // both arcs anticlockwise

    Weight top_cw = Weight::parse("^vv^");
    CHECK(matching_oriented(bot, t, top_cw));
    CHECK(matching_degree(bot, t, top_cw) == 1);

    CHECK(!matching_oriented(Weight::parse("v^^v"), t, top));  // cap sees equal labels
}

TEST_CASE("reductions against the identity matching change nothing") {
    Block b = Block::parse("****:2,2");
    for (auto& w : b.weights()) {
        Stack s;
        s.lines = {b, b};
        s.bands = {Matching::identity(b)};
        s.below = cup_diagram_of(w);
        Reduction red = lower_reduction(s);
        CHECK(red.diagram == cup_diagram_of(w));
        CHECK(red.ncircles == 0);
        CHECK(red.dropped_lines.empty());
    }
}

TEST_CASE("reduction squeezes out circles and transports tags") {
    Block b = Block::parse("**:1,1");
    // A band whose cap and cup sit on top of each other: stacking it on its
    // mirror image traps one circle.
    Matching t(b, b, {{1, 2}}, {{1, 2}});
    MatchingReduction r = reduce_bands({b, b, b}, {t, t});
    CHECK(r.ncircles == 1);
    CHECK(r.matching.caps == arcs({{1, 2}}));
    CHECK(r.matching.cups == arcs({{1, 2}}));

    // A closed cup meeting the band's cap makes a circle; the band's cup
    // survives as an arc on the top line.
    Stack s;
    s.lines = {b, b};
    s.bands = {t};
    s.below = cup_diagram_of(Weight::parse("v^"));
    Reduction red = lower_reduction(s);
    CHECK(red.diagram.arcs == arcs({{1, 2}}));
    CHECK(red.diagram.rays.empty());
    CHECK(red.ncircles == 1);
}

TEST_CASE("ray tags ride through caps and cups, flipping each time") {
    Block bot = Block::parse("***:2,1");
    Block top = Block::parse("oo*:0,1");
    Matching t(bot, top, {{1, 2}}, {});
    Stack s;
    s.lines = {bot, top};
    s.bands = {t};
    s.below = cup_diagram_of(Weight::parse("vv^"));  // cup 2-3, Down ray at 1
    Reduction red = lower_reduction(s);
    CHECK(red.diagram.arcs.empty());
    REQUIRE(red.diagram.rays.size() == 1);
    // Down at vertex 1, flipped over the cap to Up, flipped back over the
    // closed cup, carried straight up the segment.
    CHECK(red.diagram.rays.at(3) == Lab::Down);
    CHECK(red.ncircles == 0);
    CHECK(red.dropped_lines.empty());
}

TEST_CASE("upper reduction mirrors lower reduction") {
    Block b = Block::parse("****:2,2");
    Matching t = Matching::parse("caps=2-3;cups=1-2", b, b);
    Stack s;
    s.lines = {b, b};
    s.bands = {t};
    s.above = cap_diagram_of(Weight::parse("v^v^"));
    Reduction red = upper_reduction(s);
    // The cup 1-2 of the top weight's diagram meets the band's cup 1-2,
    // leaving a circle; everything else feeds through to the bottom line.
    CHECK(red.ncircles == 1);
    CHECK(red.diagram.covers(2));
    CHECK(red.diagram.covers(3));
}
