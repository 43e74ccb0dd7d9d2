#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "arcweb/bgg.hpp"
#include "arcweb/kl.hpp"

using namespace arcweb;

namespace {

using R = Rational;

const ArcAlgebra& alg(const Block& b) {
    static std::map<std::string, std::unique_ptr<ArcAlgebra>> cache;
    auto [it, fresh] = cache.try_emplace(b.str());
    if (fresh) it->second = std::make_unique<ArcAlgebra>(b);
    return *it->second;
}

Weight wt(const std::string& pattern, const Block& b) {
    Weight w = Weight::parse(pattern);
    REQUIRE(block_of(w).str() == b.str());
    return w;
}

// Convenience: assert a matrix sends degree d columns to degree d rows and
// stays inside one idempotent slice.
template <class F>
void check_degree_zero(const Matrix<F>& m, const Mod<F>& row_mod, const Mod<F>& col_mod) {
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c) {
            if (m.at(r, c) == F(0)) continue;
            CHECK(row_mod.deg[static_cast<size_t>(r)] == col_mod.deg[static_cast<size_t>(c)]);
            CHECK(row_mod.wt[static_cast<size_t>(r)] == col_mod.wt[static_cast<size_t>(c)]);
        }
}

}  // namespace

TEST_CASE("covers and distance layers tile the interval") {
    Block b22 = Block::parse("****", "2,2");
    Weight top = wt("^^vv", b22);

    auto layers = interval_by_distance(top);
    REQUIRE(layers.size() == 5);  // distances 0 through 4
    CHECK(layers[0] == std::vector<Weight>{top});
    size_t total = 0;
    for (auto& g : layers) total += g.size();
    CHECK(total == 6);  // the whole block sits below its top weight

    for (size_t n = 0; n < layers.size(); ++n)
        for (const Weight& lam : layers[n]) {
            CHECK(bruhat_leq(lam, top));
            CHECK(ell(lam, top) == static_cast<int>(n));
        }

    // Each arrow drops the distance by exactly one and stays inside.
    for (const Arrow& a : interval_arrows(top)) {
        CHECK(ell(a.lam, a.nu) == 1);
        CHECK(bruhat_leq(a.lam, a.nu));
        CHECK(ell(a.nu, top) == ell(a.lam, top) - 1);
        CHECK(a.lam.at(a.i) == Lab::Down);
        CHECK(a.lam.at(a.j) == Lab::Up);
    }
}

TEST_CASE("sign choices anticommute around every square") {
    // A chain with no squares accepts the all-plus assignment.
    Block b12 = Block::parse("***", "1,2");
    Weight chain_top = wt("^^v", b12);
    auto chain_arrows = interval_arrows(chain_top);
    REQUIRE(chain_arrows.size() == 2);
    SignAssignment all_plus;
    for (const Arrow& a : chain_arrows) all_plus.sign[{a.lam, a.nu}] = 1;
    CHECK(squares_anticommute(chain_arrows, all_plus));

    // One hand-checked square: both routes from v*/*^v^ to ^v^v.
    Block b22 = Block::parse("****", "2,2");
    Weight lo = wt("v^v^", b22);
    auto ups = bruhat_ups(lo);
    REQUIRE(ups.size() == 2);
    Weight far = wt("^v^v", b22);
    int prod = 1;
    for (auto& [pos, mid] : ups) {
        prod *= coordinate_sign({lo, mid, pos.first, pos.second});
        auto rest = bruhat_ups(mid);
        bool found = false;
        for (auto& [pos2, val] : rest)
            if (val == far) {
                prod *= coordinate_sign({mid, far, pos2.first, pos2.second});
                found = true;
            }
        REQUIRE(found);
    }
    CHECK(prod == -1);

    // The closed-form rule passes the full square check everywhere we look,
    // and the linear solver independently produces a valid assignment.
    std::vector<std::pair<std::string, std::pair<std::string, std::string>>> tops = {
        {"****", {"2,2", "^^vv"}},
        {"*****", {"2,3", "^^v^v"}},
        {"*ox**", {"1,2", "^ox^v"}},
        {"******", {"3,3", "^^^vvv"}},
    };
    for (auto& [frame, rest] : tops) {
        Block b = Block::parse(frame, rest.first);
        Weight mu = wt(rest.second, b);
        auto arrows = interval_arrows(mu);
        SignAssignment coord;
        for (const Arrow& a : arrows) coord.sign[{a.lam, a.nu}] = coordinate_sign(a);
        CHECK(squares_anticommute(arrows, coord));
        CHECK(squares_anticommute(arrows, solved_signs(arrows)));
        CHECK(squares_anticommute(arrows, sign_assignment(mu)));
    }
}

TEST_CASE("the cover map moves cup vectors and kills the rest") {
    Block b11 = Block::parse("**", "1,1");
    const ArcAlgebra& A = alg(b11);
    Arrow ar{wt("v^", b11), wt("^v", b11), 1, 2};

    // The smaller cell is spanned by its cup vector, which passes through.
    Matrix<R> f = cell_hom<R>(A, ar);
    REQUIRE(f.rows == 2);
    REQUIRE(f.cols == 1);
    std::vector<int> rows = cell_basis_weights(A, ar.nu);
    for (int r = 0; r < f.rows; ++r)
        CHECK(f.at(r, 0) == (A.wts[static_cast<size_t>(rows[static_cast<size_t>(r)])] == ar.lam
                                 ? R(1)
                                 : R(0)));

    // Across small blocks: every cover map commutes with the whole algebra
    // action and raises the internal degree by exactly one.
    for (auto& [frame, nd] : std::vector<std::pair<std::string, std::string>>{
             {"****", "2,2"}, {"*****", "2,3"}, {"*ox**", "1,2"}}) {
        Block b = Block::parse(frame, nd);
        const ArcAlgebra& AB = alg(b);
        std::vector<Weight> all = b.weights();
        Weight top = *std::max_element(all.begin(), all.end());
        for (const Arrow& a : interval_arrows(top)) {
            Mod<R> src = cell_module<R>(AB, a.lam);
            Mod<R> dst = cell_module<R>(AB, a.nu);
            Matrix<R> g = cell_hom<R>(AB, a);
            bool nonzero = false;
            for (int r = 0; r < g.rows; ++r)
                for (int c = 0; c < g.cols; ++c)
                    if (!(g.at(r, c) == R(0))) {
                        nonzero = true;
                        CHECK(dst.deg[static_cast<size_t>(r)] ==
                              src.deg[static_cast<size_t>(c)] + 1);
                        CHECK(dst.wt[static_cast<size_t>(r)] == src.wt[static_cast<size_t>(c)]);
                    }
            CHECK(nonzero);
            for (int e = 0; e < AB.dim(); ++e)
                REQUIRE(dst.action_matrix(e) * g == g * src.action_matrix(e));
        }
    }
}

TEST_CASE("both routes across a square give the same composite map") {
    Block b22 = Block::parse("****", "2,2");
    const ArcAlgebra& A = alg(b22);
    Weight lo = wt("v^v^", b22);
    Weight far = wt("^v^v", b22);

    std::vector<Matrix<R>> routes;
    for (auto& [pos, mid] : bruhat_ups(lo))
        for (auto& [pos2, val] : bruhat_ups(mid))
            if (val == far)
                routes.push_back(cell_hom<R>(A, {mid, far, pos2.first, pos2.second}) *
                                 cell_hom<R>(A, {lo, mid, pos.first, pos.second}));
    REQUIRE(routes.size() == 2);
    CHECK(routes[0] == routes[1]);
    CHECK_FALSE(routes[0].is_zero());
}

TEST_CASE("complexes assemble with graded differentials") {
    Block b23 = Block::parse("*****", "2,3");
    const ArcAlgebra& A = alg(b23);
    Weight mu = wt("^v^v^", b23);

    BGGComplex<R> C = bgg_complex<R>(A, mu);
    REQUIRE(C.V.size() == C.layer.size());
    REQUIRE(C.d.size() + 1 == C.V.size());

    for (size_t n = 0; n < C.layer.size(); ++n) {
        int dim = 0;
        Laurent want;
        for (const Weight& lam : C.layer[n]) {
            Mod<R> cell = cell_module<R>(A, lam);
            dim += cell.dim();
            want += cell.char_total() * Laurent::q(static_cast<int>(n));
        }
        CHECK(C.V[n].dim() == dim);
        CHECK(C.V[n].char_total() == want);
    }
    for (size_t n = 0; n < C.d.size(); ++n) check_degree_zero(C.d[n], C.V[n], C.V[n + 1]);
}

TEST_CASE("a minimal weight resolves itself") {
    Block b22 = Block::parse("****", "2,2");
    const ArcAlgebra& A = alg(b22);
    Weight bottom = wt("vv^^", b22);

    BGGComplex<R> C = bgg_complex<R>(A, bottom);
    CHECK(C.V.size() == 1);
    CHECK(C.d.empty());
    CHECK(C.V[0].dim() == 1);

    BGGReport rep = verify_bgg<R>(A, bottom);
    CHECK(rep.kostant);
    CHECK(rep.d_squared_zero);
    CHECK(rep.exact_at(0));
    CHECK(rep.verdict);
}

TEST_CASE("exactness distinguishes the pattern-avoiding weights") {
    // Exhaustively on the smaller blocks: the differential squares to zero,
    // and the complex is exact at every position precisely when the top
    // weight avoids the up-down-up-down pattern.  When exactness fails, the
    // failing position can be the augmentation or a higher one; both modes
    // show up already in these blocks.
    std::vector<std::pair<std::string, std::string>> blocks = {
        {"**", "1,1"},  {"***", "1,2"},   {"***", "2,1"},   {"****", "2,2"},
        {"*oo*", "1,1"}, {"*ox**", "1,2"}, {"*****", "2,3"},
    };
    int kostant_seen = 0, fail_bottom = 0, fail_upper = 0;
    for (auto& [frame, nd] : blocks) {
        Block b = Block::parse(frame, nd);
        const ArcAlgebra& A = alg(b);
        for (const Weight& mu : b.weights()) {
            BGGReport rep = verify_bgg<R>(A, mu);
            REQUIRE(rep.d_squared_zero);
            size_t layers = interval_by_distance(mu).size();
            bool all_exact = true;
            for (size_t n = 0; n < layers; ++n)
                all_exact = all_exact && rep.exact_at(static_cast<int>(n));
            REQUIRE(all_exact == is_kostant(mu));
            REQUIRE(rep.verdict);
            if (is_kostant(mu))
                ++kostant_seen;
            else
                (rep.exact_at(0) ? fail_upper : fail_bottom) += 1;
        }
    }
    CHECK(kostant_seen >= 20);
    CHECK(fail_bottom >= 1);
    CHECK(fail_upper >= 1);

    // In the 2-up-2-down block the one failing weight is pinned down, and it
    // fails right at the augmentation.
    Block b22 = Block::parse("****", "2,2");
    for (const Weight& mu : b22.weights()) {
        BGGReport rep = verify_bgg<R>(alg(b22), mu);
        CHECK(rep.exact_at(0) == (mu.str() != "^v^v"));
    }

    // Frozen counterexample to the tempting stronger claim that only the
    // augmentation can fail: this top weight covers its head fine yet has
    // one-dimensional homology one step up the complex.
    Block b23 = Block::parse("*****", "2,3");
    const ArcAlgebra& A23 = alg(b23);
    Weight mu = wt("^v^^v", b23);
    BGGReport rep = verify_bgg<R>(A23, mu);
    REQUIRE_FALSE(rep.kostant);
    CHECK(rep.exact_at(0));
    CHECK_FALSE(rep.exact_at(1));
    CHECK(rep.verdict);

    BGGComplex<R> C = bgg_complex<R>(A23, mu);
    REQUIRE(C.d.size() >= 2);
    int h1 = C.V[1].dim() - rank(C.d[0]) - rank(C.d[1]);
    CHECK(h1 == 1);

    // The stray class is concentrated over a single slice, where the
    // alternating sum of graded characters picks up a -q^2, and the matching
    // graded multiplicity polynomial is forced away from a single power.
    int w = A23.wt_index.at(wt("vv^^^", b23));
    Laurent euler;
    for (size_t n = 0; n < C.V.size(); ++n) {
        Laurent part = C.V[n].char_idem(w);
        euler += (n % 2 == 0) ? part : -part;
    }
    CHECK(euler == -Laurent::q(2));
    CHECK(kl_poly(wt("vv^^^", b23), mu) == Laurent::parse("q^2+q^4"));
}

TEST_CASE("larger blocks agree on sampled weights") {
    Block b33 = Block::parse("******", "3,3");
    const ArcAlgebra& A33 = alg(b33);
    std::vector<Weight> ws = b33.weights();
    int wild = 0;
    for (size_t k = 0; k < ws.size(); k += 3) {
        BGGReport rep = verify_bgg<R>(A33, ws[k]);
        REQUIRE(rep.verdict);
        wild += rep.kostant ? 0 : 1;
    }
    REQUIRE(verify_bgg<R>(A33, ws.back()).verdict);
    CHECK(wild >= 2);  // the sample must exercise both outcomes

    Block b44 = Block::parse("********", "4,4");
    const ArcAlgebra& A44 = alg(b44);
    std::vector<Weight> big = b44.weights();
    for (size_t k : {size_t{0}, size_t{23}, size_t{46}})
        REQUIRE(verify_bgg<R>(A44, big[k]).verdict);
}

TEST_CASE("the alternating sum of the layers is one irreducible") {
    // Complex-level Euler characteristic, valid for pattern-avoiding tops.
    std::vector<std::pair<std::string, std::string>> blocks = {
        {"****", "2,2"}, {"*****", "2,3"}, {"*ox**", "1,2"}};
    for (auto& [frame, nd] : blocks) {
        Block b = Block::parse(frame, nd);
        const ArcAlgebra& A = alg(b);
        for (const Weight& mu : b.weights()) {
            if (!is_kostant(mu)) continue;
            BGGComplex<R> C = bgg_complex<R>(A, mu);
            for (int w = 0; w < A.nwts(); ++w) {
                Laurent euler;
                for (size_t n = 0; n < C.V.size(); ++n) {
                    Laurent part = C.V[n].char_idem(w);
                    euler += (n % 2 == 0) ? part : -part;
                }
                REQUIRE(euler == (A.wts[static_cast<size_t>(w)] == mu ? Laurent::one()
                                                                      : Laurent()));
            }
        }

        // The polynomial form of the same statement holds for every weight:
        // alternating-variable polynomials against cell characters isolate
        // one irreducible.
        for (const Weight& mu : b.weights())
            for (int w = 0; w < A.nwts(); ++w) {
                Laurent sum;
                for (const Weight& lam : b.weights()) {
                    Laurent p = kl_poly(lam, mu);
                    if (p == Laurent()) continue;
                    sum += p.subst_minus_q() * cell_module<R>(A, lam).char_idem(w);
                }
                REQUIRE(sum == (A.wts[static_cast<size_t>(w)] == mu ? Laurent::one()
                                                                    : Laurent()));
            }
    }

    // A weight containing the forbidden pattern overshoots the irreducible:
    // some slice of the alternating sum comes out wrong.
    Block b22 = Block::parse("****", "2,2");
    const ArcAlgebra& A = alg(b22);
    Weight bad = wt("^v^v", b22);
    BGGComplex<R> C = bgg_complex<R>(A, bad);
    bool matches_delta = true;
    for (int w = 0; w < A.nwts(); ++w) {
        Laurent euler;
        for (size_t n = 0; n < C.V.size(); ++n) {
            Laurent part = C.V[n].char_idem(w);
            euler += (n % 2 == 0) ? part : -part;
        }
        matches_delta =
            matches_delta && euler == (A.wts[static_cast<size_t>(w)] == bad
                                           ? Laurent::one()
                                           : Laurent());
    }
    CHECK_FALSE(matches_delta);
}
