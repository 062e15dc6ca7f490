#include "doctest.h"

#include <set>

#include "godel/algebra.hpp"
#include "godel/enumerate.hpp"
#include "godel/error.hpp"
#include "oracles.hpp"

using namespace godel;

namespace {

// diamond: bot, two incomparable atoms, top (the 2x2 grid)
GodelAlgebra diamond_algebra() {
    // order 0 < 1,2 < 3
    std::vector<std::vector<int>> meet{{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 0, 2, 2}, {0, 1, 2, 3}};
    std::vector<std::vector<int>> join{{0, 1, 2, 3}, {1, 1, 3, 3}, {2, 3, 2, 3}, {3, 3, 3, 3}};
    return heyting_from_lattice({"o", "x", "y", "i"}, meet, join, 0, 3);
}

}  // namespace

TEST_SUITE_BEGIN("algebra");

TEST_CASE("chains") {
    CHECK_THROWS_AS(make_chain(1), godel_error);

    GodelAlgebra two = make_chain(2);
    CHECK(two.impl[1][0] == 0);  // Boolean negation on the two-chain

    GodelAlgebra c4 = make_chain(4);
    CHECK(c4.impl[2][1] == 1);
    CHECK(c4.impl[1][2] == 3);

    GodelAlgebra c5 = make_chain(5);
    CHECK(c5.impl[3][3] == 4);

    for (int n = 2; n <= 6; ++n) CHECK_NOTHROW(validate_godel(make_chain(n)));
}

TEST_CASE("heyting_from_lattice") {
    SUBCASE("four-chain lattice gives the chain algebra") {
        std::vector<std::vector<int>> meet(4, std::vector<int>(4)), join(4, std::vector<int>(4));
        for (int x = 0; x < 4; ++x)
            for (int y = 0; y < 4; ++y) {
                meet[x][y] = std::min(x, y);
                join[x][y] = std::max(x, y);
            }
        GodelAlgebra a = heyting_from_lattice({"0", "1", "2", "3"}, meet, join, 0, 3);
        CHECK(a.impl == make_chain(4).impl);
    }
    SUBCASE("diamond is a Gödel algebra with the brute-force residuum") {
        GodelAlgebra d = diamond_algebra();
        for (int x = 0; x < 4; ++x)
            for (int y = 0; y < 4; ++y) {
                int best = 0;
                for (int c = 0; c < 4; ++c)
                    if (d.leq(d.meet[x][c], y) && d.leq(best, c)) best = c;
                CHECK(d.impl[x][y] == best);
                for (int c = 0; c < 4; ++c)
                    CHECK(d.leq(d.meet[x][c], y) == d.leq(c, d.impl[x][y]));
            }
        CHECK(algebras_isomorphic(d, product_algebra(make_chain(2), make_chain(2))));
    }
    SUBCASE("pentagon is rejected as non-distributive") {
        // 0 < a < c < 1 and 0 < b < 1, b incomparable to a and c
        //    indices: 0=bot, 1=a, 2=c, 3=b, 4=top
        std::vector<std::vector<int>> meet{{0, 0, 0, 0, 0},
                                           {0, 1, 1, 0, 1},
                                           {0, 1, 2, 0, 2},
                                           {0, 0, 0, 3, 3},
                                           {0, 1, 2, 3, 4}};
        std::vector<std::vector<int>> join{{0, 1, 2, 3, 4},
                                           {1, 1, 2, 4, 4},
                                           {2, 2, 2, 4, 4},
                                           {3, 4, 4, 3, 4},
                                           {4, 4, 4, 4, 4}};
        CHECK_THROWS_WITH_AS(
            (void)heyting_from_lattice({"0", "a", "c", "b", "1"}, meet, join, 0, 4),
            doctest::Contains("distributive"), godel_error);
    }
    SUBCASE("prelinearity failure names a witness") {
        // up-sets of the non-forest diamond poset order-dual... simplest:
        // the four-element Boolean algebra is fine, but the Heyting algebra
        // of up-sets of a 'V' poset (one bottom, two tops) is not prelinear.
        // Up-sets of V = {0,x,y,1(full)} plus empty: elements {}, {x}, {y},
        // {x,y}, {b,x,y}: a five-element non-prelinear Heyting algebra.
        std::vector<std::string> labels{"e", "x", "y", "xy", "all"};
        auto meet = std::vector<std::vector<int>>(5, std::vector<int>(5));
        auto join = std::vector<std::vector<int>>(5, std::vector<int>(5));
        // encode {}, {x}, {y}, {x,y}, {b,x,y} as bitmasks over {x,y,b}
        static const int mask[5] = {0, 1, 2, 3, 7};
        auto of_mask = [&](int m) {
            for (int i = 0; i < 5; ++i)
                if (mask[i] == m) return i;
            return -1;
        };
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) {
                meet[i][j] = of_mask(mask[i] & mask[j]);
                join[i][j] = of_mask(mask[i] | mask[j]);
            }
        CHECK_THROWS_WITH_AS((void)heyting_from_lattice(labels, meet, join, 0, 4),
                             doctest::Contains("prelinearity"), godel_error);
    }
}

TEST_CASE("hu_dual") {
    Forest f5 = hu_dual(make_chain(5));
    CHECK(f5.size() == 4);
    CHECK(depth(f5.poset) == 3);
    CHECK(is_forest(f5.poset));

    CHECK(hu_dual(make_chain(2)).size() == 1);

    GodelAlgebra d = diamond_algebra();
    Forest fd = hu_dual(d);
    CHECK(fd.size() == 2);
    CHECK(depth(fd.poset) == 0);
    // independent oracle: filter every bit pattern for lattice maps into 2
    auto brute = oracle::brute_two_homs(d);
    auto pts = hu_points(d);
    REQUIRE(brute.size() == pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        CHECK(std::vector<char>(pts[i].bits) == brute[i]);
}

TEST_CASE("vk_algebra") {
    Forest singleton = make_forest({"p"}, {-1});
    CHECK(algebras_isomorphic(vk_algebra(singleton), make_chain(2)));

    for (int n = 2; n <= 6; ++n) {
        Forest chain = hu_dual(make_chain(n));
        GodelAlgebra a = vk_algebra(chain);
        CHECK(a.size() == n);
        CHECK(algebras_isomorphic(a, make_chain(n)));
    }

    // a point next to a two-chain: the free one-generated algebra over C_3
    Forest f = make_forest({"p", "u", "v"}, {-1, -1, 1});
    GodelAlgebra a = vk_algebra(f);
    CHECK(a.size() == 6);
    auto terms = oracle::generated_subalgebra(3, 3, {{0, 1, 2}});
    CHECK(terms.size() == 6);
}

TEST_CASE("vk and hu are mutually inverse on a forest corpus") {
    for (const auto& f : enumerate_forests(5, 4)) {
        GodelAlgebra a = vk_algebra(f);
        CHECK(iso_check(hu_dual(a), f));
        CHECK(algebras_isomorphic(vk_algebra(hu_dual(a)), a));
        if (a.size() <= 16) CHECK_NOTHROW(validate_godel(a));
    }
}

TEST_CASE("hom_set") {
    AlgebraPtr c5 = share(make_chain(5));
    auto end5 = hom_set(c5, 5);
    CHECK(end5.size() == 8);  // labelled by ran minus the bounds

    for (int n = 2; n <= 6; ++n) CHECK(hom_set(share(make_chain(2)), n).size() == 1);

    AlgebraPtr c3 = share(make_chain(3));
    auto homs35 = hom_set(c3, 5);
    CHECK(homs35.size() == 4);
    // oracle: backtracking over all maps C_3 -> C_5
    auto brute = oracle::brute_force_homs(*c3, make_chain(5));
    REQUIRE(brute.size() == homs35.size());
    for (std::size_t i = 0; i < brute.size(); ++i) CHECK(homs35[i].map == brute[i]);
}

TEST_CASE("hom_set equals brute force on a mixed corpus") {
    std::vector<GodelAlgebra> corpus{make_chain(2), make_chain(3), make_chain(4),
                                     diamond_algebra(),
                                     vk_algebra(make_forest({"p", "u", "v"}, {-1, -1, 1})),
                                     product_algebra(make_chain(3), make_chain(2)),
                                     make_trivial()};
    for (const auto& a : corpus) {
        REQUIRE(a.size() <= 12);
        for (int n : {3, 4}) {
            auto fast = hom_set(share(a), n);
            auto brute = oracle::brute_force_homs(a, make_chain(n));
            REQUIRE(fast.size() == brute.size());
            for (std::size_t i = 0; i < fast.size(); ++i) CHECK(fast[i].map == brute[i]);
        }
    }
}

TEST_CASE("hom_set stays correct above the variety bound") {
    // C_6 lies outside G_4; the enumeration just returns fewer maps
    AlgebraPtr c6 = share(make_chain(6));
    auto fast = hom_set(c6, 4);
    auto brute = oracle::brute_force_homs(*c6, make_chain(4));
    REQUIRE(fast.size() == brute.size());
    for (std::size_t i = 0; i < fast.size(); ++i) CHECK(fast[i].map == brute[i]);
    CHECK(fast.size() == 4);
}

TEST_CASE("endomorphism counts") {
    for (int n = 2; n <= 8; ++n) {
        auto ends = hom_set(share(make_chain(n)), n);
        CHECK(ends.size() == (std::size_t(1) << (n - 2)));
        // ran is a complete invariant
        std::set<std::vector<int>> rans;
        for (const auto& e : ends) rans.insert(iota(e).second);
        CHECK(rans.size() == ends.size());
    }
}

TEST_CASE("iota and gamma") {
    AlgebraPtr c5 = share(make_chain(5));
    SUBCASE("identity maps to omega with full range") {
        auto [u, ran] = iota(identity_hom(c5));
        CHECK(u == omega(*c5));
        CHECK(ran == std::vector<int>{0, 1, 2, 3, 4});
    }
    SUBCASE("gamma at the top of HU(C_3) with V = {0,4}") {
        AlgebraPtr c3 = share(make_chain(3));
        auto pts = hu_points(*c3);
        REQUIRE(pts.size() == 2);
        // the pointwise-largest TwoHom has one element above it, so |V| = 2
        TwoHom top = pts[0].pointwise_leq(pts[1]) ? pts[1] : pts[0];
        Homomorphism h = gamma(c3, c5, top, {0, 4});
        CHECK(h.map == std::vector<int>{0, 4, 4});
        // k-counting applied by hand: k(a) = |{v >= top : v(a) = 1}| = top(a)
        for (int a = 0; a < 3; ++a) CHECK(h.map[a] == (top.bits[a] ? 4 : 0));
        CHECK_THROWS_AS(gamma(c3, c5, top, {0, 1, 4}), godel_error);  // |V| too big
        CHECK_THROWS_AS(gamma(c3, c5, top, {0, 3}), godel_error);     // top missing
    }
    SUBCASE("mutually inverse on hom_set(C_5, 5)") {
        for (const auto& x : hom_set(c5, 5)) {
            auto [u, ran] = iota(x);
            CHECK(gamma(c5, c5, u, ran).map == x.map);
        }
    }
}

TEST_CASE("omega_compose") {
    AlgebraPtr c4 = share(make_chain(4));
    CHECK(omega_compose(identity_hom(c4)) == omega(*c4));

    AlgebraPtr c3 = share(make_chain(3));
    auto homs = hom_set(c3, 4);
    // the homs with ranges {0,1,3} and {0,2,3} agree after omega
    const Homomorphism *h013 = nullptr, *h023 = nullptr;
    for (const auto& h : homs) {
        if (iota(h).second == std::vector<int>{0, 1, 3}) h013 = &h;
        if (iota(h).second == std::vector<int>{0, 2, 3}) h023 = &h;
    }
    REQUIRE(h013 != nullptr);
    REQUIRE(h023 != nullptr);
    CHECK(omega_compose(*h013) == omega_compose(*h023));

    std::set<std::vector<char>> classes;
    for (const auto& x : hom_set(share(make_chain(5)), 5))
        classes.insert(omega_compose(x).bits);
    CHECK(classes.size() == 4);
}

TEST_CASE("Phi_omega surjectivity and the up-set bijection") {
    std::vector<GodelAlgebra> corpus{make_chain(4), make_chain(5),
                                     product_algebra(make_chain(3), make_chain(3))};
    for (const auto& a : corpus) {
        const int n = 5;
        auto homs = hom_set(share(a), n);
        auto hu = hu_points(a);
        std::set<std::vector<char>> image;
        for (const auto& x : homs) image.insert(omega_compose(x).bits);
        CHECK(image.size() == hu.size());  // surjective onto HU(A)

        for (const auto& x : homs) {
            auto [u, ran] = iota(x);
            // i |-> u_i is a bijection from ran minus bot onto the up-set of u
            std::set<std::vector<char>> ups;
            for (int i : ran) {
                if (i == 0) continue;
                std::vector<char> ui(a.size());
                for (int e = 0; e < a.size(); ++e) ui[e] = x.map[e] >= i ? 1 : 0;
                ups.insert(ui);
            }
            CHECK(ups.size() == ran.size() - 1);
            std::size_t up_count = 0;
            for (const auto& v : hu)
                if (u.pointwise_leq(v)) {
                    ++up_count;
                    CHECK(ups.count(v.bits) == 1);
                }
            CHECK(up_count == ups.size());
            CHECK(up_count <= static_cast<std::size_t>(n - 1));
        }
    }
}

TEST_CASE("covering of omega-classes tracks range sizes") {
    for (const GodelAlgebra& a : {make_chain(4), make_chain(5),
                                  product_algebra(make_chain(3), make_chain(3))}) {
        const int n = 5;
        auto homs = hom_set(share(a), n);
        Forest f = hu_dual(a);
        auto hu = hu_points(a);
        auto node_of = [&](const TwoHom& u) {
            return static_cast<int>(std::find(hu.begin(), hu.end(), u) - hu.begin());
        };
        for (const auto& x : homs)
            for (const auto& y : homs) {
                int ux = node_of(omega_compose(x)), uy = node_of(omega_compose(y));
                bool covers = false;
                for (auto [lo, hi] : f.poset.covers)
                    if (lo == ux && hi == uy) covers = true;
                std::set<int> topx, topy;
                for (int e = 0; e < a.size(); ++e) {
                    if (x.map[e] == n - 1) topx.insert(e);
                    if (y.map[e] == n - 1) topy.insert(e);
                }
                bool contained =
                    std::includes(topy.begin(), topy.end(), topx.begin(), topx.end());
                std::size_t rx = iota(x).second.size(), ry = iota(y).second.size();
                CHECK(covers == (contained && rx - 1 == ry));
            }
    }
}

TEST_CASE("variety_index") {
    CHECK(variety_index(make_chain(2)) == 2);
    for (int n = 2; n <= 7; ++n) CHECK(variety_index(make_chain(n)) == n);
    CHECK(variety_index(product_algebra(make_chain(3), make_chain(4))) == 4);
    CHECK(variety_index(make_trivial()) == 2);
}

TEST_CASE("linear sums and products") {
    GodelAlgebra c3 = make_chain(3);
    GodelAlgebra s = adjoin_bottom(c3);
    CHECK(s.size() == 4);
    CHECK(algebras_isomorphic(s, make_chain(4)));
    GodelAlgebra p = product_algebra(c3, make_chain(2));
    CHECK(p.size() == 6);
    CHECK(variety_index(p) == 3);
    CHECK_NOTHROW(validate_godel(p));
    CHECK_NOTHROW(validate_godel(adjoin_bottom(p)));
}

TEST_SUITE_END();
