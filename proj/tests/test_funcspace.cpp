#include <doctest.h>

#include <random>

#include "tripoly/funcspace.hpp"
#include "tripoly/trimonoid.hpp"

using namespace tripoly;

TEST_CASE("polynomial function counts") {
    CHECK(enumerate_poly_functions(Ring::make("F2"), 1).size() == 4);
    CHECK(enumerate_poly_functions(Ring::make("F2"), 2).size() == 16);
    CHECK(enumerate_poly_functions(Ring::make("F3"), 1).size() == 27);
    CHECK(enumerate_poly_functions(Ring::make("Z4"), 1).size() == 64);
}

TEST_CASE("Z/4 function count cross-oracle: congruence and difference constraints") {
    // induced functions on Z/4 are exactly the maps with G(a+2) - G(a)
    // constant modulo 4 and even, for a = 0,1: 4*4*2*2 of them
    auto Z4 = Ring::make("Z4");
    FuncSpace space = enumerate_poly_functions(Z4, 1);
    std::size_t direct = 0;
    for (int g0 = 0; g0 < 4; ++g0)
        for (int g1 = 0; g1 < 4; ++g1)
            for (int g2 = 0; g2 < 4; ++g2)
                for (int g3 = 0; g3 < 4; ++g3) {
                    if ((g2 - g0) % 2 || (g3 - g1) % 2) continue;
                    ++direct;
                    Table t{static_cast<std::uint16_t>(g0), static_cast<std::uint16_t>(g1),
                            static_cast<std::uint16_t>(g2), static_cast<std::uint16_t>(g3)};
                    CHECK(space.contains(t));
                }
    CHECK(direct == space.size());
}

TEST_CASE("unit-valued function counts") {
    CHECK(enumerate_unit_valued(enumerate_poly_functions(Ring::make("F2"), 1)).size() == 1);
    CHECK(enumerate_unit_valued(enumerate_poly_functions(Ring::make("Z4"), 1)).size() == 16);
    CHECK(enumerate_unit_valued(enumerate_poly_functions(Ring::make("F3"), 1)).size() == 8);
}

TEST_CASE("polynomial permutation counts") {
    CHECK(enumerate_poly_permutations(Ring::make("F2")).size() == 2);
    CHECK(enumerate_poly_permutations(Ring::make("F3")).size() == 6);
    CHECK(enumerate_poly_permutations(Ring::make("Z4")).size() == 8);
}

TEST_CASE("permutation set is closed under composition and inverse") {
    for (const char* spec : {"F3", "Z4", "F2[t]/t^2"}) {
        auto R = Ring::make(spec);
        FuncSpace perms = enumerate_poly_permutations(R);
        for (const auto& a : perms.tables) {
            Table inv(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) inv[a[i]] = static_cast<std::uint16_t>(i);
            CHECK(perms.contains(inv));
            for (const auto& b : perms.tables) {
                Table comp(a.size());
                for (std::size_t i = 0; i < a.size(); ++i) comp[i] = a[b[i]];
                CHECK(perms.contains(comp));
            }
        }
    }
}

TEST_CASE("closure is independent of worklist order") {
    for (u64 seed : {1ull, 99ull, 123456789ull}) {
        FuncSpace a = enumerate_poly_functions(Ring::make("Z4"), 1, 256, 0);
        FuncSpace b = enumerate_poly_functions(Ring::make("Z4"), 1, 256, seed);
        CHECK(a.tables == b.tables);
        FuncSpace c = enumerate_poly_functions(Ring::make("F3"), 2, 256, 0);
        FuncSpace d = enumerate_poly_functions(Ring::make("F3"), 2, 256, seed);
        CHECK(c.tables == d.tables);
    }
}

TEST_CASE("function spaces are closed under pointwise operations") {
    for (const char* spec : {"Z4", "F3", "F2[t]/t^2"}) {
        auto R = Ring::make(spec);
        FuncSpace space = enumerate_poly_functions(R, 1);
        for (const auto& a : space.tables)
            for (const auto& b : space.tables) {
                Table sum(a.size()), prod(a.size());
                for (std::size_t i = 0; i < a.size(); ++i) {
                    sum[i] = static_cast<std::uint16_t>(R->add(a[i], b[i]));
                    prod[i] = static_cast<std::uint16_t>(R->mul(a[i], b[i]));
                }
                CHECK(space.contains(sum));
                CHECK(space.contains(prod));
            }
        // contains all constants and projections
        for (std::size_t c = 0; c < R->size(); ++c)
            CHECK(space.contains(Table(R->size(), static_cast<std::uint16_t>(c))));
        Table proj(R->size());
        for (std::size_t i = 0; i < R->size(); ++i) proj[i] = static_cast<std::uint16_t>(i);
        CHECK(space.contains(proj));
    }
}

TEST_CASE("field function spaces saturate at q^(q^k)") {
    for (int q : {2, 3}) {
        auto R = Ring::make("F" + std::to_string(q));
        for (int k = 1; k <= 2; ++k) {
            u64 expect = checked_pow(static_cast<u64>(q), checked_pow(static_cast<u64>(q),
                                                                      static_cast<u64>(k)));
            CHECK(enumerate_poly_functions(R, k).size() == expect);
            u64 expect_units = checked_pow(static_cast<u64>(q - 1),
                                           checked_pow(static_cast<u64>(q), static_cast<u64>(k)));
            CHECK(enumerate_unit_valued(enumerate_poly_functions(R, k)).size() == expect_units);
        }
    }
}

TEST_CASE("induced group orders over the desk rings") {
    SUBCASE("F2") {
        InducedGroup g = induced_group_mt(Ring::make("F2"), 2);
        CHECK(g.order == 8);
        REQUIRE(g.materialized);
        CHECK(g.perms.size() == 8);
        CHECK(g.perms.closed_under_composition());
        CHECK(g.perms.contains_identity_and_inverses());
    }
    SUBCASE("F3") {
        InducedGroup g = induced_group_mt(Ring::make("F3"), 2);
        CHECK(g.order == 1296);
        REQUIRE(g.materialized);
        CHECK(g.perms.size() == 1296);
        CHECK(g.perms.closed_under_composition());
        CHECK(g.perms.contains_identity_and_inverses());
    }
    SUBCASE("Z4 formula only") {
        CHECK(mt_order_formula(Ring::make("Z4"), 2) == 8192);
    }
    SUBCASE("order-only fallback beyond the cap") {
        InducedGroup g = induced_group_mt(Ring::make("F3"), 2, 100);
        CHECK(g.order == 1296);
        CHECK_FALSE(g.materialized);
    }
    SUBCASE("order-only mode reaches q = 4 and q = 5") {
        // all functions over a field are polynomial: |P| = q!, |F| = q^q,
        // |FU| = (q-1)^q
        CHECK(mt_order_formula(Ring::make("F2^2:t^2+t+1"), 2) == 24ull * 256 * 81);
        CHECK(mt_order_formula(Ring::make("F5"), 2) == 120ull * 3125 * 1024);
    }
}

TEST_CASE("two-variable enumerations past the cap are rejected") {
    CHECK_THROWS_AS(enumerate_poly_functions(Ring::make("Z9"), 2), CapExceeded);
}

TEST_CASE("group elements are the tables of monoid elements") {
    std::mt19937_64 rng(7);
    auto R = Ring::make("F3");
    InducedGroup g = induced_group_mt(R, 2);
    for (int rep = 0; rep < 20; ++rep) {
        auto t = random_mt_element(R, 2, 3, rng);
        auto table = t.perm_table();
        Perm p(table.size());
        for (std::size_t i = 0; i < table.size(); ++i) p[i] = static_cast<std::uint16_t>(table[i]);
        CHECK(g.perms.contains(p));
    }
}

TEST_CASE("evaluation carries composition to table composition") {
    std::mt19937_64 rng(21);
    for (const char* spec : {"Z4", "F3"}) {
        auto R = Ring::make(spec);
        for (int rep = 0; rep < 10; ++rep) {
            auto a = random_mt_element(R, 2, 2, rng);
            auto b = random_mt_element(R, 2, 2, rng);
            auto lhs = a.compose(b).perm_table();
            auto ta = a.perm_table(), tb = b.perm_table();
            std::vector<int> rhs(ta.size());
            for (std::size_t p = 0; p < ta.size(); ++p)
                rhs[p] = ta[static_cast<std::size_t>(tb[p])];
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("unit-induced and automorphism-induced function sets") {
    auto Z4 = Ring::make("Z4");
    FuncSpace ui = enumerate_unit_induced(Z4, 1);
    CHECK(ui.size() == 4);
    // every unit polynomial's table is in the set
    CHECK(ui.contains({1, 1, 1, 1}));
    CHECK(ui.contains({1, 3, 1, 3}));  // 1+2x
    CHECK(ui.contains({3, 3, 3, 3}));
    CHECK(ui.contains({3, 1, 3, 1}));
    // the unit-valued witness that is not unit-induced
    CHECK_FALSE(ui.contains({1, 1, 3, 3}));  // x^2-x+1

    FuncSpace ai = enumerate_automorphism_induced(Z4);
    CHECK(ai.size() == 8);  // equals all polynomial permutations over Z/4
    FuncSpace perms = enumerate_poly_permutations(Z4);
    CHECK(ai.tables == perms.tables);

    auto F3 = Ring::make("F3");
    CHECK(enumerate_unit_induced(F3, 1).size() == 2);  // nonzero constants only
    CHECK(enumerate_automorphism_induced(F3).size() == 6);
}

TEST_CASE("no unit polynomial represents (x^q - x) + 1") {
    CHECK(nounitrep_check(Ring::make("Z4")));
    CHECK(nounitrep_check(Ring::make("Z9")));
    CHECK(nounitrep_check(Ring::make("F2[t]/t^2")));
    CHECK_THROWS_AS(nounitrep_check(Ring::make("F3")), std::invalid_argument);
}

TEST_CASE("TR-induced versus MT-induced groups") {
    SUBCASE("equality over F2") {
        InducedGroup tr = induced_group_tr(Ring::make("F2"), 2);
        InducedGroup mt = induced_group_mt(Ring::make("F2"), 2);
        REQUIRE(tr.materialized);
        REQUIRE(mt.materialized);
        CHECK(tr.perms == mt.perms);
        CHECK(tr.order == 8);
    }
    SUBCASE("strict inclusion over Z4 with the unit-valued witness") {
        auto Z4 = Ring::make("Z4");
        InducedGroup tr = induced_group_tr(Z4, 2);
        InducedGroup mt = induced_group_mt(Z4, 2);
        REQUIRE(mt.materialized);
        REQUIRE(tr.materialized);
        CHECK(tr.perms.size() < mt.perms.size());
        CHECK(tr.perms.is_subgroup_of(mt.perms));
        // the element (2: (x^q-x)+1; 0) witnesses the difference
        auto g = MultiPoly::parse(Z4, 1, "x1^2-x1+1");
        auto witness = TriElem::level(Z4, 2, 2, g, MultiPoly::zero(Z4, 1));
        auto table = witness.perm_table();
        Perm p(table.size());
        for (std::size_t i = 0; i < table.size(); ++i) p[i] = static_cast<std::uint16_t>(table[i]);
        CHECK(mt.perms.contains(p));
        CHECK_FALSE(tr.perms.contains(p));
    }
    SUBCASE("strict inclusion over F3 with the interpolated witness") {
        auto F3 = Ring::make("F3");
        InducedGroup tr = induced_group_tr(F3, 2);
        InducedGroup mt = induced_group_mt(F3, 2);
        CHECK(tr.perms.size() < mt.perms.size());
        CHECK(tr.perms.is_subgroup_of(mt.perms));
        // F(b) = a for b = a, else 1, with a = 2
        auto g = lagrange_interpolate({F3, 1, {1, 1, 2}});
        auto witness = TriElem::level(F3, 2, 2, g, MultiPoly::zero(F3, 1));
        auto table = witness.perm_table();
        Perm p(table.size());
        for (std::size_t i = 0; i < table.size(); ++i) p[i] = static_cast<std::uint16_t>(table[i]);
        CHECK(mt.perms.contains(p));
        CHECK_FALSE(tr.perms.contains(p));
    }
}

TEST_CASE("order formula report") {
    OrderReport rep = verify_order_formula(Ring::make("F2"), 2, true, true);
    CHECK(rep.formula == 8);
    CHECK(rep.materialized == 8);
    CHECK(rep.match);
    CHECK(rep.closure_checked);
    CHECK(rep.to_json().find("\"match\":true") != std::string::npos);
}

TEST_CASE("ratio reports") {
    SUBCASE("unit ratio for Z4, k = 1 and 2") {
        RatioReport r1 = verify_counting_ratios(Ring::make("Z4"), 1);
        CHECK(r1.unit_ratio_exact);
        CHECK(r1.func_count == 64);
        CHECK(r1.unit_func_count == 16);
        RatioReport r2 = verify_counting_ratios(Ring::make("Z4"), 2);
        CHECK(r2.unit_ratio_exact);
    }
    SUBCASE("dual-number local ring") {
        RatioReport r = verify_counting_ratios(Ring::make("F2[t]/t^2"), 1);
        CHECK(r.unit_ratio_exact);
        CHECK(r.unit_func_count * 4 == r.func_count);
    }
    SUBCASE("permutation ratio matches the reversed orientation") {
        RatioReport r = verify_counting_ratios(Ring::make("Z4"), 1);
        CHECK(r.perm_count == 8);
        CHECK(r.reversed_orientation_matches);
        CHECK_FALSE(r.printed_orientation_matches);
    }
    SUBCASE("non-local rings are rejected") {
        CHECK_THROWS_AS(verify_counting_ratios(Ring::make("Z4xF3"), 1), std::invalid_argument);
    }
}

TEST_CASE("p-group checks") {
    CHECK(p_group_check(64, 2));
    CHECK(p_group_check(16, 2));
    CHECK(p_group_check(27, 3));
    CHECK_FALSE(p_group_check(12, 2));
    CHECK_FALSE(p_group_check(6, 3));
}

TEST_CASE("one-variable representatives cover every function class with faithful witnesses") {
    for (const char* spec : {"F2", "F3", "Z4"}) {
        auto R = Ring::make(spec);
        auto reps = poly_function_representatives(R);
        FuncSpace space = enumerate_poly_functions(R, 1);
        CHECK(reps.size() == space.size());
        for (const auto& rep : reps) {
            CHECK(space.contains(rep.table));
            CHECK(to_table(rep.poly.func_of()) == rep.table);
        }
    }
}

TEST_CASE("pair representatives split function classes by derivative") {
    auto F2 = Ring::make("F2");
    auto pairs = poly_pair_representatives(F2);
    // x and x^2 are one function but two pairs
    for (const auto& rep : pairs) {
        CHECK(to_table(rep.poly.func_of()) == rep.fn);
        CHECK(to_table(rep.poly.derivative(0).func_of()) == rep.deriv);
    }
    auto fn_count = poly_function_representatives(F2).size();
    CHECK(pairs.size() > fn_count);

    auto Z4 = Ring::make("Z4");
    for (const auto& rep : poly_pair_representatives(Z4)) {
        CHECK(to_table(rep.poly.func_of()) == rep.fn);
        CHECK(to_table(rep.poly.derivative(0).func_of()) == rep.deriv);
    }
}
