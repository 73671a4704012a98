#include <doctest.h>

#include "tripoly/structure.hpp"

using namespace tripoly;

namespace {

FiniteMonoid trivial_monoid() {
    FiniteMonoid m;
    m.size = 1;
    m.identity = 0;
    m.op = [](int, int) { return 0; };
    return m;
}

}  // namespace

TEST_CASE("semidirect product basics") {
    SUBCASE("trivial factors give the trivial monoid") {
        auto s = semidirect(trivial_monoid(), trivial_monoid(), [](int, int) { return 0; });
        CHECK(s.monoid.size == 1);
        CHECK(s.monoid.check_identity());
        CHECK(s.monoid.check_associativity());
    }
    SUBCASE("additive functions acted on by unit-valued multipliers over F2") {
        auto F2 = Ring::make("F2");
        FuncSpace f = enumerate_poly_functions(F2, 1);
        FuncSpace fu = enumerate_unit_valued(f);
        auto s = semidirect(additive_monoid(f), multiplicative_monoid(fu),
                            pointwise_mul_action(fu, f));
        CHECK(s.monoid.size == 4);
        CHECK(s.monoid.check_identity());
        CHECK(s.monoid.check_associativity());
    }
    SUBCASE("invalid actions are rejected") {
        auto F2 = Ring::make("F2");
        FuncSpace f = enumerate_poly_functions(F2, 1);
        // squaring the argument is not additive over F2 tables? it is; use a
        // non-endomorphic constant-shift action instead
        auto bad = [](int, int b) { return b ^ 1; };
        CHECK_THROWS_AS(semidirect(additive_monoid(f), trivial_monoid(), bad),
                        std::invalid_argument);
    }
}

TEST_CASE("the pair operation models single-level composition") {
    // (u,f)(v,g) = (uv, f+ug) matches composing (2:u;f)(2:v;g) at table level
    auto F2 = Ring::make("F2");
    FuncSpace f_space = enumerate_poly_functions(F2, 1);
    FuncSpace u_space = enumerate_unit_valued(f_space);
    auto s = semidirect(additive_monoid(f_space), multiplicative_monoid(u_space),
                        pointwise_mul_action(u_space, f_space));

    PermGroup level = induced_level_subgroup(F2, 2, 2);
    CHECK(level.size() == s.monoid.size);

    auto table_of = [&](int pair) {
        auto [ua, fb] = s.decode(pair);
        const Table& u = u_space.tables[static_cast<std::size_t>(ua)];
        const Table& f = f_space.tables[static_cast<std::size_t>(fb)];
        Perm t(4);
        for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t b = 0; b < 2; ++b)
                t[a * 2 + b] = static_cast<std::uint16_t>(
                    a * 2 + static_cast<std::size_t>(F2->add(f[a], F2->mul(static_cast<int>(b), u[a]))));
        return t;
    };
    for (int p = 0; p < static_cast<int>(s.monoid.size); ++p) {
        CHECK(level.contains(table_of(p)));
        for (int q = 0; q < static_cast<int>(s.monoid.size); ++q)
            CHECK(table_of(s.monoid.op(p, q)) == perm_compose(table_of(p), table_of(q)));
    }
}

TEST_CASE("units of a monoid") {
    SUBCASE("a group is its own unit set") {
        auto F3 = Ring::make("F3");
        FuncSpace f = enumerate_poly_functions(F3, 1);
        FiniteMonoid add = additive_monoid(f);
        UnitGroup u = units_of(add);
        CHECK(u.element_of.size() == add.size);
    }
    SUBCASE("units of the multiplicative function monoid are the unit-valued tables") {
        auto Z4 = Ring::make("Z4");
        FuncSpace f = enumerate_poly_functions(Z4, 1);
        FiniteMonoid mul = multiplicative_monoid(f);
        UnitGroup u = units_of(mul);
        CHECK(u.element_of.size() == 16);
        FuncSpace fu = enumerate_unit_valued(f);
        for (int e : u.element_of) {
            CHECK(fu.contains(f.tables[static_cast<std::size_t>(e)]));
        }
        // inverse law
        for (std::size_t i = 0; i < u.element_of.size(); ++i)
            CHECK(u.group.monoid.op(static_cast<int>(i), u.group.inverse[i]) ==
                  u.group.monoid.identity);
    }
}

TEST_CASE("units of a semidirect product are the pairs of units") {
    SUBCASE("F2, F3, Z4 function monoids under the multiplication action") {
        for (const char* spec : {"F2", "F3", "Z4", "F2[t]/t^2"}) {
            auto R = Ring::make(spec);
            FuncSpace f = enumerate_poly_functions(R, 1);
            auto rep = verify_units_semidirect(additive_monoid(f), multiplicative_monoid(f),
                                               pointwise_mul_action(f, f));
            CHECK(rep.pass);
            CHECK(rep.unit_count == rep.expected_unit_count);
            if (std::string(spec) == "Z4") {
                CHECK(rep.semidirect_size == 4096);
                CHECK(rep.unit_count == 64 * 16);
            }
        }
    }
}

TEST_CASE("normality of level subgroups") {
    SUBCASE("top level is normal at n = k = 2 over F2") {
        InducedGroup g = induced_group_mt(Ring::make("F2"), 2);
        PermGroup h = induced_level_subgroup(Ring::make("F2"), 2, 2);
        CHECK(h.is_subgroup_of(g.perms));
        CHECK(is_normal(h, g.perms));
    }
    SUBCASE("level 2 inside n = 3 over F2 is not normal, with the conjugation witness") {
        auto F2 = Ring::make("F2");
        InducedGroup g = induced_group_mt(F2, 3);
        REQUIRE(g.perms.size() == 128);
        PermGroup h = induced_level_subgroup(F2, 3, 2);
        CHECK(h.is_subgroup_of(g.perms));
        auto witness = normality_witness(h, g.perms);
        REQUIRE(witness.has_value());
        CHECK_FALSE(h.contains(witness->conjugate));

        // the conjugation of (2:1;x1) by (3:1;x2) per the explicit product
        auto x1 = MultiPoly::variable(F2, 1, 0);
        auto x2 = MultiPoly::variable(F2, 2, 1);
        auto inner = TriElem::level(F2, 3, 2, MultiPoly::constant(F2, 1, 1), x1);
        auto outer = TriElem::level(F2, 3, 3, MultiPoly::constant(F2, 2, 1), x2);
        auto conj = outer.compose(inner).compose(outer.inverse());
        auto table = conj.perm_table();
        Perm p(table.size());
        for (std::size_t i = 0; i < table.size(); ++i) p[i] = static_cast<std::uint16_t>(table[i]);
        CHECK(g.perms.contains(p));
        CHECK_FALSE(h.contains(p));
    }
    SUBCASE("trivial subgroup is normal") {
        InducedGroup g = induced_group_mt(Ring::make("F2"), 2);
        PermGroup triv = PermGroup::from_elements(4, {perm_identity(4)});
        CHECK(is_normal(triv, g.perms));
    }
}

TEST_CASE("series and classification of small symmetric groups") {
    // all functions on F3 are polynomial, so the permutations form S_3
    FuncSpace perms = enumerate_poly_permutations(Ring::make("F3"));
    std::vector<Perm> elems;
    for (const auto& t : perms.tables) elems.emplace_back(t);
    PermGroup s3 = PermGroup::from_elements(3, std::move(elems));
    REQUIRE(s3.size() == 6);
    auto ds = derived_series(s3);
    REQUIRE(ds.size() == 3);
    CHECK(ds[1].size() == 3);  // A_3
    CHECK(ds[2].size() == 1);
    CHECK(is_solvable(s3));
    CHECK_FALSE(is_nilpotent(s3));
    CHECK_FALSE(s3.is_abelian());
}

TEST_CASE("the permutations of F5 are S_5 and are not solvable") {
    FuncSpace perms = enumerate_poly_permutations(Ring::make("F5"));
    REQUIRE(perms.size() == 120);
    std::vector<Perm> elems;
    for (const auto& t : perms.tables) elems.emplace_back(t);
    PermGroup s5 = PermGroup::from_elements(5, std::move(elems));
    auto ds = derived_series(s5);
    CHECK(ds.back().size() == 60);  // stabilizes at A_5
    CHECK_FALSE(is_solvable(s5));
}

TEST_CASE("series invariants") {
    // the last derived term is perfect, lower central series stabilize, and
    // nilpotent groups are solvable
    std::vector<PermGroup> groups;
    groups.push_back(induced_group_mt(Ring::make("F2"), 2).perms);
    groups.push_back(induced_group_mt(Ring::make("F3"), 2).perms);
    {
        FuncSpace perms = enumerate_poly_permutations(Ring::make("F5"));
        std::vector<Perm> elems(perms.tables.begin(), perms.tables.end());
        groups.push_back(PermGroup::from_elements(5, std::move(elems)));
    }
    for (const auto& g : groups) {
        auto ds = derived_series(g);
        const PermGroup& last = ds.back();
        auto gens = last.small_generating_set();
        PermGroup again = commutator_subgroup(g.points(), gens, gens, gens);
        CHECK(again.size() == last.size());  // perfect (or trivial)
        auto lcs = lower_central_series(g);
        std::vector<Perm> lg = lcs.back().small_generating_set();
        auto g_gens = g.small_generating_set();
        CHECK(commutator_subgroup(g.points(), g_gens, lg, g_gens).size() == lcs.back().size());
        if (is_nilpotent(g)) CHECK(is_solvable(g));
    }
}

TEST_CASE("group properties of the induced groups") {
    SUBCASE("F2 at n = 2: nilpotent, solvable, not abelian") {
        GroupPropsReport rep = group_props(Ring::make("F2"), 2);
        CHECK(rep.order == 8);
        CHECK(rep.nilpotent);
        CHECK(rep.solvable);
        CHECK_FALSE(rep.abelian);
        // the non-commuting witness pair
        auto F2 = Ring::make("F2");
        auto a = TriElem::from_vecpoly(VecPoly::parse(F2, 2, "(x1, x1+x2)"));
        auto b = TriElem::from_vecpoly(VecPoly::parse(F2, 2, "(x1+1, x1+x2)"));
        CHECK(a.compose(b).perm_table() != b.compose(a).perm_table());
    }
    SUBCASE("F3 at n = 2: solvable, not nilpotent") {
        GroupPropsReport rep = group_props(Ring::make("F3"), 2);
        CHECK(rep.order == 1296);
        CHECK(rep.solvable);
        CHECK_FALSE(rep.nilpotent);
        CHECK_FALSE(rep.abelian);
    }
}

TEST_CASE("decomposition verification at the induced level") {
    SUBCASE("F2, n = 2") {
        DecompositionReport rep = verify_decomposition(Ring::make("F2"), 2,
                                                       DecompositionLevel::Induced);
        CHECK(rep.pass);
        CHECK(rep.lhs_order == 8);
        CHECK(rep.rhs_order == 8);
        CHECK(rep.map_bijective);
        CHECK(rep.map_homomorphic);
        CHECK(rep.kernel_is_normal);
        CHECK(rep.section_splits);
        CHECK(rep.to_json().find("\"pass\":true") != std::string::npos);
    }
    SUBCASE("F3, n = 2") {
        DecompositionReport rep = verify_decomposition(Ring::make("F3"), 2,
                                                       DecompositionLevel::Induced);
        CHECK(rep.pass);
        CHECK(rep.lhs_order == 1296);
        CHECK(rep.rhs_order == 1296);
    }
    SUBCASE("F2, n = 3") {
        DecompositionReport rep = verify_decomposition(Ring::make("F2"), 3,
                                                       DecompositionLevel::Induced);
        CHECK(rep.pass);
        CHECK(rep.lhs_order == 128);
    }
}

TEST_CASE("decomposition verification at the monoid and group levels") {
    for (const char* spec : {"Z4", "F3"}) {
        auto R = Ring::make(spec);
        DecompositionReport mon = verify_decomposition(R, 2, DecompositionLevel::Monoid, 1, 5, 15);
        CHECK(mon.pass);
        DecompositionReport grp = verify_decomposition(R, 2, DecompositionLevel::Group, 1, 6, 15);
        CHECK(grp.pass);
        DecompositionReport mon3 = verify_decomposition(R, 3, DecompositionLevel::Monoid, 1, 7, 8);
        CHECK(mon3.pass);
    }
}
