#include <doctest.h>

#include <map>
#include <random>

#include "tripoly/trimonoid.hpp"

using namespace tripoly;

namespace {

MultiPoly P(const RingPtr& R, int arity, const std::string& text) {
    return MultiPoly::parse(R, arity, text);
}

VecPoly naive_compose(const VecPoly& g, const VecPoly& f) {
    VecPoly out{g.ring, g.n, {}};
    for (const auto& comp : g.comps) out.comps.push_back(comp.substitute(f.comps));
    return out;
}

}  // namespace

TEST_CASE("membership validation") {
    auto Z4 = Ring::make("Z4");
    CHECK_NOTHROW(TriElem::make(Z4, P(Z4, 1, "x1+2*x1^2"), {{P(Z4, 1, "x1"), P(Z4, 1, "1+2*x1")}}));

    auto F3 = Ring::make("F3");
    CHECK_THROWS_AS(TriElem::make(F3, P(F3, 1, "x1^2"), {{P(F3, 1, "x1"), P(F3, 1, "1")}}),
                    MembershipViolation);
    CHECK_THROWS_AS(TriElem::make(Z4, P(Z4, 1, "x1"), {{P(Z4, 1, "0"), P(Z4, 1, "x1")}}),
                    MembershipViolation);

    // the identity in factored form
    for (int n : {1, 2, 3}) CHECK_NOTHROW(TriElem::identity(Z4, n));
    CHECK(TriElem::identity(Z4, 2).to_vecpoly() == VecPoly::parse(Z4, 2, "(x1, x2)"));
}

TEST_CASE("vector form conversions") {
    auto Z4 = Ring::make("Z4");
    auto t = TriElem::make(Z4, P(Z4, 1, "x1+1"), {{P(Z4, 1, "x1"), P(Z4, 1, "1")}});
    auto v = t.to_vecpoly();
    CHECK(v == VecPoly::parse(Z4, 2, "(x1+1, x1+x2)"));
    CHECK(TriElem::from_vecpoly(v) == t);

    CHECK_THROWS_AS(TriElem::from_vecpoly(VecPoly::parse(Z4, 2, "(x2, x1)")), NotTriangular);
    CHECK_THROWS_AS(TriElem::from_vecpoly(VecPoly::parse(Z4, 2, "(x1, x1+x2^2)")), NotTriangular);
    // triangular in shape but failing the membership criteria
    CHECK_THROWS_AS(TriElem::from_vecpoly(VecPoly::parse(Z4, 2, "(2*x1, x1+x2)")), MembershipViolation);
}

TEST_CASE("single-level composition relations") {
    auto Z4 = Ring::make("Z4");
    int n = 2;
    auto u = P(Z4, 1, "1+2*x1");
    auto v = P(Z4, 1, "3");
    auto f = P(Z4, 1, "x1");
    auto g = P(Z4, 1, "2*x1+1");

    // (i:u;f)(i:v;g) = (i:uv; f+ug)
    auto lhs = TriElem::level(Z4, n, 2, u, f).compose(TriElem::level(Z4, n, 2, v, g));
    auto rhs = TriElem::level(Z4, n, 2, u * v, f + u * g);
    CHECK(lhs == rhs);

    // (1:f)(1:g) = (1:f.g)
    auto p1 = P(Z4, 1, "x1+2*x1^2");
    auto p2 = P(Z4, 1, "3*x1+1");
    CHECK(TriElem::one_level(Z4, n, p1).compose(TriElem::one_level(Z4, n, p2)) ==
          TriElem::one_level(Z4, n, p1.substitute({p2})));

    // identity laws
    auto t = TriElem::make(Z4, p1, {{f, u}});
    auto id = TriElem::identity(Z4, n);
    CHECK(id.compose(t) == t);
    CHECK(t.compose(id) == t);
}

TEST_CASE("unit criterion") {
    auto Z4 = Ring::make("Z4");
    CHECK(TriElem::make(Z4, P(Z4, 1, "x1+2*x1^2"), {{P(Z4, 1, "x1"), P(Z4, 1, "1+2*x1")}}).is_unit());
    CHECK_FALSE(
        TriElem::make(Z4, P(Z4, 1, "x1"), {{P(Z4, 1, "0"), P(Z4, 1, "x1^2-x1+1")}}).is_unit());
    auto F4 = Ring::make("F2^2:t^2+t+1");
    CHECK_FALSE(TriElem::make(F4, P(F4, 1, "x1^2"), {{P(F4, 1, "0"), P(F4, 1, "1")}}).is_unit());
}

TEST_CASE("closed-form inverse") {
    auto Z4 = Ring::make("Z4");
    auto t = TriElem::level(Z4, 2, 2, P(Z4, 1, "1+2*x1"), P(Z4, 1, "x1"));
    auto ti = t.inverse();
    CHECK(ti.u(2) == P(Z4, 1, "1+2*x1"));
    CHECK(ti.f(2) == P(Z4, 1, "3*x1+2*x1^2"));

    auto shift = TriElem::one_level(Z4, 2, P(Z4, 1, "x1+3"));
    CHECK(shift.inverse().f1() == P(Z4, 1, "x1+1"));

    auto id = TriElem::identity(Z4, 3);
    CHECK(id.inverse() == id);

    CHECK_THROWS_AS(
        TriElem::make(Z4, P(Z4, 1, "x1"), {{P(Z4, 1, "0"), P(Z4, 1, "x1^2-x1+1")}}).inverse(),
        NotAUnit);
}

TEST_CASE("pointwise application and preimages") {
    auto Z4 = Ring::make("Z4");
    auto id = TriElem::identity(Z4, 3);
    CHECK(id.apply({1, 2, 3}) == std::vector<int>{1, 2, 3});
    CHECK(id.solve_preimage({1, 2, 3}) == std::vector<int>{1, 2, 3});

    auto t = TriElem::make(Z4, P(Z4, 1, "x1+1"), {{P(Z4, 1, "x1"), P(Z4, 1, "1")}});
    CHECK(t.apply({1, 1}) == std::vector<int>{2, 2});
    CHECK(t.solve_preimage({2, 2}) == std::vector<int>{1, 1});

    auto F2 = Ring::make("F2");
    auto s = TriElem::make(F2, P(F2, 1, "x1"), {{P(F2, 1, "x1"), P(F2, 1, "1")}});
    CHECK(s.apply({1, 0}) == std::vector<int>{1, 1});

    // the Frobenius square on F4 is solvable even though it is not a unit
    auto F4 = Ring::make("F2^2:t^2+t+1");
    auto frob = TriElem::make(F4, P(F4, 1, "x1^2"), {{P(F4, 1, "0"), P(F4, 1, "1")}});
    int tgen = 2;  // the element t
    auto pre = frob.solve_preimage({tgen, 0});
    CHECK(pre == std::vector<int>{F4->mul(tgen, tgen), 0});
    CHECK(frob.apply(pre) == std::vector<int>{tgen, 0});
}

TEST_CASE("componentwise equivalence") {
    auto F2 = Ring::make("F2");
    auto a = TriElem::make(F2, P(F2, 1, "x1^2"), {{P(F2, 1, "0"), P(F2, 1, "1")}});
    auto b = TriElem::make(F2, P(F2, 1, "x1"), {{P(F2, 1, "0"), P(F2, 1, "1")}});
    CHECK(a.equiv(b));
    CHECK(a != b);

    auto Z4 = Ring::make("Z4");
    auto c = TriElem::make(Z4, P(Z4, 1, "x1"), {{P(Z4, 1, "0"), P(Z4, 1, "x1^2-x1+1")}});
    auto d = TriElem::make(Z4, P(Z4, 1, "x1"), {{P(Z4, 1, "0"), P(Z4, 1, "1")}});
    CHECK_FALSE(c.equiv(d));
    CHECK(c.equiv(c));
}

TEST_CASE("embedding into more variables") {
    auto Z4 = Ring::make("Z4");
    auto t = TriElem::one_level(Z4, 1, P(Z4, 1, "x1+1"));
    auto e = t.embed(2);
    CHECK(e.f(2) == MultiPoly::zero(Z4, 1));
    CHECK(e.u(2) == P(Z4, 1, "1"));
    CHECK(TriElem::identity(Z4, 2).embed(4) == TriElem::identity(Z4, 4));
    CHECK_THROWS_AS(t.embed(1), std::invalid_argument);

    std::mt19937_64 rng(99);
    for (int rep = 0; rep < 10; ++rep) {
        auto s = random_mt_element(Z4, 2, 2, rng);
        auto r = random_mt_element(Z4, 2, 2, rng);
        CHECK(s.compose(r).embed(3) == s.embed(3).compose(r.embed(3)));
        // the appended coordinates pass through untouched
        std::uniform_int_distribution<int> el(0, 3);
        std::vector<int> pt{el(rng), el(rng), el(rng)};
        auto low = s.apply({pt[0], pt[1]});
        CHECK(s.embed(3).apply(pt) == std::vector<int>{low[0], low[1], pt[2]});
    }
}

TEST_CASE("monoid axioms on random elements") {
    std::mt19937_64 rng(4242);
    for (const char* spec : {"Z4", "F3"}) {
        auto R = Ring::make(spec);
        for (int n : {2, 3}) {
            auto id = TriElem::identity(R, n);
            for (int rep = 0; rep < 8; ++rep) {
                auto a = random_mt_element(R, n, 2, rng);
                auto b = random_mt_element(R, n, 2, rng);
                auto c = random_mt_element(R, n, 2, rng);
                // closure: the factored product passes full validation
                auto ab = a.compose(b);
                CHECK_NOTHROW(TriElem::make(R, ab.f1(), [&] {
                    TriElem::Levels ls;
                    for (int i = 2; i <= n; ++i) ls.emplace_back(ab.f(i), ab.u(i));
                    return ls;
                }()));
                // associativity, exactly
                CHECK(a.compose(b).compose(c) == a.compose(b.compose(c)));
                CHECK(id.compose(a) == a);
                CHECK(a.compose(id) == a);
            }
        }
    }
}

TEST_CASE("factored form equals the product of its single-level factors") {
    std::mt19937_64 rng(777);
    auto Z4 = Ring::make("Z4");
    for (int rep = 0; rep < 10; ++rep) {
        auto t = random_mt_element(Z4, 3, 2, rng);
        auto prod = TriElem::one_level(Z4, 3, t.f1());
        for (int i = 2; i <= 3; ++i)
            prod = prod.compose(TriElem::level(Z4, 3, i, t.u(i), t.f(i)));
        CHECK(prod == t);
    }
}

TEST_CASE("factored composition matches naive substitution") {
    std::mt19937_64 rng(2024);
    for (const char* spec : {"Z4", "F3"}) {
        auto R = Ring::make(spec);
        for (int n : {2, 3}) {
            for (int rep = 0; rep < 6; ++rep) {
                auto g = random_mt_element(R, n, 2, rng);
                auto f = random_mt_element(R, n, 2, rng);
                CHECK(g.compose(f).to_vecpoly() == naive_compose(g.to_vecpoly(), f.to_vecpoly()));
            }
        }
    }
}

TEST_CASE("inverse round-trips exactly and inverts the induced permutation") {
    std::mt19937_64 rng(31337);
    auto Z4 = Ring::make("Z4");
    auto id = TriElem::identity(Z4, 3);
    for (int rep = 0; rep < 25; ++rep) {
        auto t = random_tr_element(Z4, 3, 2, rng);
        auto ti = t.inverse();
        CHECK(t.compose(ti) == id);
        CHECK(ti.compose(t) == id);

        auto table = t.perm_table();
        auto inv_table = ti.perm_table();
        for (std::size_t p = 0; p < table.size(); ++p)
            CHECK(inv_table[static_cast<std::size_t>(table[p])] == static_cast<int>(p));
    }
}

TEST_CASE("apply and solve_preimage are mutually inverse, including non-units") {
    std::mt19937_64 rng(555);
    for (const char* spec : {"Z4", "F3", "F2^2:t^2+t+1"}) {
        auto R = Ring::make(spec);
        std::uniform_int_distribution<int> elem(0, static_cast<int>(R->size()) - 1);
        for (int rep = 0; rep < 10; ++rep) {
            auto t = random_mt_element(R, 3, 2, rng);
            for (int k = 0; k < 20; ++k) {
                std::vector<int> pt{elem(rng), elem(rng), elem(rng)};
                CHECK(t.solve_preimage(t.apply(pt)) == pt);
                CHECK(t.apply(t.solve_preimage(pt)) == pt);
            }
        }
    }
}

TEST_CASE("components of t composed with its inverse induce the coordinate functions") {
    std::mt19937_64 rng(808);
    auto Z4 = Ring::make("Z4");
    for (int rep = 0; rep < 10; ++rep) {
        auto t = random_tr_element(Z4, 3, 2, rng);
        auto both = t.compose(t.inverse()).to_vecpoly();
        for (int i = 0; i < 3; ++i)
            CHECK(func_equiv(both.comps[static_cast<std::size_t>(i)],
                             MultiPoly::variable(Z4, 3, i)));
    }
}

TEST_CASE("equivalence coincides with equality of induced permutation tables") {
    auto Z4 = Ring::make("Z4");
    // enumerate a small family: f1 affine permutations, level parts of degree <= 1
    std::vector<MultiPoly> f1s, lin;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            auto p = MultiPoly::constant(Z4, 1, a) + MultiPoly::monomial(Z4, 1, {1}, b);
            lin.push_back(p);
            if (is_permutation_poly(p)) f1s.push_back(p);
        }
    std::vector<TriElem> elems;
    for (const auto& f1 : f1s)
        for (const auto& f2 : lin)
            for (const auto& u2 : lin)
                if (is_unit_valued(u2)) elems.push_back(TriElem::make_trusted(Z4, f1, {{f2, u2}}));
    REQUIRE(elems.size() > 100);
    std::map<std::vector<int>, std::size_t> by_table;
    for (std::size_t i = 0; i < elems.size(); ++i) {
        auto [it, fresh] = by_table.emplace(elems[i].perm_table(), i);
        if (!fresh) CHECK(elems[i].equiv(elems[it->second]));
    }
    // sample cross-class pairs: distinct tables must not be equivalent
    std::size_t checked = 0;
    for (auto a = by_table.begin(); a != by_table.end() && checked < 200; ++a) {
        auto b = std::next(a);
        if (b == by_table.end()) break;
        CHECK_FALSE(elems[a->second].equiv(elems[b->second]));
        ++checked;
    }
}

TEST_CASE("json round-trip") {
    auto Z4 = Ring::make("Z4");
    auto t = TriElem::make(Z4, P(Z4, 1, "x1+2*x1^2"), {{P(Z4, 1, "x1"), P(Z4, 1, "1+2*x1")}});
    CHECK(TriElem::from_json(t.to_json()) == t);
    auto v = t.to_vecpoly();
    CHECK(VecPoly::from_json(v.to_json()) == v);
}
