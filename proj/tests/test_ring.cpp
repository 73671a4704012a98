#include <doctest.h>

#include <set>

#include "tripoly/ring.hpp"

using namespace tripoly;

namespace {

std::set<int> as_set(const std::vector<int>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("spec parsing round-trips") {
    for (const char* s : {"Z4", "F3", "F2^2:t^2+t+1", "Z4[a1..a1]dual", "Z4xF3", "Z4[t]/t^2",
                          "F2[a1..a2]dual", "Z12", "(Z4xF3)[t]/t^2"}) {
        RingSpec spec = RingSpec::parse(s);
        CHECK(RingSpec::parse(spec.str()).str() == spec.str());
    }
    CHECK_THROWS_AS(RingSpec::parse("Z1"), ParseError);
    CHECK_THROWS_AS(RingSpec::parse("F4"), ParseError);
    CHECK_THROWS_AS(RingSpec::parse("Q7"), ParseError);
    CHECK_THROWS_AS(RingSpec::parse("Z4 nonsense"), ParseError);
    // (t+1)^2 = t^2+1 over F2 is reducible
    CHECK_THROWS_AS(RingSpec::parse("F2^2:t^2+1"), ParseError);
    CHECK_THROWS_AS(RingSpec::parse("F3^2:t^2+t+1x"), ParseError);
}

TEST_CASE("Z/4 classification") {
    auto R = Ring::make("Z4");
    CHECK(R->size() == 4);
    CHECK(as_set(R->units()) == std::set<int>{1, 3});
    CHECK(as_set(R->nilpotents()) == std::set<int>{0, 2});
    CHECK(R->is_local());
    CHECK(as_set(R->maximal_ideal()) == std::set<int>{0, 2});
    CHECK(R->residue_field_size() == 2);
    CHECK(R->characteristic() == 4);
    CHECK_FALSE(R->is_field());
}

TEST_CASE("F_2 is a field") {
    auto R = Ring::make("F2");
    CHECK(R->size() == 2);
    CHECK(as_set(R->units()) == std::set<int>{1});
    CHECK(as_set(R->nilpotents()) == std::set<int>{0});
    CHECK(R->is_local());
    CHECK(R->is_field());
    CHECK(R->residue_field_size() == 2);
}

TEST_CASE("Z/4 x F_3 is not local") {
    auto R = Ring::make("Z4xF3");
    CHECK(R->size() == 12);
    CHECK_FALSE(R->is_local());
    CHECK(R->one() == 1);
    CHECK(R->mul(R->one(), 7) == 7);
    CHECK(R->characteristic() == 12);
}

TEST_CASE("arithmetic examples") {
    auto Z4 = Ring::make("Z4");
    CHECK(Z4->add(2, 2) == 0);
    CHECK(Z4->mul(3, 3) == 1);
    CHECK(Z4->sub(1, 3) == 2);
    CHECK(Z4->neg(1) == 3);

    // F4 = F2[t]/(t^2+t+1): index 2 is t, and t*t = t+1 which is index 3
    auto F4 = Ring::make("F2^2:t^2+t+1");
    CHECK(F4->size() == 4);
    CHECK(F4->element_str(2) == "t");
    CHECK(F4->element_str(3) == "t+1");
    CHECK(F4->mul(2, 2) == 3);
    CHECK(F4->is_field());
    CHECK(F4->characteristic() == 2);
}

TEST_CASE("unit inverses") {
    auto Z4 = Ring::make("Z4");
    CHECK(Z4->unit_inverse(3) == 3);
    CHECK_THROWS_AS(Z4->unit_inverse(2), NotAUnit);

    auto F3 = Ring::make("F3");
    CHECK(F3->unit_inverse(2) == 2);

    auto Z9 = Ring::make("Z9");
    CHECK(Z9->unit_inverse(2) == 5);
}

TEST_CASE("nilpotent extension and dual numbers") {
    auto R = Ring::make("F2[t]/t^2");
    CHECK(R->size() == 4);
    CHECK(R->is_local());
    CHECK_FALSE(R->is_field());
    CHECK(R->residue_field_size() == 2);
    // t has index 2 (digit at the t position)
    CHECK(R->mul(2, 2) == 0);
    CHECK(R->is_nilpotent(2));
    CHECK(R->is_unit(3));

    auto D = Ring::make("F2[a1..a2]dual");
    CHECK(D->size() == 8);
    // a1 and a2 occupy the two generator digits; their product vanishes
    int a1 = D->from_components({0, 1, 0});
    int a2 = D->from_components({0, 0, 1});
    CHECK(D->mul(a1, a2) == 0);
    CHECK(D->mul(a1, a1) == 0);
    CHECK(D->is_local());
    CHECK(D->residue_field_size() == 2);

    // (r0+r1 a)(s0+s1 a) = r0 s0 + (r0 s1 + r1 s0) a
    auto Z4d = Ring::make("Z4[a1..a1]dual");
    for (int r0 = 0; r0 < 4; ++r0)
        for (int r1 = 0; r1 < 4; ++r1)
            for (int s0 = 0; s0 < 4; ++s0)
                for (int s1 = 0; s1 < 4; ++s1) {
                    int lhs = Z4d->mul(Z4d->from_components({r0, r1}), Z4d->from_components({s0, s1}));
                    int rhs = Z4d->from_components({(r0 * s0) % 4, (r0 * s1 + r1 * s0) % 4});
                    CHECK(lhs == rhs);
                }
}

TEST_CASE("ring axioms hold exhaustively on small rings") {
    for (const char* spec : {"Z4", "F3", "F2^2:t^2+t+1", "Z12", "F2[t]/t^2", "Z4xF3", "Z4[a1..a1]dual",
                             "F2^3:t^3+t+1", "Z8", "Z9"}) {
        auto R = Ring::make(spec);
        REQUIRE(R->size() <= 64);
        int n = static_cast<int>(R->size());
        for (int a = 0; a < n; ++a) {
            CHECK(R->add(a, 0) == a);
            CHECK(R->mul(a, 1) == a);
            CHECK(R->add(a, R->neg(a)) == 0);
            for (int b = 0; b < n; ++b) {
                CHECK(R->add(a, b) == R->add(b, a));
                CHECK(R->mul(a, b) == R->mul(b, a));
                for (int c = 0; c < n; ++c) {
                    CHECK(R->add(R->add(a, b), c) == R->add(a, R->add(b, c)));
                    CHECK(R->mul(R->mul(a, b), c) == R->mul(a, R->mul(b, c)));
                    CHECK(R->mul(a, R->add(b, c)) == R->add(R->mul(a, b), R->mul(a, c)));
                }
            }
        }
        // unit and nilpotent sets match their definitions
        for (int a = 0; a < n; ++a) {
            bool found = false;
            for (int b = 0; b < n && !found; ++b) found = R->mul(a, b) == R->one();
            CHECK(found == R->is_unit(a));
            int p = a;
            bool nil = false;
            for (int e = 1; e <= n && !nil; ++e) {
                nil = p == R->zero();
                p = R->mul(p, a);
            }
            nil = nil || p == R->zero();
            CHECK(nil == R->is_nilpotent(a));
        }
    }
}

TEST_CASE("units of a local ring are the elements with nonzero residue") {
    for (const char* spec : {"Z4", "Z9", "F2[t]/t^2", "Z4[a1..a1]dual", "F2^2:t^2+t+1"}) {
        auto R = Ring::make(spec);
        REQUIRE(R->is_local());
        for (int a = 0; a < static_cast<int>(R->size()); ++a)
            CHECK(R->is_unit(a) == (R->residue(a) != 0));
    }
}

TEST_CASE("crt_split examples") {
    SUBCASE("Z12 splits into Z4 and Z3") {
        auto R = Ring::make("Z12");
        CrtSplit s = crt_split(R);
        REQUIRE(s.factors.size() == 2);
        CHECK(s.factors[0]->spec_string() == "Z4");
        CHECK(s.factors[1]->spec_string() == "Z3");
    }
    SUBCASE("a local ring splits as itself") {
        auto R = Ring::make("Z4");
        CrtSplit s = crt_split(R);
        REQUIRE(s.factors.size() == 1);
        CHECK(s.factors[0].get() == R.get());
    }
    SUBCASE("product specs split factor-wise") {
        auto R = Ring::make("Z4xF3");
        CrtSplit s = crt_split(R);
        REQUIRE(s.factors.size() == 2);
        CHECK(s.factors[0]->spec_string() == "Z4");
        CHECK(s.factors[1]->spec_string() == "F3");
    }
}

TEST_CASE("crt_split round-trips and preserves arithmetic") {
    for (const char* spec : {"Z12", "Z4xF3", "Z30", "Z4", "Z6xZ10"}) {
        auto R = Ring::make(spec);
        CrtSplit s = crt_split(R);
        int n = static_cast<int>(R->size());
        for (int a = 0; a < n; ++a) {
            CHECK(s.from_factors(s.to_factors(a)) == a);
            for (int b = 0; b < n; ++b) {
                auto fa = s.to_factors(a), fb = s.to_factors(b);
                std::vector<int> sum(fa.size()), prod(fa.size());
                for (std::size_t i = 0; i < fa.size(); ++i) {
                    sum[i] = s.factors[i]->add(fa[i], fb[i]);
                    prod[i] = s.factors[i]->mul(fa[i], fb[i]);
                }
                CHECK(s.from_factors(sum) == R->add(a, b));
                CHECK(s.from_factors(prod) == R->mul(a, b));
            }
        }
    }
}

TEST_CASE("construction caps and errors") {
    CHECK_THROWS_AS(Ring::make("Z5000"), CapExceeded);
    CHECK_THROWS_AS(Ring::make("Z4", 3), CapExceeded);
    auto R = Ring::make("Z4096");
    CHECK(R->size() == 4096);
    // a truncated extension of a product has no factorization route
    auto T = Ring::make("(Z4xF3)[t]/t^2");
    CHECK_FALSE(T->is_local());
    CHECK_THROWS_AS(crt_split(T), std::runtime_error);
}

TEST_CASE("tagged element arithmetic rejects mixed rings") {
    auto Z4 = Ring::make("Z4");
    auto F3 = Ring::make("F3");
    Elem a{Z4, 2}, b{Z4, 3}, c{F3, 1};
    CHECK((a + b).idx == 1);
    CHECK((a * b).idx == 2);
    CHECK((-a).idx == 2);
    CHECK(unit_inverse(b).idx == 3);
    CHECK_THROWS_AS(a + c, RingMismatch);
    CHECK_THROWS_AS(a * c, RingMismatch);
}
