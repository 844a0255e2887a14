#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "cspcat/cospan_cats.hpp"
#include "cspcat/fincat.hpp"
#include "cspcat/textio.hpp"

using namespace cspcat;

TEST_CASE("hom class enumeration: Bell(a+b) classes per closed count") {
    const int bell[] = {1, 1, 2, 5, 15, 52};
    for (int a = 0; a <= 2; ++a)
        for (int b = 0; b <= 2; ++b)
            for (int k = 0; k <= 2; ++k) {
                auto classes = enumerate_hcsp_hom(a, b, k);
                CHECK(static_cast<int>(classes.size()) == bell[a + b] * (k + 1));
                std::set<CanonicalClass> distinct(classes.begin(), classes.end());
                CHECK(distinct.size() == classes.size());
                for (const auto& c : classes) {
                    CHECK(canonical_class(cospan_from_class(c)) == c);
                    CHECK(c.closed <= k);
                }
            }
}

TEST_CASE("class composition matches cospan composition") {
    std::mt19937_64 rng(41);
    auto classes01 = enumerate_hcsp_hom(1, 2, 2);
    auto classes12 = enumerate_hcsp_hom(2, 1, 2);
    for (const auto& cf : classes01)
        for (const auto& cg : classes12) {
            Cospan f = cospan_from_class(cf), g = cospan_from_class(cg);
            CHECK(compose_class(cg, cf) == canonical_class(compose(g, f)));
        }
}

TEST_CASE("functor R kills exactly the closed part") {
    Cospan f = parse_cospan("csp a=1 b=1 n=3 R={{1},{2},{3}} la=[1] lb=[2]");
    CHECK(closed_count(f) == 1);
    RedMorphism r = functor_R(f);
    CHECK(class_over(r, 0) == canonical_class(reduce(f)));
    CHECK(class_over(r, closed_count(f)) == canonical_class(f));
}

TEST_CASE("fiber of R over a reduced morphism") {
    Cospan f = parse_cospan("csp a=1 b=1 n=1 R={{1}} la=[1] lb=[1]");
    auto fib = fiber_R(functor_R(f), 3);
    CHECK(fib.size() == 4); // one class per closed count 0..3
    for (int k = 0; k <= 3; ++k) {
        CHECK(fib[k].closed == k);
        CHECK(fib[k].legs == canonical_class(f).legs);
    }
}

TEST_CASE("locally Cartesian over R iff reduced") {
    for (int a = 0; a <= 2; ++a)
        for (int b = 0; b <= 2; ++b)
            for (const auto& cls : enumerate_hcsp_hom(a, b, 2)) {
                Cospan f = cospan_from_class(cls);
                for (int bound = 1; bound <= 3; ++bound)
                    CHECK(is_locally_R_cartesian(f, bound) == reduced(f));
            }
    CHECK_THROWS_AS(is_locally_R_cartesian(identity_cospan(1), 0), input_error);
}

TEST_CASE("reduced categories on 0..m validate and have the right homs") {
    for (int m = 1; m <= 3; ++m) {
        RedCategory rc = build_red_category(m);   // validate = true throws on failure
        RedCategory ri = build_red_inj_category(m);
        CHECK(rc.cat.num_objects() == m + 1);
        CHECK(ri.cat.num_objects() == m + 1);
        CHECK(ri.cat.num_morphisms() <= rc.cat.num_morphisms());
    }
    // hom(a, b) in the full reduced category is the set of partitions of a+b
    RedCategory rc2 = build_red_category(2);
    int hom22 = 0;
    for (const auto& mor : rc2.cat.morphisms)
        if (rc2.cat.objects[mor.src] == "2" && rc2.cat.objects[mor.tgt] == "2") ++hom22;
    CHECK(hom22 == 15); // Bell(4)
}

TEST_CASE("the injective category has 0 as terminal object") {
    for (int m = 1; m <= 3; ++m) {
        RedCategory ri = build_red_inj_category(m);
        auto t = has_terminal(ri.cat);
        REQUIRE(t.has_value());
        CHECK(ri.cat.objects[*t] == "0");
        // hom(2, 0) already has two classes in the full reduced category,
        // so it loses the terminal object as soon as the object 2 exists
        if (m >= 2) CHECK_FALSE(has_terminal(build_red_category(m).cat).has_value());
    }
}
