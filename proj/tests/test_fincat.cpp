#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cspcat/fincat.hpp"
#include "cspcat/fixtures.hpp"
#include "cspcat/textio.hpp"

using namespace cspcat;

namespace {

const char* kWalkingArrow =
    "objects: x y\n"
    "ix: x -> x\n"
    "iy: y -> y\n"
    "f: x -> y\n"
    "ix = ix * ix\n"
    "iy = iy * iy\n"
    "f = f * ix\n"
    "f = iy * f\n"
    "id(x) = ix\n"
    "id(y) = iy\n";

} // namespace

TEST_CASE("parsing the walking arrow") {
    FinCategory c = parse_fincat(kWalkingArrow);
    CHECK(c.num_objects() == 2);
    CHECK(c.num_morphisms() == 3);
    CHECK(c.unital());
    int f = -1;
    for (int m = 0; m < c.num_morphisms(); ++m)
        if (c.morphisms[m].name == "f") f = m;
    REQUIRE(f >= 0);
    CHECK(c.objects[c.morphisms[f].src] == "x");
    CHECK(c.objects[c.morphisms[f].tgt] == "y");
    // print/parse round trip preserves all structure
    FinCategory c2 = parse_fincat(print_fincat(c));
    CHECK(c2.num_morphisms() == c.num_morphisms());
    CHECK(print_fincat(c2) == print_fincat(c));
}

TEST_CASE("parse errors carry line numbers") {
    auto message_of = [](const std::string& text) {
        try {
            parse_fincat(text);
        } catch (const input_error& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    CHECK(message_of("f: x -> y\n") == "line 1: expected 'objects:' first");
    CHECK(message_of("objects: x\nf: x -> z\n") == "line 2: unknown object 'z'");
    CHECK(message_of("objects: x\n# comment\nnonsense here\n") == "line 3: unrecognized line");
    // validation failures (missing composites) also surface as input errors
    CHECK_THROWS_AS(parse_fincat("objects: x\nf: x -> x\ng: x -> x\n"), input_error);
}

TEST_CASE("opposite category transposes the table and is an involution") {
    FinCategory c = parse_fincat(kWalkingArrow);
    FinCategory op = opposite_category(c);
    op.validate();
    CHECK(print_fincat(opposite_category(op)) == print_fincat(c));
    int f = 2;
    CHECK(c.objects[op.morphisms[f].src] == "y");
}

TEST_CASE("functor map files round trip") {
    FinCategory dom = parse_fincat(kWalkingArrow);
    FinCategory cod = terminal_category();
    FunctorData p = functor_to_terminal(dom);
    FunctorData q = parse_functor_map(dom, cod, print_functor_map(p));
    CHECK(q.object_map == p.object_map);
    CHECK(q.morphism_map == p.morphism_map);
}

TEST_CASE("functor map files are checked for completeness and functoriality") {
    FinCategory dom = parse_fincat(kWalkingArrow);
    FinCategory cod = terminal_category();
    std::string good = print_functor_map(functor_to_terminal(dom));
    CHECK_THROWS_AS(parse_functor_map(dom, cod, "obj x -> 0\n"), input_error); // incomplete
    CHECK_THROWS_AS(parse_functor_map(dom, cod, good + "obj z -> 0\n"), input_error);
    // a non-functorial assignment into the walking arrow is rejected
    FunctorData id = identity_functor(dom);
    std::string text = print_functor_map(id);
    // redirect f to the identity on x: breaks endpoint preservation
    text.replace(text.find("mor f -> f"), 10, "mor f -> ix");
    CHECK_THROWS_AS(parse_functor_map(dom, dom, text), input_error);
}

TEST_CASE("fixture categories validate") {
    for (int n = 0; n <= 3; ++n) CHECK_NOTHROW(chain_poset(n).validate());
    for (int n = 1; n <= 4; ++n) CHECK_NOTHROW(cyclic_group_category(n).validate());
    FinCategory pr = product_category(chain_poset(1), cyclic_group_category(2));
    CHECK(pr.num_objects() == 2);
    CHECK_NOTHROW(pr.validate());
    for (const auto& [name, p] : functor_corpus()) {
        CAPTURE(name);
        CHECK_NOTHROW(p.validate());
    }
}

TEST_CASE("genuine fibers of the cyclic quotient") {
    // Z/4 -> Z/2: the fiber over the unique object is the kernel Z/2
    FunctorData p = cyclic_quotient_functor(4, 2);
    GenuineFiber fib = genuine_fiber(p, 0);
    CHECK(fib.cat.num_objects() == 1);
    CHECK(fib.cat.num_morphisms() == 2);
    CHECK_NOTHROW(fib.cat.validate());
}

TEST_CASE("locally Cartesian fibration deciders on known functors") {
    // the identity is a locally (co)Cartesian fibration
    FunctorData id = identity_functor(cyclic_group_category(2));
    CHECK(is_locally_cartesian_fibration(id));
    CHECK(is_locally_cartesian_fibration(opposite_functor(id)));
    // a group quotient is a fibration in both senses
    FunctorData q = cyclic_quotient_functor(4, 2);
    CHECK(is_locally_cartesian_fibration(q));
    CHECK(is_locally_cartesian_fibration(opposite_functor(q)));
    // the designated witness is not a fibration
    FunctorData w = non_fibration_witness();
    CHECK_FALSE(is_locally_cartesian_fibration(w));
}
