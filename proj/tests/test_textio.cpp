#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cspcat/cospan_cats.hpp"
#include "cspcat/textio.hpp"

using namespace cspcat;

TEST_CASE("partition round trips and canonical ordering") {
    Partition p = Partition::from_blocks(5, {{2, 4}, {1, 5}, {3}});
    std::string s = print_partition(p);
    CHECK(s == "n=5 R={{1,5},{2,4},{3}}"); // blocks sorted by least element
    CHECK(parse_partition(s) == p);
    CHECK_THROWS_AS(parse_partition("n=2 R={{1}}"), input_error);
    CHECK_THROWS_AS(parse_partition("n=2 R={{1,2}} extra"), input_error);
}

TEST_CASE("cospan literals round trip") {
    std::string s = "csp a=1 b=2 n=3 R={{1,2},{3}} la=[1] lb=[1,2]";
    Cospan f = parse_cospan(s);
    CHECK(print_cospan(f) == s);
    CHECK(f.leg_a == std::vector<int>{0});
    CHECK(f.leg_b == std::vector<int>{0, 1});
    // whitespace around tokens is accepted on input; entries stay comma-separated
    CHECK(parse_cospan("csp  a=1 b=2 n=3 R={{1,2},{3}} la=[ 1 ] lb=[1, 2]") == f);
    CHECK_THROWS_AS(parse_cospan("csp a=1 b=2 n=3 R={{1,2},{3}} la=[1] lb=[1 2]"),
                    input_error);
    CHECK_THROWS_AS(parse_cospan("csp a=1 b=1 n=1 R={{1}} la=[2] lb=[1]"), input_error);
}

TEST_CASE("class literals round trip against cospan canonicalization") {
    std::mt19937_64 rng(5);
    for (int a = 0; a <= 2; ++a)
        for (int b = 0; b <= 2; ++b)
            for (const auto& cls : enumerate_hcsp_hom(a, b, 2)) {
                std::string s = print_class(cls);
                CHECK(parse_class(s) == cls);
                CHECK(parse_class(print_class(canonical_class(cospan_from_class(cls)))) == cls);
            }
    CHECK_THROWS_AS(parse_class("cls a=1 b=1 n=1 R={{1}} closed=0"), input_error);
    CHECK_THROWS_AS(parse_class("cls a=1 b=1 n=2 R={{1},{2}} closed=-1"), input_error);
}

TEST_CASE("simplicial dumps are deterministic") {
    SimplicialSet x = standard_simplex(1, 2).X;
    std::string once = print_simplicial(x);
    CHECK(once == print_simplicial(x));
    CHECK(once.find("cap=2") != std::string::npos);
    CHECK(once.find("truncated=no") != std::string::npos);
}

TEST_CASE("homology lines") {
    HomologyGroup h;
    h.betti = 2;
    h.torsion = {2, 6};
    std::string line = print_homology_line(1, h);
    CHECK(line.find("Z^2") != std::string::npos);
    CHECK(line.find("Z/2") != std::string::npos);
    CHECK(line.find("Z/6") != std::string::npos);
    HomologyGroup zero;
    CHECK(print_homology_line(0, zero).find("0") != std::string::npos);
}
