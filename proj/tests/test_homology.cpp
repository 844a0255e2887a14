#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cspcat/fixtures.hpp"
#include "cspcat/homology.hpp"
#include "cspcat/simplicial.hpp"
#include "cspcat/textio.hpp"

using namespace cspcat;

namespace {

bool is_free_of_rank(const HomologyGroup& h, long long r) {
    return h.betti == r && h.torsion.empty();
}

bool is_torsion(const HomologyGroup& h, const std::vector<int>& factors) {
    if (h.betti != 0 || h.torsion.size() != factors.size()) return false;
    for (size_t i = 0; i < factors.size(); ++i)
        if (h.torsion[i] != factors[i]) return false;
    return true;
}

} // namespace

TEST_CASE("smith invariants of a hand-checked matrix") {
    std::vector<std::vector<bigint>> m = {{2, 4}, {6, 8}};
    auto inv = smith_invariants(m);
    REQUIRE(inv.size() == 2);
    CHECK(inv[0] == 2);
    CHECK(inv[1] == 4);
    CHECK(smith_invariants({{0, 0}, {0, 0}}).empty());
    CHECK(smith_invariants({{1}}) == std::vector<bigint>{1});
}

TEST_CASE("simplices are contractible") {
    for (int n = 0; n <= 3; ++n) {
        SimplicialSet x = standard_simplex(n, 4).X;
        CHECK(path_components(x) == 1);
        CHECK(is_contractible_through(x, 3));
        auto h = homology(chain_complex(x), 3);
        CHECK(is_free_of_rank(h[0], 1));
        for (int d = 1; d <= 3; ++d) CHECK(h[d].trivial());
    }
    CHECK_THROWS_AS(is_contractible_through(standard_simplex(1, 2).X, 5), cap_error);
}

TEST_CASE("boundary of the 2-simplex is a circle") {
    auto h = homology(chain_complex(boundary_complex(2, 3).X), 2);
    CHECK(is_free_of_rank(h[0], 1));
    CHECK(is_free_of_rank(h[1], 1));
    CHECK(h[2].trivial());
}

TEST_CASE("boundary of the 3-simplex is a 2-sphere") {
    auto h = homology(chain_complex(boundary_complex(3, 3).X), 2);
    CHECK(is_free_of_rank(h[0], 1));
    CHECK(h[1].trivial());
    CHECK(is_free_of_rank(h[2], 1));
}

TEST_CASE("nerve of Z/2 computes group homology") {
    SimplicialSet x = nerve(cyclic_group_category(2), 4).X;
    auto h = homology(chain_complex(x), 3);
    CHECK(is_free_of_rank(h[0], 1));
    CHECK(is_torsion(h[1], {2}));
    CHECK(h[2].trivial());
    CHECK(is_torsion(h[3], {2}));
    CHECK(print_homology_line(1, h[1]).find("Z/2") != std::string::npos);
}

TEST_CASE("normalized and all-cells chain complexes agree on homology") {
    for (const SimplicialSet& x :
         {nerve(cyclic_group_category(2), 3).X, standard_simplex(2, 3).X,
          boundary_complex(2, 3).X}) {
        auto hn = homology(chain_complex(x), 2);
        auto ha = homology(chain_complex_all_cells(x), 2);
        for (int d = 0; d <= 2; ++d) {
            CHECK(hn[d].betti == ha[d].betti);
            CHECK(hn[d].torsion == ha[d].torsion);
        }
    }
}

TEST_CASE("euler characteristic via nondegenerate cells matches betti numbers") {
    // chi = sum (-1)^d #nondegenerate d-cells = sum (-1)^d rank H_d for
    // complexes concentrated below the cap
    SimplicialSet x = boundary_complex(3, 3).X;
    ChainComplex cc = chain_complex(x);
    long long chi_cells = 0;
    for (int d = 0; d <= cc.top(); ++d)
        chi_cells += (d % 2 ? -1 : 1) * cc.dims[d];
    auto h = homology(cc, cc.top());
    long long chi_h = 0;
    for (int d = 0; d <= cc.top(); ++d)
        chi_h += (d % 2 ? -1 : 1) * static_cast<long long>(h[d].betti);
    CHECK(chi_cells == chi_h);
    CHECK(chi_cells == 2); // sphere
}

TEST_CASE("path components counts disjoint pieces") {
    // two disjoint points: boundary of the 1-simplex
    CHECK(path_components(boundary_complex(1, 2).X) == 2);
    CHECK(path_components(standard_simplex(0, 2).X) == 1);
}

TEST_CASE("identity maps induce homology isomorphisms, collapses do not") {
    SimplicialSet circle = boundary_complex(2, 4).X;
    CHECK(induces_homology_iso_through(identity_map(circle), 2));
    // collapse the circle to a vertex: H_1 dies
    SimplicialMap collapse;
    collapse.dom = circle;
    collapse.cod = standard_simplex(0, 4).X;
    collapse.level.resize(5);
    for (int d = 0; d <= 4; ++d)
        collapse.level[d].assign(circle.counts[d], 0);
    collapse.validate();
    CHECK_FALSE(induces_homology_iso_through(collapse, 2));
}
