#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cspcat/cospan_cats.hpp"
#include "cspcat/deciders.hpp"
#include "cspcat/fixtures.hpp"
#include "cspcat/simplicial.hpp"

using namespace cspcat;

namespace {

long long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

int nondegenerate_cells(const SimplicialSet& x, int d) {
    int count = 0;
    for (int c = 0; c < x.cells(d); ++c)
        if (!is_degenerate_cell(x, d, c)) ++count;
    return count;
}

} // namespace

TEST_CASE("standard simplex cell counts") {
    for (int n = 0; n <= 3; ++n) {
        MonotoneComplex dn = standard_simplex(n, 4);
        for (int d = 0; d <= 4; ++d) {
            // nondegenerate d-cells of Delta^n: strictly monotone maps
            CHECK(nondegenerate_cells(dn.X, d) == binom(n + 1, d + 1));
            // all d-cells: weakly monotone maps, C(n+d+1, d+1) of them
            CHECK(dn.X.cells(d) == binom(n + d + 1, d + 1));
        }
    }
}

TEST_CASE("boundary and horn cell counts") {
    MonotoneComplex b2 = boundary_complex(2, 3);
    CHECK(nondegenerate_cells(b2.X, 0) == 3);
    CHECK(nondegenerate_cells(b2.X, 1) == 3);
    CHECK(nondegenerate_cells(b2.X, 2) == 0);
    MonotoneComplex h21 = horn_complex(2, 1, 3);
    CHECK(nondegenerate_cells(h21.X, 1) == 2); // both faces through vertex 1
    CHECK_THROWS_AS(horn_complex(2, 3, 3), input_error);
}

TEST_CASE("face and vertex bookkeeping on Delta^3") {
    MonotoneComplex d3 = standard_simplex(3, 4);
    int top = d3.cell_of({0, 1, 2, 3});
    for (int i = 0; i <= 3; ++i) {
        std::vector<int> expected = {0, 1, 2, 3};
        expected.erase(expected.begin() + i);
        CHECK(d3.X.d(3, i, top) == d3.cell_of(expected));
        CHECK(vertex_of(d3.X, 3, top, i) == d3.cell_of({i}));
    }
    CHECK(front_face(d3.X, 3, top, 1) == d3.cell_of({0, 1}));
    CHECK(back_face(d3.X, 3, top, 2) == d3.cell_of({2, 3}));
    // apply_monotone along a degenerate map uses the degeneracies
    int deg = apply_monotone(d3.X, 3, top, {1, 1, 3});
    CHECK(d3.X.d(2, 0, deg) == apply_monotone(d3.X, 3, top, {1, 3}));
}

TEST_CASE("nerve of a group has group-size powers of cells") {
    Nerve nz2 = nerve(cyclic_group_category(2), 4);
    for (int d = 0; d <= 4; ++d) CHECK(nz2.X.cells(d) == 1 << d);
    CHECK(nz2.X.with_degen);
    CHECK(nz2.X.truncated_marker);
    CHECK_NOTHROW(nz2.X.validate());
}

TEST_CASE("nerve commutes with taking opposites") {
    FinCategory c = chain_poset(2);
    SimplicialSet a = opposite_simplicial(nerve(c, 3).X);
    SimplicialSet b = nerve(opposite_category(c), 3).X;
    // same counts and isomorphic face structure (cell orderings differ, so
    // compare via invariants per degree)
    for (int d = 0; d <= 3; ++d) {
        CHECK(a.cells(d) == b.cells(d));
        CHECK(nondegenerate_cells(a, d) == nondegenerate_cells(b, d));
    }
}

TEST_CASE("under objects of a nerve are nerves of under categories") {
    // In N(chain_poset(2)) the under object of the vertex 0 is the nerve of
    // 0/C, which is the full chain 0 <= 1 <= 2 again: 3 vertices, 9 edges
    // (weakly monotone pairs), and so on.
    Nerve n2 = nerve(chain_poset(2), 4);
    Under u = under_category(n2.X, 0, n2.vertex_of_object(0));
    CHECK(u.U.cells(0) == 3);
    Nerve slice = nerve(chain_poset(2), 3);
    for (int l = 0; l <= 2; ++l) CHECK(u.U.cells(l) == slice.X.cells(l));
    CHECK_NOTHROW(u.U.validate());
}

TEST_CASE("restriction of a nerve map recovers the genuine fibers") {
    FunctorData q = cyclic_quotient_functor(4, 2);
    SimplicialMap nm = nerve_map(q, 3);
    Nerve base = nerve(q.codomain, 3);
    Restriction r = restrict(nm, 0, base.vertex_of_object(0));
    // fiber over the object: kernel Z/2 -> one vertex, two 1-cells, ...
    CHECK(r.total.cells(0) == 1);
    CHECK(r.total.cells(1) == 2);
    CHECK(r.total.cells(2) == 4);
    CHECK_NOTHROW(r.proj.validate());
    CHECK_NOTHROW(r.incl.validate());
}

TEST_CASE("fiber products and simplex maps validate") {
    Nerve n = nerve(cyclic_group_category(2), 3);
    SimplicialMap id = identity_map(n.X);
    FiberProduct fp = fiber_product(id, id);
    for (int d = 0; d <= 3; ++d) CHECK(fp.P.cells(d) == n.X.cells(d));
    SimplicialMap sm = simplex_map(n.X, 1, 1);
    CHECK(sm.dom.cells(0) == 2);
    CHECK_NOTHROW(sm.validate());
}

TEST_CASE("equivalence edges of a nerve are the isomorphisms") {
    Nerve nz2 = nerve(cyclic_group_category(2), 4);
    CHECK(sS_is_equivalence_edge(nz2.X, nz2.edge_of_morphism(0)));
    CHECK(sS_is_equivalence_edge(nz2.X, nz2.edge_of_morphism(1)));
    Nerve arrow = nerve(chain_poset(1), 4);
    int f = -1;
    for (int m = 0; m < arrow.C.num_morphisms(); ++m)
        if (arrow.C.morphisms[m].src != arrow.C.morphisms[m].tgt) f = m;
    REQUIRE(f >= 0);
    CHECK_FALSE(sS_is_equivalence_edge(arrow.X, arrow.edge_of_morphism(f)));
}

TEST_CASE("trivial Kan and horn-lifting agree on nerve identities") {
    FunctorData q = cyclic_quotient_functor(4, 2);
    SimplicialMap nm = nerve_map(q, 3);
    Nerve nd = nerve(q.domain, 3);
    for (int m = 0; m < q.domain.num_morphisms(); ++m) {
        int e = nd.edge_of_morphism(m);
        CHECK(is_cocartesian_edge_lifting(nm, e, 3, false) ==
              is_cocartesian_edge_trivialkan(nm, e, 3));
        CHECK(is_cartesian_edge_lifting(nm, e, 3, false) ==
              is_cartesian_edge_trivialkan(nm, e, 3));
    }
}
