#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cspcat/cospan.hpp"
#include "cspcat/textio.hpp"

using namespace cspcat;

namespace {

Cospan random_cospan(std::mt19937_64& rng, int a, int b, int max_carrier) {
    int n = 1 + static_cast<int>(rng() % max_carrier);
    std::vector<int> raw(n);
    for (int i = 0; i < n; ++i) raw[i] = static_cast<int>(rng() % n);
    Cospan c;
    c.a = a;
    c.b = b;
    c.carrier = Partition::from_labels(raw);
    int k = c.carrier.block_count();
    for (int i = 0; i < a; ++i) c.leg_a.push_back(static_cast<int>(rng() % k));
    for (int i = 0; i < b; ++i) c.leg_b.push_back(static_cast<int>(rng() % k));
    c.validate();
    return c;
}

// Independent oracle: try every block bijection.
bool iso_by_brute_force(const Cospan& f, const Cospan& g) {
    if (f.a != g.a || f.b != g.b) return false;
    int k = f.carrier.block_count();
    if (k != g.carrier.block_count()) return false;
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        CospanIso iso{f, g, perm};
        if (iso.valid()) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

} // namespace

TEST_CASE("identity cospans are units up to canonical isomorphism") {
    // Composition concatenates carriers before quotienting, so the unit
    // laws hold at the level of canonical classes (witnessed by an explicit
    // isomorphism), not as equalities of labelled carriers.
    std::mt19937_64 rng(7);
    for (int t = 0; t < 100; ++t) {
        Cospan f = random_cospan(rng, static_cast<int>(rng() % 3), static_cast<int>(rng() % 3), 5);
        Cospan fl = compose(f, identity_cospan(f.a));
        Cospan fr = compose(identity_cospan(f.b), f);
        CHECK(canonical_class(fl) == canonical_class(f));
        CHECK(canonical_class(fr) == canonical_class(f));
        CHECK(find_isomorphism(fl, f).has_value());
        CHECK(find_isomorphism(fr, f).has_value());
    }
}

TEST_CASE("composition over a worked example") {
    // (1 -> {*,*} <- 2) then (2 -> {*} <- 1): pushout glues everything the
    // middle object reaches.
    Cospan f = parse_cospan("csp a=1 b=2 n=2 R={{1},{2}} la=[1] lb=[1,2]");
    Cospan g = parse_cospan("csp a=2 b=1 n=1 R={{1}} la=[1,1] lb=[1]");
    Cospan gf = compose(g, f);
    CHECK(print_cospan(gf) == "csp a=1 b=1 n=3 R={{1,2,3}} la=[1] lb=[1]");
}

TEST_CASE("composition can create closed blocks") {
    // (0 -> {*} <- 1) then (1 -> {*} <- 0): the middle point is capped off.
    Cospan f = parse_cospan("csp a=0 b=1 n=1 R={{1}} la=[] lb=[1]");
    Cospan g = parse_cospan("csp a=1 b=0 n=1 R={{1}} la=[1] lb=[]");
    Cospan gf = compose(g, f);
    CHECK(gf.a == 0);
    CHECK(gf.b == 0);
    CHECK(closed_count(gf) == 1);
    CHECK_FALSE(reduced(gf));
    CHECK(reduce(gf).carrier.size() == 0);
}

TEST_CASE("associativity on random triples") {
    std::mt19937_64 rng(99);
    for (int t = 0; t < 500; ++t) {
        int a = static_cast<int>(rng() % 3), b = static_cast<int>(rng() % 3);
        int c = static_cast<int>(rng() % 3), d = static_cast<int>(rng() % 3);
        Cospan f = random_cospan(rng, a, b, 5);
        Cospan g = random_cospan(rng, b, c, 5);
        Cospan h = random_cospan(rng, c, d, 5);
        CHECK(compose(h, compose(g, f)) == compose(compose(h, g), f));
    }
}

TEST_CASE("reduce is idempotent and preserves the open part") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 200; ++t) {
        Cospan f = random_cospan(rng, static_cast<int>(rng() % 3), static_cast<int>(rng() % 3), 6);
        Cospan r = reduce(f);
        CHECK(reduced(r));
        CHECK(reduce(r) == r);
        CanonicalClass cf = canonical_class(f), cr = canonical_class(r);
        CHECK(cf.legs == cr.legs);
        CHECK(cr.closed == 0);
    }
}

TEST_CASE("opposite is an involution and swaps the legs") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 100; ++t) {
        Cospan f = random_cospan(rng, static_cast<int>(rng() % 3), static_cast<int>(rng() % 3), 6);
        CHECK(opposite(opposite(f)) == f);
        CHECK(closed_count(opposite(f)) == closed_count(f));
    }
}

TEST_CASE("find_isomorphism agrees with the brute-force oracle") {
    std::mt19937_64 rng(23);
    int found = 0;
    for (int t = 0; t < 400; ++t) {
        int a = static_cast<int>(rng() % 3), b = static_cast<int>(rng() % 3);
        Cospan f = random_cospan(rng, a, b, 4);
        Cospan g = random_cospan(rng, a, b, 4);
        auto iso = find_isomorphism(f, g);
        CHECK(iso.has_value() == iso_by_brute_force(f, g));
        if (iso) {
            CHECK(iso->valid());
            ++found;
        }
    }
    CHECK(found > 0); // the sample includes genuine isomorphisms
}

TEST_CASE("canonical_class is a complete isomorphism invariant") {
    std::mt19937_64 rng(29);
    for (int t = 0; t < 300; ++t) {
        int a = static_cast<int>(rng() % 3), b = static_cast<int>(rng() % 3);
        Cospan f = random_cospan(rng, a, b, 4);
        Cospan g = random_cospan(rng, a, b, 4);
        CHECK((canonical_class(f) == canonical_class(g)) ==
              find_isomorphism(f, g).has_value());
    }
}

TEST_CASE("automorphism order is the factorial of the closed count") {
    std::mt19937_64 rng(31);
    auto factorial = [](int n) { long long r = 1; for (int i = 2; i <= n; ++i) r *= i; return r; };
    for (int t = 0; t < 200; ++t) {
        Cospan f = random_cospan(rng, static_cast<int>(rng() % 3), static_cast<int>(rng() % 3), 5);
        CHECK(automorphism_order(f) == factorial(closed_count(f)));
    }
}
