#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "cspcat/cospan_cats.hpp"
#include "cspcat/finset.hpp"

using namespace cspcat;

namespace {

// Independent oracle: naive fixed-point closure of the generating pairs.
Partition naive_closure(int n, const std::vector<std::pair<int, int>>& pairs) {
    std::vector<int> lab(n);
    for (int i = 0; i < n; ++i) lab[i] = i;
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto [i, j] : pairs) {
            int a = lab[i - 1], b = lab[j - 1];
            if (a == b) continue;
            int lo = std::min(a, b), hi = std::max(a, b);
            for (int k = 0; k < n; ++k)
                if (lab[k] == hi) lab[k] = lo;
            changed = true;
        }
    }
    return Partition::from_labels(lab);
}

} // namespace

TEST_CASE("discrete and full partitions") {
    Partition d = Partition::discrete(4);
    CHECK(d.size() == 4);
    CHECK(d.block_count() == 4);
    for (int i = 1; i <= 4; ++i) CHECK(d.class_of(i) == i - 1);

    Partition full = generate_equivalence(4, {{1, 2}, {2, 3}, {3, 4}});
    CHECK(full.block_count() == 1);
}

TEST_CASE("from_labels canonicalizes by first occurrence") {
    Partition p = Partition::from_labels({7, 3, 7, 9, 3});
    Partition q = Partition::from_labels({0, 1, 0, 2, 1});
    CHECK(p == q);
    CHECK(p.block_count() == 3);
    CHECK(p.blocks() == std::vector<std::vector<int>>{{1, 3}, {2, 5}, {4}});
}

TEST_CASE("from_blocks validates its input") {
    CHECK_NOTHROW(Partition::from_blocks(3, {{1, 3}, {2}}));
    CHECK_THROWS_AS(Partition::from_blocks(3, {{1}, {2}}), input_error);         // not covering
    CHECK_THROWS_AS(Partition::from_blocks(3, {{1, 2}, {2, 3}}), input_error);   // overlap
    CHECK_THROWS_AS(Partition::from_blocks(3, {{1, 2, 3}, {}}), input_error);    // empty block
    CHECK_THROWS_AS(Partition::from_blocks(3, {{1, 2}, {3, 4}}), input_error);   // out of range
}

TEST_CASE("generate_equivalence matches the naive closure oracle") {
    std::mt19937_64 rng(12345);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + static_cast<int>(rng() % 8);
        int m = static_cast<int>(rng() % 10);
        std::vector<std::pair<int, int>> pairs;
        for (int k = 0; k < m; ++k)
            pairs.push_back({1 + static_cast<int>(rng() % n), 1 + static_cast<int>(rng() % n)});
        CHECK(generate_equivalence(n, pairs) == naive_closure(n, pairs));
    }
    CHECK_THROWS_AS(generate_equivalence(3, {{0, 1}}), input_error);
}

TEST_CASE("all_partitions counts are the Bell numbers") {
    const int bell[] = {1, 1, 2, 5, 15, 52, 203};
    for (int n = 0; n <= 6; ++n) {
        auto ps = all_partitions(n);
        CHECK(static_cast<int>(ps.size()) == bell[n]);
        std::set<Partition> distinct(ps.begin(), ps.end());
        CHECK(distinct.size() == ps.size()); // all distinct in canonical form
    }
}
