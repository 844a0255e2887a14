#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "cspcat/error.hpp"
#include "cspcat/finset.hpp"

namespace cspcat {

/// A cospan ({1..a} -> W <- {1..b}) in the strict model: the carrier W is
/// the quotient of {1..n} by an equivalence relation, and the legs map
/// into its blocks (0-based canonical block indices).
struct Cospan {
    int a = 0;
    int b = 0;
    Partition carrier;
    std::vector<int> leg_a; // size a, values in 0..carrier.block_count()-1
    std::vector<int> leg_b; // size b

    void validate() const {
        if (static_cast<int>(leg_a.size()) != a || static_cast<int>(leg_b.size()) != b)
            throw input_error("cospan: leg size mismatch");
        for (int v : leg_a)
            if (v < 0 || v >= carrier.block_count())
                throw input_error("cospan: leg_a hits invalid block");
        for (int v : leg_b)
            if (v < 0 || v >= carrier.block_count())
                throw input_error("cospan: leg_b hits invalid block");
    }

    friend bool operator==(const Cospan& x, const Cospan& y) {
        return x.a == y.a && x.b == y.b && x.carrier == y.carrier &&
               x.leg_a == y.leg_a && x.leg_b == y.leg_b;
    }
    friend bool operator!=(const Cospan& x, const Cospan& y) { return !(x == y); }
    friend bool operator<(const Cospan& x, const Cospan& y) {
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        if (!(x.carrier == y.carrier)) return x.carrier < y.carrier;
        if (x.leg_a != y.leg_a) return x.leg_a < y.leg_a;
        return x.leg_b < y.leg_b;
    }
};

/// The identity-shaped cospan (A = A = A) on {1..a}.
inline Cospan identity_cospan(int a) {
    Cospan c;
    c.a = c.b = a;
    c.carrier = Partition::discrete(a);
    c.leg_a.resize(a);
    c.leg_b.resize(a);
    for (int i = 0; i < a; ++i) c.leg_a[i] = c.leg_b[i] = i;
    return c;
}

namespace detail {

/// Least element of each block (the chosen representatives).
inline std::vector<int> block_min(const Partition& p) {
    std::vector<int> rep(p.block_count(), -1);
    const auto& lab = p.labels();
    for (int i = static_cast<int>(lab.size()) - 1; i >= 0; --i) rep[lab[i]] = i + 1;
    return rep;
}

} // namespace detail

/// Strict composite g . f along the shared middle set (f.b == g.a).
/// The carrier is {1..n+m} quotiented by the relation generated by R on
/// {1..n}, S shifted by n, and j(x) ~ l(x)+n for every middle element x.
inline Cospan compose(const Cospan& g, const Cospan& f) {
    if (g.a != f.b) throw input_error("compose: middle set size mismatch");
    const int n = f.carrier.size();
    const int m = g.carrier.size();
    const auto frep = detail::block_min(f.carrier);
    const auto grep = detail::block_min(g.carrier);

    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(n + m + f.b);
    const auto& flab = f.carrier.labels();
    for (int i = 0; i < n; ++i)
        if (frep[flab[i]] != i + 1) pairs.emplace_back(frep[flab[i]], i + 1);
    const auto& glab = g.carrier.labels();
    for (int i = 0; i < m; ++i)
        if (grep[glab[i]] != i + 1) pairs.emplace_back(grep[glab[i]] + n, i + 1 + n);
    for (int x = 0; x < f.b; ++x)
        pairs.emplace_back(frep[f.leg_b[x]], grep[g.leg_a[x]] + n);

    Cospan out;
    out.a = f.a;
    out.b = g.b;
    out.carrier = generate_equivalence(n + m, pairs);
    out.leg_a.resize(f.a);
    for (int i = 0; i < f.a; ++i) out.leg_a[i] = out.carrier.class_of(frep[f.leg_a[i]]);
    out.leg_b.resize(g.b);
    for (int i = 0; i < g.b; ++i) out.leg_b[i] = out.carrier.class_of(grep[g.leg_b[i]] + n);
    return out;
}

/// Marks each carrier block hit by a leg.
inline std::vector<char> hit_blocks(const Cospan& c) {
    std::vector<char> hit(c.carrier.block_count(), 0);
    for (int v : c.leg_a) hit[v] = 1;
    for (int v : c.leg_b) hit[v] = 1;
    return hit;
}

/// |c(W)| = number of carrier blocks not in the image of the legs.
inline int closed_count(const Cospan& c) {
    auto hit = hit_blocks(c);
    return static_cast<int>(std::count(hit.begin(), hit.end(), 0));
}

inline bool reduced(const Cospan& c) { return closed_count(c) == 0; }

/// Drops all closed blocks and renumbers the surviving carrier elements
/// canonically (preserving element order).  Idempotent.
inline Cospan reduce(const Cospan& c) {
    auto hit = hit_blocks(c);
    const auto& lab = c.carrier.labels();
    std::vector<int> keep;   // old element (1-based) for each new element
    for (int i = 0; i < c.carrier.size(); ++i)
        if (hit[lab[i]]) keep.push_back(i + 1);
    std::vector<int> raw(keep.size());
    for (size_t i = 0; i < keep.size(); ++i) raw[i] = lab[keep[i] - 1];
    Cospan out;
    out.a = c.a;
    out.b = c.b;
    out.carrier = Partition::from_labels(std::move(raw));
    // old block -> new block, via any surviving element
    std::vector<int> remap(c.carrier.block_count(), -1);
    for (size_t i = 0; i < keep.size(); ++i) remap[lab[keep[i] - 1]] = out.carrier.class_of(static_cast<int>(i) + 1);
    out.leg_a.resize(c.a);
    for (int i = 0; i < c.a; ++i) out.leg_a[i] = remap[c.leg_a[i]];
    out.leg_b.resize(c.b);
    for (int i = 0; i < c.b; ++i) out.leg_b[i] = remap[c.leg_b[i]];
    return out;
}

/// (B -> W <- A): swaps the two legs.
inline Cospan opposite(const Cospan& c) {
    Cospan out = c;
    std::swap(out.a, out.b);
    std::swap(out.leg_a, out.leg_b);
    return out;
}

/// Complete isomorphism invariant: the induced partition of A ⊔ B (two
/// leg points identified iff they hit the same carrier block) plus the
/// number of closed blocks.
struct CanonicalClass {
    int a = 0;
    int b = 0;
    Partition legs; // partition of {1..a+b}; A is 1..a, B is a+1..a+b
    int closed = 0;

    friend bool operator==(const CanonicalClass& x, const CanonicalClass& y) {
        return x.a == y.a && x.b == y.b && x.legs == y.legs && x.closed == y.closed;
    }
    friend bool operator!=(const CanonicalClass& x, const CanonicalClass& y) { return !(x == y); }
    friend bool operator<(const CanonicalClass& x, const CanonicalClass& y) {
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        if (x.closed != y.closed) return x.closed < y.closed;
        return x.legs < y.legs;
    }
};

inline CanonicalClass canonical_class(const Cospan& c) {
    CanonicalClass cc;
    cc.a = c.a;
    cc.b = c.b;
    cc.closed = closed_count(c);
    std::vector<int> raw(c.a + c.b);
    for (int i = 0; i < c.a; ++i) raw[i] = c.leg_a[i];
    for (int i = 0; i < c.b; ++i) raw[c.a + i] = c.leg_b[i];
    cc.legs = Partition::from_labels(std::move(raw));
    return cc;
}

/// A witnessing bijection of carrier blocks with sigma . source legs = target legs.
struct CospanIso {
    Cospan source;
    Cospan target;
    std::vector<int> sigma; // block index bijection

    bool valid() const {
        if (source.a != target.a || source.b != target.b) return false;
        int k = source.carrier.block_count();
        if (k != target.carrier.block_count() || static_cast<int>(sigma.size()) != k) return false;
        std::vector<char> seen(k, 0);
        for (int v : sigma) {
            if (v < 0 || v >= k || seen[v]) return false;
            seen[v] = 1;
        }
        for (int i = 0; i < source.a; ++i)
            if (sigma[source.leg_a[i]] != target.leg_a[i]) return false;
        for (int i = 0; i < source.b; ++i)
            if (sigma[source.leg_b[i]] != target.leg_b[i]) return false;
        return true;
    }
};

/// Searches for an isomorphism f -> g.  The canonical class is used to
/// prune, but the witness is assembled explicitly: the legs force sigma on
/// the reduced part, closed blocks are matched in order, and the commuting
/// condition is re-validated before returning.
inline std::optional<CospanIso> find_isomorphism(const Cospan& f, const Cospan& g) {
    if (canonical_class(f) != canonical_class(g)) return std::nullopt;
    int k = f.carrier.block_count();
    if (k != g.carrier.block_count()) return std::nullopt;
    std::vector<int> sigma(k, -1);
    std::vector<char> used(k, 0);
    for (int i = 0; i < f.a; ++i) {
        int s = f.leg_a[i], t = g.leg_a[i];
        if (sigma[s] == -1 && !used[t]) { sigma[s] = t; used[t] = 1; }
        else if (sigma[s] != t) return std::nullopt;
    }
    for (int i = 0; i < f.b; ++i) {
        int s = f.leg_b[i], t = g.leg_b[i];
        if (sigma[s] == -1 && !used[t]) { sigma[s] = t; used[t] = 1; }
        else if (sigma[s] != t) return std::nullopt;
    }
    // closed blocks: any bijection works; take them in index order
    std::vector<int> free_tgt;
    for (int t = 0; t < k; ++t)
        if (!used[t]) free_tgt.push_back(t);
    size_t next = 0;
    for (int s = 0; s < k; ++s)
        if (sigma[s] == -1) sigma[s] = free_tgt[next++];
    CospanIso iso{f, g, std::move(sigma)};
    if (!iso.valid()) return std::nullopt;
    return iso;
}

/// Number of automorphisms, by brute force over all block bijections.
/// Equals closed_count(f)!: the legs pin every hit block, so only the
/// closed blocks can be permuted.
inline long long automorphism_order(const Cospan& f) {
    int k = f.carrier.block_count();
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    long long count = 0;
    do {
        bool ok = true;
        for (int i = 0; ok && i < f.a; ++i)
            if (perm[f.leg_a[i]] != f.leg_a[i]) ok = false;
        for (int i = 0; ok && i < f.b; ++i)
            if (perm[f.leg_b[i]] != f.leg_b[i]) ok = false;
        if (ok) ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

} // namespace cspcat
