#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cspcat/cospan.hpp"
#include "cspcat/error.hpp"
#include "cspcat/fincat.hpp"
#include "cspcat/finset.hpp"

namespace cspcat {

/// A morphism of the reduced cospan category: the complete datum of a
/// reduced cospan up to isomorphism is the induced partition of A ⊔ B.
struct RedMorphism {
    int a = 0;
    int b = 0;
    Partition partition; // of {1..a+b}; A is 1..a, B is a+1..a+b

    friend bool operator==(const RedMorphism& x, const RedMorphism& y) {
        return x.a == y.a && x.b == y.b && x.partition == y.partition;
    }
    friend bool operator!=(const RedMorphism& x, const RedMorphism& y) { return !(x == y); }
    friend bool operator<(const RedMorphism& x, const RedMorphism& y) {
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        return x.partition < y.partition;
    }
};

inline RedMorphism red_identity(int a) {
    std::vector<int> raw(2 * a);
    for (int i = 0; i < a; ++i) raw[i] = raw[a + i] = i;
    return {a, a, Partition::from_labels(std::move(raw))};
}

/// Both legs injective: no partition block meets A (or B) twice.
inline bool injective_legs(const RedMorphism& m) {
    std::vector<int> cnt_a(m.partition.block_count(), 0), cnt_b(m.partition.block_count(), 0);
    for (int i = 1; i <= m.a; ++i)
        if (++cnt_a[m.partition.class_of(i)] > 1) return false;
    for (int i = 1; i <= m.b; ++i)
        if (++cnt_b[m.partition.class_of(m.a + i)] > 1) return false;
    return true;
}

namespace detail {

/// Pairs that regenerate a partition placed at a given offset inside a
/// larger carrier.
inline void partition_pairs(const Partition& p, int offset,
                            std::vector<std::pair<int, int>>& out) {
    std::vector<int> first(p.block_count(), -1);
    for (int i = 1; i <= p.size(); ++i) {
        int c = p.class_of(i);
        if (first[c] < 0) first[c] = i;
        else out.emplace_back(first[c] + offset, i + offset);
    }
}

/// The pushout relation on A ⊔ B ⊔ C of two leg partitions glued along B.
inline Partition glue_along_middle(const RedMorphism& g, const RedMorphism& f) {
    if (f.b != g.a) throw input_error("compose_red: middle set size mismatch");
    const int a = f.a, b = f.b, c = g.b;
    std::vector<std::pair<int, int>> pairs;
    partition_pairs(f.partition, 0, pairs);       // on A ⊔ B = 1..a+b
    partition_pairs(g.partition, a, pairs);       // on B ⊔ C = a+1..a+b+c
    return generate_equivalence(a + b + c, pairs);
}

} // namespace detail

/// Composite in the reduced category: glue along B, keep only what A and C
/// see.  Two points of A ⊔ C are identified iff connected through B-chains.
inline RedMorphism compose_red(const RedMorphism& g, const RedMorphism& f) {
    Partition q = detail::glue_along_middle(g, f);
    const int a = f.a, b = f.b, c = g.b;
    std::vector<int> raw(a + c);
    for (int i = 0; i < a; ++i) raw[i] = q.class_of(i + 1);
    for (int i = 0; i < c; ++i) raw[a + i] = q.class_of(a + b + i + 1);
    return {a, c, Partition::from_labels(std::move(raw))};
}

/// R: hCsp -> Csp^red on morphism classes.
inline RedMorphism functor_R(const Cospan& f) {
    auto cc = canonical_class(f);
    return {cc.a, cc.b, cc.legs};
}

inline RedMorphism red_of_class(const CanonicalClass& cc) { return {cc.a, cc.b, cc.legs}; }

inline CanonicalClass class_over(const RedMorphism& m, int closed) {
    return {m.a, m.b, m.partition, closed};
}

/// hCsp-level composition directly on canonical classes.  The reduced
/// part is the reduced composite; the closed count adds the two closed
/// counts plus every block of the glued relation that only meets B.
inline CanonicalClass compose_class(const CanonicalClass& g, const CanonicalClass& f) {
    RedMorphism rf = red_of_class(f), rg = red_of_class(g);
    Partition q = detail::glue_along_middle(rg, rf);
    const int a = f.a, b = f.b;
    std::vector<char> meets_outer(q.block_count(), 0);
    for (int i = 1; i <= a; ++i) meets_outer[q.class_of(i)] = 1;
    for (int i = a + b + 1; i <= q.size(); ++i) meets_outer[q.class_of(i)] = 1;
    int extra = 0;
    for (char m : meets_outer)
        if (!m) ++extra;
    RedMorphism comp = compose_red(rg, rf);
    return {comp.a, comp.b, comp.partition, f.closed + g.closed + extra};
}

/// A chosen strict representative: one carrier element per leg block plus
/// one per closed point, discrete carrier partition.
inline Cospan cospan_from_class(const CanonicalClass& cc) {
    Cospan c;
    c.a = cc.a;
    c.b = cc.b;
    c.carrier = Partition::discrete(cc.legs.block_count() + cc.closed);
    c.leg_a.resize(cc.a);
    for (int i = 0; i < cc.a; ++i) c.leg_a[i] = cc.legs.class_of(i + 1);
    c.leg_b.resize(cc.b);
    for (int i = 0; i < cc.b; ++i) c.leg_b[i] = cc.legs.class_of(cc.a + i + 1);
    return c;
}

/// All set partitions of {1..n} as restricted growth strings, in
/// lexicographic order of labellings.
inline std::vector<Partition> all_partitions(int n) {
    std::vector<Partition> out;
    std::vector<int> lab(n, 0);
    std::function<void(int, int)> rec = [&](int i, int maxl) {
        if (i == n) {
            out.push_back(Partition::from_labels(lab));
            return;
        }
        for (int v = 0; v <= maxl + 1; ++v) {
            lab[i] = v;
            rec(i + 1, std::max(maxl, v));
        }
    };
    if (n == 0) out.push_back(Partition::from_labels({}));
    else rec(0, -1);
    return out;
}

/// All hCsp isomorphism classes A -> B with closed count <= max_closed.
inline std::vector<CanonicalClass> enumerate_hcsp_hom(int a, int b, int max_closed) {
    std::vector<CanonicalClass> out;
    for (const auto& p : all_partitions(a + b))
        for (int k = 0; k <= max_closed; ++k)
            out.push_back({a, b, p, k});
    return out;
}

/// The fiber of R over g, truncated: exactly max_closed+1 classes, the
/// k-th with closed count k.
inline std::vector<CanonicalClass> fiber_R(const RedMorphism& g, int max_closed) {
    std::vector<CanonicalClass> out;
    for (int k = 0; k <= max_closed; ++k) out.push_back(class_over(g, k));
    return out;
}

/// Graded-truncation rendering of the discrete locally-Cartesian test for
/// R: post-composition with [f] must carry the fiber over the identity
/// (closed counts 0..bound) bijectively onto the classes over R(f) with
/// closed counts 0..bound.  True precisely for reduced cospans.
inline bool is_locally_R_cartesian(const Cospan& f, int bound) {
    if (bound < 1) throw input_error("is_locally_R_cartesian: bound must be >= 1");
    std::vector<CanonicalClass> image;
    for (int k = 0; k <= bound; ++k) {
        CanonicalClass idk = class_over(red_identity(f.a), k);
        image.push_back(canonical_class(compose(f, cospan_from_class(idk))));
    }
    std::vector<CanonicalClass> window = fiber_R(functor_R(f), bound);
    std::sort(image.begin(), image.end());
    if (std::adjacent_find(image.begin(), image.end()) != image.end()) return false;
    std::sort(window.begin(), window.end());
    return image == window;
}

/// The full subcategory of Csp^red (or Csp^red,inj) on the objects
/// 0..m, materialized with an explicit composition table.
struct RedCategory {
    FinCategory cat;
    std::vector<RedMorphism> mors;       // per morphism index
    std::map<RedMorphism, int> index;
};

inline RedCategory build_red_category_impl(int m, bool injective_only, bool validate) {
    RedCategory rc;
    for (int x = 0; x <= m; ++x) rc.cat.objects.push_back(std::to_string(x));
    for (int a = 0; a <= m; ++a)
        for (int b = 0; b <= m; ++b)
            for (const auto& p : all_partitions(a + b)) {
                RedMorphism mor{a, b, p};
                if (injective_only && !injective_legs(mor)) continue;
                rc.index[mor] = static_cast<int>(rc.mors.size());
                rc.cat.morphisms.push_back({a, b, ""});
                rc.mors.push_back(std::move(mor));
            }
    const int nm = static_cast<int>(rc.mors.size());
    for (int g = 0; g < nm; ++g)
        for (int f = 0; f < nm; ++f) {
            if (!rc.cat.composable(g, f)) continue;
            auto it = rc.index.find(compose_red(rc.mors[g], rc.mors[f]));
            if (it == rc.index.end())
                throw internal_error("red category not closed under composition");
            rc.cat.set_composite(g, f, it->second);
        }
    std::vector<int> ids;
    for (int x = 0; x <= m; ++x) ids.push_back(rc.index.at(red_identity(x)));
    rc.cat.identities = std::move(ids);
    if (validate) rc.cat.validate();
    return rc;
}

inline RedCategory build_red_category(int m, bool validate = true) {
    return build_red_category_impl(m, false, validate);
}

inline RedCategory build_red_inj_category(int m, bool validate = true) {
    return build_red_category_impl(m, true, validate);
}

} // namespace cspcat
