#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cspcat/cospan_cats.hpp"
#include "cspcat/error.hpp"
#include "cspcat/fincat.hpp"
#include "cspcat/simplicial.hpp"

namespace cspcat {

// ---------------------------------------------------------------------------
// Small explicit categories and functors
// ---------------------------------------------------------------------------

/// The poset 0 < 1 < ... < n as a category (one morphism per pair i <= j).
inline FinCategory chain_poset(int n) {
    FinCategory c;
    for (int i = 0; i <= n; ++i) c.objects.push_back(std::to_string(i));
    std::vector<std::vector<int>> mor(n + 1, std::vector<int>(n + 1, -1));
    for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j) {
            mor[i][j] = c.num_morphisms();
            c.morphisms.push_back({i, j, "m" + std::to_string(i) + "_" + std::to_string(j)});
        }
    for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j)
            for (int k = j; k <= n; ++k)
                c.set_composite(mor[j][k], mor[i][j], mor[i][k]);
    std::vector<int> ids;
    for (int i = 0; i <= n; ++i) ids.push_back(mor[i][i]);
    c.identities = std::move(ids);
    c.validate();
    return c;
}

inline FinCategory terminal_category() { return chain_poset(0); }

/// The cyclic group Z/n as a one-object category.
inline FinCategory cyclic_group_category(int n) {
    if (n < 1) throw input_error("cyclic_group_category: order must be positive");
    FinCategory c;
    c.objects.push_back("*");
    for (int i = 0; i < n; ++i) c.morphisms.push_back({0, 0, "g" + std::to_string(i)});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) c.set_composite(i, j, (i + j) % n);
    c.identities = std::vector<int>{0};
    c.validate();
    return c;
}

/// Product category with componentwise composition; object (o1,o2) has
/// index o1*|ob2|+o2, morphism (m1,m2) index m1*|mor2|+m2.
inline FinCategory product_category(const FinCategory& c1, const FinCategory& c2) {
    if (!c1.unital() || !c2.unital())
        throw input_error("product_category: factors must be unital");
    FinCategory c;
    const int no2 = c2.num_objects(), nm2 = c2.num_morphisms();
    for (int a = 0; a < c1.num_objects(); ++a)
        for (int b = 0; b < no2; ++b)
            c.objects.push_back("(" + c1.objects[a] + "," + c2.objects[b] + ")");
    for (int a = 0; a < c1.num_morphisms(); ++a)
        for (int b = 0; b < nm2; ++b)
            c.morphisms.push_back({c1.morphisms[a].src * no2 + c2.morphisms[b].src,
                                   c1.morphisms[a].tgt * no2 + c2.morphisms[b].tgt,
                                   "(" + c1.morphisms[a].name + "," + c2.morphisms[b].name + ")"});
    for (int g1 = 0; g1 < c1.num_morphisms(); ++g1)
        for (int g2 = 0; g2 < nm2; ++g2)
            for (int f1 = 0; f1 < c1.num_morphisms(); ++f1)
                for (int f2 = 0; f2 < nm2; ++f2) {
                    if (!c1.composable(g1, f1) || !c2.composable(g2, f2)) continue;
                    c.set_composite(g1 * nm2 + g2, f1 * nm2 + f2,
                                    c1.compose(g1, f1) * nm2 + c2.compose(g2, f2));
                }
    std::vector<int> ids;
    for (int a = 0; a < c1.num_objects(); ++a)
        for (int b = 0; b < no2; ++b)
            ids.push_back((*c1.identities)[a] * nm2 + (*c2.identities)[b]);
    c.identities = std::move(ids);
    c.validate();
    return c;
}

/// Functor between thin categories from an object map (morphism images
/// are forced since hom-sets are singletons).
inline FunctorData thin_functor(const FinCategory& dom, const FinCategory& cod,
                                const std::function<int(int)>& omap) {
    FunctorData p;
    p.domain = dom;
    p.codomain = cod;
    for (int x = 0; x < dom.num_objects(); ++x) p.object_map.push_back(omap(x));
    for (int m = 0; m < dom.num_morphisms(); ++m) {
        auto h = cod.hom(p.object_map[dom.morphisms[m].src], p.object_map[dom.morphisms[m].tgt]);
        if (h.size() != 1) throw input_error("thin_functor: codomain hom-set is not a singleton");
        p.morphism_map.push_back(h[0]);
    }
    p.validate();
    return p;
}

inline FunctorData functor_to_terminal(const FinCategory& dom) {
    FunctorData p;
    p.domain = dom;
    p.codomain = terminal_category();
    p.object_map.assign(dom.num_objects(), 0);
    p.morphism_map.assign(dom.num_morphisms(), 0);
    p.validate();
    return p;
}

/// Z/n -> Z/m reduction (requires m | n).
inline FunctorData cyclic_quotient_functor(int n, int m) {
    if (m < 1 || n % m != 0) throw input_error("cyclic_quotient_functor: m must divide n");
    FunctorData p;
    p.domain = cyclic_group_category(n);
    p.codomain = cyclic_group_category(m);
    p.object_map = {0};
    for (int i = 0; i < n; ++i) p.morphism_map.push_back(i % m);
    p.validate();
    return p;
}

/// Discrete two-point category over the interval: no lift for the
/// non-identity base morphism, hence not a locally (co)Cartesian fibration.
inline FunctorData non_fibration_witness() {
    FinCategory dom;
    dom.objects = {"x0", "x1"};
    dom.morphisms = {{0, 0, "i0"}, {1, 1, "i1"}};
    dom.set_composite(0, 0, 0);
    dom.set_composite(1, 1, 1);
    dom.identities = std::vector<int>{0, 1};
    dom.validate();
    FunctorData p;
    p.domain = dom;
    p.codomain = chain_poset(1);
    p.object_map = {0, 1};
    // chain_poset(1) morphism order: m0_0, m0_1, m1_1
    p.morphism_map = {0, 2};
    p.validate();
    return p;
}

/// Inclusion of the injective-legs subcategory into the full reduced
/// category on objects 0..m.
inline FunctorData red_inj_inclusion_functor(int m) {
    RedCategory inj = build_red_inj_category(m);
    RedCategory full = build_red_category(m);
    FunctorData p;
    p.domain = inj.cat;
    p.codomain = full.cat;
    for (int x = 0; x <= m; ++x) p.object_map.push_back(x);
    for (const auto& mor : inj.mors) p.morphism_map.push_back(full.index.at(mor));
    p.validate();
    return p;
}

/// The corpus of finite unital functors used by the cross-decider
/// agreement suites.
inline std::vector<std::pair<std::string, FunctorData>> functor_corpus() {
    std::vector<std::pair<std::string, FunctorData>> out;
    FinCategory p2 = chain_poset(2);
    FinCategory p1 = chain_poset(1);
    out.emplace_back("identity on poset [2]", identity_functor(p2));
    out.emplace_back("poset collapse [2] -> [1] (0,1 |-> 0)",
                     thin_functor(p2, p1, [](int x) { return x == 2 ? 1 : 0; }));
    out.emplace_back("poset inclusion [1] -> [2] (endpoints)",
                     thin_functor(p1, p2, [](int x) { return x == 0 ? 0 : 2; }));
    out.emplace_back("projection [1]x[1] -> [1]",
                     thin_functor(product_category(p1, p1), p1,
                                  [](int x) { return x / 2; }));
    out.emplace_back("Z/4 -> Z/2", cyclic_quotient_functor(4, 2));
    out.emplace_back("Z/2 -> 1", functor_to_terminal(cyclic_group_category(2)));
    out.emplace_back("identity on Z/2", identity_functor(cyclic_group_category(2)));
    {
        FunctorData p;
        p.domain = product_category(cyclic_group_category(2), cyclic_group_category(2));
        p.codomain = cyclic_group_category(2);
        p.object_map = {0};
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) p.morphism_map.push_back(a);
        p.validate();
        out.emplace_back("projection Z/2 x Z/2 -> Z/2", std::move(p));
    }
    out.emplace_back("reduced category on {0,1} -> 1",
                     functor_to_terminal(build_red_category(1).cat));
    out.emplace_back("injective reduced category on {0,1} -> 1",
                     functor_to_terminal(build_red_inj_category(1).cat));
    out.emplace_back("injective -> full reduced inclusion on {0,1}",
                     red_inj_inclusion_functor(1));
    out.emplace_back("two discrete points over the interval", non_fibration_witness());
    return out;
}

// ---------------------------------------------------------------------------
// Truncated morphism-class chain fixtures over Delta^n
//
// Total space: d-cells are pairs (beta: [d] -> [n] monotone, closed counts
// k_1..k_d) encoding a chain of morphism classes whose t-th reduced part
// is forced to be the composite of the chosen base edges from beta(t-1)
// to beta(t); the chain is kept iff the closed count of its total
// composite stays within the bound.  This family is closed under faces
// (closed counts only drop or stay) and degeneracies (identities are
// strict units), giving a genuine simplicial set over Delta^n whose
// reduced (k=0) edges are locally coCartesian but, in the presence of a
// closed-point-producing composite, not coCartesian.
// ---------------------------------------------------------------------------

struct TruncatedFixture {
    int n = 0;
    int bound = 0;
    std::vector<int> sizes;                       // object sizes A_0..A_n
    std::vector<std::vector<RedMorphism>> sigma;  // sigma[i][j], i <= j
    MonotoneComplex base;                         // Delta^n
    SimplicialSet X;
    SimplicialMap proj; // X -> base.X

    struct Cell {
        int beta;            // base cell index
        std::vector<int> ks; // closed counts of the chain entries
    };
    std::vector<std::vector<Cell>> cells;
    std::vector<std::map<std::pair<int, std::vector<int>>, int>> index;

    int cell_of(int beta, const std::vector<int>& ks, int deg) const {
        auto it = index[deg].find({beta, ks});
        if (it == index[deg].end()) throw internal_error("fixture: no such cell");
        return it->second;
    }

    /// The edge over base edge {i,j} with the given closed count.
    int edge_over(int i, int j, int k) const {
        return cell_of(base.cell_of({i, j}), {k}, 1);
    }

    int vertex_over(int i) const { return cell_of(base.cell_of({i}), {}, 0); }

    CanonicalClass total_class(const std::vector<int>& beta_vals,
                               const std::vector<int>& ks) const {
        CanonicalClass tot = class_over(red_identity(sizes[beta_vals[0]]), 0);
        for (size_t t = 0; t < ks.size(); ++t)
            tot = compose_class(class_over(sigma[beta_vals[t]][beta_vals[t + 1]], ks[t]), tot);
        return tot;
    }
};

inline TruncatedFixture truncated_hcsp_fixture(const std::vector<int>& sizes,
                                               const std::vector<RedMorphism>& edges,
                                               int bound, int cap) {
    TruncatedFixture fx;
    fx.n = static_cast<int>(sizes.size()) - 1;
    fx.bound = bound;
    fx.sizes = sizes;
    if (static_cast<int>(edges.size()) != fx.n)
        throw input_error("fixture: need one base edge per base step");
    for (int i = 0; i < fx.n; ++i)
        if (edges[i].a != sizes[i] || edges[i].b != sizes[i + 1])
            throw input_error("fixture: base edge endpoints mismatch");
    fx.sigma.assign(fx.n + 1, std::vector<RedMorphism>(fx.n + 1));
    for (int i = 0; i <= fx.n; ++i) {
        fx.sigma[i][i] = red_identity(sizes[i]);
        for (int j = i + 1; j <= fx.n; ++j)
            fx.sigma[i][j] = compose_red(edges[j - 1], fx.sigma[i][j - 1]);
    }
    fx.base = standard_simplex(fx.n, cap);
    fx.X.init(cap, true);
    fx.X.truncated_marker = true;
    fx.cells.resize(cap + 1);
    fx.index.resize(cap + 1);
    for (int d = 0; d <= cap; ++d) {
        for (int bc = 0; bc < fx.base.X.counts[d]; ++bc) {
            const std::vector<int>& bv = fx.base.cells[d][bc];
            std::vector<int> ks(d, 0);
            std::function<void(int, const CanonicalClass&)> rec =
                [&](int t, const CanonicalClass& tot) {
                    if (t == d) {
                        fx.index[d][{bc, ks}] = static_cast<int>(fx.cells[d].size());
                        fx.cells[d].push_back({bc, ks});
                        return;
                    }
                    for (int k = 0;; ++k) {
                        ks[t] = k;
                        CanonicalClass next =
                            compose_class(class_over(fx.sigma[bv[t]][bv[t + 1]], k), tot);
                        if (next.closed > bound) break; // closed counts only grow in k
                        rec(t + 1, next);
                    }
                    ks[t] = 0;
                };
            rec(0, class_over(red_identity(sizes[bv[0]]), 0));
        }
        fx.X.counts[d] = static_cast<int>(fx.cells[d].size());
    }
    for (int d = 1; d <= cap; ++d) {
        fx.X.face[d].assign(d + 1, std::vector<int>(fx.X.counts[d]));
        for (int c = 0; c < fx.X.counts[d]; ++c) {
            const auto& cell = fx.cells[d][c];
            const std::vector<int>& bv = fx.base.cells[d][cell.beta];
            for (int i = 0; i <= d; ++i) {
                std::vector<int> fb = bv;
                fb.erase(fb.begin() + i);
                std::vector<int> fk = cell.ks;
                if (i == 0) fk.erase(fk.begin());
                else if (i == d) fk.pop_back();
                else {
                    CanonicalClass merged = compose_class(
                        class_over(fx.sigma[bv[i]][bv[i + 1]], cell.ks[i]),
                        class_over(fx.sigma[bv[i - 1]][bv[i]], cell.ks[i - 1]));
                    fk[i - 1] = merged.closed;
                    fk.erase(fk.begin() + i);
                }
                fx.X.face[d][i][c] = fx.index[d - 1].at({fx.base.index[d - 1].at(fb), fk});
            }
        }
    }
    for (int d = 0; d < cap; ++d) {
        fx.X.degen[d].assign(d + 1, std::vector<int>(fx.X.counts[d]));
        for (int c = 0; c < fx.X.counts[d]; ++c) {
            const auto& cell = fx.cells[d][c];
            const std::vector<int>& bv = fx.base.cells[d][cell.beta];
            for (int i = 0; i <= d; ++i) {
                std::vector<int> sb = bv;
                sb.insert(sb.begin() + i, bv[i]);
                std::vector<int> sk = cell.ks;
                sk.insert(sk.begin() + i, 0);
                fx.X.degen[d][i][c] = fx.index[d + 1].at({fx.base.index[d + 1].at(sb), sk});
            }
        }
    }
    fx.X.validate();
    fx.proj.dom = fx.X;
    fx.proj.cod = fx.base.X;
    fx.proj.level.resize(cap + 1);
    for (int d = 0; d <= cap; ++d) {
        fx.proj.level[d].resize(fx.X.counts[d]);
        for (int c = 0; c < fx.X.counts[d]; ++c) fx.proj.level[d][c] = fx.cells[d][c].beta;
    }
    fx.proj.validate();
    return fx;
}

/// The standard instance over Delta^2: 0-element, 1-element, 1-element
/// objects joined by reduced maps whose composite acquires a closed
/// point.  Its reduced edges are locally coCartesian but not coCartesian.
inline TruncatedFixture closed_point_fixture(int bound = 3, int cap = 4) {
    RedMorphism e1{0, 1, Partition::from_blocks(1, {{1}})};
    RedMorphism e2{1, 1, Partition::from_blocks(2, {{1}, {2}})};
    return truncated_hcsp_fixture({0, 1, 1}, {e1, e2}, bound, cap);
}

/// A one-step fixture over Delta^1 (no closed points appear; the map is
/// coCartesian on reduced edges).
inline TruncatedFixture interval_fixture(int bound = 3, int cap = 4) {
    RedMorphism e1{0, 1, Partition::from_blocks(1, {{1}})};
    return truncated_hcsp_fixture({0, 1}, {e1}, bound, cap);
}

} // namespace cspcat
