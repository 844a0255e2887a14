#pragma once

#include <algorithm>
#include <bit>
#include <functional>
#include <utility>
#include <vector>

#include "cspcat/error.hpp"
#include "cspcat/simplicial.hpp"

namespace cspcat {

// ---------------------------------------------------------------------------
// Shapes as subset families of the vertex set of Delta^n
//
// A map from a subcomplex of Delta^n spanned by nondegenerate simplices is
// recorded as an assignment subset-of-{0..n} -> cell; degenerate simplices
// of the shape carry no extra data, so this suffices for horn/boundary
// lifting squares.
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<unsigned> sort_by_popcount(std::vector<unsigned> v) {
    std::stable_sort(v.begin(), v.end(), [](unsigned a, unsigned b) {
        return std::popcount(a) < std::popcount(b);
    });
    return v;
}

/// Codim-1 faces of a vertex subset, in face-operator order (i-th entry
/// removes the i-th smallest vertex).
inline std::vector<unsigned> faces_of(unsigned s) {
    std::vector<unsigned> out;
    for (unsigned m = s; m; m &= m - 1) out.push_back(s & ~(m & (~m + 1)));
    return out;
}

/// The iterated face operator realizing a vertex-subset inclusion t <= s.
inline int iterated_face(const SimplicialSet& x, unsigned s, int cell, unsigned t) {
    std::vector<int> elems;
    for (int v = 0; v < 32; ++v)
        if (s >> v & 1) elems.push_back(v);
    int deg = static_cast<int>(elems.size()) - 1;
    int cur = cell;
    for (int pos = deg; pos >= 0; --pos)
        if (!(t >> elems[pos] & 1)) {
            cur = x.d(deg, pos, cur);
            --deg;
        }
    return cur;
}

} // namespace detail

inline std::vector<unsigned> boundary_shape(int n) {
    unsigned full = (1u << (n + 1)) - 1;
    std::vector<unsigned> out;
    for (unsigned s = 1; s <= full; ++s)
        if (s != full) out.push_back(s);
    return detail::sort_by_popcount(std::move(out));
}

inline std::vector<unsigned> horn_shape(int n, int k) {
    if (k < 0 || k > n) throw input_error("horn_shape: k out of range");
    unsigned full = (1u << (n + 1)) - 1;
    unsigned missing = full & ~(1u << k);
    std::vector<unsigned> out;
    for (unsigned s = 1; s <= full; ++s)
        if (s != full && s != missing) out.push_back(s);
    return detail::sort_by_popcount(std::move(out));
}

/// Enumerates every map from the shape into X compatible with the face
/// structure, subject to pinned cells.  The callback returns false to stop
/// the enumeration; the function returns false iff it was stopped.
inline bool for_each_shape_map(const SimplicialSet& x, int n,
                               const std::vector<unsigned>& subsets,
                               const std::vector<std::pair<unsigned, int>>& pins,
                               const std::function<bool(const std::vector<int>&)>& cb) {
    std::vector<int> assign(1u << (n + 1), -1);
    for (auto [s, c] : pins) {
        // propagate the pin to all of its faces so the DFS starts constrained
        for (unsigned t = s;; t = (t - 1) & s) {
            if (t != 0) {
                int cell = detail::iterated_face(x, s, c, t);
                if (assign[t] != -1 && assign[t] != cell) return true; // inconsistent pins: vacuous
                assign[t] = cell;
            }
            if (t == 0) break;
        }
    }
    std::function<bool(size_t)> rec = [&](size_t idx) -> bool {
        if (idx == subsets.size()) return cb(assign);
        unsigned s = subsets[idx];
        int deg = std::popcount(s) - 1;
        auto faces_ok = [&](int cell) {
            if (deg == 0) return true;
            auto fs = detail::faces_of(s);
            for (int i = 0; i <= deg; ++i)
                if (assign[fs[i]] == -1 || x.d(deg, i, cell) != assign[fs[i]]) return false;
            return true;
        };
        if (assign[s] != -1) return faces_ok(assign[s]) ? rec(idx + 1) : true;
        for (int c = 0; c < x.counts[deg]; ++c) {
            if (!faces_ok(c)) continue;
            assign[s] = c;
            if (!rec(idx + 1)) { assign[s] = -1; return false; }
            assign[s] = -1;
        }
        return true;
    };
    return rec(0);
}

// ---------------------------------------------------------------------------
// Fibration deciders by exhaustive lifting
// ---------------------------------------------------------------------------

namespace detail {

/// A filler for one horn square: an n-cell of X over base_top whose faces
/// (other than the k-th) agree with the horn assignment.
inline bool horn_lift_exists(const SimplicialMap& p, int n, int k,
                             const std::vector<int>& assign, int base_top) {
    unsigned full = (1u << (n + 1)) - 1;
    for (int c = 0; c < p.dom.counts[n]; ++c) {
        if (p.at(n, c) != base_top) continue;
        bool ok = true;
        for (int i = 0; ok && i <= n; ++i) {
            if (i == k) continue;
            if (p.dom.d(n, i, c) != assign[full & ~(1u << i)]) ok = false;
        }
        if (ok) return true;
    }
    return false;
}

/// All base fillers compatible with the image of a horn assignment.
inline std::vector<int> compatible_base_fillers(const SimplicialMap& p, int n, int k,
                                                const std::vector<int>& assign) {
    unsigned full = (1u << (n + 1)) - 1;
    std::vector<int> out;
    for (int y = 0; y < p.cod.counts[n]; ++y) {
        bool ok = true;
        for (int i = 0; ok && i <= n; ++i) {
            if (i == k) continue;
            if (p.cod.d(n, i, y) != p.at(n - 1, assign[full & ~(1u << i)])) ok = false;
        }
        if (ok) out.push_back(y);
    }
    return out;
}

} // namespace detail

/// Right lifting property against all inner horns Lambda^n_k (0 < k < n)
/// for 2 <= n <= max_n; the verdict is cap-relative.
inline bool is_inner_fibration(const SimplicialMap& p, int max_n) {
    if (max_n > p.dom.cap || max_n > p.cod.cap || max_n > p.top())
        throw cap_error("is_inner_fibration: cap too small");
    for (int n = 2; n <= max_n; ++n)
        for (int k = 1; k < n; ++k) {
            bool ok = for_each_shape_map(
                p.dom, n, horn_shape(n, k), {}, [&](const std::vector<int>& assign) {
                    for (int y : detail::compatible_base_fillers(p, n, k, assign))
                        if (!detail::horn_lift_exists(p, n, k, assign, y)) return false;
                    return true;
                });
            if (!ok) return false;
        }
    return true;
}

/// Right lifting property against all boundary inclusions dDelta^l in
/// Delta^l for 0 <= l <= max_l; the verdict is cap-relative.
inline bool is_trivial_kan(const SimplicialMap& q, int max_l) {
    if (max_l > q.dom.cap || max_l > q.cod.cap || max_l > q.top())
        throw cap_error("is_trivial_kan: cap too small");
    // l = 0: empty boundary, so every codomain vertex must have a preimage
    for (int y = 0; y < q.cod.counts[0]; ++y) {
        bool hit = false;
        for (int c = 0; c < q.dom.counts[0] && !hit; ++c)
            if (q.at(0, c) == y) hit = true;
        if (!hit) return false;
    }
    for (int l = 1; l <= max_l; ++l) {
        unsigned full = (1u << (l + 1)) - 1;
        bool ok = for_each_shape_map(
            q.dom, l, boundary_shape(l), {}, [&](const std::vector<int>& assign) {
                for (int y = 0; y < q.cod.counts[l]; ++y) {
                    bool compat = true;
                    for (int i = 0; compat && i <= l; ++i)
                        if (q.cod.d(l, i, y) != q.at(l - 1, assign[full & ~(1u << i)]))
                            compat = false;
                    if (!compat) continue;
                    bool lifted = false;
                    for (int c = 0; c < q.dom.counts[l] && !lifted; ++c) {
                        if (q.at(l, c) != y) continue;
                        bool match = true;
                        for (int i = 0; match && i <= l; ++i)
                            if (q.dom.d(l, i, c) != assign[full & ~(1u << i)]) match = false;
                        if (match) lifted = true;
                    }
                    if (!lifted) return false;
                }
                return true;
            });
        if (!ok) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Cartesian edges, implementation (b): Lambda^n_n lifting
// ---------------------------------------------------------------------------

inline int edge_source(const SimplicialSet& x, int e) { return x.d(1, 1, e); }
inline int edge_target(const SimplicialSet& x, int e) { return x.d(1, 0, e); }

namespace detail {

/// Is this cell the totally degenerate simplex at its own first vertex?
inline bool totally_degenerate(const SimplicialSet& y, int deg, int c) {
    if (deg == 0) return true;
    if (!y.with_degen) return false;
    return c == degenerate_at_vertex(y, vertex_of(y, deg, c, 0), deg);
}

} // namespace detail

/// f is p-Cartesian (up to max_n) iff every Lambda^n_n horn whose last
/// edge is f lifts against every compatible base filler.  The local
/// variant restricts to base fillers whose front face is totally
/// degenerate, which tests Cartesianness in the restricted fibration over
/// the base edge only.
inline bool is_cartesian_edge_lifting(const SimplicialMap& p, int edge, int max_n,
                                      bool local = false) {
    if (max_n > p.dom.cap || max_n > p.cod.cap || max_n > p.top())
        throw cap_error("is_cartesian_edge_lifting: cap too small");
    for (int n = 2; n <= max_n; ++n) {
        unsigned last_edge = (1u << (n - 1)) | (1u << n);
        bool ok = for_each_shape_map(
            p.dom, n, horn_shape(n, n), {{last_edge, edge}},
            [&](const std::vector<int>& assign) {
                for (int y : detail::compatible_base_fillers(p, n, n, assign)) {
                    if (local &&
                        !detail::totally_degenerate(p.cod, n - 1, p.cod.d(n, n, y)))
                        continue;
                    if (!detail::horn_lift_exists(p, n, n, assign, y)) return false;
                }
                return true;
            });
        if (!ok) return false;
    }
    return true;
}

inline bool is_cocartesian_edge_lifting(const SimplicialMap& p, int edge, int max_n,
                                        bool local = false) {
    return is_cartesian_edge_lifting(opposite_map(p), edge, max_n, local);
}

// ---------------------------------------------------------------------------
// Cartesian edges, implementation (a): trivial-Kan comparison map
// ---------------------------------------------------------------------------

/// q: X_{f/} -> X_{x/} x_{Y_{p(x)/}} Y_{p(f)/}, the map whose
/// trivial-Kan-ness defines a p-coCartesian edge; the Cartesian case goes
/// through the opposite simplicial sets.
inline SimplicialMap cocartesian_comparison_map(const SimplicialMap& p, int edge) {
    const SimplicialSet& X = p.dom;
    const SimplicialSet& Y = p.cod;
    const int x = edge_source(X, edge);
    Under uf = under_category(X, 1, edge);
    Under ux = under_category(X, 0, x);
    Under vpf = under_category(Y, 1, p.at(1, edge));
    Under vpx = under_category(Y, 0, p.at(0, x));

    SimplicialMap b1; // X_{x/} -> Y_{p(x)/}, apply p level-wise
    b1.dom = ux.U;
    b1.cod = vpx.U;
    int t1 = std::min(ux.U.cap, vpx.U.cap);
    b1.level.resize(t1 + 1);
    for (int l = 0; l <= t1; ++l) {
        b1.level[l].resize(ux.U.counts[l]);
        for (int c = 0; c < ux.U.counts[l]; ++c)
            b1.level[l][c] = vpx.cell_of(p.at(l + 1, ux.cells[l][c]), l);
    }
    b1.validate();

    SimplicialMap b2; // Y_{p(f)/} -> Y_{p(x)/}, forget the second vertex
    b2.dom = vpf.U;
    b2.cod = vpx.U;
    b2.level.resize(vpf.U.cap + 1);
    for (int l = 0; l <= vpf.U.cap; ++l) {
        b2.level[l].resize(vpf.U.counts[l]);
        for (int c = 0; c < vpf.U.counts[l]; ++c)
            b2.level[l][c] = vpx.cell_of(Y.d(l + 2, 1, vpf.cells[l][c]), l);
    }
    b2.validate();

    FiberProduct pb = fiber_product(b1, b2);

    SimplicialMap q;
    q.dom = uf.U;
    q.cod = pb.P;
    int tq = std::min(uf.U.cap, pb.P.cap);
    q.level.resize(tq + 1);
    for (int l = 0; l <= tq; ++l) {
        q.level[l].resize(uf.U.counts[l]);
        for (int c = 0; c < uf.U.counts[l]; ++c) {
            int u = uf.cells[l][c]; // X-cell of degree l+2 with front edge f
            int a = ux.cell_of(X.d(l + 2, 1, u), l);
            int b = vpf.cell_of(p.at(l + 2, u), l);
            q.level[l][c] = pb.cell_of(a, b, l);
        }
    }
    q.validate();
    return q;
}

inline bool is_cocartesian_edge_trivialkan(const SimplicialMap& p, int edge, int max_n) {
    if (max_n > p.dom.cap || max_n > p.cod.cap || max_n > p.top())
        throw cap_error("is_cocartesian_edge_trivialkan: cap too small");
    SimplicialMap q = cocartesian_comparison_map(p, edge);
    return is_trivial_kan(q, std::min(max_n - 2, std::min({q.dom.cap, q.cod.cap, q.top()})));
}

/// Local variant: coCartesianness of the edge inside the fibration
/// restricted over its own base edge.
inline bool is_locally_cocartesian_edge_trivialkan(const SimplicialMap& p, int edge,
                                                   int max_n) {
    Restriction r = restrict(p, 1, p.at(1, edge));
    int redge = r.cell_of(edge, r.base.cell_of({0, 1}), 1);
    return is_cocartesian_edge_trivialkan(r.proj, redge, max_n);
}

inline bool is_cartesian_edge_trivialkan(const SimplicialMap& p, int edge, int max_n) {
    return is_cocartesian_edge_trivialkan(opposite_map(p), edge, max_n);
}

inline bool is_locally_cartesian_edge_trivialkan(const SimplicialMap& p, int edge,
                                                 int max_n) {
    return is_locally_cocartesian_edge_trivialkan(opposite_map(p), edge, max_n);
}

// ---------------------------------------------------------------------------
// The Key-Lemma comparison isomorphism
// ---------------------------------------------------------------------------

/// Builds s: (X_{|sigma})_{(x,0)/} -> (X_{x/})_{|sigma} and verifies it is
/// a level-wise bijection commuting with faces (and degeneracies when
/// present) through level max_n - 2.  Structurally corrupted input yields
/// false rather than a crash.
inline bool under_iso_check(const SimplicialMap& p, int sigma_edge, int x, int max_n) {
    if (max_n > p.dom.cap || max_n > p.cod.cap || max_n > p.top())
        throw cap_error("under_iso_check: cap too small");
    try {
        Restriction r = restrict(p, 1, sigma_edge);
        int v = r.cell_of(x, r.base.cell_of({0}), 0);
        Under lhs = under_category(r.total, 0, v);
        Under ux = under_category(p.dom, 0, x);
        SimplicialMap qx = compose_maps(p, ux.proj);
        Restriction rhs = restrict(qx, 1, sigma_edge);
        int top = std::min({lhs.U.cap, rhs.total.cap, max_n - 2});
        if (top < 0) return false;

        std::vector<std::vector<int>> s(top + 1);
        for (int l = 0; l <= top; ++l) {
            s[l].resize(lhs.U.counts[l]);
            for (int c = 0; c < lhs.U.counts[l]; ++c) {
                auto [u, bc] = r.cells[l + 1][lhs.cells[l][c]];
                std::vector<int> beta = r.base.cells[l + 1][bc];
                if (beta.front() != 0) return false;
                beta.erase(beta.begin());
                s[l][c] = rhs.cell_of(ux.cell_of(u, l), rhs.base.cell_of(beta), l);
            }
            // level-wise bijection
            if (lhs.U.counts[l] != rhs.total.counts[l]) return false;
            std::vector<int> sorted = s[l];
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                return false;
        }
        for (int l = 1; l <= top; ++l)
            for (int c = 0; c < lhs.U.counts[l]; ++c)
                for (int i = 0; i <= l; ++i)
                    if (s[l - 1][lhs.U.d(l, i, c)] != rhs.total.d(l, i, s[l][c]))
                        return false;
        if (lhs.U.with_degen && rhs.total.with_degen)
            for (int l = 0; l < top; ++l)
                for (int c = 0; c < lhs.U.counts[l]; ++c)
                    for (int i = 0; i <= l; ++i)
                        if (s[l + 1][lhs.U.s(l, i, c)] != rhs.total.s(l, i, s[l][c]))
                            return false;
        return true;
    } catch (const internal_error&) {
        return false;
    } catch (const std::out_of_range&) {
        return false;
    }
}

// ---------------------------------------------------------------------------
// Discrete semi-Segal deciders (level-wise-set data)
// ---------------------------------------------------------------------------

/// e is an equivalence edge iff d_1 carries {t in X_2 | d_0 t = e}
/// bijectively onto {g in X_1 | d_0 g = d_0 e}.
inline bool sS_is_equivalence_edge(const SimplicialSet& x, int e) {
    if (x.cap < 2) throw cap_error("sS_is_equivalence_edge: need cap >= 2");
    std::vector<int> images;
    for (int t = 0; t < x.counts[2]; ++t)
        if (x.d(2, 0, t) == e) images.push_back(x.d(2, 1, t));
    std::vector<int> target;
    for (int g = 0; g < x.counts[1]; ++g)
        if (x.d(1, 0, g) == edge_target(x, e)) target.push_back(g);
    std::sort(images.begin(), images.end());
    if (std::adjacent_find(images.begin(), images.end()) != images.end()) return false;
    std::sort(target.begin(), target.end());
    return images == target;
}

/// Discrete locally p-Cartesian test for semi-Segal data: over every base
/// triangle whose first edge is an equivalence, filling against e is a
/// fiber bijection.
inline bool sS_is_locally_cartesian_edge(const SimplicialMap& p, int e) {
    if (p.dom.cap < 2 || p.cod.cap < 2 || p.top() < 2)
        throw cap_error("sS_is_locally_cartesian_edge: need cap >= 2");
    const SimplicialSet& X = p.dom;
    const SimplicialSet& Y = p.cod;
    for (int s = 0; s < Y.counts[2]; ++s) {
        if (Y.d(2, 0, s) != p.at(1, e)) continue;
        if (!sS_is_equivalence_edge(Y, Y.d(2, 2, s))) continue;
        std::vector<int> images;
        for (int t = 0; t < X.counts[2]; ++t)
            if (X.d(2, 0, t) == e && p.at(2, t) == s) images.push_back(X.d(2, 1, t));
        std::vector<int> target;
        for (int g = 0; g < X.counts[1]; ++g)
            if (X.d(1, 0, g) == edge_target(X, e) && p.at(1, g) == Y.d(2, 1, s))
                target.push_back(g);
        std::sort(images.begin(), images.end());
        if (std::adjacent_find(images.begin(), images.end()) != images.end()) return false;
        std::sort(target.begin(), target.end());
        if (images != target) return false;
    }
    return true;
}

} // namespace cspcat
