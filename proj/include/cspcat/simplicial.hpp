#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "cspcat/error.hpp"
#include "cspcat/fincat.hpp"

namespace cspcat {

/// A dimension-capped (semi-)simplicial set stored extensionally: cell
/// counts per degree and explicit face tables.  Degeneracy tables are
/// optional; their absence means the data is semi-simplicial.  All
/// fibration and Cartesian verdicts derived from such an object are
/// relative to the cap; `truncated_marker` records that the object is a
/// truncation of a known larger one, so soundness notes can be emitted.
struct SimplicialSet {
    int cap = 0;
    std::vector<int> counts;                          // counts[d], d = 0..cap
    std::vector<std::vector<std::vector<int>>> face;  // face[d][i], d = 1..cap, i = 0..d
    bool with_degen = false;
    std::vector<std::vector<std::vector<int>>> degen; // degen[d][i], d = 0..cap-1, i = 0..d
    bool truncated_marker = false;

    int cells(int d) const { return d <= cap ? counts[d] : 0; }

    int d(int deg, int i, int c) const { return face[deg][i][c]; }
    int s(int deg, int i, int c) const { return degen[deg][i][c]; }

    void init(int cap_, bool with_degen_) {
        cap = cap_;
        with_degen = with_degen_;
        counts.assign(cap + 1, 0);
        face.assign(cap + 1, {});
        if (with_degen) degen.assign(cap + 1, {});
    }

    void validate() const {
        for (int deg = 1; deg <= cap; ++deg) {
            if (static_cast<int>(face[deg].size()) != deg + 1)
                throw internal_error("simplicial: face table arity mismatch");
            for (int i = 0; i <= deg; ++i) {
                if (static_cast<int>(face[deg][i].size()) != counts[deg])
                    throw internal_error("simplicial: face table size mismatch");
                for (int c : face[deg][i])
                    if (c < 0 || c >= counts[deg - 1])
                        throw internal_error("simplicial: face index out of range");
            }
        }
        // d_i d_j = d_{j-1} d_i  (i < j)
        for (int deg = 2; deg <= cap; ++deg)
            for (int c = 0; c < counts[deg]; ++c)
                for (int j = 1; j <= deg; ++j)
                    for (int i = 0; i < j; ++i)
                        if (d(deg - 1, i, d(deg, j, c)) != d(deg - 1, j - 1, d(deg, i, c)))
                            throw internal_error("simplicial identity d_i d_j failed");
        if (!with_degen) return;
        for (int deg = 0; deg < cap; ++deg) {
            if (static_cast<int>(degen[deg].size()) != deg + 1)
                throw internal_error("simplicial: degeneracy table arity mismatch");
            for (int i = 0; i <= deg; ++i)
                if (static_cast<int>(degen[deg][i].size()) != counts[deg])
                    throw internal_error("simplicial: degeneracy table size mismatch");
        }
        for (int deg = 0; deg < cap; ++deg)
            for (int c = 0; c < counts[deg]; ++c)
                for (int j = 0; j <= deg; ++j) {
                    int sc = s(deg, j, c);
                    // d_i s_j relations
                    for (int i = 0; i <= deg + 1; ++i) {
                        int lhs = d(deg + 1, i, sc);
                        int rhs;
                        if (i < j) rhs = deg >= 1 ? s(deg - 1, j - 1, d(deg, i, c)) : -1;
                        else if (i == j || i == j + 1) rhs = c;
                        else rhs = deg >= 1 ? s(deg - 1, j, d(deg, i - 1, c)) : -1;
                        if (rhs != -1 && lhs != rhs)
                            throw internal_error("simplicial identity d_i s_j failed");
                    }
                    // s_i s_j = s_{j+1} s_i  (i <= j)
                    if (deg + 2 <= cap)
                        for (int i = 0; i <= j; ++i)
                            if (s(deg + 1, i, sc) != s(deg + 1, j + 1, s(deg, i, c)))
                                throw internal_error("simplicial identity s_i s_j failed");
                }
    }
};

/// Level-wise map of (semi-)simplicial sets, stored with copies of its
/// endpoints; commutation with faces (and degeneracies where both sides
/// have them) is verified by validate().
struct SimplicialMap {
    SimplicialSet dom;
    SimplicialSet cod;
    std::vector<std::vector<int>> level; // level[d][cell], d = 0..min cap

    int top() const { return static_cast<int>(level.size()) - 1; }
    int at(int deg, int c) const { return level[deg][c]; }

    void validate() const {
        if (top() < 0) throw internal_error("simplicial map: empty level data");
        for (int deg = 0; deg <= top(); ++deg) {
            if (static_cast<int>(level[deg].size()) != dom.counts[deg])
                throw internal_error("simplicial map: level size mismatch");
            for (int c : level[deg])
                if (c < 0 || c >= cod.counts[deg])
                    throw internal_error("simplicial map: image out of range");
        }
        for (int deg = 1; deg <= top(); ++deg)
            for (int c = 0; c < dom.counts[deg]; ++c)
                for (int i = 0; i <= deg; ++i)
                    if (cod.d(deg, i, at(deg, c)) != at(deg - 1, dom.d(deg, i, c)))
                        throw internal_error("simplicial map: does not commute with faces");
        if (dom.with_degen && cod.with_degen)
            for (int deg = 0; deg < top(); ++deg)
                for (int c = 0; c < dom.counts[deg]; ++c)
                    for (int i = 0; i <= deg; ++i)
                        if (cod.s(deg, i, at(deg, c)) != at(deg + 1, dom.s(deg, i, c)))
                            throw internal_error("simplicial map: does not commute with degeneracies");
    }
};

inline SimplicialMap identity_map(const SimplicialSet& x) {
    SimplicialMap m;
    m.dom = x;
    m.cod = x;
    m.level.resize(x.cap + 1);
    for (int d = 0; d <= x.cap; ++d) {
        m.level[d].resize(x.counts[d]);
        for (int c = 0; c < x.counts[d]; ++c) m.level[d][c] = c;
    }
    return m;
}

inline SimplicialMap compose_maps(const SimplicialMap& g, const SimplicialMap& f) {
    SimplicialMap m;
    m.dom = f.dom;
    m.cod = g.cod;
    int t = std::min(f.top(), g.top());
    m.level.resize(t + 1);
    for (int d = 0; d <= t; ++d) {
        m.level[d].resize(f.level[d].size());
        for (size_t c = 0; c < f.level[d].size(); ++c)
            m.level[d][c] = g.level[d][f.level[d][c]];
    }
    return m;
}

/// Face-index reversal d_i -> d_{deg-i}; models the opposite simplicial set.
inline SimplicialSet opposite_simplicial(const SimplicialSet& x) {
    SimplicialSet op = x;
    for (int deg = 1; deg <= x.cap; ++deg)
        for (int i = 0; i <= deg; ++i) op.face[deg][i] = x.face[deg][deg - i];
    if (x.with_degen)
        for (int deg = 0; deg < x.cap; ++deg)
            for (int i = 0; i <= deg; ++i) op.degen[deg][i] = x.degen[deg][deg - i];
    return op;
}

inline SimplicialMap opposite_map(const SimplicialMap& p) {
    SimplicialMap op = p;
    op.dom = opposite_simplicial(p.dom);
    op.cod = opposite_simplicial(p.cod);
    return op;
}

// ---------------------------------------------------------------------------
// Operator application along arbitrary monotone maps
// ---------------------------------------------------------------------------

/// alpha*(cell) for a monotone alpha: [m] -> [deg] (alpha given as its
/// m+1 values).  Non-injective alpha requires degeneracies.
inline int apply_monotone(const SimplicialSet& x, int deg, int cell,
                          const std::vector<int>& alpha) {
    // injective part: restrict to the image values
    std::vector<int> vals = alpha;
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    int cur = cell, cdeg = deg;
    for (int j = deg; j >= 0; --j)
        if (!std::binary_search(vals.begin(), vals.end(), j)) {
            cur = x.d(cdeg, j, cur);
            --cdeg;
        }
    // surjective part: [m] ->> [k], pi(t) = rank of alpha[t]
    std::vector<int> pi(alpha.size());
    for (size_t t = 0; t < alpha.size(); ++t)
        pi[t] = static_cast<int>(std::lower_bound(vals.begin(), vals.end(), alpha[t]) - vals.begin());
    std::vector<int> ts;
    for (;;) {
        // smallest t with pi[t] == pi[t+1]; peeling these factors pi
        // through elementary codegeneracies
        int found = -1;
        for (size_t t = 0; t + 1 < pi.size(); ++t)
            if (pi[t] == pi[t + 1]) { found = static_cast<int>(t); break; }
        if (found < 0) break;
        ts.push_back(found);
        pi.erase(pi.begin() + found + 1);
    }
    if (static_cast<int>(alpha.size()) - 1 != cdeg + static_cast<int>(ts.size()))
        throw internal_error("apply_monotone: arity bookkeeping failed");
    if (!ts.empty() && !x.with_degen)
        throw cap_error("apply_monotone: non-injective map needs degeneracies");
    for (auto it = ts.rbegin(); it != ts.rend(); ++it) {
        cur = x.s(cdeg, *it, cur);
        ++cdeg;
    }
    return cur;
}

/// The totally degenerate m-simplex at a vertex.
inline int degenerate_at_vertex(const SimplicialSet& x, int v, int m) {
    int cur = v;
    for (int d = 0; d < m; ++d) cur = x.s(d, 0, cur);
    return cur;
}

inline bool is_degenerate_cell(const SimplicialSet& x, int deg, int c) {
    if (!x.with_degen || deg == 0) return false;
    for (int i = 0; i < deg; ++i)
        if (x.s(deg - 1, i, x.d(deg, i, c)) == c) return true;
    return false;
}

/// Restriction to the front face [0..keep] (drops the trailing vertices).
inline int front_face(const SimplicialSet& x, int deg, int c, int keep) {
    int cur = c;
    for (int d = deg; d > keep; --d) cur = x.d(d, d, cur);
    return cur;
}

/// Restriction to the back face [drop..deg].
inline int back_face(const SimplicialSet& x, int deg, int c, int drop) {
    int cur = c;
    for (int k = 0; k < drop; ++k) cur = x.d(deg - k, 0, cur);
    return cur;
}

/// The i-th vertex of a cell.
inline int vertex_of(const SimplicialSet& x, int deg, int c, int i) {
    return front_face(x, deg - i, back_face(x, deg, c, i), 0);
}

// ---------------------------------------------------------------------------
// Standard simplices, horns, boundaries
// ---------------------------------------------------------------------------

/// A simplicial set whose d-cells are (a filtered set of) monotone maps
/// [d] -> [n]; covers Delta^n and its horns and boundaries.
struct MonotoneComplex {
    SimplicialSet X;
    int n = 0;
    std::vector<std::vector<std::vector<int>>> cells; // cells[d][idx] = the map
    std::vector<std::map<std::vector<int>, int>> index;

    int cell_of(const std::vector<int>& alpha) const {
        const auto& ix = index[alpha.size() - 1];
        auto it = ix.find(alpha);
        if (it == ix.end()) throw input_error("monotone complex: no such cell");
        return it->second;
    }
};

namespace detail {

inline void enumerate_monotone(int m, int n, bool strict,
                               const std::function<void(const std::vector<int>&)>& cb) {
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int last) {
        if (static_cast<int>(cur.size()) == m + 1) { cb(cur); return; }
        for (int v = strict ? last + 1 : last; v <= n; ++v) {
            if (v < 0) continue;
            cur.push_back(v);
            rec(v);
            cur.pop_back();
        }
    };
    std::function<void()> start = [&] {
        for (int v = 0; v <= n; ++v) {
            cur.push_back(v);
            rec(v);
            cur.pop_back();
        }
    };
    if (m < 0) return;
    start();
}

} // namespace detail

/// Shared builder: keep monotone maps [d] -> [n] passing `admit` (on the
/// image set, as a bitmask).  with_degen=false keeps only the strictly
/// monotone ones (the semi-simplicial variant).
inline MonotoneComplex monotone_complex(int n, int cap, bool with_degen,
                                        const std::function<bool(unsigned)>& admit) {
    MonotoneComplex mc;
    mc.n = n;
    mc.X.init(cap, with_degen);
    mc.cells.resize(cap + 1);
    mc.index.resize(cap + 1);
    for (int d = 0; d <= cap; ++d) {
        detail::enumerate_monotone(d, n, !with_degen, [&](const std::vector<int>& a) {
            unsigned img = 0;
            for (int v : a) img |= 1u << v;
            if (!admit(img)) return;
            mc.index[d][a] = static_cast<int>(mc.cells[d].size());
            mc.cells[d].push_back(a);
        });
        mc.X.counts[d] = static_cast<int>(mc.cells[d].size());
    }
    for (int d = 1; d <= cap; ++d) {
        mc.X.face[d].assign(d + 1, std::vector<int>(mc.X.counts[d]));
        for (int c = 0; c < mc.X.counts[d]; ++c)
            for (int i = 0; i <= d; ++i) {
                std::vector<int> f = mc.cells[d][c];
                f.erase(f.begin() + i);
                mc.X.face[d][i][c] = mc.index[d - 1].at(f);
            }
    }
    if (with_degen)
        for (int d = 0; d < cap; ++d) {
            mc.X.degen[d].assign(d + 1, std::vector<int>(mc.X.counts[d]));
            for (int c = 0; c < mc.X.counts[d]; ++c)
                for (int i = 0; i <= d; ++i) {
                    std::vector<int> f = mc.cells[d][c];
                    f.insert(f.begin() + i, f[i]);
                    mc.X.degen[d][i][c] = mc.index[d + 1].at(f);
                }
        }
    mc.X.validate();
    return mc;
}

inline MonotoneComplex standard_simplex(int n, int cap, bool with_degen = true) {
    if (n < 0) throw input_error("standard_simplex: negative dimension");
    return monotone_complex(n, cap, with_degen, [](unsigned) { return true; });
}

inline MonotoneComplex boundary_complex(int n, int cap, bool with_degen = true) {
    unsigned full = (1u << (n + 1)) - 1;
    return monotone_complex(n, cap, with_degen,
                            [full](unsigned img) { return img != full; });
}

inline MonotoneComplex horn_complex(int n, int k, int cap, bool with_degen = true) {
    if (k < 0 || k > n) throw input_error("horn: k out of range");
    unsigned full = (1u << (n + 1)) - 1;
    unsigned facet = full & ~(1u << k);
    return monotone_complex(n, cap, with_degen, [full, facet](unsigned img) {
        return img != full && img != facet;
    });
}

/// The map Delta^n -> Y picking out a given n-cell of Y.
inline SimplicialMap simplex_map(const SimplicialSet& y, int n, int cell, int cap = -1) {
    if (cap < 0) cap = y.cap;
    MonotoneComplex base = standard_simplex(n, cap, y.with_degen);
    SimplicialMap m;
    m.dom = base.X;
    m.cod = y;
    m.level.resize(cap + 1);
    for (int d = 0; d <= cap; ++d) {
        m.level[d].resize(base.cells[d].size());
        for (size_t c = 0; c < base.cells[d].size(); ++c)
            m.level[d][c] = apply_monotone(y, n, cell, base.cells[d][c]);
    }
    m.validate();
    return m;
}

// ---------------------------------------------------------------------------
// Nerves
// ---------------------------------------------------------------------------

/// The nerve of an explicit finite category up to a cap.  d-cells are
/// composable d-tuples of morphisms; a unital category yields a genuine
/// simplicial set (degeneracies insert identities), a non-unital one the
/// semi-simplicial nerve.
struct Nerve {
    SimplicialSet X;
    FinCategory C;
    std::vector<std::vector<std::vector<int>>> cells; // d=0: {obj}, d>=1: tuples (f_1..f_d)
    std::vector<std::map<std::vector<int>, int>> index;

    int vertex_of_object(int obj) const { return index[0].at({obj}); }
    int edge_of_morphism(int m) const { return index[1].at({m}); }
};

inline Nerve nerve(const FinCategory& c, int cap) {
    if (cap < 1) throw input_error("nerve: cap must be >= 1");
    Nerve nv;
    nv.C = c;
    nv.X.init(cap, c.unital());
    nv.X.truncated_marker = true; // a nerve truncated at cap
    nv.cells.resize(cap + 1);
    nv.index.resize(cap + 1);
    for (int x = 0; x < c.num_objects(); ++x) {
        nv.index[0][{x}] = static_cast<int>(nv.cells[0].size());
        nv.cells[0].push_back({x});
    }
    for (int d = 1; d <= cap; ++d) {
        std::vector<int> tup;
        std::function<void()> rec = [&] {
            if (static_cast<int>(tup.size()) == d) {
                nv.index[d][tup] = static_cast<int>(nv.cells[d].size());
                nv.cells[d].push_back(tup);
                return;
            }
            for (int m = 0; m < c.num_morphisms(); ++m) {
                if (!tup.empty() && c.morphisms[m].src != c.morphisms[tup.back()].tgt) continue;
                tup.push_back(m);
                rec();
                tup.pop_back();
            }
        };
        rec();
        nv.X.counts[d] = static_cast<int>(nv.cells[d].size());
    }
    nv.X.counts[0] = c.num_objects();
    for (int d = 1; d <= cap; ++d) {
        nv.X.face[d].assign(d + 1, std::vector<int>(nv.X.counts[d]));
        for (int cidx = 0; cidx < nv.X.counts[d]; ++cidx) {
            const auto& t = nv.cells[d][cidx];
            for (int i = 0; i <= d; ++i) {
                std::vector<int> f;
                if (d == 1) {
                    // edge {m}: d_0 = target, d_1 = source
                    f = {i == 0 ? c.morphisms[t[0]].tgt : c.morphisms[t[0]].src};
                } else if (i == 0) {
                    f.assign(t.begin() + 1, t.end());
                } else if (i == d) {
                    f.assign(t.begin(), t.end() - 1);
                } else {
                    f.assign(t.begin(), t.end());
                    f[i] = c.compose(t[i], t[i - 1]);
                    f.erase(f.begin() + (i - 1));
                }
                nv.X.face[d][i][cidx] = nv.index[d - 1].at(f);
            }
        }
    }
    if (c.unital())
        for (int d = 0; d < cap; ++d) {
            nv.X.degen[d].assign(d + 1, std::vector<int>(nv.X.counts[d]));
            for (int cidx = 0; cidx < nv.X.counts[d]; ++cidx) {
                const auto& t = nv.cells[d][cidx];
                for (int i = 0; i <= d; ++i) {
                    std::vector<int> f = t;
                    int obj;
                    if (d == 0) obj = t[0];
                    else if (i == 0) obj = c.morphisms[t[0]].src;
                    else obj = c.morphisms[t[i - 1]].tgt;
                    if (d == 0) f.clear();
                    f.insert(f.begin() + (d == 0 ? 0 : i), (*c.identities)[obj]);
                    nv.X.degen[d][i][cidx] = nv.index[d + 1].at(f);
                }
            }
        }
    nv.X.validate();
    return nv;
}

/// The nerve of a functor, as a simplicial map between nerves.
inline SimplicialMap nerve_map(const FunctorData& p, int cap) {
    Nerve nd = nerve(p.domain, cap);
    Nerve nc = nerve(p.codomain, cap);
    SimplicialMap m;
    m.dom = nd.X;
    m.cod = nc.X;
    m.level.resize(cap + 1);
    for (int d = 0; d <= cap; ++d) {
        m.level[d].resize(nd.cells[d].size());
        for (size_t c = 0; c < nd.cells[d].size(); ++c) {
            std::vector<int> t = nd.cells[d][c];
            for (auto& v : t) v = d == 0 ? p.object_map[v] : p.morphism_map[v];
            m.level[d][c] = nc.index[d].at(t);
        }
    }
    m.validate();
    return m;
}

// ---------------------------------------------------------------------------
// Restrictions (pullbacks along a simplex), under-objects, fiber products
// ---------------------------------------------------------------------------

/// X_{|sigma} = X x_Y Delta^n, level-wise pairs (x, base cell) with
/// matching image.
struct Restriction {
    MonotoneComplex base;
    SimplicialSet total;
    SimplicialMap proj;    // p_{|sigma}: total -> base.X
    SimplicialMap incl;    // total -> X
    std::vector<std::vector<std::pair<int, int>>> cells; // (x cell, base cell)
    std::vector<std::map<std::pair<int, int>, int>> index;

    int cell_of(int xcell, int bcell, int deg) const {
        auto it = index[deg].find({xcell, bcell});
        if (it == index[deg].end()) throw internal_error("restriction: no such cell");
        return it->second;
    }
};

inline Restriction restrict(const SimplicialMap& p, int n, int sigma) {
    const SimplicialSet& X = p.dom;
    const SimplicialSet& Y = p.cod;
    bool wd = X.with_degen && Y.with_degen;
    int cap = wd ? X.cap : std::min(X.cap, n);
    Restriction r;
    r.base = standard_simplex(n, cap, wd);
    r.total.init(cap, wd);
    r.cells.resize(cap + 1);
    r.index.resize(cap + 1);
    for (int d = 0; d <= cap; ++d) {
        for (int bc = 0; bc < r.base.X.counts[d]; ++bc) {
            int img = apply_monotone(Y, n, sigma, r.base.cells[d][bc]);
            for (int x = 0; x < X.counts[d]; ++x)
                if (p.at(d, x) == img) {
                    r.index[d][{x, bc}] = static_cast<int>(r.cells[d].size());
                    r.cells[d].push_back({x, bc});
                }
        }
        r.total.counts[d] = static_cast<int>(r.cells[d].size());
    }
    for (int d = 1; d <= cap; ++d) {
        r.total.face[d].assign(d + 1, std::vector<int>(r.total.counts[d]));
        for (int c = 0; c < r.total.counts[d]; ++c)
            for (int i = 0; i <= d; ++i) {
                auto [x, bc] = r.cells[d][c];
                r.total.face[d][i][c] =
                    r.index[d - 1].at({X.d(d, i, x), r.base.X.d(d, i, bc)});
            }
    }
    if (wd)
        for (int d = 0; d < cap; ++d) {
            r.total.degen[d].assign(d + 1, std::vector<int>(r.total.counts[d]));
            for (int c = 0; c < r.total.counts[d]; ++c)
                for (int i = 0; i <= d; ++i) {
                    auto [x, bc] = r.cells[d][c];
                    r.total.degen[d][i][c] =
                        r.index[d + 1].at({X.s(d, i, x), r.base.X.s(d, i, bc)});
                }
        }
    r.total.validate();
    r.proj.dom = r.total;
    r.proj.cod = r.base.X;
    r.incl.dom = r.total;
    r.incl.cod = X;
    r.proj.level.resize(cap + 1);
    r.incl.level.resize(cap + 1);
    for (int d = 0; d <= cap; ++d) {
        r.proj.level[d].resize(r.total.counts[d]);
        r.incl.level[d].resize(r.total.counts[d]);
        for (int c = 0; c < r.total.counts[d]; ++c) {
            r.proj.level[d][c] = r.cells[d][c].second;
            r.incl.level[d][c] = r.cells[d][c].first;
        }
    }
    r.proj.validate();
    r.incl.validate();
    return r;
}

/// X_{sigma/}: l-cells are the (n+l+1)-cells of X whose front n-face is
/// sigma; the projection restricts to the back face.
struct Under {
    int n = 0;
    SimplicialSet U;
    SimplicialMap proj; // U -> X
    std::vector<std::vector<int>> cells; // cells[l][i] = X cell at degree n+1+l
    std::vector<std::map<int, int>> index;

    int cell_of(int xcell, int l) const {
        auto it = index[l].find(xcell);
        if (it == index[l].end()) throw internal_error("under: no such cell");
        return it->second;
    }
};

inline Under under_category(const SimplicialSet& x, int n, int sigma) {
    int ucap = x.cap - n - 1;
    if (ucap < 0) throw cap_error("under_category: cap too small for this simplex");
    Under u;
    u.n = n;
    u.U.init(ucap, x.with_degen);
    u.U.truncated_marker = x.truncated_marker;
    u.cells.resize(ucap + 1);
    u.index.resize(ucap + 1);
    for (int l = 0; l <= ucap; ++l) {
        int deg = n + l + 1;
        for (int c = 0; c < x.counts[deg]; ++c)
            if (front_face(x, deg, c, n) == sigma) {
                u.index[l][c] = static_cast<int>(u.cells[l].size());
                u.cells[l].push_back(c);
            }
        u.U.counts[l] = static_cast<int>(u.cells[l].size());
    }
    for (int l = 1; l <= ucap; ++l) {
        u.U.face[l].assign(l + 1, std::vector<int>(u.U.counts[l]));
        for (int c = 0; c < u.U.counts[l]; ++c)
            for (int i = 0; i <= l; ++i)
                u.U.face[l][i][c] = u.index[l - 1].at(x.d(n + l + 1, n + 1 + i, u.cells[l][c]));
    }
    if (x.with_degen)
        for (int l = 0; l < ucap; ++l) {
            u.U.degen[l].assign(l + 1, std::vector<int>(u.U.counts[l]));
            for (int c = 0; c < u.U.counts[l]; ++c)
                for (int i = 0; i <= l; ++i)
                    u.U.degen[l][i][c] = u.index[l + 1].at(x.s(n + l + 1, n + 1 + i, u.cells[l][c]));
        }
    u.U.validate();
    u.proj.dom = u.U;
    u.proj.cod = x;
    u.proj.level.resize(ucap + 1);
    for (int l = 0; l <= ucap; ++l) {
        u.proj.level[l].resize(u.U.counts[l]);
        for (int c = 0; c < u.U.counts[l]; ++c)
            u.proj.level[l][c] = back_face(x, n + l + 1, u.cells[l][c], n + 1);
    }
    u.proj.validate();
    return u;
}

/// Level-wise fiber product of f: A -> C and g: B -> C.
struct FiberProduct {
    SimplicialSet P;
    SimplicialMap proj1; // -> A
    SimplicialMap proj2; // -> B
    std::vector<std::vector<std::pair<int, int>>> cells;
    std::vector<std::map<std::pair<int, int>, int>> index;

    int cell_of(int a, int b, int deg) const {
        auto it = index[deg].find({a, b});
        if (it == index[deg].end()) throw internal_error("fiber product: no such cell");
        return it->second;
    }
};

inline FiberProduct fiber_product(const SimplicialMap& f, const SimplicialMap& g) {
    const SimplicialSet& A = f.dom;
    const SimplicialSet& B = g.dom;
    int cap = std::min({A.cap, B.cap, f.top(), g.top()});
    bool wd = A.with_degen && B.with_degen;
    FiberProduct fp;
    fp.P.init(cap, wd);
    fp.P.truncated_marker = A.truncated_marker || B.truncated_marker;
    fp.cells.resize(cap + 1);
    fp.index.resize(cap + 1);
    for (int d = 0; d <= cap; ++d) {
        for (int a = 0; a < A.counts[d]; ++a)
            for (int b = 0; b < B.counts[d]; ++b)
                if (f.at(d, a) == g.at(d, b)) {
                    fp.index[d][{a, b}] = static_cast<int>(fp.cells[d].size());
                    fp.cells[d].push_back({a, b});
                }
        fp.P.counts[d] = static_cast<int>(fp.cells[d].size());
    }
    for (int d = 1; d <= cap; ++d) {
        fp.P.face[d].assign(d + 1, std::vector<int>(fp.P.counts[d]));
        for (int c = 0; c < fp.P.counts[d]; ++c)
            for (int i = 0; i <= d; ++i) {
                auto [a, b] = fp.cells[d][c];
                fp.P.face[d][i][c] = fp.index[d - 1].at({A.d(d, i, a), B.d(d, i, b)});
            }
    }
    if (wd)
        for (int d = 0; d < cap; ++d) {
            fp.P.degen[d].assign(d + 1, std::vector<int>(fp.P.counts[d]));
            for (int c = 0; c < fp.P.counts[d]; ++c)
                for (int i = 0; i <= d; ++i) {
                    auto [a, b] = fp.cells[d][c];
                    fp.P.degen[d][i][c] = fp.index[d + 1].at({A.s(d, i, a), B.s(d, i, b)});
                }
        }
    fp.P.validate();
    fp.proj1.dom = fp.P;
    fp.proj1.cod = A;
    fp.proj2.dom = fp.P;
    fp.proj2.cod = B;
    fp.proj1.level.resize(cap + 1);
    fp.proj2.level.resize(cap + 1);
    for (int d = 0; d <= cap; ++d) {
        fp.proj1.level[d].resize(fp.P.counts[d]);
        fp.proj2.level[d].resize(fp.P.counts[d]);
        for (int c = 0; c < fp.P.counts[d]; ++c) {
            fp.proj1.level[d][c] = fp.cells[d][c].first;
            fp.proj2.level[d][c] = fp.cells[d][c].second;
        }
    }
    fp.proj1.validate();
    fp.proj2.validate();
    return fp;
}

/// X_{|n} x_X X_{x/} for p: X -> Delta^n (last base vertex = n).
/// This is the object whose weak contractibility carries the additivity
/// argument; here it is certified through homology at desk scale.
inline FiberProduct key_lemma_object(const SimplicialMap& p, int n, int x_vertex) {
    const SimplicialSet& base = p.cod;
    // base is Delta^n built by standard_simplex: vertex cells are 0..n in order
    if (base.counts[0] != n + 1) throw input_error("key_lemma_object: codomain is not Delta^n");
    Restriction last_fiber = restrict(p, 0, n);
    Under under_x = under_category(p.dom, 0, x_vertex);
    return fiber_product(last_fiber.incl, under_x.proj);
}

} // namespace cspcat
