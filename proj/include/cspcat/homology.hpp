#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cspcat/error.hpp"
#include "cspcat/finset.hpp"
#include "cspcat/simplicial.hpp"

namespace cspcat {

using bigint = boost::multiprecision::cpp_int;

/// A bounded chain complex of finitely generated free abelian groups.
/// boundary[d] is the matrix of d_d: C_d -> C_{d-1} (rows indexed by
/// degree d-1 generators).
struct ChainComplex {
    std::vector<int> dims;
    std::vector<std::vector<std::vector<long long>>> boundary; // boundary[d], d >= 1

    int top() const { return static_cast<int>(dims.size()) - 1; }

    void validate() const {
        for (int d = 1; d <= top(); ++d) {
            const auto& m = boundary[d];
            if (static_cast<int>(m.size()) != (d >= 1 ? dims[d - 1] : 0))
                throw internal_error("chain complex: boundary row count mismatch");
            for (const auto& row : m)
                if (static_cast<int>(row.size()) != dims[d])
                    throw internal_error("chain complex: boundary column count mismatch");
        }
        for (int d = 2; d <= top(); ++d)
            for (int j = 0; j < dims[d]; ++j)
                for (int i = 0; i < dims[d - 2]; ++i) {
                    long long acc = 0;
                    for (int k = 0; k < dims[d - 1]; ++k)
                        acc += boundary[d - 1][i][k] * boundary[d][k][j];
                    if (acc != 0) throw internal_error("chain complex: dd != 0");
                }
    }
};

namespace detail {

/// Per-degree generator selection: the nondegenerate cells for simplicial
/// input, every cell for semi-simplicial input.
inline std::vector<std::vector<int>> generator_index(const SimplicialSet& x, bool all_cells) {
    std::vector<std::vector<int>> gen(x.cap + 1);
    for (int d = 0; d <= x.cap; ++d) {
        gen[d].assign(x.counts[d], -1);
        int next = 0;
        for (int c = 0; c < x.counts[d]; ++c)
            if (all_cells || !is_degenerate_cell(x, d, c)) gen[d][c] = next++;
    }
    return gen;
}

inline ChainComplex chain_complex_impl(const SimplicialSet& x, bool all_cells) {
    auto gen = generator_index(x, all_cells);
    ChainComplex cc;
    cc.dims.resize(x.cap + 1);
    for (int d = 0; d <= x.cap; ++d)
        cc.dims[d] = static_cast<int>(std::count_if(gen[d].begin(), gen[d].end(),
                                                    [](int g) { return g >= 0; }));
    cc.boundary.resize(x.cap + 1);
    for (int d = 1; d <= x.cap; ++d) {
        cc.boundary[d].assign(cc.dims[d - 1], std::vector<long long>(cc.dims[d], 0));
        for (int c = 0; c < x.counts[d]; ++c) {
            if (gen[d][c] < 0) continue;
            int sign = 1;
            for (int i = 0; i <= d; ++i, sign = -sign) {
                int f = gen[d - 1][x.d(d, i, c)];
                if (f >= 0) cc.boundary[d][f][gen[d][c]] += sign;
            }
        }
    }
    cc.validate();
    return cc;
}

} // namespace detail

/// Normalized chains for simplicial input, all cells (the fat-realization
/// complex) for semi-simplicial input.
inline ChainComplex chain_complex(const SimplicialSet& x) {
    return detail::chain_complex_impl(x, !x.with_degen);
}

/// All-cells complex regardless of degeneracies (the complex of the
/// underlying semi-simplicial set).
inline ChainComplex chain_complex_all_cells(const SimplicialSet& x) {
    return detail::chain_complex_impl(x, true);
}

/// Invariant factors (positive, each dividing the next) of an integer
/// matrix, by Smith reduction with exact arithmetic.
inline std::vector<bigint> smith_invariants(std::vector<std::vector<bigint>> m) {
    const int rows = static_cast<int>(m.size());
    const int cols = rows ? static_cast<int>(m[0].size()) : 0;
    std::vector<bigint> inv;
    int r0 = 0, c0 = 0;
    while (r0 < rows && c0 < cols) {
        // pivot: nonzero entry of least absolute value in the remaining block
        int pr = -1, pc = -1;
        bigint best = 0;
        for (int i = r0; i < rows; ++i)
            for (int j = c0; j < cols; ++j)
                if (m[i][j] != 0 && (pr < 0 || abs(m[i][j]) < best)) {
                    pr = i;
                    pc = j;
                    best = abs(m[i][j]);
                }
        if (pr < 0) break;
        std::swap(m[pr], m[r0]);
        for (int i = 0; i < rows; ++i) std::swap(m[i][pc], m[i][c0]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = r0 + 1; i < rows; ++i) {
                bigint q = m[i][c0] / m[r0][c0];
                if (q != 0)
                    for (int j = c0; j < cols; ++j) m[i][j] -= q * m[r0][j];
                if (m[i][c0] != 0) {
                    std::swap(m[i], m[r0]);
                    clean = false;
                }
            }
            for (int j = c0 + 1; j < cols; ++j) {
                bigint q = m[r0][j] / m[r0][c0];
                if (q != 0)
                    for (int i = r0; i < rows; ++i) m[i][j] -= q * m[i][c0];
                if (m[r0][j] != 0) {
                    for (int i = 0; i < rows; ++i) std::swap(m[i][j], m[i][c0]);
                    clean = false;
                }
            }
        }
        inv.push_back(abs(m[r0][c0]));
        ++r0;
        ++c0;
    }
    // enforce the divisibility chain d_1 | d_2 | ...
    for (bool changed = true; changed;) {
        changed = false;
        for (size_t i = 0; i + 1 < inv.size(); ++i)
            if (inv[i + 1] % inv[i] != 0) {
                bigint g = gcd(inv[i], inv[i + 1]);
                bigint l = inv[i] / g * inv[i + 1];
                inv[i] = g;
                inv[i + 1] = l;
                changed = true;
            }
    }
    std::sort(inv.begin(), inv.end());
    return inv;
}

struct HomologyGroup {
    long long betti = 0;
    std::vector<bigint> torsion; // invariant factors > 1

    bool trivial() const { return betti == 0 && torsion.empty(); }

    friend bool operator==(const HomologyGroup& a, const HomologyGroup& b) {
        return a.betti == b.betti && a.torsion == b.torsion;
    }
};

/// H_0..H_up_to of the complex.  For complexes arising from a cap
/// truncation, degrees <= cap - 1 are the reliable range.
inline std::vector<HomologyGroup> homology(const ChainComplex& cc, int up_to) {
    if (up_to > cc.top()) throw cap_error("homology: degree beyond stored complex");
    std::vector<int> rank(cc.top() + 2, 0);
    std::vector<std::vector<bigint>> invs(cc.top() + 2);
    for (int d = 1; d <= cc.top(); ++d) {
        std::vector<std::vector<bigint>> m(cc.boundary[d].size());
        for (size_t i = 0; i < m.size(); ++i)
            m[i].assign(cc.boundary[d][i].begin(), cc.boundary[d][i].end());
        invs[d] = smith_invariants(std::move(m));
        rank[d] = static_cast<int>(invs[d].size());
    }
    std::vector<HomologyGroup> out(up_to + 1);
    for (int d = 0; d <= up_to; ++d) {
        out[d].betti = cc.dims[d] - rank[d] - rank[d + 1];
        for (const bigint& v : invs[d + 1])
            if (v > 1) out[d].torsion.push_back(v);
    }
    return out;
}

/// Number of path components (vertices joined by 1-cells).
inline int path_components(const SimplicialSet& x) {
    detail::UnionFind uf(std::max(1, x.counts[0]));
    if (x.counts[0] == 0) return 0;
    for (int e = 0; e < x.cells(1); ++e)
        uf.unite(x.d(1, 0, e), x.d(1, 1, e));
    std::vector<char> root(x.counts[0], 0);
    for (int v = 0; v < x.counts[0]; ++v) root[uf.find(v)] = 1;
    return static_cast<int>(std::count(root.begin(), root.end(), 1));
}

/// Homological certificate of weak contractibility through a degree:
/// one path component and vanishing H_1..H_d.
inline bool is_contractible_through(const SimplicialSet& x, int d) {
    if (d > x.cap - 1) throw cap_error("is_contractible_through: cap too small");
    if (path_components(x) != 1) return false;
    auto h = homology(chain_complex(x), d);
    for (int i = 1; i <= d; ++i)
        if (!h[i].trivial()) return false;
    return true;
}

/// The chain map induced by a simplicial map (matching generator
/// conventions of chain_complex on both sides).
inline std::vector<std::vector<std::vector<long long>>> chain_map_of(const SimplicialMap& f) {
    auto gd = detail::generator_index(f.dom, !f.dom.with_degen);
    auto gc = detail::generator_index(f.cod, !f.cod.with_degen);
    int t = std::min({f.dom.cap, f.cod.cap, f.top()});
    std::vector<std::vector<std::vector<long long>>> mats(t + 1);
    for (int d = 0; d <= t; ++d) {
        int rows = static_cast<int>(std::count_if(gc[d].begin(), gc[d].end(),
                                                  [](int g) { return g >= 0; }));
        int cols = static_cast<int>(std::count_if(gd[d].begin(), gd[d].end(),
                                                  [](int g) { return g >= 0; }));
        mats[d].assign(rows, std::vector<long long>(cols, 0));
        for (int c = 0; c < f.dom.counts[d]; ++c) {
            if (gd[d][c] < 0) continue;
            int img = gc[d][f.at(d, c)];
            if (img >= 0) mats[d][img][gd[d][c]] += 1;
        }
    }
    return mats;
}

/// Cone(F) for a chain map F: A -> B; acyclic iff F is a quasi-isomorphism.
inline ChainComplex mapping_cone(const ChainComplex& a, const ChainComplex& b,
                                 const std::vector<std::vector<std::vector<long long>>>& f) {
    int t = std::min({a.top() + 1, b.top(), static_cast<int>(f.size()) - 1 + 1});
    ChainComplex cone;
    cone.dims.resize(t + 1);
    cone.boundary.resize(t + 1);
    for (int d = 0; d <= t; ++d)
        cone.dims[d] = b.dims[d] + (d >= 1 ? a.dims[d - 1] : 0);
    for (int d = 1; d <= t; ++d) {
        cone.boundary[d].assign(cone.dims[d - 1], std::vector<long long>(cone.dims[d], 0));
        // B-block: boundary of B
        for (int i = 0; i < b.dims[d - 1]; ++i)
            for (int j = 0; j < b.dims[d]; ++j)
                cone.boundary[d][i][j] = b.boundary[d][i][j];
        // F-block: B_{d-1} <- A_{d-1}
        for (int i = 0; i < b.dims[d - 1]; ++i)
            for (int j = 0; j < a.dims[d - 1]; ++j)
                cone.boundary[d][i][b.dims[d] + j] = f[d - 1][i][j];
        // (-dA)-block
        if (d >= 2)
            for (int i = 0; i < a.dims[d - 2]; ++i)
                for (int j = 0; j < a.dims[d - 1]; ++j)
                    cone.boundary[d][b.dims[d - 1] + i][b.dims[d] + j] = -a.boundary[d - 1][i][j];
    }
    cone.validate();
    return cone;
}

/// Does f induce isomorphisms H_0..H_up_to?  Certified by vanishing of
/// the mapping cone's homology through degree up_to + 1, which is the
/// reliable range when up_to <= cap - 2.
inline bool induces_homology_iso_through(const SimplicialMap& f, int up_to) {
    int cap = std::min({f.dom.cap, f.cod.cap, f.top()});
    if (up_to > cap - 2) throw cap_error("induces_homology_iso_through: cap too small");
    ChainComplex a = chain_complex(f.dom);
    ChainComplex b = chain_complex(f.cod);
    ChainComplex cone = mapping_cone(a, b, chain_map_of(f));
    auto h = homology(cone, std::min(up_to + 1, cone.top()));
    for (const auto& g : h)
        if (!g.trivial()) return false;
    return true;
}

} // namespace cspcat
