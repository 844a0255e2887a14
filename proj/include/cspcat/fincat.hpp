#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cspcat/error.hpp"

namespace cspcat {

/// An explicit finite category, optionally non-unital.  Objects and
/// morphisms are indices; composition is a total table on composable
/// pairs, validated for associativity (and unit laws when unital) on
/// construction via validate().
struct FinCategory {
    struct Mor {
        int src = 0;
        int tgt = 0;
        std::string name;
    };

    std::vector<std::string> objects;
    std::vector<Mor> morphisms;
    std::optional<std::vector<int>> identities; // per object, absent => non-unital

    bool unital() const { return identities.has_value(); }
    int num_objects() const { return static_cast<int>(objects.size()); }
    int num_morphisms() const { return static_cast<int>(morphisms.size()); }

    void set_composite(int g, int f, int gf) {
        comp_[key(g, f)] = gf;
    }

    bool composable(int g, int f) const {
        return morphisms[f].tgt == morphisms[g].src;
    }

    /// g . f  (requires tgt(f) == src(g))
    int compose(int g, int f) const {
        auto it = comp_.find(key(g, f));
        if (it == comp_.end()) throw input_error("fincat: pair not in composition table");
        return it->second;
    }

    std::vector<int> hom(int x, int y) const {
        std::vector<int> out;
        for (int m = 0; m < num_morphisms(); ++m)
            if (morphisms[m].src == x && morphisms[m].tgt == y) out.push_back(m);
        return out;
    }

    void validate() const {
        const int nm = num_morphisms();
        for (const auto& m : morphisms)
            if (m.src < 0 || m.src >= num_objects() || m.tgt < 0 || m.tgt >= num_objects())
                throw input_error("fincat: morphism endpoint out of range");
        // totality and well-typedness of the table
        for (int g = 0; g < nm; ++g)
            for (int f = 0; f < nm; ++f) {
                if (!composable(g, f)) {
                    if (comp_.count(key(g, f)))
                        throw input_error("fincat: composite defined for non-composable pair");
                    continue;
                }
                auto it = comp_.find(key(g, f));
                if (it == comp_.end())
                    throw input_error("fincat: missing composite of a composable pair");
                int gf = it->second;
                if (gf < 0 || gf >= nm) throw input_error("fincat: composite index out of range");
                if (morphisms[gf].src != morphisms[f].src || morphisms[gf].tgt != morphisms[g].tgt)
                    throw input_error("fincat: composite has wrong endpoints");
            }
        // associativity on all composable triples
        for (int h = 0; h < nm; ++h)
            for (int g = 0; g < nm; ++g) {
                if (!composable(h, g)) continue;
                int hg = compose(h, g);
                for (int f = 0; f < nm; ++f) {
                    if (!composable(g, f)) continue;
                    if (compose(hg, f) != compose(h, compose(g, f)))
                        throw input_error("fincat: composition not associative");
                }
            }
        if (identities) {
            if (static_cast<int>(identities->size()) != num_objects())
                throw input_error("fincat: identity list size mismatch");
            for (int x = 0; x < num_objects(); ++x) {
                int e = (*identities)[x];
                if (e < 0 || e >= nm || morphisms[e].src != x || morphisms[e].tgt != x)
                    throw input_error("fincat: bad identity morphism");
            }
            for (int f = 0; f < nm; ++f) {
                if (compose((*identities)[morphisms[f].tgt], f) != f)
                    throw input_error("fincat: left unit law fails");
                if (compose(f, (*identities)[morphisms[f].src]) != f)
                    throw input_error("fincat: right unit law fails");
            }
        }
    }

    const std::unordered_map<std::int64_t, int>& table() const { return comp_; }

private:
    static std::int64_t key(int g, int f) {
        return (static_cast<std::int64_t>(g) << 32) | static_cast<std::uint32_t>(f);
    }
    std::unordered_map<std::int64_t, int> comp_;
};

/// Reversal of all arrows; the composition table transposes.
inline FinCategory opposite_category(const FinCategory& c) {
    FinCategory op;
    op.objects = c.objects;
    op.morphisms = c.morphisms;
    for (auto& m : op.morphisms) std::swap(m.src, m.tgt);
    op.identities = c.identities;
    for (const auto& [k, v] : c.table()) {
        int g = static_cast<int>(k >> 32);
        int f = static_cast<int>(k & 0xffffffff);
        op.set_composite(f, g, v);
    }
    return op;
}

/// A functor between explicit finite categories, validated to preserve
/// endpoints, composition, and identities (when both ends are unital).
struct FunctorData {
    FinCategory domain;
    FinCategory codomain;
    std::vector<int> object_map;
    std::vector<int> morphism_map;

    void validate() const {
        if (static_cast<int>(object_map.size()) != domain.num_objects() ||
            static_cast<int>(morphism_map.size()) != domain.num_morphisms())
            throw input_error("functor: map size mismatch");
        for (int m = 0; m < domain.num_morphisms(); ++m) {
            const auto& mm = domain.morphisms[m];
            const auto& im = codomain.morphisms[morphism_map[m]];
            if (im.src != object_map[mm.src] || im.tgt != object_map[mm.tgt])
                throw input_error("functor: does not preserve endpoints");
        }
        for (int g = 0; g < domain.num_morphisms(); ++g)
            for (int f = 0; f < domain.num_morphisms(); ++f) {
                if (!domain.composable(g, f)) continue;
                if (morphism_map[domain.compose(g, f)] !=
                    codomain.compose(morphism_map[g], morphism_map[f]))
                    throw input_error("functor: does not preserve composition");
            }
        if (domain.unital() && codomain.unital())
            for (int x = 0; x < domain.num_objects(); ++x)
                if (morphism_map[(*domain.identities)[x]] !=
                    (*codomain.identities)[object_map[x]])
                    throw input_error("functor: does not preserve identities");
    }
};

inline FunctorData opposite_functor(const FunctorData& p) {
    FunctorData op;
    op.domain = opposite_category(p.domain);
    op.codomain = opposite_category(p.codomain);
    op.object_map = p.object_map;
    op.morphism_map = p.morphism_map;
    return op;
}

inline FunctorData identity_functor(const FinCategory& c) {
    FunctorData f;
    f.domain = c;
    f.codomain = c;
    f.object_map.resize(c.num_objects());
    for (int i = 0; i < c.num_objects(); ++i) f.object_map[i] = i;
    f.morphism_map.resize(c.num_morphisms());
    for (int i = 0; i < c.num_morphisms(); ++i) f.morphism_map[i] = i;
    return f;
}

/// Genuine fiber {b} x_B E: objects strictly over b, morphisms strictly
/// over id_b.  Requires a unital codomain.  Index vectors record the
/// embedding into the ambient category.
struct GenuineFiber {
    FinCategory cat;
    std::vector<int> object_index;   // fiber object -> domain object
    std::vector<int> morphism_index; // fiber morphism -> domain morphism
};

inline GenuineFiber genuine_fiber(const FunctorData& p, int b) {
    if (b < 0 || b >= p.codomain.num_objects()) throw input_error("genuine_fiber: no such object");
    if (!p.codomain.unital()) throw input_error("genuine_fiber: codomain must be unital");
    const int idb = (*p.codomain.identities)[b];
    GenuineFiber fib;
    std::vector<int> obj_pos(p.domain.num_objects(), -1);
    for (int x = 0; x < p.domain.num_objects(); ++x)
        if (p.object_map[x] == b) {
            obj_pos[x] = static_cast<int>(fib.object_index.size());
            fib.object_index.push_back(x);
            fib.cat.objects.push_back(p.domain.objects[x]);
        }
    std::vector<int> mor_pos(p.domain.num_morphisms(), -1);
    for (int m = 0; m < p.domain.num_morphisms(); ++m)
        if (p.morphism_map[m] == idb) {
            mor_pos[m] = static_cast<int>(fib.morphism_index.size());
            fib.morphism_index.push_back(m);
            const auto& mm = p.domain.morphisms[m];
            fib.cat.morphisms.push_back({obj_pos[mm.src], obj_pos[mm.tgt], mm.name});
        }
    for (int g : fib.morphism_index)
        for (int f : fib.morphism_index)
            if (p.domain.composable(g, f))
                fib.cat.set_composite(mor_pos[g], mor_pos[f], mor_pos[p.domain.compose(g, f)]);
    if (p.domain.unital()) {
        std::vector<int> ids;
        for (int x : fib.object_index) ids.push_back(mor_pos[(*p.domain.identities)[x]]);
        fib.cat.identities = std::move(ids);
    }
    fib.cat.validate();
    return fib;
}

/// Discrete locally Cartesian test: for every x' over P(src f),
/// post-composition with f must map {g: x' -> src f over id} bijectively
/// onto {h: x' -> tgt f over P(f)}.
inline bool is_locally_cartesian_morphism(const FunctorData& p, int f) {
    if (!p.codomain.unital())
        throw input_error("is_locally_cartesian_morphism: codomain must be unital");
    const auto& mf = p.domain.morphisms[f];
    const int base_src = p.object_map[mf.src];
    const int id_src = (*p.codomain.identities)[base_src];
    const int pf = p.morphism_map[f];
    for (int x2 = 0; x2 < p.domain.num_objects(); ++x2) {
        if (p.object_map[x2] != base_src) continue;
        std::vector<int> images;
        for (int g : p.domain.hom(x2, mf.src))
            if (p.morphism_map[g] == id_src) images.push_back(p.domain.compose(f, g));
        std::vector<int> target;
        for (int h : p.domain.hom(x2, mf.tgt))
            if (p.morphism_map[h] == pf) target.push_back(h);
        // bijectivity: injective on images and exactly hitting the target set
        std::sort(images.begin(), images.end());
        if (std::adjacent_find(images.begin(), images.end()) != images.end()) return false;
        std::sort(target.begin(), target.end());
        if (images != target) return false;
    }
    return true;
}

inline bool is_locally_cocartesian_morphism(const FunctorData& p, int f) {
    return is_locally_cartesian_morphism(opposite_functor(p), f);
}

/// Existence of locally Cartesian lifts: for every k: a -> b downstairs
/// and every y over b there must be some locally Cartesian f: x -> y
/// with P(f) = k.
inline bool is_locally_cartesian_fibration(const FunctorData& p) {
    for (int k = 0; k < p.codomain.num_morphisms(); ++k) {
        const int b = p.codomain.morphisms[k].tgt;
        for (int y = 0; y < p.domain.num_objects(); ++y) {
            if (p.object_map[y] != b) continue;
            bool found = false;
            for (int f = 0; f < p.domain.num_morphisms() && !found; ++f)
                if (p.domain.morphisms[f].tgt == y && p.morphism_map[f] == k &&
                    is_locally_cartesian_morphism(p, f))
                    found = true;
            if (!found) return false;
        }
    }
    return true;
}

inline bool is_locally_cocartesian_fibration(const FunctorData& p) {
    return is_locally_cartesian_fibration(opposite_functor(p));
}

/// The object t with |hom(x,t)| = 1 for all x, when there is exactly one.
inline std::optional<int> has_terminal(const FinCategory& c) {
    std::optional<int> found;
    for (int t = 0; t < c.num_objects(); ++t) {
        bool ok = true;
        for (int x = 0; ok && x < c.num_objects(); ++x)
            if (c.hom(x, t).size() != 1) ok = false;
        if (ok) {
            if (found) return std::nullopt; // not unique
            found = t;
        }
    }
    return found;
}

} // namespace cspcat
