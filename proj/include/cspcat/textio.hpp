#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "cspcat/cospan.hpp"
#include "cspcat/error.hpp"
#include "cspcat/fincat.hpp"
#include "cspcat/finset.hpp"
#include "cspcat/homology.hpp"
#include "cspcat/simplicial.hpp"

namespace cspcat {

namespace detail {

/// Whitespace-skipping cursor over a one-line textual form.
class Cursor {
public:
    explicit Cursor(const std::string& s) : s_(s) {}

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool done() {
        skip();
        return pos_ >= s_.size();
    }

    char peek() {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    void expect(const std::string& lit) {
        skip();
        if (s_.compare(pos_, lit.size(), lit) != 0)
            throw input_error("parse error: expected '" + lit + "' at position " +
                              std::to_string(pos_));
        pos_ += lit.size();
    }

    bool accept(const std::string& lit) {
        skip();
        if (s_.compare(pos_, lit.size(), lit) != 0) return false;
        pos_ += lit.size();
        return true;
    }

    int integer() {
        skip();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) throw input_error("parse error: expected integer at position " +
                                             std::to_string(start));
        return std::stoi(s_.substr(start, pos_ - start));
    }

private:
    const std::string& s_;
    size_t pos_ = 0;
};

inline std::vector<int> bracket_list(Cursor& c) {
    std::vector<int> out;
    c.expect("[");
    if (!c.accept("]")) {
        out.push_back(c.integer());
        while (c.accept(",")) out.push_back(c.integer());
        c.expect("]");
    }
    return out;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Partitions: `n=5 R={{1,2,3},{4,5}}`
// ---------------------------------------------------------------------------

inline std::string print_partition(const Partition& p) {
    std::ostringstream os;
    os << "n=" << p.size() << " R={";
    bool first_block = true;
    for (const auto& blk : p.blocks()) {
        if (!first_block) os << ",";
        first_block = false;
        os << "{";
        for (size_t i = 0; i < blk.size(); ++i) {
            if (i) os << ",";
            os << blk[i];
        }
        os << "}";
    }
    os << "}";
    return os.str();
}

inline Partition parse_partition_body(detail::Cursor& c) {
    c.expect("n=");
    int n = c.integer();
    c.expect("R=");
    c.expect("{");
    std::vector<std::vector<int>> blocks;
    if (!c.accept("}")) {
        do {
            c.expect("{");
            std::vector<int> blk;
            blk.push_back(c.integer());
            while (c.accept(",")) blk.push_back(c.integer());
            c.expect("}");
            blocks.push_back(std::move(blk));
        } while (c.accept(","));
        c.expect("}");
    }
    return Partition::from_blocks(n, blocks);
}

inline Partition parse_partition(const std::string& s) {
    detail::Cursor c(s);
    Partition p = parse_partition_body(c);
    if (!c.done()) throw input_error("parse error: trailing input after partition");
    return p;
}

// ---------------------------------------------------------------------------
// Cospans: `csp a=1 b=1 n=3 R={{1,2},{3}} la=[1] lb=[2]`
// (leg entries are 1-based canonical block indices)
// ---------------------------------------------------------------------------

inline std::string print_cospan(const Cospan& f) {
    std::ostringstream os;
    os << "csp a=" << f.a << " b=" << f.b << " "
       << print_partition(f.carrier) << " la=[";
    for (int i = 0; i < f.a; ++i) {
        if (i) os << ",";
        os << f.leg_a[i] + 1;
    }
    os << "] lb=[";
    for (int i = 0; i < f.b; ++i) {
        if (i) os << ",";
        os << f.leg_b[i] + 1;
    }
    os << "]";
    return os.str();
}

inline Cospan parse_cospan(const std::string& s) {
    detail::Cursor c(s);
    c.expect("csp");
    Cospan f;
    c.expect("a=");
    f.a = c.integer();
    c.expect("b=");
    f.b = c.integer();
    f.carrier = parse_partition_body(c);
    c.expect("la=");
    for (int v : detail::bracket_list(c)) f.leg_a.push_back(v - 1);
    c.expect("lb=");
    for (int v : detail::bracket_list(c)) f.leg_b.push_back(v - 1);
    if (!c.done()) throw input_error("parse error: trailing input after cospan");
    f.validate();
    return f;
}

// ---------------------------------------------------------------------------
// Canonical classes: `cls a=1 b=1 n=2 R={{1},{2}} closed=0`
// (R is the partition of A u B with A = 1..a and B = a+1..a+b)
// ---------------------------------------------------------------------------

inline std::string print_class(const CanonicalClass& c) {
    std::ostringstream os;
    os << "cls a=" << c.a << " b=" << c.b << " " << print_partition(c.legs)
       << " closed=" << c.closed;
    return os.str();
}

inline CanonicalClass parse_class(const std::string& s) {
    detail::Cursor c(s);
    c.expect("cls");
    CanonicalClass cc;
    c.expect("a=");
    cc.a = c.integer();
    c.expect("b=");
    cc.b = c.integer();
    cc.legs = parse_partition_body(c);
    c.expect("closed=");
    cc.closed = c.integer();
    if (!c.done()) throw input_error("parse error: trailing input after class");
    if (cc.legs.size() != cc.a + cc.b)
        throw input_error("parse error: legs partition must cover a+b elements");
    if (cc.closed < 0) throw input_error("parse error: closed count must be nonnegative");
    return cc;
}

// ---------------------------------------------------------------------------
// Functor assignment files: one `obj x -> u` or `mor f -> g` line per
// generator, resolved against already-parsed domain and codomain
// categories.  '#' starts a comment.
// ---------------------------------------------------------------------------

inline std::string print_functor_map(const FunctorData& p) {
    std::ostringstream os;
    auto mor_name = [](const FinCategory& c, int m) {
        return c.morphisms[m].name.empty() ? "m" + std::to_string(m) : c.morphisms[m].name;
    };
    for (int x = 0; x < p.domain.num_objects(); ++x)
        os << "obj " << p.domain.objects[x] << " -> " << p.codomain.objects[p.object_map[x]]
           << "\n";
    for (int m = 0; m < p.domain.num_morphisms(); ++m)
        os << "mor " << mor_name(p.domain, m) << " -> "
           << mor_name(p.codomain, p.morphism_map[m]) << "\n";
    return os.str();
}

inline FunctorData parse_functor_map(const FinCategory& dom, const FinCategory& cod,
                                     const std::string& text) {
    FunctorData p;
    p.domain = dom;
    p.codomain = cod;
    p.object_map.assign(dom.num_objects(), -1);
    p.morphism_map.assign(dom.num_morphisms(), -1);
    auto find_obj = [](const FinCategory& c, const std::string& n) {
        for (int x = 0; x < c.num_objects(); ++x)
            if (c.objects[x] == n) return x;
        return -1;
    };
    auto find_mor = [](const FinCategory& c, const std::string& n) {
        for (int m = 0; m < c.num_morphisms(); ++m) {
            std::string nm =
                c.morphisms[m].name.empty() ? "m" + std::to_string(m) : c.morphisms[m].name;
            if (nm == n) return m;
        }
        return -1;
    };
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string kind, from, arrow, to;
        if (!(ls >> kind)) continue;
        if (kind[0] == '#') continue;
        if (!(ls >> from >> arrow >> to) || arrow != "->")
            throw input_error("line " + std::to_string(lineno) +
                              ": expected 'obj x -> u' or 'mor f -> g'");
        if (kind == "obj") {
            int x = find_obj(dom, from), u = find_obj(cod, to);
            if (x < 0)
                throw input_error("line " + std::to_string(lineno) + ": unknown domain object '" +
                                  from + "'");
            if (u < 0)
                throw input_error("line " + std::to_string(lineno) +
                                  ": unknown codomain object '" + to + "'");
            p.object_map[x] = u;
        } else if (kind == "mor") {
            int f = find_mor(dom, from), g = find_mor(cod, to);
            if (f < 0)
                throw input_error("line " + std::to_string(lineno) +
                                  ": unknown domain morphism '" + from + "'");
            if (g < 0)
                throw input_error("line " + std::to_string(lineno) +
                                  ": unknown codomain morphism '" + to + "'");
            p.morphism_map[f] = g;
        } else {
            throw input_error("line " + std::to_string(lineno) + ": unrecognized line");
        }
    }
    for (int x = 0; x < dom.num_objects(); ++x)
        if (p.object_map[x] < 0)
            throw input_error("functor map: object '" + dom.objects[x] + "' has no image");
    for (int m = 0; m < dom.num_morphisms(); ++m)
        if (p.morphism_map[m] < 0) {
            std::string nm = dom.morphisms[m].name.empty() ? "m" + std::to_string(m)
                                                           : dom.morphisms[m].name;
            throw input_error("functor map: morphism '" + nm + "' has no image");
        }
    p.validate();
    return p;
}

// ---------------------------------------------------------------------------
// Finite categories:
//   objects: x y z
//   f: x -> y
//   h = g * f
//   id(x) = m
// ---------------------------------------------------------------------------

inline std::string print_fincat(const FinCategory& c) {
    std::ostringstream os;
    os << "objects:";
    for (const auto& o : c.objects) os << " " << o;
    os << "\n";
    auto mor_name = [&](int m) {
        return c.morphisms[m].name.empty() ? "m" + std::to_string(m) : c.morphisms[m].name;
    };
    for (int m = 0; m < c.num_morphisms(); ++m)
        os << mor_name(m) << ": " << c.objects[c.morphisms[m].src] << " -> "
           << c.objects[c.morphisms[m].tgt] << "\n";
    for (int g = 0; g < c.num_morphisms(); ++g)
        for (int f = 0; f < c.num_morphisms(); ++f)
            if (c.composable(g, f))
                os << mor_name(c.compose(g, f)) << " = " << mor_name(g) << " * "
                   << mor_name(f) << "\n";
    if (c.unital())
        for (int x = 0; x < c.num_objects(); ++x)
            os << "id(" << c.objects[x] << ") = " << mor_name((*c.identities)[x]) << "\n";
    return os.str();
}

inline FinCategory parse_fincat(const std::string& text) {
    FinCategory cat;
    std::map<std::string, int> obj_ix, mor_ix;
    std::optional<std::vector<int>> ids;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool seen_objects = false;
    auto fail = [&](const std::string& msg) -> void {
        throw input_error("line " + std::to_string(lineno) + ": " + msg);
    };
    auto tokenize = [](const std::string& l) {
        std::istringstream ls(l);
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t) toks.push_back(t);
        return toks;
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = tokenize(line);
        if (toks.empty() || toks[0][0] == '#') continue;
        if (!seen_objects) {
            if (toks[0] != "objects:") fail("expected 'objects:' first");
            for (size_t i = 1; i < toks.size(); ++i) {
                if (obj_ix.count(toks[i])) fail("duplicate object '" + toks[i] + "'");
                obj_ix[toks[i]] = static_cast<int>(cat.objects.size());
                cat.objects.push_back(toks[i]);
            }
            seen_objects = true;
            continue;
        }
        if (toks.size() == 4 && toks[0].back() == ':' && toks[2] == "->") {
            std::string name = toks[0].substr(0, toks[0].size() - 1);
            if (name.empty()) fail("empty morphism name");
            if (mor_ix.count(name)) fail("duplicate morphism '" + name + "'");
            auto s = obj_ix.find(toks[1]);
            auto t = obj_ix.find(toks[3]);
            if (s == obj_ix.end()) fail("unknown object '" + toks[1] + "'");
            if (t == obj_ix.end()) fail("unknown object '" + toks[3] + "'");
            mor_ix[name] = static_cast<int>(cat.morphisms.size());
            cat.morphisms.push_back({s->second, t->second, name});
            continue;
        }
        if (toks.size() == 5 && toks[1] == "=" && toks[3] == "*") {
            auto gf = mor_ix.find(toks[0]);
            auto g = mor_ix.find(toks[2]);
            auto f = mor_ix.find(toks[4]);
            if (gf == mor_ix.end()) fail("unknown morphism '" + toks[0] + "'");
            if (g == mor_ix.end()) fail("unknown morphism '" + toks[2] + "'");
            if (f == mor_ix.end()) fail("unknown morphism '" + toks[4] + "'");
            if (!cat.composable(g->second, f->second)) fail("pair is not composable");
            cat.set_composite(g->second, f->second, gf->second);
            continue;
        }
        if (toks.size() == 3 && toks[1] == "=" && toks[0].rfind("id(", 0) == 0 &&
            toks[0].back() == ')') {
            std::string obj = toks[0].substr(3, toks[0].size() - 4);
            auto x = obj_ix.find(obj);
            auto m = mor_ix.find(toks[2]);
            if (x == obj_ix.end()) fail("unknown object '" + obj + "'");
            if (m == mor_ix.end()) fail("unknown morphism '" + toks[2] + "'");
            if (!ids) ids = std::vector<int>(cat.objects.size(), -1);
            if ((*ids)[x->second] != -1) fail("duplicate identity for '" + obj + "'");
            (*ids)[x->second] = m->second;
            continue;
        }
        fail("unrecognized line");
    }
    if (!seen_objects) throw input_error("line 0: missing 'objects:' header");
    if (ids) {
        for (size_t x = 0; x < ids->size(); ++x)
            if ((*ids)[x] == -1)
                throw input_error("line " + std::to_string(lineno) + ": object '" +
                                  cat.objects[x] + "' has no identity");
        cat.identities = std::move(ids);
    }
    cat.validate();
    return cat;
}

// ---------------------------------------------------------------------------
// Simplicial-set dump (printer only; deterministic)
// ---------------------------------------------------------------------------

inline std::string print_simplicial(const SimplicialSet& x) {
    std::ostringstream os;
    os << "cap=" << x.cap << " degeneracies=" << (x.with_degen ? "yes" : "no")
       << " truncated=" << (x.truncated_marker ? "yes" : "no") << "\n";
    auto row = [&](const std::vector<int>& v) {
        os << "[";
        for (size_t i = 0; i < v.size(); ++i) {
            if (i) os << " ";
            os << v[i];
        }
        os << "]";
    };
    for (int d = 0; d <= x.cap; ++d) {
        os << "dim " << d << ": cells=" << x.counts[d] << "\n";
        if (d >= 1)
            for (int i = 0; i <= d; ++i) {
                os << "  d" << i << " = ";
                row(x.face[d][i]);
                os << "\n";
            }
        if (x.with_degen && d < x.cap)
            for (int i = 0; i <= d; ++i) {
                os << "  s" << i << "(dim " << d << ") = ";
                row(x.degen[d][i]);
                os << "\n";
            }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Homology report: one line per degree `H_d = Z^b + Z/t1 + ...`
// ---------------------------------------------------------------------------

inline std::string print_homology_line(int d, const HomologyGroup& h) {
    std::ostringstream os;
    os << "H_" << d << " = ";
    bool first = true;
    if (h.betti == 1) {
        os << "Z";
        first = false;
    } else if (h.betti > 1) {
        os << "Z^" << h.betti;
        first = false;
    }
    for (const bigint& t : h.torsion) {
        if (!first) os << " + ";
        os << "Z/" << t;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

} // namespace cspcat
