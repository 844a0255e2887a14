#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <utility>
#include <vector>

#include "cspcat/error.hpp"

namespace cspcat {

/// An equivalence relation on {1..n} in canonical block form.
///
/// Internally a partition is stored as a first-occurrence labelling:
/// label[i] is the block index of element i+1, and block indices appear
/// in increasing order of their least element.  This labelling is in
/// bijection with "blocks sorted by minimum element, elements sorted",
/// so equality of labellings is equality of canonical forms.
class Partition {
public:
    Partition() = default;

    /// Discrete partition on {1..n}.
    static Partition discrete(int n) {
        Partition p;
        p.n_ = n;
        p.label_.resize(n);
        std::iota(p.label_.begin(), p.label_.end(), 0);
        p.num_blocks_ = n;
        return p;
    }

    /// From an arbitrary labelling of elements 1..n (values need not be
    /// canonical; they are relabelled by first occurrence).
    static Partition from_labels(std::vector<int> raw) {
        Partition p;
        p.n_ = static_cast<int>(raw.size());
        p.label_.assign(p.n_, -1);
        std::vector<int> remap;
        for (int i = 0; i < p.n_; ++i) {
            int r = raw[i];
            int found = -1;
            for (int j = 0; j < i; ++j)
                if (raw[j] == r) { found = p.label_[j]; break; }
            if (found < 0) {
                found = static_cast<int>(remap.size());
                remap.push_back(r);
            }
            p.label_[i] = found;
        }
        p.num_blocks_ = static_cast<int>(remap.size());
        return p;
    }

    /// From explicit blocks (validated: disjoint, covering {1..n}).
    static Partition from_blocks(int n, const std::vector<std::vector<int>>& blocks) {
        std::vector<int> raw(n, -1);
        int b = 0;
        for (const auto& blk : blocks) {
            if (blk.empty()) throw input_error("partition: empty block");
            for (int e : blk) {
                if (e < 1 || e > n) throw input_error("partition: element out of range");
                if (raw[e - 1] != -1) throw input_error("partition: overlapping blocks");
                raw[e - 1] = b;
            }
            ++b;
        }
        for (int i = 0; i < n; ++i)
            if (raw[i] == -1) throw input_error("partition: blocks do not cover {1..n}");
        return from_labels(std::move(raw));
    }

    int size() const { return n_; }
    int block_count() const { return num_blocks_; }

    /// Block index (0-based, canonical order) of element i, 1 <= i <= n.
    int class_of(int i) const {
        if (i < 1 || i > n_) throw input_error("class_of: element out of range");
        return label_[i - 1];
    }

    const std::vector<int>& labels() const { return label_; }

    /// Canonical block lists (sorted internally, sorted by least element).
    std::vector<std::vector<int>> blocks() const {
        std::vector<std::vector<int>> out(num_blocks_);
        for (int i = 0; i < n_; ++i) out[label_[i]].push_back(i + 1);
        return out;
    }

    friend bool operator==(const Partition& a, const Partition& b) {
        return a.n_ == b.n_ && a.label_ == b.label_;
    }
    friend bool operator!=(const Partition& a, const Partition& b) { return !(a == b); }
    friend bool operator<(const Partition& a, const Partition& b) {
        if (a.n_ != b.n_) return a.n_ < b.n_;
        return a.label_ < b.label_;
    }

private:
    int n_ = 0;
    int num_blocks_ = 0;
    std::vector<int> label_;
};

namespace detail {

/// Plain union-find with path compression on {0..n-1}.
class UnionFind {
public:
    explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    int find(int x) {
        int r = x;
        while (parent_[r] != r) r = parent_[r];
        while (parent_[x] != r) { int nx = parent_[x]; parent_[x] = r; x = nx; }
        return r;
    }

    // Returns true if the two were in distinct classes.
    bool unite(int a, int b) {
        a = find(a); b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b);
        parent_[b] = a; // keep the least representative as root
        return true;
    }

private:
    std::vector<int> parent_;
};

} // namespace detail

/// Smallest equivalence relation on {1..n} containing the given pairs.
inline Partition generate_equivalence(int n, const std::vector<std::pair<int, int>>& pairs) {
    if (n < 0) throw input_error("generate_equivalence: negative carrier size");
    detail::UnionFind uf(n);
    for (auto [i, j] : pairs) {
        if (i < 1 || i > n || j < 1 || j > n)
            throw input_error("generate_equivalence: index out of range");
        uf.unite(i - 1, j - 1);
    }
    std::vector<int> raw(n);
    for (int i = 0; i < n; ++i) raw[i] = uf.find(i);
    return Partition::from_labels(std::move(raw));
}

inline int class_of(const Partition& p, int i) { return p.class_of(i); }

} // namespace cspcat
