#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

namespace perfhom {

/// Disjoint-set forest with path halving and union by size. Deterministic:
/// the representative of a set is always its smallest-index member's root,
/// and `compress_labels` numbers components by first appearance.
class DisjointSets {
  public:
    explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t a) {
        while (parent_[a] != a) {
            parent_[a] = parent_[parent_[a]];
            a = parent_[a];
        }
        return a;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
    }

    bool same(std::size_t a, std::size_t b) { return find(a) == find(b); }

    /// Labels 0..count-1 assigned in order of first appearance over [0, n).
    std::vector<int> compress_labels() {
        std::vector<int> label(parent_.size(), -1);
        int next = 0;
        for (std::size_t i = 0; i < parent_.size(); ++i) {
            const std::size_t r = find(i);
            if (label[r] < 0) label[r] = next++;
            label[i] = label[r];
        }
        return label;
    }

    int component_count() {
        int count = 0;
        for (std::size_t i = 0; i < parent_.size(); ++i) {
            if (find(i) == i) ++count;
        }
        return count;
    }

  private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

}  // namespace perfhom
