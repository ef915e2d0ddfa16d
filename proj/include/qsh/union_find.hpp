#pragma once

#include <numeric>
#include <vector>

namespace qsh {

class UnionFind {
  public:
    explicit UnionFind(int n) : parent_(n), rank_(n, 0), classes_(n) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
        --classes_;
        return true;
    }

    bool same(int a, int b) { return find(a) == find(b); }
    int class_count() const { return classes_; }
    int size() const { return static_cast<int>(parent_.size()); }

  private:
    std::vector<int> parent_;
    std::vector<int> rank_;
    int classes_;
};

} // namespace qsh
