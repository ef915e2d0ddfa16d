#pragma once

#include "qsh/scalar.hpp"

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

namespace qsh::linalg {

// sparse integer matrix, column-major; entries sorted by row, nonzero
struct SparseIntMatrix {
    int rows = 0;
    std::vector<std::vector<std::pair<int32_t, int32_t>>> col;

    int cols() const { return static_cast<int>(col.size()); }
};

// C = A * B (small coefficients; used for chain-map and d^2 checks)
SparseIntMatrix multiply(const SparseIntMatrix& a, const SparseIntMatrix& b);
bool equal(const SparseIntMatrix& a, const SparseIntMatrix& b);
bool is_zero(const SparseIntMatrix& a);

// ---------------------------------------------------------------------------
// fields

struct QField {
    using elem = bigrat;
    static elem zero() { return {}; }
    static elem from_int(long long v) { return bigrat(v); }
    static bool is_zero(const elem& a) { return a.is_zero(); }
    static elem add(const elem& a, const elem& b) { return a + b; }
    static elem mul(const elem& a, const elem& b) { return a * b; }
    static elem neg(const elem& a) { return -a; }
    static elem div(const elem& a, const elem& b) { return a / b; }
};

struct PField {
    uint64_t p = 2;
    using elem = uint64_t;
    elem zero() const { return 0; }
    elem from_int(long long v) const {
        long long m = v % static_cast<long long>(p);
        return m < 0 ? m + p : m;
    }
    bool is_zero(const elem& a) const { return a == 0; }
    elem add(const elem& a, const elem& b) const { return (a + b) % p; }
    elem mul(const elem& a, const elem& b) const {
        return static_cast<elem>((static_cast<unsigned __int128>(a) * b) % p);
    }
    elem neg(const elem& a) const { return a == 0 ? 0 : p - a; }
    elem inv(const elem& a) const { // p prime
        elem r = 1, b = a;
        for (uint64_t e = p - 2; e; e >>= 1) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
        }
        return r;
    }
    elem div(const elem& a, const elem& b) const { return mul(a, inv(b)); }
};

template <class F> using SCol = std::vector<std::pair<int32_t, typename F::elem>>;

template <class F> SCol<F> to_field_col(const F& f, const std::vector<std::pair<int32_t, int32_t>>& c) {
    SCol<F> out;
    out.reserve(c.size());
    for (auto [r, v] : c) {
        auto fv = f.from_int(v);
        if (!f.is_zero(fv)) out.emplace_back(r, fv);
    }
    return out;
}

// a + coef * b, rows sorted
template <class F>
SCol<F> axpy(const F& f, const SCol<F>& a, const typename F::elem& coef, const SCol<F>& b) {
    SCol<F> out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            auto v = f.mul(coef, b[j].second);
            if (!f.is_zero(v)) out.emplace_back(b[j].first, v);
            ++j;
        } else {
            auto v = f.add(a[i].second, f.mul(coef, b[j].second));
            if (!f.is_zero(v)) out.emplace_back(a[i].first, v);
            ++i, ++j;
        }
    }
    return out;
}

// Incremental column echelon: pivots keyed by their maximal row.
template <class F> class ColumnReducer {
  public:
    explicit ColumnReducer(const F& f) : f_(f) {}

    // reduces c against stored pivots; keeps it as a new pivot if nonzero
    bool absorb(SCol<F> c) {
        while (!c.empty()) {
            const int32_t piv = c.back().first;
            auto it = pivots_.find(piv);
            if (it == pivots_.end()) {
                pivots_.emplace(piv, std::move(c));
                ++rank_;
                return true;
            }
            const SCol<F>& p = it->second;
            auto coef = f_.neg(f_.div(c.back().second, p.back().second));
            c = axpy(f_, c, coef, p);
        }
        return false;
    }

    long long rank() const { return rank_; }

  private:
    const F& f_;
    std::unordered_map<int32_t, SCol<F>> pivots_;
    long long rank_ = 0;
};

template <class F> long long rank_of(const F& f, const SparseIntMatrix& m) {
    ColumnReducer<F> red(f);
    for (const auto& c : m.col) red.absorb(to_field_col(f, c));
    return red.rank();
}

// kernel of the column matrix, as combination vectors over the columns
template <class F> std::vector<SCol<F>> kernel_basis(const F& f, const SparseIntMatrix& m) {
    struct Aug {
        SCol<F> main, combo;
    };
    std::unordered_map<int32_t, Aug> pivots;
    std::vector<SCol<F>> kernel;
    for (int32_t j = 0; j < m.cols(); ++j) {
        Aug cur{to_field_col(f, m.col[j]), {{j, f.from_int(1)}}};
        while (!cur.main.empty()) {
            const int32_t piv = cur.main.back().first;
            auto it = pivots.find(piv);
            if (it == pivots.end()) break;
            auto coef = f.neg(f.div(cur.main.back().second, it->second.main.back().second));
            cur.main = axpy(f, cur.main, coef, it->second.main);
            cur.combo = axpy(f, cur.combo, coef, it->second.combo);
        }
        if (cur.main.empty())
            kernel.push_back(std::move(cur.combo));
        else
            pivots.emplace(cur.main.back().first, std::move(cur));
    }
    return kernel;
}

// y = M * x for a sparse combination vector x over M's columns
template <class F> SCol<F> apply(const F& f, const SparseIntMatrix& m, const SCol<F>& x) {
    SCol<F> acc;
    for (auto& [j, coef] : x) acc = axpy(f, acc, coef, to_field_col(f, m.col[j]));
    return acc;
}

// ---------------------------------------------------------------------------
// dense integer matrices and Smith normal form

struct DenseInt {
    int rows = 0, cols = 0;
    std::vector<bigint> a;

    DenseInt() = default;
    DenseInt(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
    bigint& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    const bigint& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
    static DenseInt identity(int n);
    static DenseInt from_sparse(const SparseIntMatrix& m);
};

DenseInt dense_multiply(const DenseInt& a, const DenseInt& b);

struct SnfResult {
    DenseInt d, u, v; // u * m * v = d, u and v unimodular, d diagonal with
                      // divisibility chain d1 | d2 | ...
    std::vector<bigint> diagonal() const;
    std::vector<bigint> torsion() const; // invariant factors > 1
};

// `verify` re-checks the product identity, unimodularity and the chain
// (the postcondition check used by tests and verify mode)
SnfResult smith_normal_form(DenseInt m, bool with_transforms = true, bool verify = false);

// ---------------------------------------------------------------------------
// small dense rational helpers (homology coordinates)

using QMat = std::vector<std::vector<bigrat>>; // row-major

long long dense_rank(QMat m);
// one solution of A x = b, if consistent
std::optional<std::vector<bigrat>> dense_solve(QMat a, std::vector<bigrat> b);

} // namespace qsh::linalg
