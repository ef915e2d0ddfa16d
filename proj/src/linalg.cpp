#include "qsh/linalg.hpp"

#include "qsh/errors.hpp"

#include <algorithm>
#include <map>

namespace qsh::linalg {

SparseIntMatrix multiply(const SparseIntMatrix& a, const SparseIntMatrix& b) {
    SparseIntMatrix out;
    out.rows = a.rows;
    out.col.resize(b.col.size());
    for (size_t j = 0; j < b.col.size(); ++j) {
        std::map<int32_t, long long> acc;
        for (auto [k, bv] : b.col[j])
            for (auto [r, av] : a.col[k]) acc[r] += static_cast<long long>(av) * bv;
        for (auto& [r, v] : acc)
            if (v != 0) out.col[j].emplace_back(r, static_cast<int32_t>(v));
    }
    return out;
}

bool equal(const SparseIntMatrix& a, const SparseIntMatrix& b) {
    if (a.rows != b.rows || a.col.size() != b.col.size()) return false;
    for (size_t j = 0; j < a.col.size(); ++j)
        if (a.col[j] != b.col[j]) return false;
    return true;
}

bool is_zero(const SparseIntMatrix& a) {
    for (const auto& c : a.col)
        if (!c.empty()) return false;
    return true;
}

DenseInt DenseInt::identity(int n) {
    DenseInt m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

DenseInt DenseInt::from_sparse(const SparseIntMatrix& m) {
    DenseInt d(m.rows, m.cols());
    for (int j = 0; j < m.cols(); ++j)
        for (auto [r, v] : m.col[j]) d.at(r, j) = v;
    return d;
}

DenseInt dense_multiply(const DenseInt& a, const DenseInt& b) {
    DenseInt out(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            const bigint& v = a.at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < b.cols; ++j)
                if (b.at(k, j) != 0) out.at(i, j) += v * b.at(k, j);
        }
    return out;
}

std::vector<bigint> SnfResult::diagonal() const {
    std::vector<bigint> out;
    for (int i = 0; i < std::min(d.rows, d.cols); ++i)
        if (d.at(i, i) != 0) out.push_back(d.at(i, i));
    return out;
}

std::vector<bigint> SnfResult::torsion() const {
    std::vector<bigint> out;
    for (const auto& v : diagonal())
        if (v > 1) out.push_back(v);
    return out;
}

namespace {

struct SnfWorker {
    DenseInt m, u, v;
    bool track;

    SnfWorker(DenseInt mm, bool with_transforms)
        : m(std::move(mm)), track(with_transforms) {
        if (track) {
            u = DenseInt::identity(m.rows);
            v = DenseInt::identity(m.cols);
        }
    }

    void swap_rows(int a, int b) {
        if (a == b) return;
        for (int j = 0; j < m.cols; ++j) std::swap(m.at(a, j), m.at(b, j));
        if (track)
            for (int j = 0; j < u.cols; ++j) std::swap(u.at(a, j), u.at(b, j));
    }

    void swap_cols(int a, int b) {
        if (a == b) return;
        for (int i = 0; i < m.rows; ++i) std::swap(m.at(i, a), m.at(i, b));
        if (track)
            for (int i = 0; i < v.rows; ++i) std::swap(v.at(i, a), v.at(i, b));
    }

    void add_row(int dst, int src, const bigint& c) { // row_dst += c * row_src
        for (int j = 0; j < m.cols; ++j) m.at(dst, j) += c * m.at(src, j);
        if (track)
            for (int j = 0; j < u.cols; ++j) u.at(dst, j) += c * u.at(src, j);
    }

    void add_col(int dst, int src, const bigint& c) {
        for (int i = 0; i < m.rows; ++i) m.at(i, dst) += c * m.at(i, src);
        if (track)
            for (int i = 0; i < v.rows; ++i) v.at(i, dst) += c * v.at(i, src);
    }

    void negate_row(int r) {
        for (int j = 0; j < m.cols; ++j) m.at(r, j) = -m.at(r, j);
        if (track)
            for (int j = 0; j < u.cols; ++j) u.at(r, j) = -u.at(r, j);
    }

    // smallest-magnitude nonzero pivot in the trailing submatrix
    bool find_pivot(int t, int& pr, int& pc) {
        bool found = false;
        bigint best;
        for (int i = t; i < m.rows; ++i)
            for (int j = t; j < m.cols; ++j) {
                if (m.at(i, j) == 0) continue;
                bigint mag = abs(m.at(i, j));
                if (!found || mag < best) {
                    best = mag;
                    pr = i;
                    pc = j;
                    found = true;
                }
            }
        return found;
    }

    // quotient rounded to nearest: remainders at most half the divisor, which
    // keeps the gcd descent fast and the entries small
    static bigint nearest_quotient(const bigint& a, const bigint& b) {
        bigint q = a / b;
        bigint r = a - q * b;
        if (2 * abs(r) > abs(b)) q += ((r < 0) == (b < 0)) ? 1 : -1;
        return q;
    }

    void run() {
        const int steps = std::min(m.rows, m.cols);
        for (int t = 0; t < steps; ++t) {
            for (;;) {
                // re-select the global minimum every pass: remainders shrink
                // the pivot at least geometrically
                int pr, pc;
                if (!find_pivot(t, pr, pc)) return;
                swap_rows(t, pr);
                swap_cols(t, pc);
                bool remainder = false;
                for (int i = t + 1; i < m.rows; ++i) {
                    if (m.at(i, t) == 0) continue;
                    bigint q = nearest_quotient(m.at(i, t), m.at(t, t));
                    if (q != 0) add_row(i, t, -q);
                    remainder = remainder || m.at(i, t) != 0;
                }
                for (int j = t + 1; j < m.cols; ++j) {
                    if (m.at(t, j) == 0) continue;
                    bigint q = nearest_quotient(m.at(t, j), m.at(t, t));
                    if (q != 0) add_col(j, t, -q);
                    remainder = remainder || m.at(t, j) != 0;
                }
                if (remainder) continue;
                // row and column clean: enforce divisibility of the tail block
                bool fixed = false;
                for (int i = t + 1; i < m.rows && !fixed; ++i)
                    for (int j = t + 1; j < m.cols && !fixed; ++j)
                        if (m.at(i, j) % m.at(t, t) != 0) {
                            add_row(t, i, 1);
                            fixed = true;
                        }
                if (!fixed) break;
            }
            if (m.at(t, t) < 0) negate_row(t);
        }
    }
};

bigint unimodular_det_magnitude(const DenseInt& m) {
    auto diag = smith_normal_form(m, false, false).diagonal();
    bigint prod = 1;
    for (const auto& d : diag) prod *= d;
    if (static_cast<int>(diag.size()) != std::min(m.rows, m.cols)) return 0;
    return prod;
}

} // namespace

SnfResult smith_normal_form(DenseInt m, bool with_transforms, bool verify) {
    DenseInt original = m;
    SnfWorker w(std::move(m), with_transforms || verify);
    w.run();
    SnfResult res{std::move(w.m), std::move(w.u), std::move(w.v)};
    if (verify) {
        if (!(dense_multiply(dense_multiply(res.u, original), res.v).a == res.d.a))
            throw qsh_error("SNF postcondition failed: U*M*V != D");
        for (int i = 0; i < res.d.rows; ++i)
            for (int j = 0; j < res.d.cols; ++j)
                if (i != j && res.d.at(i, j) != 0) throw qsh_error("SNF postcondition failed: D not diagonal");
        auto diag = res.diagonal();
        for (size_t i = 0; i + 1 < diag.size(); ++i)
            if (diag[i + 1] % diag[i] != 0)
                throw qsh_error("SNF postcondition failed: divisibility chain broken");
        if (unimodular_det_magnitude(res.u) != 1 || unimodular_det_magnitude(res.v) != 1)
            throw qsh_error("SNF postcondition failed: transform not unimodular");
    }
    return res;
}

long long dense_rank(QMat m) {
    const size_t rows = m.size();
    const size_t cols = rows ? m[0].size() : 0;
    long long rank = 0;
    size_t row = 0;
    for (size_t c = 0; c < cols && row < rows; ++c) {
        size_t piv = row;
        while (piv < rows && m[piv][c].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(m[row], m[piv]);
        for (size_t i = 0; i < rows; ++i) {
            if (i == row || m[i][c].is_zero()) continue;
            bigrat coef = m[i][c] / m[row][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= coef * m[row][j];
        }
        ++row;
        ++rank;
    }
    return rank;
}

std::optional<std::vector<bigrat>> dense_solve(QMat a, std::vector<bigrat> b) {
    const size_t rows = a.size();
    const size_t cols = rows ? a[0].size() : 0;
    std::vector<size_t> pivot_col;
    size_t row = 0;
    for (size_t c = 0; c < cols && row < rows; ++c) {
        size_t piv = row;
        while (piv < rows && a[piv][c].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(a[row], a[piv]);
        std::swap(b[row], b[piv]);
        for (size_t i = 0; i < rows; ++i) {
            if (i == row || a[i][c].is_zero()) continue;
            bigrat coef = a[i][c] / a[row][c];
            for (size_t j = c; j < cols; ++j) a[i][j] -= coef * a[row][j];
            b[i] -= coef * b[row];
        }
        pivot_col.push_back(c);
        ++row;
    }
    for (size_t i = row; i < rows; ++i)
        if (!b[i].is_zero()) return std::nullopt;
    std::vector<bigrat> x(cols);
    for (size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = b[i] / a[i][pivot_col[i]];
    return x;
}

} // namespace qsh::linalg
