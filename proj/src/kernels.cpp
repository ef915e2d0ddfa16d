#include "qsh/kernels.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qsh::kernels {

AdjList AdjList::from_arrows(int n, const std::vector<std::pair<int, int>>& arrows) {
    AdjList g;
    g.n = n;
    g.offsets.assign(n + 1, 0);
    for (auto [u, v] : arrows) {
        (void)v;
        ++g.offsets[u + 1];
    }
    for (int i = 0; i < n; ++i) g.offsets[i + 1] += g.offsets[i];
    g.targets.resize(arrows.size());
    std::vector<int> cursor(g.offsets.begin(), g.offsets.end() - 1);
    for (auto [u, v] : arrows) g.targets[cursor[u]++] = v;
    for (int u = 0; u < n; ++u)
        std::sort(g.targets.begin() + g.offsets[u], g.targets.begin() + g.offsets[u + 1]);
    return g;
}

namespace {

void bfs_row(const AdjList& g, int src, long long* row, std::vector<int>& queue) {
    std::fill(row, row + g.n, UNREACHABLE);
    row[src] = 0;
    queue.clear();
    queue.push_back(src);
    for (size_t head = 0; head < queue.size(); ++head) {
        int u = queue[head];
        for (int k = g.offsets[u]; k < g.offsets[u + 1]; ++k) {
            int v = g.targets[k];
            if (row[v] == UNREACHABLE) {
                row[v] = row[u] + 1;
                queue.push_back(v);
            }
        }
    }
}

} // namespace

std::vector<long long> apsp_bfs_serial(const AdjList& g) {
    std::vector<long long> out(static_cast<size_t>(g.n) * g.n);
    std::vector<int> queue;
    queue.reserve(g.n);
    for (int s = 0; s < g.n; ++s) bfs_row(g, s, out.data() + static_cast<size_t>(s) * g.n, queue);
    return out;
}

std::vector<long long> apsp_bfs(const AdjList& g) {
    std::vector<long long> out(static_cast<size_t>(g.n) * g.n);
#pragma omp parallel
    {
        std::vector<int> queue;
        queue.reserve(g.n);
#pragma omp for schedule(dynamic, 16)
        for (int s = 0; s < g.n; ++s) bfs_row(g, s, out.data() + static_cast<size_t>(s) * g.n, queue);
    }
    return out;
}

namespace {

inline double euclid(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (size_t k = 0; k < a.size(); ++k) {
        double t = a[k] - b[k];
        s += t * t;
    }
    return std::sqrt(s);
}

} // namespace

std::vector<double> pairwise_euclidean_serial(const std::vector<std::vector<double>>& pts) {
    const int n = static_cast<int>(pts.size());
    std::vector<double> out(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double v = euclid(pts[i], pts[j]);
            out[static_cast<size_t>(i) * n + j] = v;
            out[static_cast<size_t>(j) * n + i] = v;
        }
    return out;
}

std::vector<double> pairwise_euclidean(const std::vector<std::vector<double>>& pts) {
    const int n = static_cast<int>(pts.size());
    std::vector<double> out(static_cast<size_t>(n) * n, 0.0);
#pragma omp parallel for schedule(dynamic, 8)
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double v = euclid(pts[i], pts[j]);
            out[static_cast<size_t>(i) * n + j] = v;
            out[static_cast<size_t>(j) * n + i] = v;
        }
    return out;
}

namespace {

inline double tau_of(const QMetSpace& X) { return X.backend == Backend::Flt ? X.tau : 0.0; }

// thresholds involving l are achieved-value sensitive, so the float backend
// compares them within the space's tau; exact backends compare exactly
inline bool pair_is_trivial(const QMetSpace& X, int x, int y, const xreal& l, const xreal& lr,
                            double tau) {
    for (int a = 0; a < X.size; ++a) {
        const xreal& xa = X.d(x, a);
        if (xa.is_inf() || xa.cmp(l, tau) >= 0) continue;
        const xreal& ay = X.d(a, y);
        if (ay.is_inf() || ay.cmp(l, tau) >= 0) continue;
        if ((xa + ay).cmp(lr, tau) <= 0) return true;
    }
    return false;
}

} // namespace

std::vector<char> trivial_pair_flags_serial(const QMetSpace& X,
                                            const std::vector<std::pair<int, int>>& pairs,
                                            const xreal& l, const xreal& r) {
    const xreal lr = l + r;
    const double tau = tau_of(X);
    std::vector<char> flags(pairs.size(), 0);
    for (size_t i = 0; i < pairs.size(); ++i)
        flags[i] = pair_is_trivial(X, pairs[i].first, pairs[i].second, l, lr, tau) ? 1 : 0;
    return flags;
}

std::vector<char> trivial_pair_flags(const QMetSpace& X, const std::vector<std::pair<int, int>>& pairs,
                                     const xreal& l, const xreal& r) {
    const xreal lr = l + r;
    const double tau = tau_of(X);
    std::vector<char> flags(pairs.size(), 0);
    const long long m = static_cast<long long>(pairs.size());
#pragma omp parallel for schedule(dynamic, 256)
    for (long long i = 0; i < m; ++i)
        flags[i] = pair_is_trivial(X, pairs[i].first, pairs[i].second, l, lr, tau) ? 1 : 0;
    return flags;
}

namespace {

inline void moves_for_pair(const QMetSpace& X, const std::vector<int>& pair_index, int i, int x, int y,
                           const xreal& r, const xreal& lr, double tau,
                           std::vector<std::pair<int, int>>& out) {
    const int n = X.size;
    for (int s = 0; s < n; ++s) {
        if (s != x) { // replace the first coordinate
            const xreal& xs = X.d(x, s);
            if (!xs.is_inf() && xs <= r && !X.d(s, y).is_inf() && (xs + X.d(s, y)).cmp(lr, tau) <= 0) {
                int j = pair_index[static_cast<size_t>(s) * n + y];
                if (j >= 0) out.emplace_back(i, j);
            }
        }
        if (s != y) { // replace the second coordinate
            const xreal& sy = X.d(s, y);
            if (!sy.is_inf() && sy <= r && !X.d(x, s).is_inf() && (X.d(x, s) + sy).cmp(lr, tau) <= 0) {
                int j = pair_index[static_cast<size_t>(x) * n + s];
                if (j >= 0) out.emplace_back(i, j);
            }
        }
    }
}

} // namespace

std::vector<std::pair<int, int>> pair_partition_moves_serial(const QMetSpace& X,
                                                             const std::vector<std::pair<int, int>>& pairs,
                                                             const std::vector<int>& pair_index,
                                                             const xreal& l, const xreal& r) {
    const xreal lr = l + r;
    const double tau = tau_of(X);
    std::vector<std::pair<int, int>> edges;
    for (size_t i = 0; i < pairs.size(); ++i)
        moves_for_pair(X, pair_index, static_cast<int>(i), pairs[i].first, pairs[i].second, r, lr, tau,
                       edges);
    return edges;
}

std::vector<std::pair<int, int>> pair_partition_moves(const QMetSpace& X,
                                                      const std::vector<std::pair<int, int>>& pairs,
                                                      const std::vector<int>& pair_index, const xreal& l,
                                                      const xreal& r) {
    const xreal lr = l + r;
    const double tau = tau_of(X);
    const long long m = static_cast<long long>(pairs.size());
    // fixed index chunks concatenated in order keep the edge list deterministic
    const long long chunk = std::max<long long>(1, (m + 255) / 256);
    const long long chunks = (m + chunk - 1) / chunk;
    std::vector<std::vector<std::pair<int, int>>> partial(chunks);
#pragma omp parallel for schedule(dynamic, 1)
    for (long long c = 0; c < chunks; ++c) {
        auto& out = partial[c];
        const long long hi = std::min(m, (c + 1) * chunk);
        for (long long i = c * chunk; i < hi; ++i)
            moves_for_pair(X, pair_index, static_cast<int>(i), pairs[i].first, pairs[i].second, r, lr,
                           tau, out);
    }
    std::vector<std::pair<int, int>> edges;
    for (auto& part : partial) edges.insert(edges.end(), part.begin(), part.end());
    return edges;
}

} // namespace qsh::kernels
