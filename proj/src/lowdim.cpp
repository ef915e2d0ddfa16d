#include "qsh/lowdim.hpp"

#include "qsh/errors.hpp"
#include "qsh/kernels.hpp"

namespace qsh {

long long sh0_classes(const QMetSpace& X, const xreal& r, const Interval& I) {
    if (r.is_negative() || r.is_inf()) throw precondition_violated("radius must be finite and >= 0");
    const double tau = X.backend == Backend::Flt ? X.tau : 0.0;
    if (!I.contains(xreal::zero(X.backend), tau)) return 0;

    // the comparator is read off the right ray of I^r
    const LeftRay ray = I.upper_expand(r).right();
    auto within = [&](const xreal& v) { return !v.is_inf() && ray.contains(v, tau); };
    UnionFind uf(X.size);
    for (int i = 0; i < X.size; ++i)
        for (int j = i + 1; j < X.size; ++j)
            if (within(X.d(i, j)) || within(X.d(j, i))) uf.unite(i, j);
    return uf.class_count();
}

std::vector<std::pair<int, int>> adjacent_pairs(const QMetSpace& X, const xreal& l) {
    if (!(xreal::zero(X.backend) < l)) throw precondition_violated("adjacency needs l > 0");
    const double tau = X.backend == Backend::Flt ? X.tau : 0.0;
    std::vector<std::pair<int, int>> out;
    for (int x = 0; x < X.size; ++x)
        for (int y = 0; y < X.size; ++y) {
            if (x == y || X.d(x, y).is_inf() || X.d(x, y).cmp(l, tau) != 0) continue;
            bool split = false;
            for (int a = 0; a < X.size && !split; ++a) {
                if (a == x || a == y) continue;
                if (X.d(x, a).is_inf() || X.d(a, y).is_inf()) continue;
                split = (X.d(x, a) + X.d(a, y)).cmp(l, tau) == 0;
            }
            if (!split) out.emplace_back(x, y);
        }
    return out;
}

std::vector<std::pair<int, int>> trivial_pairs(const QMetSpace& X, const xreal& l, const xreal& r) {
    if (!(r < l)) throw precondition_violated("trivial pairs need l > r");
    const double tau = X.backend == Backend::Flt ? X.tau : 0.0;
    std::vector<std::pair<int, int>> universe;
    const xreal lr = l + r;
    for (int x = 0; x < X.size; ++x)
        for (int y = 0; y < X.size; ++y)
            if (!X.d(x, y).is_inf() && X.d(x, y).cmp(lr, tau) <= 0) universe.emplace_back(x, y);
    auto flags = kernels::trivial_pair_flags(X, universe, l, r);
    std::vector<std::pair<int, int>> out;
    for (size_t i = 0; i < universe.size(); ++i)
        if (flags[i]) out.push_back(universe[i]);
    return out;
}

PairPartition pair_partition(const QMetSpace& X, const xreal& l, const xreal& r) {
    if (!(r < l) || r.is_negative()) throw precondition_violated("pair partition needs l > r >= 0");
    const double tau = X.backend == Backend::Flt ? X.tau : 0.0;
    const xreal lr = l + r;
    const int n = X.size;

    PairPartition part{{}, std::vector<int>(static_cast<size_t>(n) * n, -1), UnionFind(0), {}, {}};
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (!X.d(x, y).is_inf() && X.d(x, y).cmp(lr, tau) <= 0) {
                part.pair_index[static_cast<size_t>(x) * n + y] = static_cast<int>(part.universe.size());
                part.universe.emplace_back(x, y);
            }

    part.classes = UnionFind(static_cast<int>(part.universe.size()));
    auto moves = kernels::pair_partition_moves(X, part.universe, part.pair_index, l, r);
    for (auto [i, j] : moves) part.classes.unite(i, j);

    part.trivial_flag = kernels::trivial_pair_flags(X, part.universe, l, r);
    std::vector<char> root_marked(part.universe.size(), 0);
    for (size_t i = 0; i < part.universe.size(); ++i)
        if (part.trivial_flag[i]) root_marked[part.classes.find(static_cast<int>(i))] = 1;
    part.class_marked.resize(part.universe.size());
    for (size_t i = 0; i < part.universe.size(); ++i)
        part.class_marked[i] = root_marked[part.classes.find(static_cast<int>(i))];
    return part;
}

long long sh1_adjacency(const QMetSpace& X, const xreal& l, const xreal& r) {
    auto part = pair_partition(X, l, r);
    auto adj = adjacent_pairs(X, l);
    std::vector<char> counted(part.universe.size(), 0);
    long long rank = 0;
    for (auto [x, y] : adj) {
        int idx = part.pair_index[static_cast<size_t>(x) * X.size + y];
        if (idx < 0) continue; // cannot happen: d = l <= l + r
        if (part.class_marked[idx]) continue;
        int root = part.classes.find(idx);
        if (!counted[root]) {
            counted[root] = 1;
            ++rank;
        }
    }
    return rank;
}

std::vector<int> thick_interval_hits(const QMetSpace& X, int x, int y, const xreal& r) {
    if (X.coords.empty()) throw not_euclidean();
    const double tau = X.backend == Backend::Flt ? X.tau : 0.0;
    std::vector<int> hits;
    const xreal& dxy = X.d(x, y);
    if (dxy.is_inf()) return hits;
    const xreal bound = dxy + r;
    for (int a = 0; a < X.size; ++a) {
        if (X.d(x, a).is_inf() || X.d(a, y).is_inf()) continue;
        if (X.d(x, a).cmp(dxy, tau) < 0 && X.d(a, y).cmp(dxy, tau) < 0 &&
            (X.d(x, a) + X.d(a, y)).cmp(bound, tau) <= 0)
            hits.push_back(a);
    }
    return hits;
}

} // namespace qsh
