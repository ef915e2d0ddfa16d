#pragma once

#include "qsh/scalar.hpp"
#include "qsh/space.hpp"

#include <utility>
#include <vector>

// Data-parallel kernels with serial reference implementations. The parallel
// versions must produce bit-identical results; tests and the bench tool
// compare the two.
namespace qsh::kernels {

inline constexpr long long UNREACHABLE = -1;

struct AdjList {
    int n = 0;
    std::vector<int> offsets; // n+1
    std::vector<int> targets;
    static AdjList from_arrows(int n, const std::vector<std::pair<int, int>>& arrows);
};

// all-pairs shortest path lengths by BFS from every source; UNREACHABLE where
// no path exists; row-major n*n
std::vector<long long> apsp_bfs(const AdjList& g);
std::vector<long long> apsp_bfs_serial(const AdjList& g);

// symmetric Euclidean distance matrix of a point cloud, row-major
std::vector<double> pairwise_euclidean(const std::vector<std::vector<double>>& pts);
std::vector<double> pairwise_euclidean_serial(const std::vector<std::vector<double>>& pts);

// flags[i] = 1 iff pairs[i]=(x,y) admits a witness a with
// d(x,a)+d(a,y) <= l+r, d(x,a) < l, d(a,y) < l  (scan over all a)
std::vector<char> trivial_pair_flags(const QMetSpace& X, const std::vector<std::pair<int, int>>& pairs,
                                     const xreal& l, const xreal& r);
std::vector<char> trivial_pair_flags_serial(const QMetSpace& X,
                                            const std::vector<std::pair<int, int>>& pairs,
                                            const xreal& l, const xreal& r);

// generating moves of the pair partition on P_{<= l+r}: for pair i=(x,y),
// (x,y) ~ (x',y) when d(x,x') <= r and d(x,x')+d(x',y) <= l+r, and
// (x,y) ~ (x,y') when d(y',y) <= r and d(x,y')+d(y',y) <= l+r.
// pair_index maps (x,y) -> index in `pairs` (size*size, -1 outside universe).
// Returned edges are (i, j) with deterministic order.
std::vector<std::pair<int, int>> pair_partition_moves(const QMetSpace& X,
                                                      const std::vector<std::pair<int, int>>& pairs,
                                                      const std::vector<int>& pair_index,
                                                      const xreal& l, const xreal& r);
std::vector<std::pair<int, int>> pair_partition_moves_serial(const QMetSpace& X,
                                                             const std::vector<std::pair<int, int>>& pairs,
                                                             const std::vector<int>& pair_index,
                                                             const xreal& l, const xreal& r);

} // namespace qsh::kernels
