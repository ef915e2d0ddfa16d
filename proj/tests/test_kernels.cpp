#include <doctest.h>

#include "testutil.hpp"

#include "qsh/io.hpp"
#include "qsh/kernels.hpp"

#include <random>

using namespace qsh;
using namespace testutil;

TEST_CASE("parallel BFS table equals the serial reference") {
    std::mt19937 rng(42);
    for (int trial = 0; trial < 10; ++trial) {
        auto g = random_digraph(rng, 40, 0.08);
        auto adj = kernels::AdjList::from_arrows(g.n, g.arrows);
        CHECK(kernels::apsp_bfs(adj) == kernels::apsp_bfs_serial(adj));
    }
}

TEST_CASE("parallel Euclidean matrix is bit-identical to the serial one") {
    std::mt19937 rng(43);
    std::uniform_real_distribution<double> coord(-3.0, 3.0);
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < 150; ++i) pts.push_back({coord(rng), coord(rng), coord(rng)});
    CHECK(kernels::pairwise_euclidean(pts) == kernels::pairwise_euclidean_serial(pts));
}

TEST_CASE("parallel pair scans agree with the serial references") {
    auto X = io::circle_arc(30.0, 60);
    const xreal l = X->d(0, 59); // the endpoint chord
    const xreal r = xreal::of_double(0.3);

    std::vector<std::pair<int, int>> pairs;
    std::vector<int> pair_index(static_cast<size_t>(X->size) * X->size, -1);
    const xreal lr = l + r;
    for (int x = 0; x < X->size; ++x)
        for (int y = 0; y < X->size; ++y)
            if (!X->d(x, y).is_inf() && X->d(x, y).cmp(lr, X->tau) <= 0) {
                pair_index[static_cast<size_t>(x) * X->size + y] = static_cast<int>(pairs.size());
                pairs.emplace_back(x, y);
            }

    CHECK(kernels::trivial_pair_flags(*X, pairs, l, r) ==
          kernels::trivial_pair_flags_serial(*X, pairs, l, r));
    CHECK(kernels::pair_partition_moves(*X, pairs, pair_index, l, r) ==
          kernels::pair_partition_moves_serial(*X, pairs, pair_index, l, r));
}
