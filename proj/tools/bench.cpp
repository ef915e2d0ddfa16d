// Timings of the OpenMP kernels against their serial references.
// Usage: qsh_bench [scale]   (scale >= 1 enlarges the instances)

#include "qsh/io.hpp"
#include "qsh/kernels.hpp"

#include <chrono>
#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace qsh;

namespace {

template <class F> double time_ms(F&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

void row(const char* name, double serial_ms, double parallel_ms, bool same) {
    std::printf("%-28s %10.1f ms %10.1f ms   x%.2f   %s\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms, same ? "outputs match" : "OUTPUTS DIFFER");
}

} // namespace

int main(int argc, char** argv) {
    const int scale = argc > 1 ? std::atoi(argv[1]) : 1;
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (built without OpenMP)\n");
#endif
    std::printf("%-28s %13s %13s\n", "kernel", "serial", "parallel");

    {
        std::mt19937 rng(1);
        const int n = 1500 * scale;
        std::vector<std::pair<int, int>> arrows;
        std::uniform_int_distribution<int> v(0, n - 1);
        for (int i = 0; i < 8 * n; ++i) arrows.emplace_back(v(rng), v(rng));
        auto adj = kernels::AdjList::from_arrows(n, arrows);
        std::vector<long long> a, b;
        double ts = time_ms([&] { a = kernels::apsp_bfs_serial(adj); });
        double tp = time_ms([&] { b = kernels::apsp_bfs(adj); });
        row("all-pairs BFS", ts, tp, a == b);
    }

    {
        std::mt19937 rng(2);
        std::uniform_real_distribution<double> c(-1, 1);
        std::vector<std::vector<double>> pts;
        for (int i = 0; i < 2200 * scale; ++i) pts.push_back({c(rng), c(rng), c(rng)});
        std::vector<double> a, b;
        double ts = time_ms([&] { a = kernels::pairwise_euclidean_serial(pts); });
        double tp = time_ms([&] { b = kernels::pairwise_euclidean(pts); });
        row("euclidean matrix", ts, tp, a == b);
    }

    {
        auto X = io::circle_arc(30.0, 420 * scale);
        const xreal l = X->d(0, X->size - 1);
        const xreal r = xreal::of_double(0.3);
        const xreal lr = l + r;
        std::vector<std::pair<int, int>> pairs;
        std::vector<int> index(static_cast<size_t>(X->size) * X->size, -1);
        for (int x = 0; x < X->size; ++x)
            for (int y = 0; y < X->size; ++y)
                if (X->d(x, y).cmp(lr, X->tau) <= 0) {
                    index[static_cast<size_t>(x) * X->size + y] = static_cast<int>(pairs.size());
                    pairs.emplace_back(x, y);
                }

        std::vector<char> fa, fb;
        double ts = time_ms([&] { fa = kernels::trivial_pair_flags_serial(*X, pairs, l, r); });
        double tp = time_ms([&] { fb = kernels::trivial_pair_flags(*X, pairs, l, r); });
        row("trivial-pair scan", ts, tp, fa == fb);

        std::vector<std::pair<int, int>> ma, mb;
        ts = time_ms([&] { ma = kernels::pair_partition_moves_serial(*X, pairs, index, l, r); });
        tp = time_ms([&] { mb = kernels::pair_partition_moves(*X, pairs, index, l, r); });
        row("pair-partition moves", ts, tp, ma == mb);
    }
    return 0;
}
