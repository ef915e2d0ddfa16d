#include "qsh/digraph.hpp"

#include "qsh/errors.hpp"
#include "qsh/kernels.hpp"

#include <algorithm>

namespace qsh {

Digraph::Digraph(int vertices, std::vector<std::pair<int, int>> arcs) : n(vertices) {
    for (auto [u, v] : arcs) {
        if (u < 0 || u >= n || v < 0 || v >= n) throw qsh_error("arrow endpoint out of range");
        if (u != v) arrows.emplace_back(u, v); // loops are implicit
    }
    std::sort(arrows.begin(), arrows.end());
    arrows.erase(std::unique(arrows.begin(), arrows.end()), arrows.end());
}

bool Digraph::has_arrow(int u, int v) const {
    if (u == v) return true;
    return std::binary_search(arrows.begin(), arrows.end(), std::make_pair(u, v));
}

SpacePtr shortest_path_space(const Digraph& g) {
    auto adj = kernels::AdjList::from_arrows(g.n, g.arrows);
    auto table = kernels::apsp_bfs(adj);
    std::vector<xreal> dist;
    dist.reserve(table.size());
    for (long long v : table)
        dist.push_back(v == kernels::UNREACHABLE ? xreal::inf(Backend::Int) : xreal::of_int(v));
    return validate_space(Backend::Int, g.n, std::move(dist));
}

Digraph digraph_retract_from_points(const Digraph& g, std::span<const int> A, std::span<const int> rho) {
    if (static_cast<int>(rho.size()) != g.n) throw qsh_error("retraction size does not match");
    std::vector<int> pos_in_A(g.n, -1);
    for (size_t i = 0; i < A.size(); ++i) pos_in_A[A[i]] = static_cast<int>(i);
    for (int a : A)
        if (rho[a] != a) throw not_a_retraction();
    for (int x = 0; x < g.n; ++x)
        if (pos_in_A[rho[x]] < 0) throw qsh_error("retraction image leaves the subset");

    auto space = shortest_path_space(g);
    // shortness of rho for the shortest-path metric
    for (int x = 0; x < g.n; ++x)
        for (int y = 0; y < g.n; ++y)
            if (space->d(rho[x], rho[y]) > space->d(x, y)) throw not_short(x, y);

    std::vector<std::pair<int, int>> arcs;
    const xreal one = xreal::of_int(1);
    for (size_t i = 0; i < A.size(); ++i)
        for (size_t j = 0; j < A.size(); ++j)
            if (i != j && !space->d(A[i], A[j]).is_inf() && space->d(A[i], A[j]) <= one)
                arcs.emplace_back(static_cast<int>(i), static_cast<int>(j));
    Digraph h(static_cast<int>(A.size()), std::move(arcs));

    for (auto [u, v] : g.arrows)
        if (!h.has_arrow(pos_in_A[rho[u]], pos_in_A[rho[v]]))
            throw qsh_error("retraction is not a digraph morphism");
    return h;
}

bool is_convex_subdigraph(const Digraph& g, const Digraph& h, std::span<const int> vertex_of) {
    std::vector<int> map(vertex_of.begin(), vertex_of.end());
    if (map.empty()) {
        map.resize(h.n);
        for (int i = 0; i < h.n; ++i) map[i] = i;
    }
    if (h.n > g.n || static_cast<int>(map.size()) != h.n) throw not_a_subdigraph();
    for (int v : map)
        if (v < 0 || v >= g.n) throw not_a_subdigraph();
    for (auto [u, v] : h.arrows)
        if (!g.has_arrow(map[u], map[v])) throw not_a_subdigraph();

    auto dg = shortest_path_space(g);
    auto dh = shortest_path_space(h);
    for (int i = 0; i < h.n; ++i)
        for (int j = 0; j < h.n; ++j)
            if (dh->d(i, j) != dg->d(map[i], map[j])) return false;
    return true;
}

} // namespace qsh
