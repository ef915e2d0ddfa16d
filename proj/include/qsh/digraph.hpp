#pragma once

#include "qsh/space.hpp"

#include <span>
#include <utility>
#include <vector>

namespace qsh {

// Digraph with implicit loops: (g,g) is always an arrow and never stored.
// Arrows are kept sorted and deduplicated.
struct Digraph {
    int n = 0;
    std::vector<std::pair<int, int>> arrows;

    Digraph() = default;
    Digraph(int vertices, std::vector<std::pair<int, int>> arcs);

    bool has_arrow(int u, int v) const;
};

// shortest-path quasimetric (integer backend, +inf where unreachable)
SpacePtr shortest_path_space(const Digraph& g);

// The digraph on the vertex subset A whose arrows are the pairs at
// shortest-path distance <= 1 in g. `rho` (size g.n, values inside A) must
// restrict to the identity on A and be short for the shortest-path metric;
// it is also checked to be a digraph morphism g -> result.
Digraph digraph_retract_from_points(const Digraph& g, std::span<const int> A, std::span<const int> rho);

// true iff shortest-path distances inside h agree with those of g on h's
// vertices (h.n <= g.n; vertex i of h is vertex vertex_of[i] of g when
// vertex_of is nonempty, else vertex i of g)
bool is_convex_subdigraph(const Digraph& g, const Digraph& h, std::span<const int> vertex_of = {});

} // namespace qsh
