#pragma once

#include "qsh/digraph.hpp"
#include "qsh/space.hpp"

#include <optional>
#include <string>

namespace qsh::io {

// Distance matrix: one row per line, entries separated by commas or spaces,
// "inf" allowed, "#" comments and blank lines ignored. Backend is inferred
// ('/' -> rat, '.'/'e' -> float, else int) unless forced.
SpacePtr parse_matrix(const std::string& text, std::optional<Backend> forced = std::nullopt,
                      double tau = 1e-9);

// Edge list: one "u v" pair per line, nonnegative integer vertices, blank
// lines and "#" comments ignored; vertex count is 1 + the largest id.
Digraph parse_digraph(const std::string& text);

// Point cloud: one point per line, comma- or space-separated coordinates.
// Metrics: l2 (default), l1, linf. Always the float backend.
SpacePtr parse_points(const std::string& text, const std::string& metric = "l2", double tau = 1e-9);

// exact textual matrix; parse_matrix(print_matrix(X)) reproduces X bit-exactly
std::string print_matrix(const QMetSpace& X);
std::string print_digraph(const Digraph& g);

// `count` points on the unit circle leaving a gap of `gap_degrees` (an arc
// from 105 degrees counterclockwise around to 105 - gap); gap 0 closes the circle
SpacePtr circle_arc(double gap_degrees, int count, double tau = 1e-9);
// w x h planar integer lattice with the Euclidean metric
SpacePtr grid(int w, int h, double tau = 1e-9);
// directed n-cycle 0 -> 1 -> ... -> n-1 -> 0
Digraph cycle(int n);

} // namespace qsh::io
