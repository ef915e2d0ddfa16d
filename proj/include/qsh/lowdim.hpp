#pragma once

#include "qsh/interval.hpp"
#include "qsh/space.hpp"
#include "qsh/union_find.hpp"

#include <utility>
#include <vector>

namespace qsh {

// Closed-form degree-0 and degree-1 spectral homology; the combinatorics here
// are computed without touching the chain-complex machinery, so they serve as
// an independent cross-check for it.

// number of classes of the relation "x ~_s y for some s in I^r"; 0 when 0 is
// not in I
long long sh0_classes(const QMetSpace& X, const xreal& r, const Interval& I);

// ordered pairs at distance exactly l with no strict intermediate point
// ("exactly" means the tau-class of l on the float backend)
std::vector<std::pair<int, int>> adjacent_pairs(const QMetSpace& X, const xreal& l);

// pairs admitting a witness a with d(x,a)+d(a,y) <= l+r, d(x,a) < l,
// d(a,y) < l; this includes every pair with d(x,y) < l
std::vector<std::pair<int, int>> trivial_pairs(const QMetSpace& X, const xreal& l, const xreal& r);

// partition of P_{<= l+r} (all ordered pairs, diagonal included) under the
// two generating moves, with classes containing a trivial pair marked
struct PairPartition {
    std::vector<std::pair<int, int>> universe;
    std::vector<int> pair_index; // size*size -> index in universe, -1 outside
    UnionFind classes;
    std::vector<char> trivial_flag; // per universe entry: lies in T_{l,r}
    std::vector<char> class_marked; // per universe entry: its class meets T_{l,r}
};

PairPartition pair_partition(const QMetSpace& X, const xreal& l, const xreal& r);

// rank of the degree-1 spectral homology at the singleton {l}: classes that
// meet Adj_l among the unmarked classes; requires l > r >= 0
long long sh1_adjacency(const QMetSpace& X, const xreal& l, const xreal& r);

// sample points inside the thick open interval between x and y:
// d(x,a) < d(x,y), d(a,y) < d(x,y), d(x,a)+d(a,y) <= d(x,y)+r.
// Requires point coordinates (the diagnostic is about subsets of R^k).
std::vector<int> thick_interval_hits(const QMetSpace& X, int x, int y, const xreal& r);

} // namespace qsh
