#pragma once

#include "qsh/errors.hpp"
#include "qsh/scalar.hpp"

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qsh {

struct QMetSpace;
using SpacePtr = std::shared_ptr<const QMetSpace>;

// Finite quasimetric space: d(x,x) = 0, d(x,y) > 0 for x != y, triangle
// inequality with +inf absorbing. Point identity is the index; labels and
// coordinates are metadata only.
struct QMetSpace {
    Backend backend = Backend::Int;
    int size = 0;
    std::vector<xreal> dist; // size*size, row-major
    std::vector<std::string> labels;
    std::vector<std::vector<double>> coords; // set for point-cloud inputs
    double tau = 1e-9;                       // critical-value grouping width (Flt only)

    const xreal& d(int i, int j) const { return dist[static_cast<size_t>(i) * size + j]; }

    SpacePtr induced(std::span<const int> idx) const;

    // sorted distinct finite off-diagonal values; Flt values within tau of a
    // group are merged and the group maximum is the representative
    struct ValueGroup {
        xreal rep;
        std::vector<xreal> members; // > 1 entry means a reported merge
    };
    std::vector<ValueGroup> distinct_finite_distances() const;

    xreal max_finite_distance() const; // zero(backend) on a fully disconnected space
};

// checks the three axioms; throws validation_error naming the first violation
SpacePtr validate_space(Backend backend, int n, std::vector<xreal> entries, double tau = 1e-9,
                        std::vector<std::string> labels = {},
                        std::vector<std::vector<double>> coords = {});

bool same_space(const QMetSpace& a, const QMetSpace& b);

struct ShortMap {
    SpacePtr source;
    SpacePtr target;
    std::vector<int> to; // point index in source -> point index in target

    int operator()(int i) const { return to[i]; }
    bool is_identity() const;
    bool is_injective() const;
};

// verifies d(f(x), f(x')) <= d(x, x') for all pairs unless check = false
ShortMap make_short_map(SpacePtr source, SpacePtr target, std::vector<int> to, bool check = true);
ShortMap identity_map(SpacePtr space);
// apply `first`, then `then`
ShortMap compose(const ShortMap& first, const ShortMap& then);

// sup_x d(phi(x), psi(x)); a maximum for finite spaces
xreal map_distance(const ShortMap& phi, const ShortMap& psi);

// same symmetrized-threshold component at level r (disjoint-set union)
bool points_r_homotopic(const QMetSpace& space, int x, int y, const xreal& r);

struct HomotopyChain {
    std::vector<ShortMap> maps; // nonempty, common source and target
    xreal radius;
};

// every consecutive pair within `radius` in at least one direction
bool verify_homotopy_chain(const HomotopyChain& chain);

} // namespace qsh
