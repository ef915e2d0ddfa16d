#pragma once

#include "qsh/space.hpp"

#include <optional>
#include <vector>

namespace qsh {

struct SearchOptions {
    long long node_budget = 10'000'000; // hard error when exhausted, never a truncated answer
    unsigned seed = 0;                  // seed != 0 randomizes the search order
    bool verify_plateaus = false;       // jumping_points: re-check one midpoint per gap
};

// A non-bijective short self-map within displacement r of the identity, in
// either direction, or nothing iff X is r-minimal. Forward candidates
// {y : d(x,y) <= r} are searched first, then backward ones {y : d(y,x) <= r}.
std::optional<ShortMap> find_contracting_endo(const SpacePtr& X, const xreal& r,
                                              const SearchOptions& opts = {});

// least n >= 1 with f^n idempotent, together with f^n
std::pair<int, ShortMap> idempotent_power(const ShortMap& f);

struct RetractionResult {
    std::vector<int> subset;  // indices into the ORIGINAL space, ascending
    SpacePtr model;           // induced subspace
    ShortMap retraction;      // source space -> model
    HomotopyChain certificate; // self-maps of the source witnessing iota . retraction ~_r id
};

RetractionResult minimal_model(const SpacePtr& X, const xreal& r, const SearchOptions& opts = {});

struct JumpingPointsResult {
    std::vector<xreal> points;   // strictly increasing
    std::vector<int> model_sizes; // |M_{r_i}(X)|, strictly decreasing
    std::vector<double> ratios;   // model_sizes / |X|
    std::vector<std::vector<xreal>> merged_groups; // reported tau merges (Flt only)
};

// |M_r| evaluated at r = 0 and at every distinct finite distance value in
// increasing order, reusing the previous model as the next input
JumpingPointsResult jumping_points(const SpacePtr& X, const SearchOptions& opts = {});

// chain X > M_{r_1} > ... > M_{r_n}; entry k retracts the previous model onto
// the next one; subsets are always in original-space indices
std::vector<RetractionResult> nested_models(const SpacePtr& X, const SearchOptions& opts = {});

SpacePtr stable_model(const SpacePtr& X, const SearchOptions& opts = {});

// witness bijection preserving all distances, or nothing; prunes by sorted
// in/out distance multisets per point
std::optional<std::vector<int>> is_isometric(const QMetSpace& a, const QMetSpace& b);

} // namespace qsh
