#include <doctest.h>

#include "testutil.hpp"

#include "qsh/homology.hpp"

using namespace qsh;
using namespace testutil;

namespace {
Interval at(long long l) { return Interval::singleton(xreal::of_int(l)); }
} // namespace

TEST_CASE("one-point space: H_0(C_{{0}}) = Z") {
    auto X = int_space(1, {0});
    TruncatedComplex c(X, at(0), 1);
    auto h = homology(c, 0);
    CHECK(h.rank == 1);
    CHECK(h.torsion.empty());
}

TEST_CASE("two-point space, singleton level n: rank 2 alternating cycles") {
    // brute force on the two-generator complexes: the bases are
    // (a,b,...),(b,a,...); all faces drop to lower levels, so every chain is a
    // cycle and nothing bounds
    auto X = symmetric_two_point(1);
    for (int n = 1; n <= 3; ++n) {
        TruncatedComplex c(X, at(n), n + 1);
        CHECK(c.dim(n) == 2);
        auto h = homology(c, n);
        CHECK(h.rank == 2);
        CHECK(h.torsion.empty());
    }
}

TEST_CASE("directed 2-path: the long pair bounds through the middle") {
    Digraph path(3, {{0, 1}, {1, 2}});
    auto X = shortest_path_space(path);
    TruncatedComplex c(X, at(2), 2);
    CHECK(homology(c, 1).rank == 0);
}

TEST_CASE("homology requires materialized degrees") {
    auto X = symmetric_two_point(1);
    TruncatedComplex c(X, at(1), 1);
    CHECK_THROWS_AS(homology(c, 1), degree_not_materialized);
}

TEST_CASE("field ranks agree with the integer rank on torsion-free instances") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 15; ++trial) {
        auto X = random_int_space(rng, 5);
        for (long long l = 1; l <= 3; ++l) {
            TruncatedComplex c(X, at(l), 2);
            auto hz = homology(c, 1, Coefficients::integers());
            auto hq = homology(c, 1, Coefficients::rationals());
            CHECK(hz.rank == hq.rank);
            if (hz.torsion.empty()) {
                auto hp = homology(c, 1, Coefficients::mod(1000003));
                CHECK(hp.rank == hq.rank);
            }
        }
    }
}

TEST_CASE("induced image rank: identity and zero") {
    auto X = shortest_path_space(lev_digraph());
    TruncatedComplex lo(X, at(1), 1), hi(X, at(1), 2);
    auto f = inclusion_chain_map(lo, hi);
    CHECK(induced_image_rank(f, 1) == homology(hi, 1, Coefficients::rationals()).rank);

    // zero chain map: kill every degree
    ChainMap zero{&lo, &hi, {}};
    for (int n = 0; n <= 1; ++n) {
        linalg::SparseIntMatrix m;
        m.rows = static_cast<int>(hi.dim(n));
        m.col.resize(lo.dim(n));
        zero.deg.push_back(std::move(m));
    }
    CHECK(induced_image_rank(zero, 1) == 0);
}

TEST_CASE("non-commuting matrices are rejected as chain maps") {
    Digraph path(3, {{0, 1}, {1, 2}});
    auto X = shortest_path_space(path);
    TruncatedComplex lo(X, Interval::left_closed_ray(xreal::of_int(1)), 1);
    TruncatedComplex hi(X, Interval::left_closed_ray(xreal::of_int(2)), 2);
    auto f = inclusion_chain_map(lo, hi);
    REQUIRE(!f.deg[1].col.empty());
    f.deg[1].col[0].clear(); // break commutation
    CHECK_THROWS_AS(check_chain_map(f), not_a_chain_map);
}
