#include <doctest.h>

#include "testutil.hpp"

#include "qsh/io.hpp"
#include "qsh/lowdim.hpp"
#include "qsh/spectral.hpp"

using namespace qsh;
using namespace testutil;

namespace {
Interval at_int(long long l) { return Interval::singleton(xreal::of_int(l)); }
} // namespace

TEST_CASE("degree-zero classes") {
    auto X = shortest_path_space(lev_digraph());
    SUBCASE("r = 0 at {0}: every point is its own class") {
        CHECK(sh0_classes(*X, xreal::of_int(0), at_int(0)) == X->size);
    }
    SUBCASE("r = 1 at {0}: all four points chain together") {
        CHECK(sh0_classes(*X, xreal::of_int(1), at_int(0)) == 1);
    }
    SUBCASE("0 outside the interval kills the group") {
        CHECK(sh0_classes(*X, xreal::of_int(1),
                          Interval::closed(xreal::of_int(1), xreal::of_int(2))) == 0);
    }
    SUBCASE("open right ray uses the strict comparator") {
        auto Y = symmetric_two_point(5);
        // I = [0,5) gives I^0 with right ray Below(5): threshold d < 5
        auto I = Interval::closed_open(xreal::of_int(0), xreal::of_int(5));
        CHECK(sh0_classes(*Y, xreal::of_int(0), I) == 2);
        CHECK(sh0_classes(*Y, xreal::of_int(0),
                          Interval::closed(xreal::of_int(0), xreal::of_int(5))) == 1);
    }
}

TEST_CASE("adjacent pairs") {
    Digraph path(3, {{0, 1}, {1, 2}});
    auto X = shortest_path_space(path);
    CHECK(adjacent_pairs(*X, xreal::of_int(1)) ==
          std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
    CHECK(adjacent_pairs(*X, xreal::of_int(2)).empty()); // (0,2) splits through 1

    auto Y = symmetric_two_point(5);
    CHECK(adjacent_pairs(*Y, xreal::of_int(5)) ==
          std::vector<std::pair<int, int>>{{0, 1}, {1, 0}});
}

TEST_CASE("trivial pairs") {
    SUBCASE("short pairs are always trivial") {
        auto X = shortest_path_space(lev_digraph());
        auto t = trivial_pairs(*X, xreal::of_int(2), xreal::of_int(1));
        for (int x = 0; x < X->size; ++x)
            for (int y = 0; y < X->size; ++y)
                if (!X->d(x, y).is_inf() && X->d(x, y) < xreal::of_int(2))
                    CHECK(std::find(t.begin(), t.end(), std::make_pair(x, y)) != t.end());
    }
    SUBCASE("no witness on the bare two-point space") {
        auto Y = symmetric_two_point(5);
        auto t = trivial_pairs(*Y, xreal::of_int(5), xreal::of_int(1));
        CHECK(std::find(t.begin(), t.end(), std::make_pair(0, 1)) == t.end());
        CHECK(std::find(t.begin(), t.end(), std::make_pair(1, 0)) == t.end());
    }
    SUBCASE("collinear points split the long pair") {
        auto X = io::parse_points("0\n1\n2\n");
        auto t = trivial_pairs(*X, xreal::of_double(2.0), xreal::of_double(0.0));
        CHECK(std::find(t.begin(), t.end(), std::make_pair(0, 2)) != t.end());
    }
}

TEST_CASE("sh1 via adjacency at r = 0 equals the magnitude rank") {
    std::mt19937 rng(2718);
    for (int trial = 0; trial < 12; ++trial) {
        auto X = random_int_space(rng, 6);
        SpectralEngine eng(X);
        for (const auto& g : X->distinct_finite_distances()) {
            auto adj = adjacent_pairs(*X, g.rep);
            CHECK(sh1_adjacency(*X, g.rep, xreal::of_int(0)) ==
                  static_cast<long long>(adj.size()));
            CHECK(eng.magnitude_homology(1, g.rep).rank == static_cast<long long>(adj.size()));
        }
    }
}

TEST_CASE("pair partition marks classes that meet a trivial pair") {
    auto X = shortest_path_space(lev_digraph());
    auto part = pair_partition(*X, xreal::of_int(2), xreal::of_int(1));
    // diagonal pairs are trivially in T and must be flagged
    for (size_t i = 0; i < part.universe.size(); ++i)
        if (part.universe[i].first == part.universe[i].second) {
            CHECK(part.trivial_flag[i]);
            CHECK(part.class_marked[i]);
        }
    // marked status is constant on classes
    for (size_t i = 0; i < part.universe.size(); ++i)
        for (size_t j = 0; j < part.universe.size(); ++j)
            if (part.classes.same(static_cast<int>(i), static_cast<int>(j)))
                CHECK(part.class_marked[i] == part.class_marked[j]);
}

TEST_CASE("monotonicity of trivial pairs in r") {
    auto X = shortest_path_space(pentagon_chords_digraph());
    auto t0 = trivial_pairs(*X, xreal::of_int(2), xreal::of_int(0));
    auto t1 = trivial_pairs(*X, xreal::of_int(2), xreal::of_int(1));
    for (const auto& p : t0) CHECK(std::find(t1.begin(), t1.end(), p) != t1.end());
}

TEST_CASE("precondition l > r is enforced") {
    auto X = symmetric_two_point(1);
    CHECK_THROWS_AS(sh1_adjacency(*X, xreal::of_int(1), xreal::of_int(1)), precondition_violated);
}

TEST_CASE("thick interval hits") {
    SUBCASE("dense segment: midpoints lie inside for non-neighbor pairs") {
        std::string pts;
        for (int i = 0; i <= 10; ++i) pts += std::to_string(i * 0.1) + "\n";
        auto X = io::parse_points(pts);
        CHECK_FALSE(thick_interval_hits(*X, 0, 10, xreal::of_double(0.05)).empty());
        CHECK_FALSE(thick_interval_hits(*X, 2, 7, xreal::of_double(0.05)).empty());
    }
    SUBCASE("a bare pair has an empty thick interval") {
        auto X = io::parse_points("0,0\n1,1\n");
        CHECK(thick_interval_hits(*X, 0, 1, xreal::of_double(0.5)).empty());
    }
    SUBCASE("matrix-backed spaces are rejected") {
        auto X = symmetric_two_point(1);
        CHECK_THROWS_AS(thick_interval_hits(*X, 0, 1, xreal::of_int(1)), not_euclidean);
    }
}
