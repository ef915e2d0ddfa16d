#include <doctest.h>

#include "testutil.hpp"

#include "qsh/lowdim.hpp"
#include "qsh/spectral.hpp"

using namespace qsh;
using namespace testutil;

namespace {

Interval at_int(long long l) { return Interval::singleton(xreal::of_int(l)); }

SHQuery q_int(long long r, int n, Interval I) {
    return SHQuery{xreal::of_int(r), n, std::move(I), Coefficients::rationals(), std::nullopt};
}

SpacePtr symmetric_pentagon() {
    std::vector<std::pair<int, int>> arcs;
    for (int i = 0; i < 5; ++i) {
        arcs.emplace_back(i, (i + 1) % 5);
        arcs.emplace_back((i + 1) % 5, i);
    }
    return shortest_path_space(Digraph(5, arcs));
}

} // namespace

TEST_CASE("sh at r = 0 on a singleton is magnitude homology") {
    auto X = shortest_path_space(lev_digraph());
    SpectralEngine eng(X);
    for (long long l = 0; l <= 4; ++l)
        for (int n = 0; n <= 2; ++n) {
            SHQuery q{xreal::of_int(0), n, at_int(l), Coefficients::integers(), std::nullopt};
            auto res = eng.sh(q);
            auto mh = eng.magnitude_homology(n, xreal::of_int(l));
            CHECK(res.rank == mh.rank);
            CHECK(res.torsion == mh.torsion);
        }
}

TEST_CASE("one-point space: rank 1 at the origin for every radius") {
    auto X = int_space(1, {0});
    SpectralEngine eng(X);
    for (long long r = 0; r <= 3; ++r) CHECK(eng.sh(q_int(r, 0, at_int(0))).rank == 1);
}

TEST_CASE("two points at distance 5 merge at r = 5") {
    auto X = symmetric_two_point(5);
    SpectralEngine eng(X);
    CHECK(eng.sh(q_int(5, 0, at_int(0))).rank == 1);
    CHECK(eng.sh(q_int(4, 0, at_int(0))).rank == 2);
    CHECK(eng.sh(q_int(5, 0, at_int(0))).rank == sh0_classes(*X, xreal::of_int(5), at_int(0)));
}

TEST_CASE("spectral cycles and boundaries") {
    auto X = shortest_path_space(lev_digraph());
    SpectralEngine eng(X);
    SUBCASE("r = 0: sz is the betti number and sb vanishes") {
        for (long long l = 0; l <= 3; ++l) {
            auto q = q_int(0, 1, at_int(l));
            CHECK(eng.sz(q) == eng.sh(q).rank);
            CHECK(eng.sb(q) == 0);
        }
    }
    SUBCASE("sh = sz - sb at r = 1, level 1, degree 1") {
        auto q = q_int(1, 1, at_int(1));
        CHECK(eng.sh(q).rank == eng.sz(q) - eng.sb(q));
        CHECK(eng.sb(q) <= eng.sz(q));
    }
}

TEST_CASE("magnitude homology examples") {
    SUBCASE("MH_{0,0} counts the points") {
        auto X = shortest_path_space(lev_digraph());
        SpectralEngine eng(X);
        CHECK(eng.magnitude_homology(0, xreal::of_int(0)).rank == X->size);
    }
    SUBCASE("directed 2-path") {
        Digraph path(3, {{0, 1}, {1, 2}});
        SpectralEngine eng(shortest_path_space(path));
        CHECK(eng.magnitude_homology(1, xreal::of_int(1)).rank == 2);
        CHECK(eng.magnitude_homology(1, xreal::of_int(2)).rank == 0);
    }
    SUBCASE("pentagon: ten ordered adjacent edges") {
        SpectralEngine eng(symmetric_pentagon());
        auto h = eng.magnitude_homology(1, xreal::of_int(1));
        CHECK(h.rank == 10);
        CHECK(h.torsion.empty());
    }
}

TEST_CASE("persistence diagrams") {
    SUBCASE("one-point space: a single immortal bar at 0") {
        SpectralEngine eng(int_space(1, {0}));
        auto d = eng.persistent_sh(xreal::of_int(0), 0);
        REQUIRE(d.bars.size() == 1);
        CHECK(d.bars[0].infinite);
        CHECK(d.bars[0].birth == xreal::of_int(0));
    }
    SUBCASE("two points at distance 1: one immortal bar, one (0,1]") {
        SpectralEngine eng(symmetric_two_point(1));
        auto d = eng.persistent_sh(xreal::of_int(0), 0);
        REQUIRE(d.bars.size() == 2);
        CHECK(d.bars[0].birth == xreal::of_int(0));
        CHECK(d.bars[0].infinite);
        CHECK_FALSE(d.bars[1].infinite);
        CHECK(d.bars[1].birth == xreal::of_int(0));
        CHECK(d.bars[1].death == xreal::of_int(1));
    }
    SUBCASE("the rank function equals the bar count alive at each level") {
        std::mt19937 rng(31);
        auto X = random_int_space(rng, 5);
        SpectralEngine eng(X);
        for (int n = 0; n <= 1; ++n) {
            auto d = eng.persistent_sh(xreal::of_int(0), n);
            for (size_t i = 0; i < d.critical_values.size(); ++i) {
                long long alive = 0;
                for (const auto& bar : d.bars)
                    if (bar.birth <= d.critical_values[i] &&
                        (bar.infinite || d.critical_values[i] < bar.death))
                        ++alive;
                CHECK(alive == d.dims[i]);
                // the dimension is the blurred rank computed directly
                auto c = eng.complex(Interval::left_closed_ray(d.critical_values[i]), n + 1);
                CHECK(d.dims[i] == homology(*c, n, Coefficients::rationals()).rank);
            }
        }
    }
}

TEST_CASE("reachability homology") {
    SUBCASE("strongly connected: a point up to reachability") {
        auto X = shortest_path_space(lev_digraph());
        SpectralEngine eng(X);
        CHECK(eng.reachability_homology(0, 3).rank == 1);
        CHECK(eng.reachability_homology(1, 3).rank == 0);
        CHECK(eng.reachability_homology(2, 3).rank == 0);
        auto oracle = oracle_reachability(*X, 0);
        CHECK(oracle.rank == 1);
    }
    SUBCASE("totally disconnected three points") {
        SpectralEngine eng(int_space(3, {0, -1, -1, -1, 0, -1, -1, -1, 0}));
        CHECK(eng.reachability_homology(0, 1).rank == 3);
        CHECK(oracle_reachability(*eng.space(), 0).rank == 3);
    }
    SUBCASE("single arrow") {
        SpectralEngine eng(shortest_path_space(Digraph(2, {{0, 1}})));
        CHECK(eng.reachability_homology(0, 2).rank == 1);
        CHECK(eng.reachability_homology(1, 2).rank == 0);
    }
    SUBCASE("oracle agreement on random digraphs") {
        std::mt19937 rng(404);
        for (int trial = 0; trial < 15; ++trial) {
            auto g = random_digraph(rng, 4, 0.4);
            auto X = shortest_path_space(g);
            SpectralEngine eng(X);
            for (int n = 0; n <= 1; ++n) {
                auto got = eng.reachability_homology(n, n + 1);
                auto want = oracle_reachability(*X, n);
                CHECK(got.rank == want.rank);
                CHECK(got.torsion == want.torsion);
            }
        }
    }
}

TEST_CASE("spectral sequence pages") {
    SUBCASE("one-point digraph concentrates at the origin") {
        SpectralEngine eng(int_space(1, {0}));
        for (int s = 1; s <= 3; ++s) {
            CHECK(eng.mpss_page(s, 0, 0) == 1);
            CHECK(eng.mpss_page(s, 1, 1) == 0);
            CHECK(eng.mpss_page(s, 1, 0) == 0);
            CHECK(eng.mpss_page_ce(s, 0, 0) == 1);
        }
    }
    SUBCASE("page 1 is the magnitude rank") {
        auto X = shortest_path_space(lev_digraph());
        SpectralEngine eng(X);
        for (int n = 0; n <= 2; ++n)
            for (long long l = 0; l <= 3; ++l)
                CHECK(eng.mpss_page(1, n, l) == eng.magnitude_homology(n, xreal::of_int(l)).rank);
    }
    SUBCASE("page 2 row 0 on the directed 2-path") {
        Digraph path(3, {{0, 1}, {1, 2}});
        SpectralEngine eng(shortest_path_space(path));
        CHECK(eng.mpss_page(2, 0, 0) == 1); // connected
        CHECK(eng.mpss_page(2, 1, 1) == 0); // no loops
    }
    SUBCASE("the two page implementations agree on the named digraphs") {
        for (const Digraph& g : {lev_digraph(), diamond_digraph()}) {
            SpectralEngine eng(shortest_path_space(g));
            for (int s = 1; s <= 3; ++s)
                for (int n = 0; n <= 2; ++n)
                    for (long long l = 0; l <= 4; ++l)
                        CHECK(eng.mpss_page(s, n, l) == eng.mpss_page_ce(s, n, l));
        }
    }
    SUBCASE("non-integer backends are rejected") {
        SpectralEngine eng(x_eps_space(0.0));
        CHECK_THROWS_AS(eng.mpss_page(2, 1, 1), non_integer_query);
    }
}

TEST_CASE("induced maps on spectral homology") {
    auto X = shortest_path_space(lev_digraph());
    SUBCASE("identity induces the identity matrix") {
        auto q = q_int(1, 1, at_int(1));
        auto m = sh_induced(identity_map(X), q);
        for (size_t i = 0; i < m.size(); ++i)
            for (size_t j = 0; j < m[i].size(); ++j)
                CHECK(m[i][j] == (i == j ? bigrat(1) : bigrat(0)));
    }
    SUBCASE("r-homotopic maps induce equal matrices") {
        auto phi = lev_phi(X);
        auto q = q_int(1, 1, at_int(1));
        auto a = sh_induced(identity_map(X), q);
        auto b = sh_induced(phi, q);
        CHECK(a == b);
        auto c = sh_induced(compose(phi, phi), q);
        CHECK(a == c);
    }
    SUBCASE("the inclusion of a minimal model induces isomorphisms") {
        auto res = minimal_model(X, xreal::of_int(1));
        std::vector<int> incl = res.subset;
        auto iota = make_short_map(res.model, X, incl);
        for (int n = 0; n <= 2; ++n)
            for (long long l = 0; l <= 3; ++l) {
                auto m = sh_induced(iota, q_int(1, n, at_int(l)));
                CHECK(m.size() == (m.empty() ? 0 : m[0].size()));
                CHECK(linalg::dense_rank(m) == static_cast<long long>(m.size()));
            }
    }
}

TEST_CASE("decomposition ledger") {
    SUBCASE("a stable digraph is a single stable summand") {
        auto report = verify_decomposition(diamond_digraph(), 3, 2, 3);
        CHECK(report.ok);
        CHECK(report.jumping_points.empty());
        for (const auto& e : report.entries) {
            REQUIRE(e.summand.size() == 1);
            CHECK(e.summand[0] == e.total);
        }
    }
    SUBCASE("the four-vertex example decomposes cleanly") {
        auto report = verify_decomposition(lev_digraph(), 3, 2, 4);
        CHECK(report.ok);
        CHECK(report.jumping_points == std::vector<long long>{1, 2});
        CHECK(report.model_sizes == std::vector<int>{3, 1});
        CHECK(report.vanishing_checks == 2);
        CHECK(report.failures.empty());
    }
    SUBCASE("one-point digraph") {
        auto report = verify_decomposition(Digraph(1, {}), 3, 1, 2);
        CHECK(report.ok);
        for (const auto& e : report.entries)
            CHECK(e.total == ((e.n == 0 && e.ell == 0) ? 1 : 0));
    }
}

TEST_CASE("degree bounds for unbounded intervals") {
    auto X = shortest_path_space(lev_digraph());
    SpectralEngine eng(X);
    SHQuery q{xreal::of_int(0), 1, Interval::full(), Coefficients::rationals(), std::nullopt};
    CHECK_THROWS_AS(eng.sh(q), degree_bound_required);
    q.degree_bound = 2;
    CHECK_NOTHROW(eng.sh(q));
}

TEST_CASE("levels beyond the achievable maximum give zero") {
    auto X = shortest_path_space(lev_digraph());
    SpectralEngine eng(X);
    // max finite distance is 3; degree-1 levels stop there
    CHECK(eng.sh(q_int(1, 1, at_int(9))).rank == 0);
    CHECK(eng.sh(q_int(0, 1, at_int(9))).rank == 0);
}
