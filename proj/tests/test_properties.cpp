#include <doctest.h>

#include "testutil.hpp"

#include "qsh/lowdim.hpp"
#include "qsh/minimal_model.hpp"
#include "qsh/spectral.hpp"

#include <random>

using namespace qsh;
using namespace testutil;

TEST_CASE("property: composition never increases map distance") {
    std::mt19937 rng(555);
    for (int trial = 0; trial < 40; ++trial) {
        auto X = random_int_space(rng, 4, true);
        auto phi = random_short_self_map(rng, X);
        auto psi = random_short_self_map(rng, X);
        auto alpha = random_short_self_map(rng, X);
        auto beta = random_short_self_map(rng, X);
        auto lhs = map_distance(compose(compose(alpha, phi), beta), compose(compose(alpha, psi), beta));
        CHECK(lhs <= map_distance(phi, psi));
    }
}

TEST_CASE("property: point homotopy is an equivalence relation, monotone in r") {
    std::mt19937 rng(556);
    for (int trial = 0; trial < 25; ++trial) {
        auto X = random_int_space(rng, 5);
        for (long long r = 0; r <= 3; ++r) {
            auto R = xreal::of_int(r);
            for (int a = 0; a < 5; ++a) {
                CHECK(points_r_homotopic(*X, a, a, R));
                for (int b = 0; b < 5; ++b) {
                    CHECK(points_r_homotopic(*X, a, b, R) == points_r_homotopic(*X, b, a, R));
                    if (points_r_homotopic(*X, a, b, R))
                        CHECK(points_r_homotopic(*X, a, b, xreal::of_int(r + 1)));
                    for (int c = 0; c < 5; ++c)
                        if (points_r_homotopic(*X, a, b, R) && points_r_homotopic(*X, b, c, R))
                            CHECK(points_r_homotopic(*X, a, c, R));
                }
            }
        }
    }
}

TEST_CASE("property: short self-bijections of spaces with <= 5 points are isometries") {
    std::mt19937 rng(557);
    for (int trial = 0; trial < 15; ++trial) {
        auto X = random_int_space(rng, 4 + (trial % 2));
        for (const auto& to : all_short_self_maps(*X)) {
            ShortMap f{X, X, to};
            if (!f.is_injective()) continue;
            for (int a = 0; a < X->size; ++a)
                for (int b = 0; b < X->size; ++b) CHECK(X->d(to[a], to[b]) == X->d(a, b));
        }
    }
}

TEST_CASE("property: a contraction witness at r survives every larger radius") {
    std::mt19937 rng(558);
    for (int trial = 0; trial < 12; ++trial) {
        auto X = random_int_space(rng, 5);
        bool found_before = false;
        for (long long r = 0; r <= 4; ++r) {
            bool found = find_contracting_endo(X, xreal::of_int(r)).has_value();
            if (found_before) CHECK(found);
            found_before = found;
        }
    }
}

TEST_CASE("property: model sizes shrink with r and models are coherent") {
    std::mt19937 rng(559);
    for (int trial = 0; trial < 8; ++trial) {
        auto X = random_int_space(rng, 5);
        int prev = X->size + 1;
        SpacePtr m_r1;
        for (long long r = 0; r <= 3; ++r) {
            auto res = minimal_model(X, xreal::of_int(r));
            CHECK(res.model->size <= prev);
            prev = res.model->size;
            CHECK(verify_homotopy_chain(res.certificate));
            if (r == 1) m_r1 = res.model;
            if (r == 2 && m_r1) {
                // M_2(M_1(X)) is isometric to M_2(X)
                auto nested = minimal_model(m_r1, xreal::of_int(2));
                CHECK(is_isometric(*nested.model, *res.model).has_value());
            }
        }
    }
}

TEST_CASE("property: jumping points are distance values of the space") {
    std::mt19937 rng(560);
    for (int trial = 0; trial < 8; ++trial) {
        auto X = random_int_space(rng, 5);
        auto jumps = jumping_points(X);
        auto groups = X->distinct_finite_distances();
        for (const auto& p : jumps.points) {
            bool found = false;
            for (const auto& g : groups) found = found || g.rep == p;
            CHECK(found);
        }
        for (size_t i = 0; i + 1 < jumps.model_sizes.size(); ++i)
            CHECK(jumps.model_sizes[i] > jumps.model_sizes[i + 1]);
    }
}

TEST_CASE("property: randomized search orders give isometric models") {
    std::mt19937 rng(561);
    for (int trial = 0; trial < 5; ++trial) {
        auto X = random_int_space(rng, 5);
        auto reference = minimal_model(X, xreal::of_int(1));
        for (unsigned seed : {17u, 1729u, 31337u, 424242u, 5u}) {
            SearchOptions opts;
            opts.seed = seed;
            auto other = minimal_model(X, xreal::of_int(1), opts);
            CHECK(other.model->size == reference.model->size);
            CHECK(is_isometric(*other.model, *reference.model).has_value());
        }
    }
}

TEST_CASE("property: prism identity dh + hd = RC(psi) - RC(phi)") {
    std::mt19937 rng(562);
    int done = 0;
    while (done < 60) {
        auto X = random_int_space(rng, 4, true); // connected: map distances stay finite
        auto phi = random_short_self_map(rng, X);
        auto psi = random_short_self_map(rng, X);
        if (map_distance(phi, psi).is_inf()) continue;
        for (int degree = 0; degree <= 3 && done < 60; ++degree) {
            auto tuples = enumerate_tuples(*X, degree, Interval::full());
            if (tuples.count == 0) continue;
            std::uniform_int_distribution<size_t> pick(0, tuples.count - 1);
            auto t = tuples.tuple(pick(rng));
            auto c = make_chain(*X, degree, {{std::vector<int32_t>(t.begin(), t.end()), 1}});

            auto lhs = rc_boundary(*X, prism_homotopy(phi, psi, c));
            auto hd = prism_homotopy(phi, psi, rc_boundary(*X, c));
            for (const auto& [key, coef] : hd.terms) chain_add(lhs, key, coef, *X);

            auto rhs = rc_map(psi, c);
            auto neg = rc_map(phi, c);
            for (const auto& [key, coef] : neg.terms) chain_add(rhs, key, -coef, *X);
            CHECK(lhs == rhs);
            ++done;
        }
    }
}

TEST_CASE("property: sb <= sz and sh = sz - sb on random queries") {
    std::mt19937 rng(563);
    for (int trial = 0; trial < 10; ++trial) {
        auto X = random_int_space(rng, 5);
        SpectralEngine eng(X);
        std::uniform_int_distribution<long long> lv(0, 4);
        std::uniform_int_distribution<long long> rr(0, 2);
        for (int k = 0; k < 4; ++k) {
            SHQuery q{xreal::of_int(rr(rng)), 1, Interval::singleton(xreal::of_int(lv(rng))),
                      Coefficients::rationals(), std::nullopt};
            auto sz = eng.sz(q), sb = eng.sb(q);
            CHECK(sb <= sz);
            CHECK(eng.sh(q).rank == sz - sb);
        }
    }
}

TEST_CASE("property: rank additivity over short exact truncations") {
    // for rays R > S > L: dim C_{R\L} = dim C_{S\L} + dim C_{R\S} per degree
    std::mt19937 rng(564);
    for (int trial = 0; trial < 10; ++trial) {
        auto X = random_int_space(rng, 5);
        Interval whole = Interval::half_open(xreal::of_int(1), xreal::of_int(4)); // (1,4]
        Interval lower = Interval::half_open(xreal::of_int(1), xreal::of_int(2)); // (1,2]
        Interval upper = Interval::half_open(xreal::of_int(2), xreal::of_int(4)); // (2,4]
        TruncatedComplex cw(X, whole, 2), cl(X, lower, 2), cu(X, upper, 2);
        for (int n = 0; n <= 2; ++n) CHECK(cw.dim(n) == cl.dim(n) + cu.dim(n));
    }
}

TEST_CASE("property: homotopy invariance of spectral homology under retraction") {
    std::mt19937 rng(565);
    for (int trial = 0; trial < 5; ++trial) {
        auto X = random_int_space(rng, 5);
        const xreal r = xreal::of_int(1);
        auto res = minimal_model(X, r);
        if (res.model->size == X->size) continue;
        SpectralEngine ex(X), em(res.model);
        for (int n = 0; n <= 1; ++n)
            for (long long l = 0; l <= 3; ++l) {
                SHQuery q{r, n, Interval::singleton(xreal::of_int(l)), Coefficients::rationals(),
                          std::nullopt};
                CHECK(ex.sh(q).rank == em.sh(q).rank);
            }
    }
}
