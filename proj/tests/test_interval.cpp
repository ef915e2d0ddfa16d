#include <doctest.h>

#include "qsh/interval.hpp"

#include <random>
#include <vector>

using namespace qsh;

namespace {
xreal iv(long long v) { return xreal::of_int(v); }
} // namespace

TEST_CASE("canonical ray pairs of the constructors") {
    auto s = Interval::singleton(iv(3));
    CHECK(s.right().kind == LeftRay::Kind::BelowEq);
    CHECK(s.right().a == iv(3));
    CHECK(s.left().kind == LeftRay::Kind::Below);
    CHECK(s.left().a == iv(3));

    auto f = Interval::full();
    CHECK(f.right().kind == LeftRay::Kind::All);
    CHECK(f.left().kind == LeftRay::Kind::Empty);

    auto c = Interval::closed(iv(1), iv(2));
    CHECK(c.right().kind == LeftRay::Kind::BelowEq);
    CHECK(c.right().a == iv(2));
    CHECK(c.left().kind == LeftRay::Kind::Below);
    CHECK(c.left().a == iv(1));

    CHECK_THROWS_AS(Interval::closed(iv(2), iv(1)), empty_interval);
    CHECK_THROWS_AS(Interval::half_open(iv(2), iv(2)), empty_interval);
    CHECK_THROWS_AS(Interval::open(iv(1), iv(1)), empty_interval);
}

TEST_CASE("membership matches set semantics") {
    auto s = Interval::singleton(iv(3));
    CHECK(s.contains(iv(3)));
    CHECK_FALSE(s.contains(iv(2)));
    CHECK_FALSE(s.contains(iv(4)));

    auto h = Interval::half_open(iv(1), iv(4)); // (1,4]
    CHECK_FALSE(h.contains(iv(1)));
    CHECK(h.contains(iv(2)));
    CHECK(h.contains(iv(4)));

    CHECK(Interval::full().contains(iv(-100)));
    CHECK_FALSE(Interval::full().contains(xreal::inf(Backend::Int)));
}

TEST_CASE("the order: reflexive, and the two frozen comparisons") {
    auto s = Interval::singleton(iv(5));
    CHECK(s.precedes(s));
    // {l} precedes [l, l+r]
    CHECK(Interval::singleton(iv(5)).precedes(Interval::closed(iv(5), iv(7))));
    // [0,1] does not precede {0}
    CHECK_FALSE(Interval::closed(iv(0), iv(1)).precedes(Interval::singleton(iv(0))));
}

TEST_CASE("expansions: singleton stretches to the closed windows") {
    auto s = Interval::singleton(iv(5));
    auto lo = s.lower_expand(iv(2));
    CHECK(lo == Interval::closed(iv(3), iv(5)));
    auto hi = s.upper_expand(iv(2));
    CHECK(hi == Interval::closed(iv(5), iv(7)));
    CHECK(lo.precedes(s));
    CHECK(s.precedes(hi));

    CHECK(Interval::full().lower_expand(iv(1)) == Interval::full());
    CHECK(Interval::full().upper_expand(iv(1)) == Interval::full());
    CHECK(s.lower_expand(iv(0)) == s);
}

TEST_CASE("parse and print round-trip") {
    for (const char* text : {"{3}", "[1,2]", "(1,2]", "[1,2)", "(1,2)", "(-inf,4]", "(-inf,4)",
                             "[2,inf)", "(2,inf)", "R"}) {
        auto i = Interval::parse(text, Backend::Int);
        CHECK(i.str() == text);
    }
    CHECK(Interval::parse(" [ 1 , 2 ] ", Backend::Int) == Interval::closed(iv(1), iv(2)));
    CHECK_THROWS(Interval::parse("[1,2", Backend::Int));
    CHECK_THROWS(Interval::parse("[inf,2]", Backend::Int));
    CHECK_THROWS(Interval::parse("{}", Backend::Int));
}

TEST_CASE("property: precedes is a partial order; expansions are monotone") {
    std::mt19937 rng(20250810);
    std::uniform_int_distribution<int> val(-4, 8), kind(0, 5);
    auto random_interval = [&]() -> Interval {
        for (;;) {
            try {
                int a = val(rng), b = val(rng);
                switch (kind(rng)) {
                case 0: return Interval::singleton(iv(a));
                case 1: return Interval::closed(iv(a), iv(b));
                case 2: return Interval::half_open(iv(a), iv(b));
                case 3: return Interval::left_closed_ray(iv(a));
                case 4: return Interval::right_ray(iv(a), true);
                default: return Interval::full();
                }
            } catch (const empty_interval&) {
            }
        }
    };
    for (int trial = 0; trial < 500; ++trial) {
        auto a = random_interval(), b = random_interval(), c = random_interval();
        CHECK(a.precedes(a));
        if (a.precedes(b) && b.precedes(a)) CHECK(a == b);
        if (a.precedes(b) && b.precedes(c)) CHECK(a.precedes(c));
        auto r = iv(std::uniform_int_distribution<int>(0, 3)(rng));
        if (a.precedes(b)) {
            CHECK(a.lower_expand(r).precedes(b.lower_expand(r)));
            CHECK(a.upper_expand(r).precedes(b.upper_expand(r)));
        }
        CHECK(a.lower_expand(r).precedes(a));
        CHECK(a.precedes(a.upper_expand(r)));
        // membership against the ray presentation
        for (int x = -6; x <= 10; ++x)
            CHECK(a.contains(iv(x)) == (a.right().contains(iv(x)) && !a.left().contains(iv(x))));
    }
}
