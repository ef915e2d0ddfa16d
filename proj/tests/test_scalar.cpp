#include <doctest.h>

#include "qsh/scalar.hpp"

#include <cmath>

using namespace qsh;

TEST_CASE("integer backend arithmetic and comparisons") {
    auto a = xreal::of_int(3), b = xreal::of_int(4);
    CHECK((a + b).int_value() == 7);
    CHECK(a < b);
    CHECK(a == xreal::of_int(3));
    CHECK_THROWS_AS((void)a.cmp(xreal::of_double(3.0)), backend_mismatch);
}

TEST_CASE("infinity absorbs addition and dominates comparisons") {
    for (Backend b : {Backend::Int, Backend::Rat, Backend::Flt}) {
        auto inf = xreal::inf(b);
        auto one = xreal::from_small(b, 1);
        CHECK((inf + one).is_inf());
        CHECK((one + inf).is_inf());
        CHECK(one < inf);
        CHECK(inf == xreal::inf(b));
        CHECK_FALSE(inf < inf);
    }
}

TEST_CASE("no inf - inf anywhere: subtraction is finite-only") {
    auto inf = xreal::inf(Backend::Int);
    CHECK_THROWS(inf - inf);
    CHECK_THROWS(xreal::of_int(1) - inf);
    CHECK((xreal::of_int(1) - xreal::of_int(3)).int_value() == -2);
}

TEST_CASE("rational backend is exact") {
    auto third = xreal::parse("1/3", Backend::Rat);
    auto sixth = xreal::parse("1/6", Backend::Rat);
    CHECK(third + sixth == xreal::parse("1/2", Backend::Rat));
    CHECK(xreal::parse("0.25", Backend::Rat) == xreal::parse("1/4", Backend::Rat));
}

TEST_CASE("tau-tolerant comparison only ties the float backend") {
    auto a = xreal::of_double(1.0);
    auto b = xreal::of_double(1.0 + 4e-10);
    CHECK(a.cmp(b) < 0);
    CHECK(a.cmp(b, 1e-9) == 0);
    CHECK(xreal::of_int(1).cmp(xreal::of_int(2), 10.0) < 0); // exact backends ignore tau
}

TEST_CASE("textual round-trip is exact in every backend") {
    auto roundtrip = [](const xreal& v) { return xreal::parse(v.str(), v.backend()) == v; };
    CHECK(roundtrip(xreal::of_int(91)));
    CHECK(roundtrip(xreal::inf(Backend::Flt)));
    CHECK(roundtrip(xreal::parse("22/7", Backend::Rat)));
    CHECK(roundtrip(xreal::of_double(0.1)));
    CHECK(roundtrip(xreal::of_double(std::sqrt(2.0))));
}

TEST_CASE("parse rejects junk") {
    CHECK_THROWS(xreal::parse("1.5", Backend::Int));
    CHECK_THROWS(xreal::parse("abc", Backend::Flt));
    CHECK_THROWS(xreal::parse("1/0", Backend::Rat));
}
