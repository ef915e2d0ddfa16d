#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qsh {

using bigint = boost::multiprecision::cpp_int;
using bigrat = boost::multiprecision::cpp_rational;

enum class Backend : unsigned char { Int, Rat, Flt };

std::string backend_name(Backend b);

struct backend_mismatch : std::logic_error {
    backend_mismatch() : std::logic_error("mixed numeric backends") {}
};

// Extended real number in one fixed backend: exact integer, exact rational,
// or binary double. +inf is a distinguished value that absorbs addition.
// Distances are nonnegative; interval endpoints may go negative after shifts,
// so the value itself is not sign-restricted here.
class xreal {
  public:
    xreal() = default;

    static xreal of_int(long long v);
    static xreal of_rat(bigrat v);
    static xreal of_double(double v);
    static xreal inf(Backend b);
    static xreal zero(Backend b) { return from_small(b, 0); }
    // small integer lifted into any backend (useful for shifts like l+1)
    static xreal from_small(Backend b, long long v);

    Backend backend() const { return kind_; }
    bool is_inf() const { return inf_; }
    bool is_zero() const;
    bool is_negative() const;

    long long int_value() const; // Int backend, finite
    const bigrat& rat_value() const;
    double flt_value() const;
    double approx() const; // lossy double view, +inf for inf

    // exact three-way compare within the backend; +inf above every finite value
    int cmp(const xreal& o) const;
    // tau-tolerant compare: Flt treats |a-b| <= tau as a tie; exact otherwise
    int cmp(const xreal& o, double tau) const;

    bool operator==(const xreal& o) const { return cmp(o) == 0; }
    bool operator!=(const xreal& o) const { return cmp(o) != 0; }
    bool operator<(const xreal& o) const { return cmp(o) < 0; }
    bool operator<=(const xreal& o) const { return cmp(o) <= 0; }
    bool operator>(const xreal& o) const { return cmp(o) > 0; }
    bool operator>=(const xreal& o) const { return cmp(o) >= 0; }

    friend xreal operator+(const xreal& a, const xreal& b);
    // finite operands only; never applied to inf (no inf - inf anywhere)
    friend xreal operator-(const xreal& a, const xreal& b);

    // exact textual form: "inf", decimal integer, "p/q", or %.17g double
    std::string str() const;
    static xreal parse(const std::string& token, Backend b);

  private:
    Backend kind_ = Backend::Int;
    bool inf_ = false;
    long long i_ = 0;
    double f_ = 0.0;
    bigrat q_;
};

} // namespace qsh
