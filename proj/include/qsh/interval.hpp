#pragma once

#include "qsh/errors.hpp"
#include "qsh/scalar.hpp"

#include <string>

namespace qsh {

// Left-infinite ray: one of {}, (-inf,a), (-inf,a], R.
struct LeftRay {
    enum class Kind : unsigned char { Empty, Below, BelowEq, All };
    Kind kind = Kind::Empty;
    xreal a; // endpoint for Below / BelowEq

    static LeftRay empty() { return {Kind::Empty, {}}; }
    static LeftRay all() { return {Kind::All, {}}; }
    static LeftRay below(xreal v) { return {Kind::Below, std::move(v)}; }
    static LeftRay below_eq(xreal v) { return {Kind::BelowEq, std::move(v)}; }

    bool has_endpoint() const { return kind == Kind::Below || kind == Kind::BelowEq; }
    bool contains(const xreal& x, double tau = 0.0) const;
    bool subset_of(const LeftRay& o) const;
    bool operator==(const LeftRay& o) const;

    // translate the endpoint; Empty and R are shift-invariant
    LeftRay shifted_up(const xreal& r) const;
    LeftRay shifted_down(const xreal& r) const;
};

// Nonempty real interval presented as R \ L with L a proper subset of R.
class Interval {
  public:
    // throws empty_interval unless L is a proper subset of R
    Interval(LeftRay right, LeftRay left);

    static Interval singleton(const xreal& l);
    static Interval closed(const xreal& a, const xreal& b);
    static Interval half_open(const xreal& a, const xreal& b); // (a, b]
    static Interval open(const xreal& a, const xreal& b);
    static Interval closed_open(const xreal& a, const xreal& b); // [a, b)
    static Interval left_closed_ray(const xreal& b);             // (-inf, b]
    static Interval left_open_ray(const xreal& b);               // (-inf, b)
    static Interval full();
    static Interval right_ray(const xreal& a, bool closed); // [a, inf) / (a, inf)

    const LeftRay& right() const { return right_; }
    const LeftRay& left() const { return left_; }

    // tau widens endpoint ties for the float backend; 0 = exact
    bool contains(const xreal& x, double tau = 0.0) const;
    bool bounded_above() const { return right_.kind != LeftRay::Kind::All; }

    // I <= J iff R_I subset R_J and L_I subset L_J
    bool precedes(const Interval& j) const;
    bool operator==(const Interval& o) const { return right_ == o.right_ && left_ == o.left_; }

    Interval lower_expand(const xreal& r) const; // I_r = R \ (L - r)
    Interval upper_expand(const xreal& r) const; // I^r = (R + r) \ L

    // "{l}" | "[a,b]" | "(a,b]" | "[a,b)" | "(a,b)" | "(-inf,b]" | "(-inf,b)"
    // | "[a,inf)" | "(a,inf)" | "R"
    std::string str() const;
    static Interval parse(const std::string& text, Backend b);

  private:
    LeftRay right_, left_;
};

} // namespace qsh
