#include "qsh/interval.hpp"

#include <algorithm>
#include <cctype>

namespace qsh {

bool LeftRay::contains(const xreal& x, double tau) const {
    switch (kind) {
    case Kind::Empty: return false;
    case Kind::All: return !x.is_inf(); // rays are subsets of R
    case Kind::Below: return x.cmp(a, tau) < 0;
    case Kind::BelowEq: return x.cmp(a, tau) <= 0;
    }
    return false;
}

bool LeftRay::subset_of(const LeftRay& o) const {
    if (kind == Kind::Empty || o.kind == Kind::All) return true;
    if (o.kind == Kind::Empty || kind == Kind::All) return false;
    if (kind == Kind::BelowEq && o.kind == Kind::Below) return a < o.a;
    return a <= o.a;
}

bool LeftRay::operator==(const LeftRay& o) const {
    if (kind != o.kind) return false;
    if (!has_endpoint()) return true;
    return a == o.a;
}

LeftRay LeftRay::shifted_up(const xreal& r) const {
    if (!has_endpoint()) return *this;
    return {kind, a + r};
}

LeftRay LeftRay::shifted_down(const xreal& r) const {
    if (!has_endpoint()) return *this;
    return {kind, a - r};
}

Interval::Interval(LeftRay right, LeftRay left) : right_(std::move(right)), left_(std::move(left)) {
    if (!left_.subset_of(right_) || left_ == right_) throw empty_interval();
}

Interval Interval::singleton(const xreal& l) { return {LeftRay::below_eq(l), LeftRay::below(l)}; }

Interval Interval::closed(const xreal& a, const xreal& b) {
    return {LeftRay::below_eq(b), LeftRay::below(a)};
}

Interval Interval::half_open(const xreal& a, const xreal& b) {
    return {LeftRay::below_eq(b), LeftRay::below_eq(a)};
}

Interval Interval::open(const xreal& a, const xreal& b) {
    return {LeftRay::below(b), LeftRay::below_eq(a)};
}

Interval Interval::closed_open(const xreal& a, const xreal& b) {
    return {LeftRay::below(b), LeftRay::below(a)};
}

Interval Interval::left_closed_ray(const xreal& b) { return {LeftRay::below_eq(b), LeftRay::empty()}; }

Interval Interval::left_open_ray(const xreal& b) { return {LeftRay::below(b), LeftRay::empty()}; }

Interval Interval::full() { return {LeftRay::all(), LeftRay::empty()}; }

Interval Interval::right_ray(const xreal& a, bool closed) {
    return {LeftRay::all(), closed ? LeftRay::below(a) : LeftRay::below_eq(a)};
}

bool Interval::contains(const xreal& x, double tau) const {
    return right_.contains(x, tau) && !left_.contains(x, tau);
}

bool Interval::precedes(const Interval& j) const {
    return right_.subset_of(j.right_) && left_.subset_of(j.left_);
}

Interval Interval::lower_expand(const xreal& r) const { return {right_, left_.shifted_down(r)}; }

Interval Interval::upper_expand(const xreal& r) const { return {right_.shifted_up(r), left_}; }

std::string Interval::str() const {
    using K = LeftRay::Kind;
    if (right_.kind == K::All && left_.kind == K::Empty) return "R";
    if (left_.kind == K::Empty)
        return "(-inf," + right_.a.str() + (right_.kind == K::BelowEq ? "]" : ")");
    if (right_.kind == K::All)
        return (left_.kind == K::Below ? "[" : "(") + left_.a.str() + ",inf)";
    if (right_.kind == K::BelowEq && left_.kind == K::Below && right_.a == left_.a)
        return "{" + left_.a.str() + "}";
    std::string s = (left_.kind == K::Below ? "[" : "(");
    s += left_.a.str() + "," + right_.a.str();
    s += (right_.kind == K::BelowEq ? "]" : ")");
    return s;
}

Interval Interval::parse(const std::string& text, Backend b) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw qsh_error("empty interval expression");
    if (s == "R") return full();
    if (s.front() == '{' && s.back() == '}') return singleton(xreal::parse(s.substr(1, s.size() - 2), b));
    if (s.size() < 5 || (s.front() != '[' && s.front() != '(') || (s.back() != ']' && s.back() != ')'))
        throw qsh_error("bad interval syntax: " + text);
    auto comma = s.find(',');
    if (comma == std::string::npos) throw qsh_error("bad interval syntax: " + text);
    std::string lo = s.substr(1, comma - 1);
    std::string hi = s.substr(comma + 1, s.size() - comma - 2);
    const bool lo_closed = s.front() == '[';
    const bool hi_closed = s.back() == ']';

    LeftRay left, right;
    if (lo == "-inf") {
        if (lo_closed) throw qsh_error("-inf endpoint must be open: " + text);
        left = LeftRay::empty();
    } else {
        xreal a = xreal::parse(lo, b);
        left = lo_closed ? LeftRay::below(a) : LeftRay::below_eq(a);
    }
    if (hi == "inf" || hi == "+inf") {
        if (hi_closed) throw qsh_error("inf endpoint must be open: " + text);
        right = LeftRay::all();
    } else {
        xreal v = xreal::parse(hi, b);
        right = hi_closed ? LeftRay::below_eq(v) : LeftRay::below(v);
    }
    return {right, left};
}

} // namespace qsh
