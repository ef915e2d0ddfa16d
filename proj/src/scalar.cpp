#include "qsh/scalar.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace qsh {

std::string backend_name(Backend b) {
    switch (b) {
    case Backend::Int: return "int";
    case Backend::Rat: return "rat";
    case Backend::Flt: return "float";
    }
    return "?";
}

xreal xreal::of_int(long long v) {
    xreal x;
    x.kind_ = Backend::Int;
    x.i_ = v;
    return x;
}

xreal xreal::of_rat(bigrat v) {
    xreal x;
    x.kind_ = Backend::Rat;
    x.q_ = std::move(v);
    return x;
}

xreal xreal::of_double(double v) {
    if (std::isnan(v)) throw std::invalid_argument("NaN is not a distance value");
    xreal x;
    x.kind_ = Backend::Flt;
    if (std::isinf(v)) {
        if (v < 0) throw std::invalid_argument("-inf is not a distance value");
        x.inf_ = true;
    } else {
        x.f_ = v;
    }
    return x;
}

xreal xreal::inf(Backend b) {
    xreal x;
    x.kind_ = b;
    x.inf_ = true;
    return x;
}

xreal xreal::from_small(Backend b, long long v) {
    xreal x;
    x.kind_ = b;
    switch (b) {
    case Backend::Int: x.i_ = v; break;
    case Backend::Rat: x.q_ = v; break;
    case Backend::Flt: x.f_ = static_cast<double>(v); break;
    }
    return x;
}

bool xreal::is_zero() const {
    if (inf_) return false;
    switch (kind_) {
    case Backend::Int: return i_ == 0;
    case Backend::Rat: return q_.is_zero();
    case Backend::Flt: return f_ == 0.0;
    }
    return false;
}

bool xreal::is_negative() const {
    if (inf_) return false;
    switch (kind_) {
    case Backend::Int: return i_ < 0;
    case Backend::Rat: return q_ < 0;
    case Backend::Flt: return f_ < 0.0;
    }
    return false;
}

long long xreal::int_value() const {
    if (kind_ != Backend::Int || inf_) throw std::logic_error("not a finite integer value");
    return i_;
}

const bigrat& xreal::rat_value() const {
    if (kind_ != Backend::Rat || inf_) throw std::logic_error("not a finite rational value");
    return q_;
}

double xreal::flt_value() const {
    if (kind_ != Backend::Flt || inf_) throw std::logic_error("not a finite double value");
    return f_;
}

double xreal::approx() const {
    if (inf_) return std::numeric_limits<double>::infinity();
    switch (kind_) {
    case Backend::Int: return static_cast<double>(i_);
    case Backend::Rat: return q_.convert_to<double>();
    case Backend::Flt: return f_;
    }
    return 0.0;
}

int xreal::cmp(const xreal& o) const {
    if (kind_ != o.kind_) throw backend_mismatch();
    if (inf_ || o.inf_) {
        if (inf_ && o.inf_) return 0;
        return inf_ ? 1 : -1;
    }
    switch (kind_) {
    case Backend::Int: return i_ < o.i_ ? -1 : (i_ > o.i_ ? 1 : 0);
    case Backend::Rat: return q_ < o.q_ ? -1 : (q_ > o.q_ ? 1 : 0);
    case Backend::Flt: return f_ < o.f_ ? -1 : (f_ > o.f_ ? 1 : 0);
    }
    return 0;
}

int xreal::cmp(const xreal& o, double tau) const {
    if (kind_ != Backend::Flt || o.kind_ != Backend::Flt) return cmp(o);
    if (inf_ || o.inf_) {
        if (inf_ && o.inf_) return 0;
        return inf_ ? 1 : -1;
    }
    if (std::abs(f_ - o.f_) <= tau) return 0;
    return f_ < o.f_ ? -1 : 1;
}

xreal operator+(const xreal& a, const xreal& b) {
    if (a.kind_ != b.kind_) throw backend_mismatch();
    if (a.inf_ || b.inf_) return xreal::inf(a.kind_);
    xreal x;
    x.kind_ = a.kind_;
    switch (a.kind_) {
    case Backend::Int: x.i_ = a.i_ + b.i_; break;
    case Backend::Rat: x.q_ = a.q_ + b.q_; break;
    case Backend::Flt: x.f_ = a.f_ + b.f_; break;
    }
    return x;
}

xreal operator-(const xreal& a, const xreal& b) {
    if (a.kind_ != b.kind_) throw backend_mismatch();
    if (a.inf_ || b.inf_) throw std::logic_error("subtraction is finite-only");
    xreal x;
    x.kind_ = a.kind_;
    switch (a.kind_) {
    case Backend::Int: x.i_ = a.i_ - b.i_; break;
    case Backend::Rat: x.q_ = a.q_ - b.q_; break;
    case Backend::Flt: x.f_ = a.f_ - b.f_; break;
    }
    return x;
}

std::string xreal::str() const {
    if (inf_) return "inf";
    switch (kind_) {
    case Backend::Int: return std::to_string(i_);
    case Backend::Rat: {
        const bigint num = boost::multiprecision::numerator(q_);
        const bigint den = boost::multiprecision::denominator(q_);
        if (den == 1) return num.str();
        return num.str() + "/" + den.str();
    }
    case Backend::Flt: {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", f_);
        return buf;
    }
    }
    return "";
}

namespace {

// decimal digits only: cpp_int's string constructor would read a leading
// zero as an octal prefix
bigint decimal_bigint(std::string s) {
    bool negative = !s.empty() && (s[0] == '-' || s[0] == '+') ? s[0] == '-' : false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) s.erase(0, 1);
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("not a decimal integer: " + s);
    bigint v = 0;
    for (char c : s) v = v * 10 + (c - '0');
    return negative ? -v : v;
}

bigrat rational_from_decimal(const std::string& s) {
    // accepts "p/q", plain integers, and decimal literals like "-1.25"
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        bigint num = decimal_bigint(s.substr(0, slash));
        bigint den = decimal_bigint(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator: " + s);
        return bigrat(num, den);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return bigrat(decimal_bigint(s));
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    size_t frac_len = s.size() - dot - 1;
    bigint den = 1;
    for (size_t i = 0; i < frac_len; ++i) den *= 10;
    return bigrat(decimal_bigint(digits), den);
}

} // namespace

xreal xreal::parse(const std::string& token, Backend b) {
    if (token == "inf" || token == "+inf") return xreal::inf(b);
    try {
        switch (b) {
        case Backend::Int: {
            size_t pos = 0;
            long long v = std::stoll(token, &pos);
            if (pos != token.size()) throw std::invalid_argument(token);
            return xreal::of_int(v);
        }
        case Backend::Rat: return xreal::of_rat(rational_from_decimal(token));
        case Backend::Flt: {
            size_t pos = 0;
            double v = std::stod(token, &pos);
            if (pos != token.size()) throw std::invalid_argument(token);
            return xreal::of_double(v);
        }
        }
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse '" + token + "' as " + backend_name(b) + " value");
    }
    throw std::invalid_argument("bad backend");
}

} // namespace qsh
