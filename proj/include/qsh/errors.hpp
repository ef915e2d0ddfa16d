#pragma once

#include <stdexcept>
#include <string>

namespace qsh {

struct qsh_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class AxiomViolation { NegativeEntry, NonzeroDiagonal, ZeroOffDiagonal, TriangleViolation };

struct validation_error : qsh_error {
    AxiomViolation kind;
    int x = -1, y = -1, z = -1;
    validation_error(AxiomViolation k, std::string msg, int x_, int y_, int z_ = -1)
        : qsh_error(std::move(msg)), kind(k), x(x_), y(y_), z(z_) {}
};

struct mismatched_spaces : qsh_error {
    mismatched_spaces() : qsh_error("maps live on different spaces") {}
};

struct not_short : qsh_error {
    int x = -1, y = -1;
    not_short(int x_, int y_)
        : qsh_error("assignment increases the distance from point " + std::to_string(x_) + " to " +
                    std::to_string(y_)),
          x(x_), y(y_) {}
};

struct budget_exceeded : qsh_error {
    long long budget;
    explicit budget_exceeded(long long b)
        : qsh_error("search node budget exceeded (" + std::to_string(b) + " nodes)"), budget(b) {}
};

struct empty_interval : qsh_error {
    empty_interval() : qsh_error("interval is empty") {}
};

struct not_comparable : qsh_error {
    not_comparable() : qsh_error("intervals are not comparable under the ray order") {}
};

struct degree_bound_required : qsh_error {
    degree_bound_required()
        : qsh_error("interval is unbounded above: an explicit degree bound is required") {}
};

struct degree_not_materialized : qsh_error {
    int degree;
    explicit degree_not_materialized(int n)
        : qsh_error("degree " + std::to_string(n) + " is not materialized"), degree(n) {}
};

struct not_a_chain_map : qsh_error {
    not_a_chain_map() : qsh_error("matrices do not commute with the boundaries") {}
};

struct not_a_subdigraph : qsh_error {
    not_a_subdigraph() : qsh_error("not a subdigraph") {}
};

struct not_a_retraction : qsh_error {
    not_a_retraction() : qsh_error("map does not restrict to the identity on the subset") {}
};

struct non_integer_query : qsh_error {
    non_integer_query()
        : qsh_error("digraph spectral-sequence queries require integer interval endpoints") {}
};

struct precondition_violated : qsh_error {
    using qsh_error::qsh_error;
};

struct not_euclidean : qsh_error {
    not_euclidean() : qsh_error("space carries no point coordinates") {}
};

struct parse_error : qsh_error {
    int line, col;
    parse_error(std::string msg, int line_, int col_ = 0)
        : qsh_error("parse error at line " + std::to_string(line_) + ": " + msg), line(line_), col(col_) {}
};

} // namespace qsh
