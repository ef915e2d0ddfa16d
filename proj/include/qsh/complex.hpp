#pragma once

#include "qsh/interval.hpp"
#include "qsh/linalg.hpp"
#include "qsh/space.hpp"

#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace qsh {

// set by tests and verify mode: re-check d^2 = 0, chain-map commutation and
// SNF postconditions on every construction
extern bool paranoid_checks;

xreal tuple_level(const QMetSpace& X, std::span<const int32_t> t);
bool valid_rc_tuple(const QMetSpace& X, std::span<const int32_t> t); // repetition-free, reachable

struct TupleBasis {
    int arity = 1; // degree + 1
    size_t count = 0;
    std::vector<int32_t> flat; // count * arity point indices
    std::vector<xreal> levels;

    std::span<const int32_t> tuple(size_t i) const {
        return {flat.data() + i * arity, static_cast<size_t>(arity)};
    }
};

// depth-first enumeration in lexicographic point order, pruned by the right
// ray; basis of (C_I)_n = tuples whose level lies in I
TupleBasis enumerate_tuples(const QMetSpace& X, int n, const Interval& I);

// C_I = F_R RC(X) / F_L RC(X), materialized through degree_bound
class TruncatedComplex {
  public:
    TruncatedComplex(SpacePtr X, Interval I, int degree_bound);

    const SpacePtr& space() const { return space_; }
    const Interval& interval() const { return interval_; }
    int degree_bound() const { return bound_; }
    const TupleBasis& basis(int n) const;
    // boundary(n): C_n -> C_{n-1}; boundary(0) has zero rows
    const linalg::SparseIntMatrix& boundary(int n) const;
    long long dim(int n) const { return static_cast<long long>(basis(n).count); }

    long long index_of(int n, std::span<const int32_t> t) const; // -1 when absent

    // per-degree "level : x0,x1,...,xn" listing plus (row, col, sign) triplets
    std::string dump() const;

  private:
    SpacePtr space_;
    Interval interval_;
    int bound_;
    std::vector<TupleBasis> basis_;
    std::vector<linalg::SparseIntMatrix> boundary_;
    std::vector<std::unordered_map<std::string, long long>> index_;
};

// basis tuple of ci kept if its level lies in cj's interval, else 0;
// requires ci.interval precedes cj.interval on the same space
linalg::SparseIntMatrix inclusion_matrix(const TruncatedComplex& ci, const TruncatedComplex& cj, int n);

struct ChainMap {
    const TruncatedComplex* src = nullptr;
    const TruncatedComplex* dst = nullptr;
    std::vector<linalg::SparseIntMatrix> deg; // deg[k]: src C_k -> dst C_k
};

ChainMap inclusion_chain_map(const TruncatedComplex& ci, const TruncatedComplex& cj);
// chain map induced by a short map on quotient complexes over one interval
ChainMap induced_chain_map(const ShortMap& f, const TruncatedComplex& cx, const TruncatedComplex& cy);
void check_chain_map(const ChainMap& f); // throws not_a_chain_map

// ---------------------------------------------------------------------------
// raw reachability chains (prism operator and its identity live here)

struct Chain {
    int degree = 0;
    std::map<std::vector<int32_t>, long long> terms; // tuple -> coefficient

    bool operator==(const Chain& o) const { return degree == o.degree && terms == o.terms; }
};

Chain make_chain(const QMetSpace& X, int degree,
                 std::initializer_list<std::pair<std::vector<int32_t>, long long>> terms);
void chain_add(Chain& acc, std::span<const int32_t> t, long long coef, const QMetSpace& Y);

Chain rc_boundary(const QMetSpace& X, const Chain& c);
Chain rc_map(const ShortMap& f, const Chain& c);

// h = sum_j (-1)^j (phi x_0, ..., phi x_j, psi x_j, ..., psi x_n);
// degenerate or unreachable prism tuples are dropped as zero
Chain prism_homotopy(const ShortMap& phi, const ShortMap& psi, const Chain& c);

} // namespace qsh
