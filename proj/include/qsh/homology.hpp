#pragma once

#include "qsh/complex.hpp"
#include "qsh/linalg.hpp"

#include <vector>

namespace qsh {

enum class Ring : unsigned char { Z, Q, Fp };

struct Coefficients {
    Ring ring = Ring::Q;
    uint32_t p = 0; // for Fp

    static Coefficients integers() { return {Ring::Z, 0}; }
    static Coefficients rationals() { return {Ring::Q, 0}; }
    static Coefficients mod(uint32_t p) { return {Ring::Fp, p}; }
    bool is_field() const { return ring != Ring::Z; }
    std::string str() const;
};

struct HomologyGroup {
    long long rank = 0;
    std::vector<bigint> torsion; // invariant factors > 1, divisibility chain

    bool operator==(const HomologyGroup& o) const { return rank == o.rank && torsion == o.torsion; }
};

// H_n of a truncated complex; needs degrees n and n+1 materialized.
// Torsion is computed only over Z.
HomologyGroup homology(const TruncatedComplex& c, int n, Coefficients k = Coefficients::integers());

// rank of the image of H_n(f), over a field:
// rank [ f(Z_n(src)) | B_n(dst) ] - rank B_n(dst)
long long induced_image_rank(const ChainMap& f, int n, Coefficients field = Coefficients::rationals());

} // namespace qsh
