#pragma once

#include "qsh/digraph.hpp"
#include "qsh/homology.hpp"
#include "qsh/interval.hpp"
#include "qsh/minimal_model.hpp"
#include "qsh/space.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace qsh {

enum class Provenance : unsigned char { ImageFormula, CePageFormula, LowdimOracle };
std::string provenance_name(Provenance p);

struct SHQuery {
    xreal r;
    int n = 0;
    Interval I = Interval::full();
    Coefficients coeff = Coefficients::rationals();
    std::optional<int> degree_bound; // required when I^r is unbounded above
};

struct SHResult {
    long long rank = 0;
    std::vector<bigint> torsion; // populated only when the query is plain Z homology (r = 0)
    Provenance provenance = Provenance::ImageFormula;
};

struct Bar {
    xreal birth;
    xreal death; // meaningful when !infinite
    bool infinite = false;
};

struct PersistenceDiagram {
    int degree = 0;
    xreal radius;
    std::vector<Bar> bars;              // repeated per multiplicity, sorted by (birth, death)
    std::vector<xreal> critical_values; // evaluated level axis
    std::vector<long long> dims;        // dim SH^r_{n,(-inf,l]} at each critical value
};

// Spectral homology of one space, with a shared cache of truncated complexes.
// Queries are pure; the cache is safe for concurrent callers.
class SpectralEngine {
  public:
    explicit SpectralEngine(SpacePtr X) : X_(std::move(X)) {}
    const SpacePtr& space() const { return X_; }

    // image of H_n(C_{I_r}) -> H_n(C_{I^r}); plain homology when r = 0
    SHResult sh(const SHQuery& q);
    // spectral cycles: image of H_n(C_{I_r}) -> H_n(C_I)
    long long sz(const SHQuery& q);
    // spectral boundaries: kernel of H_n(C_I) -> H_n(C_{I^r})
    long long sb(const SHQuery& q);

    HomologyGroup magnitude_homology(int n, const xreal& ell);
    // blurred magnitude persistence for r = 0; general persistent SH otherwise
    PersistenceDiagram persistent_sh(const xreal& r, int n);
    HomologyGroup reachability_homology(int n, int degree_bound);

    // page s of the spectral sequence of the length filtration, via the image
    // formula on the singleton {ell}; integer backend only
    long long mpss_page(int s, int n, long long ell);
    // the same rank through the classical cycle/boundary subquotients
    long long mpss_page_ce(int s, int n, long long ell);

    // achieved tuple levels at a degree, tau-grouped, ascending
    std::vector<xreal> critical_levels(int degree);

    std::shared_ptr<const TruncatedComplex> complex(const Interval& I, int degree_bound);

  private:
    SpacePtr X_;
    std::mutex mu_;
    std::map<std::pair<std::string, int>, std::shared_ptr<const TruncatedComplex>> cache_;

    int bound_for(const Interval& I, int n, const std::optional<int>& requested) const;
};

// matrix of SH^r_{n,I}(phi) over Q with respect to the computed image bases
linalg::QMat sh_induced(const ShortMap& phi, const SHQuery& q);

struct DecompositionReport {
    std::vector<long long> jumping_points;
    std::vector<int> model_sizes;
    struct Entry {
        int page = 0, n = 0;
        long long ell = 0;
        std::vector<long long> summand; // [1..k] then the stable tail summand
        long long total = 0;
    };
    std::vector<Entry> entries;
    int vanishing_checks = 0; // pages r_k + 1 that fit under max_page, per (n, ell)
    bool ok = true;
    std::vector<std::string> failures;
};

// rank bookkeeping for the direct-sum decomposition along the nested minimal
// models: nonnegative summands, telescoping totals, and summand k vanishing
// at page r_k + 1
DecompositionReport verify_decomposition(const Digraph& g, int max_page, int max_n, long long max_ell,
                                         const SearchOptions& opts = {});

} // namespace qsh
