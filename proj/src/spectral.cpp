#include "qsh/spectral.hpp"

#include <algorithm>

namespace qsh {

std::string provenance_name(Provenance p) {
    switch (p) {
    case Provenance::ImageFormula: return "image-formula";
    case Provenance::CePageFormula: return "ce-page-formula";
    case Provenance::LowdimOracle: return "lowdim-oracle";
    }
    return "?";
}

std::shared_ptr<const TruncatedComplex> SpectralEngine::complex(const Interval& I, int degree_bound) {
    const std::pair<std::string, int> key{I.str(), degree_bound};
    {
        std::lock_guard lock(mu_);
        // a cached complex with the same interval and a bound at least as deep works
        for (auto it = cache_.lower_bound({key.first, degree_bound}); it != cache_.end(); ++it) {
            if (it->first.first != key.first) break;
            return it->second;
        }
    }
    auto built = std::make_shared<TruncatedComplex>(X_, I, degree_bound);
    std::lock_guard lock(mu_);
    auto [it, inserted] = cache_.emplace(key, built);
    return it->second;
}

int SpectralEngine::bound_for(const Interval& I, int n, const std::optional<int>& requested) const {
    if (requested) {
        if (*requested < n + 1) throw qsh_error("degree bound must be at least n+1");
        return *requested;
    }
    if (!I.bounded_above()) throw degree_bound_required();
    return n + 1;
}

namespace {

void check_query(const QMetSpace& X, const SHQuery& q) {
    if (q.r.backend() != X.backend) throw backend_mismatch();
    if (q.r.is_negative() || q.r.is_inf())
        throw precondition_violated("spectral radius must be finite and >= 0");
    if (q.n < 0) throw precondition_violated("degree must be >= 0");
}

} // namespace

SHResult SpectralEngine::sh(const SHQuery& q) {
    check_query(*X_, q);
    if (q.r.is_zero()) {
        auto c = complex(q.I, bound_for(q.I, q.n, q.degree_bound));
        auto h = homology(*c, q.n, q.coeff);
        return {h.rank, std::move(h.torsion), Provenance::ImageFormula};
    }
    if (!q.coeff.is_field())
        throw qsh_error("r > 0 spectral homology is computed over a field (use Q or Fp)");
    const Interval lo = q.I.lower_expand(q.r);
    const Interval hi = q.I.upper_expand(q.r);
    auto c_lo = complex(lo, q.n);
    auto c_hi = complex(hi, bound_for(hi, q.n, q.degree_bound));
    auto f = inclusion_chain_map(*c_lo, *c_hi);
    return {induced_image_rank(f, q.n, q.coeff), {}, Provenance::ImageFormula};
}

long long SpectralEngine::sz(const SHQuery& q) {
    check_query(*X_, q);
    if (!q.coeff.is_field()) throw qsh_error("spectral cycles are ranks over a field");
    auto c_lo = complex(q.I.lower_expand(q.r), q.n);
    auto c_mid = complex(q.I, bound_for(q.I, q.n, q.degree_bound));
    auto f = inclusion_chain_map(*c_lo, *c_mid);
    return induced_image_rank(f, q.n, q.coeff);
}

long long SpectralEngine::sb(const SHQuery& q) {
    check_query(*X_, q);
    if (!q.coeff.is_field()) throw qsh_error("spectral boundaries are ranks over a field");
    const Interval hi = q.I.upper_expand(q.r);
    auto c_mid = complex(q.I, bound_for(q.I, q.n, q.degree_bound));
    auto c_hi = complex(hi, bound_for(hi, q.n, q.degree_bound));
    auto f = inclusion_chain_map(*c_mid, *c_hi);
    const long long betti = homology(*c_mid, q.n, q.coeff).rank;
    return betti - induced_image_rank(f, q.n, q.coeff);
}

HomologyGroup SpectralEngine::magnitude_homology(int n, const xreal& ell) {
    if (ell.is_negative() || ell.is_inf())
        throw precondition_violated("magnitude level must be finite and >= 0");
    auto c = complex(Interval::singleton(ell), n + 1);
    return homology(*c, n, Coefficients::integers());
}

HomologyGroup SpectralEngine::reachability_homology(int n, int degree_bound) {
    if (degree_bound < n + 1) throw qsh_error("reachability homology needs degree_bound >= n+1");
    auto c = complex(Interval::full(), degree_bound);
    auto h = homology(*c, n, Coefficients::integers());
    if (paranoid_checks) {
        // the rank must not depend on the query radius
        SHQuery q0{xreal::zero(X_->backend), n, Interval::full(), Coefficients::rationals(),
                   degree_bound};
        SHQuery q1{xreal::from_small(X_->backend, 1), n, Interval::full(), Coefficients::rationals(),
                   degree_bound};
        if (sh(q0).rank != h.rank || sh(q1).rank != h.rank)
            throw qsh_error("reachability homology differs between r = 0 and r = 1 paths");
    }
    return h;
}

std::vector<xreal> SpectralEngine::critical_levels(int degree) {
    auto all = enumerate_tuples(*X_, degree, Interval::full());
    std::vector<xreal> levels(all.levels.begin(), all.levels.end());
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    if (X_->backend != Backend::Flt) return levels;
    std::vector<xreal> reps;
    for (const auto& v : levels) {
        if (!reps.empty() && reps.back().cmp(v, X_->tau) == 0)
            reps.back() = v; // group maximum represents the tau-class
        else
            reps.push_back(v);
    }
    return reps;
}

PersistenceDiagram SpectralEngine::persistent_sh(const xreal& r, int n) {
    if (r.backend() != X_->backend) throw backend_mismatch();
    if (r.is_negative() || r.is_inf())
        throw precondition_violated("persistence radius must be finite and >= 0");
    PersistenceDiagram out{n, r, {}, {}, {}};
    auto ts = critical_levels(n);
    if (ts.empty()) return out;
    ts.push_back(ts.back() + xreal::from_small(X_->backend, 1)); // one value past the maximum
    const int m = static_cast<int>(ts.size());

    // R(i,j) = rank of H_n(F_{t_i}) -> H_n(F_{t_j + r})
    std::vector<std::vector<long long>> R(m, std::vector<long long>(m, 0));
    for (int i = 0; i < m; ++i) {
        auto low = complex(Interval::left_closed_ray(ts[i]), n);
        for (int j = i; j < m; ++j) {
            auto high = complex(Interval::left_closed_ray(ts[j] + r), n + 1);
            auto f = inclusion_chain_map(*low, *high);
            R[i][j] = induced_image_rank(f, n, Coefficients::rationals());
        }
    }
    auto rk = [&](int i, int j) -> long long { return (i < 0) ? 0 : R[i][j]; };

    out.critical_values.assign(ts.begin(), ts.end() - 1);
    for (int i = 0; i + 1 < m; ++i) out.dims.push_back(R[i][i]);

    for (int i = 0; i + 1 < m; ++i) {
        for (int j = i; j + 1 < m; ++j) { // dies entering ts[j+1]
            long long mult = rk(i, j) - rk(i - 1, j) - rk(i, j + 1) + rk(i - 1, j + 1);
            if (mult < 0) throw qsh_error("negative bar multiplicity: persistence module broken");
            for (long long k = 0; k < mult; ++k) out.bars.push_back({ts[i], ts[j + 1], false});
        }
        long long inf_mult = rk(i, m - 1) - rk(i - 1, m - 1);
        for (long long k = 0; k < inf_mult; ++k) out.bars.push_back({ts[i], {}, true});
    }
    if (rk(m - 1, m - 1) - rk(m - 2, m - 1) != 0)
        throw qsh_error("a class was born at the sentinel level");
    std::sort(out.bars.begin(), out.bars.end(), [](const Bar& a, const Bar& b) {
        if (a.birth != b.birth) return a.birth < b.birth;
        if (a.infinite != b.infinite) return a.infinite; // immortal bars first
        if (a.infinite) return false;
        return a.death < b.death;
    });
    return out;
}

long long SpectralEngine::mpss_page(int s, int n, long long ell) {
    if (X_->backend != Backend::Int) throw non_integer_query();
    if (s < 1) throw precondition_violated("spectral sequence pages start at 1");
    SHQuery q{xreal::of_int(s - 1), n, Interval::singleton(xreal::of_int(ell)),
              Coefficients::rationals(), std::nullopt};
    return sh(q).rank;
}

long long SpectralEngine::mpss_page_ce(int s, int n, long long ell) {
    if (X_->backend != Backend::Int) throw non_integer_query();
    if (s < 1) throw precondition_violated("spectral sequence pages start at 1");
    auto iv = [](long long a, long long b) {
        return Interval::half_open(xreal::of_int(a), xreal::of_int(b));
    };
    auto graded = complex(iv(ell - 1, ell), n + 1);
    if (s == 1) return homology(*graded, n, Coefficients::rationals()).rank;

    auto deep = complex(iv(ell - s, ell), n);
    auto wide = complex(iv(ell - 1, ell + s - 1), n + 1);
    auto z_map = inclusion_chain_map(*deep, *graded);
    auto b_map = inclusion_chain_map(*graded, *wide);
    const long long z_rank = induced_image_rank(z_map, n, Coefficients::rationals());
    const long long betti = homology(*graded, n, Coefficients::rationals()).rank;
    const long long b_rank = betti - induced_image_rank(b_map, n, Coefficients::rationals());
    return z_rank - b_rank;
}

// ---------------------------------------------------------------------------
// induced maps on spectral homology

namespace {

struct ImageBasis {
    std::shared_ptr<const TruncatedComplex> low, high;
    std::vector<linalg::SCol<linalg::QField>> preimages; // cycles in low, degree-n coordinates
    std::vector<linalg::SCol<linalg::QField>> classes;   // their chains in high
    linalg::QMat solver;                                 // [ B_n(high) | classes ]
    int n = 0;

    std::vector<bigrat> coordinates(const linalg::SCol<linalg::QField>& w) const {
        std::vector<bigrat> rhs(high->dim(n));
        for (auto& [row, v] : w) rhs[row] = v;
        auto sol = linalg::dense_solve(solver, rhs);
        if (!sol) throw qsh_error("class escaped the computed image basis");
        const size_t b_cols = solver.empty() ? 0 : solver[0].size() - classes.size();
        return {sol->begin() + static_cast<long long>(b_cols), sol->end()};
    }
};

ImageBasis image_basis(SpectralEngine& eng, const SHQuery& q) {
    linalg::QField f;
    ImageBasis out;
    out.n = q.n;
    const Interval lo = q.I.lower_expand(q.r);
    const Interval hi = q.I.upper_expand(q.r);
    if (!hi.bounded_above() && !q.degree_bound) throw degree_bound_required();
    out.low = eng.complex(lo, q.n);
    out.high = eng.complex(hi, std::max(q.n + 1, q.degree_bound.value_or(q.n + 1)));
    auto alpha = inclusion_chain_map(*out.low, *out.high);

    auto cycles = linalg::kernel_basis(f, out.low->boundary(q.n));
    linalg::ColumnReducer<linalg::QField> red(f);
    const auto& bnd = out.high->boundary(q.n + 1);
    for (const auto& c : bnd.col) red.absorb(linalg::to_field_col(f, c));
    for (auto& z : cycles) {
        auto az = linalg::apply(f, alpha.deg[q.n], z);
        if (red.absorb(az)) {
            out.preimages.push_back(std::move(z));
            out.classes.push_back(std::move(az));
        }
    }

    const long long rows = out.high->dim(q.n);
    out.solver.assign(rows, std::vector<bigrat>(bnd.col.size() + out.classes.size()));
    for (size_t j = 0; j < bnd.col.size(); ++j)
        for (auto [row, v] : bnd.col[j]) out.solver[row][j] = v;
    for (size_t k = 0; k < out.classes.size(); ++k)
        for (auto& [row, v] : out.classes[k]) out.solver[row][bnd.col.size() + k] = v;
    return out;
}

} // namespace

linalg::QMat sh_induced(const ShortMap& phi, const SHQuery& q) {
    if (q.coeff.ring != Ring::Q) throw qsh_error("induced matrices are computed over Q");
    linalg::QField f;
    SpectralEngine src(phi.source), dst(phi.target);
    check_query(*phi.source, q);
    check_query(*phi.target, q);
    auto bx = image_basis(src, q);
    auto by = image_basis(dst, q);

    auto f_low = induced_chain_map(phi, *bx.low, *by.low);
    auto alpha_y = inclusion_chain_map(*by.low, *by.high);

    linalg::QMat out(by.classes.size(), std::vector<bigrat>(bx.classes.size()));
    for (size_t j = 0; j < bx.preimages.size(); ++j) {
        auto moved = linalg::apply(f, f_low.deg[q.n], bx.preimages[j]);
        auto pushed = linalg::apply(f, alpha_y.deg[q.n], moved);
        auto coords = by.coordinates(pushed);
        for (size_t i = 0; i < by.classes.size(); ++i) out[i][j] = coords[i];
    }
    return out;
}

// ---------------------------------------------------------------------------
// decomposition ledger

DecompositionReport verify_decomposition(const Digraph& g, int max_page, int max_n, long long max_ell,
                                         const SearchOptions& opts) {
    DecompositionReport report;
    auto space = shortest_path_space(g);
    auto jumps = jumping_points(space, opts);
    auto chain = nested_models(space, opts);
    if (jumps.points.size() != chain.size()) throw qsh_error("jumping points and nested chain disagree");

    std::vector<SpacePtr> models{space};
    for (const auto& step : chain) {
        models.push_back(step.model);
        report.jumping_points.push_back(step.certificate.radius.int_value());
        report.model_sizes.push_back(step.model->size);
    }

    // compose the retractions on the original vertex set and check that each
    // stage is a convex digraph retract
    {
        std::vector<int> current(space->size);
        for (int i = 0; i < space->size; ++i) current[i] = i;
        std::vector<int> local_of(space->size);
        for (int i = 0; i < space->size; ++i) local_of[i] = i;
        for (const auto& step : chain) {
            std::vector<int> next(space->size);
            for (int x = 0; x < space->size; ++x)
                next[x] = step.subset[step.retraction.to[local_of[current[x]]]];
            current = std::move(next);
            std::fill(local_of.begin(), local_of.end(), -1);
            for (size_t k = 0; k < step.subset.size(); ++k) local_of[step.subset[k]] = static_cast<int>(k);
            Digraph h = digraph_retract_from_points(g, step.subset, current);
            if (!is_convex_subdigraph(g, h, step.subset)) {
                report.ok = false;
                report.failures.push_back("retract is not convex");
            }
        }
    }

    std::vector<std::unique_ptr<SpectralEngine>> engines;
    for (const auto& m : models) engines.push_back(std::make_unique<SpectralEngine>(m));
    const int k_count = static_cast<int>(chain.size());

    for (int s = 1; s <= max_page; ++s)
        for (int n = 0; n <= max_n; ++n)
            for (long long ell = 0; ell <= max_ell; ++ell) {
                std::vector<long long> ranks;
                for (auto& e : engines) ranks.push_back(e->mpss_page(s, n, ell));
                DecompositionReport::Entry entry{s, n, ell, {}, ranks[0]};
                long long sum = 0;
                for (int k = 1; k <= k_count; ++k) {
                    long long part = ranks[k - 1] - ranks[k];
                    entry.summand.push_back(part);
                    sum += part;
                    if (part < 0) {
                        report.ok = false;
                        report.failures.push_back("negative summand at page " + std::to_string(s) +
                                                  " n=" + std::to_string(n) +
                                                  " ell=" + std::to_string(ell) +
                                                  " k=" + std::to_string(k));
                    }
                    if (s == report.jumping_points[k - 1] + 1 && part != 0) {
                        report.ok = false;
                        report.failures.push_back("summand " + std::to_string(k) +
                                                  " fails to vanish at page " + std::to_string(s) +
                                                  " n=" + std::to_string(n) +
                                                  " ell=" + std::to_string(ell));
                    }
                }
                entry.summand.push_back(ranks[k_count]);
                sum += ranks[k_count];
                if (sum != entry.total) {
                    report.ok = false;
                    report.failures.push_back("totals do not telescope at page " + std::to_string(s));
                }
                report.entries.push_back(std::move(entry));
            }
    for (int k = 1; k <= k_count; ++k)
        if (report.jumping_points[k - 1] + 1 <= max_page) ++report.vanishing_checks;
    return report;
}

} // namespace qsh
