#include "qsh/minimal_model.hpp"

#include "qsh/errors.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace qsh {

namespace {

struct EndoSearch {
    const QMetSpace& X;
    long long nodes_left;
    std::vector<std::vector<int>> candidates; // per point, identity image last
    std::vector<int> order;                   // processing order over points
    std::vector<int> assign;                  // point -> image, -1 unassigned
    std::vector<int> hits;                    // image -> multiplicity
    int collisions = 0;

    EndoSearch(const QMetSpace& x, long long budget) : X(x), nodes_left(budget) {}

    bool feasible(int p, int img) const {
        for (int q = 0; q < X.size; ++q) {
            if (assign[q] < 0) continue;
            if (X.d(img, assign[q]) > X.d(p, q)) return false;
            if (X.d(assign[q], img) > X.d(q, p)) return false;
        }
        return true;
    }

    bool dfs(size_t depth) {
        if (depth == order.size()) return collisions > 0;
        const int p = order[depth];
        for (int img : candidates[p]) {
            if (--nodes_left < 0) throw budget_exceeded(nodes_left);
            if (!feasible(p, img)) continue;
            assign[p] = img;
            collisions += hits[img]++;
            if (dfs(depth + 1)) return true;
            collisions -= --hits[img];
            assign[p] = -1;
        }
        return false;
    }

    // forward: candidates by d(x,y) <= r; backward: d(y,x) <= r
    std::optional<std::vector<int>> run(const xreal& r, bool forward, unsigned seed) {
        candidates.assign(X.size, {});
        for (int x = 0; x < X.size; ++x) {
            for (int y = 0; y < X.size; ++y) {
                if (y == x) continue;
                const xreal& v = forward ? X.d(x, y) : X.d(y, x);
                if (!v.is_inf() && v <= r) candidates[x].push_back(y);
            }
            candidates[x].push_back(x); // non-identity images first
        }
        order.resize(X.size);
        std::iota(order.begin(), order.end(), 0);
        if (seed != 0) {
            std::mt19937 rng(seed);
            std::shuffle(order.begin(), order.end(), rng);
            for (auto& c : candidates) std::shuffle(c.begin(), c.end(), rng);
        } else {
            // widest candidate sets first: collisions show up early
            std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
                return candidates[a].size() > candidates[b].size();
            });
        }
        assign.assign(X.size, -1);
        hits.assign(X.size, 0);
        collisions = 0;
        if (dfs(0)) return assign;
        return std::nullopt;
    }
};

} // namespace

std::optional<ShortMap> find_contracting_endo(const SpacePtr& X, const xreal& r,
                                              const SearchOptions& opts) {
    if (r.is_inf()) throw precondition_violated("homotopy radius must be finite");
    if (r.is_negative()) throw precondition_violated("homotopy radius must be nonnegative");
    EndoSearch search(*X, opts.node_budget);
    for (bool forward : {true, false})
        if (auto assign = search.run(r, forward, opts.seed))
            return make_short_map(X, X, std::move(*assign));
    return std::nullopt;
}

std::pair<int, ShortMap> idempotent_power(const ShortMap& f) {
    if (!same_space(*f.source, *f.target)) throw mismatched_spaces();
    ShortMap power = f;
    for (int n = 1;; ++n) {
        bool idempotent = true;
        for (int x = 0; x < f.source->size && idempotent; ++x)
            idempotent = power.to[power.to[x]] == power.to[x];
        if (idempotent) return {n, power};
        power = compose(power, f);
    }
}

RetractionResult minimal_model(const SpacePtr& X, const xreal& r, const SearchOptions& opts) {
    std::vector<int> subset(X->size);
    std::iota(subset.begin(), subset.end(), 0);
    std::vector<int> to_local(X->size);
    std::iota(to_local.begin(), to_local.end(), 0);
    SpacePtr model = X;

    HomotopyChain chain{{identity_map(X)}, r};
    while (true) {
        auto endo = find_contracting_endo(model, r, opts);
        if (!endo) break;
        auto [n, idem] = idempotent_power(*endo);

        // lift the power chain to self-maps of X and append
        ShortMap step = *endo;
        for (int k = 1; k <= n; ++k) {
            std::vector<int> lifted(X->size);
            for (int x = 0; x < X->size; ++x) lifted[x] = subset[step.to[to_local[x]]];
            chain.maps.push_back(make_short_map(X, X, std::move(lifted)));
            if (k < n) step = compose(step, *endo);
        }

        std::vector<int> image(idem.to.begin(), idem.to.end());
        std::sort(image.begin(), image.end());
        image.erase(std::unique(image.begin(), image.end()), image.end());
        std::vector<int> pos_in_image(model->size, -1);
        for (size_t i = 0; i < image.size(); ++i) pos_in_image[image[i]] = static_cast<int>(i);

        std::vector<int> new_subset;
        new_subset.reserve(image.size());
        for (int a : image) new_subset.push_back(subset[a]);
        for (int x = 0; x < X->size; ++x) to_local[x] = pos_in_image[idem.to[to_local[x]]];
        subset = std::move(new_subset);
        model = X->induced(subset);
    }

    ShortMap retraction = make_short_map(X, model, to_local);
    return RetractionResult{std::move(subset), std::move(model), std::move(retraction),
                            std::move(chain)};
}

namespace {

// r-minimality predicates only change when r crosses a matrix entry, so the
// candidate thresholds are 0 and the distinct finite distance values
std::vector<xreal> candidate_radii(const QMetSpace& X, std::vector<std::vector<xreal>>* merges) {
    std::vector<xreal> out{xreal::zero(X.backend)};
    for (const auto& g : X.distinct_finite_distances()) {
        out.push_back(g.rep);
        if (merges && g.members.size() > 1) merges->push_back(g.members);
    }
    return out;
}

xreal midpoint(const xreal& a, const xreal& b) {
    switch (a.backend()) {
    case Backend::Rat: return xreal::of_rat((a.rat_value() + b.rat_value()) / 2);
    case Backend::Flt: return xreal::of_double((a.flt_value() + b.flt_value()) / 2);
    case Backend::Int: break;
    }
    throw std::logic_error("no exact midpoint in this backend");
}

} // namespace

JumpingPointsResult jumping_points(const SpacePtr& X, const SearchOptions& opts) {
    JumpingPointsResult res;
    auto radii = candidate_radii(*X, &res.merged_groups);
    SpacePtr model = X;
    int prev_size = X->size;
    std::vector<xreal> plateau_radii; // the radius at which each plateau was entered
    std::vector<int> plateau_sizes;
    plateau_radii.push_back(radii.front());
    plateau_sizes.push_back(X->size);
    for (const auto& r : radii) {
        auto step = minimal_model(model, r, opts);
        if (step.model->size < prev_size) {
            res.points.push_back(r);
            res.model_sizes.push_back(step.model->size);
            res.ratios.push_back(static_cast<double>(step.model->size) / X->size);
            prev_size = step.model->size;
            plateau_radii.push_back(r);
            plateau_sizes.push_back(prev_size);
        }
        model = step.model;
    }

    if (opts.verify_plateaus && X->backend != Backend::Int) {
        // |M_r(X)| must be constant between consecutive candidates; for the
        // integer backend "d <= r" cannot change inside a gap, so only the
        // exact backends with real midpoints are re-checked
        for (size_t i = 0; i + 1 < radii.size(); ++i) {
            xreal mid = midpoint(radii[i], radii[i + 1]);
            int expected = X->size;
            for (size_t k = 0; k < plateau_radii.size(); ++k)
                if (plateau_radii[k] <= radii[i]) expected = plateau_sizes[k];
            if (minimal_model(X, mid, opts).model->size != expected)
                throw qsh_error("plateau constancy violated at midpoint " + mid.str());
        }
    }
    return res;
}

std::vector<RetractionResult> nested_models(const SpacePtr& X, const SearchOptions& opts) {
    std::vector<RetractionResult> out;
    auto radii = candidate_radii(*X, nullptr);
    SpacePtr model = X;
    std::vector<int> subset(X->size);
    std::iota(subset.begin(), subset.end(), 0);
    for (const auto& r : radii) {
        auto step = minimal_model(model, r, opts);
        if (step.model->size == model->size) continue;
        // translate subset indices back to the original space
        std::vector<int> original;
        original.reserve(step.subset.size());
        for (int a : step.subset) original.push_back(subset[a]);
        subset = original;
        model = step.model;
        step.subset = std::move(original);
        out.push_back(std::move(step));
    }
    return out;
}

SpacePtr stable_model(const SpacePtr& X, const SearchOptions& opts) {
    auto chain = nested_models(X, opts);
    return chain.empty() ? X : chain.back().model;
}

namespace {

struct Signature {
    std::vector<std::string> out, in;
    bool operator==(const Signature& o) const = default;
    bool operator<(const Signature& o) const { return std::tie(out, in) < std::tie(o.out, o.in); }
};

Signature point_signature(const QMetSpace& X, int p) {
    Signature s;
    for (int q = 0; q < X.size; ++q)
        if (q != p) {
            s.out.push_back(X.d(p, q).str());
            s.in.push_back(X.d(q, p).str());
        }
    std::sort(s.out.begin(), s.out.end());
    std::sort(s.in.begin(), s.in.end());
    return s;
}

struct IsoSearch {
    const QMetSpace& A;
    const QMetSpace& B;
    std::vector<std::vector<int>> candidates;
    std::vector<int> assign;
    std::vector<char> used;

    bool dfs(int p) {
        if (p == A.size) return true;
        for (int q : candidates[p]) {
            if (used[q]) continue;
            bool ok = true;
            for (int p2 = 0; p2 < p && ok; ++p2)
                ok = A.d(p, p2) == B.d(q, assign[p2]) && A.d(p2, p) == B.d(assign[p2], q);
            if (!ok) continue;
            assign[p] = q;
            used[q] = 1;
            if (dfs(p + 1)) return true;
            used[q] = 0;
            assign[p] = -1;
        }
        return false;
    }
};

} // namespace

std::optional<std::vector<int>> is_isometric(const QMetSpace& a, const QMetSpace& b) {
    if (a.size != b.size || a.backend != b.backend) return std::nullopt;
    std::vector<Signature> sig_a(a.size), sig_b(b.size);
    for (int p = 0; p < a.size; ++p) sig_a[p] = point_signature(a, p);
    for (int q = 0; q < b.size; ++q) sig_b[q] = point_signature(b, q);

    IsoSearch search{a, b, {}, std::vector<int>(a.size, -1), std::vector<char>(b.size, 0)};
    search.candidates.resize(a.size);
    for (int p = 0; p < a.size; ++p) {
        for (int q = 0; q < b.size; ++q)
            if (sig_a[p] == sig_b[q]) search.candidates[p].push_back(q);
        if (search.candidates[p].empty()) return std::nullopt;
    }
    if (search.dfs(0)) return search.assign;
    return std::nullopt;
}

} // namespace qsh
