#include "qsh/space.hpp"

#include "qsh/union_find.hpp"

#include <algorithm>

namespace qsh {

SpacePtr QMetSpace::induced(std::span<const int> idx) const {
    auto sub = std::make_shared<QMetSpace>();
    sub->backend = backend;
    sub->size = static_cast<int>(idx.size());
    sub->tau = tau;
    sub->dist.reserve(idx.size() * idx.size());
    for (int i : idx)
        for (int j : idx) sub->dist.push_back(d(i, j));
    if (!labels.empty())
        for (int i : idx) sub->labels.push_back(labels[i]);
    if (!coords.empty())
        for (int i : idx) sub->coords.push_back(coords[i]);
    return sub;
}

std::vector<QMetSpace::ValueGroup> QMetSpace::distinct_finite_distances() const {
    std::vector<xreal> vals;
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j)
            if (i != j && !d(i, j).is_inf()) vals.push_back(d(i, j));
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());

    std::vector<ValueGroup> groups;
    for (const auto& v : vals) {
        if (!groups.empty() && backend == Backend::Flt &&
            groups.back().members.back().cmp(v, tau) == 0) {
            groups.back().members.push_back(v);
            groups.back().rep = v; // group maximum, so "d <= rep" covers the group
        } else {
            groups.push_back({v, {v}});
        }
    }
    return groups;
}

xreal QMetSpace::max_finite_distance() const {
    xreal best = xreal::zero(backend);
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j)
            if (i != j && !d(i, j).is_inf() && d(i, j) > best) best = d(i, j);
    return best;
}

SpacePtr validate_space(Backend backend, int n, std::vector<xreal> entries, double tau,
                        std::vector<std::string> labels, std::vector<std::vector<double>> coords) {
    if (static_cast<long long>(entries.size()) != static_cast<long long>(n) * n)
        throw qsh_error("distance matrix is not square");
    auto at = [&](int i, int j) -> const xreal& { return entries[static_cast<size_t>(i) * n + j]; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const xreal& v = at(i, j);
            if (v.backend() != backend) throw backend_mismatch();
            if (v.is_negative())
                throw validation_error(AxiomViolation::NegativeEntry,
                                       "negative distance at (" + std::to_string(i) + "," +
                                           std::to_string(j) + ")",
                                       i, j);
            if (i == j && !v.is_zero())
                throw validation_error(AxiomViolation::NonzeroDiagonal,
                                       "nonzero diagonal at (" + std::to_string(i) + "," +
                                           std::to_string(i) + ")",
                                       i, i);
            if (i != j && v.is_zero())
                throw validation_error(AxiomViolation::ZeroOffDiagonal,
                                       "zero distance between distinct points " + std::to_string(i) +
                                           " and " + std::to_string(j),
                                       i, j);
        }
    // float sums carry rounding error, so the triangle check on that backend
    // tolerates the grouping width tau; exact backends compare exactly
    const double slack = backend == Backend::Flt ? tau : 0.0;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (at(x, y).is_inf()) continue;
            for (int z = 0; z < n; ++z) {
                if (at(y, z).is_inf()) continue;
                if (at(x, z).cmp(at(x, y) + at(y, z), slack) > 0)
                    throw validation_error(AxiomViolation::TriangleViolation,
                                           "triangle inequality fails: d(" + std::to_string(x) + "," +
                                               std::to_string(z) + ") > d(" + std::to_string(x) + "," +
                                               std::to_string(y) + ") + d(" + std::to_string(y) + "," +
                                               std::to_string(z) + ")",
                                           x, y, z);
            }
        }
    auto space = std::make_shared<QMetSpace>();
    space->backend = backend;
    space->size = n;
    space->dist = std::move(entries);
    space->tau = tau;
    space->labels = std::move(labels);
    space->coords = std::move(coords);
    return space;
}

bool same_space(const QMetSpace& a, const QMetSpace& b) {
    if (&a == &b) return true;
    if (a.backend != b.backend || a.size != b.size) return false;
    for (size_t k = 0; k < a.dist.size(); ++k)
        if (a.dist[k] != b.dist[k]) return false;
    return true;
}

bool ShortMap::is_identity() const {
    if (!same_space(*source, *target)) return false;
    for (int i = 0; i < source->size; ++i)
        if (to[i] != i) return false;
    return true;
}

bool ShortMap::is_injective() const {
    std::vector<char> seen(target->size, 0);
    for (int v : to) {
        if (seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

ShortMap make_short_map(SpacePtr source, SpacePtr target, std::vector<int> to, bool check) {
    if (static_cast<int>(to.size()) != source->size)
        throw qsh_error("assignment size does not match the source");
    if (check) {
        for (int x = 0; x < source->size; ++x)
            for (int y = 0; y < source->size; ++y)
                if (target->d(to[x], to[y]) > source->d(x, y)) throw not_short(x, y);
    }
    return ShortMap{std::move(source), std::move(target), std::move(to)};
}

ShortMap identity_map(SpacePtr space) {
    std::vector<int> to(space->size);
    for (int i = 0; i < space->size; ++i) to[i] = i;
    return ShortMap{space, space, std::move(to)};
}

ShortMap compose(const ShortMap& first, const ShortMap& then) {
    if (!same_space(*first.target, *then.source)) throw mismatched_spaces();
    std::vector<int> to(first.to.size());
    for (size_t i = 0; i < first.to.size(); ++i) to[i] = then.to[first.to[i]];
    return ShortMap{first.source, then.target, std::move(to)};
}

xreal map_distance(const ShortMap& phi, const ShortMap& psi) {
    if (!same_space(*phi.source, *psi.source) || !same_space(*phi.target, *psi.target))
        throw mismatched_spaces();
    xreal best = xreal::zero(phi.target->backend);
    for (int x = 0; x < phi.source->size; ++x) {
        const xreal& v = phi.target->d(phi.to[x], psi.to[x]);
        if (v > best) best = v;
    }
    return best;
}

bool points_r_homotopic(const QMetSpace& space, int x, int y, const xreal& r) {
    if (x == y) return true;
    UnionFind uf(space.size);
    for (int i = 0; i < space.size; ++i)
        for (int j = i + 1; j < space.size; ++j)
            if (space.d(i, j) <= r || space.d(j, i) <= r) uf.unite(i, j);
    return uf.same(x, y);
}

bool verify_homotopy_chain(const HomotopyChain& chain) {
    if (chain.maps.empty()) throw qsh_error("homotopy chain is empty");
    for (size_t i = 1; i < chain.maps.size(); ++i)
        if (!same_space(*chain.maps[i].source, *chain.maps[0].source) ||
            !same_space(*chain.maps[i].target, *chain.maps[0].target))
            throw mismatched_spaces();
    for (size_t i = 0; i + 1 < chain.maps.size(); ++i) {
        if (map_distance(chain.maps[i], chain.maps[i + 1]) <= chain.radius) continue;
        if (map_distance(chain.maps[i + 1], chain.maps[i]) <= chain.radius) continue;
        return false;
    }
    return true;
}

} // namespace qsh
