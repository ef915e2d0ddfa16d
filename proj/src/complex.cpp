#include "qsh/complex.hpp"

#include <algorithm>
#include <cstring>
#include <sstream>

namespace qsh {

bool paranoid_checks = false;

xreal tuple_level(const QMetSpace& X, std::span<const int32_t> t) {
    xreal level = xreal::zero(X.backend);
    for (size_t i = 0; i + 1 < t.size(); ++i) level = level + X.d(t[i], t[i + 1]);
    return level;
}

bool valid_rc_tuple(const QMetSpace& X, std::span<const int32_t> t) {
    for (size_t i = 0; i + 1 < t.size(); ++i)
        if (t[i] == t[i + 1] || X.d(t[i], t[i + 1]).is_inf()) return false;
    for (int32_t p : t)
        if (p < 0 || p >= X.size) return false;
    return true;
}

namespace {

std::string tuple_key(std::span<const int32_t> t) {
    std::string key(t.size() * sizeof(int32_t), '\0');
    std::memcpy(key.data(), t.data(), key.size());
    return key;
}

struct Enumerator {
    const QMetSpace& X;
    const Interval& I;
    int degree;
    double tau;
    std::vector<std::vector<int32_t>> succ; // finite-distance successors, ascending
    std::vector<int32_t> stack;
    TupleBasis out;

    Enumerator(const QMetSpace& x, int n, const Interval& i) : X(x), I(i), degree(n) {
        tau = X.backend == Backend::Flt ? X.tau : 0.0;
        succ.resize(X.size);
        for (int a = 0; a < X.size; ++a)
            for (int b = 0; b < X.size; ++b)
                if (a != b && !X.d(a, b).is_inf()) succ[a].push_back(b);
        out.arity = n + 1;
    }

    void emit(const xreal& level) {
        out.flat.insert(out.flat.end(), stack.begin(), stack.end());
        out.levels.push_back(level);
        ++out.count;
    }

    void extend(const xreal& level) {
        // distances are positive, so a partial level outside R stays outside
        if (!I.right().contains(level, tau)) return;
        if (static_cast<int>(stack.size()) == degree + 1) {
            if (!I.left().contains(level, tau)) emit(level);
            return;
        }
        const int32_t last = stack.back();
        for (int32_t next : succ[last]) {
            stack.push_back(next);
            extend(level + X.d(last, next));
            stack.pop_back();
        }
    }

    TupleBasis run() {
        if (degree + 1 > 0) {
            for (int32_t p = 0; p < X.size; ++p) {
                stack.assign(1, p);
                extend(xreal::zero(X.backend));
            }
        }
        return std::move(out);
    }
};

} // namespace

TupleBasis enumerate_tuples(const QMetSpace& X, int n, const Interval& I) {
    if (n < 0) {
        TupleBasis empty;
        empty.arity = n + 1;
        return empty;
    }
    // the fixed degree keeps the basis finite even when R_I is all of R
    return Enumerator(X, n, I).run();
}

TruncatedComplex::TruncatedComplex(SpacePtr X, Interval I, int degree_bound)
    : space_(std::move(X)), interval_(std::move(I)), bound_(degree_bound) {
    if (bound_ < 0) throw qsh_error("degree bound must be nonnegative");
    const double tau = space_->backend == Backend::Flt ? space_->tau : 0.0;

    for (int n = 0; n <= bound_; ++n) {
        basis_.push_back(Enumerator(*space_, n, interval_).run());
        index_.emplace_back();
        auto& idx = index_.back();
        idx.reserve(basis_[n].count * 2);
        for (size_t i = 0; i < basis_[n].count; ++i)
            idx.emplace(tuple_key(basis_[n].tuple(i)), static_cast<long long>(i));
    }

    boundary_.resize(bound_ + 1);
    boundary_[0].rows = 0;
    boundary_[0].col.resize(basis_[0].count);
    std::vector<int32_t> face;
    for (int n = 1; n <= bound_; ++n) {
        auto& mat = boundary_[n];
        mat.rows = static_cast<int>(basis_[n - 1].count);
        mat.col.resize(basis_[n].count);
        for (size_t c = 0; c < basis_[n].count; ++c) {
            auto t = basis_[n].tuple(c);
            std::map<long long, long long> acc; // row -> coefficient
            for (int i = 0; i <= n; ++i) {
                if (i > 0 && i < n && t[i - 1] == t[i + 1]) continue; // degenerate face
                face.clear();
                for (int k = 0; k <= n; ++k)
                    if (k != i) face.push_back(t[k]);
                const xreal level = tuple_level(*space_, face);
                if (interval_.left().contains(level, tau)) continue; // quotiented to zero
                if (!interval_.right().contains(level, tau))
                    throw qsh_error("face level escaped the right ray");
                long long row = index_of(n - 1, face);
                if (row < 0) throw qsh_error("face missing from the lower basis");
                acc[row] += (i % 2 == 0) ? 1 : -1;
            }
            for (auto [row, coef] : acc)
                if (coef != 0) mat.col[c].emplace_back(static_cast<int32_t>(row), static_cast<int32_t>(coef));
        }
    }

    if (paranoid_checks)
        for (int n = 2; n <= bound_; ++n)
            if (!linalg::is_zero(linalg::multiply(boundary_[n - 1], boundary_[n])))
                throw qsh_error("d^2 != 0");
}

const TupleBasis& TruncatedComplex::basis(int n) const {
    if (n < 0 || n > bound_) throw degree_not_materialized(n);
    return basis_[n];
}

const linalg::SparseIntMatrix& TruncatedComplex::boundary(int n) const {
    if (n < 0 || n > bound_) throw degree_not_materialized(n);
    return boundary_[n];
}

long long TruncatedComplex::index_of(int n, std::span<const int32_t> t) const {
    if (n < 0 || n > bound_) return -1;
    auto it = index_[n].find(tuple_key(t));
    return it == index_[n].end() ? -1 : it->second;
}

std::string TruncatedComplex::dump() const {
    std::ostringstream os;
    os << "complex " << interval_.str() << " bound " << bound_ << "\n";
    for (int n = 0; n <= bound_; ++n) {
        os << "degree " << n << " (" << basis_[n].count << ")\n";
        for (size_t i = 0; i < basis_[n].count; ++i) {
            os << "  " << basis_[n].levels[i].str() << " :";
            auto t = basis_[n].tuple(i);
            for (size_t k = 0; k < t.size(); ++k) os << (k ? "," : " ") << t[k];
            os << "\n";
        }
        if (n == 0) continue;
        os << "boundary " << n << "\n";
        for (size_t c = 0; c < boundary_[n].col.size(); ++c)
            for (auto [r, v] : boundary_[n].col[c])
                os << "  (" << r << ", " << c << ", " << (v > 0 ? "+" : "") << v << ")\n";
    }
    return os.str();
}

linalg::SparseIntMatrix inclusion_matrix(const TruncatedComplex& ci, const TruncatedComplex& cj, int n) {
    if (!same_space(*ci.space(), *cj.space())) throw mismatched_spaces();
    if (!ci.interval().precedes(cj.interval())) throw not_comparable();
    const double tau = ci.space()->backend == Backend::Flt ? ci.space()->tau : 0.0;
    linalg::SparseIntMatrix m;
    m.rows = static_cast<int>(cj.basis(n).count);
    m.col.resize(ci.basis(n).count);
    for (size_t c = 0; c < ci.basis(n).count; ++c) {
        if (!cj.interval().contains(ci.basis(n).levels[c], tau)) continue;
        long long row = cj.index_of(n, ci.basis(n).tuple(c));
        if (row < 0) throw qsh_error("tuple missing from the target basis");
        m.col[c].emplace_back(static_cast<int32_t>(row), 1);
    }
    return m;
}

ChainMap inclusion_chain_map(const TruncatedComplex& ci, const TruncatedComplex& cj) {
    ChainMap f{&ci, &cj, {}};
    const int top = std::min(ci.degree_bound(), cj.degree_bound());
    for (int n = 0; n <= top; ++n) f.deg.push_back(inclusion_matrix(ci, cj, n));
    if (paranoid_checks) check_chain_map(f);
    return f;
}

ChainMap induced_chain_map(const ShortMap& f, const TruncatedComplex& cx, const TruncatedComplex& cy) {
    if (!same_space(*f.source, *cx.space()) || !same_space(*f.target, *cy.space()))
        throw mismatched_spaces();
    if (!(cx.interval() == cy.interval()))
        throw qsh_error("induced chain map needs matching intervals");
    const QMetSpace& Y = *f.target;
    const double tau = Y.backend == Backend::Flt ? Y.tau : 0.0;
    ChainMap out{&cx, &cy, {}};
    const int top = std::min(cx.degree_bound(), cy.degree_bound());
    std::vector<int32_t> image;
    for (int n = 0; n <= top; ++n) {
        linalg::SparseIntMatrix m;
        m.rows = static_cast<int>(cy.basis(n).count);
        m.col.resize(cx.basis(n).count);
        for (size_t c = 0; c < cx.basis(n).count; ++c) {
            auto t = cx.basis(n).tuple(c);
            image.clear();
            for (int32_t p : t) image.push_back(f.to[p]);
            if (!valid_rc_tuple(Y, image)) continue; // degenerate: zero
            const xreal level = tuple_level(Y, image);
            if (cy.interval().left().contains(level, tau)) continue;
            if (!cy.interval().right().contains(level, tau))
                throw qsh_error("short map raised a tuple level");
            long long row = cy.index_of(n, image);
            if (row < 0) throw qsh_error("image tuple missing from the target basis");
            m.col[c].emplace_back(static_cast<int32_t>(row), 1);
        }
        out.deg.push_back(std::move(m));
    }
    if (paranoid_checks) check_chain_map(out);
    return out;
}

void check_chain_map(const ChainMap& f) {
    for (size_t n = 1; n < f.deg.size(); ++n) {
        auto lhs = linalg::multiply(f.dst->boundary(static_cast<int>(n)), f.deg[n]);
        auto rhs = linalg::multiply(f.deg[n - 1], f.src->boundary(static_cast<int>(n)));
        if (!linalg::equal(lhs, rhs)) throw not_a_chain_map();
    }
}

Chain make_chain(const QMetSpace& X, int degree,
                 std::initializer_list<std::pair<std::vector<int32_t>, long long>> terms) {
    Chain c{degree, {}};
    for (const auto& [t, coef] : terms) {
        if (static_cast<int>(t.size()) != degree + 1) throw qsh_error("tuple arity does not match degree");
        if (!valid_rc_tuple(X, t)) throw qsh_error("not a reachability tuple");
        if (coef != 0) c.terms[t] += coef;
    }
    return c;
}

void chain_add(Chain& acc, std::span<const int32_t> t, long long coef, const QMetSpace& Y) {
    if (coef == 0 || !valid_rc_tuple(Y, t)) return;
    std::vector<int32_t> key(t.begin(), t.end());
    auto [it, inserted] = acc.terms.try_emplace(std::move(key), coef);
    if (!inserted) {
        it->second += coef;
        if (it->second == 0) acc.terms.erase(it);
    }
}

Chain rc_boundary(const QMetSpace& X, const Chain& c) {
    Chain out{c.degree - 1, {}};
    std::vector<int32_t> face;
    for (const auto& [t, coef] : c.terms) {
        for (size_t i = 0; i < t.size(); ++i) {
            face.clear();
            for (size_t k = 0; k < t.size(); ++k)
                if (k != i) face.push_back(t[k]);
            chain_add(out, face, (i % 2 == 0) ? coef : -coef, X);
        }
    }
    return out;
}

Chain rc_map(const ShortMap& f, const Chain& c) {
    Chain out{c.degree, {}};
    std::vector<int32_t> image;
    for (const auto& [t, coef] : c.terms) {
        image.clear();
        for (int32_t p : t) image.push_back(f.to[p]);
        chain_add(out, image, coef, *f.target);
    }
    return out;
}

Chain prism_homotopy(const ShortMap& phi, const ShortMap& psi, const Chain& c) {
    if (!same_space(*phi.source, *psi.source) || !same_space(*phi.target, *psi.target))
        throw mismatched_spaces();
    Chain out{c.degree + 1, {}};
    std::vector<int32_t> prism;
    for (const auto& [t, coef] : c.terms) {
        const int n = static_cast<int>(t.size()) - 1;
        for (int j = 0; j <= n; ++j) {
            prism.clear();
            for (int k = 0; k <= j; ++k) prism.push_back(phi.to[t[k]]);
            for (int k = j; k <= n; ++k) prism.push_back(psi.to[t[k]]);
            chain_add(out, prism, (j % 2 == 0) ? coef : -coef, *phi.target);
        }
    }
    return out;
}

} // namespace qsh
