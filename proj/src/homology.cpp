#include "qsh/homology.hpp"

namespace qsh {

std::string Coefficients::str() const {
    switch (ring) {
    case Ring::Z: return "Z";
    case Ring::Q: return "Q";
    case Ring::Fp: return "F" + std::to_string(p);
    }
    return "?";
}

namespace {

template <class F> long long field_rank(const F& f, const linalg::SparseIntMatrix& m) {
    return linalg::rank_of(f, m);
}

long long matrix_rank(const linalg::SparseIntMatrix& m, Coefficients k) {
    if (k.ring == Ring::Fp) {
        linalg::PField f{k.p};
        return field_rank(f, m);
    }
    linalg::QField f;
    return field_rank(f, m); // Z free rank coincides with the Q rank
}

template <class F>
long long image_rank_impl(const F& f, const ChainMap& fm, int n) {
    const auto& dn_src = fm.src->boundary(n); // kernel side
    const auto& dn1_dst = fm.dst->boundary(n + 1);
    auto cycles = linalg::kernel_basis(f, dn_src);

    linalg::ColumnReducer<F> red(f);
    for (const auto& bcol : dn1_dst.col) red.absorb(linalg::to_field_col(f, bcol));
    const long long boundary_rank = red.rank();
    for (const auto& z : cycles) red.absorb(linalg::apply(f, fm.deg[n], z));
    return red.rank() - boundary_rank;
}

} // namespace

HomologyGroup homology(const TruncatedComplex& c, int n, Coefficients k) {
    if (n < 0) return {};
    if (n + 1 > c.degree_bound()) throw degree_not_materialized(n + 1);
    const long long dim = c.dim(n);
    const long long rank_dn = n == 0 ? 0 : matrix_rank(c.boundary(n), k);
    const long long rank_dn1 = matrix_rank(c.boundary(n + 1), k);
    HomologyGroup h;
    h.rank = dim - rank_dn - rank_dn1;
    if (k.ring == Ring::Z) {
        auto snf = linalg::smith_normal_form(linalg::DenseInt::from_sparse(c.boundary(n + 1)), false,
                                             paranoid_checks);
        h.torsion = snf.torsion();
    }
    return h;
}

long long induced_image_rank(const ChainMap& f, int n, Coefficients field) {
    if (!field.is_field()) throw qsh_error("image ranks are computed over a field");
    if (n < 0) return 0;
    if (n > f.src->degree_bound() || n + 1 > f.dst->degree_bound())
        throw degree_not_materialized(n + 1);
    if (static_cast<int>(f.deg.size()) <= n) throw degree_not_materialized(n);
    if (paranoid_checks) check_chain_map(f);
    if (field.ring == Ring::Fp) {
        linalg::PField ff{field.p};
        return image_rank_impl(ff, f, n);
    }
    linalg::QField ff;
    return image_rank_impl(ff, f, n);
}

} // namespace qsh
