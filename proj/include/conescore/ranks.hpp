#pragma once

#include <optional>
#include <string_view>

#include "cone.hpp"

namespace conescore {

enum class RankKind { csr, cgr, cr };

/// Whether the witness generates K_W exactly or only encloses it.
enum class Relation { equal, encloses };

inline std::string_view to_string(RankKind k) {
    switch (k) {
        case RankKind::csr: return "csr";
        case RankKind::cgr: return "cgr";
        case RankKind::cr: return "cr";
    }
    return "?";
}

inline std::string_view to_string(Relation r) { return r == Relation::equal ? "equal" : "encloses"; }

struct RankResult {
    RankKind kind = RankKind::csr;
    std::size_t value = 0;
    GeneratorSet witness;
    std::optional<std::vector<std::size_t>> subset_indices;  // positions in the input set
    Relation relation = Relation::equal;
};

/// Limits on the exponential subset search in csr_subspace.
struct EnumerationCap {
    std::size_t max_lineality_dim = 6;
    double max_subsets = 2e6;
};

namespace detail {

inline double binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0.0;
    double c = 1.0;
    for (std::size_t i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
    return c;
}

/// Advances idx to the next k-combination of {0..n-1} in lexicographic order.
inline bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    const std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;) {
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

inline GeneratorSet indexed_rows(const std::vector<Vector>& rows, std::size_t dim) {
    std::vector<std::size_t> src(rows.size());
    std::iota(src.begin(), src.end(), std::size_t{0});
    return GeneratorSet(Matrix::from_rows(rows, dim), std::move(src));
}

/// Davis frame of the lineality space: z₀ = −Σzᵢ followed by the basis columns.
inline std::vector<Vector> lineality_frame(const Matrix& z) {
    std::vector<Vector> rows;
    if (z.cols() == 0) return rows;
    Vector z0(z.rows(), 0.0);
    for (std::size_t k = 0; k < z.cols(); ++k)
        for (std::size_t j = 0; j < z.rows(); ++j) z0[j] -= z(j, k);
    rows.push_back(std::move(z0));
    for (std::size_t k = 0; k < z.cols(); ++k) rows.push_back(z.col_vector(k));
    return rows;
}

/// Orthonormal basis (columns) of { x : a·x = 0 } in R^n.
inline Matrix complement_basis(std::span<const double> a, const Tolerances& tol) {
    const std::size_t n = a.size();
    const double an = norm2(a);
    std::vector<Vector> cand;
    for (std::size_t i = 0; i < n; ++i) {
        Vector e(n, 0.0);
        e[i] = 1.0;
        const double c = a[i] / (an * an);
        for (std::size_t j = 0; j < n; ++j) e[j] -= c * a[j];
        cand.push_back(std::move(e));
    }
    return orthonormal_basis(cand, n, tol);
}

}  // namespace detail

/// Greedy positive-independence pruning of a pointed cone's generators.
/// Scans rows in ascending order and drops the first one lying in the cone
/// of the others, restarting after each removal.
inline RankResult csr_pointed(const GeneratorSet& w, const Tolerances& tol) {
    if (!is_pointed(w, tol)) throw Error(ErrorKind::precondition, "csr_pointed requires pointed cone");
    std::vector<std::size_t> keep(w.size());
    std::iota(keep.begin(), keep.end(), std::size_t{0});
    bool removed = true;
    while (removed) {
        removed = false;
        for (std::size_t pos = 0; pos < keep.size(); ++pos) {
            std::vector<std::size_t> others;
            for (std::size_t q = 0; q < keep.size(); ++q)
                if (q != pos) others.push_back(keep[q]);
            if (is_in_cone(w[keep[pos]], w.subset(others), tol)) {
                keep.erase(keep.begin() + static_cast<std::ptrdiff_t>(pos));
                removed = true;
                break;
            }
        }
    }
    RankResult r;
    r.kind = RankKind::csr;
    r.value = keep.size();
    r.witness = w.subset(keep);
    r.subset_indices = keep;
    return r;
}

/// Smallest subset of a positively spanning set that still positively spans
/// the same subspace. Sizes t+1 .. 2t are tried in order, each in lexicographic
/// order; a subset U qualifies when rank U = t and −Σûᵢ ∈ cone(U).
inline RankResult csr_subspace(const GeneratorSet& w, const Tolerances& tol, const EnumerationCap& cap = {}) {
    RankResult r;
    r.kind = RankKind::csr;
    r.witness = GeneratorSet(w.dim());
    r.subset_indices = std::vector<std::size_t>{};
    if (w.empty()) return r;

    const std::size_t m = w.size();
    const std::size_t t = numeric_rank(w.matrix(), tol);
    const std::size_t top = std::min(2 * t, m);
    double subsets = 0.0;
    for (std::size_t k = t + 1; k <= top; ++k) subsets += detail::binomial(m, k);
    if (t > cap.max_lineality_dim || subsets > cap.max_subsets)
        throw Error(ErrorKind::resource_cap, "lineality dimension too large");

    const Matrix unit = w.normalized_rows();
    for (std::size_t k = t + 1; k <= top; ++k) {
        std::vector<std::size_t> idx(k);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        do {
            const Matrix u = unit.select_rows(idx);
            if (numeric_rank(u, tol) != t) continue;
            Vector neg_sum(w.dim(), 0.0);
            for (std::size_t i = 0; i < k; ++i) axpy(-1.0, u.row(i), neg_sum);
            // A vanishing sum is itself a positive zero combination.
            const bool vanishes = norm_inf(neg_sum) <= tol.cone_tol * static_cast<double>(k);
            if (!vanishes && !is_in_cone(neg_sum, w.subset(idx), tol)) continue;
            r.value = k;
            r.witness = w.subset(idx);
            r.subset_indices = idx;
            return r;
        } while (detail::next_combination(idx, m));
    }
    throw Error(ErrorKind::precondition, "csr_subspace: generators do not positively span their linear span");
}

/// Fewest rows of W generating K_W: a positive spanning subset of the lineal
/// rows plus the rows whose projections are extreme in the pointed part.
inline RankResult cone_subset_rank(const GeneratorSet& w, const Tolerances& tol, const EnumerationCap& cap = {}) {
    if (w.empty()) {
        RankResult r;
        r.witness = GeneratorSet(w.dim());
        r.subset_indices = std::vector<std::size_t>{};
        return r;
    }
    const auto dec = decompose(w, tol);
    if (dec.ell == 0) return csr_pointed(w, tol);

    std::vector<std::size_t> idx;
    const auto lineal = csr_subspace(dec.lineal_generators, tol, cap);
    for (std::size_t j : *lineal.subset_indices) idx.push_back(dec.lineal_rows[j]);
    if (!dec.pointed_generators.empty()) {
        const auto pointed = csr_pointed(dec.pointed_generators, tol);
        for (std::size_t j : *pointed.subset_indices) idx.push_back(dec.outside_rows[j]);
    }

    RankResult r;
    r.kind = RankKind::csr;
    r.value = idx.size();
    r.witness = w.subset(idx);
    r.subset_indices = std::move(idx);
    return r;
}

/// Fewest vectors of any kind generating K_W: the ℓ+1 frame of the lineality
/// space plus the extreme rays of the pointed part.
inline RankResult cone_generating_rank(const GeneratorSet& w, const Tolerances& tol) {
    RankResult r;
    r.kind = RankKind::cgr;
    r.witness = GeneratorSet(w.dim());
    if (w.empty()) return r;

    const auto dec = decompose(w, tol);
    if (dec.ell == 0) {
        r.witness = csr_pointed(w, tol).witness;
        r.value = r.witness.size();
        return r;
    }
    auto rows = detail::lineality_frame(dec.lineality_basis);
    if (!dec.pointed_generators.empty()) {
        const auto p = csr_pointed(dec.pointed_generators, tol);
        for (std::size_t i = 0; i < p.witness.size(); ++i) rows.push_back(p.witness.matrix().row_vector(i));
    }
    r.witness = detail::indexed_rows(rows, w.dim());
    r.value = rows.size();
    return r;
}

/// r vertices of a regular simplex inside the hyperplane, centered on the
/// mean of U with inradius (1 + cone_tol)·max‖uᵢ − ū‖, so conv(U) lies inside.
inline std::vector<Vector> enclosing_simplex(const std::vector<Vector>& u, const SeparatingHyperplane& h, const Tolerances& tol) {
    if (u.empty()) throw Error(ErrorKind::precondition, "enclosing_simplex: no points");
    const std::size_t r = h.normal.size();
    Vector center(r, 0.0);
    for (const auto& p : u) {
        if (p.size() != r) throw Error(ErrorKind::dimension_mismatch, "enclosing_simplex: point dimension mismatch");
        axpy(1.0, p, center);
    }
    for (double& v : center) v /= static_cast<double>(u.size());
    if (r == 1) return {center};

    double radius = 0.0;
    for (const auto& p : u) radius = std::max(radius, norm2(sub(p, center)));
    if (radius == 0.0) radius = norm2(center);
    const double rr = static_cast<double>(r);
    const double scale = radius * (1.0 + tol.cone_tol) * std::sqrt(rr * (rr - 1.0));

    // Centered standard basis of R^r is a regular simplex in {Σx = 0}; carry
    // that plane onto the hyperplane's direction space.
    const Matrix plane = detail::complement_basis(Vector(r, 1.0), tol);  // r x (r-1)
    const Matrix dir = detail::complement_basis(h.normal, tol);         // r x (r-1)
    std::vector<Vector> verts;
    for (std::size_t k = 0; k < r; ++k) {
        Vector e(r, -1.0 / rr);
        e[k] += 1.0;
        Vector q(r - 1, 0.0);
        for (std::size_t c = 0; c < r - 1; ++c)
            for (std::size_t j = 0; j < r; ++j) q[c] += plane(j, c) * e[j];
        Vector v = center;
        for (std::size_t c = 0; c < r - 1; ++c)
            for (std::size_t j = 0; j < r; ++j) v[j] += scale * dir(j, c) * q[c];
        verts.push_back(std::move(v));
    }
    return verts;
}

/// r generators whose cone encloses a pointed K_W. Works in the coefficient
/// space of span(W): separate, scale generators onto the hyperplane, enclose
/// them with a simplex, lift the vertices back.
inline RankResult cr_pointed(const GeneratorSet& w, const Tolerances& tol) {
    if (!is_pointed(w, tol)) throw Error(ErrorKind::precondition, "cr_pointed requires pointed cone");
    RankResult res;
    res.kind = RankKind::cr;
    res.relation = Relation::encloses;
    res.witness = GeneratorSet(w.dim());
    if (w.empty()) return res;

    const Matrix basis = row_space_basis(w.matrix(), tol);  // n x r
    const GeneratorSet coeff(w.matrix() * basis, w.sources());
    const GeneratorSet unit(coeff.normalized_rows(), w.sources());
    const auto h = find_strict_separator(unit, tol);

    std::vector<Vector> on_plane;
    for (std::size_t i = 0; i < unit.size(); ++i) on_plane.push_back(scaled(unit[i], h.offset / dot(h.normal, unit[i])));
    const auto verts = enclosing_simplex(on_plane, h, tol);

    std::vector<Vector> lifted;
    for (const auto& p : verts) lifted.push_back(basis * p);
    res.witness = detail::indexed_rows(lifted, w.dim());
    res.value = lifted.size();

    for (std::size_t i = 0; i < w.size(); ++i)
        if (!is_in_cone(w[i], res.witness, tol)) throw Error(ErrorKind::numerical, "cr_pointed: enclosure check failed");
    return res;
}

/// Fewest vectors whose cone contains K_W: r when pointed, r + 1 otherwise.
inline RankResult cone_rank(const GeneratorSet& w, const Tolerances& tol) {
    RankResult r;
    r.kind = RankKind::cr;
    r.relation = Relation::encloses;
    r.witness = GeneratorSet(w.dim());
    if (w.empty()) return r;

    const auto dec = decompose(w, tol);
    if (dec.ell == 0) return cr_pointed(w, tol);
    auto rows = detail::lineality_frame(dec.lineality_basis);
    if (!dec.pointed_generators.empty()) {
        const auto p = cr_pointed(dec.pointed_generators, tol);
        for (std::size_t i = 0; i < p.witness.size(); ++i) rows.push_back(p.witness.matrix().row_vector(i));
    }
    r.witness = detail::indexed_rows(rows, w.dim());
    r.value = rows.size();
    return r;
}

}  // namespace conescore
