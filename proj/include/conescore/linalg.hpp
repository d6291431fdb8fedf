#pragma once

#include <optional>
#include <string_view>

#include "matrix.hpp"

namespace conescore {

/// Design restriction on the score matrix A.
enum class Restriction {
    coordinate_selection,  // rows of A are 1-hot
    linear_monotone,       // f' >= f implies A f' >= A f on the metric set
    linear,                // unrestricted
};

inline std::string_view to_string(Restriction r) {
    switch (r) {
        case Restriction::coordinate_selection: return "res-cs";
        case Restriction::linear_monotone: return "res-lm";
        case Restriction::linear: return "res-l";
    }
    return "?";
}

inline Restriction parse_restriction(std::string_view s) {
    if (s == "res-cs" || s == "RES_CS" || s == "cs") return Restriction::coordinate_selection;
    if (s == "res-lm" || s == "RES_LM" || s == "lm") return Restriction::linear_monotone;
    if (s == "res-l" || s == "RES_L" || s == "l") return Restriction::linear;
    throw Error(ErrorKind::invalid_input, "unknown restriction '" + std::string(s) + "'");
}

/// Orthonormal basis (as matrix columns) of the span of `vectors`.
///
/// Pivoted modified Gram-Schmidt with one re-orthogonalization pass: at each
/// step the remaining vector with the largest residual is taken, and the sweep
/// stops once every residual is at most rank_tol times the largest input norm.
/// Each column is sign-normalized so its largest-magnitude entry is positive.
inline Matrix orthonormal_basis(const std::vector<Vector>& vectors, std::size_t dim, const Tolerances& tol) {
    for (const auto& v : vectors)
        if (v.size() != dim) throw Error(ErrorKind::dimension_mismatch, "orthonormal_basis: vectors differ in dimension");

    double scale = 0.0;
    for (const auto& v : vectors) scale = std::max(scale, norm2(v));
    if (scale == 0.0) return Matrix(dim, 0);

    std::vector<Vector> residual = vectors;
    std::vector<double> rnorm(residual.size());
    std::vector<bool> used(residual.size(), false);
    std::vector<Vector> basis;
    const double cutoff = tol.rank_tol * scale;

    while (basis.size() < dim) {
        for (std::size_t i = 0; i < residual.size(); ++i) rnorm[i] = used[i] ? -1.0 : norm2(residual[i]);
        std::size_t pivot = residual.size();
        double best = cutoff;
        for (std::size_t i = 0; i < residual.size(); ++i)
            if (rnorm[i] > best) {
                best = rnorm[i];
                pivot = i;
            }
        if (pivot == residual.size()) break;
        used[pivot] = true;

        Vector q = residual[pivot];
        for (const auto& b : basis) axpy(-dot(b, q), b, q);
        const double qn = norm2(q);
        if (qn <= cutoff) continue;
        for (double& v : q) v /= qn;

        for (std::size_t i = 0; i < residual.size(); ++i)
            if (!used[i]) axpy(-dot(q, residual[i]), q, residual[i]);
        basis.push_back(std::move(q));
    }

    for (auto& b : basis) {
        std::size_t arg = 0;
        for (std::size_t i = 1; i < b.size(); ++i)
            if (std::abs(b[i]) > std::abs(b[arg]) * (1.0 + 1e-12)) arg = i;
        if (b[arg] < 0.0)
            for (double& v : b) v = -v;
    }
    return Matrix::from_columns(basis, dim);
}

/// Orthonormal basis of the row space of `m`.
inline Matrix row_space_basis(const Matrix& m, const Tolerances& tol) {
    return orthonormal_basis(m.row_list(), m.cols(), tol);
}

/// Number of independent directions among the rows of `m`, at rank_tol.
inline std::size_t numeric_rank(const Matrix& m, const Tolerances& tol) {
    if (m.empty()) return 0;
    return row_space_basis(m, tol).cols();
}

/// Affine hull of a finite sample set: anchor point plus an orthonormal basis
/// of the associated linear subspace.
struct AffineHull {
    Vector anchor;
    Matrix basis;  // d x r, orthonormal columns

    std::size_t ambient_dim() const { return anchor.size(); }
    std::size_t dim() const { return basis.cols(); }
};

inline AffineHull compute_affine_hull(const std::vector<Vector>& samples, const Tolerances& tol) {
    if (samples.empty()) throw Error(ErrorKind::invalid_input, "no samples");
    const std::size_t d = samples.front().size();
    Vector centroid(d, 0.0);
    for (const auto& f : samples) {
        if (f.size() != d) throw Error(ErrorKind::dimension_mismatch, "samples differ in dimension");
        for (double v : f)
            if (!std::isfinite(v)) throw Error(ErrorKind::invalid_input, "sample has non-finite entries");
        axpy(1.0, f, centroid);
    }
    for (double& v : centroid) v /= static_cast<double>(samples.size());

    std::vector<Vector> diffs;
    diffs.reserve(samples.size());
    for (const auto& f : samples) diffs.push_back(sub(f, centroid));
    return {centroid, orthonormal_basis(diffs, d, tol)};
}

/// Rows of W projected onto the orthogonal complement of span(Z): W(I - Z Zᵀ).
inline Matrix project_complement(const Matrix& w, const Matrix& z) {
    if (w.cols() != z.rows()) throw Error(ErrorKind::dimension_mismatch, "project_complement: W columns must equal Z rows");
    Matrix out = w;
    if (z.cols() == 0) return out;
    const Matrix coeff = w * z;  // m x l
    for (std::size_t i = 0; i < w.rows(); ++i)
        for (std::size_t k = 0; k < z.cols(); ++k) {
            const double c = coeff(i, k);
            for (std::size_t j = 0; j < w.cols(); ++j) out(i, j) -= c * z(j, k);
        }
    return out;
}

inline Vector project_complement(std::span<const double> w, const Matrix& z) {
    Matrix row(1, w.size());
    std::copy(w.begin(), w.end(), row.row(0).begin());
    return project_complement(row, z).row_vector(0);
}

/// Recovers a score matrix A with A·Z = V.
///
/// Coordinate selection yields 1-hot rows picking the metric whose Z-row
/// equals the corresponding V-row (`selected` fixes the choice when given).
/// Otherwise the minimum-norm solution A = V·Zᵀ is returned.
inline Matrix recover_A(const Matrix& v, const Matrix& z, Restriction restriction,
                        const std::optional<std::vector<std::size_t>>& selected, const Tolerances& tol) {
    if (v.cols() != z.cols()) throw Error(ErrorKind::dimension_mismatch, "recover_A: V and Z column counts differ");
    const std::size_t d = z.rows();
    if (restriction != Restriction::coordinate_selection) return v * z.transpose();

    Matrix a(v.rows(), d);
    const double slack = tol.rank_tol * std::max(1.0, z.max_abs());
    auto row_matches = [&](std::size_t vi, std::size_t zi) {
        return norm_inf(sub(v.row(vi), z.row(zi))) <= slack;
    };
    for (std::size_t i = 0; i < v.rows(); ++i) {
        std::optional<std::size_t> hit;
        if (selected) {
            if (selected->size() != v.rows()) throw Error(ErrorKind::dimension_mismatch, "recover_A: one index per V row required");
            const std::size_t zi = (*selected)[i];
            if (zi < d && row_matches(i, zi)) hit = zi;
        } else {
            for (std::size_t zi = 0; zi < d && !hit; ++zi)
                if (row_matches(i, zi)) hit = zi;
        }
        if (!hit) throw Error(ErrorKind::precondition, "not coordinate-selectable");
        a(i, *hit) = 1.0;
    }
    return a;
}

}  // namespace conescore
