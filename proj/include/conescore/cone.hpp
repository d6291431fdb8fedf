#pragma once

#include "generators.hpp"
#include "linalg.hpp"
#include "lp.hpp"

namespace conescore {

/// True iff x = λW for some λ >= 0, up to cone_tol·(‖x‖∞ + 1) after scaling
/// x to unit max-norm and the generators to unit length.
inline bool is_in_cone(std::span<const double> x, const GeneratorSet& w, const Tolerances& tol) {
    if (x.size() != w.dim()) throw Error(ErrorKind::dimension_mismatch, "is_in_cone: dimension mismatch");
    const double scale = norm_inf(x);
    if (scale == 0.0) return true;
    if (w.empty()) return false;
    Tolerances t = tol;
    t.feas_tol = tol.cone_tol;
    return solve_feasibility({w.normalized_rows(), scaled(x, 1.0 / scale), true, false}, t).feasible;
}

/// LP-1 on unit-normalized generators: pointed iff no convex combination of
/// the generators vanishes.
inline FeasibilityResult zero_combination(const Matrix& normalized, const Tolerances& tol) {
    return solve_feasibility({normalized, Vector(normalized.cols(), 0.0), true, true}, tol);
}

inline bool is_pointed(const GeneratorSet& w, const Tolerances& tol) {
    if (w.empty()) return true;
    return !zero_combination(w.normalized_rows(), tol).feasible;
}

struct LinealityPartition {
    GeneratorSet lineal;
    GeneratorSet rest;
    std::vector<std::size_t> lineal_rows;  // positions in the partitioned set
    std::vector<std::size_t> rest_rows;
};

/// Splits W into rows inside span(Z) and the remainder. A row counts as
/// inside when ‖(I − ZZᵀ)w‖∞ <= cone_tol·‖w‖∞.
inline LinealityPartition partition_by_lineality(const GeneratorSet& w, const Matrix& lineality_basis, const Tolerances& tol) {
    if (lineality_basis.rows() != w.dim())
        throw Error(ErrorKind::dimension_mismatch, "partition_by_lineality: basis dimension mismatch");
    LinealityPartition p;
    const Matrix residual = project_complement(w.matrix(), lineality_basis);
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (norm_inf(residual.row(i)) <= tol.cone_tol * norm_inf(w[i]))
            p.lineal_rows.push_back(i);
        else
            p.rest_rows.push_back(i);
    }
    p.lineal = w.subset(p.lineal_rows);
    p.rest = w.subset(p.rest_rows);
    return p;
}

/// K_W = L + K_P with L the lineality space and K_P pointed inside L⊥.
struct ConeDecomposition {
    Matrix lineality_basis;           // d x ell, orthonormal columns
    GeneratorSet lineal_generators;   // rows of W inside L
    GeneratorSet pointed_generators;  // rows of W outside L, projected onto L⊥
    std::vector<std::size_t> lineal_rows;
    std::vector<std::size_t> outside_rows;  // positions in W of the pointed generators' preimages
    std::size_t ell = 0;
};

/// Iterative LP decomposition. Each round solves LP-1 on the current
/// projected candidates, moves every row with positive weight into the
/// lineality list, and projects the survivors off the enlarged span.
inline ConeDecomposition decompose(const GeneratorSet& w, const Tolerances& tol) {
    const std::size_t d = w.dim();
    std::vector<Vector> lineal_list;
    Matrix z(d, 0);

    std::vector<std::size_t> cand(w.size());
    std::iota(cand.begin(), cand.end(), std::size_t{0});
    Matrix projected = w.matrix();

    while (!cand.empty()) {
        Matrix m(cand.size(), d);
        for (std::size_t k = 0; k < cand.size(); ++k) {
            auto src = projected.row(cand[k]);
            const double n = norm2(src);
            for (std::size_t j = 0; j < d; ++j) m(k, j) = src[j] / n;
        }
        const auto lp = zero_combination(m, tol);
        if (!lp.feasible) break;

        const Vector& alpha = *lp.witness;
        std::vector<std::size_t> keep;
        std::size_t heaviest = 0;
        bool moved = false;
        for (std::size_t k = 0; k < cand.size(); ++k) {
            if (alpha[k] > alpha[heaviest]) heaviest = k;
            if (alpha[k] > tol.feas_tol) {
                lineal_list.push_back(w.matrix().row_vector(cand[k]));
                moved = true;
            } else {
                keep.push_back(cand[k]);
            }
        }
        if (!moved) {
            lineal_list.push_back(w.matrix().row_vector(cand[heaviest]));
            keep.erase(std::find(keep.begin(), keep.end(), cand[heaviest]));
        }

        z = orthonormal_basis(lineal_list, d, tol);
        projected = project_complement(w.matrix(), z);
        cand.clear();
        for (std::size_t i : keep)
            if (norm_inf(projected.row(i)) > tol.cone_tol * norm_inf(w[i])) cand.push_back(i);
    }

    ConeDecomposition out;
    out.lineality_basis = z;
    out.ell = z.cols();
    auto part = partition_by_lineality(w, z, tol);
    out.lineal_generators = std::move(part.lineal);
    out.lineal_rows = std::move(part.lineal_rows);
    out.outside_rows = std::move(part.rest_rows);
    std::vector<std::size_t> src;
    for (std::size_t i : out.outside_rows) src.push_back(w.source(i));
    out.pointed_generators = GeneratorSet(project_complement(part.rest.matrix(), z), std::move(src));
    return out;
}

}  // namespace conescore
