#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "ranks.hpp"

namespace conescore {

enum class Objective { improvement, optimality, both };

inline std::string_view to_string(Objective o) {
    switch (o) {
        case Objective::improvement: return "improvement";
        case Objective::optimality: return "optimality";
        case Objective::both: return "both";
    }
    return "?";
}

inline Objective parse_objective(std::string_view s) {
    if (s == "improvement" || s == "IMPROVEMENT") return Objective::improvement;
    if (s == "optimality" || s == "OPTIMALITY") return Objective::optimality;
    if (s == "both" || s == "BOTH") return Objective::both;
    throw Error(ErrorKind::invalid_input, "unknown objective '" + std::string(s) + "'");
}

/// Finite sample of the feasible metric set F together with its affine hull.
struct MetricSpace {
    std::vector<Vector> samples;
    AffineHull hull;
    bool relint_nonempty = false;  // asserted by the caller, never inferred

    static MetricSpace from_samples(std::vector<Vector> samples, const Tolerances& tol, bool relint_nonempty = false) {
        MetricSpace s;
        s.hull = compute_affine_hull(samples, tol);
        s.samples = std::move(samples);
        s.relint_nonempty = relint_nonempty;
        return s;
    }

    std::size_t dim() const { return hull.ambient_dim(); }
};

/// Linear score S(f) = A·f.
struct ScoreDesign {
    Matrix A;  // k x d
    std::size_t k = 0;
    Restriction restriction = Restriction::linear;
    Objective objective = Objective::improvement;
    Matrix V;  // k x r, equals A·Z
    std::optional<RankResult> rank_used;
    bool minimality_certified = false;
    std::vector<std::string> warnings;
};

namespace detail {

inline bool certifies_minimality(const MetricSpace& space, Objective o, Restriction r) {
    if (!space.relint_nonempty) return false;
    return o == Objective::improvement || (o == Objective::both && r != Restriction::linear);
}

inline ScoreDesign empty_design(const MetricSpace& space, Restriction r, Objective o) {
    ScoreDesign d;
    d.A = Matrix(0, space.dim());
    d.V = Matrix(0, 0);
    d.restriction = r;
    d.objective = o;
    d.warnings.push_back("affine hull of the samples is a single point; empty design returned");
    return d;
}

inline ScoreDesign design_from_rank(const MetricSpace& space, Restriction restriction, Objective objective, RankKind kind,
                                    const Tolerances& tol, const EnumerationCap& cap) {
    const Matrix& z = space.hull.basis;
    if (z.cols() == 0) return empty_design(space, restriction, objective);

    const auto w = GeneratorSet::from_matrix(z, tol);
    RankResult rank;
    switch (kind) {
        case RankKind::csr: rank = cone_subset_rank(w, tol, cap); break;
        case RankKind::cgr: rank = cone_generating_rank(w, tol); break;
        case RankKind::cr: rank = cone_rank(w, tol); break;
    }

    ScoreDesign d;
    d.restriction = restriction;
    d.objective = objective;
    d.V = rank.witness.matrix();
    std::optional<std::vector<std::size_t>> selected;
    if (restriction == Restriction::coordinate_selection) selected = rank.witness.sources();
    d.A = recover_A(d.V, z, restriction, selected, tol);
    d.k = d.A.rows();
    d.rank_used = std::move(rank);
    d.minimality_certified = certifies_minimality(space, objective, restriction);
    return d;
}

}  // namespace detail

/// Score of least dimension under the restriction such that a higher score
/// always means better metrics.
inline ScoreDesign design_improvement(const MetricSpace& space, Restriction restriction, const Tolerances& tol,
                                      const EnumerationCap& cap = {}) {
    const RankKind kind = restriction == Restriction::coordinate_selection ? RankKind::csr
                          : restriction == Restriction::linear_monotone    ? RankKind::cgr
                                                                           : RankKind::cr;
    return detail::design_from_rank(space, restriction, Objective::improvement, kind, tol, cap);
}

/// Score whose Pareto-optimal points are Pareto-optimal metrics. Monotone and
/// linear restrictions get the all-ones row; coordinate selection picks the
/// first linearly independent rows of Z.
inline ScoreDesign design_optimality(const MetricSpace& space, Restriction restriction, const Tolerances& tol) {
    const Matrix& z = space.hull.basis;
    const std::size_t d = space.dim();
    ScoreDesign out;
    out.restriction = restriction;
    out.objective = Objective::optimality;

    if (restriction != Restriction::coordinate_selection) {
        out.A = Matrix(1, d, 1.0);
        out.k = 1;
        out.V = out.A * z;
        if (z.cols() == 0) out.warnings.push_back("affine hull of the samples is a single point");
        return out;
    }
    if (z.cols() == 0) return detail::empty_design(space, restriction, Objective::optimality);

    std::vector<std::size_t> picked;
    Matrix chosen(0, z.cols());
    for (std::size_t i = 0; i < d && picked.size() < z.cols(); ++i) {
        // Z has orthonormal columns, so a row this small is a constant metric.
        if (norm_inf(z.row(i)) <= tol.rank_tol) continue;
        Matrix trial = chosen;
        trial.append_row(z.row(i));
        if (numeric_rank(trial, tol) > picked.size()) {
            chosen = std::move(trial);
            picked.push_back(i);
        }
    }
    out.V = chosen;
    out.A = recover_A(out.V, z, restriction, picked, tol);
    out.k = out.A.rows();
    return out;
}

/// Score meeting both objectives: the improvement design built from the
/// subset rank for coordinate selection and the generating rank otherwise.
inline ScoreDesign design_both(const MetricSpace& space, Restriction restriction, const Tolerances& tol,
                               const EnumerationCap& cap = {}) {
    const RankKind kind = restriction == Restriction::coordinate_selection ? RankKind::csr : RankKind::cgr;
    return detail::design_from_rank(space, restriction, Objective::both, kind, tol, cap);
}

inline ScoreDesign design(const MetricSpace& space, Objective objective, Restriction restriction, const Tolerances& tol,
                          const EnumerationCap& cap = {}) {
    switch (objective) {
        case Objective::improvement: return design_improvement(space, restriction, tol, cap);
        case Objective::optimality: return design_optimality(space, restriction, tol);
        case Objective::both: return design_both(space, restriction, tol, cap);
    }
    throw Error(ErrorKind::invalid_input, "unknown objective");
}

/// Indices of the points not dominated under `score` (identity when absent).
/// j dominates i when it is no worse anywhere by more than tol and better
/// somewhere by more than tol.
inline std::vector<std::size_t> pareto_front(const std::vector<Vector>& points, const std::optional<Matrix>& score, double tol) {
    std::vector<Vector> img;
    img.reserve(points.size());
    for (const auto& p : points) img.push_back(score ? *score * p : p);

    std::vector<std::size_t> front;
    for (std::size_t i = 0; i < img.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < img.size() && !dominated; ++j) {
            if (j == i) continue;
            bool no_worse = true;
            bool better = false;
            for (std::size_t c = 0; c < img[i].size() && no_worse; ++c) {
                if (img[j][c] < img[i][c] - tol) no_worse = false;
                if (img[j][c] > img[i][c] + tol) better = true;
            }
            dominated = no_worse && better;
        }
        if (!dominated) front.push_back(i);
    }
    return front;
}

}  // namespace conescore
