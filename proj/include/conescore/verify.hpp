#pragma once

#include <limits>
#include <string>

#include "design.hpp"

namespace conescore {

struct Violation {
    static constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    std::size_t first = none;   // sample, row, or generator index
    std::size_t second = none;  // partner sample for pairwise checks
    double magnitude = 0.0;
};

struct VerificationReport {
    std::string check_name;
    bool passed = true;
    std::size_t checked_pairs = 0;
    std::vector<Violation> violations;
    std::string strength = "exhaustive";  // exhaustive | certificate | evidence | vacuous

    void add(Violation v) {
        violations.push_back(v);
        passed = false;
    }
};

namespace detail {

inline void check_design_dims(const ScoreDesign& d, const std::vector<Vector>& samples) {
    for (const auto& f : samples)
        if (f.size() != d.A.cols()) throw Error(ErrorKind::dimension_mismatch, "sample dimension differs from score matrix width");
}

}  // namespace detail

/// Pairwise test of the improvement objective: whenever A·f′ >= A·f − tol,
/// every metric must satisfy f′ >= f − tol.
inline VerificationReport check_improvement(const ScoreDesign& d, const std::vector<Vector>& samples, const Tolerances& tol) {
    detail::check_design_dims(d, samples);
    VerificationReport rep;
    rep.check_name = "improvement";
    const double eps = tol.cone_tol;
    std::vector<Vector> s;
    for (const auto& f : samples) s.push_back(d.A * f);

    for (std::size_t i = 0; i < samples.size(); ++i)
        for (std::size_t j = 0; j < samples.size(); ++j) {
            if (i == j) continue;
            ++rep.checked_pairs;
            bool score_up = true;
            for (std::size_t c = 0; c < s[i].size() && score_up; ++c) score_up = s[j][c] >= s[i][c] - eps;
            if (!score_up) continue;
            double worst = 0.0;
            for (std::size_t c = 0; c < samples[i].size(); ++c) worst = std::max(worst, samples[i][c] - samples[j][c]);
            if (worst > eps) rep.add({i, j, worst});
        }
    return rep;
}

/// Pareto-optimal points of the score must be Pareto-optimal metrics.
inline VerificationReport check_optimality(const ScoreDesign& d, const std::vector<Vector>& samples, const Tolerances& tol) {
    detail::check_design_dims(d, samples);
    VerificationReport rep;
    rep.check_name = "optimality";
    rep.checked_pairs = samples.size() * samples.size();
    const auto metric_front = pareto_front(samples, std::nullopt, tol.cone_tol);
    const auto score_front = pareto_front(samples, d.A, tol.cone_tol);
    std::vector<bool> in_metric(samples.size(), false);
    for (std::size_t i : metric_front) in_metric[i] = true;
    for (std::size_t i : score_front)
        if (!in_metric[i]) rep.add({i, Violation::none, 1.0});
    return rep;
}

/// Restriction check. Coordinate selection: every row of A is 1-hot.
/// Linear-monotone: exact certificate that every row of V = A·Z lies in the
/// cone of the rows of Z, which is equivalent to monotonicity on the hull's
/// direction space; a sign-pattern sweep over coefficient directions adds
/// sampled evidence. Linear: nothing to check.
inline VerificationReport check_restriction(const ScoreDesign& d, const AffineHull& hull, const Tolerances& tol) {
    VerificationReport rep;
    rep.check_name = "restriction:" + std::string(to_string(d.restriction));

    if (d.restriction == Restriction::linear) {
        rep.strength = "vacuous";
        return rep;
    }
    if (d.restriction == Restriction::coordinate_selection) {
        for (std::size_t i = 0; i < d.A.rows(); ++i) {
            std::size_t ones = 0;
            double off = 0.0;
            for (double a : d.A.row(i)) {
                if (std::abs(a - 1.0) <= tol.rank_tol)
                    ++ones;
                else
                    off = std::max(off, std::abs(a));
            }
            if (ones != 1 || off > tol.rank_tol) rep.add({i, Violation::none, std::max(off, ones == 1 ? 0.0 : 1.0)});
        }
        return rep;
    }

    if (d.A.cols() != hull.ambient_dim()) throw Error(ErrorKind::dimension_mismatch, "score matrix width differs from hull dimension");
    const Matrix& z = hull.basis;
    const std::size_t r = z.cols();
    const Matrix v = d.A * z;
    rep.strength = "certificate";
    if (r == 0) return rep;

    const auto zrows = GeneratorSet::from_matrix(z, tol);
    for (std::size_t i = 0; i < v.rows(); ++i) {
        ++rep.checked_pairs;
        if (!is_in_cone(v.row(i), zrows, tol)) rep.add({i, Violation::none, 1.0});
    }

    // Directions c ∈ {−1,0,1}^r with Z·c >= 0 must give V·c >= −tol.
    if (r <= 8) {
        std::vector<int> c(r, -1);
        Vector cv(r);
        for (;;) {
            for (std::size_t j = 0; j < r; ++j) cv[j] = c[j];
            const Vector zc = z * cv;
            const double scale = std::max(1.0, norm_inf(zc));
            if (*std::min_element(zc.begin(), zc.end()) >= -tol.cone_tol * scale) {
                ++rep.checked_pairs;
                const Vector vc = v * cv;
                for (std::size_t i = 0; i < vc.size(); ++i)
                    if (vc[i] < -tol.cone_tol * scale) rep.add({i, Violation::none, -vc[i]});
            }
            std::size_t pos = 0;
            while (pos < r && c[pos] == 1) c[pos++] = -1;
            if (pos == r) break;
            ++c[pos];
        }
    }
    return rep;
}

/// Every generator of `w` lies in the cone of `v`.
inline bool check_cone_subset(const GeneratorSet& w, const GeneratorSet& v, const Tolerances& tol) {
    if (w.dim() != v.dim()) throw Error(ErrorKind::dimension_mismatch, "check_cone_subset: dimension mismatch");
    for (std::size_t i = 0; i < w.size(); ++i)
        if (!is_in_cone(w[i], v, tol)) return false;
    return true;
}

inline bool check_cone_equal(const GeneratorSet& w, const GeneratorSet& v, const Tolerances& tol) {
    return check_cone_subset(w, v, tol) && check_cone_subset(v, w, tol);
}

}  // namespace conescore
