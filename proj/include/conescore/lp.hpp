#pragma once

#include <limits>
#include <optional>

#include "generators.hpp"
#include "linalg.hpp"

namespace conescore {

namespace detail {

enum class LpStatus { optimal, infeasible, unbounded };

struct StandardFormResult {
    LpStatus status = LpStatus::infeasible;
    Vector x;
    double artificial_sum = 0.0;
};

/// Dense two-phase tableau simplex for  min c·x  s.t.  A x = b, x >= 0.
///
/// Bland's rule throughout: the entering column is the lowest-index column
/// with negative reduced cost, and ratio-test ties go to the lowest basic
/// variable index. Artificial columns never re-enter the basis.
class TableauSimplex {
public:
    static constexpr double pivot_eps = 1e-10;
    static constexpr double cost_eps = 1e-10;

    TableauSimplex(const Matrix& a, const Vector& b)
        : m_(a.rows()), nv_(a.cols()), t_(a.rows() + 1, a.cols() + a.rows() + 1), basis_(a.rows()), live_(a.rows(), true) {
        if (b.size() != m_) throw Error(ErrorKind::dimension_mismatch, "simplex: rhs size mismatch");
        rhs_ = nv_ + m_;
        for (std::size_t i = 0; i < m_; ++i) {
            const double sign = b[i] < 0.0 ? -1.0 : 1.0;
            for (std::size_t j = 0; j < nv_; ++j) t_(i, j) = sign * a(i, j);
            t_(i, nv_ + i) = 1.0;
            t_(i, rhs_) = sign * b[i];
            basis_[i] = nv_ + i;
        }
    }

    StandardFormResult solve(const Vector* cost, double infeasibility_tol) {
        // Phase one: minimize the sum of artificials.
        for (std::size_t j = 0; j <= rhs_; ++j) t_(m_, j) = 0.0;
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = 0; j < nv_; ++j) t_(m_, j) -= t_(i, j);
            t_(m_, rhs_) -= t_(i, rhs_);
        }
        run();

        StandardFormResult out;
        out.artificial_sum = artificial_sum();
        if (out.artificial_sum > infeasibility_tol) {
            out.status = LpStatus::infeasible;
            out.x = extract();
            return out;
        }
        if (cost == nullptr) {
            out.status = LpStatus::optimal;
            out.x = extract();
            return out;
        }

        if (cost->size() != nv_) throw Error(ErrorKind::dimension_mismatch, "simplex: cost size mismatch");
        drive_out_artificials();
        for (std::size_t j = 0; j <= rhs_; ++j) t_(m_, j) = 0.0;
        for (std::size_t j = 0; j < nv_; ++j) t_(m_, j) = (*cost)[j];
        for (std::size_t i = 0; i < m_; ++i) {
            if (!live_[i] || basis_[i] >= nv_) continue;
            const double cb = (*cost)[basis_[i]];
            if (cb == 0.0) continue;
            for (std::size_t j = 0; j <= rhs_; ++j) t_(m_, j) -= cb * t_(i, j);
        }
        out.status = run() ? LpStatus::optimal : LpStatus::unbounded;
        out.x = extract();
        return out;
    }

private:
    // Returns false on an unbounded ray.
    bool run() {
        const std::size_t cap = 200 * (m_ + nv_ + 10);
        for (std::size_t iter = 0; iter < cap; ++iter) {
            std::size_t enter = nv_;
            for (std::size_t j = 0; j < nv_; ++j)
                if (t_(m_, j) < -cost_eps) {
                    enter = j;
                    break;
                }
            if (enter == nv_) return true;

            std::size_t leave = m_;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m_; ++i) {
                if (!live_[i]) continue;
                const double aij = t_(i, enter);
                if (aij <= pivot_eps) continue;
                const double ratio = std::max(0.0, t_(i, rhs_)) / aij;
                const double tie = 1e-12 * (1.0 + std::abs(best));
                if (leave == m_ || ratio < best - tie) {
                    best = ratio;
                    leave = i;
                } else if (ratio <= best + tie && basis_[i] < basis_[leave]) {
                    best = std::min(best, ratio);
                    leave = i;
                }
            }
            if (leave == m_) return false;
            pivot(leave, enter);
        }
        throw Error(ErrorKind::numerical, "simplex: iteration cap exceeded");
    }

    void pivot(std::size_t r, std::size_t c) {
        const double p = t_(r, c);
        for (std::size_t j = 0; j <= rhs_; ++j) t_(r, j) /= p;
        t_(r, c) = 1.0;
        for (std::size_t i = 0; i <= m_; ++i) {
            if (i == r) continue;
            const double f = t_(i, c);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= rhs_; ++j) t_(i, j) -= f * t_(r, j);
            t_(i, c) = 0.0;
        }
        basis_[r] = c;
    }

    void drive_out_artificials() {
        for (std::size_t i = 0; i < m_; ++i) {
            if (!live_[i] || basis_[i] < nv_) continue;
            std::size_t col = nv_;
            double mag = pivot_eps;
            for (std::size_t j = 0; j < nv_; ++j)
                if (std::abs(t_(i, j)) > mag) {
                    mag = std::abs(t_(i, j));
                    col = j;
                }
            if (col == nv_)
                live_[i] = false;  // redundant equality
            else
                pivot(i, col);
        }
    }

    double artificial_sum() const {
        double s = 0.0;
        for (std::size_t i = 0; i < m_; ++i)
            if (live_[i] && basis_[i] >= nv_) s += std::abs(t_(i, rhs_));
        return s;
    }

    Vector extract() const {
        Vector x(nv_, 0.0);
        for (std::size_t i = 0; i < m_; ++i)
            if (live_[i] && basis_[i] < nv_) x[basis_[i]] = t_(i, rhs_);
        return x;
    }

    std::size_t m_;
    std::size_t nv_;
    std::size_t rhs_ = 0;
    Matrix t_;
    std::vector<std::size_t> basis_;
    std::vector<bool> live_;
};

inline StandardFormResult solve_standard_form(const Matrix& a, const Vector& b, const Vector* cost,
                                              double infeasibility_tol) {
    TableauSimplex s(a, b);
    return s.solve(cost, infeasibility_tol);
}

}  // namespace detail

/// Find λ ∈ R^m with λ·M = target, optionally λ >= 0 and Σλ = 1.
struct FeasibilityProblem {
    Matrix M;
    Vector target;
    bool require_nonneg = true;
    bool sum_to_one = false;
};

struct FeasibilityResult {
    bool feasible = false;
    std::optional<Vector> witness;
    double max_violation = 0.0;
};

/// Largest violation of the problem's constraints at λ.
inline double constraint_violation(const FeasibilityProblem& p, std::span<const double> lambda) {
    const Vector lhs = row_times(lambda, p.M);
    double v = norm_inf(sub(lhs, p.target));
    if (p.sum_to_one) {
        double s = 0.0;
        for (double l : lambda) s += l;
        v = std::max(v, std::abs(s - 1.0));
    }
    if (p.require_nonneg)
        for (double l : lambda) v = std::max(v, -l);
    return v;
}

/// Phase-one simplex feasibility check. Feasible iff the recovered witness
/// violates no constraint by more than feas_tol·(1 + ‖target‖∞).
inline FeasibilityResult solve_feasibility(const FeasibilityProblem& p, const Tolerances& tol) {
    const std::size_t m = p.M.rows();
    const std::size_t n = p.M.cols();
    if (p.target.size() != n) throw Error(ErrorKind::dimension_mismatch, "solve_feasibility: target size must equal M columns");

    const std::size_t nvar = p.require_nonneg ? m : 2 * m;
    const std::size_t ncon = n + (p.sum_to_one ? 1 : 0);
    Matrix a(ncon, nvar);
    Vector b(ncon, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < m; ++i) {
            a(j, i) = p.M(i, j);
            if (!p.require_nonneg) a(j, m + i) = -p.M(i, j);
        }
        b[j] = p.target[j];
    }
    if (p.sum_to_one) {
        for (std::size_t i = 0; i < m; ++i) {
            a(n, i) = 1.0;
            if (!p.require_nonneg) a(n, m + i) = -1.0;
        }
        b[n] = 1.0;
    }

    FeasibilityResult out;
    Vector lambda(m, 0.0);
    if (nvar > 0 && ncon > 0) {
        const auto sf = detail::solve_standard_form(a, b, nullptr, std::numeric_limits<double>::infinity());
        for (std::size_t i = 0; i < m; ++i) lambda[i] = p.require_nonneg ? sf.x[i] : sf.x[i] - sf.x[m + i];
    }
    out.max_violation = constraint_violation(p, lambda);
    out.feasible = out.max_violation <= tol.feas_tol * (1.0 + norm_inf(p.target));
    if (out.feasible) out.witness = std::move(lambda);
    return out;
}

/// Hyperplane {x : normal·x = offset} inside span(W) strictly separating the
/// origin from every generator.
struct SeparatingHyperplane {
    Vector normal;
    double offset = 0.0;
    Matrix ambient_basis;  // n x r orthonormal basis of span(W)
};

/// LP separator: w ∈ span(W) with w·wᵢ >= 1 for every generator, minimizing
/// Σ w·wᵢ, and offset ½. Exists exactly when the cone of W is pointed.
inline SeparatingHyperplane find_strict_separator(const GeneratorSet& w, const Tolerances& tol) {
    if (w.empty()) throw Error(ErrorKind::precondition, "find_strict_separator: no generators");
    const Matrix basis = row_space_basis(w.matrix(), tol);
    const std::size_t r = basis.cols();
    const std::size_t m = w.size();
    const Matrix coeff = w.matrix() * basis;  // m x r

    // Variables: y+ (r), y- (r), surplus s (m).  coeff·(y+ - y-) - s = 1.
    Matrix a(m, 2 * r + m);
    Vector b(m, 1.0);
    Vector cost(2 * r + m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = 0; k < r; ++k) {
            a(i, k) = coeff(i, k);
            a(i, r + k) = -coeff(i, k);
        }
        a(i, 2 * r + i) = -1.0;
        cost[2 * r + i] = 1.0;
    }
    const auto sf = detail::solve_standard_form(a, b, &cost, tol.feas_tol * static_cast<double>(m));
    if (sf.status == detail::LpStatus::infeasible) throw Error(ErrorKind::precondition, "no strict separator exists");

    Vector y(r);
    for (std::size_t k = 0; k < r; ++k) y[k] = sf.x[k] - sf.x[r + k];
    Vector normal = basis * y;

    double min_b = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) min_b = std::min(min_b, dot(normal, w[i]));
    if (!(min_b > 0.5)) throw Error(ErrorKind::precondition, "no strict separator exists");
    if (min_b < 1.0)
        for (double& v : normal) v /= min_b;
    return {std::move(normal), 0.5, basis};
}

}  // namespace conescore
