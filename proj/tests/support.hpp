#pragma once

// Random instance builders shared by the unit tests and the acceptance run.
// Every builder knows the lineality dimension and rank of what it makes, so
// those act as construction oracles.

#include <random>

#include <conescore/conescore.hpp>

namespace testsupport {

using conescore::GeneratorSet;
using conescore::Matrix;
using conescore::Tolerances;
using conescore::Vector;

using Rng = std::mt19937_64;

inline Vector gaussian(Rng& rng, std::size_t n) {
    std::normal_distribution<double> g;
    Vector v(n);
    for (double& x : v) x = g(rng);
    return v;
}

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// n x k matrix with orthonormal columns drawn from a Gaussian matrix.
inline Matrix random_orthonormal(Rng& rng, std::size_t n, std::size_t k) {
    for (;;) {
        std::vector<Vector> cols;
        for (std::size_t j = 0; j < k; ++j) cols.push_back(gaussian(rng, n));
        Matrix q = conescore::orthonormal_basis(cols, n, Tolerances{});
        if (q.cols() == k) return q;
    }
}

/// Random rotation of R^n.
inline Matrix random_rotation(Rng& rng, std::size_t n) { return random_orthonormal(rng, n, n); }

/// Unit vector in R^k whose angle to `axis` has cosine at least `margin`.
inline Vector inside_axis(Rng& rng, const Vector& axis, double margin) {
    for (;;) {
        Vector v = conescore::add(axis, conescore::scaled(gaussian(rng, axis.size()), 0.8));
        const double n = conescore::norm2(v);
        if (n > 0 && conescore::dot(v, axis) / n >= margin) return conescore::scaled(v, 1.0 / n);
    }
}

struct ConeInstance {
    Matrix w;
    std::size_t ell = 0;   // lineality dimension by construction
    std::size_t rank = 0;  // dimension of span(W) by construction
    bool pointed() const { return ell == 0; }
};

/// Cone in R^n with a lineality space of dimension `ell` and a pointed part
/// of dimension `rp` in its orthogonal complement, m >= needed rows.
inline ConeInstance random_cone(Rng& rng, std::size_t n, std::size_t ell, std::size_t rp, std::size_t m) {
    const std::size_t r = ell + rp;
    const Matrix q = random_orthonormal(rng, n, r);  // first ell columns span L
    std::vector<Vector> coeff;                        // rows in R^r

    if (ell > 0) {
        // Positive spanning set of L: unit directions plus a negative positive mix.
        Vector neg(r, 0.0);
        for (std::size_t i = 0; i < ell; ++i) {
            Vector e(r, 0.0);
            e[i] = uniform(rng, 0.5, 2.0);
            coeff.push_back(e);
            neg[i] = -uniform(rng, 0.5, 2.0);
        }
        coeff.push_back(neg);
    }
    Vector axis(rp, 0.0);
    if (rp > 0) {
        axis = gaussian(rng, rp);
        axis = conescore::scaled(axis, 1.0 / conescore::norm2(axis));
        for (std::size_t i = 0; i < rp; ++i) {
            Vector p = inside_axis(rng, axis, 0.35);
            Vector row(r, 0.0);
            for (std::size_t j = 0; j < rp; ++j) row[ell + j] = p[j] * uniform(rng, 0.5, 2.0);
            if (ell > 0)
                for (std::size_t j = 0; j < ell; ++j) row[j] = uniform(rng, -1.0, 1.0);
            coeff.push_back(row);
        }
    }
    while (coeff.size() < m) {
        Vector row(r, 0.0);
        const bool lineal = rp == 0 || (ell > 0 && pick(rng, 0, 2) == 0);
        if (!lineal) {
            Vector p = inside_axis(rng, axis, 0.35);
            for (std::size_t j = 0; j < rp; ++j) row[ell + j] = p[j] * uniform(rng, 0.5, 2.0);
        }
        for (std::size_t j = 0; j < ell; ++j) row[j] = uniform(rng, -1.0, 1.0);
        if (conescore::norm_inf(row) < 0.1) continue;
        coeff.push_back(row);
    }
    std::shuffle(coeff.begin(), coeff.end(), rng);

    Matrix w(coeff.size(), n);
    for (std::size_t i = 0; i < coeff.size(); ++i) {
        const Vector x = q * coeff[i];
        for (std::size_t j = 0; j < n; ++j) w(i, j) = x[j];
    }
    return {w, ell, r};
}

/// Mixed ensemble member: n <= max_n, m <= max_m, pointed about half the time.
inline ConeInstance random_mixed_cone(Rng& rng, std::size_t max_n, std::size_t max_m) {
    const std::size_t n = pick(rng, 1, max_n);
    const std::size_t r = pick(rng, 1, n);
    const bool pointed = pick(rng, 0, 1) == 0;
    const std::size_t ell = pointed ? 0 : pick(rng, 1, std::min<std::size_t>(r, 4));
    const std::size_t rp = r - ell;
    const std::size_t needed = (ell > 0 ? ell + 1 : 0) + rp;
    const std::size_t m = pick(rng, needed, std::max(needed, max_m));
    return random_cone(rng, n, ell, rp, m);
}

/// Samples of a random affine subspace of dimension r in R^d. Some spaces
/// get constant or duplicated metrics to exercise degenerate rows of Z.
inline std::vector<Vector> random_space_samples(Rng& rng, std::size_t d, std::size_t r, std::size_t count) {
    Matrix basis = random_orthonormal(rng, d, r);
    const std::size_t style = pick(rng, 0, 3);
    if (style == 0 && d > r) {
        // metric 0 constant: zero the first row of the direction space
        std::vector<Vector> cols = basis.col_list();
        for (auto& c : cols) c[0] = 0.0;
        basis = conescore::orthonormal_basis(cols, d, Tolerances{});
    } else if (style == 1 && d >= 2) {
        // metric 1 duplicates metric 0
        std::vector<Vector> cols = basis.col_list();
        for (auto& c : cols) c[1] = c[0];
        basis = conescore::orthonormal_basis(cols, d, Tolerances{});
    }
    const Vector anchor = gaussian(rng, d);
    std::vector<Vector> out;
    for (std::size_t i = 0; i < count; ++i) {
        const Vector c = gaussian(rng, basis.cols());
        out.push_back(conescore::add(anchor, basis * c));
    }
    return out;
}

}  // namespace testsupport
