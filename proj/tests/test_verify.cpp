#include <gtest/gtest.h>

#include "support.hpp"

using namespace conescore;
using testsupport::Rng;

namespace {

ScoreDesign with_A(Matrix a, Restriction r = Restriction::linear) {
    ScoreDesign d;
    d.k = a.rows();
    d.A = std::move(a);
    d.restriction = r;
    return d;
}

std::vector<Vector> grid(double step, int d) {
    std::vector<Vector> pts{{}};
    const int n = int(std::lround(2 / step));
    for (int c = 0; c < d; ++c) {
        std::vector<Vector> next;
        for (const auto& p : pts)
            for (int i = 0; i <= n; ++i) {
                Vector q = p;
                q.push_back(-1 + i * step);
                next.push_back(q);
            }
        pts = std::move(next);
    }
    return pts;
}

const Matrix square_cone{{0.5, 0.5, 0.5}, {0.5, -0.5, 0.5}, {0.5, -0.5, -0.5}, {0.5, 0.5, -0.5}};
const Matrix known_triangle{{0.5, 0, 1}, {0.5, 1.5, -0.5}, {0.5, -1.5, -0.5}};

}  // namespace

TEST(CheckImprovement, EmptyRelativeInteriorExample) {
    const auto rep = check_improvement(with_A(Matrix{{1, 0}}), {{0, 0}, {1, 1}, {2, 3}}, {});
    EXPECT_TRUE(rep.passed);
    EXPECT_EQ(rep.checked_pairs, 6u);
}

TEST(CheckImprovement, GridFailsForSingleCoordinate) {
    const auto rep = check_improvement(with_A(Matrix{{1, 0}}), grid(1.0, 2), {});
    EXPECT_FALSE(rep.passed);
    // (0,0) -> (0,-1) keeps the score but lowers f₂.
    const auto pts = grid(1.0, 2);
    bool found = false;
    for (const auto& v : rep.violations)
        if (pts[v.first] == Vector{0, 0} && pts[v.second] == Vector{0, -1}) found = true;
    EXPECT_TRUE(found);
}

TEST(CheckImprovement, IdentityAlwaysPasses) {
    Rng rng(61);
    for (int t = 0; t < 20; ++t) {
        const std::size_t d = testsupport::pick(rng, 1, 5);
        std::vector<Vector> pts;
        for (int i = 0; i < 15; ++i) pts.push_back(testsupport::gaussian(rng, d));
        EXPECT_TRUE(check_improvement(with_A(Matrix::identity(d)), pts, {}).passed);
    }
}

TEST(CheckImprovement, DimensionMismatchThrows) {
    EXPECT_THROW(check_improvement(with_A(Matrix{{1, 0, 0}}), {{1, 2}}, {}), Error);
}

TEST(CheckOptimality, LinfBallNeedsAllCoordinates) {
    const auto pts = grid(0.5, 2);
    EXPECT_FALSE(check_optimality(with_A(Matrix{{1, 0}}), pts, {}).passed);
    EXPECT_TRUE(check_optimality(with_A(Matrix::identity(2)), pts, {}).passed);
}

TEST(CheckOptimality, L1BallNeedsOneCoordinate) {
    Rng rng(62);
    std::vector<Vector> pts{{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    for (int i = 0; i < 40; ++i) {
        const double t = testsupport::uniform(rng, 0, 1);
        const double sx = testsupport::pick(rng, 0, 1) ? 1 : -1, sy = testsupport::pick(rng, 0, 1) ? 1 : -1;
        pts.push_back({sx * t, sy * (1 - t)});
    }
    EXPECT_TRUE(check_optimality(with_A(Matrix{{1, 0}}), pts, {}).passed);
    EXPECT_TRUE(check_optimality(with_A(Matrix{{0, 1}}), pts, {}).passed);
}

TEST(CheckRestriction, CoordinateSelection) {
    const auto hull = compute_affine_hull({{-1, 0}, {1, -1}, {0, 2}}, {});
    EXPECT_TRUE(check_restriction(with_A(Matrix::identity(2), Restriction::coordinate_selection), hull, {}).passed);
    EXPECT_FALSE(check_restriction(with_A(Matrix{{1, 1}}, Restriction::coordinate_selection), hull, {}).passed);
    EXPECT_FALSE(check_restriction(with_A(Matrix{{0.5, 0}}, Restriction::coordinate_selection), hull, {}).passed);
}

TEST(CheckRestriction, MonotoneCertificate) {
    Rng rng(63);
    std::vector<Vector> pts;
    for (int i = 0; i < 20; ++i) {
        const Vector f = testsupport::gaussian(rng, 3);
        pts.push_back({f[0], f[1], f[2], f[0] - f[1] + f[2]});
    }
    const auto s = MetricSpace::from_samples(pts, {});
    const auto d = design_improvement(s, Restriction::linear_monotone, {});
    const auto rep = check_restriction(d, s.hull, {});
    EXPECT_TRUE(rep.passed);
    EXPECT_EQ(rep.strength, "certificate");

    const auto full = compute_affine_hull({{0, 0}, {1, 0}, {0, 1}}, {});
    EXPECT_FALSE(check_restriction(with_A(Matrix{{1, -1}}, Restriction::linear_monotone), full, {}).passed);
    EXPECT_TRUE(check_restriction(with_A(Matrix{{1, 2}}, Restriction::linear_monotone), full, {}).passed);
    EXPECT_TRUE(check_restriction(with_A(Matrix{{1, -1}}, Restriction::linear), full, {}).passed);
}

TEST(CheckRestriction, MonotoneOnCorrelatedLine) {
    // On the line f₂ = (f₁+1)/2 any score increasing along (2,1) is monotone,
    // even with a negative weight.
    const auto hull = compute_affine_hull({{-1, 0}, {1, 1}, {3, 2}}, {});
    EXPECT_TRUE(check_restriction(with_A(Matrix{{1, -1}}, Restriction::linear_monotone), hull, {}).passed);
    EXPECT_FALSE(check_restriction(with_A(Matrix{{-1, 1}}, Restriction::linear_monotone), hull, {}).passed);
}

TEST(ConeChecks, Examples) {
    const auto tol = Tolerances{};
    const auto w = GeneratorSet::from_matrix(Matrix{{2, 1}, {4, 2}}, tol);
    EXPECT_TRUE(check_cone_equal(w, GeneratorSet::from_matrix(Matrix{{1, 0.5}}, tol), tol));

    const auto sq = GeneratorSet::from_matrix(square_cone, tol);
    const auto tri = GeneratorSet::from_matrix(known_triangle, tol);
    EXPECT_FALSE(check_cone_equal(sq, tri, tol));
    EXPECT_TRUE(check_cone_subset(sq, tri, tol));
    EXPECT_FALSE(check_cone_subset(tri, sq, tol));
    EXPECT_TRUE(check_cone_subset(sq, sq, tol));
}

TEST(ConeChecks, EqualityIsAnEquivalenceOnWitnesses) {
    Rng rng(64);
    const Tolerances tol;
    for (int t = 0; t < 40; ++t) {
        const auto inst = testsupport::random_mixed_cone(rng, 4, 8);
        const auto w = GeneratorSet::from_matrix(inst.w, tol);
        const auto a = cone_subset_rank(w, tol).witness;
        const auto b = cone_generating_rank(w, tol).witness;
        EXPECT_TRUE(check_cone_equal(w, w, tol));
        EXPECT_TRUE(check_cone_equal(w, b, tol));
        EXPECT_EQ(check_cone_equal(a, b, tol), check_cone_equal(b, a, tol));
        if (check_cone_equal(w, a, tol) && check_cone_equal(a, b, tol)) {
            EXPECT_TRUE(check_cone_equal(w, b, tol));
        }
    }
}

TEST(ImprovementImpliesOptimality, MonotoneScores) {
    Rng rng(65);
    const Tolerances tol;
    int improvement_passes = 0;
    for (int t = 0; t < 150; ++t) {
        const std::size_t d = testsupport::pick(rng, 1, 4), k = testsupport::pick(rng, 1, 4);
        Matrix a(k, d);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < d; ++j) a(i, j) = testsupport::uniform(rng, 0, 1);
        std::vector<Vector> pts;
        Vector f = testsupport::gaussian(rng, d);
        for (int i = 0; i < 8; ++i) {
            pts.push_back(f);
            if (t % 2 == 0)
                for (double& v : f) v += testsupport::uniform(rng, 0, 1);  // a chain
            else
                f = testsupport::gaussian(rng, d);
        }
        const auto des = with_A(a, Restriction::linear_monotone);
        if (check_improvement(des, pts, tol).passed) {
            ++improvement_passes;
            EXPECT_TRUE(check_optimality(des, pts, tol).passed);
        }
    }
    EXPECT_GT(improvement_passes, 30);
}
