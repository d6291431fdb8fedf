// Designs scores for four metrics that move on the plane f1 - f2 + f3 - f4 = c
// and prints how many scores each restriction needs.

#include <cstdio>
#include <random>

#include <conescore/conescore.hpp>

int main() {
    using namespace conescore;
    const Tolerances tol;

    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    std::vector<Vector> samples;
    for (int i = 0; i < 30; ++i) {
        const double a = g(rng), b = g(rng), c = g(rng);
        samples.push_back({a, b, c, a - b + c + 1.0});
    }
    const auto space = MetricSpace::from_samples(samples, tol);
    std::printf("affine hull dimension: %zu\n", space.hull.dim());

    const auto z = GeneratorSet::from_matrix(space.hull.basis, tol);
    std::printf("ranks of Z: csr=%zu cgr=%zu cr=%zu\n", cone_subset_rank(z, tol).value,
                cone_generating_rank(z, tol).value, cone_rank(z, tol).value);

    for (auto r : {Restriction::coordinate_selection, Restriction::linear_monotone, Restriction::linear}) {
        for (auto o : {Objective::improvement, Objective::optimality, Objective::both}) {
            const auto d = design(space, o, r, tol);
            bool ok = true;
            if (o != Objective::optimality) ok = ok && check_improvement(d, samples, tol).passed;
            if (o != Objective::improvement) ok = ok && check_optimality(d, samples, tol).passed;
            ok = ok && check_restriction(d, space.hull, tol).passed;
            std::printf("%-6s %-12s k=%zu  %s\n", std::string(to_string(r)).c_str(), std::string(to_string(o)).c_str(), d.k,
                        ok ? "verified" : "FAILED");
        }
    }
}
