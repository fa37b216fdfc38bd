#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace flatsteiner {

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
};

// Downhill simplex minimization (reflection 1, expansion 2, contraction 1/2,
// shrink 1/2). Derivative-free: the objectives here are piecewise-smooth
// (topology switches) and occasionally +infinity on invalid configurations.
// Deterministic given (fn, x0, step).
template <typename Fn>
NelderMeadResult minimize_nelder_mead(Fn&& fn, const std::vector<double>& x0, double step,
                                      int max_iterations, double shrink_tol) {
    const size_t dim = x0.size();
    std::vector<std::vector<double>> simplex(dim + 1, x0);
    std::vector<double> values(dim + 1);
    for (size_t i = 0; i < dim; ++i) simplex[i + 1][i] += step;
    for (size_t i = 0; i <= dim; ++i) values[i] = fn(simplex[i]);

    std::vector<size_t> order(dim + 1);
    NelderMeadResult result;
    int iter = 0;
    for (; iter < max_iterations; ++iter) {
        for (size_t i = 0; i <= dim; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](size_t a, size_t b) { return values[a] < values[b]; });
        const size_t best = order[0], worst = order[dim], second_worst = order[dim - 1];

        if (std::isfinite(values[best]) &&
            values[worst] - values[best] < shrink_tol)
            break;

        std::vector<double> centroid(dim, 0.0);
        for (size_t i = 0; i <= dim; ++i) {
            if (i == worst) continue;
            for (size_t d = 0; d < dim; ++d) centroid[d] += simplex[i][d];
        }
        for (double& c : centroid) c /= double(dim);

        auto blend = [&](double t) {
            std::vector<double> p(dim);
            for (size_t d = 0; d < dim; ++d)
                p[d] = centroid[d] + t * (simplex[worst][d] - centroid[d]);
            return p;
        };

        const auto reflected = blend(-1.0);
        const double fr = fn(reflected);
        if (fr < values[order[0]]) {
            const auto expanded = blend(-2.0);
            const double fe = fn(expanded);
            if (fe < fr) {
                simplex[worst] = expanded;
                values[worst] = fe;
            } else {
                simplex[worst] = reflected;
                values[worst] = fr;
            }
        } else if (fr < values[second_worst]) {
            simplex[worst] = reflected;
            values[worst] = fr;
        } else {
            const bool outside = fr < values[worst];
            const auto contracted = blend(outside ? -0.5 : 0.5);
            const double fc = fn(contracted);
            if (fc < std::min(fr, values[worst])) {
                simplex[worst] = contracted;
                values[worst] = fc;
            } else {
                for (size_t i = 0; i <= dim; ++i) {
                    if (i == best) continue;
                    for (size_t d = 0; d < dim; ++d)
                        simplex[i][d] = 0.5 * (simplex[i][d] + simplex[best][d]);
                    values[i] = fn(simplex[i]);
                }
            }
        }
    }

    size_t best = 0;
    for (size_t i = 1; i <= dim; ++i)
        if (values[i] < values[best]) best = i;
    result.x = simplex[best];
    result.value = values[best];
    result.iterations = iter;
    return result;
}

}  // namespace flatsteiner
