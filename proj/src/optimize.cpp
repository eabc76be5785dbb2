#include "qbridge/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qbridge {

MinimizeResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                           std::vector<double> x0, int max_evals, double tol,
                           double initial_step) {
    const std::size_t n = x0.size();
    if (n == 0) throw std::invalid_argument("nelder_mead: empty parameter vector");
    if (max_evals < 1) throw std::invalid_argument("nelder_mead: max_evals must be >= 1");

    // Gao-Han adaptive coefficients
    const double nd = static_cast<double>(n);
    const double alpha = 1.0;
    const double beta = 1.0 + 2.0 / nd;
    const double gamma = 0.75 - 1.0 / (2.0 * nd);
    const double delta = 1.0 - 1.0 / nd;

    MinimizeResult result;
    int evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        double v = objective(x);
        ++evals;
        result.eval_trace.push_back(v);
        if (result.best_x.empty() || v < result.best_value) {
            result.best_x = x;
            result.best_value = v;
        }
        return v;
    };

    std::vector<std::vector<double>> pts;
    std::vector<double> vals;
    pts.push_back(x0);
    vals.push_back(eval(x0));
    for (std::size_t i = 0; i < n && evals < max_evals; ++i) {
        std::vector<double> p = x0;
        p[i] += initial_step;
        pts.push_back(p);
        vals.push_back(eval(p));
    }
    if (pts.size() < n + 1) return result;  // budget exhausted during setup

    std::vector<std::size_t> order(n + 1);
    while (evals < max_evals) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        {
            std::vector<std::vector<double>> p2(n + 1);
            std::vector<double> v2(n + 1);
            for (std::size_t i = 0; i <= n; ++i) {
                p2[i] = pts[order[i]];
                v2[i] = vals[order[i]];
            }
            pts.swap(p2);
            vals.swap(v2);
        }
        if (vals[n] - vals[0] < tol) break;

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) centroid[j] += pts[i][j];
        }
        for (double& c : centroid) c /= nd;

        auto blend = [&](double t) {
            // centroid + t * (centroid - worst)
            std::vector<double> x(n);
            for (std::size_t j = 0; j < n; ++j) {
                x[j] = centroid[j] + t * (centroid[j] - pts[n][j]);
            }
            return x;
        };

        std::vector<double> xr = blend(alpha);
        double fr = eval(xr);
        if (evals >= max_evals) break;

        if (fr < vals[0]) {
            std::vector<double> xe = blend(alpha * beta);
            double fe = eval(xe);
            if (fe < fr) {
                pts[n] = std::move(xe);
                vals[n] = fe;
            } else {
                pts[n] = std::move(xr);
                vals[n] = fr;
            }
        } else if (fr < vals[n - 1]) {
            pts[n] = std::move(xr);
            vals[n] = fr;
        } else {
            std::vector<double> xc = fr < vals[n] ? blend(alpha * gamma) : blend(-gamma);
            double fc = eval(xc);
            if (fc < std::min(fr, vals[n])) {
                pts[n] = std::move(xc);
                vals[n] = fc;
            } else {
                // shrink toward the best vertex
                for (std::size_t i = 1; i <= n && evals < max_evals; ++i) {
                    for (std::size_t j = 0; j < n; ++j) {
                        pts[i][j] = pts[0][j] + delta * (pts[i][j] - pts[0][j]);
                    }
                    vals[i] = eval(pts[i]);
                }
            }
        }
    }
    return result;
}

}  // namespace qbridge
