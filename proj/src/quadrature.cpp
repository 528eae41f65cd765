#include "bohm/quadrature.hpp"

#include <numbers>

namespace bohm::detail {

GaussLegendre15::GaussLegendre15() {
    constexpr int n = 15;
    // Roots of P_15 by Newton from the Chebyshev-like initial guess; the
    // recurrence gives P_n and P_n' simultaneously.
    for (int k = 0; k < (n + 1) / 2; ++k) {
        double x = std::cos(std::numbers::pi * (k + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        node[k] = -x;
        node[n - 1 - k] = x;
        weight[k] = w;
        weight[n - 1 - k] = w;
    }
}

const GaussLegendre15& gl15() {
    static const GaussLegendre15 rule;
    return rule;
}

}  // namespace bohm::detail
