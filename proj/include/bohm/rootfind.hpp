#pragma once

#include <cmath>
#include <utility>

#include "bohm/errors.hpp"

namespace bohm {

// Bisection for g(x) = 0 on a bracket with g(lo) <= 0 <= g(hi), refined
// until the bracket width drops below tol. Exact zeros are returned as-is.
template <typename G>
double bisect(G&& g, double lo, double hi, double tol) {
    double glo = g(lo);
    double ghi = g(hi);
    if (glo == 0.0)
        return lo;
    if (ghi == 0.0)
        return hi;
    if (glo > 0.0 || ghi < 0.0)
        throw BracketError("bisect: bracket does not enclose a sign change");
    for (int iter = 0; iter < 200 && hi - lo > tol; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double gmid = g(mid);
        if (gmid == 0.0)
            return mid;
        if (gmid < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Expands [center - w, center + w] by doubling w until g changes sign
// across it, assuming g is monotone nondecreasing.
template <typename G>
std::pair<double, double> expand_bracket(G&& g, double center, double halfwidth,
                                         int max_doublings = 8) {
    double w = halfwidth;
    for (int i = 0; i <= max_doublings; ++i, w *= 2.0) {
        if (g(center - w) <= 0.0 && g(center + w) >= 0.0)
            return {center - w, center + w};
    }
    throw BracketError("expand_bracket: no sign change after max expansions");
}

}  // namespace bohm
