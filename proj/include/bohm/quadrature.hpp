#pragma once

#include <array>
#include <cmath>
#include <functional>

#include "bohm/errors.hpp"

namespace bohm {

struct QuadratureOptions {
    double abs_tol = 1e-12;
    int max_depth = 40;
};

namespace detail {

// Nodes and weights of the 15-point Gauss-Legendre rule on [-1, 1],
// computed once by Newton iteration on P_15.
struct GaussLegendre15 {
    std::array<double, 15> node{};
    std::array<double, 15> weight{};
    GaussLegendre15();
};

const GaussLegendre15& gl15();

}  // namespace detail

// 15-point Gauss-Legendre estimate on a single panel [a, b].
template <typename F>
double gauss_legendre_panel(F&& f, double a, double b) {
    const auto& rule = detail::gl15();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < 15; ++i)
        sum += rule.weight[i] * f(mid + half * rule.node[i]);
    return half * sum;
}

namespace detail {

template <typename F>
double adapt_panel(F& f, double a, double b, double whole, double tol, int depth) {
    const double mid = 0.5 * (a + b);
    const double left = gauss_legendre_panel(f, a, mid);
    const double right = gauss_legendre_panel(f, mid, b);
    const double diff = left + right - whole;
    if (std::abs(diff) <= tol)
        return left + right;
    if (depth <= 0)
        throw QuadratureError("adaptive quadrature: panel refinement did not converge");
    return adapt_panel(f, a, mid, left, 0.5 * tol, depth - 1) +
           adapt_panel(f, mid, b, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Composite Gauss-Legendre with adaptive panel bisection to absolute
// tolerance opts.abs_tol.
template <typename F>
double integrate_adaptive(F&& f, double a, double b, const QuadratureOptions& opts = {}) {
    if (a == b)
        return 0.0;
    const double whole = gauss_legendre_panel(f, a, b);
    return detail::adapt_panel(f, a, b, whole, opts.abs_tol, opts.max_depth);
}

}  // namespace bohm
