#pragma once

#include <algorithm>
#include <cmath>

#include "bohm/errors.hpp"

namespace bohm::detail {

// Joint state of the guidance ODE and its variational equation:
// dx/dt = v(x,t), dj/dt = v_x(x,t) * j.
struct PathState {
    double x;
    double j;
};

struct StepControl {
    bool adaptive = true;
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    double dt_max = 0.01;
};

// Dormand-Prince 5(4) embedded pair. Integrates from t0 to t1 in either
// direction; on_accept(t, y) fires after every accepted step. Error control:
// a step is accepted when max_i |e_i| / (abs_tol + rel_tol*|y_i|) <= 1,
// rejection halves the step, growth is capped at 5x and dt_max.
template <typename Rhs, typename Accept>
PathState dopri5(Rhs&& rhs, PathState y, double t0, double t1, const StepControl& ctl,
                 Accept&& on_accept) {
    if (t1 == t0)
        return y;
    const double dir = t1 > t0 ? 1.0 : -1.0;
    double t = t0;
    double h = dir * std::min(ctl.dt_max, std::abs(t1 - t0));

    auto add = [](PathState a, double c, PathState b) {
        return PathState{a.x + c * b.x, a.j + c * b.j};
    };

    while (dir * (t1 - t) > 0.0) {
        bool last = false;
        if (dir * (t + h - t1) >= 0.0) {
            h = t1 - t;
            last = true;
        }

        const PathState k1 = rhs(t, y);
        const PathState k2 = rhs(t + h / 5.0, add(y, h / 5.0, k1));
        const PathState k3 =
            rhs(t + 3.0 * h / 10.0, add(add(y, 3.0 * h / 40.0, k1), 9.0 * h / 40.0, k2));
        const PathState k4 =
            rhs(t + 4.0 * h / 5.0,
                add(add(add(y, 44.0 * h / 45.0, k1), -56.0 * h / 15.0, k2), 32.0 * h / 9.0, k3));
        const PathState k5 =
            rhs(t + 8.0 * h / 9.0,
                add(add(add(add(y, 19372.0 * h / 6561.0, k1), -25360.0 * h / 2187.0, k2),
                        64448.0 * h / 6561.0, k3),
                    -212.0 * h / 729.0, k4));
        const PathState k6 =
            rhs(t + h, add(add(add(add(add(y, 9017.0 * h / 3168.0, k1), -355.0 * h / 33.0, k2),
                                   46732.0 * h / 5247.0, k3),
                               49.0 * h / 176.0, k4),
                           -5103.0 * h / 18656.0, k5));
        const PathState y5 = add(
            add(add(add(add(y, 35.0 * h / 384.0, k1), 500.0 * h / 1113.0, k3), 125.0 * h / 192.0,
                    k4),
                -2187.0 * h / 6784.0, k5),
            11.0 * h / 84.0, k6);
        const PathState k7 = rhs(t + h, y5);

        // difference of the 5th- and embedded 4th-order weights
        const auto err_component = [&](double e1, double e3, double e4, double e5, double e6,
                                       double e7) {
            return h * (71.0 / 57600.0 * e1 - 71.0 / 16695.0 * e3 + 71.0 / 1920.0 * e4 -
                        17253.0 / 339200.0 * e5 + 22.0 / 525.0 * e6 - 1.0 / 40.0 * e7);
        };
        const double ex = err_component(k1.x, k3.x, k4.x, k5.x, k6.x, k7.x);
        const double ej = err_component(k1.j, k3.j, k4.j, k5.j, k6.j, k7.j);

        const double scale_x = ctl.abs_tol + ctl.rel_tol * std::max(std::abs(y.x), std::abs(y5.x));
        const double scale_j = ctl.abs_tol + ctl.rel_tol * std::max(std::abs(y.j), std::abs(y5.j));
        const double err = std::max(std::abs(ex) / scale_x, std::abs(ej) / scale_j);

        if (err <= 1.0) {
            t = last ? t1 : t + h;
            y = y5;
            on_accept(t, y);
            const double grow = err > 0.0 ? std::min(5.0, 0.9 * std::pow(err, -0.2)) : 5.0;
            h = dir * std::min(std::abs(h) * grow, ctl.dt_max);
        } else {
            h *= 0.5;
            last = false;
        }
        if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(t)))
            throw SolverError("adaptive step size underflow");
    }
    return y;
}

// Classic fixed-step fourth-order Runge-Kutta with step magnitude dt_max
// (last step shortened to land on t1).
template <typename Rhs, typename Accept>
PathState rk4(Rhs&& rhs, PathState y, double t0, double t1, const StepControl& ctl,
              Accept&& on_accept) {
    if (t1 == t0)
        return y;
    const long n = std::max(1L, static_cast<long>(std::ceil(std::abs(t1 - t0) / ctl.dt_max)));
    const double h = (t1 - t0) / static_cast<double>(n);

    auto add = [](PathState a, double c, PathState b) {
        return PathState{a.x + c * b.x, a.j + c * b.j};
    };

    double t = t0;
    for (long i = 0; i < n; ++i) {
        const PathState k1 = rhs(t, y);
        const PathState k2 = rhs(t + 0.5 * h, add(y, 0.5 * h, k1));
        const PathState k3 = rhs(t + 0.5 * h, add(y, 0.5 * h, k2));
        const PathState k4 = rhs(t + h, add(y, h, k3));
        y = PathState{y.x + h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
                      y.j + h / 6.0 * (k1.j + 2.0 * k2.j + 2.0 * k3.j + k4.j)};
        t = i + 1 == n ? t1 : t + h;
        on_accept(t, y);
    }
    return y;
}

}  // namespace bohm::detail
