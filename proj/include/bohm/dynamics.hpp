#pragma once

#include <vector>

#include "bohm/states.hpp"

namespace bohm {

enum class OdeMethod { adaptive, rk4 };

struct SolverOptions {
    OdeMethod method = OdeMethod::adaptive;
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    double dt_max = 0.01;
    double node_guard = 1e-10;
};

struct TrajectorySample {
    double t;
    double x;
    double jacobian;  // dx(x0,t)/dx0 along the path
};

// One guided path x(x0, t) with the co-integrated flow-map derivative.
// samples are strictly ordered in t and start at (t0, x0, 1).
struct Trajectory {
    double x0 = 0.0;
    double t0 = 0.0;
    double t1 = 0.0;
    std::vector<TrajectorySample> samples;

    double x() const { return samples.back().x; }
    double jacobian() const { return samples.back().jacobian; }
};

// Pullback of a point at time t to its initial position, with the
// transport factor |dx0/dx|.
struct Preimage {
    double x0;
    double jacobian;
};

// Velocity field v = Im(psi'/psi) (= dS/dx away from nodes). Analytic
// models use closed forms; Numeric differentiates the grid interpolant.
// Throws NodeProximityError when evaluated too close to a node.
double velocity(const WaveModel& model, double x, double t, double node_guard = 1e-10);

// dv/dx, the coefficient of the variational equation dJ/dt = (dv/dx) J.
double velocity_gradient(const WaveModel& model, double x, double t, double node_guard = 1e-10);

// Integrates dx/dt = v and dJ/dt = (dv/dx) J jointly from (x0, t0) to t1,
// J(t0) = 1, recording every accepted step. Requires t1 >= t0.
Trajectory integrate_forward(const WaveModel& model, double x0, double t0, double t1,
                             const SolverOptions& opts = {});

// Backward integration from (x, t) to time 0; the returned jacobian is the
// variational factor |dx0(x,t)/dx| of the density transport.
Preimage inverse_map(const WaveModel& model, double x, double t,
                     const SolverOptions& opts = {});

// Endpoint of the forward flow without sample recording; the lean variant
// of integrate_forward for bulk particle transport.
double flow_endpoint(const WaveModel& model, double x0, double t0, double t1,
                     const SolverOptions& opts = {});

// Conserved quantity of the superposition flow:
// C(x,t) = (3/4) sqrt(pi) erf(x) - exp(-x^2) cos(t) - (x/2) exp(-x^2).
// dC/dt vanishes along solutions of the superposition guidance equation.
double implicit_constant(double x, double t);

// Solves C(x, t) = C(x0, 0) for x by bracketed bisection; C is monotone
// nondecreasing in x, so the root is unique.
double solve_implicit(double x0, double t, double bracket_halfwidth = 2.0, double tol = 1e-12);

}  // namespace bohm
