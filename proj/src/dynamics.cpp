#include "bohm/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bohm/errors.hpp"
#include "bohm/rootfind.hpp"
#include "bohm/tdse.hpp"
#include "ode.hpp"

namespace bohm {

namespace {

// Node factor of the superposition density, rho ~ exp(-x^2) * u(x,t).
// u vanishes exactly at the nodes (x,t) = (-1, 2k*pi), (1, (2k+1)*pi).
double superposition_node_factor(double x, double t) {
    return 1.0 + 2.0 * x * std::cos(t) + x * x;
}

struct VelocityPair {
    double v;
    double dv_dx;
};

// Closed-form velocity and x-gradient per model. The guard fires on the
// quantity that actually degenerates: the superposition node factor, or the
// grid density for Numeric models. The two Gaussian packets are node-free,
// so their tails stay integrable no matter how small the density gets.
VelocityPair velocity_pair(const WaveModel& model, double x, double t, double node_guard) {
    return std::visit(
        [&](const auto& m) -> VelocityPair {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, Coherent>) {
                return {-m.d * std::sin(t), 0.0};
            } else if constexpr (std::is_same_v<M, FreeGaussian>) {
                const double w = 1.0 + t * t;
                return {(t * x + 1.0) / w, t / w};
            } else if constexpr (std::is_same_v<M, Superposition>) {
                const double u = superposition_node_factor(x, t);
                if (u < node_guard)
                    throw NodeProximityError("velocity: superposition node factor below guard");
                const double s = std::sin(t);
                return {-s / u, 2.0 * s * (std::cos(t) + x) / (u * u)};
            } else {
                if (!m.evolution)
                    throw std::invalid_argument("numeric model: missing grid evolution");
                const auto d = m.evolution->derivatives(x, t);
                if (std::norm(d.psi) < node_guard)
                    throw NodeProximityError("velocity: grid density below guard");
                const Complex ratio = d.dpsi / d.psi;
                return {std::imag(ratio), std::imag(d.d2psi / d.psi - ratio * ratio)};
            }
        },
        model);
}

detail::StepControl step_control(const SolverOptions& opts) {
    if (!(opts.abs_tol > 0.0) || !(opts.rel_tol > 0.0) || !(opts.dt_max > 0.0))
        throw std::invalid_argument("solver options: tolerances and dt_max must be positive");
    return {opts.method == OdeMethod::adaptive, opts.abs_tol, opts.rel_tol, opts.dt_max};
}

template <typename Accept>
detail::PathState run_flow(const WaveModel& model, detail::PathState y, double t0, double t1,
                           const SolverOptions& opts, Accept&& on_accept) {
    const auto ctl = step_control(opts);
    auto rhs = [&](double t, detail::PathState s) -> detail::PathState {
        const auto vp = velocity_pair(model, s.x, t, opts.node_guard);
        return {vp.v, vp.dv_dx * s.j};
    };
    return ctl.adaptive ? detail::dopri5(rhs, y, t0, t1, ctl, on_accept)
                        : detail::rk4(rhs, y, t0, t1, ctl, on_accept);
}

}  // namespace

double velocity(const WaveModel& model, double x, double t, double node_guard) {
    if (!std::isfinite(x) || !std::isfinite(t))
        throw std::invalid_argument("velocity: x and t must be finite");
    return velocity_pair(model, x, t, node_guard).v;
}

double velocity_gradient(const WaveModel& model, double x, double t, double node_guard) {
    if (!std::isfinite(x) || !std::isfinite(t))
        throw std::invalid_argument("velocity_gradient: x and t must be finite");
    return velocity_pair(model, x, t, node_guard).dv_dx;
}

Trajectory integrate_forward(const WaveModel& model, double x0, double t0, double t1,
                             const SolverOptions& opts) {
    if (t1 < t0)
        throw std::invalid_argument("integrate_forward: t1 must not precede t0");
    Trajectory traj;
    traj.x0 = x0;
    traj.t0 = t0;
    traj.t1 = t1;
    traj.samples.push_back({t0, x0, 1.0});
    run_flow(model, {x0, 1.0}, t0, t1, opts, [&](double t, detail::PathState y) {
        traj.samples.push_back({t, y.x, y.j});
    });
    return traj;
}

Preimage inverse_map(const WaveModel& model, double x, double t, const SolverOptions& opts) {
    if (t < 0.0)
        throw std::invalid_argument("inverse_map: t must be nonnegative");
    const auto y = run_flow(model, {x, 1.0}, t, 0.0, opts, [](double, detail::PathState) {});
    return {y.x, std::abs(y.j)};
}

double flow_endpoint(const WaveModel& model, double x0, double t0, double t1,
                     const SolverOptions& opts) {
    if (t1 < t0)
        throw std::invalid_argument("flow_endpoint: t1 must not precede t0");
    return run_flow(model, {x0, 1.0}, t0, t1, opts, [](double, detail::PathState) {}).x;
}

double implicit_constant(double x, double t) {
    if (!std::isfinite(x) || !std::isfinite(t))
        throw std::invalid_argument("implicit_constant: x and t must be finite");
    const double g = std::exp(-x * x);
    return 0.75 * std::sqrt(std::numbers::pi) * std::erf(x) - g * std::cos(t) - 0.5 * x * g;
}

double solve_implicit(double x0, double t, double bracket_halfwidth, double tol) {
    if (!(tol > 0.0) || !(bracket_halfwidth > 0.0))
        throw std::invalid_argument("solve_implicit: tol and bracket_halfwidth must be positive");
    const double target = implicit_constant(x0, 0.0);
    auto g = [&](double x) { return implicit_constant(x, t) - target; };
    const auto [lo, hi] = expand_bracket(g, x0, bracket_halfwidth);
    return bisect(g, lo, hi, tol);
}

}  // namespace bohm
