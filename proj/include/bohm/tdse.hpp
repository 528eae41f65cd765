#pragma once

#include <memory>
#include <vector>

#include "bohm/states.hpp"

namespace bohm {

enum class Potential { harmonic, free_particle };

inline double potential_value(Potential p, double x) {
    return p == Potential::harmonic ? 0.5 * x * x : 0.0;
}

// Wavefunction sampled on a uniform periodic grid. psi[j] lives at
// x_min + j*dx with dx = (x_max - x_min)/n; x_max is identified with x_min.
struct GridState {
    double x_min = -12.0;
    double x_max = 12.0;
    std::vector<Complex> psi;
    double time = 0.0;
    Potential potential = Potential::harmonic;

    int n() const { return static_cast<int>(psi.size()); }
    double length() const { return x_max - x_min; }
    double dx() const { return length() / n(); }
    double x_at(int j) const { return x_min + j * dx(); }
    double norm() const;
};

// Samples an analytic model at t = 0 onto n grid points and renormalizes.
// Throws if n is not a power of two or if the packet touches the boundary.
GridState init_from_model(const WaveModel& model, Interval domain, int n);

// Strang-split spectral propagation to t_target in steps of at most dt.
GridState propagate(const GridState& state, double t_target, double dt);

// Bohmian velocity Im(psi'/psi) from the trigonometric interpolant of the
// grid state. Throws NodeProximityError when |psi|^2 < node_guard.
double grid_velocity(const GridState& state, double x, double node_guard = 1e-10);

double energy_expectation(const GridState& state);

// Precomputed evolution over [initial.time, t_max]: spectral snapshots every
// snapshot_interval plus their time derivatives, interpolated with a cubic
// Hermite blend in t and trigonometric modes in x.
class GridEvolution {
public:
    GridEvolution(GridState initial, double t_max, double dt = 5e-4,
                  double snapshot_interval = 0.01);

    double x_min() const { return initial_.x_min; }
    double x_max() const { return initial_.x_max; }
    double t_min() const { return snaps_.front().time; }
    double t_max() const { return snaps_.back().time; }
    const GridState& initial() const { return initial_; }

    struct Derivatives {
        Complex psi;
        Complex dpsi;
        Complex d2psi;
    };

    Complex psi(double x, double t) const;
    Derivatives derivatives(double x, double t) const;

private:
    struct Snapshot {
        double time;
        std::vector<Complex> c;     // DFT(psi)/n
        std::vector<Complex> cdot;  // DFT(-iH psi)/n
    };

    const Snapshot& lower_snapshot(double t) const;
    void check_point(double x, double t) const;

    GridState initial_;
    std::vector<Snapshot> snaps_;
};

// Convenience wrapper: grid-evolve an analytic model and wrap the result.
Numeric make_numeric_model(const WaveModel& analytic, Interval domain, int n, double t_max,
                           double dt = 5e-4, double snapshot_interval = 0.01);

}  // namespace bohm
