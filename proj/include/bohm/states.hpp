#pragma once

#include <complex>
#include <memory>
#include <variant>

#include "bohm/quadrature.hpp"

namespace bohm {

using Complex = std::complex<double>;

class GridEvolution;  // tdse.hpp

// Wavefunction families, units hbar = m = omega = 1.
//
// Coherent      displaced harmonic-oscillator Gaussian, displacement d;
//               translates rigidly along d*cos(t).
// FreeGaussian  free packet of unit initial width whose peak moves with
//               unit velocity.
// Superposition equal-weight-normalized mix of the oscillator ground and
//               first excited states, sqrt(2/3)*(phi0 e^{-it/2} + x phi0 e^{-3it/2}).
// Numeric       grid wavefunction evolved by the split-operator propagator.
struct Coherent {
    double d = 1.0;
};
struct FreeGaussian {};
struct Superposition {};
struct Numeric {
    std::shared_ptr<const GridEvolution> evolution;
};

using WaveModel = std::variant<Coherent, FreeGaussian, Superposition, Numeric>;

// psi = R exp(iS), R = |psi| >= 0, S the principal-value argument.
struct PolarDecomposition {
    double amplitude;
    double phase;
};

// Amplitudes below this are treated as nodes: the phase is undefined there.
inline constexpr double kNodeEpsilon = 1e-12;

struct Interval {
    double lo;
    double hi;
};

Complex evaluate_psi(const WaveModel& model, double x, double t);
PolarDecomposition polar(const WaveModel& model, double x, double t);
double density(const WaveModel& model, double x, double t);

// Integral of the density over [domain.lo, domain.hi]. The domain must be
// wide enough that the excluded tail mass is below the quadrature tolerance;
// [-12, 12] covers every model here at t = 0.
double total_probability(const WaveModel& model, double t, Interval domain,
                         const QuadratureOptions& quadrature = {});

// Interval outside which the density is negligible (< ~1e-40) at time t.
Interval support_interval(const WaveModel& model, double t);

}  // namespace bohm
