#include "bohm/states.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bohm/errors.hpp"
#include "bohm/tdse.hpp"

namespace bohm {

namespace {

constexpr double kPi = std::numbers::pi;
const double kPiQuarterInv = std::pow(kPi, -0.25);  // pi^(-1/4)

void check_finite(double x, double t) {
    if (!std::isfinite(x) || !std::isfinite(t))
        throw std::invalid_argument("wave model evaluation: x and t must be finite");
}

Complex psi_coherent(double d, double x, double t) {
    if (!std::isfinite(d))
        throw std::invalid_argument("coherent state: displacement d must be finite");
    const double xc = x - d * std::cos(t);
    const double phase = -(0.5 * t - 0.25 * d * d * std::sin(2.0 * t) + d * x * std::sin(t));
    return kPiQuarterInv * std::exp(-0.5 * xc * xc) * std::polar(1.0, phase);
}

Complex psi_free(double x, double t) {
    const Complex one_it(1.0, t);
    const Complex arg = -(Complex(x * x, 0.0) + Complex(0.0, t - 2.0 * x)) / (2.0 * one_it);
    return kPiQuarterInv / std::sqrt(one_it) * std::exp(arg);
}

Complex psi_superposition(double x, double t) {
    const double norm = std::sqrt(2.0 / 3.0) * kPiQuarterInv;
    const Complex mix = 1.0 + x * std::polar(1.0, -t);
    return norm * std::exp(-0.5 * x * x) * std::polar(1.0, -0.5 * t) * mix;
}

const GridEvolution& evolution_of(const Numeric& model) {
    if (!model.evolution)
        throw std::invalid_argument("numeric model: missing grid evolution");
    return *model.evolution;
}

}  // namespace

Complex evaluate_psi(const WaveModel& model, double x, double t) {
    check_finite(x, t);
    return std::visit(
        [&](const auto& m) -> Complex {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, Coherent>)
                return psi_coherent(m.d, x, t);
            else if constexpr (std::is_same_v<M, FreeGaussian>)
                return psi_free(x, t);
            else if constexpr (std::is_same_v<M, Superposition>)
                return psi_superposition(x, t);
            else
                return evolution_of(m).psi(x, t);
        },
        model);
}

PolarDecomposition polar(const WaveModel& model, double x, double t) {
    const Complex psi = evaluate_psi(model, x, t);
    const double r = std::abs(psi);
    if (r < kNodeEpsilon)
        throw NodeProximityError("polar: amplitude below node threshold, phase undefined");
    return {r, std::arg(psi)};
}

double density(const WaveModel& model, double x, double t) {
    check_finite(x, t);
    // Closed forms of R^2; the Numeric variant squares the interpolant.
    return std::visit(
        [&](const auto& m) -> double {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, Coherent>) {
                const double xc = x - m.d * std::cos(t);
                return std::exp(-xc * xc) / std::sqrt(kPi);
            } else if constexpr (std::is_same_v<M, FreeGaussian>) {
                const double w = 1.0 + t * t;
                const double xc = x - t;
                return std::exp(-xc * xc / w) / std::sqrt(kPi * w);
            } else if constexpr (std::is_same_v<M, Superposition>) {
                const double u = 1.0 + 2.0 * x * std::cos(t) + x * x;
                return (2.0 / 3.0) / std::sqrt(kPi) * std::exp(-x * x) * u;
            } else {
                return std::norm(evolution_of(m).psi(x, t));
            }
        },
        model);
}

double total_probability(const WaveModel& model, double t, Interval domain,
                         const QuadratureOptions& quadrature) {
    return integrate_adaptive([&](double x) { return density(model, x, t); }, domain.lo,
                              domain.hi, quadrature);
}

Interval support_interval(const WaveModel& model, double t) {
    return std::visit(
        [&](const auto& m) -> Interval {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, Coherent>) {
                const double c = m.d * std::cos(t);
                return {c - 10.0, c + 10.0};
            } else if constexpr (std::is_same_v<M, FreeGaussian>) {
                const double w = 10.0 * std::sqrt(1.0 + t * t);
                return {t - w, t + w};
            } else if constexpr (std::is_same_v<M, Superposition>) {
                return {-10.0, 10.0};
            } else {
                const auto& ev = evolution_of(m);
                return {ev.x_min(), ev.x_max()};
            }
        },
        model);
}

}  // namespace bohm
