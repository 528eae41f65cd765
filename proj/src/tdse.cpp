#include "bohm/tdse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bohm/errors.hpp"
#include "fft.hpp"

namespace bohm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kBoundaryLimit = 1e-10;

bool power_of_two(int n) {
    return n > 0 && (n & (n - 1)) == 0;
}

// Wavenumber of FFT bin j for an n-point grid of length L: k = 2*pi*m/L with
// m = j for j < n/2 and m = j - n otherwise.
double wavenumber(int j, int n, double length) {
    const int m = j < n / 2 ? j : j - n;
    return kTwoPi * m / length;
}

void check_boundary(const GridState& s) {
    const int n = s.n();
    if (std::abs(s.psi[0]) >= kBoundaryLimit || std::abs(s.psi[n - 1]) >= kBoundaryLimit)
        throw BoundaryMassError("grid state: packet reached the domain boundary");
}

// One split-operator session: phase tables for a fixed dt are rebuilt only
// when the step size changes (i.e. for the final partial step).
class Propagator {
public:
    explicit Propagator(GridState& s) : s_(s), fft_(s.n()), half_v_(s.n()), kinetic_(s.n()) {}

    void step(double dt) {
        if (dt != table_dt_)
            build_tables(dt);
        const int n = s_.n();
        for (int j = 0; j < n; ++j)
            s_.psi[j] *= half_v_[j];
        fft_.forward(s_.psi.data());
        for (int j = 0; j < n; ++j)
            s_.psi[j] *= kinetic_[j];
        fft_.backward(s_.psi.data());
        for (int j = 0; j < n; ++j)
            s_.psi[j] *= half_v_[j];
        s_.time += dt;
    }

private:
    void build_tables(double dt) {
        const int n = s_.n();
        for (int j = 0; j < n; ++j) {
            half_v_[j] = std::polar(1.0, -0.5 * dt * potential_value(s_.potential, s_.x_at(j)));
            const double k = wavenumber(j, n, s_.length());
            kinetic_[j] = std::polar(1.0, -0.5 * dt * k * k);
        }
        table_dt_ = dt;
    }

    GridState& s_;
    detail::Fft fft_;
    std::vector<Complex> half_v_;
    std::vector<Complex> kinetic_;
    double table_dt_ = 0.0;
};

struct ModeSums {
    Complex psi{};
    Complex dpsi{};
    Complex d2psi{};
};

// Evaluates the trigonometric interpolant and its first two x-derivatives
// from spectral coefficients blended from up to four arrays:
// c_eff[m] = wa*a[m] + wb*b[m] + wc*c[m] + wd*d[m].
ModeSums sum_modes(const Complex* a, const Complex* b, const Complex* c, const Complex* d,
                   double wa, double wb, double wc, double wd, int n, double theta,
                   double k_unit) {
    ModeSums out;
    const Complex w = std::polar(1.0, theta);
    const Complex wconj = std::conj(w);

    auto accumulate = [&](int j, int m, const Complex& phase) {
        Complex coeff = wa * a[j];
        if (b) coeff += wb * b[j];
        if (c) coeff += wc * c[j];
        if (d) coeff += wd * d[j];
        const double k = k_unit * m;
        const Complex term = coeff * phase;
        out.psi += term;
        out.dpsi += Complex(0.0, k) * term;
        out.d2psi += -(k * k) * term;
    };

    Complex phase(1.0, 0.0);
    for (int m = 0; m < n / 2; ++m) {
        accumulate(m, m, phase);
        phase *= w;
    }
    phase = wconj;
    for (int m = -1; m >= -n / 2; --m) {
        accumulate(n + m, m, phase);
        phase *= wconj;
    }
    return out;
}

std::vector<Complex> spectral_coefficients(const GridState& s, const detail::Fft& fft) {
    std::vector<Complex> c = s.psi;
    fft.forward(c.data());
    const double scale = 1.0 / s.n();
    for (auto& v : c)
        v *= scale;
    return c;
}

// -iH psi on the grid (kinetic term applied spectrally).
std::vector<Complex> minus_i_h_psi(const GridState& s, const detail::Fft& fft) {
    const int n = s.n();
    std::vector<Complex> t_psi = s.psi;
    fft.forward(t_psi.data());
    for (int j = 0; j < n; ++j) {
        const double k = wavenumber(j, n, s.length());
        t_psi[j] *= 0.5 * k * k;
    }
    fft.backward(t_psi.data());
    std::vector<Complex> out(n);
    for (int j = 0; j < n; ++j) {
        const Complex h_psi = t_psi[j] + potential_value(s.potential, s.x_at(j)) * s.psi[j];
        out[j] = Complex(0.0, -1.0) * h_psi;
    }
    return out;
}

}  // namespace

double GridState::norm() const {
    double sum = 0.0;
    for (const auto& v : psi)
        sum += std::norm(v);
    return std::sqrt(sum * dx());
}

GridState init_from_model(const WaveModel& model, Interval domain, int n) {
    if (!power_of_two(n))
        throw std::invalid_argument("init_from_model: grid size must be a power of two");
    if (std::holds_alternative<Numeric>(model))
        throw std::invalid_argument("init_from_model: base model must be analytic");

    GridState s;
    s.x_min = domain.lo;
    s.x_max = domain.hi;
    s.potential =
        std::holds_alternative<FreeGaussian>(model) ? Potential::free_particle : Potential::harmonic;
    s.psi.resize(n);
    for (int j = 0; j < n; ++j)
        s.psi[j] = evaluate_psi(model, s.x_at(j), 0.0);

    const double nrm = s.norm();
    if (!(nrm > 0.0))
        throw std::invalid_argument("init_from_model: zero state on the grid");
    for (auto& v : s.psi)
        v /= nrm;
    check_boundary(s);
    return s;
}

GridState propagate(const GridState& state, double t_target, double dt) {
    if (!(dt > 0.0))
        throw std::invalid_argument("propagate: dt must be positive");
    if (t_target < state.time)
        throw std::invalid_argument("propagate: t_target must not precede the state time");

    GridState s = state;
    Propagator prop(s);
    long steps = 0;
    while (s.time < t_target) {
        const double remaining = t_target - s.time;
        if (remaining < 1e-15 * std::max(1.0, std::abs(t_target))) {
            s.time = t_target;
            break;
        }
        prop.step(std::min(dt, remaining));
        if (++steps % 2000 == 0)
            check_boundary(s);
    }
    s.time = t_target;
    check_boundary(s);
    return s;
}

double grid_velocity(const GridState& state, double x, double node_guard) {
    if (x < state.x_min || x > state.x_max)
        throw std::domain_error("grid_velocity: x outside the grid domain");
    detail::Fft fft(state.n());
    const auto c = spectral_coefficients(state, fft);
    const double theta = kTwoPi * (x - state.x_min) / state.length();
    const auto s = sum_modes(c.data(), nullptr, nullptr, nullptr, 1.0, 0.0, 0.0, 0.0, state.n(),
                             theta, kTwoPi / state.length());
    if (std::norm(s.psi) < node_guard)
        throw NodeProximityError("grid_velocity: density below node guard");
    return std::imag(s.dpsi / s.psi);
}

double energy_expectation(const GridState& state) {
    const int n = state.n();
    detail::Fft fft(n);
    std::vector<Complex> t_psi = state.psi;
    fft.forward(t_psi.data());
    for (int j = 0; j < n; ++j) {
        const double k = wavenumber(j, n, state.length());
        t_psi[j] *= 0.5 * k * k;
    }
    fft.backward(t_psi.data());
    double e = 0.0;
    for (int j = 0; j < n; ++j) {
        const Complex h_psi =
            t_psi[j] + potential_value(state.potential, state.x_at(j)) * state.psi[j];
        e += std::real(std::conj(state.psi[j]) * h_psi);
    }
    return e * state.dx();
}

GridEvolution::GridEvolution(GridState initial, double t_max, double dt,
                             double snapshot_interval)
    : initial_(std::move(initial)) {
    if (!power_of_two(initial_.n()))
        throw std::invalid_argument("GridEvolution: grid size must be a power of two");
    if (std::abs(initial_.norm() - 1.0) > 1e-8)
        throw std::invalid_argument("GridEvolution: initial state is not normalized");
    if (!(dt > 0.0) || !(snapshot_interval >= dt))
        throw std::invalid_argument("GridEvolution: need 0 < dt <= snapshot_interval");
    if (t_max < initial_.time)
        throw std::invalid_argument("GridEvolution: t_max precedes the initial time");
    check_boundary(initial_);

    detail::Fft fft(initial_.n());
    auto record = [&](const GridState& s) {
        snaps_.push_back(
            {s.time, spectral_coefficients(s, fft), [&] {
                 GridState tmp = s;  // reuse the coefficient helper on -iH psi
                 tmp.psi = minus_i_h_psi(s, fft);
                 return spectral_coefficients(tmp, fft);
             }()});
    };

    record(initial_);
    GridState s = initial_;
    Propagator prop(s);
    double next = initial_.time;
    while (s.time < t_max - 1e-13) {
        next = std::min(next + snapshot_interval, t_max);
        while (s.time < next - 1e-15)
            prop.step(std::min(dt, next - s.time));
        s.time = next;
        check_boundary(s);
        record(s);
    }
}

void GridEvolution::check_point(double x, double t) const {
    if (x < x_min() || x > x_max())
        throw std::domain_error("grid evolution: x outside the grid domain");
    if (t < t_min() - 1e-9 || t > t_max() + 1e-9)
        throw std::domain_error("grid evolution: t outside the recorded window");
}

const GridEvolution::Snapshot& GridEvolution::lower_snapshot(double t) const {
    auto it = std::upper_bound(snaps_.begin(), snaps_.end(), t,
                               [](double v, const Snapshot& s) { return v < s.time; });
    if (it != snaps_.begin())
        --it;
    if (it + 1 == snaps_.end() && it != snaps_.begin())
        --it;  // keep a full interval to the right for interpolation
    return *it;
}

GridEvolution::Derivatives GridEvolution::derivatives(double x, double t) const {
    check_point(x, t);
    const int n = initial_.n();
    const double k_unit = kTwoPi / initial_.length();
    const double theta = k_unit * (x - x_min());

    const Snapshot& s0 = lower_snapshot(t);
    ModeSums sums;
    if (snaps_.size() == 1) {
        sums = sum_modes(s0.c.data(), nullptr, nullptr, nullptr, 1.0, 0.0, 0.0, 0.0, n, theta,
                         k_unit);
    } else {
        const Snapshot& s1 = *(&s0 + 1);
        const double h = s1.time - s0.time;
        const double u = std::clamp((t - s0.time) / h, 0.0, 1.0);
        // cubic Hermite basis
        const double u2 = u * u, u3 = u2 * u;
        const double h00 = 2 * u3 - 3 * u2 + 1;
        const double h10 = (u3 - 2 * u2 + u) * h;
        const double h01 = -2 * u3 + 3 * u2;
        const double h11 = (u3 - u2) * h;
        sums = sum_modes(s0.c.data(), s0.cdot.data(), s1.c.data(), s1.cdot.data(), h00, h10, h01,
                         h11, n, theta, k_unit);
    }
    return {sums.psi, sums.dpsi, sums.d2psi};
}

Complex GridEvolution::psi(double x, double t) const {
    return derivatives(x, t).psi;
}

Numeric make_numeric_model(const WaveModel& analytic, Interval domain, int n, double t_max,
                           double dt, double snapshot_interval) {
    auto evolution = std::make_shared<GridEvolution>(init_from_model(analytic, domain, n), t_max,
                                                     dt, snapshot_interval);
    return Numeric{std::move(evolution)};
}

}  // namespace bohm
