#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bohm/dynamics.hpp"

namespace bohm {

enum class Provenance { exact, reconstructed, transported_no_jacobian, histogram };

std::string to_string(Provenance p);

// Density samples on a uniform grid at one instant. Grid points where the
// transport hit a node carry value 0 and flagged = 1; they are excluded
// from comparisons and reported by count, so one pathological point cannot
// invalidate a whole sweep.
struct DensityField {
    std::vector<double> x;
    std::vector<double> value;
    std::vector<std::uint8_t> flagged;
    double time = 0.0;
    Provenance provenance = Provenance::exact;

    long flagged_count() const;
};

// n evenly spaced points spanning [lo, hi] inclusive (n >= 2).
std::vector<double> uniform_grid(double lo, double hi, int n);

DensityField exact_density_field(const WaveModel& model, const std::vector<double>& grid,
                                 double t);

// The transport identity: value(x) = |dx0/dx| * rho(x0(x,t), 0), where x0
// is found by integrating the guidance equation backward from (x, t).
DensityField reconstruct_density(const WaveModel& model, const std::vector<double>& grid,
                                 double t, const SolverOptions& opts = {});

// Same pullback but without the transport factor: value(x) = rho(x0(x,t), 0).
// Deliberately wrong for spreading packets; used for the comparison figure.
DensityField transported_density_no_jacobian(const WaveModel& model,
                                             const std::vector<double>& grid, double t,
                                             const SolverOptions& opts = {});

struct EnsembleSpec {
    long n_samples = 100000;
    std::uint64_t seed = 42;
    int bins = 100;
    Interval range{-6.0, 6.0};
};

struct EnsembleResult {
    DensityField histogram;    // bin centers, area-normalized over the binned range
    std::vector<long> counts;  // raw per-bin occupation
    long dropped = 0;          // particles lost to solver or node errors
    long out_of_range = 0;     // particles transported outside the binned range
};

// Monte Carlo realization of the transport: draw initial positions from
// rho(.,0) by inverse-CDF sampling, push each along its trajectory to time
// t, and histogram the arrivals. Deterministic for a fixed seed.
EnsembleResult ensemble_transport(const WaveModel& model, const EnsembleSpec& spec, double t,
                                  const SolverOptions& opts = {});

// CDF of the model density at time t, integral from the lower support edge.
double cumulative(const WaveModel& model, double x, double t,
                  const QuadratureOptions& quadrature = {});

// Trapezoidal CDF of a sampled field up to x (flagged points contribute 0).
double cumulative(const DensityField& field, double x);

// Inverse-CDF sampler for rho(., 0). The CDF is tabulated once on panel
// edges; each draw bisects inside one panel to tolerance 1e-10. Sample i
// depends only on (seed, i), never on evaluation order.
class InitialSampler {
public:
    explicit InitialSampler(const WaveModel& model, int panels = 4096);

    double invert(double u) const;  // u in [0, 1)
    double sample(std::uint64_t seed, std::uint64_t index) const;

private:
    WaveModel model_;
    std::vector<double> edges_;
    std::vector<double> cdf_;
};

// Mean over n_resamples multinomial resamples of the histogram of the
// sup-norm deviation from the original normalized histogram. Estimates the
// statistical error floor of ensemble_transport.
double bootstrap_sup_error(const std::vector<long>& counts, double bin_width, int n_resamples,
                           std::uint64_t seed);

}  // namespace bohm
