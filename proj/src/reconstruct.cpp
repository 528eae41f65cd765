#include "bohm/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bohm/errors.hpp"
#include "bohm/rng.hpp"
#include "bohm/rootfind.hpp"

namespace bohm {

namespace {

void check_grid(const std::vector<double>& grid) {
    if (grid.size() < 2)
        throw std::invalid_argument("density grid needs at least two points");
    for (size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("density grid must be strictly increasing");
}

DensityField transport_field(const WaveModel& model, const std::vector<double>& grid, double t,
                             const SolverOptions& opts, bool with_jacobian) {
    check_grid(grid);
    if (t < 0.0)
        throw std::invalid_argument("transport: t must be nonnegative");

    DensityField field;
    field.x = grid;
    field.value.assign(grid.size(), 0.0);
    field.flagged.assign(grid.size(), 0);
    field.time = t;
    field.provenance =
        with_jacobian ? Provenance::reconstructed : Provenance::transported_no_jacobian;

    for (size_t i = 0; i < grid.size(); ++i) {
        try {
            const Preimage p = inverse_map(model, grid[i], t, opts);
            const double rho0 = density(model, p.x0, 0.0);
            field.value[i] = with_jacobian ? p.jacobian * rho0 : rho0;
        } catch (const NodeProximityError&) {
            field.flagged[i] = 1;
        }
    }
    return field;
}

}  // namespace

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::exact:
            return "exact";
        case Provenance::reconstructed:
            return "reconstructed";
        case Provenance::transported_no_jacobian:
            return "transported_no_jacobian";
        case Provenance::histogram:
            return "histogram";
    }
    return "unknown";
}

long DensityField::flagged_count() const {
    long n = 0;
    for (auto f : flagged)
        n += f != 0;
    return n;
}

std::vector<double> uniform_grid(double lo, double hi, int n) {
    if (n < 2 || !(lo < hi))
        throw std::invalid_argument("uniform_grid: need lo < hi and n >= 2");
    std::vector<double> g(static_cast<size_t>(n));
    const double h = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i)
        g[static_cast<size_t>(i)] = lo + h * i;
    g.back() = hi;
    return g;
}

DensityField exact_density_field(const WaveModel& model, const std::vector<double>& grid,
                                 double t) {
    check_grid(grid);
    DensityField field;
    field.x = grid;
    field.value.reserve(grid.size());
    field.flagged.assign(grid.size(), 0);
    field.time = t;
    field.provenance = Provenance::exact;
    for (double x : grid)
        field.value.push_back(density(model, x, t));
    return field;
}

DensityField reconstruct_density(const WaveModel& model, const std::vector<double>& grid,
                                 double t, const SolverOptions& opts) {
    return transport_field(model, grid, t, opts, true);
}

DensityField transported_density_no_jacobian(const WaveModel& model,
                                             const std::vector<double>& grid, double t,
                                             const SolverOptions& opts) {
    return transport_field(model, grid, t, opts, false);
}

double cumulative(const WaveModel& model, double x, double t,
                  const QuadratureOptions& quadrature) {
    const Interval support = support_interval(model, t);
    if (x <= support.lo)
        return 0.0;
    const double hi = std::min(x, support.hi);
    const double mass =
        integrate_adaptive([&](double y) { return density(model, y, t); }, support.lo, hi,
                           quadrature);
    return std::clamp(mass, 0.0, 1.0);
}

double cumulative(const DensityField& field, double x) {
    if (field.x.empty() || x <= field.x.front())
        return 0.0;
    double sum = 0.0;
    auto val = [&](size_t i) { return field.flagged[i] ? 0.0 : field.value[i]; };
    for (size_t i = 1; i < field.x.size(); ++i) {
        const double x0 = field.x[i - 1];
        const double x1 = field.x[i];
        if (x >= x1) {
            sum += 0.5 * (val(i - 1) + val(i)) * (x1 - x0);
        } else {
            const double f = (x - x0) / (x1 - x0);
            const double vx = val(i - 1) + f * (val(i) - val(i - 1));
            sum += 0.5 * (val(i - 1) + vx) * (x - x0);
            break;
        }
    }
    return sum;
}

InitialSampler::InitialSampler(const WaveModel& model, int panels) : model_(model) {
    if (panels < 1)
        throw std::invalid_argument("InitialSampler: need at least one panel");
    const Interval support = support_interval(model, 0.0);
    edges_.resize(static_cast<size_t>(panels) + 1);
    cdf_.resize(edges_.size());
    const double h = (support.hi - support.lo) / panels;
    for (size_t i = 0; i < edges_.size(); ++i)
        edges_[i] = support.lo + h * static_cast<double>(i);
    edges_.back() = support.hi;

    cdf_[0] = 0.0;
    for (size_t i = 1; i < edges_.size(); ++i)
        cdf_[i] = cdf_[i - 1] + gauss_legendre_panel(
                                    [&](double y) { return density(model_, y, 0.0); },
                                    edges_[i - 1], edges_[i]);
}

double InitialSampler::invert(double u) const {
    if (!(u >= 0.0) || !(u < 1.0))
        throw std::invalid_argument("InitialSampler::invert: u must lie in [0, 1)");
    if (u >= cdf_.back())
        return edges_.back();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    const size_t k = static_cast<size_t>(it - cdf_.begin()) - 1;
    auto g = [&](double x) {
        return cdf_[k] + gauss_legendre_panel([&](double y) { return density(model_, y, 0.0); },
                                              edges_[k], x) -
               u;
    };
    return bisect(g, edges_[k], edges_[k + 1], 1e-10);
}

double InitialSampler::sample(std::uint64_t seed, std::uint64_t index) const {
    return invert(counter_uniform(seed, index));
}

EnsembleResult ensemble_transport(const WaveModel& model, const EnsembleSpec& spec, double t,
                                  const SolverOptions& opts) {
    if (spec.n_samples < 1)
        throw std::invalid_argument("ensemble_transport: n_samples must be at least 1");
    if (spec.bins < 2)
        throw std::invalid_argument("ensemble_transport: need at least two bins");
    if (!(spec.range.lo < spec.range.hi))
        throw std::invalid_argument("ensemble_transport: empty bin range");
    if (t < 0.0)
        throw std::invalid_argument("ensemble_transport: t must be nonnegative");

    const InitialSampler sampler(model);
    EnsembleResult result;
    result.counts.assign(static_cast<size_t>(spec.bins), 0);
    const double width = (spec.range.hi - spec.range.lo) / spec.bins;

    for (long i = 0; i < spec.n_samples; ++i) {
        const double x0 = sampler.sample(spec.seed, static_cast<std::uint64_t>(i));
        double xt;
        try {
            xt = flow_endpoint(model, x0, 0.0, t, opts);
        } catch (const NodeProximityError&) {
            ++result.dropped;
            continue;
        } catch (const SolverError&) {
            ++result.dropped;
            continue;
        }
        const double f = (xt - spec.range.lo) / width;
        if (f < 0.0 || f >= spec.bins) {
            ++result.out_of_range;
            continue;
        }
        ++result.counts[static_cast<size_t>(f)];
    }

    long total = 0;
    for (long c : result.counts)
        total += c;

    DensityField& hist = result.histogram;
    hist.time = t;
    hist.provenance = Provenance::histogram;
    hist.x.resize(result.counts.size());
    hist.value.resize(result.counts.size());
    hist.flagged.assign(result.counts.size(), 0);
    for (size_t b = 0; b < result.counts.size(); ++b) {
        hist.x[b] = spec.range.lo + width * (static_cast<double>(b) + 0.5);
        hist.value[b] =
            total > 0 ? static_cast<double>(result.counts[b]) / (static_cast<double>(total) * width)
                      : 0.0;
    }
    return result;
}

double bootstrap_sup_error(const std::vector<long>& counts, double bin_width, int n_resamples,
                           std::uint64_t seed) {
    if (counts.empty() || n_resamples < 1 || !(bin_width > 0.0))
        throw std::invalid_argument("bootstrap_sup_error: invalid arguments");
    long total = 0;
    std::vector<long> prefix(counts.size());
    for (size_t b = 0; b < counts.size(); ++b) {
        total += counts[b];
        prefix[b] = total;
    }
    if (total == 0)
        return 0.0;

    const double scale = 1.0 / (static_cast<double>(total) * bin_width);
    std::vector<long> resampled(counts.size());
    double sum_sup = 0.0;
    for (int r = 0; r < n_resamples; ++r) {
        const std::uint64_t stream =
            splitmix64(seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(r + 1));
        std::fill(resampled.begin(), resampled.end(), 0L);
        for (long i = 0; i < total; ++i) {
            const double u = counter_uniform(stream, static_cast<std::uint64_t>(i));
            const double target = u * static_cast<double>(total);
            const auto it = std::upper_bound(prefix.begin(), prefix.end(),
                                             static_cast<long>(target));
            const size_t b = std::min(static_cast<size_t>(it - prefix.begin()),
                                      counts.size() - 1);
            ++resampled[b];
        }
        double sup = 0.0;
        for (size_t b = 0; b < counts.size(); ++b)
            sup = std::max(sup, std::abs(static_cast<double>(resampled[b] - counts[b])) * scale);
        sum_sup += sup;
    }
    return sum_sup / n_resamples;
}

}  // namespace bohm
