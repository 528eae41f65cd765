// Acceptance gate for the density-transport toolkit: ten numbered criteria,
// one PASS/FAIL line each, nonzero exit when any fail. Every tolerance is
// pinned here as a constant next to the check that uses it.
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "bohm/dynamics.hpp"
#include "bohm/reconstruct.hpp"
#include "bohm/states.hpp"
#include "bohm/tdse.hpp"
#include "bohm/verify.hpp"

using namespace bohm;

namespace {

constexpr double kPi = std::numbers::pi;
int g_failures = 0;

std::string strf(const char* fmt, ...) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof(buf), fmt, args);
    va_end(args);
    return buf;
}

void line(int idx, const char* title, bool pass, const std::string& detail) {
    std::printf("%s  %2d %-26s %s\n", pass ? "PASS" : "FAIL", idx, title, detail.c_str());
    if (!pass)
        ++g_failures;
}

double grid_l2_error(const GridState& s, const WaveModel& analytic) {
    double acc = 0.0;
    for (int j = 0; j < s.n(); ++j)
        acc += std::norm(s.psi[j] - evaluate_psi(analytic, s.x_at(j), s.time));
    return std::sqrt(acc * s.dx());
}

// 1. The coherent packet translates rigidly: x(x0,t) = d(cos t - 1) + x0
//    with a unit flow-map derivative.
void criterion1() {
    constexpr double tol_x = 1e-8;
    constexpr double tol_j = 1e-9;
    double err_x = 0.0;
    double err_j = 0.0;
    for (double d : {0.0, 1.0, 2.0})
        for (double x0 : {-2.0, 0.0, 1.5})
            for (double t : {0.5, kPi, 2.0 * kPi}) {
                const Trajectory tr = integrate_forward(Coherent{d}, x0, 0.0, t);
                err_x = std::max(err_x, std::abs(tr.x() - (d * (std::cos(t) - 1.0) + x0)));
                err_j = std::max(err_j, std::abs(tr.jacobian() - 1.0));
            }
    line(1, "coherent rigidity", err_x <= tol_x && err_j <= tol_j,
         strf("max x err=%.2e (tol %.0e), max |J-1|=%.2e (tol %.0e)", err_x, tol_x, err_j,
              tol_j));
}

// 2. The free packet follows x(x0,t) = t + x0 sqrt(1+t^2); the inverse-map
//    transport factor is 1/sqrt(1+t^2).
void criterion2() {
    constexpr double tol = 1e-8;
    double err_x = 0.0;
    double err_j = 0.0;
    for (double t : {0.5, 1.0, 3.0}) {
        const double spread = std::sqrt(1.0 + t * t);
        for (double x0 : {-2.0, -1.0, 0.0, 1.0, 2.0})
            err_x = std::max(
                err_x, std::abs(flow_endpoint(FreeGaussian{}, x0, 0.0, t) - (t + x0 * spread)));
        for (double x : {-1.0, 0.5, 2.0})
            err_j = std::max(
                err_j, std::abs(inverse_map(FreeGaussian{}, x, t).jacobian - 1.0 / spread));
    }
    line(2, "free-packet closed form", err_x <= tol && err_j <= tol,
         strf("max x err=%.2e, max jac err=%.2e (tol %.0e)", err_x, err_j, tol));
}

// 3. The transported initial density reproduces the exact one on 481-point
//    grids; node-adjacent points are flagged rather than compared.
void criterion3() {
    constexpr double tol = 1e-6;
    double worst = 0.0;
    long flagged = 0;
    auto sweep = [&](const WaveModel& m, const std::vector<double>& times) {
        for (double t : times) {
            const auto grid = uniform_grid(-6.0, 6.0 + t, 481);
            const auto rep = compare_densities(reconstruct_density(m, grid, t),
                                               exact_density_field(m, grid, t), tol);
            worst = std::max(worst, rep.metric);
            flagged += rep.skipped;
        }
    };
    sweep(Coherent{1.0}, {0.5, 1.0, kPi, 5.0});
    sweep(FreeGaussian{}, {0.5, 1.0, kPi, 5.0});
    sweep(Superposition{}, {0.5, 1.0, kPi});
    line(3, "density reconstruction", worst <= tol,
         strf("sup err=%.2e (tol %.0e), flagged points=%ld", worst, tol, flagged));
}

// 4. The amplitude comparison figure: without the transport factor the
//    curves stay visibly apart; with it they coincide.
void criterion4() {
    constexpr double tol_match = 1e-6;
    const auto fig = figure1_dataset(uniform_grid(-4.0, 4.0, 401));
    const auto sep = figure1_separation(fig);
    const auto cor = figure1_corrected_match(fig);
    const double gap = kFigure1MinSeparation - sep.metric;
    line(4, "figure1 curves", sep.pass && cor.pass && cor.metric <= tol_match,
         strf("amplitude gap=%.3f (floor %.2f), corrected sup=%.2e (tol %.0e)", gap,
              kFigure1MinSeparation, cor.metric, tol_match));
}

// 5. The exact density and guidance velocity satisfy the continuity
//    equation: finite-difference residual at h = 1e-2 with O(h^2) decay.
void criterion5() {
    constexpr double tol = 1e-4;
    constexpr double ratio_lo = 3.4;
    constexpr double ratio_hi = 4.6;
    const std::vector<double> times{0.5, 1.0, 2.0};
    const auto cgrid = uniform_grid(-5.0, 5.0, 101);
    const auto fgrid = uniform_grid(-5.0, 7.0, 101);

    const double res_c = continuity_residual(Coherent{1.0}, cgrid, times).metric;
    const double res_f = continuity_residual(FreeGaussian{}, fgrid, times).metric;
    const double ratio_c = continuity_convergence_ratio(Coherent{1.0}, cgrid, times);
    const double ratio_f = continuity_convergence_ratio(FreeGaussian{}, fgrid, times);

    const bool pass = res_c <= tol && res_f <= tol && ratio_c >= ratio_lo && ratio_c <= ratio_hi &&
                      ratio_f >= ratio_lo && ratio_f <= ratio_hi;
    line(5, "continuity equation", pass,
         strf("residuals=%.2e/%.2e (tol %.0e), decay ratios=%.2f/%.2f (window %.1f..%.1f)",
              res_c, res_f, tol, ratio_c, ratio_f, ratio_lo, ratio_hi));
}

// 6. The reconstructed density integrates to one.
void criterion6() {
    constexpr double tol = 1e-6;
    double worst = 0.0;
    auto sweep = [&](const WaveModel& m, const std::vector<double>& times) {
        for (double t : times)
            worst = std::max(worst,
                             normalization_identity(m, t, support_interval(m, t), tol).metric);
    };
    sweep(Coherent{1.0}, {0.5, 1.0, kPi, 5.0});
    sweep(FreeGaussian{}, {0.5, 1.0, kPi, 5.0});
    sweep(Superposition{}, {0.5, 1.0, kPi});
    line(6, "normalization identity", worst <= tol, strf("max |mass-1|=%.2e (tol %.0e)", worst, tol));
}

// 7. Two independent routes to the superposition flow agree: bracketed
//    inversion of the conserved quantity vs trajectory integration.
void criterion7() {
    constexpr double tol = 1e-8;
    double err_x = 0.0;
    double drift = 0.0;
    for (double t : {0.5, 1.0, kPi})
        for (double x0 : {-1.5, -0.5, 0.0, 0.5, 1.5}) {
            const Trajectory tr = integrate_forward(Superposition{}, x0, 0.0, t);
            err_x = std::max(err_x, std::abs(solve_implicit(x0, t) - tr.x()));
            const double c0 = implicit_constant(x0, 0.0);
            for (const auto& s : tr.samples)
                drift = std::max(drift, std::abs(implicit_constant(s.x, s.t) - c0));
        }
    line(7, "implicit cross-validation", err_x <= tol && drift <= tol,
         strf("max route gap=%.2e, max C drift=%.2e (tol %.0e)", err_x, drift, tol));
}

// 8. The grid propagator matches the closed forms in L2, converges at
//    second order in dt, and drives the same reconstruction.
void criterion8() {
    constexpr double tol_l2 = 1e-6;
    constexpr double ratio_lo = 3.4;
    constexpr double ratio_hi = 4.6;
    constexpr double tol_cross = 1e-4;
    const Interval narrow{-12.0, 12.0};
    const Interval wide{-17.0, 17.0};

    const WaveModel coherent = Coherent{1.0};
    const WaveModel free_packet = FreeGaussian{};
    const WaveModel super = Superposition{};

    const GridState gc = init_from_model(coherent, narrow, 1024);
    const GridState gf = init_from_model(free_packet, wide, 2048);
    const GridState gs = init_from_model(super, narrow, 1024);
    const double l2_c = grid_l2_error(propagate(gc, 1.0, 5e-4), coherent);
    const double l2_f = grid_l2_error(propagate(gf, 1.0, 5e-4), free_packet);
    const double l2_s = grid_l2_error(propagate(gs, 1.0, 5e-4), super);

    const double ratio = grid_l2_error(propagate(gc, 1.0, 2e-3), coherent) /
                         grid_l2_error(propagate(gc, 1.0, 1e-3), coherent);

    double cross = 0.0;
    const struct {
        const WaveModel* analytic;
        Interval domain;
        int n;
        Interval span;
    } cases[] = {
        {&coherent, narrow, 1024, {-3.5, 4.5}},
        {&free_packet, wide, 2048, {-3.0, 5.0}},
        {&super, narrow, 1024, {-4.0, 4.0}},
    };
    for (const auto& c : cases) {
        const WaveModel numeric = make_numeric_model(*c.analytic, c.domain, c.n, 1.0);
        const auto grid = uniform_grid(c.span.lo, c.span.hi, 161);
        cross = std::max(cross, compare_densities(reconstruct_density(numeric, grid, 1.0),
                                                  reconstruct_density(*c.analytic, grid, 1.0),
                                                  tol_cross)
                                    .metric);
    }

    const bool pass = l2_c <= tol_l2 && l2_f <= tol_l2 && l2_s <= tol_l2 && ratio >= ratio_lo &&
                      ratio <= ratio_hi && cross <= tol_cross;
    line(8, "grid propagator oracle", pass,
         strf("L2=%.1e/%.1e/%.1e (tol %.0e), dt ratio=%.2f, cross sup=%.1e (tol %.0e)", l2_c,
              l2_f, l2_s, tol_l2, ratio, cross, tol_cross));
}

// 9. Monte Carlo transport: the histogram tracks the exact density within
//    its own statistical error, deterministically for a fixed seed.
void criterion9() {
    constexpr double error_multiple = 5.0;
    constexpr int resamples = 50;
    double worst_ratio = 0.0;
    bool identical = true;

    const struct {
        WaveModel model;
        Interval range;
    } cases[] = {
        {Coherent{1.0}, {-5.0, 6.0}},
        {FreeGaussian{}, {-5.0, 7.0}},
        {Superposition{}, {-6.0, 6.0}},
    };
    for (const auto& c : cases) {
        EnsembleSpec spec;
        spec.n_samples = 100000;
        spec.seed = 42;
        spec.bins = 100;
        spec.range = c.range;
        const auto run = ensemble_transport(c.model, spec, 1.0);
        const auto rerun = ensemble_transport(c.model, spec, 1.0);
        identical = identical && run.counts == rerun.counts &&
                    run.histogram.value == rerun.histogram.value;

        const auto exact = exact_density_field(c.model, run.histogram.x, 1.0);
        double sup = 0.0;
        for (size_t b = 0; b < exact.value.size(); ++b)
            sup = std::max(sup, std::abs(run.histogram.value[b] - exact.value[b]));
        const double width = (c.range.hi - c.range.lo) / spec.bins;
        const double boot = bootstrap_sup_error(run.counts, width, resamples, spec.seed);
        worst_ratio = std::max(worst_ratio, sup / boot);
    }
    line(9, "ensemble transport", worst_ratio <= error_multiple && identical,
         strf("max sup/bootstrap=%.2f (tol %.0f), rerun identical=%s", worst_ratio,
              error_multiple, identical ? "yes" : "no"));
}

// 10. Flow-map properties: round trip, variational vs finite-difference
//     transport factor, ordering, and quantile conservation.
void criterion10() {
    constexpr double tol_round = 1e-7;
    constexpr double tol_jac = 1e-5;
    constexpr double tol_quantile = 1e-6;
    const WaveModel coherent = Coherent{1.0};
    const WaveModel free_packet = FreeGaussian{};
    const WaveModel super = Superposition{};
    const std::vector<double> times{0.5, 1.0, kPi};
    const std::vector<double> gauss_x0{-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0};
    const std::vector<double> super_x0{-2.5, -2.0, -1.5, -0.5, 0.0, 0.5, 1.0, 1.5};

    double round = 0.0;
    double quantile = 0.0;
    double min_gap = 1e300;
    auto flow_checks = [&](const WaveModel& m, const std::vector<double>& x0s,
                           const std::vector<double>& ordered) {
        for (double t : times) {
            for (double x0 : x0s) {
                const double xt = flow_endpoint(m, x0, 0.0, t);
                round = std::max(round, std::abs(inverse_map(m, xt, t).x0 - x0));
                quantile = std::max(quantile,
                                    std::abs(cumulative(m, xt, t) - cumulative(m, x0, 0.0)));
            }
            double prev = -1e300;
            for (double x0 : ordered) {
                const double xt = flow_endpoint(m, x0, 0.0, t);
                min_gap = std::min(min_gap, xt - prev);
                prev = xt;
            }
        }
    };
    flow_checks(coherent, gauss_x0, uniform_grid(-3.0, 3.0, 25));
    flow_checks(free_packet, gauss_x0, uniform_grid(-3.0, 3.0, 25));
    flow_checks(super, super_x0, uniform_grid(-3.05, 2.95, 21));

    const struct {
        const WaveModel* m;
        double x;
        double t;
    } probes[] = {{&coherent, 1.3, kPi}, {&coherent, -0.5, 1.0}, {&free_packet, 2.0, 1.0},
                  {&free_packet, -0.5, 3.0}, {&super, 0.5, 1.0}, {&super, -2.0, kPi},
                  {&super, 0.0, 0.5}};
    constexpr double h = 1e-4;
    double jac_err = 0.0;
    for (const auto& p : probes) {
        const double jac = inverse_map(*p.m, p.x, p.t).jacobian;
        const double fd =
            (inverse_map(*p.m, p.x + h, p.t).x0 - inverse_map(*p.m, p.x - h, p.t).x0) / (2.0 * h);
        jac_err = std::max(jac_err, std::abs(jac - std::abs(fd)) / std::abs(fd));
    }

    const bool pass =
        round <= tol_round && jac_err <= tol_jac && min_gap > 0.0 && quantile <= tol_quantile;
    line(10, "flow-map properties", pass,
         strf("round trip=%.1e (tol %.0e), jac rel err=%.1e (tol %.0e), min gap=%.2f, "
              "quantile err=%.1e (tol %.0e)",
              round, tol_round, jac_err, tol_jac, min_gap, quantile, tol_quantile));
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all 10 criteria passed\n");
    return 0;
}
