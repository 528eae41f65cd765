#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <stdexcept>

#include "bohm/errors.hpp"
#include "bohm/reconstruct.hpp"

using namespace bohm;

namespace {

constexpr double kPi = std::numbers::pi;

double sup_diff(const DensityField& a, const DensityField& b) {
    double sup = 0.0;
    for (size_t i = 0; i < a.value.size(); ++i) {
        if (a.flagged[i] || b.flagged[i])
            continue;
        sup = std::max(sup, std::abs(a.value[i] - b.value[i]));
    }
    return sup;
}

}  // namespace

TEST_CASE("uniform grid spans the interval inclusively") {
    const auto g = uniform_grid(-1.0, 2.0, 7);
    REQUIRE(g.size() == 7);
    CHECK(g.front() == -1.0);
    CHECK(g.back() == 2.0);
    for (size_t i = 1; i < g.size(); ++i)
        CHECK(g[i] - g[i - 1] == doctest::Approx(0.5).epsilon(1e-14));

    CHECK_THROWS_AS(uniform_grid(0.0, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(uniform_grid(1.0, 1.0, 5), std::invalid_argument);
}

TEST_CASE("reconstruction at t = 0 is the identity") {
    const auto grid = uniform_grid(-6.0, 6.0, 241);
    const auto rec = reconstruct_density(Superposition{}, grid, 0.0);
    const auto exact = exact_density_field(Superposition{}, grid, 0.0);
    CHECK(rec.provenance == Provenance::reconstructed);
    CHECK(exact.provenance == Provenance::exact);
    CHECK(sup_diff(rec, exact) == 0.0);
    CHECK(rec.flagged_count() == 0);
}

TEST_CASE("transported density reproduces the exact one") {
    // Rigid translation: after a full period the density returns home.
    const auto grid = uniform_grid(-5.0, 5.0, 201);
    const auto rec = reconstruct_density(Coherent{1.0}, grid, 2.0 * kPi);
    const auto exact = exact_density_field(Coherent{1.0}, grid, 2.0 * kPi);
    CHECK(sup_diff(rec, exact) < 1e-6);

    // Spreading packet at a point where the exact value is 1/sqrt(2 pi).
    const auto fgrid = uniform_grid(-5.0, 7.0, 481);
    const auto frec = reconstruct_density(FreeGaussian{}, fgrid, 1.0);
    const size_t at_one = 240;  // x = 1.0
    REQUIRE(frec.x[at_one] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(frec.value[at_one] ==
          doctest::Approx(1.0 / std::sqrt(2.0 * kPi)).epsilon(1e-8));
}

TEST_CASE("transport without the derivative factor is visibly wrong") {
    const auto grid = uniform_grid(-4.0, 5.0, 181);
    const auto raw = transported_density_no_jacobian(FreeGaussian{}, grid, 1.0);
    const auto exact = exact_density_field(FreeGaussian{}, grid, 1.0);
    CHECK(raw.provenance == Provenance::transported_no_jacobian);
    CHECK(sup_diff(raw, exact) > 0.1);

    // For the rigid packet the factor is identically 1, so both transports
    // coincide.
    const auto a = reconstruct_density(Coherent{1.0}, grid, 2.0);
    const auto b = transported_density_no_jacobian(Coherent{1.0}, grid, 2.0);
    CHECK(sup_diff(a, b) < 1e-9);
}

TEST_CASE("grid points transported into a node are flagged, not fatal") {
    // x = 1 at t = pi sits exactly on the superposition node.
    const auto grid = uniform_grid(-2.0, 2.0, 41);
    const auto rec = reconstruct_density(Superposition{}, grid, kPi);
    const size_t at_node = 30;  // x = 1.0
    REQUIRE(rec.x[at_node] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rec.flagged[at_node] == 1);
    CHECK(rec.value[at_node] == 0.0);
    CHECK(rec.flagged_count() == 1);

    // Neighbors are fine and accurate.
    const auto exact = exact_density_field(Superposition{}, grid, kPi);
    CHECK(rec.flagged[at_node - 1] == 0);
    CHECK(rec.flagged[at_node + 1] == 0);
    CHECK(sup_diff(rec, exact) < 1e-6);
}

TEST_CASE("reconstruction validates its grid") {
    CHECK_THROWS_AS(reconstruct_density(Coherent{1.0}, {0.0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(reconstruct_density(Coherent{1.0}, {0.0, -1.0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(reconstruct_density(Coherent{1.0}, uniform_grid(-6.0, 6.0, 11), -1.0),
                    std::invalid_argument);
}

TEST_CASE("initial sampler inverts the starting distribution") {
    const InitialSampler sampler(Coherent{1.0});
    // The t = 0 density is symmetric about x = 1.
    CHECK(std::abs(sampler.invert(0.5) - 1.0) < 1e-9);
    // 40-digit reference quantile.
    CHECK(std::abs(sampler.invert(0.8) - 1.59511608144999485) < 1e-8);
    CHECK(sampler.invert(0.2) < sampler.invert(0.5));
    CHECK(sampler.invert(0.5) < sampler.invert(0.8));

    CHECK(sampler.sample(42, 17) == sampler.sample(42, 17));
    CHECK(sampler.sample(42, 17) != sampler.sample(42, 18));

    CHECK_THROWS_AS(sampler.invert(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(sampler.invert(1.0), std::invalid_argument);
}

TEST_CASE("model cumulative distribution at reference points") {
    // Free packet at t = 1 is a normal with mean 1 and unit variance.
    CHECK(std::abs(cumulative(FreeGaussian{}, 0.0, 1.0) - 0.15865525393145705141) < 1e-10);
    CHECK(std::abs(cumulative(FreeGaussian{}, 1.0, 1.0) - 0.5) < 1e-10);
    CHECK(cumulative(Superposition{}, 9.9, 0.0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(cumulative(Superposition{}, 0.4, 0.0) < cumulative(Superposition{}, 0.6, 0.0));
}

TEST_CASE("field cumulative agrees with the model cumulative") {
    const auto grid = uniform_grid(-6.0, 8.0, 1401);
    const auto field = exact_density_field(FreeGaussian{}, grid, 1.0);
    for (double x : {-0.5, 0.0, 1.0, 2.5})
        CHECK(std::abs(cumulative(field, x) - cumulative(FreeGaussian{}, x, 1.0)) < 1e-4);
    CHECK(cumulative(field, -7.0) == 0.0);
    CHECK(cumulative(field, 9.0) == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("ensemble transport is deterministic for a fixed seed") {
    EnsembleSpec spec;
    spec.n_samples = 2000;
    spec.bins = 50;
    spec.range = {-5.0, 7.0};
    const auto a = ensemble_transport(FreeGaussian{}, spec, 1.0);
    const auto b = ensemble_transport(FreeGaussian{}, spec, 1.0);
    CHECK(a.counts == b.counts);
    REQUIRE(a.histogram.value.size() == b.histogram.value.size());
    CHECK(std::memcmp(a.histogram.value.data(), b.histogram.value.data(),
                      a.histogram.value.size() * sizeof(double)) == 0);

    spec.seed = 43;
    const auto c = ensemble_transport(FreeGaussian{}, spec, 1.0);
    CHECK(a.counts != c.counts);
}

TEST_CASE("ensemble histogram is area-normalized and accounted") {
    EnsembleSpec spec;
    spec.n_samples = 5000;
    spec.bins = 60;
    spec.range = {-5.0, 7.0};
    const auto r = ensemble_transport(FreeGaussian{}, spec, 1.0);
    CHECK(r.histogram.provenance == Provenance::histogram);

    long binned = 0;
    for (long c : r.counts)
        binned += c;
    CHECK(binned + r.dropped + r.out_of_range == spec.n_samples);
    CHECK(r.dropped == 0);

    const double width = 12.0 / spec.bins;
    double area = 0.0;
    for (double v : r.histogram.value)
        area += v * width;
    CHECK(area == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ensemble mean tracks the transported packet") {
    // Free packet at t = 2: mean 2, variance (1 + t^2)/2 = 2.5.
    EnsembleSpec spec;
    spec.n_samples = 20000;
    spec.bins = 200;
    spec.range = {-8.0, 12.0};
    const auto r = ensemble_transport(FreeGaussian{}, spec, 2.0);
    double mean = 0.0;
    long total = 0;
    for (size_t b = 0; b < r.counts.size(); ++b) {
        mean += r.histogram.x[b] * static_cast<double>(r.counts[b]);
        total += r.counts[b];
    }
    mean /= static_cast<double>(total);
    // 4 sigma / sqrt(n) ~ 0.045.
    CHECK(std::abs(mean - 2.0) < 0.05);
}

TEST_CASE("particles leaving the binned range are counted, not lost") {
    EnsembleSpec spec;
    spec.n_samples = 3000;
    spec.bins = 40;
    spec.range = {-6.0, 6.0};
    // At t = 3 the free packet has drifted to mean 3 with sigma ~1.6;
    // a visible fraction lands beyond x = 6.
    const auto r = ensemble_transport(FreeGaussian{}, spec, 3.0);
    CHECK(r.out_of_range > 0);
    long binned = 0;
    for (long c : r.counts)
        binned += c;
    CHECK(binned + r.dropped + r.out_of_range == spec.n_samples);
}

TEST_CASE("ensemble input validation") {
    EnsembleSpec spec;
    spec.n_samples = 0;
    CHECK_THROWS_AS(ensemble_transport(FreeGaussian{}, spec, 1.0), std::invalid_argument);
    spec.n_samples = 10;
    spec.bins = 1;
    CHECK_THROWS_AS(ensemble_transport(FreeGaussian{}, spec, 1.0), std::invalid_argument);
    spec.bins = 10;
    spec.range = {2.0, -2.0};
    CHECK_THROWS_AS(ensemble_transport(FreeGaussian{}, spec, 1.0), std::invalid_argument);
}

TEST_CASE("bootstrap error shrinks like one over sqrt(n)") {
    EnsembleSpec small;
    small.n_samples = 4000;
    small.bins = 50;
    small.range = {-5.0, 7.0};
    EnsembleSpec big = small;
    big.n_samples = 16000;

    const double width = 12.0 / 50;
    const auto rs = ensemble_transport(FreeGaussian{}, small, 1.0);
    const auto rb = ensemble_transport(FreeGaussian{}, big, 1.0);
    const double es = bootstrap_sup_error(rs.counts, width, 60, 7);
    const double eb = bootstrap_sup_error(rb.counts, width, 60, 7);
    CHECK(es > eb);
    CHECK(es / eb == doctest::Approx(2.0).epsilon(0.35));

    CHECK_THROWS_AS(bootstrap_sup_error({}, width, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(bootstrap_sup_error(rs.counts, 0.0, 10, 1), std::invalid_argument);
}
