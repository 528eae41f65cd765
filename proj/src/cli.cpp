#include "bohm/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "bohm/csv.hpp"
#include "bohm/errors.hpp"
#include "bohm/svg.hpp"
#include "bohm/verify.hpp"

namespace bohm {

namespace {

namespace fs = std::filesystem;

std::string time_tag(double t) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", t);
    return buf;
}

std::ofstream open_output(const fs::path& dir, const std::string& name) {
    fs::create_directories(dir);
    std::ofstream out(dir / name, std::ios::binary);
    if (!out)
        throw ConfigError("cannot open output file " + (dir / name).string());
    return out;
}

void write_report_csv(std::ostream& out, const std::vector<VerificationReport>& reports) {
    out << "check_name,metric,threshold,pass\n";
    for (const auto& r : reports)
        out << r.check_name << "," << format_g17(r.metric) << "," << format_g17(r.threshold)
            << "," << (r.pass ? "true" : "false") << "\n";
    for (const auto& r : reports) {
        if (!r.note.empty())
            out << "# " << r.check_name << ": " << r.note << "\n";
        if (r.skipped > 0)
            out << "# " << r.check_name << ": skipped " << r.skipped
                << " node-adjacent samples\n";
        for (const auto& o : r.offenders)
            out << "# " << r.check_name << ": offender x=" << format_g17(o.x)
                << " t=" << format_g17(o.t) << " value=" << format_g17(o.value) << "\n";
    }
}

int report_exit(const std::vector<VerificationReport>& reports) {
    for (const auto& r : reports)
        if (!r.pass)
            return 1;
    return 0;
}

void print_reports(const std::vector<VerificationReport>& reports) {
    for (const auto& r : reports)
        std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.check_name
                  << "  metric=" << r.metric << "  threshold=" << r.threshold << "\n";
}

}  // namespace

int cmd_reconstruct(const RunConfig& config) {
    const WaveModel model = make_model(config);
    const SolverOptions opts = solver_options(config);
    const auto grid = uniform_grid(config.grid_min, config.grid_max, config.grid_n);

    for (double t : config.times) {
        const DensityField exact = exact_density_field(model, grid, t);
        const DensityField rec = reconstruct_density(model, grid, t, opts);
        const DensityField raw = transported_density_no_jacobian(model, grid, t, opts);

        std::vector<double> abs_err(grid.size(), 0.0);
        double max_err = 0.0;
        for (size_t i = 0; i < grid.size(); ++i) {
            if (rec.flagged[i])
                continue;
            abs_err[i] = std::abs(rec.value[i] - exact.value[i]);
            max_err = std::max(max_err, abs_err[i]);
        }

        std::vector<std::string> comments;
        {
            std::ostringstream c;
            c << "t = " << format_g17(t) << ", model = " << config.model
              << ", max abs_err = " << format_g17(max_err);
            comments.push_back(c.str());
        }
        if (rec.flagged_count() > 0) {
            std::ostringstream c;
            c << "flagged_points = " << rec.flagged_count()
              << " (node-adjacent, values zeroed)";
            comments.push_back(c.str());
        }

        const std::string stem = "reconstruct_t" + time_tag(t);
        auto csv = open_output(config.output_path, stem + ".csv");
        write_csv(csv,
                  {{"x", &grid},
                   {"rho_exact", &exact.value},
                   {"rho_reconstructed", &rec.value},
                   {"rho_no_jacobian", &raw.value},
                   {"abs_err", &abs_err}},
                  comments);

        if (config.output_format == "csv+svg") {
            auto svg = open_output(config.output_path, stem + ".svg");
            write_line_chart(svg, "Density transport at t = " + time_tag(t), "x", "density",
                             {{"exact", "#000000", &grid, &exact.value, &exact.flagged},
                              {"reconstructed", "#d62728", &grid, &rec.value, &rec.flagged},
                              {"no transport factor", "#1f77b4", &grid, &raw.value,
                               &raw.flagged}});
        }
    }
    return 0;
}

int cmd_ensemble(const RunConfig& config) {
    const WaveModel model = make_model(config);
    const SolverOptions opts = solver_options(config);
    EnsembleSpec spec;
    spec.n_samples = config.ensemble_samples;
    spec.seed = config.ensemble_seed;
    spec.bins = config.ensemble_bins;
    spec.range = {config.grid_min, config.grid_max};

    for (double t : config.times) {
        const EnsembleResult result = ensemble_transport(model, spec, t, opts);
        const DensityField exact = exact_density_field(model, result.histogram.x, t);

        std::vector<std::string> comments;
        {
            std::ostringstream c;
            c << "t = " << format_g17(t) << ", samples = " << spec.n_samples
              << ", seed = " << spec.seed << ", dropped = " << result.dropped
              << ", out_of_range = " << result.out_of_range;
            comments.push_back(c.str());
        }

        const std::string stem = "ensemble_t" + time_tag(t);
        auto csv = open_output(config.output_path, stem + ".csv");
        write_csv(csv,
                  {{"bin_center", &result.histogram.x},
                   {"histogram_density", &result.histogram.value},
                   {"rho_exact", &exact.value}},
                  comments);

        if (config.output_format == "csv+svg") {
            auto svg = open_output(config.output_path, stem + ".svg");
            write_line_chart(svg, "Ensemble transport at t = " + time_tag(t), "x", "density",
                             {{"histogram", "#1f77b4", &result.histogram.x,
                               &result.histogram.value, nullptr},
                              {"exact", "#000000", &exact.x, &exact.value, nullptr}});
        }
    }
    return 0;
}

int cmd_verify(const RunConfig& config) {
    const auto reports = run_full_suite(solver_options(config));
    auto csv = open_output(config.output_path, "verify_report.csv");
    write_report_csv(csv, reports);
    print_reports(reports);
    return report_exit(reports);
}

int cmd_figure1(const RunConfig& config) {
    const SolverOptions opts = solver_options(config);
    const auto grid = uniform_grid(config.grid_min, config.grid_max, config.grid_n);
    const Figure1Data data = figure1_dataset(grid, opts);

    double sup = 0.0;
    for (size_t i = 0; i < grid.size(); ++i)
        if (!data.flagged[i])
            sup = std::max(sup, std::abs(data.r_exact[i] - data.r_transported[i]));

    std::vector<std::string> comments;
    {
        std::ostringstream c;
        c << "superposition amplitudes at t = pi; sup |R_exact - R_transported| = "
          << format_g17(sup);
        comments.push_back(c.str());
    }
    if (const long flagged = std::count(data.flagged.begin(), data.flagged.end(), 1); flagged) {
        std::ostringstream c;
        c << "flagged_points = " << flagged << " (node-adjacent, values zeroed)";
        comments.push_back(c.str());
    }

    auto csv = open_output(config.output_path, "figure1.csv");
    write_csv(csv,
              {{"x", &grid}, {"R_exact", &data.r_exact}, {"R_transported", &data.r_transported}},
              comments);

    if (config.output_format == "csv+svg") {
        auto svg = open_output(config.output_path, "figure1.svg");
        write_line_chart(svg, "Amplitude transport without the density correction", "x", "R",
                         {{"R exact", "#000000", &grid, &data.r_exact, &data.flagged},
                          {"R transported", "#d62728", &grid, &data.r_transported,
                           &data.flagged}});
    }
    return 0;
}

int cmd_tdse_check(const RunConfig& config) {
    const auto reports = tdse_check_suite();
    auto csv = open_output(config.output_path, "tdse_report.csv");
    write_report_csv(csv, reports);
    print_reports(reports);
    return report_exit(reports);
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Bohmian trajectory density-transport toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_dir;
    const struct {
        const char* name;
        const char* desc;
        int (*fn)(const RunConfig&);
    } commands[] = {
        {"reconstruct", "pull a later-time density back through the flow map", cmd_reconstruct},
        {"ensemble", "Monte Carlo transport of sampled initial positions", cmd_ensemble},
        {"verify", "run the deterministic verification suite", cmd_verify},
        {"figure1", "superposition amplitude comparison at t = pi", cmd_figure1},
        {"tdse-check", "grid-propagator oracle checks", cmd_tdse_check},
    };
    for (const auto& c : commands) {
        auto* sub = app.add_subcommand(c.name, c.desc);
        sub->add_option("--config", config_path, "run configuration file")->required();
        sub->add_option("--output", output_dir, "output directory (overrides output.path)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        RunConfig config = parse_config_file(config_path);
        if (!output_dir.empty())
            config.output_path = output_dir;
        validate_config(config);
        for (const auto& c : commands)
            if (app.got_subcommand(c.name))
                return c.fn(config);
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace bohm
