#include "bohm/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "bohm/csv.hpp"
#include "bohm/errors.hpp"
#include "bohm/tdse.hpp"

namespace bohm {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos)
        return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size() || !std::isfinite(v))
            throw ConfigError("config: bad numeric value for " + key + ": " + value);
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError("config: bad numeric value for " + key + ": " + value);
    }
}

long parse_integer(const std::string& key, const std::string& value) {
    const double v = parse_double(key, value);
    if (v != std::floor(v))
        throw ConfigError("config: expected an integer for " + key + ": " + value);
    return static_cast<long>(v);
}

std::vector<double> parse_times(const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty())
            out.push_back(parse_double("t", item));
    }
    return out;
}

bool is_power_of_two(int n) {
    return n > 0 && (n & (n - 1)) == 0;
}

}  // namespace

RunConfig parse_config(std::istream& in) {
    RunConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "model") {
            cfg.model = value;
        } else if (key == "d") {
            cfg.d = parse_double(key, value);
        } else if (key == "t") {
            cfg.times = parse_times(value);
        } else if (key == "grid.min") {
            cfg.grid_min = parse_double(key, value);
        } else if (key == "grid.max") {
            cfg.grid_max = parse_double(key, value);
        } else if (key == "grid.n") {
            cfg.grid_n = static_cast<int>(parse_integer(key, value));
        } else if (key == "ode.method") {
            if (value == "adaptive")
                cfg.ode_method = OdeMethod::adaptive;
            else if (value == "rk4")
                cfg.ode_method = OdeMethod::rk4;
            else
                throw ConfigError("config: ode.method must be adaptive or rk4, got " + value);
        } else if (key == "ode.tol") {
            cfg.ode_tol = parse_double(key, value);
        } else if (key == "ode.dt_max") {
            cfg.ode_dt_max = parse_double(key, value);
        } else if (key == "ensemble.samples") {
            cfg.ensemble_samples = parse_integer(key, value);
        } else if (key == "ensemble.seed") {
            const long v = parse_integer(key, value);
            if (v < 0)
                throw ConfigError("config: ensemble.seed must be nonnegative");
            cfg.ensemble_seed = static_cast<std::uint64_t>(v);
        } else if (key == "ensemble.bins") {
            cfg.ensemble_bins = static_cast<int>(parse_integer(key, value));
        } else if (key == "output.path") {
            cfg.output_path = value;
        } else if (key == "output.format") {
            cfg.output_format = value;
        } else {
            throw ConfigError("config: unknown key " + key);
        }
    }
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config: cannot open " + path);
    return parse_config(in);
}

std::string serialize_config(const RunConfig& c) {
    std::ostringstream out;
    out << "model = " << c.model << "\n";
    out << "d = " << format_g17(c.d) << "\n";
    out << "t = ";
    for (size_t i = 0; i < c.times.size(); ++i)
        out << (i ? "," : "") << format_g17(c.times[i]);
    out << "\n";
    out << "grid.min = " << format_g17(c.grid_min) << "\n";
    out << "grid.max = " << format_g17(c.grid_max) << "\n";
    out << "grid.n = " << c.grid_n << "\n";
    out << "ode.method = " << (c.ode_method == OdeMethod::adaptive ? "adaptive" : "rk4") << "\n";
    out << "ode.tol = " << format_g17(c.ode_tol) << "\n";
    out << "ode.dt_max = " << format_g17(c.ode_dt_max) << "\n";
    out << "ensemble.samples = " << c.ensemble_samples << "\n";
    out << "ensemble.seed = " << c.ensemble_seed << "\n";
    out << "ensemble.bins = " << c.ensemble_bins << "\n";
    out << "output.path = " << c.output_path << "\n";
    out << "output.format = " << c.output_format << "\n";
    return out.str();
}

bool operator==(const RunConfig& a, const RunConfig& b) {
    return a.model == b.model && a.d == b.d && a.times == b.times && a.grid_min == b.grid_min &&
           a.grid_max == b.grid_max && a.grid_n == b.grid_n && a.ode_method == b.ode_method &&
           a.ode_tol == b.ode_tol && a.ode_dt_max == b.ode_dt_max &&
           a.ensemble_samples == b.ensemble_samples && a.ensemble_seed == b.ensemble_seed &&
           a.ensemble_bins == b.ensemble_bins && a.output_path == b.output_path &&
           a.output_format == b.output_format;
}

void validate_config(const RunConfig& c) {
    static const std::vector<std::string> models{"coherent",      "free",
                                                 "superposition", "tdse:coherent",
                                                 "tdse:free",     "tdse:superposition"};
    if (std::find(models.begin(), models.end(), c.model) == models.end())
        throw ConfigError("config: unknown model " + c.model);
    if (!std::isfinite(c.d))
        throw ConfigError("config: d must be finite");
    if (c.times.empty())
        throw ConfigError("config: time list is empty");
    for (double t : c.times)
        if (!std::isfinite(t) || t < 0.0)
            throw ConfigError("config: times must be finite and nonnegative");
    if (!(c.grid_min < c.grid_max))
        throw ConfigError("config: grid.min must be below grid.max");
    if (c.grid_n < 2)
        throw ConfigError("config: grid.n must be at least 2");
    if (!(c.ode_tol > 0.0) || !(c.ode_dt_max > 0.0))
        throw ConfigError("config: ode tolerances must be positive");
    if (c.ensemble_samples < 1)
        throw ConfigError("config: ensemble.samples must be at least 1");
    if (c.ensemble_bins < 2)
        throw ConfigError("config: ensemble.bins must be at least 2");
    if (c.output_format != "csv" && c.output_format != "csv+svg")
        throw ConfigError("config: output.format must be csv or csv+svg");
    if (c.output_path.empty())
        throw ConfigError("config: output.path is empty");
}

SolverOptions solver_options(const RunConfig& c) {
    SolverOptions opts;
    opts.method = c.ode_method;
    opts.abs_tol = c.ode_tol;
    opts.rel_tol = c.ode_tol;
    opts.dt_max = c.ode_dt_max;
    return opts;
}

WaveModel make_model(const RunConfig& c) {
    auto base_of = [&](const std::string& name) -> WaveModel {
        if (name == "coherent")
            return Coherent{c.d};
        if (name == "free")
            return FreeGaussian{};
        if (name == "superposition")
            return Superposition{};
        throw ConfigError("config: unknown model " + name);
    };
    if (c.model.rfind("tdse:", 0) != 0)
        return base_of(c.model);

    const WaveModel base = base_of(c.model.substr(5));
    const double t_max = *std::max_element(c.times.begin(), c.times.end());
    Interval domain{-12.0, 12.0};
    if (std::holds_alternative<FreeGaussian>(base))
        domain = {-16.0 - t_max, 16.0 + t_max};
    // keep the grid spacing near the 24/1024 baseline
    int n = 1024;
    while (n * 24 < 1024 * (domain.hi - domain.lo) && is_power_of_two(n))
        n *= 2;
    return make_numeric_model(base, domain, n, t_max);
}

}  // namespace bohm
