#include "vortexwave/errors.hpp"
#include "vortexwave/scenario.hpp"
#include "vortexwave/specfun.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

#ifndef VORTEXWAVE_CONFIG_DIR
#define VORTEXWAVE_CONFIG_DIR "configs"
#endif

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

const std::vector<std::string> kSuites = {
    "euclid-tube", "euclid-halfflux", "shadow", "double-image", "spin-gate"};

std::string read_file(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f) throw vortexwave::ConfigError("cannot read config file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<std::pair<std::string, std::string>>
split_overrides(const std::vector<std::string>& sets)
{
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& s : sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw vortexwave::ConfigError("--set expects key=value, got '" + s + "'");
        out.emplace_back(s.substr(0, eq), s.substr(eq + 1));
    }
    return out;
}

int resolve_threads(int cli_threads)
{
    if (cli_threads > 0) return cli_threads;
    if (const char* env = std::getenv("VORTEXWAVE_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"scattering off an impenetrable magnetic vortex in conical space"};
    app.require_subcommand(1);

    std::string config_path, out_path, format;
    std::vector<std::string> sets;
    int threads = 0;

    auto* run = app.add_subcommand("run", "execute a scenario config");
    run->add_option("config", config_path, "config file")->required();
    run->add_option("--out", out_path, "output path (default from config, '-' = stdout)");
    run->add_option("--format", format, "csv or json (overrides config)");
    run->add_option("--threads", threads, "worker threads (env VORTEXWAVE_THREADS)");
    run->add_option("--set", sets, "override config keys, key=value");

    std::string suite = "all";
    std::string config_dir = VORTEXWAVE_CONFIG_DIR;
    auto* verify = app.add_subcommand("verify", "run the invariant suites on the canonical configs");
    verify->add_option("--suite", suite, "one canonical suite (default: all)");
    verify->add_option("--config-dir", config_dir, "directory holding the canonical configs");
    verify->add_option("--threads", threads, "worker threads");
    verify->add_option("--out", out_path, "report path ('-' = stdout)");

    double nu = 0.0, x = 0.0;
    auto* oracle = app.add_subcommand("oracle", "print Bessel kernel values (debug)");
    oracle->add_option("nu", nu, "order (>= 0)")->required();
    oracle->add_option("x", x, "argument (> 0)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (run->parsed()) {
            auto overrides = split_overrides(sets);
            if (!format.empty()) overrides.emplace_back("output.format", format);
            if (!out_path.empty()) overrides.emplace_back("output.path", out_path);
            vortexwave::cli::ScenarioConfig cfg;
            try {
                cfg = vortexwave::cli::parse_config(read_file(config_path), overrides);
            } catch (const vortexwave::ConfigError& e) {
                std::cerr << "config error: " << e.what() << "\n";
                return kExitUsage;
            }
            const auto out = vortexwave::cli::run_scenario(cfg, resolve_threads(threads));
            emit(out, cfg, std::cout);
            if (!out.report.all_pass()) return kExitNumerical;
            return kExitOk;
        }

        if (verify->parsed()) {
            std::vector<std::string> names;
            if (suite == "all") names = kSuites;
            else if (std::find(kSuites.begin(), kSuites.end(), suite) != kSuites.end())
                names = {suite};
            else {
                std::cerr << "unknown suite '" << suite << "'\n";
                return kExitUsage;
            }
            nlohmann::ordered_json report;
            bool all_pass = true;
            for (const auto& name : names) {
                const std::string path = config_dir + "/" + name + ".cfg";
                vortexwave::cli::ScenarioConfig cfg;
                try {
                    cfg = vortexwave::cli::parse_config(
                        read_file(path), {{"scenario", "verify"},
                                          {"output.format", "json"}});
                } catch (const vortexwave::ConfigError& e) {
                    std::cerr << "config error in " << path << ": " << e.what() << "\n";
                    return kExitUsage;
                }
                const auto out =
                    vortexwave::cli::run_scenario(cfg, resolve_threads(threads));
                nlohmann::ordered_json checks = nlohmann::ordered_json::array();
                for (const auto& c : out.report.checks) {
                    nlohmann::ordered_json cj;
                    cj["name"] = c.name;
                    cj["pass"] = c.pass;
                    cj["value"] = c.value;
                    cj["threshold"] = c.threshold;
                    checks.push_back(std::move(cj));
                    all_pass = all_pass && c.pass;
                }
                report[name]["checks"] = checks;
                nlohmann::ordered_json scalars;
                for (const auto& [sname, v] : out.report.scalars) scalars[sname] = v;
                report[name]["scalars"] = scalars;
            }
            report["all_pass"] = all_pass;
            const std::string payload = report.dump(2) + "\n";
            if (out_path.empty() || out_path == "-") {
                std::cout << payload;
            } else {
                std::ofstream f(out_path, std::ios::binary);
                if (!f) {
                    std::cerr << "cannot open " << out_path << "\n";
                    return kExitUsage;
                }
                f << payload;
            }
            return all_pass ? kExitOk : kExitNumerical;
        }

        if (oracle->parsed()) {
            const double j = vortexwave::specfun::bessel_j(nu, x);
            const double y = vortexwave::specfun::bessel_y(nu, x);
            const auto r = vortexwave::specfun::jh_ratio(nu, x);
            std::printf("J(%.17g, %.17g) = %.17g\n", nu, x, j);
            std::printf("Y(%.17g, %.17g) = %.17g\n", nu, x, y);
            std::printf("H1 = %.17g %+.17gi\n", j, y);
            std::printf("J/H1 = %.17g %+.17gi\n", r.real(), r.imag());
            return kExitOk;
        }
    } catch (const vortexwave::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const vortexwave::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}
