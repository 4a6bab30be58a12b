// uavcre: coverage, rate and SE sweeps for two-band UAV networks, plus the oracle suite.

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "uavcre/config.hpp"
#include "uavcre/errors.hpp"
#include "uavcre/experiments.hpp"

namespace {

enum ExitCode { kOk = 0, kValidationFailed = 1, kConfigError = 2, kNumericError = 3 };

struct Overrides
{
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<long> trials;
    std::optional<std::string> out;
    std::optional<std::string> gain_mode;
    std::optional<std::string> policy;
};

uavcre::ExperimentConfig resolve(const Overrides& o)
{
    using namespace uavcre;
    ExperimentConfig cfg = o.config_path.empty() ? default_config() : load_config(o.config_path);
    try {
        if (o.seed)
            cfg.sim.master_seed = *o.seed;
        if (o.trials) {
            if (*o.trials < 1)
                throw ConfigError("--trials must be at least 1");
            cfg.sim.n_trials = *o.trials;
        }
        if (o.out)
            cfg.output_path = *o.out;
        if (o.gain_mode)
            cfg.sim.gain_mode = parse_gain_mode(*o.gain_mode);
        if (o.policy)
            cfg.sim.policy = AssociationPolicy::parse(*o.policy);
    }
    catch (const ParameterError& e) {
        throw ConfigError(e.what());
    }
    cfg.validate();
    return cfg;
}

// Writes the whole document at once, to the configured path or stdout.
void emit(const uavcre::ExperimentConfig& cfg, const std::string& text)
{
    if (cfg.output_path.empty() || cfg.output_path == "-") {
        std::cout << text << std::flush;
        return;
    }
    std::ofstream out(cfg.output_path, std::ios::binary);
    if (!out)
        throw uavcre::ConfigError("cannot open output file '" + cfg.output_path + "'");
    out << text;
    if (!out.flush())
        throw uavcre::ConfigError("failed writing '" + cfg.output_path + "'");
}

int run_sweep(const Overrides& o, const char* name,
              const std::function<uavcre::Table(const uavcre::ExperimentConfig&)>& sweep)
{
    const auto cfg = resolve(o);
    const uavcre::Table table = sweep(cfg);
    std::ostringstream csv;
    uavcre::write_csv(table, csv);
    emit(cfg, csv.str());
    std::cerr << name << ": " << table.rows.size() << " rows, " << table.trials << " trials, "
              << table.redraws << " empty-band redraws\n";
    return kOk;
}

int run_validate(const Overrides& o)
{
    const auto cfg = resolve(o);
    const auto checks = uavcre::validate_suite(cfg);
    std::ostringstream csv;
    uavcre::write_checks_csv(checks, csv);
    emit(cfg, csv.str());
    long failed = 0;
    for (const auto& c : checks)
        failed += c.passed ? 0 : 1;
    std::cerr << "validate: " << checks.size() - failed << "/" << checks.size() << " checks passed\n";
    return failed == 0 ? kOk : kValidationFailed;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Analytic and Monte Carlo evaluation of two-band UAV networks with biased association"};
    app.require_subcommand(1);

    Overrides o;
    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", o.config_path, "YAML experiment file")->check(CLI::ExistingFile);
        cmd->add_option("--seed", o.seed, "master seed");
        cmd->add_option("--trials", o.trials, "Monte Carlo trials");
        cmd->add_option("--out", o.out, "output CSV path (default stdout)");
        cmd->add_option("--gain-mode", o.gain_mode, "interferer gain: geometric or approximate")
            ->check(CLI::IsMember({"geometric", "approximate"}));
        cmd->add_option("--policy", o.policy, "association: cre, map or beta=<float>");
    };

    auto* coverage = app.add_subcommand("coverage-sweep", "coverage probability vs SINR threshold");
    auto* rate = app.add_subcommand("rate-vs-density", "per-user rate vs mmWave/low-band density ratio");
    auto* se = app.add_subcommand("se-vs-antennas", "spectral efficiency vs mmWave array size");
    auto* validate = app.add_subcommand("validate", "run the oracle suite");
    for (auto* cmd : {coverage, rate, se, validate})
        add_common(cmd);

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kConfigError;
    }

    try {
        if (coverage->parsed())
            return run_sweep(o, "coverage-sweep", uavcre::coverage_sweep);
        if (rate->parsed())
            return run_sweep(o, "rate-vs-density", uavcre::rate_vs_density);
        if (se->parsed())
            return run_sweep(o, "se-vs-antennas", uavcre::se_vs_antennas);
        return run_validate(o);
    }
    catch (const uavcre::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    }
    catch (const uavcre::ParameterError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    }
    catch (const uavcre::NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return kNumericError;
    }
    catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumericError;
    }
}
