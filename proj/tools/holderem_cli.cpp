// Command-line experiment runner. Exit status: 0 success, 1 acceptance
// failure or runtime error, 2 configuration error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "holderem/errors.hpp"
#include "holderem/experiments.hpp"

namespace {

struct Flags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> samples;
    std::optional<std::string> out;
    std::optional<std::size_t> threads;
    std::optional<std::string> model;
};

holderem::Json read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw holderem::ConfigError("--config", "cannot open '" + path + "'");
    try {
        return holderem::Json::parse(in);
    } catch (const holderem::Json::parse_error& e) {
        throw holderem::ConfigError("--config", std::string("invalid JSON: ") + e.what());
    }
}

holderem::ExperimentConfig build_config(const std::string& experiment, const Flags& flags) {
    holderem::Json j = flags.config.empty() ? holderem::Json::object() : read_config(flags.config);
    if (!j.is_object()) throw holderem::ConfigError("$", "config must be a JSON object");
    if (j.contains("experiment") && j["experiment"] != experiment) {
        throw holderem::ConfigError("experiment", "config is for '" + j["experiment"].dump() +
                                                      "' but the subcommand is '" + experiment + "'");
    }
    j["experiment"] = experiment;
    if (flags.seed) j["seed"] = *flags.seed;
    if (flags.samples) j["samples"] = *flags.samples;
    if (flags.out) j["out"] = *flags.out;
    if (flags.threads) j["threads"] = *flags.threads;
    if (flags.model) {
        if (!flags.model->empty() && flags.model->front() == '{') {
            try {
                j["model"] = holderem::Json::parse(*flags.model);
            } catch (const holderem::Json::parse_error& e) {
                throw holderem::ConfigError("--model", std::string("invalid JSON: ") + e.what());
            }
        } else {
            j["model"] = *flags.model;
        }
    }
    return holderem::config_from_json(j);
}

int run(const holderem::ExperimentConfig& cfg) {
    const holderem::Outcome outcome = holderem::run_experiment(cfg);
    std::ostream* summary = &std::cout;
    if (cfg.out.empty()) {
        holderem::write_csv(std::cout, outcome.rows);
        summary = &std::cerr;
    } else {
        std::ofstream file(cfg.out, std::ios::binary);
        if (!file) throw holderem::ConfigError("out", "cannot write '" + cfg.out + "'");
        holderem::write_csv(file, outcome.rows);
    }
    for (const auto& line : outcome.summary) *summary << line << '\n';
    return outcome.passed ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coupled Euler-Maruyama experiments with Hoelder-norm error statistics"};
    app.require_subcommand(1);
    Flags flags;
    std::string chosen;
    for (const auto& name : holderem::experiment_names()) {
        CLI::App* sub = app.add_subcommand(name, "run the " + name + " experiment");
        sub->add_option("--config", flags.config, "JSON config file")->check(CLI::ExistingFile);
        sub->add_option("--seed", flags.seed, "random seed");
        sub->add_option("--samples", flags.samples, "Monte Carlo samples M");
        sub->add_option("--out", flags.out, "CSV output path (default: stdout)");
        sub->add_option("--threads", flags.threads, "worker threads (0: hardware concurrency)");
        sub->add_option("--model", flags.model, "builtin model name or JSON model object");
        sub->callback([&chosen, name] { chosen = name; });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        return run(build_config(chosen, flags));
    } catch (const holderem::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
