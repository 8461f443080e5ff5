// mco-lab: run one experiment and write its result table.
//
//   mco-lab <experiment> --seed N [--reps N] [--samples N] [--out PATH] [--plot]
//           [--config FILE] [--set key=value ...] [experiment flags]
//
// Exit codes: 0 ok, 1 bad usage or configuration, 2 runtime failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "mco/experiments.hpp"

namespace {

// Flags forwarded verbatim into the experiment parameters.
const char* const kParamFlags[] = {
    "K",          "rho",    "model",  "sampler",      "components", "atoms",   "probs",
    "steps",      "draws",  "concentration", "pairs", "sigmas_failure", "sigmas_taylor", "ig_shape",
    "ig_scale",   "stability", "mean", "observations", "narrow",    "dof",     "kmax",
    "prior",      "likelihood", "proposal",
};

mco::ExperimentConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw mco::ConfigError("cannot read config " + path);
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception& e) {
        throw mco::ConfigError("bad config " + path + ": " + e.what());
    }
    mco::ExperimentConfig c;
    try {
        if (j.contains("experiment")) c.name = j.at("experiment").get<std::string>();
        if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("reps")) c.reps = j.at("reps").get<std::size_t>();
        if (j.contains("samples")) c.samples = j.at("samples").get<std::size_t>();
        if (j.contains("out")) c.out = j.at("out").get<std::string>();
        if (j.contains("plot")) c.plot = j.at("plot").get<bool>();
        if (j.contains("params")) {
            if (!j.at("params").is_object()) throw mco::ConfigError("params must be an object");
            c.params = j.at("params");
        }
    } catch (const nlohmann::json::exception& e) {
        throw mco::ConfigError("bad config " + path + ": " + e.what());
    }
    return c;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo objective experiments"};
    std::string name;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> reps, samples;
    std::string out, config_path;
    bool plot = false;
    std::vector<std::string> sets;
    std::map<std::string, std::string> flags;

    std::string names;
    for (const auto& n : mco::experiment_names()) names += "\n  " + n;
    app.add_option("experiment", name, "experiment name:" + names);
    app.add_option("--seed", seed, "root seed (required)");
    app.add_option("--reps", reps, "replications");
    app.add_option("--samples", samples, "samples per estimate");
    app.add_option("--out", out, "CSV output path (default stdout)");
    app.add_flag("--plot", plot, "also write an SVG next to the CSV");
    app.add_option("--config", config_path, "JSON config; flags override it");
    app.add_option("--set", sets, "extra parameter key=value");
    for (const char* f : kParamFlags) app.add_option(std::string("--") + f, flags[f], "experiment parameter");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        mco::ExperimentConfig c = config_path.empty() ? mco::ExperimentConfig{} : load_config(config_path);
        if (!name.empty()) c.name = name;
        if (c.name.empty()) throw mco::ConfigError("no experiment given; valid names:" + names);
        if (seed) c.seed = *seed;
        else if (config_path.empty()) throw mco::ConfigError("--seed is required");
        if (reps) c.reps = reps;
        if (samples) c.samples = samples;
        if (!out.empty()) c.out = out;
        if (plot) c.plot = true;
        for (const auto& [k, v] : flags)
            if (!v.empty()) c.params[k] = v;
        for (const auto& s : sets) {
            const auto eq = s.find('=');
            if (eq == std::string::npos || eq == 0) throw mco::ConfigError("--set expects key=value, got " + s);
            c.params[s.substr(0, eq)] = s.substr(eq + 1);
        }
        if (c.plot && c.out.empty()) throw mco::ConfigError("--plot needs --out");

        const mco::ResultTable t = mco::run(c);
        if (c.out.empty())
            std::cout << mco::to_csv(t);
        else
            mco::emit(t, c.out, c.plot);
    } catch (const mco::ConfigError& e) {
        std::cerr << "mco-lab: " << e.what() << "\n";
        return 1;
    } catch (const mco::Error& e) {
        std::cerr << "mco-lab: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
