// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Talks to the core exclusively through the C
// API in molab.h.
//
// Exit codes: 0 all requested certifications passed, 1 a certification
// failed (worst witness printed), 2 malformed config or I/O problem.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "molab.h"

namespace {

int run_one(const std::string& subcommand, const std::string& config_path,
            const std::string& out_dir, std::uint64_t seed, int threads) {
    std::ifstream in(config_path);
    if (!in) {
        std::cerr << "error: cannot read config file '" << config_path << "'\n";
        return 2;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();

    std::string config_dir = ".";
    const auto slash = config_path.find_last_of('/');
    if (slash != std::string::npos) config_dir = config_path.substr(0, slash);

    char* report = nullptr;
    const molab_status status =
        molab_run(subcommand.c_str(), buffer.str().c_str(), config_dir.c_str(),
                  out_dir.c_str(), seed, threads, &report);
    if (report) {
        std::cout << report;
        molab_string_free(report);
    }
    switch (status) {
        case MOLAB_OK:
            return 0;
        case MOLAB_ERR_NUMERIC:
            std::cerr << "certification failed: " << molab_last_error() << "\n";
            return 1;
        default:
            std::cerr << "error: " << molab_last_error() << "\n";
            return 2;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for Musielak-Orlicz modular analysis"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0; // 0: defer to the config
    int threads = 0;

    const std::vector<std::string> names = {"verify-lemmas", "conjugate", "norm",
                                            "mollify", "lavrentiev", "witness"};
    const std::vector<std::string> descriptions = {
        "certify the quantitative lemmas on the configured family and fixture",
        "conjugation tables, biconjugation and the Young inequality",
        "Luxemburg norm properties on random fixtures",
        "mollification convergence along the eps schedule",
        "double-phase approximation experiment with the range verdict",
        "emit the domination witness and its scaling behaviour"};

    for (size_t i = 0; i < names.size(); ++i) {
        CLI::App* sub = app.add_subcommand(names[i], descriptions[i]);
        sub->add_option("--config", config_path, "experiment config (JSON)")
            ->required();
        sub->add_option("--out", out_dir, "output directory for reports");
        sub->add_option("--seed", seed, "override the config RNG seed");
        sub->add_option("--threads", threads, "worker threads for heavy loops");
    }

    CLI11_PARSE(app, argc, argv);
    const std::string chosen = app.get_subcommands().front()->get_name();
    return run_one(chosen, config_path, out_dir, seed, threads);
}
