// SPDX-License-Identifier: Apache-2.0
//
// Config-driven experiment runner behind the CLI subcommands.

#ifndef MOLAB_RUNNER_HPP
#define MOLAB_RUNNER_HPP

#include <cstdint>
#include <optional>
#include <string>

namespace molab {

struct RunResult {
    bool ok = false;           // every requested certification passed
    std::string report_json;   // full report document
    std::string worst_witness; // short description of the worst failure
};

// Subcommands: verify-lemmas | conjugate | norm | mollify | lavrentiev |
// witness. Throws std::runtime_error on malformed configs or IO errors;
// certification failures are reported through `ok`, not thrown.
RunResult run_subcommand(const std::string& subcommand,
                         const std::string& config_text,
                         const std::string& out_dir,
                         std::optional<std::uint64_t> seed_override,
                         std::optional<int> threads_override,
                         const std::string& config_base_dir = "");

} // namespace molab

#endif
