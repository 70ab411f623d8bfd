// SPDX-License-Identifier: Apache-2.0
//
// Experiment configuration: a single JSON document binding a family, a
// domain, fixtures, optional cover, schedules, and the checks to run.

#ifndef MOLAB_CONFIG_HPP
#define MOLAB_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "molab/fixtures.hpp"
#include "molab/grid.hpp"
#include "molab/mollify.hpp"
#include "molab/phi.hpp"

namespace molab {

struct CoverConfig {
    bool auto_interval = false;
    std::vector<CoverPiece> pieces;
    Box compact_k;
    bool has_k = false;
};

struct ExperimentConfig {
    std::uint64_t seed = 42;
    int threads = 1;

    PhiPtr family;
    std::string family_label;
    // Double-phase parameters when present (drive the range experiment).
    std::optional<double> p, q, alpha;
    std::optional<ScalarField> a_field;

    GridDomainPtr domain;
    std::optional<FixtureSpec> fixture;
    std::optional<CoverConfig> cover;

    std::vector<double> eps_schedule;
    std::vector<double> lambda_sweep;
    std::vector<std::string> checks;

    std::optional<double> growth_p;
    double eta = 1e-2;
    std::vector<double> conjugate_p_list{1.5, 2.0, 3.0};
    int norm_fixture_count = 50;
};

// Parses the JSON text. Throws std::runtime_error with a diagnostic on
// malformed input; referenced fixture files are opened lazily by the
// runner.
ExperimentConfig parse_config(const std::string& json_text,
                              const std::string& base_dir = "");

} // namespace molab

#endif
