// SPDX-License-Identifier: Apache-2.0
//
// Named fixture shapes used by experiments and tests.

#ifndef MOLAB_FIXTURES_HPP
#define MOLAB_FIXTURES_HPP

#include <string>

#include "molab/grid.hpp"

namespace molab {

struct FixtureSpec {
    std::string shape = "hat"; // hat | hat_power | plateau | csv | binary
    Point center{};
    double width = 0.5;
    double amplitude = 1.0;
    double theta = 2.0;  // hat_power exponent
    double inner = 0.3;  // plateau inner radius
    double outer = 0.6;  // plateau outer radius
    std::string path;    // csv / binary source
};

// hat: A max(0, 1 - |x-c|/w).
// hat_power: hat^theta (gradient in C^{0,theta-1}).
// plateau: 1 inside `inner`, 0 outside `outer`, smooth in between.
GridFunction make_fixture(const GridDomainPtr& domain, const FixtureSpec& spec);

} // namespace molab

#endif
