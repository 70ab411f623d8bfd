// SPDX-License-Identifier: Apache-2.0

#include "molab/fixtures.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "molab/mollify.hpp"

namespace molab {

GridFunction make_fixture(const GridDomainPtr& domain, const FixtureSpec& spec) {
    if (spec.shape == "csv") {
        std::ifstream in(spec.path);
        if (!in) throw std::runtime_error("cannot open fixture file " + spec.path);
        return read_csv(domain, in);
    }
    if (spec.shape == "binary") {
        GridFunction u = read_binary(spec.path);
        if (!u.domain().same_layout(*domain))
            throw std::runtime_error("fixture grid does not match the domain");
        return GridFunction(domain, u.values());
    }

    const Point c = spec.center;
    const double w = spec.width;
    const double A = spec.amplitude;
    if (spec.shape == "hat") {
        return GridFunction::from_callable(domain, [c, w, A](const Point& x) {
            return A * std::max(0.0, 1.0 - x.distance(c) / w);
        });
    }
    if (spec.shape == "hat_power") {
        const double theta = spec.theta;
        return GridFunction::from_callable(domain, [c, w, A, theta](const Point& x) {
            const double t = std::max(0.0, 1.0 - x.distance(c) / w);
            return t == 0.0 ? 0.0 : A * std::pow(t, theta);
        });
    }
    if (spec.shape == "plateau") {
        const double inner = spec.inner;
        const double outer = spec.outer;
        if (!(outer > inner) || !(inner > 0.0))
            throw std::invalid_argument("plateau needs 0 < inner < outer");
        return GridFunction::from_callable(domain, [=](const Point& x) {
            const double r = x.distance(c);
            // Rescale so the profile hands over 1 -> 0 across [inner, outer].
            const double t = 1.0 + (r - inner) / (outer - inner);
            return A * cutoff_profile(t);
        });
    }
    throw std::invalid_argument("unknown fixture shape: " + spec.shape);
}

} // namespace molab
