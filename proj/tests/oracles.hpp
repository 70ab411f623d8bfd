// SPDX-License-Identifier: Apache-2.0
//
// Independent oracles used by the tests. Everything here is deliberately
// brute force and shares no code path with the library.

#ifndef MOLAB_TEST_ORACLES_HPP
#define MOLAB_TEST_ORACLES_HPP

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace oracles {

// O(n^2) lower convex hull: the envelope at node i is the least chord
// through any straddling pair of sample points.
inline std::vector<double> lower_hull(const std::vector<double>& s,
                                      const std::vector<double>& v) {
    const size_t n = s.size();
    std::vector<double> env(n);
    for (size_t i = 0; i < n; ++i) {
        double best = v[i];
        for (size_t j = 0; j <= i; ++j)
            for (size_t k = i; k < n; ++k) {
                if (j == k) continue;
                const double t = (s[i] - s[j]) / (s[k] - s[j]);
                best = std::min(best, v[j] + t * (v[k] - v[j]));
            }
        env[i] = best;
    }
    return env;
}

// Plain bisection on an increasing function.
inline double bisect_root(const std::function<double(double)>& f, double lo,
                          double hi, double tol = 1e-14) {
    double flo = f(lo), fhi = f(hi);
    if (flo > 0.0 || fhi < 0.0) throw std::logic_error("root not bracketed");
    for (int it = 0; it < 200 && (hi - lo) > tol * (1.0 + std::abs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Composite midpoint quadrature at a resolution unrelated to the grids
// under test.
inline double riemann(const std::function<double(double)>& f, double a, double b,
                      int n = 20001) {
    const double h = (b - a) / n;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += f(a + (i + 0.5) * h);
    return acc * h;
}

// Closed-form Young conjugate of s^p / p.
inline double power_conjugate(double p, double s) {
    const double pc = p / (p - 1.0);
    return std::pow(s, pc) / pc;
}

// Frozen reference values (computed with 30-digit arithmetic).
inline constexpr double kRootT2T3 = 0.754877666246692760;  // t^2 + t^3 = 1
inline constexpr double kBumpIntegral1d = 0.443993816168079438;
inline constexpr double kBumpIntegral2d = 0.466512393178330069;
inline constexpr double kMollifiedHatAt0 = 0.916386500572506168; // eps = 1/4
inline constexpr double kTwoPow25 = 5.656854249492380195;        // 2^2.5
inline constexpr double kInvSqrt3 = 0.577350269189625765;

} // namespace oracles

#endif
