// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "molab/conjugate.hpp"
#include "molab/regularity.hpp"
#include "oracles.hpp"

using namespace molab;

namespace {

const std::vector<double> kTGrid = log_grid(1e-6, 1e6, 481);
const std::vector<double> kSGrid = log_grid(1e-2, 1e2, 161);

ScalarField abs_field(double coeff, double expo) {
    ScalarField f;
    f.eval = [coeff, expo](const Point& x) { return coeff * std::pow(x.norm(), expo); };
    f.regularity = {FieldRegularity::Kind::holder, coeff, expo};
    f.inf_bound = 0.0;
    f.sup_bound = coeff;
    return f;
}

} // namespace

TEST_CASE("conjugate of s^2/2 is itself") {
    const PhiPtr M = make_power_over_p(2.0);
    const auto table = legendre_conjugate(*M, Point::d1(0.0), kTGrid, kSGrid);
    for (size_t i = 0; i < kSGrid.size(); ++i) {
        const double expected = kSGrid[i] * kSGrid[i] / 2.0;
        CHECK(std::abs(table.value[i] - expected) <=
              std::max(1e-9 * expected, table.gap));
    }
    CHECK(table.is_convex());
}

TEST_CASE("conjugate of s^3/3 matches the closed-form Young conjugate") {
    const PhiPtr M = make_power_over_p(3.0);
    const auto table = legendre_conjugate(*M, Point::d1(0.0), kTGrid, kSGrid);
    for (size_t i = 0; i < kSGrid.size(); ++i) {
        const double expected = oracles::power_conjugate(3.0, kSGrid[i]);
        CHECK(std::abs(table.value[i] - expected) <=
              std::max(1e-4, table.gap) + 1e-9 * expected);
    }
}

TEST_CASE("sublinear tail gives a vanishing conjugate") {
    // M(s) = s: for s < 1 the supremum of (s-1)t over t >= 0 sits at t = 0.
    FamilySpec spec;
    spec.family = PhiFamily::orlicz_custom;
    spec.custom = [](double s) { return s; };
    const PhiPtr M = make_family(spec);
    const auto s_small = log_grid(1e-3, 0.9, 41);
    const auto table = legendre_conjugate(*M, Point::d1(0.0), kTGrid, s_small);
    for (double v : table.value) CHECK(v == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("lower hull against the quadratic-pair oracle") {
    SUBCASE("convex input is reproduced") {
        std::vector<double> s, v;
        for (int i = 0; i <= 60; ++i) {
            const double x = i / 20.0;
            s.push_back(x);
            v.push_back(x * x);
        }
        const auto hull = second_conjugate(s, v);
        for (size_t i = 0; i < s.size(); ++i)
            CHECK(hull.value[i] == doctest::Approx(v[i]).epsilon(1e-12));
        CHECK(hull.is_convex());
    }
    SUBCASE("double well is bridged exactly as the oracle says") {
        std::vector<double> s, v;
        for (int i = 0; i <= 300; ++i) {
            const double x = 3.0 * i / 300.0;
            s.push_back(x);
            v.push_back(std::min(x * x, (x - 2.0) * (x - 2.0) + 1.0));
        }
        const auto hull = second_conjugate(s, v);
        const auto oracle = oracles::lower_hull(s, v);
        for (size_t i = 0; i < s.size(); ++i) {
            CHECK(hull.value[i] == doctest::Approx(oracle[i]).epsilon(1e-10));
            CHECK(hull.value[i] <= v[i] + 1e-12);
        }
        CHECK(hull.is_convex());
    }
    SUBCASE("two points give the segment") {
        const auto hull = second_conjugate({0.0, 1.0}, {0.0, 1.0});
        CHECK(hull.value[0] == doctest::Approx(0.0));
        CHECK(hull.value[1] == doctest::Approx(1.0));
    }
    SUBCASE("fewer than two finite points is an error") {
        CHECK_THROWS_AS(second_conjugate({1.0}, {2.0}), std::invalid_argument);
    }
}

TEST_CASE("Fenchel-Young certification") {
    const PhiPtr M = make_power_over_p(2.0);
    const auto conj = legendre_conjugate(*M, Point::d1(0.0), kTGrid, kSGrid);

    SUBCASE("hand-picked points") {
        // Equality at v = M'(u): u = v = 1 gives uv - M - M* = 0.
        const auto eq = verify_fenchel_young(*M, Point::d1(0.0), {1.0}, {1.0}, conj);
        CHECK(std::abs(eq.max_violation) <= conj.gap + 1e-12);
        // Interior point: 1*3 - 0.5 - 4.5 = -2.
        const auto strict = verify_fenchel_young(*M, Point::d1(0.0), {1.0}, {3.0}, conj);
        CHECK(strict.max_violation == doctest::Approx(-2.0).epsilon(1e-6));
    }
    SUBCASE("grid sweep stays below the sampling gap") {
        const auto uv = log_grid(1e-2, 1e2, 101);
        const auto rep = verify_fenchel_young(*M, Point::d1(0.0), uv, uv, conj);
        CHECK(rep.pass());
    }
    SUBCASE("double phase at the origin") {
        const PhiPtr H = make_double_phase(2.0, 3.0, ScalarField::constant(1.0));
        const auto ctab = legendre_conjugate(*H, Point::d1(0.0), kTGrid, kSGrid);
        const auto uv = log_grid(1e-2, 1e2, 101);
        const auto rep = verify_fenchel_young(*H, Point::d1(0.0), uv, uv, ctab);
        CHECK(rep.pass());
    }
}

TEST_CASE("biconjugation returns to the integrand") {
    for (double p : {1.5, 2.0, 3.0}) {
        const PhiPtr M = make_power_over_p(p);
        const auto conj = legendre_conjugate(*M, Point::d1(0.0), kTGrid, kSGrid);
        const auto biconj = conjugate_of_table(conj, kSGrid);
        for (size_t i = 0; i < kSGrid.size(); ++i) {
            if (kSGrid[i] < 2e-2 || kSGrid[i] > 5e1) continue;
            const double expected = (*M)(Point::d1(0.0), kSGrid[i]);
            CHECK(std::abs(biconj.value[i] - expected) <= 2.0 * biconj.gap);
        }
    }
}

TEST_CASE("conjugate tables are monotone in s") {
    const PhiPtr M = make_double_phase(2.0, 2.5, ScalarField::constant(0.3));
    const auto table = legendre_conjugate(*M, Point::d1(0.0), kTGrid, kSGrid);
    for (size_t i = 0; i + 1 < table.value.size(); ++i)
        CHECK(table.value[i] <= table.value[i + 1] + 1e-12);
}

TEST_CASE("local infimum envelope") {
    const auto s_grid = default_s_grid();
    SUBCASE("x-independent integrand is untouched") {
        const PhiPtr M = make_power(2.0);
        std::vector<Point> ys;
        for (int i = 0; i < 17; ++i) ys.push_back(Point::d1(0.4 + 0.01 * i));
        const auto env = local_inf_envelope(*M, Point::d1(0.48), 0.2, ys, s_grid);
        for (size_t i = 0; i < s_grid.size(); ++i)
            CHECK(env.value[i] ==
                  doctest::Approx((*M)(Point::d1(0.0), s_grid[i])).epsilon(1e-12));
    }
    SUBCASE("monotone weight: the infimum sits at the smallest |y|") {
        const PhiPtr M = make_double_phase(2.0, 3.0, abs_field(1.0, 1.0)); // a(y)=|y|
        const Point x = Point::d1(0.5);
        std::vector<Point> ys;
        for (int i = 0; i <= 16; ++i) ys.push_back(Point::d1(0.4 + 0.2 * i / 16.0));
        const auto env = local_inf_envelope(*M, x, 0.2, ys, s_grid);
        // Brute-force infimum over the sample, then the hull oracle.
        std::vector<double> inf_vals(s_grid.size(), kInf);
        for (size_t i = 0; i < s_grid.size(); ++i)
            for (const Point& y : ys)
                inf_vals[i] = std::min(inf_vals[i], (*M)(y, s_grid[i]));
        const auto oracle = oracles::lower_hull(s_grid, inf_vals);
        for (size_t i = 0; i < s_grid.size(); ++i) {
            CHECK(env.value[i] == doctest::Approx(oracle[i]).epsilon(1e-9));
            // and the infimum itself is the a = 0.4 branch
            CHECK(inf_vals[i] ==
                  doctest::Approx(std::pow(s_grid[i], 2.0) +
                                  0.4 * std::pow(s_grid[i], 3.0))
                      .epsilon(1e-12));
        }
    }
    SUBCASE("two-valued weight picks the smaller branch") {
        ScalarField checker;
        checker.eval = [](const Point& y) { return y[0] < 0.5 ? 0.2 : 1.0; };
        checker.regularity = {FieldRegularity::Kind::constant, 0.0, 1.0};
        checker.inf_bound = 0.2;
        checker.sup_bound = 1.0;
        const PhiPtr M = make_double_phase(2.0, 3.0, checker);
        std::vector<Point> ys;
        for (int i = 0; i <= 16; ++i) ys.push_back(Point::d1(0.42 + 0.16 * i / 16.0));
        const auto env = local_inf_envelope(*M, Point::d1(0.5), 0.2, ys, s_grid);
        for (size_t i = 0; i < s_grid.size(); ++i) {
            const double lower_branch =
                std::pow(s_grid[i], 2.0) + 0.2 * std::pow(s_grid[i], 3.0);
            CHECK(env.value[i] == doctest::Approx(lower_branch).epsilon(1e-9));
        }
    }
    SUBCASE("empty sample is rejected") {
        CHECK_THROWS_AS(
            local_inf_envelope(*make_power(2.0), Point::d1(0.0), 0.2, {}, s_grid),
            std::invalid_argument);
    }
}

TEST_CASE("envelope bound certificate") {
    const auto s_grid = default_s_grid();
    SUBCASE("x-independent integrand stays below a quarter") {
        const PhiPtr M = make_power(2.0);
        const RegularityWitness phi = phi_witness(*M);
        std::vector<Point> ys;
        for (int i = 0; i <= 16; ++i) ys.push_back(Point::d1(-0.05 + 0.1 * i / 16.0));
        const auto rep =
            verify_envelope_bound(*M, phi, Point::d1(0.0), 0.2, ys, s_grid);
        CHECK(rep.max_ratio <= 0.25 + 1e-9);
    }
    SUBCASE("double phase with Hoelder weight") {
        const PhiPtr M = make_double_phase(2.0, 3.0, abs_field(1.0, 0.5));
        const RegularityWitness phi = phi_witness(*M);
        const Point x = Point::d1(0.5);
        std::vector<Point> ys;
        for (int i = 0; i <= 24; ++i) ys.push_back(Point::d1(0.5 - 0.125 + 0.25 * i / 24.0));
        const auto rep = verify_envelope_bound(*M, phi, x, 0.25, ys, s_grid);
        CHECK(rep.pass(0.05));
    }
    SUBCASE("variable exponent with a Lipschitz exponent field") {
        ScalarField pf;
        pf.eval = [](const Point& y) { return 2.0 + 0.4 * y[0]; };
        pf.regularity = {FieldRegularity::Kind::lipschitz, 0.4, 1.0};
        pf.inf_bound = 1.6;
        pf.sup_bound = 2.4;
        const PhiPtr M = make_variable_exponent(pf);
        const RegularityWitness phi = phi_witness(*M);
        const Point x = Point::d1(0.2);
        std::vector<Point> ys;
        for (int i = 0; i <= 16; ++i) ys.push_back(Point::d1(0.2 - 0.05 + 0.1 * i / 16.0));
        const auto rep = verify_envelope_bound(*M, phi, x, 0.1, ys, s_grid);
        CHECK(rep.pass(0.05));
    }
}
