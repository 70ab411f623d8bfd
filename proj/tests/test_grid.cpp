// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "molab/grid.hpp"
#include "molab/phi.hpp"
#include "oracles.hpp"

using namespace molab;

namespace {

GridDomainPtr interval(double a, double b, int n) {
    return std::make_shared<const GridDomain>(GridDomain::interval(a, b, n));
}

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

TEST_CASE("quadrature weights sum to the volume exactly") {
    const auto d1 = interval(-1.0, 1.0, 4096);
    CHECK(d1->cell_weight() * d1->node_count() == doctest::Approx(2.0).epsilon(1e-13));
    const auto d2 = std::make_shared<const GridDomain>(GridDomain::square(-1.0, 1.0, 64));
    CHECK(d2->cell_weight() * d2->node_count() == doctest::Approx(4.0).epsilon(1e-13));
}

TEST_CASE("modular values on closed-form integrands") {
    const auto dom = interval(-1.0, 1.0, 2048);
    const GridFunction one =
        GridFunction::from_callable(dom, [](const Point&) { return 1.0; });

    CHECK(modular(*make_power(2.0), one, 1.0) == doctest::Approx(2.0).epsilon(1e-13));

    const GridFunction zero(dom);
    CHECK(modular(*make_double_phase(2.0, 3.0, ScalarField::constant(1.0)), zero, 5.0) ==
          0.0);

    // s^2 + |x| s^3 against u == 1: integral of (1 + |x|) over (-1,1) = 3.
    ScalarField a;
    a.eval = [](const Point& x) { return std::abs(x[0]); };
    a.regularity = {FieldRegularity::Kind::holder, 1.0, 1.0};
    a.inf_bound = 0.0;
    a.sup_bound = 1.0;
    CHECK(modular(*make_double_phase(2.0, 3.0, a), one, 1.0) ==
          doctest::Approx(3.0).epsilon(1e-6));

    CHECK_THROWS_AS(modular(*make_power(2.0), one, 0.0), std::domain_error);
}

TEST_CASE("lambda monotonicity of the modular") {
    const auto dom = interval(-1.0, 1.0, 512);
    const GridFunction u = GridFunction::from_callable(
        dom, [](const Point& x) { return std::cos(3.0 * x[0]) + 0.2; });
    const PhiPtr M = make_double_phase(2.0, 2.6, ScalarField::constant(0.5));
    double prev = kInf;
    for (double lambda : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        const double rho = modular(*M, u, lambda);
        CHECK(rho <= prev * (1.0 + 1e-12));
        prev = rho;
    }
}

TEST_CASE("Luxemburg norm closed forms") {
    const auto dom = interval(0.0, 1.0, 1024); // |Omega| = 1

    SUBCASE("power family on constants") {
        for (double p : {1.5, 2.0, 3.0}) {
            const PhiPtr M = make_power(p);
            const GridFunction one =
                GridFunction::from_callable(dom, [](const Point&) { return 1.0; });
            CHECK(luxemburg_norm(*M, one) == doctest::Approx(1.0).epsilon(1e-9));
            GridFunction two = one;
            two *= 2.0;
            CHECK(luxemburg_norm(*M, two) == doctest::Approx(2.0).epsilon(1e-9));
        }
    }
    SUBCASE("double phase constant a == 1: lambda solves t^2 + t^3 = 1") {
        const PhiPtr M = make_double_phase(2.0, 3.0, ScalarField::constant(1.0));
        // Independent scalar oracle for the root.
        const double t_star = oracles::bisect_root(
            [](double t) { return t * t + t * t * t - 1.0; }, 0.0, 1.0);
        CHECK(t_star == doctest::Approx(oracles::kRootT2T3).epsilon(1e-12));
        for (double c : {0.7, 1.0, 3.5}) {
            const GridFunction u =
                GridFunction::from_callable(dom, [c](const Point&) { return c; });
            CHECK(luxemburg_norm(*M, u) == doctest::Approx(c / t_star).epsilon(1e-9));
        }
    }
    SUBCASE("zero function has zero norm") {
        CHECK(luxemburg_norm(*make_power(2.0), GridFunction(dom)) == 0.0);
    }
}

TEST_CASE("Luxemburg norm properties on random samples") {
    const auto dom = interval(-1.0, 1.0, 256);
    std::mt19937_64 rng(42);
    std::vector<PhiPtr> families;
    families.push_back(make_double_phase(2.0, 3.0, ScalarField::constant(1.0)));
    families.push_back(make_variable_exponent([&] {
        ScalarField f;
        f.eval = [](const Point& x) { return 2.0 + 0.5 * x[0]; };
        f.regularity = {FieldRegularity::Kind::lipschitz, 0.5, 1.0};
        f.inf_bound = 1.5;
        f.sup_bound = 2.5;
        return f;
    }()));

    for (const auto& M : families) {
        for (int rep = 0; rep < 12; ++rep) {
            GridFunction u(dom), v(dom);
            for (auto& val : u.mutable_values()) val = 2.0 * uniform01(rng) - 1.0;
            for (auto& val : v.mutable_values()) val = 2.0 * uniform01(rng) - 1.0;
            const double nu = luxemburg_norm(*M, u);
            const double nv = luxemburg_norm(*M, v);

            GridFunction unit = u;
            unit *= 1.0 / nu;
            CHECK(modular(*M, unit, 1.0) == doctest::Approx(1.0).epsilon(1e-8));

            GridFunction cu = u;
            cu *= 3.0;
            CHECK(luxemburg_norm(*M, cu) == doctest::Approx(3.0 * nu).epsilon(1e-8));

            GridFunction sum = u;
            sum += v;
            CHECK(luxemburg_norm(*M, sum) <= nu + nv + 1e-8);
        }
    }
}

TEST_CASE("gradient stencils") {
    const auto dom = interval(0.0, 1.0, 200);
    SUBCASE("affine functions are differentiated exactly") {
        const GridFunction u =
            GridFunction::from_callable(dom, [](const Point& x) { return 3.0 * x[0] - 1.0; });
        const auto g = gradient(u);
        REQUIRE(g.size() == 1);
        for (double v : g[0].values()) CHECK(v == doctest::Approx(3.0).epsilon(1e-12));
    }
    SUBCASE("quadratics are second order in the interior") {
        const GridFunction u =
            GridFunction::from_callable(dom, [](const Point& x) { return x[0] * x[0]; });
        const auto g = gradient(u);
        const double h = dom->spacing();
        for (std::int64_t i = 1; i + 1 < dom->node_count(); ++i) {
            const double expected = 2.0 * dom->node(i)[0];
            CHECK(std::abs(g[0].value(i) - expected) <= 10.0 * h * h);
        }
    }
    SUBCASE("constants have zero gradient") {
        const GridFunction u =
            GridFunction::from_callable(dom, [](const Point&) { return 7.0; });
        const auto g = gradient(u);
        CHECK(g[0].max_abs() == 0.0);
    }
    SUBCASE("2-D cross derivative consistency") {
        const auto d2 =
            std::make_shared<const GridDomain>(GridDomain::square(-1.0, 1.0, 48));
        const GridFunction u = GridFunction::from_callable(
            d2, [](const Point& x) { return x[0] + 2.0 * x[1]; });
        const auto g = gradient(u);
        REQUIRE(g.size() == 2);
        CHECK(g[0].values().front() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(g[1].values().front() == doctest::Approx(2.0).epsilon(1e-12));
    }
}

TEST_CASE("lp norms") {
    const auto sym = interval(-1.0, 1.0, 1024);
    const GridFunction one =
        GridFunction::from_callable(sym, [](const Point&) { return 1.0; });
    CHECK(lp_norm(one, 1.0) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(lp_norm(one, 2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));

    const auto unit = interval(0.0, 1.0, 4096);
    const GridFunction ramp =
        GridFunction::from_callable(unit, [](const Point& x) { return x[0]; });
    CHECK(lp_norm(ramp, 2.0) == doctest::Approx(oracles::kInvSqrt3).epsilon(1e-7));

    CHECK_THROWS_AS(lp_norm(one, 0.5), std::domain_error);
}

TEST_CASE("grid function round trips") {
    const auto dom = interval(-0.5, 0.5, 37);
    std::mt19937_64 rng(3);
    GridFunction u(dom);
    for (auto& val : u.mutable_values()) val = 2.0 * uniform01(rng) - 1.0;

    SUBCASE("csv") {
        std::stringstream ss;
        write_csv(u, ss);
        const GridFunction back = read_csv(dom, ss);
        for (size_t i = 0; i < u.values().size(); ++i)
            CHECK(back.values()[i] == doctest::Approx(u.values()[i]).epsilon(1e-15));
    }
    SUBCASE("binary is bit exact") {
        write_binary(u, "/tmp/molab_test_func.bin");
        const GridFunction back = read_binary("/tmp/molab_test_func.bin");
        CHECK(back.domain().same_layout(u.domain()));
        CHECK(back.values() == u.values());
    }
}

TEST_CASE("support boxes track nonzero entries") {
    const auto dom = interval(-1.0, 1.0, 100);
    GridFunction u(dom);
    u.mutable_values()[50] = 1.0;
    u.mutable_values()[59] = -2.0;
    const Box s = u.support_box();
    CHECK(s.lo[0] == doctest::Approx(-1.0 + 50 * 0.02));
    CHECK(s.hi[0] == doctest::Approx(-1.0 + 60 * 0.02));
}
