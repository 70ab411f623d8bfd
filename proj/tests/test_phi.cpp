// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "molab/phi.hpp"
#include "molab/grid.hpp"
#include "oracles.hpp"

using namespace molab;

namespace {

ScalarField abs_power_field(double coeff, double expo) {
    ScalarField f;
    f.eval = [coeff, expo](const Point& x) { return coeff * std::pow(x.norm(), expo); };
    f.regularity = {FieldRegularity::Kind::holder, coeff, expo};
    f.inf_bound = 0.0;
    f.sup_bound = coeff; // |x| <= 1 on the fixtures below
    return f;
}

ScalarField affine_exponent(double base, double slope) {
    ScalarField f;
    f.eval = [base, slope](const Point& x) { return base + slope * x[0]; };
    f.regularity = {FieldRegularity::Kind::lipschitz, std::abs(slope), 1.0};
    f.inf_bound = base - std::abs(slope);
    f.sup_bound = base + std::abs(slope);
    return f;
}

PhiPtr m6_indicator() {
    FamilySpec spec;
    spec.family = PhiFamily::orlicz_custom;
    spec.custom = [](double s) { return s > 1.0 ? kInf : 0.0; };
    spec.label = "inf_indicator";
    return make_family(spec);
}

} // namespace

TEST_CASE("double phase evaluation matches direct substitution") {
    const PhiPtr M = make_double_phase(2.0, 3.0, ScalarField::constant(1.0));
    CHECK((*M)(Point::d1(0.0), 2.0) == doctest::Approx(12.0)); // 4 + 8
    CHECK((*M)(Point::d1(0.7), 0.0) == 0.0);

    const PhiPtr Mx = make_double_phase(2.0, 3.0, abs_power_field(1.0, 0.5));
    const double x = 0.25;
    CHECK((*Mx)(Point::d1(x), 2.0) ==
          doctest::Approx(4.0 + std::sqrt(x) * 8.0).epsilon(1e-14));
}

TEST_CASE("variable exponent evaluation") {
    const PhiPtr M = make_variable_exponent(affine_exponent(2.0, 1.0)); // p(x) = 2 + x
    CHECK((*M)(Point::d1(0.5), 2.0) == doctest::Approx(oracles::kTwoPow25).epsilon(1e-15));
    CHECK((*M)(Point::d1(-0.3), 0.0) == 0.0);

    const PhiPtr Mc = make_variable_exponent(ScalarField::constant(2.0));
    CHECK((*Mc)(Point::d1(0.9), 3.0) == doctest::Approx(9.0));
    CHECK_FALSE(Mc->x_dependent());
}

TEST_CASE("weighted sum family") {
    WeightedTerm term;
    term.weight.eval = [](const Point& x) { return 1.0 + x[0] * x[0]; };
    term.weight.regularity = {FieldRegularity::Kind::lipschitz, 2.0, 1.0};
    term.weight.inf_bound = 1.0;
    term.weight.sup_bound = 2.0;
    term.phi_s = [](double s) { return s * s; };
    FamilySpec spec;
    spec.family = PhiFamily::weighted_sum;
    spec.terms = {term};
    const PhiPtr M = make_family(spec);
    CHECK((*M)(Point::d1(0.5), 2.0) == doctest::Approx(1.25 * 4.0));
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(make_double_phase(2.0, 1.5, ScalarField::constant(1.0)),
                    std::invalid_argument); // q < p
    CHECK_THROWS_AS(make_double_phase(0.5, 2.0, ScalarField::constant(1.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_variable_exponent(ScalarField::constant(1.0)),
                    std::invalid_argument); // p(x) must exceed 1
    const PhiPtr M = make_power(2.0);
    CHECK_THROWS_AS((*M)(Point::d1(0.0), -1.0), std::domain_error);
}

TEST_CASE("exp_power overflows to the +inf sentinel") {
    FamilySpec spec;
    spec.family = PhiFamily::exp_power;
    spec.p = 2.0;
    const PhiPtr M = make_family(spec);
    CHECK((*M)(Point::d1(0.0), 1.0) == doctest::Approx(std::exp(1.0) - 1.0));
    CHECK(std::isinf((*M)(Point::d1(0.0), 1e3)));
    CHECK((*M)(Point::d1(0.0), 0.0) == 0.0);
}

TEST_CASE("N-function classification") {
    const std::vector<Point> xs{Point::d1(-0.5), Point::d1(0.0), Point::d1(0.5)};
    const auto s_grid = default_s_grid();

    SUBCASE("s^2 passes") {
        const auto rep = check_n_function(*make_power(2.0), xs, s_grid);
        CHECK(rep.pass());
        CHECK(rep.worst_convexity_residual <= 1e-10);
    }
    SUBCASE("the infinite indicator fails monotonicity and the unit value") {
        const auto rep = check_n_function(*m6_indicator(), xs, s_grid);
        CHECK_FALSE(rep.pass());
        CHECK_FALSE(rep.strictly_increasing);
        CHECK_FALSE(rep.inf_at_one_positive);
    }
    SUBCASE("linear growth fails the upper ratio limit") {
        FamilySpec spec;
        spec.family = PhiFamily::orlicz_custom;
        spec.custom = [](double s) { return s; };
        const auto rep = check_n_function(*make_family(spec), xs, s_grid);
        CHECK_FALSE(rep.pass());
        CHECK_FALSE(rep.ratio_diverges_at_inf);
        CHECK_FALSE(rep.ratio_vanishes_at_zero);
        CHECK(rep.convex);
    }
    SUBCASE("double phase with a Hoelder weight passes") {
        const auto rep = check_n_function(
            *make_double_phase(2.0, 3.0, abs_power_field(1.0, 0.5)), xs, s_grid);
        CHECK(rep.pass());
    }
}

TEST_CASE("doubling constants") {
    const std::vector<Point> xs{Point::d1(-0.5), Point::d1(0.25), Point::d1(0.75)};
    const auto s_grid = default_s_grid();

    SUBCASE("pure power doubles exactly") {
        const auto rep = check_delta2(*make_power(2.0), xs, s_grid);
        CHECK(rep.bounded);
        CHECK(rep.k_empirical == doctest::Approx(4.0).epsilon(1e-12));
    }
    SUBCASE("double phase saturates at 2^q as the weight dominates") {
        const auto rep = check_delta2(
            *make_double_phase(2.0, 3.0, ScalarField::constant(1e12)), xs, s_grid);
        CHECK(rep.bounded);
        CHECK(rep.k_empirical == doctest::Approx(8.0).epsilon(1e-9));
        CHECK(rep.k_empirical <= 8.0 * (1.0 + 1e-12));
    }
    SUBCASE("double phase never exceeds 2^q") {
        const auto rep = check_delta2(
            *make_double_phase(2.0, 3.0, abs_power_field(1.0, 0.5)), xs, s_grid);
        CHECK(rep.bounded);
        CHECK(rep.k_empirical <= 8.0 * (1.0 + 1e-12));
    }
    SUBCASE("exponential growth is not doubling") {
        FamilySpec spec;
        spec.family = PhiFamily::orlicz_custom;
        spec.custom = [](double s) { return std::expm1(s); };
        const auto rep = check_delta2(*make_family(spec), xs, s_grid);
        CHECK_FALSE(rep.bounded);
        // Independent oracle: the ratio (e^{2s}-1)/(e^s-1) grows along
        // the grid, so the empirical k keeps climbing.
        const double r_small = std::expm1(2.0) / std::expm1(1.0);
        CHECK(rep.k_empirical > 10.0 * r_small);
    }
}

TEST_CASE("scalar field validation on the grid") {
    const auto dom = GridDomain::interval(-1.0, 1.0, 64);
    SUBCASE("declared Hoelder budget holds for |x|^0.5") {
        const auto rep = validate_scalar_field(abs_power_field(1.0, 0.5), dom, 7);
        CHECK(rep.quotient_ok);
        CHECK(rep.bounds_ok);
        CHECK(rep.worst_quotient <= 1.0 + 1e-9);
    }
    SUBCASE("an understated constant is caught") {
        ScalarField f = abs_power_field(1.0, 0.5);
        f.regularity.constant = 0.25; // the true quotient reaches 1 near 0
        const auto rep = validate_scalar_field(f, dom, 7, 4096);
        CHECK_FALSE(rep.quotient_ok);
    }
}

TEST_CASE("convexity invariant on every built-in family") {
    const std::vector<Point> xs{Point::d1(-0.8), Point::d1(0.1), Point::d1(0.9)};
    const auto s_grid = default_s_grid();
    std::vector<PhiPtr> families;
    families.push_back(make_power(1.5));
    families.push_back(make_power_over_p(3.0));
    families.push_back(make_double_phase(2.0, 3.0, abs_power_field(2.0, 0.5)));
    families.push_back(make_variable_exponent(affine_exponent(2.0, 0.5)));
    {
        FamilySpec spec;
        spec.family = PhiFamily::vexp_log;
        spec.p_field = affine_exponent(2.0, 0.5);
        families.push_back(make_family(spec));
        spec.family = PhiFamily::vexp_smoothed;
        families.push_back(make_family(spec));
    }
    for (const auto& M : families) {
        const auto rep = check_n_function(*M, xs, s_grid);
        CHECK_MESSAGE(rep.convex, M->label());
        for (const Point& x : xs) CHECK((*M)(x, 0.0) == 0.0);
    }
}
