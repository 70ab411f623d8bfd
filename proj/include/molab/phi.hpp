// SPDX-License-Identifier: Apache-2.0
//
// Modular integrands M(x,s): the built-in families, their coefficient
// fields, and the structural validation checks (Phi/N-function limits,
// convexity, doubling).

#ifndef MOLAB_PHI_HPP
#define MOLAB_PHI_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace molab {

// Spatial point, N <= 2. Unused coordinates stay 0.
struct Point {
    std::array<double, 2> x{0.0, 0.0};
    int dim = 1;

    static Point d1(double a) { return Point{{a, 0.0}, 1}; }
    static Point d2(double a, double b) { return Point{{a, b}, 2}; }
    double operator[](int i) const { return x[static_cast<size_t>(i)]; }
    double norm() const;
    double distance(const Point& other) const;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Argument cap for exponentials; beyond it the +inf sentinel is returned.
inline constexpr double kExpArgCap = 700.0;

enum class PhiFamily {
    variable_exponent, // s^{p(x)}
    vexp_log,          // s^{p(x)} log(e+s)
    vexp_smoothed,     // [(1+s^2)^{p(x)/2} - 1] / p(x)
    double_phase,      // s^p + a(x) s^q
    exp_power,         // e^{s^{p(x)}} - 1
    orlicz_custom,     // user-supplied M(s), x-independent
    weighted_sum,      // sum k_i(x) M_i(s) + M_0(x,s)
};

const char* family_name(PhiFamily f);

// Declared regularity of a spatial coefficient or exponent field.
struct FieldRegularity {
    enum class Kind { constant, lipschitz, holder, log_holder };
    Kind kind = Kind::constant;
    double constant = 0.0; // Lipschitz L, Hoelder C, or log-Hoelder c
    double alpha = 1.0;    // Hoelder exponent, alpha in (0,1]
};

// Scalar field over the domain with declared regularity and bounds.
struct ScalarField {
    std::function<double(const Point&)> eval;
    FieldRegularity regularity;
    double inf_bound = 0.0;
    double sup_bound = 0.0;

    static ScalarField constant(double c);
};

struct WeightedTerm {
    ScalarField weight;                    // k_i(x) > 0
    std::function<double(double)> phi_s;   // M_i(s), convex, M_i(0)=0
    std::string label;
};

class PhiFunction;
using PhiPtr = std::shared_ptr<const PhiFunction>;

// Family descriptors. Exactly the fields the family uses are read.
struct FamilySpec {
    PhiFamily family = PhiFamily::double_phase;
    double p = 2.0;
    double q = 2.0;     // double_phase only, q >= p
    std::optional<ScalarField> a_field;   // double_phase weight a(x) >= 0
    std::optional<ScalarField> p_field;   // variable exponent p(x)
    std::function<double(double)> custom; // orlicz_custom
    std::function<double(double)> custom_derivative;
    std::vector<WeightedTerm> terms;      // weighted_sum
    PhiPtr base;                          // weighted_sum optional M_0
    std::string label;
};

// Immutable evaluable integrand M(x,s). All evaluations are pure.
class PhiFunction {
public:
    double operator()(const Point& x, double s) const;

    PhiFamily family() const { return family_; }
    const std::string& label() const { return label_; }
    // Growth exponents: [p_minus, p_plus] for exponent families,
    // (p, q) for double phase, (p, p) otherwise.
    double p_lower() const { return p_lower_; }
    double p_upper() const { return p_upper_; }
    bool x_dependent() const { return x_dependent_; }
    bool finite_valued() const { return finite_valued_; }

    const std::optional<ScalarField>& a_field() const { return a_field_; }
    const std::optional<ScalarField>& p_field() const { return p_field_; }
    const std::vector<WeightedTerm>& terms() const { return terms_; }
    PhiPtr base() const { return base_; }

    // dM/ds when supplied; otherwise a centered finite difference.
    double derivative_s(const Point& x, double s) const;

    friend PhiPtr make_family(const FamilySpec& spec);

private:
    PhiFunction() = default;

    PhiFamily family_ = PhiFamily::orlicz_custom;
    std::function<double(const Point&, double)> eval_;
    std::function<double(const Point&, double)> deriv_;
    std::optional<ScalarField> a_field_;
    std::optional<ScalarField> p_field_;
    std::vector<WeightedTerm> terms_;
    PhiPtr base_;
    double p_lower_ = 2.0;
    double p_upper_ = 2.0;
    bool x_dependent_ = false;
    bool finite_valued_ = true;
    std::string label_;
};

// Validates parameter ranges (p,q > 1, alpha in (0,1], a >= 0, q >= p
// for double phase) and builds the evaluator. Throws
// std::invalid_argument on out-of-range parameters.
PhiPtr make_family(const FamilySpec& spec);

// Convenience constructors for the common fixtures.
PhiPtr make_power(double p);                       // s^p
PhiPtr make_power_over_p(double p);                // s^p / p
PhiPtr make_double_phase(double p, double q, ScalarField a);
PhiPtr make_variable_exponent(ScalarField p_field);

// s must be >= 0; throws std::domain_error otherwise.
double eval(const PhiFunction& M, const Point& x, double s);

// Default log-spaced s-grid: 10^-3 ... 10^3, 121 points (s=0 handled
// separately by the checks).
std::vector<double> default_s_grid();
std::vector<double> log_grid(double lo, double hi, int n);

struct NFunctionReport {
    bool convex = false;
    bool zero_at_zero = false;
    bool inf_at_one_positive = false;
    bool ratio_vanishes_at_zero = false; // M(x,s)/s -> 0
    bool ratio_diverges_at_inf = false;  // M(x,s)/s -> inf
    bool strictly_increasing = false;
    double worst_convexity_residual = 0.0; // relative; <= tol when convex
    bool pass() const {
        return convex && zero_at_zero && inf_at_one_positive &&
               ratio_vanishes_at_zero && ratio_diverges_at_inf && strictly_increasing;
    }
};

// Structural check over an x-sample and a log-spaced s-grid covering at
// least six decades. Failures are reported, never thrown.
NFunctionReport check_n_function(const PhiFunction& M,
                                 const std::vector<Point>& x_sample,
                                 const std::vector<double>& s_grid,
                                 double convexity_tol = 1e-10);

struct Delta2Report {
    bool bounded = false;
    // Smallest k with M(x,2s) <= k M(x,s) over the sample (h == 0).
    double k_empirical = kInf;
    // Ratio at the top of the s-grid and the tail growth slope used for
    // the unbounded verdict.
    double top_ratio = kInf;
    double tail_slope = 0.0;
    Point worst_x;
    double worst_s = 0.0;
};

Delta2Report check_delta2(const PhiFunction& M,
                          const std::vector<Point>& x_sample,
                          const std::vector<double>& s_grid);

// Samples the Hoelder/Lipschitz quotient of a declared field on random
// pairs and checks the declared bounds. Uses the given seeded RNG draws.
struct FieldValidation {
    bool quotient_ok = true;
    bool bounds_ok = true;
    double worst_quotient = 0.0;
};

class GridDomain; // forward declaration; validation samples a domain

FieldValidation validate_scalar_field(const ScalarField& field,
                                      const GridDomain& domain,
                                      std::uint64_t seed, int pairs = 256,
                                      double tol = 1e-9);

} // namespace molab

#endif
