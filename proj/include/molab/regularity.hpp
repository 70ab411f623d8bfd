// SPDX-License-Identifier: Apache-2.0
//
// Spatial-regularity certificates: the domination witness phi(tau,s)
// per built-in family, pointwise domination checks, the scaling limsup
// along shrinking radii, local integrability, and the sharp
// double-phase parameter range.

#ifndef MOLAB_REGULARITY_HPP
#define MOLAB_REGULARITY_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "molab/grid.hpp"
#include "molab/phi.hpp"

namespace molab {

// Witness phi : [0,1/2] x R+ -> [1,inf), nondecreasing in each argument,
// dominating M(x,s) <= phi(|x-y|,s) M(y,s). When the family structure
// gives the scaling behaviour of phi(eps, c eps^{-N}) in closed form the
// exponents are exposed; callers fall back to the empirical tail rule
// otherwise.
struct RegularityWitness {
    std::function<double(double tau, double s)> eval;
    std::string description;

    // log-log exponent e of phi(eps, c eps^{-kappa}) - 1 ~ eps^e, as a
    // function of kappa (= N or N/p); nullopt when unknown.
    std::function<std::optional<double>(double kappa)> scaling_exponent;

    double operator()(double tau, double s) const { return eval(tau, s); }
};

// Builds the witness for a built-in family:
//   x-independent           -> phi == 1
//   variable exponent       -> (p+/p-) max{ s^{sigma(tau)}, s^{-sigma(tau)} }
//   double phase            -> 1 + C_a tau^alpha s^{q-p}
//   weighted sum            -> sum_i phi_i(tau) + phi_0(tau,s)
// Throws std::invalid_argument for families without a witness
// (exp_power, orlicz_custom with x-dependence, missing field regularity).
RegularityWitness phi_witness(const PhiFunction& M);

bool has_phi_witness(const PhiFunction& M);

struct DominationReport {
    double max_ratio = 0.0; // max over pairs and s of M(x,s)/(phi M(y,s))
    Point worst_x, worst_y;
    double worst_s = 0.0;
    int pairs_checked = 0;
    bool pass(double tol = 1e-9) const { return max_ratio <= 1.0 + tol; }
};

// Pointwise (x,y) domination over a pair sample (|x-y| <= 1/2) and an
// s-grid; s = 0 is excluded (0/0).
DominationReport check_pointwise_domination(const PhiFunction& M,
                                            const RegularityWitness& phi,
                                            const std::vector<std::pair<Point, Point>>& pairs,
                                            const std::vector<double>& s_grid);

// Random pair sample inside the domain with |x-y| <= max_sep.
std::vector<std::pair<Point, Point>> sample_pairs(const GridDomain& domain,
                                                  int count, double max_sep,
                                                  std::uint64_t seed);

struct ScalingReport {
    bool bounded = false;
    std::vector<double> eps;
    std::vector<double> phi_values;      // phi(eps_k, c eps_k^{-kappa})
    double tail_slope = 0.0;             // empirical log-log slope of phi
    std::optional<double> analytic_exponent; // of phi - 1, when exposed
    double last_value = 0.0;
};

// Evaluates phi(eps_k, c eps_k^{-kappa}) with kappa = N (or N/p when a
// growth exponent is given) along a decreasing schedule. Verdict
// "bounded" uses the analytic exponent when the witness exposes one,
// otherwise the tail rule: last four values nonincreasing or within 5%.
ScalingReport check_scaling_limsup(const RegularityWitness& phi, double c, int N,
                                   std::optional<double> growth_p,
                                   const std::vector<double>& eps_schedule);

// q/p <= 1 + alpha/N, non-strict.
bool sharp_range_predicate(double p, double q, double alpha, int N);

struct IntegrabilityReport {
    bool pass = true;
    double worst_c = 0.0;
    Point worst_x;
    std::vector<std::pair<double, double>> integrals; // (c, integral)
};

// Quadrature of M(.,c) over a compact node subset for each constant c;
// fails on a +inf sentinel and records where.
IntegrabilityReport check_local_integrability(const PhiFunction& M,
                                              const GridDomain& domain,
                                              const Box& K,
                                              const std::vector<double>& c_list);

// Witness of the two-phase integrand s^p + a(x) s^q with Hoelder weight:
// phi(tau,s) = 1 + C_a tau^alpha s^(q-p).
RegularityWitness make_double_phase_witness(double C_a, double alpha,
                                            double exponent_gap);

// Geometric schedule eps_0 * ratio^k, k = 0..n-1.
std::vector<double> geometric_schedule(double eps0, double ratio, int n);

} // namespace molab

#endif
