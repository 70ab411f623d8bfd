// SPDX-License-Identifier: Apache-2.0
//
// Modular-convergence detection, the quantitative lemma certificates
// (sup bounds, modular domination, envelope and dyadic inequalities),
// the weak pairing check, and the double-phase approximation experiment.

#ifndef MOLAB_CONVERGENCE_HPP
#define MOLAB_CONVERGENCE_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "molab/grid.hpp"
#include "molab/mollify.hpp"
#include "molab/phi.hpp"
#include "molab/regularity.hpp"

namespace molab {

enum class ConvergenceVerdict { modular_convergent, norm_convergent, not_detected };

const char* verdict_name(ConvergenceVerdict v);

struct ModularReport {
    ConvergenceVerdict verdict = ConvergenceVerdict::not_detected;
    double lambda_star = 0.0;                 // smallest convergent lambda
    std::vector<double> lambda_sweep;
    // rho[j][k] = modular at lambda_j of (u_k - target)/lambda_j.
    std::vector<std::vector<double>> rho;
    std::vector<bool> convergent_at;          // per swept lambda
    double quadrature_floor = 0.0;
};

// Default geometric lambda sweep 2^-4 ... 2^8 (13 points).
std::vector<double> default_lambda_sweep();

// Convergence rule per lambda: final rho <= max(1e-2 * initial rho,
// 10 * quadrature floor). norm_convergent when every swept lambda
// converges.
ModularReport detect_modular_convergence(const PhiFunction& M,
                                         const std::vector<GridFunction>& sequence,
                                         const GridFunction& target,
                                         const std::vector<double>& lambda_sweep);

struct SupBoundReport {
    std::vector<double> eps;
    std::vector<double> sup_scaled;   // max|u_eps| * eps^{N/p} (p=1: eps^N)
    std::vector<double> bound;        // kernel constant * ||u||_{L^p}
    double max_ratio = 0.0;
    double tail_slope = 0.0;          // log-log slope of max|u_eps| in eps
    bool pass() const { return max_ratio <= 1.0 + 1e-12; }
};

// |u_eps| <= c eps^{-N} with c = maxJ ||u||_L1, or the L^p variant
// |u_eps| <= c eps^{-N/p} with c = ||J||_{p'} ||u||_{L^p}. The discrete
// kernel constants make the inequality exact on the grid.
SupBoundReport verify_sup_bound(const GridFunction& u,
                                const std::vector<double>& eps_schedule,
                                std::optional<double> growth_p = std::nullopt);

struct DominationCertificate {
    double lhs = 0.0;          // modular of the mollified function
    double rhs = 0.0;          // 4 phi(eps, c eps^{-N/p} / lambda)^3 * modular(u)
    double ratio = 0.0;
    double bound_factor = 0.0; // the 4 phi^3 factor alone
    double c_constant = 0.0;
    bool pass(double slack = 0.05) const { return ratio <= 1.0 + slack; }
};

// Plain variant: u_eps = J_eps * u.
DominationCertificate verify_modular_domination(const PhiFunction& M,
                                                const RegularityWitness& phi,
                                                const GridFunction& u, double eps,
                                                double lambda,
                                                std::optional<double> growth_p);

// Shifted variant: the mollification of the shifted piece from the
// segment construction.
DominationCertificate verify_shifted_domination(const PhiFunction& M,
                                                const RegularityWitness& phi,
                                                const GridFunction& u_i,
                                                const SegmentCover& cover, int piece,
                                                double r, double eps, double lambda,
                                                std::optional<double> growth_p);

struct DyadicReport {
    double lhs = 0.0;  // f(sum a_i / 2^i)
    double rhs = 0.0;  // sum 2^{k-i}/(2^k-1) f(a_i)
    bool pass() const { return lhs <= rhs + 1e-12 * (1.0 + rhs); }
};

DyadicReport dyadic_convexity_check(const std::function<double(double)>& f,
                                    const std::vector<double>& a);

struct PairingReport {
    // pairing[v][k] = integral (u_k - target) * v_j.
    std::vector<std::vector<double>> pairing;
    double final_max_abs = 0.0;
    bool decreasing_tail = true;
};

PairingReport weak_pairing_check(const std::vector<GridFunction>& sequence,
                                 const GridFunction& target,
                                 const std::vector<GridFunction>& test_functions);

// One row of the approximation experiment per (eps, lambda) cell.
struct ExperimentRow {
    double eps = 0.0;
    double lambda = 0.0;
    double rho = 0.0;          // gradient modular of (grad u_eps - grad u)/lambda
    double bound_factor = 0.0; // 4 phi(eps, c eps^{-N/p}/lambda)^3
    double w1p_error = 0.0;
    std::string verdict;
};

struct LavrentievResult {
    bool in_range = false;               // sharp-range predicate
    double analytic_exponent = 0.0;      // alpha - N(q-p)/p of phi - 1
    double bound_slope = 0.0;            // empirical log-log slope of bound - 4
    std::vector<ExperimentRow> rows;
    std::vector<double> w1p_errors;      // per eps
    std::vector<double> w1p_orders;      // successive log2 ratios
    ModularReport gradient_report;       // modular convergence of the gradients
    bool convergence_claimed = false;    // only when in_range
};

// Mollifies the fixture along the schedule, records W^{1,p} errors and
// the gradient modular per swept lambda, the domination bound factor,
// and the range verdict. Out-of-range parameters still run; the result
// is labeled and no convergence claim is made.
LavrentievResult lavrentiev_experiment(double p, double q, double alpha,
                                       const GridFunction& fixture,
                                       const ScalarField& a_field,
                                       const std::vector<double>& eps_schedule,
                                       const std::vector<double>& lambda_sweep,
                                       int threads = 1);

// Recombined boundary approximation: the interior piece is mollified in
// place, boundary pieces are shifted outward and mollified, and the
// total modular error of u - v at the dyadic lambda is certified
// against eta with the four Jensen terms reported per boundary piece.
struct JensenSplit {
    double i1 = 0.0; // distance to the inner compactly-supported stand-in
    double i2 = 0.0; // translation error of the stand-in
    double i3 = 0.0; // mollified translation error
    double i4 = 0.0; // domination term, bounded by 4 phi^3 * i1
};

struct SegmentApproximation {
    GridFunction v;                 // recombined approximant on the grid
    double lambda = 0.0;            // base scale lambda
    double dyadic_lambda = 0.0;     // 2^{k+1} lambda used in the final bound
    double modular_error = 0.0;     // rho_M((u - v)/dyadic_lambda)
    double eta = 0.0;
    std::vector<JensenSplit> splits;        // one per boundary piece
    std::vector<double> piece_errors;       // rho per piece at its scale
    bool support_ok = true;          // nonzero nodes inside the closure
    double gamma_clearance = 0.0;    // min over boundary pieces
    bool pass() const { return support_ok && modular_error <= eta; }
};

SegmentApproximation segment_approximation(const PhiFunction& M,
                                           const RegularityWitness& phi,
                                           const GridFunction& u,
                                           const SegmentCover& cover,
                                           double lambda, double eta);

// Formula-level consistency of the sharp double-phase range with the
// boundedness of the domination bound factor 4 phi^3 along a deep
// eps-schedule. The slope is measured on the divergent part phi - 1
// (times 3), which is the asymptotic log-log slope of the factor when
// it diverges.
struct RangeConsistency {
    bool predicate = false;
    bool factor_bounded = false;
    double analytic_slope = 0.0;  // 3 (alpha - N (q - p)/p)
    double empirical_slope = 0.0; // 3 * slope of log(phi-1) vs log(eps)
    std::vector<double> eps;
    std::vector<double> bound_factor;
    bool consistent() const { return predicate == factor_bounded; }
};

RangeConsistency range_consistency_check(double p, double q, double alpha, int N,
                                         double C_a, double c, double lambda,
                                         const std::vector<double>& eps_schedule);

} // namespace molab

#endif
