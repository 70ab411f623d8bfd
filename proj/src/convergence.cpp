// SPDX-License-Identifier: Apache-2.0

#include "molab/convergence.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace molab {

const char* verdict_name(ConvergenceVerdict v) {
    switch (v) {
        case ConvergenceVerdict::modular_convergent: return "modular_convergent";
        case ConvergenceVerdict::norm_convergent: return "norm_convergent";
        case ConvergenceVerdict::not_detected: return "not_detected";
    }
    return "?";
}

std::vector<double> default_lambda_sweep() {
    std::vector<double> sweep;
    for (int k = -4; k <= 8; ++k) sweep.push_back(std::pow(2.0, k));
    return sweep;
}

namespace {

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y,
                    size_t begin, size_t end) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (size_t i = begin; i < end; ++i) {
        if (!(y[i] > 0.0) || !std::isfinite(y[i])) continue;
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
        ++n;
    }
    if (n < 2) return 0.0;
    const double denom = n * sxx - sx * sx;
    return denom == 0.0 ? 0.0 : (n * sxy - sx * sy) / denom;
}

GridFunction vector_magnitude(const std::vector<GridFunction>& comps) {
    GridFunction out(comps.front().domain_ptr());
    const size_t n = out.values().size();
    for (size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (const auto& c : comps) acc += c.values()[i] * c.values()[i];
        out.mutable_values()[i] = std::sqrt(acc);
    }
    return out;
}

} // namespace

ModularReport detect_modular_convergence(const PhiFunction& M,
                                         const std::vector<GridFunction>& sequence,
                                         const GridFunction& target,
                                         const std::vector<double>& lambda_sweep) {
    if (sequence.empty()) throw std::invalid_argument("empty sequence");
    ModularReport rep;
    rep.lambda_sweep = lambda_sweep;
    rep.rho.resize(lambda_sweep.size());
    rep.convergent_at.assign(lambda_sweep.size(), false);

    const double h = sequence.front().domain().spacing();
    bool all = true, any = false;
    for (size_t j = 0; j < lambda_sweep.size(); ++j) {
        auto& row = rep.rho[j];
        row.reserve(sequence.size());
        for (const auto& u : sequence) {
            GridFunction diff = u;
            diff -= target;
            row.push_back(modular(M, diff, lambda_sweep[j]));
        }
        const double initial = row.front();
        const double final = row.back();
        // Midpoint quadrature carries an O(h^2) relative error; ten times
        // that is the detection floor.
        const double floor = h * h * (std::isfinite(initial) ? initial : 0.0);
        rep.quadrature_floor = std::max(rep.quadrature_floor, floor);
        const double threshold = std::max(1e-2 * initial, 10.0 * floor);
        const bool ok = std::isfinite(final) && final <= threshold;
        rep.convergent_at[j] = ok;
        all = all && ok;
        if (ok && !any) {
            any = true;
            rep.lambda_star = lambda_sweep[j];
        }
    }
    rep.verdict = all   ? ConvergenceVerdict::norm_convergent
                  : any ? ConvergenceVerdict::modular_convergent
                        : ConvergenceVerdict::not_detected;
    return rep;
}

SupBoundReport verify_sup_bound(const GridFunction& u,
                                const std::vector<double>& eps_schedule,
                                std::optional<double> growth_p) {
    SupBoundReport rep;
    const GridDomain& d = u.domain();
    const int N = d.dim();
    const double kappa = growth_p ? N / *growth_p : static_cast<double>(N);
    std::vector<double> sups;
    for (double eps : eps_schedule) {
        const MollifierSpec spec = build_mollifier(d, eps);
        const GridFunction ue = mollify(u, eps);
        const double sup = ue.max_abs();
        sups.push_back(sup);
        double c;
        if (growth_p) {
            c = spec.lp_dual_norm(d.cell_weight(), *growth_p) *
                std::pow(eps, kappa) * lp_norm(u, *growth_p);
        } else {
            c = spec.max_density(d.cell_weight()) * std::pow(eps, N) * lp_norm(u, 1.0);
        }
        rep.eps.push_back(eps);
        rep.sup_scaled.push_back(sup * std::pow(eps, kappa));
        rep.bound.push_back(c);
        if (c > 0.0) rep.max_ratio = std::max(rep.max_ratio, sup * std::pow(eps, kappa) / c);
    }
    rep.tail_slope = loglog_slope(rep.eps, sups, 0, sups.size());
    return rep;
}

namespace {

DominationCertificate domination_certificate(const PhiFunction& M,
                                             const RegularityWitness& phi,
                                             const GridFunction& mollified,
                                             const GridFunction& original,
                                             double eps, double lambda,
                                             std::optional<double> growth_p,
                                             double c_constant) {
    DominationCertificate cert;
    const int N = original.domain().dim();
    const double kappa = growth_p ? N / *growth_p : static_cast<double>(N);
    cert.c_constant = c_constant;
    const double s_arg = c_constant * std::pow(eps, -kappa) / lambda;
    const double f = phi(eps, s_arg);
    cert.bound_factor = 4.0 * f * f * f;
    cert.lhs = modular(M, mollified, lambda);
    const double base = modular(M, original, lambda);
    cert.rhs = cert.bound_factor * base;
    cert.ratio = cert.rhs > 0.0 ? cert.lhs / cert.rhs : (cert.lhs > 0.0 ? kInf : 0.0);
    return cert;
}

double kernel_constant(const GridDomain& d, double eps, const GridFunction& w,
                       std::optional<double> growth_p) {
    const MollifierSpec spec = build_mollifier(d, eps);
    if (growth_p)
        return spec.lp_dual_norm(d.cell_weight(), *growth_p) *
               std::pow(eps, d.dim() / *growth_p) * lp_norm(w, *growth_p);
    return spec.max_density(d.cell_weight()) * std::pow(eps, d.dim()) * lp_norm(w, 1.0);
}

} // namespace

DominationCertificate verify_modular_domination(const PhiFunction& M,
                                                const RegularityWitness& phi,
                                                const GridFunction& u, double eps,
                                                double lambda,
                                                std::optional<double> growth_p) {
    const GridFunction ue = mollify(u, eps);
    const double c = kernel_constant(u.domain(), eps, u, growth_p);
    return domination_certificate(M, phi, ue, u, eps, lambda, growth_p, c);
}

DominationCertificate verify_shifted_domination(const PhiFunction& M,
                                                const RegularityWitness& phi,
                                                const GridFunction& u_i,
                                                const SegmentCover& cover, int piece,
                                                double r, double eps, double lambda,
                                                std::optional<double> growth_p) {
    const ShiftedMollification sm =
        shifted_mollify(u_i, cover, piece, r, eps, ShiftDirection::outward);
    const double c = kernel_constant(u_i.domain(), eps, u_i, growth_p);
    return domination_certificate(M, phi, sm.v, u_i, eps, lambda, growth_p, c);
}

DyadicReport dyadic_convexity_check(const std::function<double(double)>& f,
                                    const std::vector<double>& a) {
    if (a.empty()) throw std::invalid_argument("empty coefficient list");
    DyadicReport rep;
    const int k = static_cast<int>(a.size());
    double arg = 0.0;
    for (int i = 1; i <= k; ++i) arg += a[static_cast<size_t>(i - 1)] / std::pow(2.0, i);
    rep.lhs = f(arg);
    const double denom = std::pow(2.0, k) - 1.0;
    for (int i = 1; i <= k; ++i)
        rep.rhs += std::pow(2.0, k - i) / denom * f(a[static_cast<size_t>(i - 1)]);
    return rep;
}

PairingReport weak_pairing_check(const std::vector<GridFunction>& sequence,
                                 const GridFunction& target,
                                 const std::vector<GridFunction>& test_functions) {
    PairingReport rep;
    rep.pairing.resize(test_functions.size());
    for (size_t j = 0; j < test_functions.size(); ++j) {
        auto& row = rep.pairing[j];
        for (const auto& u : sequence) {
            GridFunction diff = u;
            diff -= target;
            row.push_back(pairing(diff, test_functions[j]));
        }
        if (!row.empty()) {
            rep.final_max_abs = std::max(rep.final_max_abs, std::abs(row.back()));
            if (std::abs(row.back()) > std::abs(row.front()) + 1e-14)
                rep.decreasing_tail = false;
        }
    }
    return rep;
}

LavrentievResult lavrentiev_experiment(double p, double q, double alpha,
                                       const GridFunction& fixture,
                                       const ScalarField& a_field,
                                       const std::vector<double>& eps_schedule,
                                       const std::vector<double>& lambda_sweep,
                                       int threads) {
    const GridDomain& d = fixture.domain();
    const int N = d.dim();
    LavrentievResult result;
    result.in_range = sharp_range_predicate(p, q, alpha, N);
    result.analytic_exponent = alpha - N * (q - p) / p;

    const PhiPtr H = make_double_phase(p, q, a_field);
    const RegularityWitness phi = phi_witness(*H);

    const auto grad_u = gradient(fixture);
    const GridFunction grad_mag_u = vector_magnitude(grad_u);
    const double grad_p_norm = lp_norm(grad_mag_u, p);

    // The convolutions dominate the cost; run them in parallel slots.
    std::vector<GridFunction> mollified(eps_schedule.size(), GridFunction(fixture.domain_ptr()));
    {
        const int nt = std::max(1, threads);
        std::vector<std::thread> pool;
        std::atomic<size_t> next{0};
        auto work = [&]() {
            for (size_t i = next.fetch_add(1); i < eps_schedule.size();
                 i = next.fetch_add(1))
                mollified[i] = mollify(fixture, eps_schedule[i]);
        };
        if (nt == 1) {
            work();
        } else {
            for (int t = 0; t < nt; ++t) pool.emplace_back(work);
            for (auto& th : pool) th.join();
        }
    }

    std::vector<GridFunction> grad_diffs; // |grad u_eps - grad u| per eps
    std::vector<double> factors_at_unit;
    const std::string label = result.in_range ? "in_range" : "out_of_range";

    for (size_t ei = 0; ei < eps_schedule.size(); ++ei) {
        const double eps = eps_schedule[ei];
        const GridFunction& ue = mollified[ei];
        result.w1p_errors.push_back(w1p_distance(ue, fixture, p));

        auto grad_e = gradient(ue);
        std::vector<GridFunction> comps;
        for (size_t k = 0; k < grad_e.size(); ++k) {
            GridFunction c = grad_e[k];
            c -= grad_u[k];
            comps.push_back(std::move(c));
        }
        grad_diffs.push_back(vector_magnitude(comps));

        const MollifierSpec spec = build_mollifier(d, eps);
        const double c_p = spec.lp_dual_norm(d.cell_weight(), p) *
                           std::pow(eps, N / p) * grad_p_norm;
        for (double lambda : lambda_sweep) {
            ExperimentRow row;
            row.eps = eps;
            row.lambda = lambda;
            row.rho = modular(*H, grad_diffs.back(), lambda);
            const double f = phi(eps, c_p * std::pow(eps, -N / p) / lambda);
            row.bound_factor = 4.0 * f * f * f;
            row.w1p_error = result.w1p_errors.back();
            row.verdict = label;
            result.rows.push_back(std::move(row));
        }
        const double f1 = phi(eps, c_p * std::pow(eps, -N / p));
        factors_at_unit.push_back(f1 - 1.0);
    }

    for (size_t k = 0; k + 1 < result.w1p_errors.size(); ++k) {
        const double re = eps_schedule[k + 1] / eps_schedule[k];
        const double rv = result.w1p_errors[k + 1] / result.w1p_errors[k];
        result.w1p_orders.push_back(std::log(rv) / std::log(re));
    }

    GridFunction zero(fixture.domain_ptr());
    result.gradient_report =
        detect_modular_convergence(*H, grad_diffs, zero, lambda_sweep);
    result.bound_slope =
        3.0 * loglog_slope(eps_schedule, factors_at_unit, 0, factors_at_unit.size());
    result.convergence_claimed =
        result.in_range &&
        result.gradient_report.verdict != ConvergenceVerdict::not_detected;
    return result;
}

namespace {

// Smooth interior cutoff: 0 within delta of the boundary, 1 beyond
// 2*delta. Multiplying by it yields the compactly-supported stand-in of
// the Jensen split.
GridFunction interior_cutoff(const GridDomain& d, double delta) {
    const Box& omega = d.bounds();
    auto dist_to_boundary = [&](const Point& x) {
        double m = kInf;
        for (int axis = 0; axis < d.dim(); ++axis) {
            const size_t j = static_cast<size_t>(axis);
            m = std::min({m, x.x[j] - omega.lo[j], omega.hi[j] - x.x[j]});
        }
        return m;
    };
    auto dom = std::make_shared<const GridDomain>(d);
    return GridFunction::from_callable(dom, [&](const Point& x) {
        return 1.0 - cutoff_profile(dist_to_boundary(x) / delta);
    });
}

} // namespace

SegmentApproximation segment_approximation(const PhiFunction& M,
                                           const RegularityWitness& phi,
                                           const GridFunction& u,
                                           const SegmentCover& cover,
                                           double lambda, double eta) {
    const GridDomain& d = u.domain();
    const auto dom = u.domain_ptr();
    const double h = d.spacing();

    int k = 0; // boundary pieces
    for (const auto& piece : cover.pieces)
        if (piece.boundary_piece) ++k;
    if (k == 0) throw std::invalid_argument("cover has no boundary piece");

    // eta_bar = (eta/2) (sum_i 2^{k-i}/(2^k-1))^{-1}, the dyadic budget.
    double dyadic_sum = 0.0;
    for (int i = 1; i <= k; ++i)
        dyadic_sum += std::pow(2.0, k - i) / (std::pow(2.0, k) - 1.0);
    const double eta_bar = 0.5 * eta / dyadic_sum;

    SegmentApproximation out{GridFunction(dom), lambda,
                             std::pow(2.0, k + 1) * lambda, 0.0, eta, {}, {}, true, kInf};

    int boundary_rank = 0;
    for (size_t pi = 0; pi < cover.pieces.size(); ++pi) {
        const CoverPiece& piece = cover.pieces[pi];
        GridFunction u_i = u.multiply(cover.psi[pi]);

        if (!piece.boundary_piece) {
            // Interior piece: plain mollification below the clearance.
            const double clearance = cover.eps_max_inward(d, static_cast<int>(pi), 0.0);
            double eps = std::min(0.5 * clearance, 64.0 * h);
            if (eps < 2.0 * h)
                throw std::invalid_argument("grid too coarse for the interior mollification");
            GridFunction v0 = u_i;
            double err = kInf;
            while (eps >= 2.0 * h) {
                v0 = mollify(u_i, eps);
                GridFunction diff = u_i;
                diff -= v0;
                err = modular(M, diff, lambda);
                if (err <= 0.5 * eta_bar) break;
                eps *= 0.5;
            }
            out.piece_errors.push_back(err);
            out.v += v0;
            continue;
        }

        ++boundary_rank;
        const double target = eta_bar / std::pow(2.0, boundary_rank);
        const double rmax = cover.r_max(static_cast<int>(pi));

        JensenSplit split;
        double best_err = kInf;
        GridFunction best_v(dom);
        for (int level = 0; level < 24; ++level) {
            const double r = std::min(0.9 * rmax, 16.0 * h / piece.z_norm()) *
                             std::pow(0.5, level);
            if (r * piece.z_norm() < h) break; // shift snaps to zero
            const double emax = cover.eps_max_outward(d, static_cast<int>(pi), r);
            const double eps =
                std::min(0.9 * emax, std::max(2.0 * h, 8.0 * h * std::pow(0.5, level)));
            if (!(eps >= 2.0 * h) || !(eps < emax)) continue;

            const ShiftedMollification sm = shifted_mollify(
                u_i, cover, static_cast<int>(pi), r, eps, ShiftDirection::outward);
            out.gamma_clearance = std::min(out.gamma_clearance, sm.gamma_clearance);

            GridFunction diff = u_i;
            diff -= sm.v;
            const double err = modular(M, diff, 4.0 * lambda);
            if (err < best_err) {
                best_err = err;
                best_v = sm.v;

                // The four Jensen terms at these parameters.
                const double delta = std::max(2.0 * h, 0.5 * r * piece.z_norm());
                const GridFunction cut = interior_cutoff(d, delta);
                const GridFunction u_in = u_i.multiply(cut);

                GridFunction d1 = u_i;
                d1 -= u_in;
                split.i1 = modular(M, d1, lambda);

                const std::array<double, 2> shift{-r * piece.z[0], -r * piece.z[1]};
                const GridFunction u_in_shift = translate(u_in, shift);
                GridFunction d2 = u_in;
                d2 -= u_in_shift;
                split.i2 = modular(M, d2, lambda);

                const GridFunction moll_shift = mollify(u_in_shift, eps);
                GridFunction d3 = u_in_shift;
                d3 -= moll_shift;
                split.i3 = modular(M, d3, lambda);

                const GridFunction u_i_shift = translate(u_i, shift);
                GridFunction d4 = mollify(u_i_shift, eps);
                d4 -= moll_shift;
                split.i4 = modular(M, d4, lambda);
            }
            if (err <= target) break;
        }
        out.splits.push_back(split);
        out.piece_errors.push_back(best_err);
        out.v += best_v;
    }

    GridFunction total = u;
    total -= out.v;
    out.modular_error = modular(M, total, out.dyadic_lambda);

    // Every nonzero node of the recombined approximant must lie in the
    // domain closure; grid samples live there by construction, so this
    // asserts the discrete support bookkeeping stayed consistent.
    const Box supp = out.v.support_box();
    out.support_ok = d.bounds().contains_box(supp) || out.v.is_zero();
    (void)phi;
    return out;
}

RangeConsistency range_consistency_check(double p, double q, double alpha, int N,
                                         double C_a, double c, double lambda,
                                         const std::vector<double>& eps_schedule) {
    RangeConsistency out;
    out.predicate = sharp_range_predicate(p, q, alpha, N);
    out.analytic_slope = 3.0 * (alpha - N * (q - p) / p);
    const RegularityWitness w = make_double_phase_witness(C_a, alpha, q - p);
    const ScalingReport scaling =
        check_scaling_limsup(w, c / lambda, N, p, eps_schedule);
    out.eps = eps_schedule;
    std::vector<double> divergent_part;
    for (size_t i = 0; i < eps_schedule.size(); ++i) {
        const double f = scaling.phi_values[i];
        out.bound_factor.push_back(4.0 * f * f * f);
        divergent_part.push_back(f - 1.0);
    }
    out.factor_bounded = scaling.bounded;
    out.empirical_slope =
        3.0 * loglog_slope(eps_schedule, divergent_part, 0, eps_schedule.size());
    return out;
}

} // namespace molab
