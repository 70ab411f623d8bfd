// SPDX-License-Identifier: Apache-2.0

#include "molab/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace molab {

namespace {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Modulus of continuity sigma(tau) of an exponent field from its
// declared regularity.
std::function<double(double)> modulus_of(const FieldRegularity& reg) {
    switch (reg.kind) {
        case FieldRegularity::Kind::constant:
            return [](double) { return 0.0; };
        case FieldRegularity::Kind::lipschitz: {
            const double L = reg.constant;
            return [L](double tau) { return L * tau; };
        }
        case FieldRegularity::Kind::holder: {
            const double C = reg.constant, a = reg.alpha;
            return [C, a](double tau) { return C * std::pow(tau, a); };
        }
        case FieldRegularity::Kind::log_holder: {
            const double c = reg.constant;
            return [c](double tau) {
                if (tau <= 0.0) return 0.0;
                return c / std::log(1.0 / tau); // tau <= 1/2 < 1
            };
        }
    }
    return [](double) { return 0.0; };
}

RegularityWitness trivial_witness() {
    RegularityWitness w;
    w.eval = [](double, double) { return 1.0; };
    w.description = "phi == 1 (x-independent integrand)";
    w.scaling_exponent = [](double) -> std::optional<double> { return std::nullopt; };
    return w;
}

RegularityWitness double_phase_witness(const PhiFunction& M) {
    const ScalarField& a = *M.a_field();
    double C_a = 0.0, alpha = 1.0;
    switch (a.regularity.kind) {
        case FieldRegularity::Kind::constant:
            return trivial_witness();
        case FieldRegularity::Kind::lipschitz:
            C_a = a.regularity.constant;
            alpha = 1.0;
            break;
        case FieldRegularity::Kind::holder:
            C_a = a.regularity.constant;
            alpha = a.regularity.alpha;
            break;
        case FieldRegularity::Kind::log_holder:
            throw std::invalid_argument("double phase weight needs Hoelder regularity");
    }
    const double exponent_gap = M.p_upper() - M.p_lower(); // q - p
    RegularityWitness w;
    w.description = "1 + C_a tau^alpha s^(q-p)";
    w.eval = [C_a, alpha, exponent_gap](double tau, double s) {
        return 1.0 + C_a * std::pow(tau, alpha) * std::pow(s, exponent_gap);
    };
    w.scaling_exponent = [alpha, exponent_gap](double kappa) -> std::optional<double> {
        return alpha - kappa * exponent_gap;
    };
    return w;
}

RegularityWitness variable_exponent_witness(const PhiFunction& M) {
    const ScalarField& pf = *M.p_field();
    if (pf.regularity.kind == FieldRegularity::Kind::constant) return trivial_witness();
    const double ratio = pf.sup_bound / pf.inf_bound; // p+ / p-
    auto sigma = modulus_of(pf.regularity);
    RegularityWitness w;
    w.description = "(p+/p-) max{ s^sigma(tau), s^-sigma(tau) }";
    w.eval = [ratio, sigma](double tau, double s) {
        const double sg = sigma(tau);
        if (s <= 0.0) return ratio;
        const double t = std::pow(s, sg);
        return ratio * std::max(t, 1.0 / t);
    };
    w.scaling_exponent = [](double) -> std::optional<double> { return std::nullopt; };
    return w;
}

RegularityWitness smoothed_exponent_witness(const PhiFunction& M) {
    // [(1+s^2)^(p/2)-1]/p obeys M(x,s) <= (p+/p-) e^{sigma/p-} (1+s)^sigma M(y,s):
    // log(B^t - 1) has t-derivative log B / (1 - B^-t) <= log B + 1/t with
    // B = sqrt(1+s^2) <= 1+s.
    const ScalarField& pf = *M.p_field();
    if (pf.regularity.kind == FieldRegularity::Kind::constant) return trivial_witness();
    const double ratio = pf.sup_bound / pf.inf_bound;
    const double p_lo = pf.inf_bound;
    auto sigma = modulus_of(pf.regularity);
    RegularityWitness w;
    w.description = "(p+/p-) e^(sigma/p-) (1+s)^sigma(tau)";
    w.eval = [ratio, p_lo, sigma](double tau, double s) {
        const double sg = sigma(tau);
        return ratio * std::exp(sg / p_lo) * std::pow(1.0 + s, sg);
    };
    w.scaling_exponent = [](double) -> std::optional<double> { return std::nullopt; };
    return w;
}

RegularityWitness weighted_sum_witness(const PhiFunction& M) {
    std::vector<std::function<double(double)>> phis;
    for (const auto& term : M.terms()) {
        const auto& reg = term.weight.regularity;
        const double k_inf = term.weight.inf_bound;
        switch (reg.kind) {
            case FieldRegularity::Kind::constant:
                phis.emplace_back([](double) { return 1.0; });
                break;
            case FieldRegularity::Kind::lipschitz: {
                const double c = reg.constant / k_inf;
                phis.emplace_back([c](double tau) { return 1.0 + c * tau; });
                break;
            }
            case FieldRegularity::Kind::holder: {
                const double c = reg.constant / k_inf;
                const double a = reg.alpha;
                phis.emplace_back([c, a](double tau) { return 1.0 + c * std::pow(tau, a); });
                break;
            }
            case FieldRegularity::Kind::log_holder:
                throw std::invalid_argument("weighted_sum weight needs Hoelder regularity");
        }
    }
    std::optional<RegularityWitness> base;
    if (M.base()) base = phi_witness(*M.base());
    RegularityWitness w;
    w.description = "sum_i phi_i(tau) + phi_0(tau,s)";
    w.eval = [phis, base](double tau, double s) {
        double acc = 0.0;
        for (const auto& f : phis) acc += f(tau);
        if (base) acc += base->eval(tau, s);
        return acc;
    };
    w.scaling_exponent = [](double) -> std::optional<double> { return std::nullopt; };
    return w;
}

} // namespace

RegularityWitness phi_witness(const PhiFunction& M) {
    if (!M.x_dependent()) return trivial_witness();
    switch (M.family()) {
        case PhiFamily::double_phase:
            return double_phase_witness(M);
        case PhiFamily::variable_exponent:
        case PhiFamily::vexp_log:
            return variable_exponent_witness(M);
        case PhiFamily::vexp_smoothed:
            return smoothed_exponent_witness(M);
        case PhiFamily::weighted_sum:
            return weighted_sum_witness(M);
        case PhiFamily::exp_power:
        case PhiFamily::orlicz_custom:
            break;
    }
    throw std::invalid_argument(std::string("no domination witness for family ") +
                                family_name(M.family()));
}

bool has_phi_witness(const PhiFunction& M) {
    if (!M.x_dependent()) return true;
    switch (M.family()) {
        case PhiFamily::double_phase:
            return M.a_field()->regularity.kind != FieldRegularity::Kind::log_holder;
        case PhiFamily::variable_exponent:
        case PhiFamily::vexp_log:
        case PhiFamily::vexp_smoothed:
            return true;
        case PhiFamily::weighted_sum: {
            for (const auto& t : M.terms())
                if (t.weight.regularity.kind == FieldRegularity::Kind::log_holder)
                    return false;
            return M.base() == nullptr || has_phi_witness(*M.base());
        }
        default:
            return false;
    }
}

DominationReport check_pointwise_domination(const PhiFunction& M,
                                            const RegularityWitness& phi,
                                            const std::vector<std::pair<Point, Point>>& pairs,
                                            const std::vector<double>& s_grid) {
    DominationReport rep;
    for (const auto& [x, y] : pairs) {
        const double tau = x.distance(y);
        if (tau > 0.5 + 1e-12) throw std::invalid_argument("pair separation exceeds 1/2");
        for (double s : s_grid) {
            if (s == 0.0) continue;
            const double denom = M(y, s);
            if (!(denom > 0.0) || !std::isfinite(denom)) continue;
            const double ratio = M(x, s) / (phi(tau, s) * denom);
            if (ratio > rep.max_ratio) {
                rep.max_ratio = ratio;
                rep.worst_x = x;
                rep.worst_y = y;
                rep.worst_s = s;
            }
        }
        ++rep.pairs_checked;
    }
    return rep;
}

std::vector<std::pair<Point, Point>> sample_pairs(const GridDomain& domain,
                                                  int count, double max_sep,
                                                  std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const Box& b = domain.bounds();
    auto draw = [&]() {
        Point p;
        p.dim = domain.dim();
        for (int d = 0; d < domain.dim(); ++d)
            p.x[static_cast<size_t>(d)] =
                b.lo[static_cast<size_t>(d)] + uniform01(rng) * b.length(d);
        return p;
    };
    std::vector<std::pair<Point, Point>> pairs;
    pairs.reserve(static_cast<size_t>(count));
    int guard = 0;
    while (static_cast<int>(pairs.size()) < count && guard < count * 1000) {
        ++guard;
        const Point x = draw();
        Point y = x;
        // Perturb within the separation budget, then clamp into the box.
        for (int d = 0; d < domain.dim(); ++d) {
            const size_t i = static_cast<size_t>(d);
            y.x[i] += (2.0 * uniform01(rng) - 1.0) * max_sep / std::sqrt(double(domain.dim()));
            y.x[i] = std::clamp(y.x[i], b.lo[i], b.hi[i]);
        }
        if (x.distance(y) <= max_sep) pairs.emplace_back(x, y);
    }
    return pairs;
}

ScalingReport check_scaling_limsup(const RegularityWitness& phi, double c, int N,
                                   std::optional<double> growth_p,
                                   const std::vector<double>& eps_schedule) {
    if (eps_schedule.size() < 2) throw std::invalid_argument("schedule too short");
    for (size_t i = 1; i < eps_schedule.size(); ++i)
        if (!(eps_schedule[i] < eps_schedule[i - 1]))
            throw std::invalid_argument("schedule must be strictly decreasing");

    const double kappa = growth_p ? static_cast<double>(N) / *growth_p
                                  : static_cast<double>(N);
    ScalingReport rep;
    rep.eps = eps_schedule;
    rep.phi_values.reserve(eps_schedule.size());
    for (double e : eps_schedule)
        rep.phi_values.push_back(phi(e, c * std::pow(e, -kappa)));
    rep.last_value = rep.phi_values.back();

    // log-log slope over the tail half.
    {
        const size_t n = rep.phi_values.size();
        const size_t begin = n / 2;
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int cnt = 0;
        for (size_t i = begin; i < n; ++i) {
            if (!(rep.phi_values[i] > 0.0) || !std::isfinite(rep.phi_values[i])) continue;
            const double lx = std::log(rep.eps[i]);
            const double ly = std::log(rep.phi_values[i]);
            sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
            ++cnt;
        }
        const double denom = cnt * sxx - sx * sx;
        rep.tail_slope = (cnt >= 2 && denom != 0.0) ? (cnt * sxy - sx * sy) / denom : 0.0;
    }

    rep.analytic_exponent = phi.scaling_exponent ? phi.scaling_exponent(kappa)
                                                 : std::nullopt;
    if (rep.analytic_exponent) {
        rep.bounded = *rep.analytic_exponent >= -1e-12;
    } else {
        // Tail rule: last four values nonincreasing or within 5%.
        const size_t n = rep.phi_values.size();
        const size_t k = std::min<size_t>(4, n);
        double lo = kInf, hi = -kInf;
        bool nonincreasing = true;
        for (size_t i = n - k; i < n; ++i) {
            const double v = rep.phi_values[i];
            if (!std::isfinite(v)) {
                nonincreasing = false;
                hi = kInf;
                break;
            }
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            if (i > n - k && v > rep.phi_values[i - 1] * (1.0 + 1e-12))
                nonincreasing = false;
        }
        rep.bounded = nonincreasing || (std::isfinite(hi) && hi <= lo * 1.05);
    }
    return rep;
}

bool sharp_range_predicate(double p, double q, double alpha, int N) {
    if (!(p > 1.0) || !(q > 1.0)) throw std::invalid_argument("need p, q > 1");
    if (!(alpha > 0.0) || alpha > 1.0) throw std::invalid_argument("need alpha in (0,1]");
    if (N < 1) throw std::invalid_argument("need N >= 1");
    // q/p <= 1 + alpha/N, compared multiplied out with an ulp-level slack
    // so exact-boundary tuples land inside.
    const double lhs = q * N;
    const double rhs = p * N + alpha * p;
    return lhs <= rhs * (1.0 + 1e-12);
}

IntegrabilityReport check_local_integrability(const PhiFunction& M,
                                              const GridDomain& domain,
                                              const Box& K,
                                              const std::vector<double>& c_list) {
    IntegrabilityReport rep;
    const double w = domain.cell_weight();
    for (double c : c_list) {
        double acc = 0.0;
        bool finite = true;
        for (std::int64_t i = 0; i < domain.node_count(); ++i) {
            const Point x = domain.node(i);
            if (!K.contains(x)) continue;
            const double v = M(x, c);
            if (!std::isfinite(v)) {
                finite = false;
                rep.worst_c = c;
                rep.worst_x = x;
                break;
            }
            acc += v;
        }
        if (!finite) {
            rep.pass = false;
            rep.integrals.emplace_back(c, kInf);
        } else {
            rep.integrals.emplace_back(c, acc * w);
        }
    }
    return rep;
}

RegularityWitness make_double_phase_witness(double C_a, double alpha,
                                            double exponent_gap) {
    RegularityWitness w;
    w.description = "1 + C_a tau^alpha s^(q-p)";
    w.eval = [C_a, alpha, exponent_gap](double tau, double s) {
        return 1.0 + C_a * std::pow(tau, alpha) * std::pow(s, exponent_gap);
    };
    w.scaling_exponent = [alpha, exponent_gap](double kappa) -> std::optional<double> {
        return alpha - kappa * exponent_gap;
    };
    return w;
}

std::vector<double> geometric_schedule(double eps0, double ratio, int n) {
    std::vector<double> out(static_cast<size_t>(n));
    double e = eps0;
    for (int i = 0; i < n; ++i) {
        out[static_cast<size_t>(i)] = e;
        e *= ratio;
    }
    return out;
}

} // namespace molab
