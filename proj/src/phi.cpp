// SPDX-License-Identifier: Apache-2.0

#include "molab/phi.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "molab/grid.hpp"

namespace molab {

double Point::norm() const {
    return std::sqrt(x[0] * x[0] + x[1] * x[1]);
}

double Point::distance(const Point& other) const {
    const double dx = x[0] - other.x[0];
    const double dy = x[1] - other.x[1];
    return std::sqrt(dx * dx + dy * dy);
}

const char* family_name(PhiFamily f) {
    switch (f) {
        case PhiFamily::variable_exponent: return "variable_exponent";
        case PhiFamily::vexp_log: return "vexp_log";
        case PhiFamily::vexp_smoothed: return "vexp_smoothed";
        case PhiFamily::double_phase: return "double_phase";
        case PhiFamily::exp_power: return "exp_power";
        case PhiFamily::orlicz_custom: return "orlicz_custom";
        case PhiFamily::weighted_sum: return "weighted_sum";
    }
    return "?";
}

ScalarField ScalarField::constant(double c) {
    ScalarField f;
    f.eval = [c](const Point&) { return c; };
    f.regularity = FieldRegularity{FieldRegularity::Kind::constant, 0.0, 1.0};
    f.inf_bound = c;
    f.sup_bound = c;
    return f;
}

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

double pow_guarded(double s, double p) {
    if (s == 0.0) return 0.0;
    return std::pow(s, p);
}

} // namespace

PhiPtr make_family(const FamilySpec& spec) {
    auto M = std::shared_ptr<PhiFunction>(new PhiFunction());
    M->family_ = spec.family;
    M->label_ = spec.label.empty() ? family_name(spec.family) : spec.label;

    switch (spec.family) {
        case PhiFamily::variable_exponent:
        case PhiFamily::vexp_log:
        case PhiFamily::vexp_smoothed: {
            require(spec.p_field.has_value(), "variable exponent family needs p(x)");
            const ScalarField pf = *spec.p_field;
            require(pf.inf_bound > 1.0, "exponent field must satisfy p(x) > 1");
            require(pf.sup_bound >= pf.inf_bound && std::isfinite(pf.sup_bound),
                    "exponent field needs finite bounds");
            M->p_field_ = pf;
            M->p_lower_ = pf.inf_bound;
            M->p_upper_ = pf.sup_bound;
            M->x_dependent_ = pf.regularity.kind != FieldRegularity::Kind::constant;
            if (spec.family == PhiFamily::variable_exponent) {
                M->eval_ = [pf](const Point& x, double s) {
                    return pow_guarded(s, pf.eval(x));
                };
            } else if (spec.family == PhiFamily::vexp_log) {
                M->eval_ = [pf](const Point& x, double s) {
                    if (s == 0.0) return 0.0;
                    return std::pow(s, pf.eval(x)) * std::log(std::exp(1.0) + s);
                };
            } else {
                M->eval_ = [pf](const Point& x, double s) {
                    if (s == 0.0) return 0.0;
                    const double p = pf.eval(x);
                    return (std::pow(1.0 + s * s, 0.5 * p) - 1.0) / p;
                };
            }
            break;
        }
        case PhiFamily::double_phase: {
            require(spec.p > 1.0 && std::isfinite(spec.p), "double phase needs p > 1");
            require(spec.q > 1.0 && std::isfinite(spec.q), "double phase needs q > 1");
            require(spec.q >= spec.p, "double phase needs q >= p");
            ScalarField a = spec.a_field.value_or(ScalarField::constant(0.0));
            require(a.inf_bound >= 0.0, "double phase weight must be nonnegative");
            M->a_field_ = a;
            M->p_lower_ = spec.p;
            M->p_upper_ = spec.q;
            M->x_dependent_ = a.regularity.kind != FieldRegularity::Kind::constant;
            const double p = spec.p;
            const double q = spec.q;
            M->eval_ = [a, p, q](const Point& x, double s) {
                if (s == 0.0) return 0.0;
                return std::pow(s, p) + a.eval(x) * std::pow(s, q);
            };
            M->deriv_ = [a, p, q](const Point& x, double s) {
                if (s == 0.0) return 0.0;
                return p * std::pow(s, p - 1.0) + a.eval(x) * q * std::pow(s, q - 1.0);
            };
            break;
        }
        case PhiFamily::exp_power: {
            ScalarField pf = spec.p_field.value_or(ScalarField::constant(spec.p));
            require(pf.inf_bound > 1.0, "exp_power needs p(x) > 1");
            M->p_field_ = pf;
            M->p_lower_ = pf.inf_bound;
            M->p_upper_ = kInf; // grows faster than every power
            M->x_dependent_ = pf.regularity.kind != FieldRegularity::Kind::constant;
            M->finite_valued_ = true; // finite in exact arithmetic; capped numerically
            M->eval_ = [pf](const Point& x, double s) {
                if (s == 0.0) return 0.0;
                const double arg = std::pow(s, pf.eval(x));
                if (arg > kExpArgCap) return kInf;
                return std::expm1(arg);
            };
            break;
        }
        case PhiFamily::orlicz_custom: {
            require(static_cast<bool>(spec.custom), "orlicz_custom needs an evaluator");
            auto f = spec.custom;
            M->p_lower_ = spec.p;
            M->p_upper_ = spec.q >= spec.p ? spec.q : spec.p;
            M->x_dependent_ = false;
            M->finite_valued_ = false; // unknown; checks probe it
            M->eval_ = [f](const Point&, double s) { return s == 0.0 ? 0.0 : f(s); };
            if (spec.custom_derivative) {
                auto df = spec.custom_derivative;
                M->deriv_ = [df](const Point&, double s) { return df(s); };
            }
            break;
        }
        case PhiFamily::weighted_sum: {
            require(!spec.terms.empty() || spec.base != nullptr,
                    "weighted_sum needs at least one term");
            for (const auto& t : spec.terms) {
                require(static_cast<bool>(t.weight.eval), "weighted term needs a weight field");
                require(t.weight.inf_bound > 0.0, "weighted term weight must be positive");
                require(static_cast<bool>(t.phi_s), "weighted term needs an s-evaluator");
            }
            M->terms_ = spec.terms;
            M->base_ = spec.base;
            M->x_dependent_ = true;
            double plo = kInf, phi_up = 0.0;
            if (spec.base) {
                plo = spec.base->p_lower();
                phi_up = spec.base->p_upper();
            }
            if (!std::isfinite(plo)) plo = spec.p;
            if (phi_up <= 0.0) phi_up = spec.q >= spec.p ? spec.q : spec.p;
            M->p_lower_ = plo;
            M->p_upper_ = phi_up;
            auto terms = spec.terms;
            auto base = spec.base;
            M->eval_ = [terms, base](const Point& x, double s) {
                if (s == 0.0) return 0.0;
                double acc = 0.0;
                for (const auto& t : terms) acc += t.weight.eval(x) * t.phi_s(s);
                if (base) acc += (*base)(x, s);
                return acc;
            };
            break;
        }
    }
    return M;
}

double PhiFunction::operator()(const Point& x, double s) const {
    if (s < 0.0) throw std::domain_error("modular integrand argument s must be >= 0");
    if (s == 0.0) return 0.0;
    return eval_(x, s);
}

double PhiFunction::derivative_s(const Point& x, double s) const {
    if (deriv_) return deriv_(x, s);
    const double h = std::max(1e-7, 1e-7 * s);
    const double lo = std::max(0.0, s - h);
    return ((*this)(x, s + h) - (*this)(x, lo)) / (s + h - lo);
}

double eval(const PhiFunction& M, const Point& x, double s) {
    return M(x, s);
}

PhiPtr make_power(double p) {
    FamilySpec spec;
    spec.family = PhiFamily::orlicz_custom;
    spec.p = p;
    spec.q = p;
    spec.custom = [p](double s) { return std::pow(s, p); };
    spec.custom_derivative = [p](double s) { return s == 0.0 ? 0.0 : p * std::pow(s, p - 1.0); };
    spec.label = "power";
    return make_family(spec);
}

PhiPtr make_power_over_p(double p) {
    FamilySpec spec;
    spec.family = PhiFamily::orlicz_custom;
    spec.p = p;
    spec.q = p;
    spec.custom = [p](double s) { return std::pow(s, p) / p; };
    spec.custom_derivative = [p](double s) { return s == 0.0 ? 0.0 : std::pow(s, p - 1.0); };
    spec.label = "power_over_p";
    return make_family(spec);
}

PhiPtr make_double_phase(double p, double q, ScalarField a) {
    FamilySpec spec;
    spec.family = PhiFamily::double_phase;
    spec.p = p;
    spec.q = q;
    spec.a_field = std::move(a);
    return make_family(spec);
}

PhiPtr make_variable_exponent(ScalarField p_field) {
    FamilySpec spec;
    spec.family = PhiFamily::variable_exponent;
    spec.p_field = std::move(p_field);
    return make_family(spec);
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g(static_cast<size_t>(n));
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < n; ++i)
        g[static_cast<size_t>(i)] = std::exp(llo + (lhi - llo) * i / (n - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

std::vector<double> default_s_grid() {
    return log_grid(1e-3, 1e3, 121);
}

namespace {

// Least-squares slope of log(v) against log(s) over the index window.
double loglog_slope(const std::vector<double>& s, const std::vector<double>& v,
                    size_t begin, size_t end) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (size_t i = begin; i < end; ++i) {
        if (!(v[i] > 0.0) || !std::isfinite(v[i])) continue;
        const double lx = std::log(s[i]);
        const double ly = std::log(v[i]);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
        ++n;
    }
    if (n < 2) return 0.0;
    const double denom = n * sxx - sx * sx;
    return denom == 0.0 ? 0.0 : (n * sxy - sx * sy) / denom;
}

} // namespace

NFunctionReport check_n_function(const PhiFunction& M,
                                 const std::vector<Point>& x_sample,
                                 const std::vector<double>& s_grid,
                                 double convexity_tol) {
    NFunctionReport rep;
    rep.convex = true;
    rep.zero_at_zero = true;
    rep.inf_at_one_positive = true;
    rep.strictly_increasing = true;
    rep.ratio_vanishes_at_zero = true;
    rep.ratio_diverges_at_inf = true;

    const size_t n = s_grid.size();
    for (const Point& x : x_sample) {
        if (M(x, 0.0) != 0.0) rep.zero_at_zero = false;
        if (!(M(x, 1.0) > 0.0)) rep.inf_at_one_positive = false;

        std::vector<double> vals(n);
        for (size_t i = 0; i < n; ++i) vals[i] = M(x, s_grid[i]);

        // Chord test on consecutive triples; triples touching the
        // overflow sentinel are skipped.
        for (size_t i = 0; i + 2 < n; ++i) {
            const double v1 = vals[i], v2 = vals[i + 1], v3 = vals[i + 2];
            if (!std::isfinite(v1) || !std::isfinite(v2) || !std::isfinite(v3)) continue;
            const double s1 = s_grid[i], s2 = s_grid[i + 1], s3 = s_grid[i + 2];
            const double lhs = v2 * (s3 - s1);
            const double rhs = v1 * (s3 - s2) + v3 * (s2 - s1);
            const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
            const double resid = (lhs - rhs) / scale;
            rep.worst_convexity_residual = std::max(rep.worst_convexity_residual, resid);
            if (resid > convexity_tol) rep.convex = false;
        }

        for (size_t i = 0; i + 1 < n; ++i) {
            if (!std::isfinite(vals[i]) || !std::isfinite(vals[i + 1])) continue;
            if (!(vals[i + 1] > vals[i])) rep.strictly_increasing = false;
        }

        // Phi limits through the ratio r(s) = M(x,s)/s: the trend toward
        // s -> 0 must decrease (positive log-log slope) or vanish
        // outright; the trend toward s -> inf must grow past r(1).
        std::vector<double> ratio(n);
        for (size_t i = 0; i < n; ++i)
            ratio[i] = std::isfinite(vals[i]) ? vals[i] / s_grid[i] : kInf;
        const size_t third = n / 3;
        if (ratio.front() > 0.0) {
            const double lo_slope = loglog_slope(s_grid, ratio, 0, third);
            if (!(lo_slope > 1e-2)) rep.ratio_vanishes_at_zero = false;
        }
        bool top_inf = false;
        for (size_t i = n - third; i < n; ++i)
            if (!std::isfinite(ratio[i])) top_inf = true;
        if (!top_inf) {
            const double hi_slope = loglog_slope(s_grid, ratio, n - third, n);
            if (!(hi_slope > 1e-2)) rep.ratio_diverges_at_inf = false;
        }
    }
    return rep;
}

Delta2Report check_delta2(const PhiFunction& M,
                          const std::vector<Point>& x_sample,
                          const std::vector<double>& s_grid) {
    Delta2Report rep;
    rep.k_empirical = 0.0;
    double worst = 0.0;
    bool saw_inf_ratio = false;

    std::vector<double> top_ratios; // ratio along s for slope estimate
    std::vector<double> top_s;

    for (const Point& x : x_sample) {
        for (double s : s_grid) {
            const double denom = M(x, s);
            if (!(denom > 0.0)) continue;
            const double numer = M(x, 2.0 * s);
            if (!std::isfinite(numer)) {
                saw_inf_ratio = true;
                rep.worst_x = x;
                rep.worst_s = s;
                continue;
            }
            const double ratio = numer / denom;
            if (ratio > worst) {
                worst = ratio;
                rep.worst_x = x;
                rep.worst_s = s;
            }
        }
    }
    // Tail growth along s at the first sample point decides the verdict.
    if (!x_sample.empty()) {
        const Point& x = x_sample.front();
        for (double s : s_grid) {
            const double denom = M(x, s);
            if (!(denom > 0.0)) continue;
            const double numer = M(x, 2.0 * s);
            top_s.push_back(s);
            top_ratios.push_back(std::isfinite(numer) ? numer / denom : kInf);
        }
    }
    rep.k_empirical = worst;
    if (!top_ratios.empty()) {
        rep.top_ratio = top_ratios.back();
        const size_t n = top_ratios.size();
        rep.tail_slope = loglog_slope(top_s, top_ratios, n - std::min<size_t>(n, 24), n);
    }
    const bool tail_inf = !top_ratios.empty() && !std::isfinite(top_ratios.back());
    rep.bounded = !saw_inf_ratio && !tail_inf && rep.tail_slope <= 0.02;
    if (saw_inf_ratio) rep.k_empirical = kInf;
    return rep;
}

namespace {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

FieldValidation validate_scalar_field(const ScalarField& field,
                                      const GridDomain& domain,
                                      std::uint64_t seed, int pairs, double tol) {
    FieldValidation out;
    std::mt19937_64 rng(seed);
    const Box& b = domain.bounds();
    auto draw = [&]() {
        Point p;
        p.dim = domain.dim();
        for (int d = 0; d < domain.dim(); ++d)
            p.x[static_cast<size_t>(d)] = b.lo[static_cast<size_t>(d)] +
                uniform01(rng) * b.length(d);
        return p;
    };
    for (int i = 0; i < pairs; ++i) {
        const Point x = draw();
        const Point y = draw();
        const double vx = field.eval(x);
        const double vy = field.eval(y);
        if (vx < field.inf_bound - tol || vx > field.sup_bound + tol) out.bounds_ok = false;
        const double d = x.distance(y);
        if (d < 1e-12 || d > 0.5) continue;
        const double diff = std::abs(vx - vy);
        double quotient = 0.0;
        double budget = 0.0;
        switch (field.regularity.kind) {
            case FieldRegularity::Kind::constant:
                quotient = diff;
                budget = 0.0;
                break;
            case FieldRegularity::Kind::lipschitz:
                quotient = diff / d;
                budget = field.regularity.constant;
                break;
            case FieldRegularity::Kind::holder:
                quotient = diff / std::pow(d, field.regularity.alpha);
                budget = field.regularity.constant;
                break;
            case FieldRegularity::Kind::log_holder:
                quotient = diff * std::log(1.0 / d);
                budget = field.regularity.constant;
                break;
        }
        out.worst_quotient = std::max(out.worst_quotient, quotient);
        if (quotient > budget * (1.0 + tol) + tol) out.quotient_ok = false;
    }
    return out;
}

} // namespace molab
