// SPDX-License-Identifier: Apache-2.0

#include "molab/conjugate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace molab {

const char* provenance_name(TableProvenance p) {
    switch (p) {
        case TableProvenance::conjugate: return "conjugate";
        case TableProvenance::second_conjugate: return "second_conjugate";
        case TableProvenance::local_inf: return "local_inf";
        case TableProvenance::local_inf_envelope: return "local_inf_envelope";
    }
    return "?";
}

double EnvelopeTable::interpolate(double si) const {
    if (s.empty()) throw std::logic_error("empty table");
    if (si <= s.front()) return value.front();
    if (si >= s.back()) return value.back();
    const auto it = std::upper_bound(s.begin(), s.end(), si);
    const size_t j = static_cast<size_t>(it - s.begin());
    const double t = (si - s[j - 1]) / (s[j] - s[j - 1]);
    return value[j - 1] + t * (value[j] - value[j - 1]);
}

bool EnvelopeTable::is_convex(double tol) const {
    double prev_slope = -kInf;
    for (size_t i = 0; i + 1 < s.size(); ++i) {
        if (!std::isfinite(value[i]) || !std::isfinite(value[i + 1])) continue;
        const double slope = (value[i + 1] - value[i]) / (s[i + 1] - s[i]);
        const double scale = std::max({std::abs(slope), std::abs(prev_slope), 1.0});
        if (slope < prev_slope - tol * scale) return false;
        prev_slope = slope;
    }
    return true;
}

void write_table_csv(const EnvelopeTable& table, std::ostream& out) {
    out << "s,value,provenance\n";
    char buf[96];
    for (size_t i = 0; i < table.s.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%s\n", table.s[i], table.value[i],
                      provenance_name(table.provenance));
        out << buf;
    }
}

namespace {

// Golden-section maximizer for a concave objective on [a,b].
double golden_max(const std::function<double(double)>& f, double a, double b,
                  double* arg_out) {
    constexpr double inv_phi = 0.6180339887498949;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 160 && (b - a) > 1e-15 * (1.0 + std::abs(b)); ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    if (arg_out) *arg_out = fc > fd ? c : d;
    return std::max(fc, fd);
}

} // namespace

EnvelopeTable legendre_conjugate(const PhiFunction& M, const Point& x,
                                 const std::vector<double>& t_grid,
                                 const std::vector<double>& s_grid) {
    EnvelopeTable out;
    out.provenance = TableProvenance::conjugate;
    out.s = s_grid;
    out.value.resize(s_grid.size());

    std::vector<double> mt(t_grid.size());
    for (size_t j = 0; j < t_grid.size(); ++j) mt[j] = M(x, t_grid[j]);

    for (size_t i = 0; i < s_grid.size(); ++i) {
        const double s = s_grid[i];
        // t = 0 always competes with value s*0 - M(x,0) = 0.
        double best = 0.0;
        std::ptrdiff_t best_j = -1;
        for (size_t j = 0; j < t_grid.size(); ++j) {
            if (!std::isfinite(mt[j])) break; // objective is -inf past the cap
            const double g = s * t_grid[j] - mt[j];
            if (g > best) {
                best = g;
                best_j = static_cast<std::ptrdiff_t>(j);
            }
        }
        double lo = 0.0, hi = t_grid.empty() ? 0.0 : t_grid.front();
        if (best_j >= 0) {
            const size_t j = static_cast<size_t>(best_j);
            lo = j == 0 ? 0.0 : t_grid[j - 1];
            hi = j + 1 < t_grid.size() ? t_grid[j + 1] : t_grid[j];
            if (j + 1 == t_grid.size()) out.truncation_warning = true;
        }
        auto g = [&](double t) {
            const double m = M(x, t);
            return std::isfinite(m) ? s * t - m : -kInf;
        };
        double t_hat = 0.0;
        const double refined = golden_max(g, lo, hi, &t_hat);
        const double v = std::max(best, refined);
        out.value[i] = v;
        // One-sided defect: remaining bracket width times a local slope
        // estimate, plus a conditioning floor.
        const double width = 1e-15 * (1.0 + std::abs(hi));
        const double slope = s + std::abs(M.derivative_s(x, std::max(t_hat, 1e-12)));
        const double gap_i = slope * width +
                             8.0 * 2.220446049250313e-16 * (std::abs(s * t_hat) + std::abs(v) + 1.0);
        out.gap = std::max(out.gap, gap_i);
    }
    return out;
}

EnvelopeTable conjugate_of_table(const EnvelopeTable& table,
                                 const std::vector<double>& s_grid) {
    EnvelopeTable out;
    out.provenance = TableProvenance::conjugate;
    out.s = s_grid;
    out.value.resize(s_grid.size());
    double worst_gap = 0.0;
    for (size_t i = 0; i < s_grid.size(); ++i) {
        const double sigma = s_grid[i];
        double best = 0.0;
        size_t best_j = 0;
        bool found = false;
        for (size_t j = 0; j < table.s.size(); ++j) {
            if (!std::isfinite(table.value[j])) continue;
            const double g = sigma * table.s[j] - table.value[j];
            if (!found || g > best) {
                best = g;
                best_j = j;
                found = true;
            }
        }
        out.value[i] = std::max(best, 0.0);
        if (found) {
            const double spacing =
                best_j + 1 < table.s.size()
                    ? table.s[best_j + 1] - table.s[best_j]
                    : (best_j > 0 ? table.s[best_j] - table.s[best_j - 1] : 0.0);
            double vslope = 0.0;
            if (best_j + 1 < table.s.size() && std::isfinite(table.value[best_j + 1]))
                vslope = std::abs(table.value[best_j + 1] - table.value[best_j]) / spacing;
            worst_gap = std::max(worst_gap, (std::abs(sigma) + vslope) * spacing);
            if (best_j + 1 == table.s.size()) out.truncation_warning = true;
        }
    }
    out.gap = table.gap + worst_gap;
    return out;
}

EnvelopeTable second_conjugate(const std::vector<double>& s,
                               const std::vector<double>& value) {
    if (s.size() != value.size()) throw std::invalid_argument("size mismatch");
    std::vector<std::pair<double, double>> pts;
    for (size_t i = 0; i < s.size(); ++i)
        if (std::isfinite(value[i])) pts.emplace_back(s[i], value[i]);
    if (pts.size() < 2) throw std::invalid_argument("need at least 2 finite points");
    std::sort(pts.begin(), pts.end());

    // Monotone chain, lower hull only.
    std::vector<std::pair<double, double>> hull;
    for (const auto& p : pts) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull[hull.size() - 1];
            const double cross = (b.first - a.first) * (p.second - a.second) -
                                 (b.second - a.second) * (p.first - a.first);
            if (cross <= 0.0)
                hull.pop_back();
            else
                break;
        }
        if (!hull.empty() && hull.back().first == p.first) {
            if (p.second < hull.back().second) hull.back().second = p.second;
            continue;
        }
        hull.push_back(p);
    }

    EnvelopeTable out;
    out.provenance = TableProvenance::second_conjugate;
    out.s = s;
    out.value.resize(s.size());
    auto hull_at = [&](double si) {
        if (si <= hull.front().first) {
            if (hull.size() == 1) return hull.front().second;
            const auto& a = hull[0];
            const auto& b = hull[1];
            const double slope = (b.second - a.second) / (b.first - a.first);
            return a.second + slope * (si - a.first);
        }
        if (si >= hull.back().first) {
            if (hull.size() == 1) return hull.back().second;
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull[hull.size() - 1];
            const double slope = (b.second - a.second) / (b.first - a.first);
            return b.second + slope * (si - b.first);
        }
        auto it = std::upper_bound(hull.begin(), hull.end(), std::make_pair(si, kInf));
        const auto& b = *it;
        const auto& a = *(it - 1);
        const double t = (si - a.first) / (b.first - a.first);
        return a.second + t * (b.second - a.second);
    };
    for (size_t i = 0; i < s.size(); ++i) out.value[i] = hull_at(s[i]);
    return out;
}

FenchelYoungReport verify_fenchel_young(const PhiFunction& M, const Point& x,
                                        const std::vector<double>& u_grid,
                                        const std::vector<double>& v_grid,
                                        const EnvelopeTable& conjugate) {
    FenchelYoungReport rep;
    rep.gap = conjugate.gap;
    for (double v : v_grid) {
        const double mstar = conjugate.interpolate(v);
        for (double u : u_grid) {
            const double mu = M(x, u);
            if (!std::isfinite(mu)) continue; // u*v - inf is never a violation
            const double viol = u * v - mu - mstar;
            if (viol > rep.max_violation) {
                rep.max_violation = viol;
                rep.worst_u = u;
                rep.worst_v = v;
            }
        }
    }
    return rep;
}

EnvelopeTable local_inf_envelope(const PhiFunction& M, const Point& x, double eps,
                                 const std::vector<Point>& y_sample,
                                 const std::vector<double>& s_grid) {
    if (y_sample.empty()) throw std::invalid_argument("empty y-sample");
    for (const Point& y : y_sample)
        if (y.distance(x) > 0.5 * eps * (1.0 + 1e-12))
            throw std::invalid_argument("y-sample must lie in B(x, eps/2)");
    std::vector<double> inf_vals(s_grid.size(), kInf);
    for (size_t i = 0; i < s_grid.size(); ++i)
        for (const Point& y : y_sample)
            inf_vals[i] = std::min(inf_vals[i], M(y, s_grid[i]));
    EnvelopeTable out = second_conjugate(s_grid, inf_vals);
    out.provenance = TableProvenance::local_inf_envelope;
    return out;
}

EnvelopeBoundReport verify_envelope_bound(const PhiFunction& M,
                                          const RegularityWitness& phi,
                                          const Point& x, double eps,
                                          const std::vector<Point>& y_sample,
                                          const std::vector<double>& s_grid) {
    if (eps > 0.5 + 1e-12) throw std::invalid_argument("envelope bound needs eps <= 1/2");
    EnvelopeBoundReport rep;
    const EnvelopeTable env = local_inf_envelope(M, x, eps, y_sample, s_grid);
    for (size_t i = 0; i < s_grid.size(); ++i) {
        const double s = s_grid[i];
        if (s == 0.0) continue;
        const double denom_env = env.value[i];
        if (!(denom_env > 0.0)) {
            ++rep.degenerate_nodes;
            continue;
        }
        const double cap = 4.0 * phi(eps, s) * phi(eps, s) * denom_env;
        for (const Point& y : y_sample) {
            const double ratio = M(y, s) / cap;
            if (ratio > rep.max_ratio) {
                rep.max_ratio = ratio;
                rep.worst_y = y;
                rep.worst_s = s;
            }
        }
    }
    return rep;
}

} // namespace molab
