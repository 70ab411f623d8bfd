// SPDX-License-Identifier: Apache-2.0

#include "molab/mollify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace molab {

double friedrichs_bump(double r2) {
    if (r2 >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - r2));
}

double friedrichs_normalizer(int N) {
    static double cache[3] = {0.0, 0.0, 0.0};
    if (N < 1 || N > 2) throw std::invalid_argument("dimension must be 1 or 2");
    if (cache[N] != 0.0) return cache[N];
    // Fine midpoint quadrature of the bump over the unit ball.
    const int n = 4000;
    const double h = 2.0 / n;
    double integral = 0.0;
    if (N == 1) {
        for (int i = 0; i < n; ++i) {
            const double x = -1.0 + (i + 0.5) * h;
            integral += friedrichs_bump(x * x);
        }
        integral *= h;
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double x = -1.0 + (i + 0.5) * h;
                const double y = -1.0 + (j + 0.5) * h;
                integral += friedrichs_bump(x * x + y * y);
            }
        integral *= h * h;
    }
    cache[N] = 1.0 / integral;
    return cache[N];
}

double friedrichs_kernel(int N, const Point& x) {
    double r2 = 0.0;
    for (int d = 0; d < N; ++d) r2 += x[d] * x[d];
    return friedrichs_normalizer(N) * friedrichs_bump(r2);
}

double MollifierSpec::weight(const std::array<int, 2>& offset) const {
    const int nx = 2 * radius_cells[0] + 1;
    const int ix = offset[0] + radius_cells[0];
    const int iy = offset[1] + radius_cells[1];
    if (ix < 0 || ix >= nx) return 0.0;
    if (dim == 2) {
        const int ny = 2 * radius_cells[1] + 1;
        if (iy < 0 || iy >= ny) return 0.0;
        return weights[static_cast<size_t>(iy * nx + ix)];
    }
    return weights[static_cast<size_t>(ix)];
}

double MollifierSpec::max_weight() const {
    double m = 0.0;
    for (double w : weights) m = std::max(m, w);
    return m;
}

double MollifierSpec::lp_dual_norm(double cell_volume, double p) const {
    const double pprime = p / (p - 1.0);
    double acc = 0.0;
    for (double w : weights) acc += std::pow(w / cell_volume, pprime);
    return std::pow(acc * cell_volume, 1.0 / pprime);
}

MollifierSpec build_mollifier(const GridDomain& domain, double eps) {
    const double h = domain.spacing();
    if (!(eps >= 2.0 * h * (1.0 - 1e-12)))
        throw std::invalid_argument("mollifier radius must satisfy eps >= 2h");
    MollifierSpec spec;
    spec.eps = eps;
    spec.dim = domain.dim();
    for (int d = 0; d < domain.dim(); ++d)
        spec.radius_cells[d] = static_cast<int>(std::floor(eps / domain.spacing(d)));
    const int rx = spec.radius_cells[0];
    const int ry = domain.dim() == 2 ? spec.radius_cells[1] : 0;
    const int nx = 2 * rx + 1;
    const int ny = 2 * ry + 1;
    spec.weights.assign(static_cast<size_t>(nx * ny), 0.0);
    double sum = 0.0;
    for (int j = -ry; j <= ry; ++j)
        for (int i = -rx; i <= rx; ++i) {
            const double dx = i * domain.spacing(0) / eps;
            const double dy = domain.dim() == 2 ? j * domain.spacing(1) / eps : 0.0;
            const double w = friedrichs_bump(dx * dx + dy * dy);
            spec.weights[static_cast<size_t>((j + ry) * nx + (i + rx))] = w;
            sum += w;
        }
    if (!(sum > 0.0)) throw std::invalid_argument("degenerate mollifier kernel");
    for (double& w : spec.weights) w /= sum;
    return spec;
}

GridFunction mollify(const GridFunction& u, double eps) {
    const GridDomain& d = u.domain();
    const MollifierSpec spec = build_mollifier(d, eps);
    const int rx = spec.radius_cells[0];
    const int ry = d.dim() == 2 ? spec.radius_cells[1] : 0;
    const int nx = 2 * rx + 1;

    GridFunction out(u.domain_ptr());
    const std::int64_t n = d.node_count();
    for (std::int64_t f = 0; f < n; ++f) {
        const auto idx = d.multi_index(f);
        double acc = 0.0;
        for (int j = -ry; j <= ry; ++j) {
            for (int i = -rx; i <= rx; ++i) {
                const double w = spec.weights[static_cast<size_t>((j + ry) * nx + (i + rx))];
                if (w == 0.0) continue;
                acc += w * u.value_extended({idx[0] - i, idx[1] - j});
            }
        }
        out.mutable_values()[static_cast<size_t>(f)] = acc;
    }
    return out;
}

double cutoff_profile(double r) {
    if (r <= 1.0) return 1.0;
    if (r >= 2.0) return 0.0;
    auto g = [](double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; };
    const double inside = g(2.0 - r);
    const double outside = g(r - 1.0);
    return inside / (inside + outside);
}

GridFunction truncate(const GridFunction& u, double R) {
    if (!(R > 0.0)) throw std::invalid_argument("truncation radius must be positive");
    const GridDomain& d = u.domain();
    GridFunction out(u.domain_ptr());
    for (std::int64_t f = 0; f < d.node_count(); ++f) {
        const Point x = d.node(f);
        out.mutable_values()[static_cast<size_t>(f)] =
            u.value(f) * cutoff_profile(x.norm() / R);
    }
    return out;
}

GridFunction translate(const GridFunction& u, const std::array<double, 2>& shift,
                       std::array<double, 2>* snapped) {
    const GridDomain& d = u.domain();
    std::array<int, 2> cells{0, 0};
    for (int axis = 0; axis < d.dim(); ++axis) {
        const size_t i = static_cast<size_t>(axis);
        cells[i] = static_cast<int>(std::lround(shift[i] / d.spacing(axis)));
        if (snapped) (*snapped)[i] = cells[i] * d.spacing(axis);
    }
    GridFunction out(u.domain_ptr());
    for (std::int64_t f = 0; f < d.node_count(); ++f) {
        const auto idx = d.multi_index(f);
        out.mutable_values()[static_cast<size_t>(f)] =
            u.value_extended({idx[0] - cells[0], idx[1] - cells[1]});
    }
    return out;
}

double box_bump(const Box& box, const Point& p) {
    double prod = 1.0;
    for (int d = 0; d < box.dim; ++d) {
        const size_t i = static_cast<size_t>(d);
        const double t = (p.x[i] - box.lo[i]) / (box.hi[i] - box.lo[i]);
        const double r = 2.0 * t - 1.0; // maps the interval onto (-1,1)
        prod *= friedrichs_bump(r * r);
        if (prod == 0.0) return 0.0;
    }
    return prod;
}

std::vector<GridFunction> partition_of_unity(const std::vector<Box>& cover,
                                             const GridDomain& domain,
                                             const Box& K) {
    if (cover.empty()) throw std::invalid_argument("empty cover");
    auto dom = std::make_shared<const GridDomain>(domain);
    std::vector<GridFunction> bumps;
    bumps.reserve(cover.size());
    for (const Box& b : cover)
        bumps.push_back(GridFunction::from_callable(
            dom, [&b](const Point& p) { return box_bump(b, p); }));

    const std::int64_t n = domain.node_count();
    std::vector<double> sums(static_cast<size_t>(n), 0.0);
    for (const auto& b : bumps)
        for (std::int64_t f = 0; f < n; ++f)
            sums[static_cast<size_t>(f)] += b.value(f);

    for (std::int64_t f = 0; f < n; ++f) {
        const Point x = domain.node(f);
        if (K.contains(x) && !(sums[static_cast<size_t>(f)] > 0.0))
            throw std::invalid_argument("cover does not reach the compact set");
    }
    for (auto& b : bumps)
        for (std::int64_t f = 0; f < n; ++f) {
            const size_t i = static_cast<size_t>(f);
            b.mutable_values()[i] = sums[i] > 0.0 ? b.value(f) / sums[i] : 0.0;
        }
    return bumps;
}

double CoverPiece::z_norm() const {
    return std::sqrt(z[0] * z[0] + z[1] * z[1]);
}

double SegmentCover::r_max(int i) const {
    const CoverPiece& piece = pieces[static_cast<size_t>(i)];
    const double zn = piece.z_norm();
    if (zn == 0.0) return 0.0;
    double gap = kInf;
    for (int d = 0; d < piece.outer_set.dim; ++d) {
        const size_t j = static_cast<size_t>(d);
        gap = std::min(gap, piece.inner_set.lo[j] - piece.outer_set.lo[j]);
        gap = std::min(gap, piece.outer_set.hi[j] - piece.inner_set.hi[j]);
    }
    return std::min(1.0 / (zn + 1.0), gap / zn);
}

std::vector<Point> SegmentCover::boundary_trace(const GridDomain& domain, int i) const {
    const CoverPiece& piece = pieces[static_cast<size_t>(i)];
    const Box& omega = domain.bounds();
    std::vector<Point> trace;
    if (domain.dim() == 1) {
        for (double endpoint : {omega.lo[0], omega.hi[0]}) {
            Point p = Point::d1(endpoint);
            if (piece.inner_set.contains(p)) trace.push_back(p);
        }
        return trace;
    }
    // Sample the four edges at grid resolution.
    const double h = domain.spacing();
    auto push = [&](double x, double y) {
        Point p = Point::d2(x, y);
        if (piece.inner_set.contains(p)) trace.push_back(p);
    };
    for (double x = omega.lo[0]; x <= omega.hi[0] + 0.5 * h; x += h) {
        push(std::min(x, omega.hi[0]), omega.lo[1]);
        push(std::min(x, omega.hi[0]), omega.hi[1]);
    }
    for (double y = omega.lo[1]; y <= omega.hi[1] + 0.5 * h; y += h) {
        push(omega.lo[0], std::min(y, omega.hi[1]));
        push(omega.hi[0], std::min(y, omega.hi[1]));
    }
    return trace;
}

double SegmentCover::eps_max_outward(const GridDomain& domain, int i, double r) const {
    const CoverPiece& piece = pieces[static_cast<size_t>(i)];
    const std::vector<Point> gamma = boundary_trace(domain, i);
    if (gamma.empty()) return kInf; // no boundary contact: interior piece
    // theta_hat cap closure(Omega) as a box intersection.
    Box cap = piece.outer_set;
    const Box& omega = domain.bounds();
    for (int d = 0; d < cap.dim; ++d) {
        const size_t j = static_cast<size_t>(d);
        cap.lo[j] = std::max(cap.lo[j], omega.lo[j]);
        cap.hi[j] = std::min(cap.hi[j], omega.hi[j]);
    }
    double dist = kInf;
    for (const Point& g : gamma) {
        Point shifted = g;
        for (int d = 0; d < cap.dim; ++d)
            shifted.x[static_cast<size_t>(d)] -= r * piece.z[static_cast<size_t>(d)];
        dist = std::min(dist, cap.distance(shifted));
    }
    return dist;
}

double SegmentCover::eps_max_inward(const GridDomain& domain, int i, double r) const {
    const CoverPiece& piece = pieces[static_cast<size_t>(i)];
    const Box& omega = domain.bounds();
    // (inner cap closure(Omega)) + r z must sit at positive depth.
    Box shifted = piece.inner_set;
    for (int d = 0; d < shifted.dim; ++d) {
        const size_t j = static_cast<size_t>(d);
        shifted.lo[j] = std::max(shifted.lo[j], omega.lo[j]) + r * piece.z[j];
        shifted.hi[j] = std::min(shifted.hi[j], omega.hi[j]) + r * piece.z[j];
    }
    double depth = kInf;
    for (int d = 0; d < shifted.dim; ++d) {
        const size_t j = static_cast<size_t>(d);
        depth = std::min(depth, shifted.lo[j] - omega.lo[j]);
        depth = std::min(depth, omega.hi[j] - shifted.hi[j]);
    }
    return std::max(depth, 0.0);
}

SegmentCover make_segment_cover(std::vector<CoverPiece> pieces, const Box& K,
                                const GridDomainPtr& domain) {
    if (pieces.empty()) throw std::invalid_argument("cover needs at least one piece");
    for (const auto& piece : pieces) {
        double gap = kInf;
        for (int d = 0; d < piece.outer_set.dim; ++d) {
            const size_t j = static_cast<size_t>(d);
            gap = std::min(gap, piece.inner_set.lo[j] - piece.outer_set.lo[j]);
            gap = std::min(gap, piece.outer_set.hi[j] - piece.inner_set.hi[j]);
        }
        if (!(gap > 0.0))
            throw std::invalid_argument("inner set must be compactly contained in outer set");
        if (piece.boundary_piece && piece.z_norm() == 0.0)
            throw std::invalid_argument("boundary piece needs a nonzero segment vector");
    }
    SegmentCover cover;
    cover.compact_k = K;
    std::vector<Box> inner;
    inner.reserve(pieces.size());
    for (const auto& piece : pieces) inner.push_back(piece.inner_set);
    cover.pieces = std::move(pieces);
    cover.psi = partition_of_unity(inner, *domain, K);
    return cover;
}

SegmentCover auto_interval_cover(const GridDomainPtr& domain, const Box& K) {
    if (domain->dim() != 1)
        throw std::invalid_argument("automatic cover builder is 1-D only");
    const double a = domain->bounds().lo[0];
    const double b = domain->bounds().hi[0];
    const double L = b - a;

    auto interval = [](double lo, double hi) {
        Box box;
        box.dim = 1;
        box.lo = {lo, 0.0};
        box.hi = {hi, 0.0};
        return box;
    };

    CoverPiece left;
    left.inner_set = interval(a - 0.15 * L, a + 0.25 * L);
    left.outer_set = interval(a - 0.30 * L, a + 0.35 * L);
    left.z = {0.5, 0.0}; // points into the domain
    left.boundary_piece = true;

    CoverPiece right;
    right.inner_set = interval(b - 0.25 * L, b + 0.15 * L);
    right.outer_set = interval(b - 0.35 * L, b + 0.30 * L);
    right.z = {-0.5, 0.0};
    right.boundary_piece = true;

    CoverPiece middle;
    middle.inner_set = interval(a + 0.10 * L, b - 0.10 * L);
    middle.outer_set = interval(a + 0.05 * L, b - 0.05 * L);
    middle.z = {0.0, 0.0};
    middle.boundary_piece = false;

    return make_segment_cover({left, right, middle}, K, domain);
}

ShiftedMollification shifted_mollify(const GridFunction& u_i, const SegmentCover& cover,
                                     int piece_index, double r, double eps,
                                     ShiftDirection direction) {
    const CoverPiece& piece = cover.pieces[static_cast<size_t>(piece_index)];
    const GridDomain& d = u_i.domain();
    if (piece.boundary_piece) {
        const double rmax = cover.r_max(piece_index);
        if (!(r > 0.0) || !(r < rmax))
            throw std::invalid_argument("shift amplitude outside the admissible range");
        const double emax = direction == ShiftDirection::outward
                                ? cover.eps_max_outward(d, piece_index, r)
                                : cover.eps_max_inward(d, piece_index, r);
        if (!(eps > 0.0) || !(eps < emax))
            throw std::invalid_argument("mollification radius outside the admissible range");
    }

    ShiftedMollification out{GridFunction(u_i.domain_ptr()), Box{}, r, eps, {0.0, 0.0},
                             0.0, 0.0, 0.0};
    const double sign = direction == ShiftDirection::outward ? -1.0 : 1.0;
    // (u)_r(x) = u(x + r z) shifts the support by -r z (outward);
    // the inward variant uses u(x - r z).
    std::array<double, 2> shift{sign * r * piece.z[0], sign * r * piece.z[1]};
    std::array<double, 2> snapped{0.0, 0.0};
    GridFunction moved = translate(u_i, shift, &snapped);
    out.shift = snapped;
    out.v = mollify(moved, eps);

    const Box supp = u_i.support_box();
    Box analytic = supp;
    for (int axis = 0; axis < d.dim(); ++axis) {
        const size_t j = static_cast<size_t>(axis);
        analytic.lo[j] += snapped[j] - eps;
        analytic.hi[j] += snapped[j] + eps;
    }
    out.analytic_support = analytic;

    if (direction == ShiftDirection::outward && piece.boundary_piece) {
        double clearance = kInf;
        for (const Point& g : cover.boundary_trace(d, piece_index)) {
            Point shifted = g;
            for (int axis = 0; axis < d.dim(); ++axis)
                shifted.x[static_cast<size_t>(axis)] += snapped[static_cast<size_t>(axis)];
            clearance = std::min(clearance, d.bounds().distance(shifted));
        }
        out.gamma_clearance = clearance;
    }
    if (direction == ShiftDirection::inward) {
        double clearance = kInf;
        const Box& omega = d.bounds();
        for (std::int64_t f = 0; f < d.node_count(); ++f) {
            if (out.v.value(f) == 0.0) continue;
            const Point x = d.node(f);
            for (int axis = 0; axis < d.dim(); ++axis) {
                const size_t j = static_cast<size_t>(axis);
                clearance = std::min(clearance, x.x[j] - omega.lo[j]);
                clearance = std::min(clearance, omega.hi[j] - x.x[j]);
            }
        }
        out.interior_clearance = clearance;
    }

    const MollifierSpec spec = build_mollifier(d, eps);
    out.sup_bound_constant = spec.max_density(d.cell_weight()) *
                             std::pow(eps, d.dim()) * lp_norm(moved, 1.0);
    return out;
}

} // namespace molab
