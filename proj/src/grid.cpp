// SPDX-License-Identifier: Apache-2.0

#include "molab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace molab {

double Box::volume() const {
    double v = 1.0;
    for (int d = 0; d < dim; ++d) v *= length(d);
    return v;
}

bool Box::contains(const Point& p, double slack) const {
    for (int d = 0; d < dim; ++d) {
        const size_t i = static_cast<size_t>(d);
        if (p.x[i] < lo[i] - slack || p.x[i] > hi[i] + slack) return false;
    }
    return true;
}

double Box::distance(const Point& p) const {
    double acc = 0.0;
    for (int d = 0; d < dim; ++d) {
        const size_t i = static_cast<size_t>(d);
        const double below = lo[i] - p.x[i];
        const double above = p.x[i] - hi[i];
        const double gap = std::max({below, above, 0.0});
        acc += gap * gap;
    }
    return std::sqrt(acc);
}

double Box::gap(const Box& other) const {
    double acc = 0.0;
    for (int d = 0; d < dim; ++d) {
        const size_t i = static_cast<size_t>(d);
        const double g = std::max({lo[i] - other.hi[i], other.lo[i] - hi[i], 0.0});
        acc += g * g;
    }
    return std::sqrt(acc);
}

bool Box::contains_box(const Box& inner) const {
    for (int d = 0; d < dim; ++d) {
        const size_t i = static_cast<size_t>(d);
        if (inner.lo[i] < lo[i] || inner.hi[i] > hi[i]) return false;
    }
    return true;
}

GridDomain::GridDomain(int dim, const Box& bounds, const std::array<int, 2>& resolution)
    : dim_(dim), bounds_(bounds), res_(resolution) {
    if (dim < 1 || dim > 2) throw std::invalid_argument("grid dimension must be 1 or 2");
    bounds_.dim = dim;
    count_ = 1;
    weight_ = 1.0;
    for (int d = 0; d < dim; ++d) {
        const size_t i = static_cast<size_t>(d);
        if (res_[i] < 1) throw std::invalid_argument("grid resolution must be positive");
        if (!(bounds_.hi[i] > bounds_.lo[i]))
            throw std::invalid_argument("grid bounds must be nondegenerate");
        h_[i] = bounds_.length(d) / res_[i];
        weight_ *= h_[i];
        count_ *= res_[i];
    }
    for (int d = dim; d < 2; ++d) {
        res_[static_cast<size_t>(d)] = 1;
        h_[static_cast<size_t>(d)] = 0.0;
    }
}

GridDomain GridDomain::interval(double a, double b, int n) {
    Box box;
    box.dim = 1;
    box.lo = {a, 0.0};
    box.hi = {b, 0.0};
    return GridDomain(1, box, {n, 1});
}

GridDomain GridDomain::square(double a, double b, int n_per_axis) {
    Box box;
    box.dim = 2;
    box.lo = {a, a};
    box.hi = {b, b};
    return GridDomain(2, box, {n_per_axis, n_per_axis});
}

Point GridDomain::node(std::int64_t flat) const {
    const auto idx = multi_index(flat);
    Point p;
    p.dim = dim_;
    for (int d = 0; d < dim_; ++d) {
        const size_t i = static_cast<size_t>(d);
        p.x[i] = bounds_.lo[i] + (idx[i] + 0.5) * h_[i];
    }
    return p;
}

std::int64_t GridDomain::flat_index(const std::array<int, 2>& idx) const {
    if (dim_ == 1) return idx[0];
    return static_cast<std::int64_t>(idx[1]) * res_[0] + idx[0];
}

std::array<int, 2> GridDomain::multi_index(std::int64_t flat) const {
    if (dim_ == 1) return {static_cast<int>(flat), 0};
    return {static_cast<int>(flat % res_[0]), static_cast<int>(flat / res_[0])};
}

std::array<int, 2> GridDomain::nearest_index(const Point& p) const {
    std::array<int, 2> idx{0, 0};
    for (int d = 0; d < dim_; ++d) {
        const size_t i = static_cast<size_t>(d);
        const double t = (p.x[i] - bounds_.lo[i]) / h_[i] - 0.5;
        idx[i] = std::clamp(static_cast<int>(std::lround(t)), 0, res_[i] - 1);
    }
    return idx;
}

bool GridDomain::same_layout(const GridDomain& other) const {
    if (dim_ != other.dim_) return false;
    for (int d = 0; d < dim_; ++d) {
        const size_t i = static_cast<size_t>(d);
        if (res_[i] != other.res_[i]) return false;
        if (std::abs(bounds_.lo[i] - other.bounds_.lo[i]) > 1e-12) return false;
        if (std::abs(bounds_.hi[i] - other.bounds_.hi[i]) > 1e-12) return false;
    }
    return true;
}

GridFunction::GridFunction(GridDomainPtr domain)
    : domain_(std::move(domain)),
      values_(static_cast<size_t>(domain_->node_count()), 0.0) {}

GridFunction::GridFunction(GridDomainPtr domain, std::vector<double> values)
    : domain_(std::move(domain)), values_(std::move(values)) {
    if (values_.size() != static_cast<size_t>(domain_->node_count()))
        throw std::invalid_argument("value count does not match the grid");
}

GridFunction GridFunction::from_callable(GridDomainPtr domain,
                                         const std::function<double(const Point&)>& f) {
    GridFunction u(domain);
    const std::int64_t n = domain->node_count();
    for (std::int64_t i = 0; i < n; ++i)
        u.values_[static_cast<size_t>(i)] = f(domain->node(i));
    return u;
}

double GridFunction::value_extended(const std::array<int, 2>& idx) const {
    const GridDomain& d = *domain_;
    for (int axis = 0; axis < d.dim(); ++axis) {
        const size_t i = static_cast<size_t>(axis);
        if (idx[i] < 0 || idx[i] >= d.resolution(axis)) return 0.0;
    }
    return values_[static_cast<size_t>(d.flat_index(idx))];
}

bool GridFunction::is_zero() const {
    for (double v : values_)
        if (v != 0.0) return false;
    return true;
}

double GridFunction::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

Box GridFunction::support_box() const {
    const GridDomain& d = *domain_;
    std::array<int, 2> lo{d.resolution(0), d.dim() == 2 ? d.resolution(1) : 1};
    std::array<int, 2> hi{-1, -1};
    const std::int64_t n = d.node_count();
    for (std::int64_t f = 0; f < n; ++f) {
        if (values_[static_cast<size_t>(f)] == 0.0) continue;
        const auto idx = d.multi_index(f);
        for (size_t i = 0; i < 2; ++i) {
            lo[i] = std::min(lo[i], idx[i]);
            hi[i] = std::max(hi[i], idx[i]);
        }
    }
    Box box;
    box.dim = d.dim();
    if (hi[0] < 0) { // identically zero
        box.lo = {0.0, 0.0};
        box.hi = {0.0, 0.0};
        return box;
    }
    for (int axis = 0; axis < d.dim(); ++axis) {
        const size_t i = static_cast<size_t>(axis);
        box.lo[i] = d.bounds().lo[i] + lo[i] * d.spacing(axis);
        box.hi[i] = d.bounds().lo[i] + (hi[i] + 1) * d.spacing(axis);
    }
    return box;
}

void GridFunction::refresh_support() { /* support is derived on demand */ }

GridFunction& GridFunction::operator+=(const GridFunction& rhs) {
    if (!domain_->same_layout(rhs.domain()))
        throw std::invalid_argument("grid layout mismatch");
    for (size_t i = 0; i < values_.size(); ++i) values_[i] += rhs.values_[i];
    return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& rhs) {
    if (!domain_->same_layout(rhs.domain()))
        throw std::invalid_argument("grid layout mismatch");
    for (size_t i = 0; i < values_.size(); ++i) values_[i] -= rhs.values_[i];
    return *this;
}

GridFunction& GridFunction::operator*=(double c) {
    for (double& v : values_) v *= c;
    return *this;
}

GridFunction GridFunction::multiply(const GridFunction& w) const {
    if (!domain_->same_layout(w.domain()))
        throw std::invalid_argument("grid layout mismatch");
    GridFunction out(domain_);
    for (size_t i = 0; i < values_.size(); ++i)
        out.values_[i] = values_[i] * w.values_[i];
    return out;
}

double modular(const PhiFunction& M, const GridFunction& u, double lambda) {
    if (!(lambda > 0.0)) throw std::domain_error("modular scale lambda must be positive");
    const GridDomain& d = u.domain();
    const double w = d.cell_weight();
    const std::int64_t n = d.node_count();
    double acc = 0.0;
    for (std::int64_t i = 0; i < n; ++i) {
        const double s = std::abs(u.value(i)) / lambda;
        if (s == 0.0) continue;
        const double v = M(d.node(i), s);
        if (!std::isfinite(v)) return kInf;
        acc += v;
    }
    return acc * w;
}

double luxemburg_norm(const PhiFunction& M, const GridFunction& u,
                      const LuxemburgOptions& opts) {
    if (u.is_zero()) return 0.0;
    const double vol = u.domain().volume();
    double lambda0 = lp_norm(u, 1.0) / vol;
    if (!(lambda0 > 0.0)) lambda0 = 1.0;

    auto rho = [&](double lambda) { return modular(M, u, lambda); };

    // Expand to a bracket rho(lo) >= 1 >= rho(hi).
    double lo = lambda0, hi = lambda0;
    int steps = 0;
    while (rho(hi) > 1.0) {
        hi *= 2.0;
        if (++steps > opts.max_bracket_steps)
            throw std::runtime_error("luxemburg bracket expansion failed (upper)");
    }
    steps = 0;
    while (rho(lo) < 1.0) {
        lo *= 0.5;
        if (++steps > opts.max_bracket_steps) break; // rho < 1 everywhere: norm below lo
    }
    if (rho(lo) < 1.0) return lo;

    for (int it = 0; it < opts.max_bisect_steps; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (rho(mid) > 1.0)
            lo = mid;
        else
            hi = mid;
        if ((hi - lo) <= opts.rel_tol * hi) break;
    }
    return hi; // smallest scale found with rho <= 1
}

double lp_norm(const GridFunction& u, double p) {
    if (p < 1.0) throw std::domain_error("lp_norm requires p >= 1");
    const double w = u.domain().cell_weight();
    double acc = 0.0;
    for (double v : u.values()) acc += std::pow(std::abs(v), p);
    return std::pow(acc * w, 1.0 / p);
}

std::vector<GridFunction> gradient(const GridFunction& u) {
    const GridDomain& d = u.domain();
    for (int axis = 0; axis < d.dim(); ++axis)
        if (d.resolution(axis) < 3)
            throw std::invalid_argument("gradient needs at least 3 nodes per axis");

    std::vector<GridFunction> out;
    for (int axis = 0; axis < d.dim(); ++axis) {
        GridFunction g(u.domain_ptr());
        const double h = d.spacing(axis);
        const int n_axis = d.resolution(axis);
        const std::int64_t n = d.node_count();
        for (std::int64_t f = 0; f < n; ++f) {
            auto idx = d.multi_index(f);
            const size_t ai = static_cast<size_t>(axis);
            auto at = [&](int j) {
                auto k = idx;
                k[ai] = j;
                return u.value(d.flat_index(k));
            };
            const int j = idx[ai];
            double deriv;
            if (j == 0)
                deriv = (at(1) - at(0)) / h;
            else if (j == n_axis - 1)
                deriv = (at(j) - at(j - 1)) / h;
            else
                deriv = (at(j + 1) - at(j - 1)) / (2.0 * h);
            g.mutable_values()[static_cast<size_t>(f)] = deriv;
        }
        out.push_back(std::move(g));
    }
    return out;
}

double w1p_distance(const GridFunction& u, const GridFunction& v, double p) {
    GridFunction diff = u;
    diff -= v;
    double acc = std::pow(lp_norm(diff, p), p);
    const auto gu = gradient(u);
    const auto gv = gradient(v);
    for (size_t d = 0; d < gu.size(); ++d) {
        GridFunction gd = gu[d];
        gd -= gv[d];
        acc += std::pow(lp_norm(gd, p), p);
    }
    return std::pow(acc, 1.0 / p);
}

double pairing(const GridFunction& u, const GridFunction& v) {
    if (!u.domain().same_layout(v.domain()))
        throw std::invalid_argument("grid layout mismatch");
    double acc = 0.0;
    for (size_t i = 0; i < u.values().size(); ++i)
        acc += u.values()[i] * v.values()[i];
    return acc * u.domain().cell_weight();
}

void write_csv(const GridFunction& u, std::ostream& out) {
    const GridDomain& d = u.domain();
    out << (d.dim() == 1 ? "i,x,value\n" : "i,j,x,y,value\n");
    char buf[96];
    const std::int64_t n = d.node_count();
    for (std::int64_t f = 0; f < n; ++f) {
        const auto idx = d.multi_index(f);
        const Point p = d.node(f);
        if (d.dim() == 1)
            std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", idx[0], p.x[0], u.value(f));
        else
            std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g,%.17g\n", idx[0], idx[1],
                          p.x[0], p.x[1], u.value(f));
        out << buf;
    }
}

GridFunction read_csv(GridDomainPtr domain, std::istream& in) {
    GridFunction u(domain);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty csv");
    const int dim = domain->dim();
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::array<int, 2> idx{0, 0};
        for (int d = 0; d < dim; ++d) {
            if (!std::getline(ss, cell, ',')) throw std::runtime_error("bad csv row");
            idx[static_cast<size_t>(d)] = std::stoi(cell);
        }
        for (int d = 0; d < dim; ++d)
            std::getline(ss, cell, ','); // coordinates, informational
        if (!std::getline(ss, cell, ',')) throw std::runtime_error("bad csv row");
        u.mutable_values()[static_cast<size_t>(domain->flat_index(idx))] = std::stod(cell);
    }
    return u;
}

namespace {

constexpr char kMagic[8] = {'M', 'O', 'G', 'F', '0', '1', 0, 0};

} // namespace

void write_binary(const GridFunction& u, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    const GridDomain& d = u.domain();
    f.write(kMagic, sizeof kMagic);
    const std::int32_t dim = d.dim();
    f.write(reinterpret_cast<const char*>(&dim), sizeof dim);
    for (int axis = 0; axis < 2; ++axis) {
        const std::int32_t r = axis < dim ? d.resolution(axis) : 1;
        f.write(reinterpret_cast<const char*>(&r), sizeof r);
    }
    for (int axis = 0; axis < 2; ++axis) {
        const double lo = d.bounds().lo[static_cast<size_t>(axis)];
        const double hi = d.bounds().hi[static_cast<size_t>(axis)];
        f.write(reinterpret_cast<const char*>(&lo), sizeof lo);
        f.write(reinterpret_cast<const char*>(&hi), sizeof hi);
    }
    f.write(reinterpret_cast<const char*>(u.values().data()),
            static_cast<std::streamsize>(u.values().size() * sizeof(double)));
}

GridFunction read_binary(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    char magic[8];
    f.read(magic, sizeof magic);
    if (std::memcmp(magic, kMagic, sizeof kMagic) != 0)
        throw std::runtime_error("bad grid function file header");
    std::int32_t dim = 0;
    f.read(reinterpret_cast<char*>(&dim), sizeof dim);
    std::array<std::int32_t, 2> res{1, 1};
    f.read(reinterpret_cast<char*>(res.data()), sizeof res);
    Box box;
    box.dim = dim;
    for (int axis = 0; axis < 2; ++axis) {
        f.read(reinterpret_cast<char*>(&box.lo[static_cast<size_t>(axis)]), sizeof(double));
        f.read(reinterpret_cast<char*>(&box.hi[static_cast<size_t>(axis)]), sizeof(double));
    }
    auto domain = std::make_shared<const GridDomain>(
        dim, box, std::array<int, 2>{res[0], res[1]});
    std::vector<double> values(static_cast<size_t>(domain->node_count()));
    f.read(reinterpret_cast<char*>(values.data()),
           static_cast<std::streamsize>(values.size() * sizeof(double)));
    if (!f) throw std::runtime_error("truncated grid function file");
    return GridFunction(domain, std::move(values));
}

} // namespace molab
