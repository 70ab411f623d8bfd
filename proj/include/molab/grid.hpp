// SPDX-License-Identifier: Apache-2.0
//
// Uniform cell-centered grids on boxes in R^N (N = 1 or 2), midpoint
// quadrature, finite-difference gradients, and the modular / Luxemburg
// norm machinery built on top of them.

#ifndef MOLAB_GRID_HPP
#define MOLAB_GRID_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "molab/phi.hpp"

namespace molab {

// Axis-aligned box, degenerate axes allowed for N=1.
struct Box {
    std::array<double, 2> lo{0.0, 0.0};
    std::array<double, 2> hi{0.0, 0.0};
    int dim = 1;

    double length(int axis) const { return hi[axis] - lo[axis]; }
    double volume() const;
    bool contains(const Point& p, double slack = 0.0) const;
    // Euclidean distance from p to the (closed) box; 0 inside.
    double distance(const Point& p) const;
    // Euclidean gap between two closed boxes; 0 if they intersect.
    double gap(const Box& other) const;
    bool contains_box(const Box& inner) const;
};

// Cell-centered uniform grid over a box. Node i sits at lo + (i+1/2)h,
// so the midpoint weights sum to |domain| exactly.
class GridDomain {
public:
    GridDomain(int dim, const Box& bounds, const std::array<int, 2>& resolution);

    static GridDomain interval(double a, double b, int n);
    static GridDomain square(double a, double b, int n_per_axis);

    int dim() const { return dim_; }
    const Box& bounds() const { return bounds_; }
    int resolution(int axis) const { return res_[axis]; }
    std::int64_t node_count() const { return count_; }
    double spacing(int axis) const { return h_[axis]; }
    // Uniform spacing accessor; valid when all axes share h.
    double spacing() const { return h_[0]; }
    double cell_weight() const { return weight_; }
    double volume() const { return bounds_.volume(); }

    Point node(std::int64_t flat) const;
    std::int64_t flat_index(const std::array<int, 2>& idx) const;
    std::array<int, 2> multi_index(std::int64_t flat) const;

    // Nearest node index to a point, clamped into range.
    std::array<int, 2> nearest_index(const Point& p) const;

    bool same_layout(const GridDomain& other) const;

private:
    int dim_;
    Box bounds_;
    std::array<int, 2> res_;
    std::array<double, 2> h_;
    double weight_;
    std::int64_t count_;
};

using GridDomainPtr = std::shared_ptr<const GridDomain>;

// Real-valued samples on a GridDomain. Values are stored row-major
// (x fastest). The support box of the nonzero entries is tracked.
class GridFunction {
public:
    explicit GridFunction(GridDomainPtr domain);
    GridFunction(GridDomainPtr domain, std::vector<double> values);

    static GridFunction from_callable(GridDomainPtr domain,
                                      const std::function<double(const Point&)>& f);

    const GridDomain& domain() const { return *domain_; }
    GridDomainPtr domain_ptr() const { return domain_; }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& mutable_values() { return values_; }
    double value(std::int64_t flat) const { return values_[static_cast<size_t>(flat)]; }

    // Zero-extension lookup: nodes outside the index range read as 0.
    double value_extended(const std::array<int, 2>& idx) const;

    bool is_zero() const;
    double max_abs() const;
    // Bounding box of the nonzero nodes (cell-sized slack included);
    // dim-degenerate empty box when the function vanishes.
    Box support_box() const;
    void refresh_support();

    GridFunction& operator+=(const GridFunction& rhs);
    GridFunction& operator-=(const GridFunction& rhs);
    GridFunction& operator*=(double c);
    friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
    friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
    friend GridFunction operator*(double c, GridFunction a) { return a *= c; }

    // Nodewise product, used for cutoffs and partition weights.
    GridFunction multiply(const GridFunction& w) const;

private:
    GridDomainPtr domain_;
    std::vector<double> values_;
};

// rho_M(u/lambda) = sum_i w_i M(x_i, |u_i|/lambda), midpoint quadrature.
double modular(const PhiFunction& M, const GridFunction& u, double lambda);

struct LuxemburgOptions {
    double rel_tol = 1e-10;
    int max_bracket_steps = 64;
    int max_bisect_steps = 80;
};

// Luxemburg norm inf{lambda > 0 : rho_M(u/lambda) <= 1} by bisection on
// the monotone map lambda -> rho. Returns 0 for u == 0. Throws
// std::runtime_error when no bracket is found (pathological M).
double luxemburg_norm(const PhiFunction& M, const GridFunction& u,
                      const LuxemburgOptions& opts = {});

// (sum w |u|^p)^(1/p); p must be >= 1.
double lp_norm(const GridFunction& u, double p);

// Centered differences in the interior, one-sided two-point stencils at
// the array edges. Exact on affine functions.
std::vector<GridFunction> gradient(const GridFunction& u);

// Discrete W^{1,p} distance: (|u-v|_p^p + sum_d |d_d u - d_d v|_p^p)^{1/p}.
double w1p_distance(const GridFunction& u, const GridFunction& v, double p);

// Pairing integral sum w * u * v.
double pairing(const GridFunction& u, const GridFunction& v);

// Flat CSV (index coordinates + value) and binary row-major dump with a
// small header (dim, resolution, bounds).
void write_csv(const GridFunction& u, std::ostream& out);
GridFunction read_csv(GridDomainPtr domain, std::istream& in);
void write_binary(const GridFunction& u, const std::string& path);
GridFunction read_binary(const std::string& path);

} // namespace molab

#endif
