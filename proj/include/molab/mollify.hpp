// SPDX-License-Identifier: Apache-2.0
//
// Friedrichs mollification on grids, smooth truncation and translation,
// partitions of unity over box covers, and the shift-and-mollify
// construction for domains with the segment property.

#ifndef MOLAB_MOLLIFY_HPP
#define MOLAB_MOLLIFY_HPP

#include <vector>

#include "molab/grid.hpp"
#include "molab/phi.hpp"

namespace molab {

// J(x) = k exp(-1/(1-|x|^2)) on |x| < 1, 0 outside; k normalizes the
// continuum integral to 1. Value of the unnormalized bump:
double friedrichs_bump(double r2); // argument |x|^2

// Continuum normalization constant k and peak value k/e for dimension N.
double friedrichs_normalizer(int N);
double friedrichs_kernel(int N, const Point& x);

// Discrete kernel of J_eps on a grid with spacing h: nonnegative
// weights on integer offsets within radius eps, renormalized to sum to
// exactly 1.
struct MollifierSpec {
    double eps = 0.0;
    int radius_cells[2] = {0, 0};
    std::vector<double> weights; // row-major over the offset box
    int dim = 1;

    double weight(const std::array<int, 2>& offset) const;
    double max_weight() const;
    // Discrete max density max_j K_j / h^N; the exact discrete analogue
    // of max J scaled by eps^{-N} enters the L-infinity bound.
    double max_density(double cell_volume) const { return max_weight() / cell_volume; }
    // (sum_j (K_j/h^N)^{p'} h^N)^{1/p'}: discrete L^{p'} norm of J_eps.
    double lp_dual_norm(double cell_volume, double p) const;
};

MollifierSpec build_mollifier(const GridDomain& domain, double eps);

// u_eps = J_eps * u by discrete convolution with zero extension outside
// the array. Requires eps >= 2h (kernel resolvable); throws
// std::invalid_argument otherwise.
GridFunction mollify(const GridFunction& u, double eps);

// Smooth cutoff profile: 1 on |x| <= R, 0 on |x| >= 2R, C^inf monotone
// transition built from the Friedrichs bump.
double cutoff_profile(double r); // 1 for r<=1, 0 for r>=2
GridFunction truncate(const GridFunction& u, double R);

// Shift by an integer multiple of the spacing (the vector is snapped;
// the snapped shift is reported back through *snapped when given).
// Exposed nodes are zero-filled.
GridFunction translate(const GridFunction& u, const std::array<double, 2>& shift,
                       std::array<double, 2>* snapped = nullptr);

// Smooth bump positive exactly on the open box: product over axes of
// the 1-D Friedrichs profile mapped onto each interval.
double box_bump(const Box& box, const Point& p);

// Partition of unity over open boxes covering the compact K: per-box
// bumps normalized by their sum where positive. Throws when a node of K
// is not covered.
std::vector<GridFunction> partition_of_unity(const std::vector<Box>& cover,
                                             const GridDomain& domain,
                                             const Box& K);

// One covering piece for the segment construction. The segment vector z
// points into the domain; outer_set must compactly contain inner_set.
struct CoverPiece {
    Box outer_set;  // theta_hat
    Box inner_set;  // theta_prime, compactly contained in outer_set
    std::array<double, 2> z{0.0, 0.0}; // zero vector on the interior piece
    bool boundary_piece = false;

    double z_norm() const;
};

struct SegmentCover {
    std::vector<CoverPiece> pieces;
    Box compact_k;                    // compact set carrying the partition
    std::vector<GridFunction> psi;    // partition functions, one per piece

    // Admissible shift bound r_max = min{ 1/(|z|+1), gap(inner,outer)/|z| }.
    double r_max(int i) const;
    // Admissible mollification radius for the outward shift:
    // eps_max = dist(Gamma_{i,r} , outer_set cap closure(domain)).
    double eps_max_outward(const GridDomain& domain, int i, double r) const;
    // Inward variant: eps_max = dist((inner cap closure(domain)) + r z,
    // complement of domain).
    double eps_max_inward(const GridDomain& domain, int i, double r) const;

    // Boundary trace Gamma_i = closure(inner_set) cap boundary(domain),
    // sampled at grid resolution along the boundary.
    std::vector<Point> boundary_trace(const GridDomain& domain, int i) const;
};

// Builds psi (validating the cover) for user-declared pieces.
SegmentCover make_segment_cover(std::vector<CoverPiece> pieces, const Box& K,
                                const GridDomainPtr& domain);

// Automatic 1-D cover: two boundary pieces with inward vectors plus one
// interior piece, margins proportional to the domain length.
SegmentCover auto_interval_cover(const GridDomainPtr& domain, const Box& K);

enum class ShiftDirection { outward, inward };

struct ShiftedMollification {
    GridFunction v;          // J_eps * (u)_{+-r z}, sampled on the domain grid
    Box analytic_support;    // supp(u) -+ r z + B(eps), exact box arithmetic
    double r = 0.0, eps = 0.0;
    std::array<double, 2> shift{0.0, 0.0}; // the snapped grid shift -+ r z
    // Discrete boundary clearance: min over the shifted boundary trace
    // of the distance to closure(domain); must stay positive (outward).
    double gamma_clearance = 0.0;
    // Inward variant: min distance of the nonzero nodes to the domain
    // boundary.
    double interior_clearance = 0.0;
    double sup_bound_constant = 0.0; // max density * ||u||_L1 (discrete)
};

// v_i = J_eps * u_i(. + r z) (outward) or J_eps * u_i(. - r z) (inward).
// r and eps must respect the admissible bounds of the cover piece;
// throws std::invalid_argument otherwise. The convolution is evaluated
// on the domain grid with zero extension, so the returned samples are
// the restriction of the continuum formula to the domain closure.
ShiftedMollification shifted_mollify(const GridFunction& u_i, const SegmentCover& cover,
                                     int piece, double r, double eps,
                                     ShiftDirection direction);

} // namespace molab

#endif
