// SPDX-License-Identifier: Apache-2.0
//
// Numerical Legendre conjugation, convex envelopes (lower hulls of
// sampled data), the local-infimum envelope of an x-dependent integrand,
// and the inequality certificates built from them.

#ifndef MOLAB_CONJUGATE_HPP
#define MOLAB_CONJUGATE_HPP

#include <iosfwd>
#include <vector>

#include "molab/phi.hpp"
#include "molab/regularity.hpp"

namespace molab {

enum class TableProvenance { conjugate, second_conjugate, local_inf, local_inf_envelope };

const char* provenance_name(TableProvenance p);

// Sampled function of s with provenance and a one-sided error bound.
// Conjugate tables are lower bounds of the true sup; `gap` bounds the
// defect per node (max over the table).
struct EnvelopeTable {
    std::vector<double> s;
    std::vector<double> value;
    TableProvenance provenance = TableProvenance::conjugate;
    double gap = 0.0;
    bool truncation_warning = false; // sup attained at the t-grid boundary

    double interpolate(double si) const; // piecewise linear, clamped ends
    bool is_convex(double tol = 1e-9) const; // slopes nondecreasing
};

void write_table_csv(const EnvelopeTable& table, std::ostream& out);

// M*(x,s) = sup_{t>=0} { s t - M(x,t) } on the s-grid, by grid scan plus
// golden-section refinement around the argmax (the objective is concave
// in t for convex M). Sets truncation_warning when the max sits on the
// last grid cell.
EnvelopeTable legendre_conjugate(const PhiFunction& M, const Point& x,
                                 const std::vector<double>& t_grid,
                                 const std::vector<double>& s_grid);

// Conjugate of a sampled table: sup over its nodes of (s t_i - v_i).
EnvelopeTable conjugate_of_table(const EnvelopeTable& table,
                                 const std::vector<double>& s_grid);

// Lower convex hull of the sampled points as a piecewise-linear
// function re-sampled on the input grid (monotone chain). Requires at
// least 2 finite points; throws std::invalid_argument otherwise.
EnvelopeTable second_conjugate(const std::vector<double>& s,
                               const std::vector<double>& value);

struct FenchelYoungReport {
    double max_violation = -kInf; // max uv - M(x,u) - M*(x,v)
    double gap = 0.0;             // conjugate table error bound
    double worst_u = 0.0, worst_v = 0.0;
    bool pass() const { return max_violation <= gap + 1e-12; }
};

// Certifies uv <= M(x,u) + M*(x,v) up to the conjugate sampling gap.
FenchelYoungReport verify_fenchel_young(const PhiFunction& M, const Point& x,
                                        const std::vector<double>& u_grid,
                                        const std::vector<double>& v_grid,
                                        const EnvelopeTable& conjugate);

// inf over the y-sample of M(y,s), per s, followed by its lower convex
// hull. The y-sample must lie in B(x, eps/2) and be nonempty.
EnvelopeTable local_inf_envelope(const PhiFunction& M, const Point& x, double eps,
                                 const std::vector<Point>& y_sample,
                                 const std::vector<double>& s_grid);

struct EnvelopeBoundReport {
    double max_ratio = 0.0; // max of M(y,s) / (envelope(s) * 4 phi(eps,s)^2)
    Point worst_y;
    double worst_s = 0.0;
    int degenerate_nodes = 0; // envelope == 0 at s > 0, excluded
    bool pass(double tol = 0.05) const { return max_ratio <= 1.0 + tol; }
};

// Certifies M(y,s) <= 4 phi(eps,s)^2 (envelope of inf_{B(x,eps/2)} M)(s)
// over the y-sample and the s-grid (s = 0 excluded).
EnvelopeBoundReport verify_envelope_bound(const PhiFunction& M,
                                          const RegularityWitness& phi,
                                          const Point& x, double eps,
                                          const std::vector<Point>& y_sample,
                                          const std::vector<double>& s_grid);

} // namespace molab

#endif
