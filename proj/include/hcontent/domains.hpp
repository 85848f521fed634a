#pragma once

// John-domain presets centered in the unit square, with analytic John
// constants, the reference ball used for u_B, and the pointwise
// representation check |u(x) - u_B| <= c I_1|grad u|(x).

#include "hcontent/grid.hpp"

#include <string>
#include <vector>

namespace hcontent {

enum class DomainKind { ball, square, polygon, punctured_ball };

struct DomainSpec {
    DomainKind kind = DomainKind::ball;
    double radius = 0.4;          // ball, punctured_ball
    double side = 0.8;            // square
    std::vector<Point> vertices;  // polygon (convex)

    static DomainSpec ball(double r) { return {DomainKind::ball, r, 0.0, {}}; }
    static DomainSpec square(double a) { return {DomainKind::square, 0.0, a, {}}; }
    static DomainSpec punctured_ball(double r) { return {DomainKind::punctured_ball, r, 0.0, {}}; }
    static DomainSpec polygon(std::vector<Point> v) { return {DomainKind::polygon, 0.0, 0.0, std::move(v)}; }
};

std::string to_string(DomainKind kind);
DomainKind parse_domain_kind(const std::string& name);

struct Domain {
    std::string preset;
    DyadicMask mask;
    Point john_center;
    double alpha = 0.0;
    double beta = 0.0;
    /// The preset's geometric center (the puncture for punctured_ball).
    Point shape_center;
    double ref_radius = 0.0; // reference ball B(john_center, ref_radius)
};

Domain make_domain(const DomainSpec& spec, const DyadicGrid& grid);

/// Cells with centers in the reference ball.
DyadicMask reference_ball_mask(const Domain& domain);

/// Lebesgue mean of u over the reference ball. Throws ResolutionError when the
/// ball holds no cell center.
double reference_average(const GridFunction& u, const Domain& domain);

/// max over domain cells of |u(x) - u_B| / I_1(|grad u|)(x): the empirical
/// constant of the representation formula. Cells with u(x) = u_B contribute 0;
/// a vanishing potential at a cell with u(x) != u_B yields +infinity.
double representation_ratio(const GridFunction& u, const Domain& domain);

} // namespace hcontent
