#include "hcontent/domains.hpp"

#include "hcontent/errors.hpp"
#include "hcontent/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hcontent {

std::string to_string(DomainKind kind) {
    switch (kind) {
    case DomainKind::ball: return "ball";
    case DomainKind::square: return "square";
    case DomainKind::polygon: return "polygon";
    case DomainKind::punctured_ball: return "punctured_ball";
    }
    return "unknown";
}

DomainKind parse_domain_kind(const std::string& name) {
    if (name == "ball") return DomainKind::ball;
    if (name == "square") return DomainKind::square;
    if (name == "polygon") return DomainKind::polygon;
    if (name == "punctured_ball" || name == "punctured-ball") return DomainKind::punctured_ball;
    throw ParameterError("unknown domain preset '" + name + "'");
}

namespace {

constexpr Point kCenter{0.5, 0.5};

struct ConvexGeometry {
    Point centroid;
    double inradius;
    double circumradius;
};

ConvexGeometry convex_geometry(const std::vector<Point>& v) {
    const std::size_t n = v.size();
    double area2 = 0.0, cx = 0.0, cy = 0.0;
    int sign = 0;
    for (std::size_t a = 0; a < n; ++a) {
        const Point p = v[a];
        const Point q = v[(a + 1) % n];
        const Point r = v[(a + 2) % n];
        const double turn = (q.x - p.x) * (r.y - q.y) - (q.y - p.y) * (r.x - q.x);
        if (turn != 0.0) {
            const int s = turn > 0 ? 1 : -1;
            if (sign != 0 && s != sign) throw ParameterError("polygon domain must be convex");
            sign = s;
        }
        const double c = p.x * q.y - q.x * p.y;
        area2 += c;
        cx += (p.x + q.x) * c;
        cy += (p.y + q.y) * c;
    }
    if (area2 == 0.0) throw ParameterError("polygon domain is degenerate");
    const Point centroid{cx / (3.0 * area2), cy / (3.0 * area2)};

    double inradius = std::numeric_limits<double>::infinity();
    double circumradius = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
        const Point p = v[a];
        const Point q = v[(a + 1) % n];
        const double len = distance(p, q);
        const double d = std::abs((q.x - p.x) * (centroid.y - p.y) - (q.y - p.y) * (centroid.x - p.x)) / len;
        inradius = std::min(inradius, d);
        circumradius = std::max(circumradius, distance(p, centroid));
    }
    return {centroid, inradius, circumradius};
}

// Distance from x0 to the nearest cell center (real or beyond the unit
// square) that is not in the mask.
double distance_to_complement(const DyadicMask& mask, Point x0) {
    const DyadicGrid& grid = mask.grid();
    const double h = grid.cell_width();
    double best = std::min({x0.x + h / 2, 1.0 + h / 2 - x0.x, x0.y + h / 2, 1.0 + h / 2 - x0.y});
    for (std::size_t idx = 0; idx < grid.cell_count(); ++idx) {
        if (!mask.test(idx)) best = std::min(best, distance(grid.center(idx), x0));
    }
    return best;
}

std::size_t cell_of(const DyadicGrid& grid, Point p) {
    const auto clamp = [&](double c) {
        const auto k = static_cast<std::size_t>(std::floor(c * static_cast<double>(grid.side())));
        return std::min(k, grid.side() - 1);
    };
    return grid.index(clamp(p.x), clamp(p.y));
}

} // namespace

Domain make_domain(const DomainSpec& spec, const DyadicGrid& grid) {
    Domain d{to_string(spec.kind), DyadicMask(grid), kCenter, 0.0, 0.0, kCenter, 0.0};
    const double h = grid.cell_width();

    switch (spec.kind) {
    case DomainKind::ball:
    case DomainKind::punctured_ball: {
        if (!(spec.radius > 0.0)) throw ParameterError("ball radius must be positive");
        d.mask = rasterize_shape(grid, Shape{Ball{kCenter, spec.radius}});
        d.alpha = d.beta = spec.radius;
        if (spec.kind == DomainKind::punctured_ball) {
            // The puncture removes the cell holding the center; the John
            // center moves to the diagonal neighbour so it stays inside.
            d.mask.set(cell_of(grid, kCenter), false);
            d.john_center = {kCenter.x - h / 2, kCenter.y - h / 2};
        }
        break;
    }
    case DomainKind::square: {
        if (!(spec.side > 0.0)) throw ParameterError("square side must be positive");
        const double lo = 0.5 - spec.side / 2;
        const double hi = 0.5 + spec.side / 2;
        d.mask = rasterize_shape(grid, Shape{Polygon{{{lo, lo}, {hi, lo}, {hi, hi}, {lo, hi}}}});
        d.alpha = spec.side / 2;
        d.beta = spec.side * std::sqrt(2.0) / 2;
        break;
    }
    case DomainKind::polygon: {
        Shape shape{Polygon{spec.vertices}};
        shape.validate();
        const auto geo = convex_geometry(spec.vertices);
        d.mask = rasterize_shape(grid, shape);
        d.john_center = d.shape_center = geo.centroid;
        d.alpha = geo.inradius * (geo.inradius / geo.circumradius);
        d.beta = geo.circumradius;
        break;
    }
    }

    if (!d.mask.test(cell_of(grid, d.john_center))) {
        throw ResolutionError("grid too coarse: the John center cell is not in the domain");
    }
    d.ref_radius = std::min(d.alpha * d.alpha / d.beta, distance_to_complement(d.mask, d.john_center));
    return d;
}

DyadicMask reference_ball_mask(const Domain& domain) {
    const DyadicGrid& grid = domain.mask.grid();
    DyadicMask out(grid);
    const double r2 = domain.ref_radius * domain.ref_radius;
    for (std::size_t idx = 0; idx < grid.cell_count(); ++idx) {
        if (!domain.mask.test(idx)) continue;
        const Point c = grid.center(idx);
        const double dx = c.x - domain.john_center.x;
        const double dy = c.y - domain.john_center.y;
        if (dx * dx + dy * dy < r2) out.set(idx);
    }
    return out;
}

double reference_average(const GridFunction& u, const Domain& domain) {
    if (!(u.grid() == domain.mask.grid())) throw ParameterError("function and domain live on different grids");
    const DyadicMask ball = reference_ball_mask(domain);
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t idx : ball.occupied()) {
        sum += u.value(idx);
        ++count;
    }
    if (count == 0) throw ResolutionError("reference ball contains no cell center");
    return sum / static_cast<double>(count);
}

double representation_ratio(const GridFunction& u, const Domain& domain) {
    const double ub = reference_average(u, domain);
    const GridFunction potential = riesz_potential(u.gradient_magnitude(), domain.mask);
    double worst = 0.0;
    for (std::size_t idx : domain.mask.occupied()) {
        const double gap = std::abs(u.value(idx) - ub);
        if (gap == 0.0) continue;
        const double i1 = potential.value(idx);
        if (!(i1 > 0.0)) return std::numeric_limits<double>::infinity();
        worst = std::max(worst, gap / i1);
    }
    return worst;
}

} // namespace hcontent
