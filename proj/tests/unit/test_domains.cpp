#include "hcontent/domains.hpp"
#include "hcontent/errors.hpp"
#include "hcontent/integral.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace hcontent;

namespace {

// Distance from p to the nearest non-domain cell center (cells beyond the
// unit square included), less half a cell: a grid proxy for dist(p, boundary).
double grid_boundary_distance(const DyadicMask& mask, Point p) {
    const DyadicGrid& g = mask.grid();
    const double h = g.cell_width();
    double best = std::min({p.x + h / 2, 1 + h / 2 - p.x, p.y + h / 2, 1 + h / 2 - p.y});
    for (std::size_t k = 0; k < g.cell_count(); ++k) {
        if (!mask.test(k)) best = std::min(best, distance(p, g.center(k)));
    }
    return best - h / 2;
}

// Along 64 straight segments from the farthest domain point in each
// direction to the John center, check dist(gamma(t)) >= (alpha/beta) t up to
// one cell width and length <= beta up to one cell width.
void check_john_segments(const Domain& d) {
    const DyadicGrid& g = d.mask.grid();
    const double h = g.cell_width();
    for (int k = 0; k < 64; ++k) {
        const double th = 2.0 * std::numbers::pi * k / 64;
        const Point dir{std::cos(th), std::sin(th)};
        double len = 0.0;
        for (double s = 0.0; s < 1.5; s += h / 4) {
            const Point p{d.john_center.x + s * dir.x, d.john_center.y + s * dir.y};
            if (p.x < 0 || p.y < 0 || p.x >= 1 || p.y >= 1) break;
            const auto i = static_cast<std::size_t>(p.x * g.side());
            const auto j = static_cast<std::size_t>(p.y * g.side());
            if (!d.mask.test(i, j)) break;
            len = s;
        }
        CHECK(len <= d.beta + h);
        for (double t = 0.0; t <= len; t += h) {
            const double s = len - t;
            const Point p{d.john_center.x + s * dir.x, d.john_center.y + s * dir.y};
            CHECK(grid_boundary_distance(d.mask, p) >= d.alpha / d.beta * t - 1.5 * h);
        }
    }
}

} // namespace

TEST_CASE("ball preset") {
    const Domain d = make_domain(DomainSpec::ball(0.4), DyadicGrid(7));
    CHECK(d.alpha == 0.4);
    CHECK(d.beta == 0.4);
    CHECK(mask_diameter(d.mask) <= 2 * d.beta);
    check_john_segments(d);
}

TEST_CASE("square preset") {
    const Domain d = make_domain(DomainSpec::square(0.8), DyadicGrid(7));
    CHECK(d.alpha == doctest::Approx(0.4));
    CHECK(d.beta == doctest::Approx(0.4 * std::sqrt(2.0)));
    CHECK(mask_diameter(d.mask) <= 2 * d.beta);
    check_john_segments(d);
}

TEST_CASE("polygon preset") {
    const Domain d = make_domain(DomainSpec::polygon({{0.2, 0.2}, {0.85, 0.3}, {0.6, 0.85}, {0.15, 0.6}}), DyadicGrid(7));
    CHECK(d.alpha > 0.0);
    CHECK(d.alpha <= d.beta);
    CHECK(mask_diameter(d.mask) <= 2 * d.beta);
    check_john_segments(d);
    CHECK_THROWS_AS(make_domain(DomainSpec::polygon({{0.2, 0.2}, {0.8, 0.2}, {0.5, 0.3}, {0.5, 0.8}}), DyadicGrid(5)),
                    ParameterError);
    CHECK_THROWS_AS(make_domain(DomainSpec::polygon({{0.2, 0.2}, {1.3, 0.2}, {0.5, 0.8}}), DyadicGrid(5)),
                    ParameterError);
}

TEST_CASE("punctured ball preset") {
    const DyadicGrid g(8);
    const Domain d = make_domain(DomainSpec::punctured_ball(0.45), g);
    const Domain b = make_domain(DomainSpec::ball(0.45), g);
    CHECK(b.mask.minus(d.mask).count() == 1);
    CHECK(d.mask.is_subset_of(b.mask));
    CHECK(d.alpha == b.alpha);
    CHECK(d.beta == b.beta);
    CHECK(d.john_center.x == doctest::Approx(0.5 - g.cell_width() / 2));
}

TEST_CASE("shape escaping the square") {
    CHECK_THROWS_AS(make_domain(DomainSpec::ball(0.6), DyadicGrid(5)), ParameterError);
    CHECK_THROWS_AS(make_domain(DomainSpec::square(1.2), DyadicGrid(5)), ParameterError);
}

TEST_CASE("reference ball") {
    for (const auto& spec : {DomainSpec::ball(0.4), DomainSpec::square(0.8), DomainSpec::punctured_ball(0.45)}) {
        const Domain d = make_domain(spec, DyadicGrid(7));
        const DyadicMask ref = reference_ball_mask(d);
        CHECK_FALSE(ref.empty());
        CHECK(ref.is_subset_of(d.mask));
        CHECK(d.ref_radius <= d.alpha * d.alpha / d.beta);
        // Every grid cell with center in the ball belongs to the domain.
        const DyadicGrid& g = d.mask.grid();
        for (std::size_t k = 0; k < g.cell_count(); ++k) {
            if (distance(g.center(k), d.john_center) < d.ref_radius) CHECK(d.mask.test(k));
        }
    }
}

TEST_CASE("reference average") {
    const DyadicGrid g(8);
    const Domain d = make_domain(DomainSpec::ball(0.4), g);
    CHECK(reference_average(eval_preset(LinearPreset{0.0, 0.0, 2.5}, g, d.mask), d) == 2.5);

    const double lin = reference_average(eval_preset(LinearPreset{1.0, -2.0, 0.3}, g, d.mask), d);
    const double at_center = d.john_center.x - 2.0 * d.john_center.y + 0.3;
    CHECK(std::abs(lin - at_center) <= std::sqrt(5.0) * g.cell_width());

    // Midpoint quadrature over the disc with a finer independent lattice.
    const double r = d.ref_radius;
    const BumpPreset bump{{0.5, 0.5}, 0.3};
    double sum = 0.0;
    long count = 0;
    const int n = 2000;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const double x = -r + (a + 0.5) * 2 * r / n;
            const double y = -r + (b + 0.5) * 2 * r / n;
            if (x * x + y * y >= r * r) continue;
            const double s = (std::pow(d.john_center.x + x - 0.5, 2) + std::pow(d.john_center.y + y - 0.5, 2)) / 0.09;
            sum += s < 1 ? std::pow(1 - s, 3) : 0.0;
            ++count;
        }
    const double oracle = sum / count;
    const double got = reference_average(eval_preset(bump, g, d.mask), d);
    CHECK(std::abs(got - oracle) <= 0.02 * oracle);
}

TEST_CASE("representation ratio") {
    SUBCASE("constant gives zero") {
        const DyadicGrid g(6);
        const Domain d = make_domain(DomainSpec::ball(0.4), g);
        CHECK(representation_ratio(eval_preset(LinearPreset{0, 0, 1.0}, g, d.mask), d) == 0.0);
    }
    SUBCASE("linear data on the ball is stable in the level") {
        double r7 = 0, r8 = 0;
        for (int level : {7, 8}) {
            const DyadicGrid g(level);
            const Domain d = make_domain(DomainSpec::ball(0.4), g);
            (level == 7 ? r7 : r8) = representation_ratio(eval_preset(LinearPreset{1.0, 0.5, 0.0}, g, d.mask), d);
        }
        MESSAGE("ratio " << r7 << " -> " << r8);
        CHECK(std::isfinite(r8));
        CHECK(std::abs(r8 - r7) < 0.1 * r7);
    }
    SUBCASE("shift invariance") {
        const DyadicGrid g(6);
        const Domain d = make_domain(DomainSpec::square(0.8), g);
        const GridFunction u = eval_preset(TrigPreset{2, 4}, g, d.mask);
        const double a = representation_ratio(u, d);
        // Shift only inside the domain so the zero extension is preserved.
        std::vector<double> v(u.values().begin(), u.values().end());
        for (std::size_t k = 0; k < v.size(); ++k) if (d.mask.test(k)) v[k] += 3.0;
        const GridFunction w(g, v, std::vector<double>(u.gradmag().begin(), u.gradmag().end()));
        CHECK(representation_ratio(w, d) == doctest::Approx(a).epsilon(1e-12));
    }
    SUBCASE("square ratio against the (beta/alpha)^4 scale") {
        const DyadicGrid g(7);
        const Domain sq = make_domain(DomainSpec::square(0.8), g);
        const Domain ball = make_domain(DomainSpec::ball(0.4), g);
        const double cb = representation_ratio(eval_preset(LinearPreset{1.0, 0.5, 0.0}, g, ball.mask), ball);
        const double cs = representation_ratio(eval_preset(LinearPreset{1.0, 0.5, 0.0}, g, sq.mask), sq);
        // Ball has beta/alpha = 1, so its ratio measures c(n).
        MESSAGE("measured c(n) " << cb << ", square ratio " << cs);
        CHECK(cs <= cb * std::pow(sq.beta / sq.alpha, 4));
    }
    SUBCASE("missing gradient") {
        const DyadicGrid g(4);
        const Domain d = make_domain(DomainSpec::ball(0.4), g);
        CHECK_THROWS_AS(representation_ratio(GridFunction(g, std::vector<double>(g.cell_count(), 1.0)), d),
                        InputError);
    }
}
