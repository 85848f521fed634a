#include "hcontent/errors.hpp"
#include "hcontent/inequalities.hpp"
#include "hcontent/integral.hpp"
#include "hcontent/random.hpp"

#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>

using namespace hcontent;

TEST_CASE("exponents and parameter checks") {
    CHECK(InequalityParams{1.5, 2.0, 0.0, std::nullopt}.critical_exponent() == 6.0);
    const InequalityParams cor{1.5, 2.0, 1.0 / 1.5, std::nullopt};
    CHECK(cor.exponent() == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(2.0 - cor.kappa * cor.p == doctest::Approx(1.0));
    CHECK_THROWS_WITH_AS(InequalityParams({2.5, 2.0, 0.0, std::nullopt}).validate_sobolev(),
                         "p must lie in (delta/2, delta)", ParameterError);
    CHECK_THROWS_AS(InequalityParams({0.5, 2.0, 0.0, std::nullopt}).validate_poincare(), ParameterError);
    CHECK_NOTHROW(InequalityParams({3.0, 2.0, 0.0, std::nullopt}).validate_poincare());
}

TEST_CASE("report ratio conventions") {
    CHECK(report_ratio(0.0, 0.0) == 0.0);
    CHECK(report_ratio(1.0, 4.0) == 0.25);
    CHECK_THROWS_AS(report_ratio(1.0, 0.0), ViolationError);
}

TEST_CASE("best shift") {
    const DyadicGrid g(5);
    const Domain d = make_domain(DomainSpec::ball(0.4), g);
    SUBCASE("constant") {
        const auto r = best_shift(eval_preset(LinearPreset{0, 0, 1.25}, g, d.mask), 2.0, d, ContentParams{1.5});
        CHECK(r.b_star == 1.25);
        CHECK(r.value == 0.0);
    }
    SUBCASE("two-valued function against a dense scan") {
        Rng rng(51);
        std::vector<double> v(g.cell_count(), 0.0);
        for (std::size_t k : d.mask.occupied()) v[k] = rng.coin(0.3) ? 1.0 : 0.0;
        const GridFunction u(g, v);
        const ContentParams params{1.2};
        const auto r = best_shift(u, 1.0, d.mask, params);
        ShiftedPowerIntegral f(u, d.mask, params, 1.0);
        double dense = 1e300;
        for (int k = 0; k <= 10000; ++k) dense = std::min(dense, f(k / 10000.0));
        CHECK(std::abs(r.value - dense) <= 1e-6);
    }
    SUBCASE("b_star stays inside the range of u") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const GridFunction u = eval_preset(TrigPreset{seed, 4}, g, d.mask);
            double lo = 1e300, hi = -1e300;
            for (std::size_t k : d.mask.occupied()) {
                lo = std::min(lo, u.value(k));
                hi = std::max(hi, u.value(k));
            }
            const auto r = best_shift(u, 1.7, d.mask, ContentParams{1.0});
            CHECK(r.b_star >= lo);
            CHECK(r.b_star <= hi);
        }
    }
}

TEST_CASE("reports vanish on constants and are invariant under shifts and scaling") {
    const DyadicGrid g(6);
    const Domain d = make_domain(DomainSpec::ball(0.4), g);
    const InequalityParams poincare{1.2, 1.6, 0.0, std::nullopt};
    const InequalityParams sobolev{1.5, 2.0, 0.0, std::nullopt};

    const GridFunction c = eval_preset(LinearPreset{0, 0, -0.75}, g, d.mask);
    CHECK(poincare_report(c, d, poincare).lhs == 0.0);
    CHECK(poincare_report(c, d, poincare).ratio == 0.0);
    CHECK(sobolev_report(c, d, sobolev).lhs == 0.0);

    const GridFunction u = eval_preset(TrigPreset{17, 4}, g, d.mask);
    std::vector<double> shifted(u.values().begin(), u.values().end());
    for (std::size_t k : d.mask.occupied()) shifted[k] += 2.0;
    const GridFunction us(g, shifted, std::vector<double>(u.gradmag().begin(), u.gradmag().end()));
    for (const auto& fn : {+[](const GridFunction& f, const Domain& dd, const InequalityParams& p) {
                               return poincare_report(f, dd, p);
                           }}) {
        const double base = fn(u, d, poincare).ratio;
        CHECK(fn(us, d, poincare).ratio == doctest::Approx(base).epsilon(1e-10));
        CHECK(fn(u.scaled(3.0), d, poincare).ratio == doctest::Approx(base).epsilon(1e-10));
    }
    const double sb = sobolev_report(u, d, sobolev).ratio;
    CHECK(sobolev_report(us, d, sobolev).ratio == doctest::Approx(sb).epsilon(1e-10));
    CHECK(sobolev_report(u.scaled(3.0), d, sobolev).ratio == doctest::Approx(sb).epsilon(1e-10));

    const auto r = poincare_report(u, d, poincare);
    REQUIRE(r.lhs_ball_average.has_value());
    CHECK(*r.lhs_ball_average >= r.lhs);
}

TEST_CASE("Poincare against the classical Lebesgue ratio at delta = 2") {
    // At delta = 2 the content is Lebesgue area, so both sides reduce to
    // midpoint sums. p sits just above the open bound delta/2 = 1; the oracle
    // minimizes the Lebesgue sum over a dense grid of shifts.
    const DyadicGrid g(7);
    const Domain d = make_domain(DomainSpec::square(0.8), g);
    const GridFunction u = eval_preset(LinearPreset{1.0, 0.5, 0.0}, g, d.mask);
    const double p = 1.05;
    const auto r = poincare_report(u, d, InequalityParams{p, 2.0, 0.0, std::nullopt});

    double lo = 1e300, hi = -1e300;
    for (std::size_t k : d.mask.occupied()) {
        lo = std::min(lo, u.value(k));
        hi = std::max(hi, u.value(k));
    }
    double lhs = 1e300;
    for (int s = 0; s <= 4000; ++s) {
        const double b = lo + (hi - lo) * s / 4000;
        double sum = 0.0;
        for (std::size_t k : d.mask.occupied()) sum += std::pow(std::abs(u.value(k) - b), p) * g.cell_area();
        lhs = std::min(lhs, sum);
    }
    double rhs = 0.0;
    for (std::size_t k : d.mask.occupied()) rhs += std::pow(u.gradmag()[k], p) * g.cell_area();
    MESSAGE("choquet ratio " << r.ratio << ", lebesgue ratio " << lhs / rhs);
    CHECK(r.ratio == doctest::Approx(lhs / rhs).epsilon(1e-6));
    CHECK(r.ratio <= lhs / rhs * (1 + 1e-12));
}

TEST_CASE("zero-boundary reports") {
    const DyadicGrid g7(7);
    const Domain sq = make_domain(DomainSpec::square(0.9), g7);
    const BumpPreset bump{{0.5, 0.5}, 0.3};

    SUBCASE("zero function") {
        const GridFunction z = eval_preset(LinearPreset{0, 0, 0}, g7, sq.mask);
        CHECK(zero_boundary_report(z, sq, InequalityParams{1.05, 2.0, 0.0, std::nullopt}, ZeroBoundaryVariant::a).ratio == 0.0);
    }
    SUBCASE("variant a at delta = 2 matches a Lebesgue oracle") {
        const GridFunction u = eval_preset(bump, g7, sq.mask);
        const double p = 1.05;
        const auto r = zero_boundary_report(u, sq, InequalityParams{p, 2.0, 0.0, std::nullopt}, ZeroBoundaryVariant::a);
        double lhs = 0.0, rhs = 0.0;
        for (std::size_t k : sq.mask.occupied()) {
            lhs += std::pow(std::abs(u.value(k)), p) * g7.cell_area();
            rhs += std::pow(u.gradmag()[k], p) * g7.cell_area();
        }
        rhs *= std::pow(mask_diameter(sq.mask), p);
        CHECK(r.ratio == doctest::Approx(lhs / rhs).epsilon(1e-10));
    }
    SUBCASE("variant b is stable in the level") {
        std::array<double, 2> ratio{};
        for (int level : {7, 8}) {
            const Domain d = make_domain(DomainSpec::square(0.9), DyadicGrid(level));
            ratio[level - 7] = zero_boundary_report(eval_preset(bump, d.mask.grid(), d.mask), d,
                                                    InequalityParams{1.5, 2.0, 0.0, std::nullopt},
                                                    ZeroBoundaryVariant::b)
                                   .ratio;
        }
        MESSAGE("variant b ratio " << ratio[0] << " -> " << ratio[1]);
        CHECK(std::abs(ratio[1] - ratio[0]) < 0.1 * ratio[0]);
    }
    SUBCASE("support violation lists cells") {
        const GridFunction u = eval_preset(TrigPreset{1, 4}, g7, sq.mask);
        CHECK_THROWS_AS(zero_boundary_report(u, sq, InequalityParams{1.05, 2.0, 0.0, std::nullopt}, ZeroBoundaryVariant::a),
                        InputError);
        CHECK_THROWS_AS(adams_report(u, sq), InputError);
    }
}

TEST_CASE("Adams report") {
    const DyadicGrid g(7);
    const Domain d = make_domain(DomainSpec::ball(0.4), g);
    CHECK(adams_report(eval_preset(LinearPreset{0, 0, 0}, g, d.mask), d).ratio == 0.0);
    const auto r = adams_report(eval_preset(BumpPreset{{0.5, 0.5}, 0.3}, g, d.mask), d);
    CHECK(r.ratio > 0.0);
    CHECK(std::isfinite(r.ratio));
}

TEST_CASE("maximal sweep") {
    SUBCASE("indicator of the full square") {
        const auto rows = maximal_sweep({LinearPreset{0, 0, 1.0}}, InequalityParams{1.0, 1.5, 0.0, std::nullopt}, 4, 5);
        REQUIRE(rows.size() == 2);
        for (const auto& r : rows) {
            // With r^-2 averages M1 <= pi, so the ratio is at most pi^p.
            CHECK(r.ratio >= 1.0);
            CHECK(r.ratio <= std::pow(3.141592653589793, 1.0));
        }
    }
    SUBCASE("ordering and the kappa window") {
        const auto family = trig_family(3, 2);
        const auto rows = maximal_sweep(family, InequalityParams{1.2, 2.0, 0.5, std::nullopt}, 4, 5);
        REQUIRE(rows.size() == 6);
        for (std::size_t k = 0; k < rows.size(); ++k) {
            CHECK(rows[k].level == 4 + static_cast<int>(k / 3));
            CHECK(rows[k].preset == k % 3);
        }
        CHECK(max_per_level(rows).size() == 2);
        CHECK_THROWS_AS(maximal_sweep(family, InequalityParams{4.5, 2.0, 0.5, std::nullopt}, 4, 4), ParameterError);
        CHECK_THROWS_AS(maximal_sweep({}, InequalityParams{1.2, 2.0, 0.5, std::nullopt}, 4, 4), ParameterError);
    }
}

TEST_CASE("sharpness scan parameter window") {
    const InequalityParams p{1.5, 2.0, 0.0, std::nullopt};
    CHECK_THROWS_AS(sharpness_scan(8.0, -0.4, p, 4, 4), ParameterError);  // below 1 - delta/p
    CHECK_THROWS_AS(sharpness_scan(8.0, 0.1, p, 4, 4), ParameterError);
    CHECK_THROWS_AS(sharpness_scan(8.0, -0.2, p, 4, 4), ParameterError);  // above -delta/q
    const auto rows = sharpness_scan(8.0, -0.3, p, 4, 6);
    REQUIRE(rows.size() == 3);
    CHECK(rows[2].lhs > rows[0].lhs);
}
