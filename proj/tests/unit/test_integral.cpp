#include "hcontent/errors.hpp"
#include "hcontent/integral.hpp"
#include "hcontent/random.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace hcontent;

namespace {

GridFunction indicator(const DyadicMask& e) {
    std::vector<double> v(e.grid().cell_count());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = e.test(k) ? 1.0 : 0.0;
    return GridFunction(e.grid(), v);
}

} // namespace

TEST_CASE("step function invariants") {
    CHECK_THROWS_AS(StepFunction({}), InputError);
    CHECK_THROWS_AS(StepFunction({{0.0, 1.0}, {0.0, 0.0}}), InputError);
    CHECK_THROWS_AS(StepFunction({{0.0, 1.0}, {1.0, 2.0}, {2.0, 0.0}}), InputError);
    CHECK_THROWS_AS(StepFunction({{0.0, 1.0}, {1.0, 0.5}}), InputError);
    const StepFunction s({{0.0, 2.0}, {1.0, 0.5}, {3.0, 0.0}});
    CHECK(s.integral() == 3.0);
    CHECK(s.power_integral(2.0) == 2.0 * 1.0 + 0.5 * 8.0);
}

TEST_CASE("distribution of an indicator and of a constant") {
    const DyadicGrid g(4);
    const DyadicMask full(g, true);
    DyadicMask e(g);
    for (std::size_t k = 0; k < 40; ++k) e.set(k * 3 % 256);
    const ContentParams params{1.3};

    const StepFunction step = distribution_function(indicator(e), full, params);
    const auto bp = step.breakpoints();
    REQUIRE(bp.size() == 2);
    CHECK(bp[0].t == 0.0);
    CHECK(bp[0].h == dyadic_content(e, params));
    CHECK(bp[1].t == 1.0);
    CHECK(bp[1].h == 0.0);

    const GridFunction c(g, std::vector<double>(g.cell_count(), 2.0));
    const StepFunction cstep = distribution_function(c, full, ContentParams{1.0});
    const auto cp = cstep.breakpoints();
    REQUIRE(cp.size() == 2);
    CHECK(cp[0].h == 1.0);
    CHECK(cp[1].t == 2.0);
    CHECK(choquet_integral(c, full, ContentParams{1.0}) == 2.0);
}

TEST_CASE("two-level function on the 2x2 grid") {
    // Values 3, 1, 1, 0. Superlevel sets: {t < 1}: cells 0,1,2; {1 <= t < 3}: cell 0.
    const DyadicGrid g(1);
    const DyadicMask full(g, true);
    const GridFunction f(g, {3.0, 1.0, 1.0, 0.0});
    const double delta = 1.0;
    const StepFunction step = distribution_function(f, full, ContentParams{delta});
    const auto bp = step.breakpoints();
    REQUIRE(bp.size() == 3);
    CHECK(bp[0].h == 1.0);       // three cells: root (1) beats 3 * 0.5
    CHECK(bp[1].t == 1.0);
    CHECK(bp[1].h == 0.5);       // one cell of side 1/2
    CHECK(bp[2].t == 3.0);
    CHECK(choquet_integral(f, full, ContentParams{delta}) == 1.0 * 1.0 + 0.5 * 2.0);
}

TEST_CASE("homogeneity and indicator integrals") {
    Rng rng(21);
    const DyadicGrid g(5);
    const DyadicMask full(g, true);
    for (int trial = 0; trial < 20; ++trial) {
        const ContentParams params{rng.uniform(0.2, 2.0)};
        const GridFunction f = eval_preset(TrigPreset{rng.below(1000), 4}, g, full);
        const double base = choquet_integral(f, full, params);
        CHECK(choquet_integral(f.scaled(3.5), full, params) == doctest::Approx(3.5 * base).epsilon(1e-12));
        CHECK(choquet_norm(f, 1.0, full, params) == doctest::Approx(base).epsilon(1e-12));

        DyadicMask e(g);
        for (std::size_t k = 0; k < g.cell_count(); ++k) e.set(k, rng.coin(0.2));
        const double h = dyadic_content(e, params);
        CHECK(choquet_integral(indicator(e), full, params) == h);
        const double p = rng.uniform(0.5, 4.0);
        CHECK(choquet_norm(indicator(e), p, full, params) == doctest::Approx(std::pow(h, 1.0 / p)).epsilon(1e-12));
    }
}

TEST_CASE("monotone in the integrand and in the domain") {
    Rng rng(22);
    const DyadicGrid g(5);
    const DyadicMask full(g, true);
    DyadicMask half(g);
    for (std::size_t k = 0; k < g.cell_count() / 2; ++k) half.set(k);
    for (int trial = 0; trial < 20; ++trial) {
        const ContentParams params{rng.uniform(0.2, 2.0)};
        const GridFunction f = eval_preset(TrigPreset{rng.below(1000), 3}, g, full);
        std::vector<double> bigger(f.values().begin(), f.values().end());
        for (double& v : bigger) v = std::abs(v) + rng.uniform(0.0, 0.1);
        CHECK(choquet_integral(f, full, params) <= choquet_integral(GridFunction(g, bigger), full, params));
        CHECK(choquet_integral(f, half, params) <= choquet_integral(f, full, params));
    }
}

TEST_CASE("both routes of the power identity agree on trig data") {
    const DyadicGrid g(6);
    const DyadicMask full(g, true);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const GridFunction f = eval_preset(TrigPreset{seed, 4}, g, full);
        const double direct = choquet_power_integral(f, 1.3, full, ContentParams{1.5});
        const double layers = distribution_function(f, full, ContentParams{1.5}).power_integral(1.3);
        CHECK(std::abs(direct - layers) <= 1e-10 * direct);
        CHECK_NOTHROW(choquet_norm(f, 1.3, full, ContentParams{1.5}));
    }
}

TEST_CASE("errors") {
    const DyadicGrid g(1);
    const DyadicMask full(g, true);
    const GridFunction bad(g, {1.0, std::numeric_limits<double>::quiet_NaN(), 0.0, 0.0});
    CHECK_THROWS_AS(choquet_integral(bad, full, ContentParams{1.0}), InputError);
    const GridFunction ok(g, {1.0, 2.0, 0.0, 0.0});
    CHECK_THROWS_AS(choquet_norm(ok, 0.0, full, ContentParams{1.0}), ParameterError);
    CHECK_THROWS_AS(choquet_integral(ok, DyadicMask(DyadicGrid(2)), ContentParams{1.0}), ParameterError);
}

TEST_CASE("Lebesgue integral equals the Choquet integral at delta = 2") {
    const DyadicGrid g(6);
    const DyadicMask full(g, true);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const GridFunction f = eval_preset(TrigPreset{seed, 4}, g, full);
        CHECK(choquet_integral(f, full, ContentParams{2.0}) ==
              doctest::Approx(lebesgue_integral(f, full)).epsilon(1e-12));
    }
}

TEST_CASE("Lebesgue integral against a power of the Choquet integral") {
    // int |f| <= (C/delta) (int |f|^(delta/2) dH^delta)^(2/delta); C measured.
    const DyadicGrid g(6);
    const DyadicMask full(g, true);
    double worst = 0.0;
    for (double delta : {0.5, 1.0, 1.5}) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const GridFunction f = eval_preset(TrigPreset{seed, 4}, g, full);
            const double rhs = std::pow(choquet_power_integral(f, delta / 2.0, full, ContentParams{delta}), 2.0 / delta);
            worst = std::max(worst, delta * lebesgue_integral(f, full) / rhs);
        }
    }
    MESSAGE("measured constant " << worst);
    CHECK(std::isfinite(worst));
    CHECK(worst > 0.0);
}

TEST_CASE("shifted power integral matches a direct evaluation") {
    Rng rng(23);
    const DyadicGrid g(5);
    DyadicMask dom(g);
    for (std::size_t k = 0; k < g.cell_count(); ++k) dom.set(k, rng.coin(0.7));
    const GridFunction u = eval_preset(TrigPreset{5, 4}, g, dom);
    for (double q : {0.7, 1.0, 2.5}) {
        ShiftedPowerIntegral f(u, dom, ContentParams{1.2}, q);
        for (int k = 0; k < 10; ++k) {
            const double b = rng.uniform(-1.5, 1.5);
            std::vector<double> shifted(u.values().begin(), u.values().end());
            for (std::size_t idx = 0; idx < shifted.size(); ++idx) shifted[idx] = dom.test(idx) ? shifted[idx] - b : 0.0;
            const double direct = choquet_power_integral(GridFunction(g, shifted), q, dom, ContentParams{1.2});
            CHECK(f(b) == doctest::Approx(direct).epsilon(1e-12));
        }
    }
}
