#include "hcontent/inequalities.hpp"

#include "hcontent/errors.hpp"
#include "hcontent/integral.hpp"
#include "hcontent/operators.hpp"
#include "hcontent/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hcontent {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

void require_delta(double delta) {
    if (!(delta > 0.0 && delta <= 2.0)) throw ParameterError("delta must lie in (0, 2], got " + num(delta));
}

void require_function(const GridFunction& u, const DyadicMask& domain, bool need_gradient) {
    if (!(u.grid() == domain.grid())) throw ParameterError("function and domain live on different grids");
    if (need_gradient && !u.has_gradmag()) throw InputError("function carries no gradient magnitude");
}

} // namespace

double InequalityParams::critical_exponent() const {
    return p * (delta - kappa * p) / (delta - p);
}

void InequalityParams::validate_poincare() const {
    require_delta(delta);
    if (!(p > delta / 2.0)) throw ParameterError("p must exceed delta/2");
    if (q && !(*q > 0.0)) throw ParameterError("q must be positive");
}

void InequalityParams::validate_sobolev() const {
    require_delta(delta);
    if (!(kappa >= 0.0 && kappa < 1.0)) throw ParameterError("kappa must lie in [0, 1)");
    if (!(p > delta / 2.0 && p < delta)) throw ParameterError("p must lie in (delta/2, delta)");
    if (!(kappa * p < delta)) throw ParameterError("kappa * p must be below delta");
    if (q && !(*q > 0.0)) throw ParameterError("q must be positive");
}

double report_ratio(double lhs, double rhs) {
    if (lhs == 0.0) return 0.0;
    if (!(rhs > 0.0)) throw ViolationError("right-hand side vanishes while the left-hand side is " + num(lhs));
    return lhs / rhs;
}

ShiftResult best_shift(const GridFunction& u, double q, const DyadicMask& domain, ContentParams params) {
    if (!(q > 0.0)) throw ParameterError("q must be positive");
    params.validate();
    ShiftedPowerIntegral f(u, domain, params, q);
    const double lo = f.min_value();
    const double hi = f.max_value();
    if (f.empty() || lo == hi) return {lo, 0.0};

    constexpr int kScan = 256;
    std::vector<double> bs(kScan), vals(kScan);
    std::size_t best = 0;
    for (int k = 0; k < kScan; ++k) {
        bs[k] = k == kScan - 1 ? hi : lo + (hi - lo) * k / (kScan - 1);
        vals[k] = f(bs[k]);
        if (vals[k] < vals[best]) best = k;
    }
    ShiftResult result{bs[best], vals[best]};

    double a = bs[best == 0 ? 0 : best - 1];
    double b = bs[best == kScan - 1 ? kScan - 1 : best + 1];
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int step = 0; step < 40; ++step) {
        if (fc < result.value) result = {c, fc};
        if (fd < result.value) result = {d, fd};
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    if (fc < result.value) result = {c, fc};
    if (fd < result.value) result = {d, fd};
    return result;
}

RatioReport poincare_report(const GridFunction& u, const Domain& domain, const InequalityParams& params) {
    params.validate_poincare();
    require_function(u, domain.mask, true);
    const ContentParams content{params.delta};
    const auto shift = best_shift(u, params.p, domain.mask, content);
    const double ub = reference_average(u, domain);

    RatioReport r;
    r.params = params;
    r.params.q = params.p;
    r.level = u.grid().level();
    r.lhs = shift.value;
    r.b_star = shift.b_star;
    r.lhs_ball_average = choquet_power_integral(u.shifted(-ub), params.p, domain.mask, content);
    r.rhs = choquet_power_integral(u.gradient_magnitude(), params.p, domain.mask, content);
    r.ratio = report_ratio(r.lhs, r.rhs);
    return r;
}

RatioReport sobolev_report(const GridFunction& u, const Domain& domain, const InequalityParams& params) {
    params.validate_sobolev();
    require_function(u, domain.mask, true);
    const double q = params.exponent();
    const ContentParams lower{params.delta - params.kappa * params.p};
    const auto shift = best_shift(u, q, domain.mask, lower);
    const double ub = reference_average(u, domain);

    RatioReport r;
    r.params = params;
    r.params.q = q;
    r.level = u.grid().level();
    r.lhs = std::pow(shift.value, 1.0 / q);
    r.b_star = shift.b_star;
    r.lhs_ball_average = choquet_norm(u.shifted(-ub), q, domain.mask, lower);
    r.rhs = choquet_norm(u.gradient_magnitude(), params.p, domain.mask, ContentParams{params.delta});
    r.ratio = report_ratio(r.lhs, r.rhs);
    return r;
}

void require_compact_support(const GridFunction& u, const DyadicMask& domain) {
    require_function(u, domain, false);
    const DyadicGrid& grid = domain.grid();
    const std::size_t n = grid.side();
    std::vector<std::size_t> bad;
    for (std::size_t idx : domain.occupied()) {
        if (u.value(idx) == 0.0) continue;
        const std::size_t i = grid.col(idx);
        const std::size_t j = grid.row(idx);
        const bool edge = i == 0 || j == 0 || i + 1 == n || j + 1 == n || !domain.test(i - 1, j) ||
                          !domain.test(i + 1, j) || !domain.test(i, j - 1) || !domain.test(i, j + 1);
        if (edge) bad.push_back(idx);
    }
    if (bad.empty()) return;
    std::string msg = "function does not vanish next to the boundary at " + std::to_string(bad.size()) + " cell(s):";
    for (std::size_t k = 0; k < std::min<std::size_t>(bad.size(), 8); ++k) {
        msg += " (" + std::to_string(grid.col(bad[k])) + "," + std::to_string(grid.row(bad[k])) + ")";
    }
    if (bad.size() > 8) msg += " ...";
    throw InputError(msg);
}

RatioReport zero_boundary_report(const GridFunction& u, const Domain& domain, const InequalityParams& params,
                                 ZeroBoundaryVariant variant) {
    if (variant == ZeroBoundaryVariant::a) params.validate_poincare();
    else params.validate_sobolev();
    require_function(u, domain.mask, true);
    require_compact_support(u, domain.mask);

    RatioReport r;
    r.params = params;
    r.level = u.grid().level();
    r.b_star = 0.0;
    const ContentParams content{params.delta};
    if (variant == ZeroBoundaryVariant::a) {
        r.params.q = params.p;
        r.lhs = choquet_power_integral(u, params.p, domain.mask, content);
        r.rhs = std::pow(mask_diameter(domain.mask), params.p) *
                choquet_power_integral(u.gradient_magnitude(), params.p, domain.mask, content);
    } else {
        const double q = params.exponent();
        r.params.q = q;
        r.lhs = choquet_norm(u, q, domain.mask, ContentParams{params.delta - params.kappa * params.p});
        r.rhs = choquet_norm(u.gradient_magnitude(), params.p, domain.mask, content);
    }
    r.ratio = report_ratio(r.lhs, r.rhs);
    return r;
}

RatioReport adams_report(const GridFunction& u, const Domain& domain) {
    require_function(u, domain.mask, true);
    require_compact_support(u, domain.mask);
    RatioReport r;
    r.params = InequalityParams{1.0, 2.0, 0.0, 1.0};
    r.level = u.grid().level();
    r.lhs = choquet_integral(u, domain.mask, ContentParams{1.0});
    r.rhs = lebesgue_integral(u.gradient_magnitude(), domain.mask);
    r.ratio = report_ratio(r.lhs, r.rhs);
    return r;
}

std::vector<RatioReport> maximal_sweep(const std::vector<FunctionPreset>& family, const InequalityParams& params,
                                       int level_lo, int level_hi) {
    require_delta(params.delta);
    MaximalParams{params.kappa}.validate();
    if (!(params.p > params.delta / 2.0)) throw ParameterError("p must exceed delta/2");
    if (params.kappa > 0.0 && !(params.p < params.delta / params.kappa)) {
        throw ParameterError("p must lie in (delta/2, delta/kappa)");
    }
    if (family.empty()) throw ParameterError("function family is empty");
    if (level_lo > level_hi) throw ParameterError("empty level range");

    const std::size_t nlev = static_cast<std::size_t>(level_hi - level_lo + 1);
    std::vector<RatioReport> rows(nlev * family.size());
    parallel_for(rows.size(), [&](std::size_t task) {
        const int level = level_lo + static_cast<int>(task / family.size());
        const std::size_t preset = task % family.size();
        const DyadicGrid grid(level);
        const DyadicMask full(grid, true);
        const GridFunction f = eval_preset(family[preset], grid, full);
        const GridFunction m = fractional_maximal(f, full, MaximalParams{params.kappa});

        RatioReport& r = rows[task];
        r.params = params;
        r.params.q = params.p;
        r.level = level;
        r.preset = preset;
        r.lhs = choquet_power_integral(m, params.p, full, ContentParams{params.delta - params.kappa * params.p});
        r.rhs = choquet_power_integral(f, params.p, full, ContentParams{params.delta});
        r.ratio = report_ratio(r.lhs, r.rhs);
    });
    return rows;
}

std::vector<RatioReport> max_per_level(const std::vector<RatioReport>& rows) {
    std::vector<RatioReport> out;
    for (const auto& r : rows) {
        if (out.empty() || out.back().level != r.level) out.push_back(r);
        else if (r.ratio > out.back().ratio) out.back() = r;
    }
    return out;
}

std::vector<RatioReport> sharpness_scan(double q, double mu, const InequalityParams& params, int level_lo,
                                        int level_hi, double radius) {
    InequalityParams base = params;
    base.q = q;
    base.validate_sobolev();
    const double lower_dim = params.delta - params.kappa * params.p;
    if (!(mu > 1.0 - params.delta / params.p && mu < 0.0)) {
        throw ParameterError("mu must lie in (1 - delta/p, 0) = (" + num(1.0 - params.delta / params.p) + ", 0)");
    }
    if (q > params.critical_exponent() && !(mu <= -lower_dim / q)) {
        throw ParameterError("above the critical exponent mu must not exceed -(delta - kappa p)/q = " +
                             num(-lower_dim / q));
    }
    if (level_lo > level_hi) throw ParameterError("empty level range");

    std::vector<RatioReport> rows(static_cast<std::size_t>(level_hi - level_lo + 1));
    parallel_for(rows.size(), [&](std::size_t k) {
        const int level = level_lo + static_cast<int>(k);
        const DyadicGrid grid(level);
        const Domain domain = make_domain(DomainSpec::punctured_ball(radius), grid);
        const GridFunction v = eval_preset(PowerPreset{mu, domain.shape_center}, grid, domain.mask);
        const auto shift = best_shift(v, q, domain.mask, ContentParams{lower_dim});

        RatioReport& r = rows[k];
        r.params = base;
        r.level = level;
        r.lhs = shift.value;
        r.b_star = shift.b_star;
        r.rhs = choquet_norm(v.gradient_magnitude(), params.p, domain.mask, ContentParams{params.delta});
        r.ratio = report_ratio(r.lhs, r.rhs);
    });
    return rows;
}

} // namespace hcontent
