#pragma once

// Ratio reports for Poincare-type inequalities with Choquet integrals, the
// maximal-operator sweeps and the scan across the critical exponent.

#include "hcontent/content.hpp"
#include "hcontent/domains.hpp"
#include "hcontent/grid.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace hcontent {

struct InequalityParams {
    double p = 1.5;
    double delta = 2.0;
    double kappa = 0.0;
    std::optional<double> q; // defaults to critical_exponent()

    /// p (delta - kappa p) / (delta - p).
    double critical_exponent() const;
    double exponent() const { return q ? *q : critical_exponent(); }

    /// delta in (0, 2], p > delta/2.
    void validate_poincare() const;
    /// Additionally kappa in [0, 1), p in (delta/2, delta), kappa p < delta.
    void validate_sobolev() const;
};

struct RatioReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    std::optional<double> b_star;
    int level = 0;
    InequalityParams params;
    std::size_t preset = 0;
    /// Left side with the reference-ball average u_B in place of the infimum.
    std::optional<double> lhs_ball_average;
};

/// lhs / rhs, with 0 when lhs = 0. Throws ViolationError for lhs > 0 = rhs.
double report_ratio(double lhs, double rhs);

struct ShiftResult {
    double b_star = 0.0;
    double value = 0.0;
};

/// Minimizes b -> int_domain |u - b|^q dH^delta over [min u, max u]: a
/// 256-point scan, then 40 golden-section steps on the best bracket.
ShiftResult best_shift(const GridFunction& u, double q, const DyadicMask& domain, ContentParams params);
inline ShiftResult best_shift(const GridFunction& u, double q, const Domain& domain, ContentParams params) {
    return best_shift(u, q, domain.mask, params);
}

/// inf_b int |u-b|^p dH^delta  vs  int |grad u|^p dH^delta.
RatioReport poincare_report(const GridFunction& u, const Domain& domain, const InequalityParams& params);

/// (inf_b int |u-b|^q dH^(delta - kappa p))^(1/q)  vs  (int |grad u|^p dH^delta)^(1/p).
RatioReport sobolev_report(const GridFunction& u, const Domain& domain, const InequalityParams& params);

enum class ZeroBoundaryVariant { a, b };

/// Throws InputError listing the domain cells where u != 0 although a
/// 4-neighbour lies outside the domain or off the grid.
void require_compact_support(const GridFunction& u, const DyadicMask& domain);

/// (a): int |u|^p dH^delta  vs  diam^p int |grad u|^p dH^delta.
/// (b): the Sobolev pair with b = 0.
RatioReport zero_boundary_report(const GridFunction& u, const Domain& domain, const InequalityParams& params,
                                 ZeroBoundaryVariant variant);

/// int |u| dH^1  vs  Lebesgue int |grad u|.
RatioReport adams_report(const GridFunction& u, const Domain& domain);

/// Per level and family member on the full unit square:
/// int (M_kappa f)^p dH^(delta - kappa p)  /  int |f|^p dH^delta.
/// Rows are sorted by (level, preset).
std::vector<RatioReport> maximal_sweep(const std::vector<FunctionPreset>& family, const InequalityParams& params,
                                       int level_lo, int level_hi);

/// Largest ratio per level of a sorted sweep table, in level order.
std::vector<RatioReport> max_per_level(const std::vector<RatioReport>& rows);

/// |x - center|^mu on punctured_ball(radius), one row per level with
/// lhs = inf_b int |v-b|^q dH^(delta - kappa p) and rhs = (int |grad v|^p dH^delta)^(1/p).
/// mu must lie in (1 - delta/p, 0); when q exceeds the critical exponent
/// mu must also satisfy mu <= -(delta - kappa p)/q.
std::vector<RatioReport> sharpness_scan(double q, double mu, const InequalityParams& params, int level_lo,
                                        int level_hi, double radius = 0.45);

} // namespace hcontent
