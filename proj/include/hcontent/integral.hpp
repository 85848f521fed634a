#pragma once

// Choquet integrals against dyadic Hausdorff content:
//
//     int f dH^delta = int_0^inf H^delta({|f| > t}) dt
//
// Grid functions are piecewise constant, so the distribution function is a
// step function with jumps at the sampled values and the integral is a
// finite sum. No quadrature is involved beyond the content evaluations.

#include "hcontent/content.hpp"
#include "hcontent/grid.hpp"

#include <span>
#include <vector>

namespace hcontent {

struct Breakpoint {
    double t = 0.0;
    double h = 0.0;
};

/// Right-continuous step function t -> H({|f| > t}): the value on
/// [t_k, t_{k+1}) is h_k, and the last breakpoint carries h = 0.
class StepFunction {
public:
    explicit StepFunction(std::vector<Breakpoint> breakpoints);

    std::span<const Breakpoint> breakpoints() const noexcept { return points_; }
    /// int_0^inf h(t) dt
    double integral() const;
    /// int_0^inf p t^(p-1) h(t) dt, per interval as t_{k+1}^p - t_k^p.
    double power_integral(double p) const;

private:
    std::vector<Breakpoint> points_;
};

StepFunction distribution_function(const GridFunction& f, const DyadicMask& domain, ContentParams params);

double choquet_integral(const GridFunction& f, const DyadicMask& domain, ContentParams params);

/// int |f|^p dH^delta, evaluated directly on |f|^p.
double choquet_power_integral(const GridFunction& f, double p, const DyadicMask& domain, ContentParams params);

/// (int |f|^p dH^delta)^(1/p). The inner integral is also evaluated from the
/// distribution of |f| via the change of variables; a relative disagreement
/// above 1e-10 throws ViolationError.
double choquet_norm(const GridFunction& f, double p, const DyadicMask& domain, ContentParams params);

/// Midpoint-rule Lebesgue integral of |f| over the domain cells.
double lebesgue_integral(const GridFunction& f, const DyadicMask& domain);

/// b -> int |u - b|^q dH^delta over a fixed domain, reusing one sort of u
/// and one content workspace across evaluations. Not thread-safe; use one
/// instance per thread.
class ShiftedPowerIntegral {
public:
    ShiftedPowerIntegral(const GridFunction& u, const DyadicMask& domain, ContentParams params, double q);

    double operator()(double b);
    double min_value() const noexcept { return sorted_values_.empty() ? 0.0 : sorted_values_.front(); }
    double max_value() const noexcept { return sorted_values_.empty() ? 0.0 : sorted_values_.back(); }
    bool empty() const noexcept { return sorted_values_.empty(); }

private:
    double q_;
    std::vector<std::size_t> sorted_cells_; // ascending in u
    std::vector<double> sorted_values_;
    ContentAccumulator acc_;
};

} // namespace hcontent
