#pragma once

// Discrete fractional maximal function, Riesz potential I_1 and the
// Hedberg-type split that bounds one by the other.
//
// Functions are extended by zero outside their domain. Both operators are
// evaluated at every cell center of the grid, inside the domain or not.

#include "hcontent/grid.hpp"

#include <cstddef>
#include <vector>

namespace hcontent {

struct MaximalParams {
    double kappa = 0.0;

    /// Throws ParameterError unless 0 <= kappa < 1.
    void validate() const;
};

/// Dyadic radius lattice r_k = sqrt(2) 2^(-L-1) 2^k, k = 0 .. L+1, running
/// from the circumscribed radius of one cell to sqrt(2). A cell at integer
/// offset d from x lies in B(x, r_k) iff 2|d|^2 < 4^k.
std::vector<double> maximal_radii(const DyadicGrid& grid);
bool offset_in_ball(long long di, long long dj, int radius_index);

/// M_kappa f(x) = max_k r_k^(kappa-2) * sum_{y in B(x, r_k)} |f(y)| 4^-L.
GridFunction fractional_maximal(const GridFunction& f, const DyadicMask& domain, MaximalParams params);

/// Exact integral of 1/|z| over one cell of width h centered at 0.
double self_cell_integral(double h);

/// I_1 f(x) = sum_{y != x} f(y) 4^-L / |x - y| + f(x) * self_cell_integral(h),
/// evaluated as a zero-padded FFT convolution.
GridFunction riesz_potential(const GridFunction& f, const DyadicMask& domain);

/// 2^(kappa+1) / (1 - 2^(kappa-1)): the geometric-series constant of the
/// inside-ball estimate for n = 2.
double hedberg_inside_constant(double kappa);

/// The part of I_1|f|(x) coming from B(x, r_k), self cell included.
double inside_ball_potential(const GridFunction& f, const DyadicMask& domain, std::size_t cell, int radius_index);

/// int_{|z| > r} |z|^-s dz in the plane, 2 pi r^(2-s) / (s-2); needs s > 2.
double radial_tail_integral(double r, double s);

/// Tail exponent s = n p (n-1) / (n p - delta) used by the Hedberg split, and
/// the two candidate denominators of the closed form: the polar value s - n
/// and the alternative (n-1) s - n. They coincide only for n = 2.
struct TailDenominators {
    double exponent;
    double polar;
    double alternative;
};
TailDenominators tail_denominators(int n, double p, double delta);

struct HedbergCell {
    std::size_t i = 0;
    std::size_t j = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    double r_star = 0.0;
};

struct HedbergReport {
    std::vector<HedbergCell> cells; // domain cells in row-major order
    double max_ratio = 0.0;
    double norm = 0.0;            // (int |f|^p dH^delta)^(1/p)
    double inside_constant = 0.0;
    double outside_constant = 0.0; // measured Hoelder factor times the tail factor
    double holder_constant = 0.0;  // ||f||_{L^{2p/delta}} / norm
};

/// Pointwise comparison I_1|f|(x) <= C M_kappa f(x)^((delta-p)/(delta-kappa p))
/// (int |f|^p dH^delta)^((1-kappa)/(delta-kappa p)) on every domain cell.
/// Requires delta in (0,2], kappa in [0,1), p in (delta/2, delta).
HedbergReport hedberg_bound(const GridFunction& f, const DyadicMask& domain, double p, double delta, double kappa);

} // namespace hcontent
