#include "hcontent/operators.hpp"

#include "hcontent/errors.hpp"
#include "hcontent/integral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

namespace hcontent {

void MaximalParams::validate() const {
    if (!(kappa >= 0.0 && kappa < 1.0)) {
        throw ParameterError("kappa must lie in [0, 1), got " + std::to_string(kappa));
    }
}

std::vector<double> maximal_radii(const DyadicGrid& grid) {
    std::vector<double> radii;
    for (int k = 0; k <= grid.level() + 1; ++k) radii.push_back(std::sqrt(2.0) * std::ldexp(1.0, k - grid.level() - 1));
    return radii;
}

bool offset_in_ball(long long di, long long dj, int radius_index) {
    return 2 * (di * di + dj * dj) < (1LL << (2 * radius_index));
}

namespace {

void require_compatible(const GridFunction& f, const DyadicMask& domain) {
    if (!(f.grid() == domain.grid())) throw ParameterError("function and domain live on different grids");
}

std::vector<double> masked_abs(const GridFunction& f, const DyadicMask& domain) {
    require_compatible(f, domain);
    std::vector<double> g(f.grid().cell_count(), 0.0);
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
        if (domain.test(idx)) g[idx] = std::abs(f.value(idx));
    }
    return g;
}

// Largest dx with offset (dx, dy) inside B(0, r_k), or -1 if none.
long long half_width(long long dy, int k) {
    const long long limit = 1LL << (2 * k); // 2(dx^2 + dy^2) < limit
    if (2 * dy * dy >= limit) return -1;
    auto dx = static_cast<long long>(std::sqrt(static_cast<double>(limit - 2 * dy * dy) / 2.0));
    while (dx >= 0 && !offset_in_ball(dx, dy, k)) --dx;
    while (offset_in_ball(dx + 1, dy, k)) ++dx;
    return dx;
}

} // namespace

GridFunction fractional_maximal(const GridFunction& f, const DyadicMask& domain, MaximalParams params) {
    params.validate();
    const DyadicGrid& grid = f.grid();
    const auto side = static_cast<long long>(grid.side());
    const double area = grid.cell_area();
    const auto radii = maximal_radii(grid);
    const auto g = masked_abs(f, domain);

    // Row prefix sums: prefix[j * (side+1) + i] = sum_{i' < i} g(i', j).
    std::vector<double> prefix(static_cast<std::size_t>(side * (side + 1)), 0.0);
    for (long long j = 0; j < side; ++j) {
        double run = 0.0;
        for (long long i = 0; i < side; ++i) {
            run += g[static_cast<std::size_t>(j * side + i)];
            prefix[static_cast<std::size_t>(j * (side + 1) + i + 1)] = run;
        }
    }

    // Smallest radius: the ball holds only the centered cell.
    std::vector<double> out(g.size());
    const double w0 = std::pow(radii[0], params.kappa - 2.0) * area;
    for (std::size_t idx = 0; idx < g.size(); ++idx) out[idx] = w0 * g[idx];

    for (int k = 1; k < static_cast<int>(radii.size()); ++k) {
        const double weight = std::pow(radii[static_cast<std::size_t>(k)], params.kappa - 2.0) * area;
        std::vector<long long> widths;
        long long reach = 0;
        while (half_width(reach + 1, k) >= 0) ++reach;
        for (long long dy = -reach; dy <= reach; ++dy) widths.push_back(half_width(dy, k));

        for (long long j = 0; j < side; ++j) {
            const long long dy_lo = std::max(-reach, -j);
            const long long dy_hi = std::min(reach, side - 1 - j);
            for (long long i = 0; i < side; ++i) {
                double sum = 0.0;
                for (long long dy = dy_lo; dy <= dy_hi; ++dy) {
                    const long long w = widths[static_cast<std::size_t>(dy + reach)];
                    const long long a = std::max(0LL, i - w);
                    const long long b = std::min(side, i + w + 1);
                    const std::size_t row = static_cast<std::size_t>((j + dy) * (side + 1));
                    sum += prefix[row + static_cast<std::size_t>(b)] - prefix[row + static_cast<std::size_t>(a)];
                }
                double& slot = out[static_cast<std::size_t>(j * side + i)];
                slot = std::max(slot, weight * sum);
            }
        }
    }
    return GridFunction(grid, std::move(out));
}

double self_cell_integral(double h) { return 4.0 * std::log(1.0 + std::sqrt(2.0)) * h; }

// --- Riesz potential ----------------------------------------------------------

namespace {

// FFTW's planner is not re-entrant; execution with the new-array interface is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(void* p) const noexcept { fftw_free(p); }
};
template <typename T>
using FftwArray = std::unique_ptr<T[], FftwFree>;

template <typename T>
FftwArray<T> fftw_array(std::size_t n) {
    auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * n));
    if (!p) throw std::bad_alloc();
    return FftwArray<T>(p);
}

class PlanPair {
public:
    PlanPair(int m, double* real, fftw_complex* spectrum) {
        std::lock_guard lock(planner_mutex());
        forward_ = fftw_plan_dft_r2c_2d(m, m, real, spectrum, FFTW_ESTIMATE);
        backward_ = fftw_plan_dft_c2r_2d(m, m, spectrum, real, FFTW_ESTIMATE);
    }
    ~PlanPair() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(forward_);
        fftw_destroy_plan(backward_);
    }
    PlanPair(const PlanPair&) = delete;
    PlanPair& operator=(const PlanPair&) = delete;

    void forward(double* in, fftw_complex* out) const { fftw_execute_dft_r2c(forward_, in, out); }
    void backward(fftw_complex* in, double* out) const { fftw_execute_dft_c2r(backward_, in, out); }

private:
    fftw_plan forward_{};
    fftw_plan backward_{};
};

} // namespace

GridFunction riesz_potential(const GridFunction& f, const DyadicMask& domain) {
    require_compatible(f, domain);
    const DyadicGrid& grid = f.grid();
    const std::size_t n = grid.side();
    const std::size_t m = 2 * n; // enough padding for offsets in (-n, n) without wrap-around
    const std::size_t spec = m * (m / 2 + 1);
    const double h = grid.cell_width();

    auto data = fftw_array<double>(m * m);
    auto kernel = fftw_array<double>(m * m);
    auto data_hat = fftw_array<fftw_complex>(spec);
    auto kernel_hat = fftw_array<fftw_complex>(spec);
    PlanPair plans(static_cast<int>(m), data.get(), data_hat.get());

    std::fill(data.get(), data.get() + m * m, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t idx = grid.index(i, j);
            if (domain.test(idx)) data[j * m + i] = f.value(idx);
        }
    }

    std::fill(kernel.get(), kernel.get() + m * m, 0.0);
    const auto sn = static_cast<long long>(n);
    for (long long dj = -(sn - 1); dj < sn; ++dj) {
        for (long long di = -(sn - 1); di < sn; ++di) {
            const std::size_t row = static_cast<std::size_t>((dj + static_cast<long long>(m)) % static_cast<long long>(m));
            const std::size_t col = static_cast<std::size_t>((di + static_cast<long long>(m)) % static_cast<long long>(m));
            kernel[row * m + col] = (di == 0 && dj == 0)
                                        ? self_cell_integral(h)
                                        : h / std::sqrt(static_cast<double>(di * di + dj * dj));
        }
    }

    plans.forward(data.get(), data_hat.get());
    plans.forward(kernel.get(), kernel_hat.get());
    for (std::size_t k = 0; k < spec; ++k) {
        const std::complex<double> a(data_hat[k][0], data_hat[k][1]);
        const std::complex<double> b(kernel_hat[k][0], kernel_hat[k][1]);
        const std::complex<double> c = a * b;
        data_hat[k][0] = c.real();
        data_hat[k][1] = c.imag();
    }
    plans.backward(data_hat.get(), data.get());

    const double norm = 1.0 / static_cast<double>(m * m);
    std::vector<double> out(grid.cell_count());
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) out[grid.index(i, j)] = data[j * m + i] * norm;
    }
    return GridFunction(grid, std::move(out));
}

// --- Hedberg split --------------------------------------------------------------

double hedberg_inside_constant(double kappa) {
    MaximalParams{kappa}.validate();
    return std::exp2(kappa + 1.0) / (1.0 - std::exp2(kappa - 1.0));
}

double inside_ball_potential(const GridFunction& f, const DyadicMask& domain, std::size_t cell, int radius_index) {
    require_compatible(f, domain);
    const DyadicGrid& grid = f.grid();
    if (radius_index < 0 || radius_index > grid.level() + 1) throw ParameterError("radius index out of range");
    const auto side = static_cast<long long>(grid.side());
    const auto ci = static_cast<long long>(grid.col(cell));
    const auto cj = static_cast<long long>(grid.row(cell));
    const double h = grid.cell_width();

    double sum = domain.test(cell) ? std::abs(f.value(cell)) * self_cell_integral(h) : 0.0;
    for (long long j = 0; j < side; ++j) {
        for (long long i = 0; i < side; ++i) {
            const long long di = i - ci;
            const long long dj = j - cj;
            if ((di == 0 && dj == 0) || !offset_in_ball(di, dj, radius_index)) continue;
            const auto idx = static_cast<std::size_t>(j * side + i);
            if (!domain.test(idx)) continue;
            sum += std::abs(f.value(idx)) * h / std::sqrt(static_cast<double>(di * di + dj * dj));
        }
    }
    return sum;
}

double radial_tail_integral(double r, double s) {
    if (!(r > 0.0)) throw ParameterError("tail radius must be positive");
    if (!(s > 2.0)) throw ParameterError("tail exponent s must exceed 2, got " + std::to_string(s));
    return 2.0 * std::numbers::pi * std::pow(r, 2.0 - s) / (s - 2.0);
}

TailDenominators tail_denominators(int n, double p, double delta) {
    const double np = n * p;
    if (!(np > delta)) throw ParameterError("need n p > delta");
    const double s = np * (n - 1) / (np - delta);
    return {s, s - n, (n - 1) * s - n};
}

namespace {

void validate_hedberg(double p, double delta, double kappa) {
    if (!(delta > 0.0 && delta <= 2.0)) throw ParameterError("delta must lie in (0, 2]");
    MaximalParams{kappa}.validate();
    if (!(p > delta / 2.0 && p < delta)) throw ParameterError("p must lie in (delta/2, delta)");
}

} // namespace

HedbergReport hedberg_bound(const GridFunction& f, const DyadicMask& domain, double p, double delta, double kappa) {
    validate_hedberg(p, delta, kappa);
    require_compatible(f, domain);
    const DyadicGrid& grid = f.grid();

    HedbergReport report;
    report.inside_constant = hedberg_inside_constant(kappa);
    report.norm = choquet_norm(f, p, domain, ContentParams{delta});

    const auto cells = domain.occupied();
    if (report.norm == 0.0) {
        for (std::size_t idx : cells) report.cells.push_back({grid.col(idx), grid.row(idx), 0.0, 0.0, 0.0, 0.0});
        return report;
    }

    // Outside the ball: Hoelder with exponents 2p/delta and its conjugate, the
    // first factor measured against the Choquet norm, the second the radial tail.
    const double a = 2.0 * p / delta;
    double lp = 0.0;
    for (std::size_t idx : cells) lp += std::pow(std::abs(f.value(idx)), a);
    lp = std::pow(lp * grid.cell_area(), 1.0 / a);
    report.holder_constant = lp / report.norm;
    const double s = tail_denominators(2, p, delta).exponent;
    report.outside_constant = report.holder_constant * std::pow(radial_tail_integral(1.0, s), (2.0 * p - delta) / (2.0 * p));
    const double constant = report.inside_constant + report.outside_constant;

    const GridFunction potential = riesz_potential(f.abs(), domain);
    const GridFunction maximal = fractional_maximal(f, domain, MaximalParams{kappa});
    const double denom = delta - kappa * p;
    const double m_exp = (delta - p) / denom;
    const double norm_factor = std::pow(report.norm, p * (1.0 - kappa) / denom);

    for (std::size_t idx : cells) {
        HedbergCell c{grid.col(idx), grid.row(idx), potential.value(idx), 0.0, 0.0, 0.0};
        const double m = maximal.value(idx);
        c.rhs = constant * std::pow(m, m_exp) * norm_factor;
        c.r_star = m > 0.0 ? std::pow(m / report.norm, -p / denom) : std::numeric_limits<double>::infinity();
        if (c.lhs > 0.0) c.ratio = c.rhs > 0.0 ? c.lhs / c.rhs : std::numeric_limits<double>::infinity();
        report.max_ratio = std::max(report.max_ratio, c.ratio);
        report.cells.push_back(c);
    }
    return report;
}

} // namespace hcontent
