#include "hcontent/grid.hpp"

#include "hcontent/errors.hpp"
#include "hcontent/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace hcontent {

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

// --- DyadicGrid ---------------------------------------------------------------

DyadicGrid::DyadicGrid(int level) : level_(level) {
    if (level < kMinLevel || level > kMaxLevel) {
        throw ParameterError("grid level must lie in [1, 12], got " + std::to_string(level));
    }
}

Point DyadicGrid::center(std::size_t i, std::size_t j) const noexcept {
    const double h = cell_width();
    return {(static_cast<double>(i) + 0.5) * h, (static_cast<double>(j) + 0.5) * h};
}

// --- DyadicMask ---------------------------------------------------------------

DyadicMask::DyadicMask(const DyadicGrid& grid, bool filled)
    : grid_(grid), bits_(grid.cell_count(), filled ? 1 : 0) {}

std::size_t DyadicMask::count() const noexcept {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::vector<std::size_t> DyadicMask::occupied() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < bits_.size(); ++k) {
        if (bits_[k]) out.push_back(k);
    }
    return out;
}

namespace {
void require_same_grid(const DyadicMask& a, const DyadicMask& b) {
    if (!(a.grid() == b.grid())) throw ParameterError("masks live on different grids");
}
} // namespace

bool DyadicMask::is_subset_of(const DyadicMask& other) const {
    require_same_grid(*this, other);
    for (std::size_t k = 0; k < bits_.size(); ++k) {
        if (bits_[k] && !other.bits_[k]) return false;
    }
    return true;
}

DyadicMask DyadicMask::united(const DyadicMask& other) const {
    require_same_grid(*this, other);
    DyadicMask out(grid_);
    for (std::size_t k = 0; k < bits_.size(); ++k) out.bits_[k] = bits_[k] | other.bits_[k];
    return out;
}

DyadicMask DyadicMask::intersected(const DyadicMask& other) const {
    require_same_grid(*this, other);
    DyadicMask out(grid_);
    for (std::size_t k = 0; k < bits_.size(); ++k) out.bits_[k] = bits_[k] & other.bits_[k];
    return out;
}

DyadicMask DyadicMask::minus(const DyadicMask& other) const {
    require_same_grid(*this, other);
    DyadicMask out(grid_);
    for (std::size_t k = 0; k < bits_.size(); ++k) out.bits_[k] = bits_[k] & (other.bits_[k] ^ 1);
    return out;
}

// --- GridFunction -------------------------------------------------------------

GridFunction::GridFunction(const DyadicGrid& grid, std::vector<double> values,
                           std::optional<std::vector<double>> gradmag)
    : grid_(grid), values_(std::move(values)), gradmag_(std::move(gradmag)) {
    if (values_.size() != grid_.cell_count()) {
        throw ParameterError("grid function size does not match its grid");
    }
    if (gradmag_) {
        if (gradmag_->size() != grid_.cell_count()) {
            throw ParameterError("gradient channel size does not match its grid");
        }
        for (double g : *gradmag_) {
            if (!(g >= 0.0)) throw InputError("gradient magnitude must be non-negative");
        }
    }
}

std::span<const double> GridFunction::gradmag() const {
    if (!gradmag_) throw InputError("grid function carries no gradient channel");
    return *gradmag_;
}

GridFunction GridFunction::scaled(double a) const {
    std::vector<double> v(values_);
    for (double& x : v) x *= a;
    std::optional<std::vector<double>> g;
    if (gradmag_) {
        g = *gradmag_;
        for (double& x : *g) x *= std::abs(a);
    }
    return GridFunction(grid_, std::move(v), std::move(g));
}

GridFunction GridFunction::shifted(double c) const {
    std::vector<double> v(values_);
    for (double& x : v) x += c;
    return GridFunction(grid_, std::move(v), gradmag_);
}

GridFunction GridFunction::abs() const {
    std::vector<double> v(values_);
    for (double& x : v) x = std::abs(x);
    return GridFunction(grid_, std::move(v));
}

GridFunction GridFunction::gradient_magnitude() const {
    auto g = gradmag();
    return GridFunction(grid_, std::vector<double>(g.begin(), g.end()));
}

// --- shapes -------------------------------------------------------------------

namespace {

bool polygon_contains(const Polygon& poly, Point p) {
    // even-odd crossing rule
    bool inside = false;
    const auto& v = poly.vertices;
    for (std::size_t a = 0, b = v.size() - 1; a < v.size(); b = a++) {
        if ((v[a].y > p.y) != (v[b].y > p.y)) {
            const double xcross = (v[b].x - v[a].x) * (p.y - v[a].y) / (v[b].y - v[a].y) + v[a].x;
            if (p.x < xcross) inside = !inside;
        }
    }
    return inside;
}

bool in_unit_square(Point p) { return p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0; }

} // namespace

bool Shape::contains(Point p) const {
    return std::visit(
        [&](const auto& g) -> bool {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, Ball>) {
                const double dx = p.x - g.center.x;
                const double dy = p.y - g.center.y;
                return dx * dx + dy * dy < g.radius * g.radius;
            } else if constexpr (std::is_same_v<T, Polygon>) {
                return polygon_contains(g, p);
            } else {
                return g.keep->contains(p) && !g.remove->contains(p);
            }
        },
        geometry);
}

void Shape::validate() const {
    std::visit(
        [](const auto& g) {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, Ball>) {
                if (!(g.radius >= 0.0) || !std::isfinite(g.radius)) {
                    throw ParameterError("ball radius must be finite and non-negative");
                }
                if (g.center.x - g.radius < 0.0 || g.center.x + g.radius > 1.0 ||
                    g.center.y - g.radius < 0.0 || g.center.y + g.radius > 1.0) {
                    throw ParameterError("ball escapes the unit square");
                }
            } else if constexpr (std::is_same_v<T, Polygon>) {
                if (g.vertices.size() < 3) throw ParameterError("polygon needs at least 3 vertices");
                for (const Point& v : g.vertices) {
                    if (!in_unit_square(v)) throw ParameterError("polygon escapes the unit square");
                }
            } else {
                if (!g.keep || !g.remove) throw ParameterError("difference needs two operands");
                g.keep->validate();
                g.remove->validate();
            }
        },
        geometry);
}

Shape make_difference(Shape keep, Shape remove) {
    return Shape{Difference{std::make_shared<const Shape>(std::move(keep)),
                            std::make_shared<const Shape>(std::move(remove))}};
}

DyadicMask rasterize_shape(const DyadicGrid& grid, const Shape& shape) {
    shape.validate();
    DyadicMask mask(grid);
    for (std::size_t idx = 0; idx < grid.cell_count(); ++idx) {
        if (shape.contains(grid.center(idx))) mask.set(idx);
    }
    return mask;
}

double mask_diameter(const DyadicMask& mask) {
    const auto& grid = mask.grid();
    std::vector<Point> pts;
    for (std::size_t idx : mask.occupied()) pts.push_back(grid.center(idx));
    if (pts.size() < 2) return 0.0;

    // Andrew's monotone chain, then all hull pairs.
    std::sort(pts.begin(), pts.end(), [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    auto cross = [](Point o, Point a, Point b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); };
    std::vector<Point> hull(2 * pts.size());
    std::size_t k = 0;
    for (const Point& p : pts) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k > 1 ? k - 1 : k);

    double best = 0.0;
    for (std::size_t a = 0; a < hull.size(); ++a) {
        for (std::size_t b = a + 1; b < hull.size(); ++b) best = std::max(best, distance(hull[a], hull[b]));
    }
    return best;
}

// --- presets ------------------------------------------------------------------

namespace {

struct PlaneWave {
    double kx, ky, amplitude, phase;
};

std::vector<PlaneWave> trig_modes(const TrigPreset& preset) {
    if (preset.modes < 1) throw ParameterError("trig preset needs at least one mode");
    Rng rng(preset.seed);
    std::vector<PlaneWave> waves;
    for (int m = 0; m < preset.modes; ++m) {
        int kx = 0;
        int ky = 0;
        while (kx == 0 && ky == 0) {
            kx = static_cast<int>(rng.below(7)) - 3;
            ky = static_cast<int>(rng.below(7)) - 3;
        }
        const double amp = (2.0 * rng.uniform() - 1.0) / (1.0 + m);
        const double phase = 2.0 * std::numbers::pi * rng.uniform();
        waves.push_back({static_cast<double>(kx), static_cast<double>(ky), amp, phase});
    }
    return waves;
}

} // namespace

GridFunction eval_preset(const FunctionPreset& preset, const DyadicGrid& grid, const DyadicMask& domain) {
    if (!(domain.grid() == grid)) throw ParameterError("domain mask lives on a different grid");
    const std::size_t n = grid.cell_count();
    std::vector<double> values(n, 0.0);
    std::vector<double> grad(n, 0.0);

    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, PowerPreset>) {
                if (p.mu == 0.0 || !std::isfinite(p.mu)) throw ParameterError("power preset requires mu != 0");
                for (std::size_t idx = 0; idx < n; ++idx) {
                    if (!domain.test(idx)) continue;
                    const double r = distance(grid.center(idx), p.origin);
                    if (r < 1e-12) {
                        throw SingularityError("power preset origin coincides with a domain cell center");
                    }
                    values[idx] = std::pow(r, p.mu);
                    grad[idx] = std::abs(p.mu) * std::pow(r, p.mu - 1.0);
                }
            } else if constexpr (std::is_same_v<T, BumpPreset>) {
                if (!(p.radius > 0.0)) throw ParameterError("bump radius must be positive");
                const double r2 = p.radius * p.radius;
                for (std::size_t idx = 0; idx < n; ++idx) {
                    if (!domain.test(idx)) continue;
                    const Point c = grid.center(idx);
                    const double dx = c.x - p.center.x;
                    const double dy = c.y - p.center.y;
                    const double s = (dx * dx + dy * dy) / r2;
                    if (s >= 1.0) continue;
                    const double w = 1.0 - s;
                    values[idx] = w * w * w;
                    grad[idx] = 6.0 * w * w * std::sqrt(dx * dx + dy * dy) / r2;
                }
            } else if constexpr (std::is_same_v<T, LinearPreset>) {
                const double g = std::hypot(p.a, p.b);
                for (std::size_t idx = 0; idx < n; ++idx) {
                    if (!domain.test(idx)) continue;
                    const Point c = grid.center(idx);
                    values[idx] = p.a * c.x + p.b * c.y + p.c;
                    grad[idx] = g;
                }
            } else {
                const auto waves = trig_modes(p);
                const double two_pi = 2.0 * std::numbers::pi;
                for (std::size_t idx = 0; idx < n; ++idx) {
                    if (!domain.test(idx)) continue;
                    const Point c = grid.center(idx);
                    double u = 0.0, gx = 0.0, gy = 0.0;
                    for (const auto& w : waves) {
                        const double arg = two_pi * (w.kx * c.x + w.ky * c.y) + w.phase;
                        u += w.amplitude * std::sin(arg);
                        const double d = w.amplitude * std::cos(arg) * two_pi;
                        gx += d * w.kx;
                        gy += d * w.ky;
                    }
                    values[idx] = u;
                    grad[idx] = std::hypot(gx, gy);
                }
            }
        },
        preset);

    return GridFunction(grid, std::move(values), std::move(grad));
}

std::vector<double> finite_difference_gradmag(const GridFunction& u, const DyadicMask& domain) {
    const auto& grid = u.grid();
    const std::size_t side = grid.side();
    const double h = grid.cell_width();
    std::vector<double> out(grid.cell_count(), 0.0);

    auto derivative = [&](std::size_t idx, bool has_lo, std::size_t lo, bool has_hi, std::size_t hi) {
        if (has_lo && has_hi) return (u.value(hi) - u.value(lo)) / (2.0 * h);
        if (has_hi) return (u.value(hi) - u.value(idx)) / h;
        if (has_lo) return (u.value(idx) - u.value(lo)) / h;
        return 0.0;
    };

    for (std::size_t j = 0; j < side; ++j) {
        for (std::size_t i = 0; i < side; ++i) {
            const std::size_t idx = grid.index(i, j);
            if (!domain.test(idx)) continue;
            const bool l = i > 0 && domain.test(i - 1, j);
            const bool r = i + 1 < side && domain.test(i + 1, j);
            const bool d = j > 0 && domain.test(i, j - 1);
            const bool t = j + 1 < side && domain.test(i, j + 1);
            const double dx = derivative(idx, l, l ? grid.index(i - 1, j) : 0, r, r ? grid.index(i + 1, j) : 0);
            const double dy = derivative(idx, d, d ? grid.index(i, j - 1) : 0, t, t ? grid.index(i, j + 1) : 0);
            out[idx] = std::hypot(dx, dy);
        }
    }
    return out;
}

std::vector<FunctionPreset> trig_family(std::size_t count, std::uint64_t seed, int modes) {
    std::vector<FunctionPreset> family;
    family.reserve(count);
    for (std::size_t k = 0; k < count; ++k) family.emplace_back(TrigPreset{seed * 1000 + k, modes});
    return family;
}

std::vector<FunctionPreset> bump_family(std::size_t count, std::uint64_t seed, Point center, double outer_radius) {
    Rng rng(seed ^ 0xb5ad4eceda1ce2a9ULL);
    std::vector<FunctionPreset> family;
    family.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double r = outer_radius * (0.3 + 0.4 * rng.uniform());
        const double rho = (outer_radius - r) * rng.uniform();
        const double theta = 2.0 * std::numbers::pi * rng.uniform();
        family.emplace_back(BumpPreset{{center.x + rho * std::cos(theta), center.y + rho * std::sin(theta)}, r});
    }
    return family;
}

} // namespace hcontent
