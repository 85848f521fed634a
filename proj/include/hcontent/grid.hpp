#pragma once

// Dyadic discretization of the unit square: grids, cell masks, grid-sampled
// functions and the preset shapes/functions used by the experiments.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace hcontent {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

double distance(Point a, Point b);

/// 2^L x 2^L grid of dyadic cells over [0,1)^2. Cell (i, j) has center
/// ((i+1/2) 2^-L, (j+1/2) 2^-L); i runs along x, j along y, and linear
/// indices are row-major in j.
class DyadicGrid {
public:
    static constexpr int kMinLevel = 1;
    static constexpr int kMaxLevel = 12;

    explicit DyadicGrid(int level);

    int level() const noexcept { return level_; }
    std::size_t side() const noexcept { return std::size_t{1} << level_; }
    std::size_t cell_count() const noexcept { return side() * side(); }
    double cell_width() const noexcept { return 1.0 / static_cast<double>(side()); }
    double cell_area() const noexcept { return cell_width() * cell_width(); }

    std::size_t index(std::size_t i, std::size_t j) const noexcept { return j * side() + i; }
    std::size_t col(std::size_t idx) const noexcept { return idx & (side() - 1); }
    std::size_t row(std::size_t idx) const noexcept { return idx >> level_; }
    Point center(std::size_t i, std::size_t j) const noexcept;
    Point center(std::size_t idx) const noexcept { return center(col(idx), row(idx)); }

    friend bool operator==(const DyadicGrid&, const DyadicGrid&) = default;

private:
    int level_;
};

/// Occupied finest-level cells of a set E in [0,1)^2.
class DyadicMask {
public:
    explicit DyadicMask(const DyadicGrid& grid, bool filled = false);

    const DyadicGrid& grid() const noexcept { return grid_; }
    bool test(std::size_t idx) const noexcept { return bits_[idx] != 0; }
    bool test(std::size_t i, std::size_t j) const noexcept { return test(grid_.index(i, j)); }
    void set(std::size_t idx, bool on = true) noexcept { bits_[idx] = on ? 1 : 0; }
    void set_cell(std::size_t i, std::size_t j, bool on = true) noexcept { set(grid_.index(i, j), on); }

    std::size_t count() const noexcept;
    bool empty() const noexcept { return count() == 0; }
    std::vector<std::size_t> occupied() const;

    bool is_subset_of(const DyadicMask& other) const;
    DyadicMask united(const DyadicMask& other) const;
    DyadicMask intersected(const DyadicMask& other) const;
    DyadicMask minus(const DyadicMask& other) const;

    std::span<const std::uint8_t> bits() const noexcept { return bits_; }

    friend bool operator==(const DyadicMask&, const DyadicMask&) = default;

private:
    DyadicGrid grid_;
    std::vector<std::uint8_t> bits_;
};

/// Values sampled at cell centers, optionally with |grad u| at the same
/// points. Cells outside the paired domain hold 0.
class GridFunction {
public:
    GridFunction(const DyadicGrid& grid, std::vector<double> values,
                 std::optional<std::vector<double>> gradmag = std::nullopt);

    const DyadicGrid& grid() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }
    double value(std::size_t idx) const noexcept { return values_[idx]; }
    bool has_gradmag() const noexcept { return gradmag_.has_value(); }
    std::span<const double> gradmag() const;

    GridFunction scaled(double a) const;
    GridFunction shifted(double c) const;
    /// |f| with the gradient channel dropped.
    GridFunction abs() const;
    /// The gradient channel as a function in its own right.
    GridFunction gradient_magnitude() const;

private:
    DyadicGrid grid_;
    std::vector<double> values_;
    std::optional<std::vector<double>> gradmag_;
};

// --- shapes -----------------------------------------------------------------

struct Ball {
    Point center;
    double radius = 0.0;
};

struct Polygon {
    std::vector<Point> vertices;
};

struct Shape;

struct Difference {
    std::shared_ptr<const Shape> keep;
    std::shared_ptr<const Shape> remove;
};

struct Shape {
    std::variant<Ball, Polygon, Difference> geometry;

    /// Strict containment test used for rasterization.
    bool contains(Point p) const;
    /// Throws ParameterError if the geometry leaves the closed unit square.
    void validate() const;
};

Shape make_difference(Shape keep, Shape remove);

DyadicMask rasterize_shape(const DyadicGrid& grid, const Shape& shape);

/// Max distance between occupied cell centers (0 for fewer than two cells).
double mask_diameter(const DyadicMask& mask);

// --- function presets -------------------------------------------------------

/// |x - origin|^mu; singular at the origin.
struct PowerPreset {
    double mu = -0.3;
    Point origin{0.5, 0.5};
};

/// (1 - |x-c|^2/R^2)^3 inside B(c, R), 0 outside.
struct BumpPreset {
    Point center{0.5, 0.5};
    double radius = 0.25;
};

/// a x + b y + c.
struct LinearPreset {
    double a = 1.0;
    double b = 0.0;
    double c = 0.0;
};

/// Sum of `modes` random plane waves, fully determined by `seed`.
struct TrigPreset {
    std::uint64_t seed = 0;
    int modes = 4;
};

using FunctionPreset = std::variant<PowerPreset, BumpPreset, LinearPreset, TrigPreset>;

GridFunction eval_preset(const FunctionPreset& preset, const DyadicGrid& grid, const DyadicMask& domain);

/// |grad u| from centered differences on the domain, one-sided at cells whose
/// neighbour falls outside it, 0 for isolated cells.
std::vector<double> finite_difference_gradmag(const GridFunction& u, const DyadicMask& domain);

/// Seeded families used by sweeps: `count` trig presets (seed*1000 + index).
std::vector<FunctionPreset> trig_family(std::size_t count, std::uint64_t seed, int modes = 4);
/// `count` bumps with centers/radii drawn inside B(center, outer_radius).
std::vector<FunctionPreset> bump_family(std::size_t count, std::uint64_t seed, Point center,
                                        double outer_radius);

} // namespace hcontent
