#include "hcontent/integral.hpp"

#include "hcontent/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace hcontent {

// --- StepFunction -------------------------------------------------------------

StepFunction::StepFunction(std::vector<Breakpoint> breakpoints) : points_(std::move(breakpoints)) {
    if (points_.empty()) throw InputError("step function needs at least one breakpoint");
    for (std::size_t k = 0; k < points_.size(); ++k) {
        const auto& b = points_[k];
        if (!(b.t >= 0.0) || !(b.h >= 0.0)) throw InputError("breakpoints must be non-negative");
        if (k > 0 && !(b.t > points_[k - 1].t)) throw InputError("breakpoint t must increase strictly");
        if (k > 0 && b.h > points_[k - 1].h) throw InputError("distribution function must not increase");
    }
    if (points_.back().h != 0.0) throw InputError("final breakpoint must carry h = 0");
}

double StepFunction::integral() const {
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < points_.size(); ++k) sum += points_[k].h * (points_[k + 1].t - points_[k].t);
    return sum;
}

double StepFunction::power_integral(double p) const {
    if (!(p > 0.0)) throw ParameterError("p must be positive");
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < points_.size(); ++k) {
        sum += points_[k].h * (std::pow(points_[k + 1].t, p) - std::pow(points_[k].t, p));
    }
    return sum;
}

// --- layer-cake sweep ---------------------------------------------------------

namespace {

struct Level {
    double value;
    std::size_t cell;
};

void require_compatible(const GridFunction& f, const DyadicMask& domain) {
    if (!(f.grid() == domain.grid())) throw ParameterError("function and domain live on different grids");
}

// Domain cells with |f| > 0, sorted by |f| descending (cell index breaks ties).
std::vector<Level> descending_levels(const GridFunction& f, const DyadicMask& domain) {
    require_compatible(f, domain);
    std::vector<Level> levels;
    const auto values = f.values();
    for (std::size_t idx = 0; idx < values.size(); ++idx) {
        if (!domain.test(idx)) continue;
        const double v = values[idx];
        if (!std::isfinite(v)) {
            throw InputError("non-finite function value at cell " + std::to_string(idx));
        }
        if (v != 0.0) levels.push_back({std::abs(v), idx});
    }
    std::sort(levels.begin(), levels.end(), [](const Level& a, const Level& b) {
        return a.value > b.value || (a.value == b.value && a.cell < b.cell);
    });
    return levels;
}

// sum_k w_k (C_k - C_{k-1}) where C_k is the content after the k-th group of
// equal values. This is the layer-cake sum by parts; all terms are
// non-negative, which keeps scaling exact to rounding.
template <typename Weight>
double layer_cake(const std::vector<Level>& levels, ContentAccumulator& acc, Weight weight) {
    acc.reset();
    double total = 0.0;
    double previous = 0.0;
    std::size_t k = 0;
    while (k < levels.size()) {
        const double v = levels[k].value;
        while (k < levels.size() && levels[k].value == v) acc.insert(levels[k++].cell);
        const double content = acc.value();
        total += weight(v) * (content - previous);
        previous = content;
    }
    return total;
}

} // namespace

StepFunction distribution_function(const GridFunction& f, const DyadicMask& domain, ContentParams params) {
    params.validate();
    const auto levels = descending_levels(f, domain);
    ContentAccumulator acc(f.grid(), params);

    // Sweep downwards, then emit breakpoints in increasing t.
    std::vector<Breakpoint> desc;
    double content = 0.0;
    std::size_t k = 0;
    while (k < levels.size()) {
        const double v = levels[k].value;
        desc.push_back({v, content}); // h on [v, next larger value)
        while (k < levels.size() && levels[k].value == v) acc.insert(levels[k++].cell);
        content = acc.value();
    }
    desc.push_back({0.0, content});
    std::reverse(desc.begin(), desc.end());
    return StepFunction(std::move(desc));
}

double choquet_integral(const GridFunction& f, const DyadicMask& domain, ContentParams params) {
    params.validate();
    const auto levels = descending_levels(f, domain);
    ContentAccumulator acc(f.grid(), params);
    return layer_cake(levels, acc, [](double v) { return v; });
}

double choquet_power_integral(const GridFunction& f, double p, const DyadicMask& domain, ContentParams params) {
    if (!(p > 0.0)) throw ParameterError("p must be positive, got " + std::to_string(p));
    params.validate();
    require_compatible(f, domain);
    std::vector<double> powered(f.values().begin(), f.values().end());
    for (double& v : powered) v = std::pow(std::abs(v), p);
    return choquet_integral(GridFunction(f.grid(), std::move(powered)), domain, params);
}

double choquet_norm(const GridFunction& f, double p, const DyadicMask& domain, ContentParams params) {
    const double direct = choquet_power_integral(f, p, domain, params);
    const double by_layers = distribution_function(f, domain, params).power_integral(p);
    const double scale = std::max(std::abs(direct), std::abs(by_layers));
    if (scale > 0.0 && std::abs(direct - by_layers) > 1e-10 * scale) {
        throw ViolationError("layer-cake power identity failed: " + std::to_string(direct) + " vs " +
                             std::to_string(by_layers));
    }
    return std::pow(direct, 1.0 / p);
}

double lebesgue_integral(const GridFunction& f, const DyadicMask& domain) {
    require_compatible(f, domain);
    double sum = 0.0;
    const auto values = f.values();
    for (std::size_t idx = 0; idx < values.size(); ++idx) {
        if (domain.test(idx)) sum += std::abs(values[idx]);
    }
    return sum * f.grid().cell_area();
}

// --- ShiftedPowerIntegral -----------------------------------------------------

ShiftedPowerIntegral::ShiftedPowerIntegral(const GridFunction& u, const DyadicMask& domain, ContentParams params,
                                           double q)
    : q_(q), acc_(u.grid(), params) {
    if (!(q > 0.0)) throw ParameterError("exponent q must be positive");
    require_compatible(u, domain);
    const auto values = u.values();
    for (std::size_t idx = 0; idx < values.size(); ++idx) {
        if (!domain.test(idx)) continue;
        if (!std::isfinite(values[idx])) throw InputError("non-finite function value at cell " + std::to_string(idx));
        sorted_cells_.push_back(idx);
    }
    std::sort(sorted_cells_.begin(), sorted_cells_.end(), [&](std::size_t a, std::size_t b) {
        return values[a] < values[b] || (values[a] == values[b] && a < b);
    });
    sorted_values_.reserve(sorted_cells_.size());
    for (std::size_t idx : sorted_cells_) sorted_values_.push_back(values[idx]);
}

double ShiftedPowerIntegral::operator()(double b) {
    // |u - b| over u sorted ascending is V-shaped, so merging from both ends
    // yields the cells in descending |u - b| without a sort.
    acc_.reset();
    if (sorted_values_.empty()) return 0.0;
    std::size_t lo = 0;
    std::size_t hi = sorted_values_.size() - 1;
    bool exhausted = false;
    double total = 0.0;
    double previous = 0.0;

    auto next_distance = [&]() {
        const double dl = std::abs(sorted_values_[lo] - b);
        const double dh = std::abs(sorted_values_[hi] - b);
        return std::max(dl, dh);
    };

    while (!exhausted) {
        const double d = next_distance();
        if (d == 0.0) break;
        while (!exhausted) {
            const double dh = std::abs(sorted_values_[hi] - b);
            const double dl = std::abs(sorted_values_[lo] - b);
            if (dh == d) {
                acc_.insert(sorted_cells_[hi]);
                if (hi == lo) exhausted = true;
                else --hi;
            } else if (dl == d) {
                acc_.insert(sorted_cells_[lo]);
                if (hi == lo) exhausted = true;
                else ++lo;
            } else {
                break;
            }
        }
        const double content = acc_.value();
        total += std::pow(d, q_) * (content - previous);
        previous = content;
    }
    return total;
}

} // namespace hcontent
