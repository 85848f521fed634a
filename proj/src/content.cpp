#include "hcontent/content.hpp"

#include "hcontent/errors.hpp"

#include <cmath>
#include <cstdint>
#include <queue>
#include <string>

namespace hcontent {

void ContentParams::validate() const {
    if (!(delta > 0.0 && delta <= 2.0)) {
        throw ParameterError("delta must lie in (0, 2], got " + std::to_string(delta));
    }
}

double DyadicCube::side() const { return std::ldexp(1.0, -level); }

namespace {

std::vector<double> side_powers(int level, double delta) {
    std::vector<double> out(static_cast<std::size_t>(level) + 1);
    for (int l = 0; l <= level; ++l) out[static_cast<std::size_t>(l)] = std::exp2(-l * delta);
    return out;
}

// Children of (i, j) at level l live at level l+1 with row length 2*width.
// The summation order is fixed so that every route through the DP produces
// identical bits.
inline double children_sum(const std::vector<double>& child, std::size_t width, std::size_t i, std::size_t j) {
    const std::size_t cw = 2 * width;
    const std::size_t r0 = 2 * j * cw + 2 * i;
    const std::size_t r1 = r0 + cw;
    return child[r0] + child[r0 + 1] + child[r1] + child[r1 + 1];
}

inline double node_cost(double sum, double own) { return sum > 0.0 ? (own <= sum ? own : sum) : 0.0; }

std::vector<std::vector<double>> full_dp(const DyadicMask& mask, const std::vector<double>& side_pow) {
    const int level = mask.grid().level();
    std::vector<std::vector<double>> cost(static_cast<std::size_t>(level) + 1);
    auto& finest = cost[static_cast<std::size_t>(level)];
    finest.assign(mask.grid().cell_count(), 0.0);
    for (std::size_t k = 0; k < finest.size(); ++k) {
        if (mask.test(k)) finest[k] = side_pow[static_cast<std::size_t>(level)];
    }
    for (int l = level - 1; l >= 0; --l) {
        const std::size_t width = std::size_t{1} << l;
        auto& here = cost[static_cast<std::size_t>(l)];
        const auto& child = cost[static_cast<std::size_t>(l) + 1];
        here.assign(width * width, 0.0);
        for (std::size_t j = 0; j < width; ++j) {
            for (std::size_t i = 0; i < width; ++i) {
                here[j * width + i] = node_cost(children_sum(child, width, i, j), side_pow[static_cast<std::size_t>(l)]);
            }
        }
    }
    return cost;
}

} // namespace

// --- ContentAccumulator -------------------------------------------------------

ContentAccumulator::ContentAccumulator(const DyadicGrid& grid, ContentParams params) : level_(grid.level()) {
    params.validate();
    side_pow_ = side_powers(level_, params.delta);
    cost_.resize(static_cast<std::size_t>(level_) + 1);
    for (int l = 0; l <= level_; ++l) {
        const std::size_t width = std::size_t{1} << l;
        cost_[static_cast<std::size_t>(l)].assign(width * width, 0.0);
    }
}

void ContentAccumulator::reset() {
    for (auto& c : cost_) std::fill(c.begin(), c.end(), 0.0);
}

void ContentAccumulator::insert(std::size_t cell) {
    auto L = static_cast<std::size_t>(level_);
    if (cost_[L][cell] != 0.0) return;
    cost_[L][cell] = side_pow_[L];
    std::size_t i = cell & ((std::size_t{1} << level_) - 1);
    std::size_t j = cell >> level_;
    for (std::size_t l = L; l-- > 0;) {
        i >>= 1;
        j >>= 1;
        const std::size_t width = std::size_t{1} << l;
        const double updated = node_cost(children_sum(cost_[l + 1], width, i, j), side_pow_[l]);
        double& slot = cost_[l][j * width + i];
        if (updated == slot) break; // ancestors depend only on this node
        slot = updated;
    }
}

// --- exact dyadic content -----------------------------------------------------

double dyadic_content(const DyadicMask& mask, ContentParams params) {
    params.validate();
    return full_dp(mask, side_powers(mask.grid().level(), params.delta))[0][0];
}

CoverSolution dyadic_optimal_cover(const DyadicMask& mask, ContentParams params) {
    params.validate();
    const int level = mask.grid().level();
    const auto side_pow = side_powers(level, params.delta);
    const auto cost = full_dp(mask, side_pow);

    CoverSolution out;
    out.value = cost[0][0];

    struct Node {
        int level;
        std::size_t i, j;
    };
    std::vector<Node> stack{{0, 0, 0}};
    while (!stack.empty()) {
        const Node n = stack.back();
        stack.pop_back();
        const auto l = static_cast<std::size_t>(n.level);
        const std::size_t width = std::size_t{1} << n.level;
        if (cost[l][n.j * width + n.i] == 0.0) continue;
        if (n.level == level || side_pow[l] <= children_sum(cost[l + 1], width, n.i, n.j)) {
            out.cubes.push_back({n.level, n.i, n.j});
            continue;
        }
        // reverse push keeps the output in (j, i) scan order per parent
        for (int c = 3; c >= 0; --c) {
            stack.push_back({n.level + 1, 2 * n.i + static_cast<std::size_t>(c & 1),
                             2 * n.j + static_cast<std::size_t>(c >> 1)});
        }
    }
    return out;
}

double lebesgue_area(const DyadicMask& mask) {
    return static_cast<double>(mask.count()) * mask.grid().cell_area();
}

// --- greedy ball cover --------------------------------------------------------

namespace {

// Geometry is done in integer units of half a finest cell so containment is
// exact: cell (i,j) spans [2i, 2i+2] x [2j, 2j+2]; a ball of radius
// sqrt(2) 2^(-l-1) has squared radius 2 * 4^(L-l) units^2.
struct Candidate {
    std::int64_t cx, cy;
    std::int64_t r2;
    int radius_level;
    double weight; // r^delta
};

bool ball_holds_cell(const Candidate& b, std::int64_t i, std::int64_t j) {
    for (std::int64_t dx : {2 * i - b.cx, 2 * i + 2 - b.cx}) {
        for (std::int64_t dy : {2 * j - b.cy, 2 * j + 2 - b.cy}) {
            if (dx * dx + dy * dy > b.r2) return false;
        }
    }
    return true;
}

std::int64_t isqrt(std::int64_t v) {
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

template <typename Visit>
void for_each_cell_in_ball(const Candidate& b, std::int64_t side, Visit&& visit) {
    const std::int64_t reach = isqrt(b.r2) + 2;
    const std::int64_t i0 = std::max<std::int64_t>(0, (b.cx - reach) / 2 - 1);
    const std::int64_t i1 = std::min<std::int64_t>(side - 1, (b.cx + reach) / 2 + 1);
    const std::int64_t j0 = std::max<std::int64_t>(0, (b.cy - reach) / 2 - 1);
    const std::int64_t j1 = std::min<std::int64_t>(side - 1, (b.cy + reach) / 2 + 1);
    for (std::int64_t j = j0; j <= j1; ++j) {
        for (std::int64_t i = i0; i <= i1; ++i) {
            if (ball_holds_cell(b, i, j)) visit(static_cast<std::size_t>(j * side + i));
        }
    }
}

} // namespace

double ball_cover_upper(const DyadicMask& mask, ContentParams params, int budget) {
    params.validate();
    if (budget < 1) throw ParameterError("ball cover budget must be at least 1");

    const DyadicGrid& grid = mask.grid();
    const int L = grid.level();
    const auto side = static_cast<std::int64_t>(grid.side());
    const std::size_t total = mask.count();
    if (total == 0) return 0.0;

    // Candidates: circumscribed balls of every dyadic square, plus balls of
    // every coarser radius centered at finest cell centers.
    std::vector<Candidate> cands;
    for (int l = 0; l <= L; ++l) {
        const std::int64_t units = std::int64_t{2} << (L - l); // square side in half-cell units
        const std::int64_t r2 = 2 * (std::int64_t{1} << (2 * (L - l)));
        const double weight = std::pow(std::sqrt(2.0) * std::ldexp(1.0, -l - 1), params.delta);
        const std::int64_t count = std::int64_t{1} << l;
        for (std::int64_t b = 0; b < count; ++b) {
            for (std::int64_t a = 0; a < count; ++a) {
                cands.push_back({a * units + units / 2, b * units + units / 2, r2, l, weight});
            }
        }
        if (l == L) continue; // a cell-centered ball of the cell's own radius is the square's ball
        for (std::int64_t j = 0; j < side; ++j) {
            for (std::int64_t i = 0; i < side; ++i) cands.push_back({2 * i + 1, 2 * j + 1, r2, l, weight});
        }
    }

    std::vector<std::uint8_t> covered(grid.cell_count(), 0);
    auto gain_of = [&](const Candidate& c) {
        std::size_t fresh = 0;
        for_each_cell_in_ball(c, side, [&](std::size_t idx) {
            if (mask.test(idx) && !covered[idx]) ++fresh;
        });
        return static_cast<double>(fresh) / c.weight;
    };

    // Lazy greedy: coverage gains only shrink, so a stale heap entry is an
    // upper bound. Ties prefer the larger radius, then the earlier candidate.
    struct Entry {
        double gain;
        int radius_level;
        std::size_t index;
        bool operator<(const Entry& o) const {
            if (gain != o.gain) return gain < o.gain;
            if (radius_level != o.radius_level) return radius_level > o.radius_level;
            return index > o.index;
        }
    };
    std::priority_queue<Entry> heap;
    for (std::size_t k = 0; k < cands.size(); ++k) {
        const double g = gain_of(cands[k]);
        if (g > 0.0) heap.push({g, cands[k].radius_level, k});
    }

    double value = 0.0;
    std::size_t remaining = total;
    int picks = 0;
    while (remaining > 0 && !heap.empty()) {
        if (picks == budget) throw IncompleteCoverError(value, remaining);
        Entry top = heap.top();
        heap.pop();
        const double fresh_gain = gain_of(cands[top.index]);
        if (fresh_gain <= 0.0) continue;
        top.gain = fresh_gain;
        if (!heap.empty() && top < heap.top()) {
            heap.push(top);
            continue;
        }
        const Candidate& c = cands[top.index];
        for_each_cell_in_ball(c, side, [&](std::size_t idx) {
            if (mask.test(idx) && !covered[idx]) {
                covered[idx] = 1;
                --remaining;
            }
        });
        value += c.weight;
        ++picks;
    }
    return value;
}

} // namespace hcontent
