#pragma once

// Hausdorff content of dyadic masks.
//
// The dyadic content of E is the minimum of sum side(Q)^delta over covers of
// E by dyadic squares. On a level-L mask it is computed exactly by the
// quadtree recursion
//
//     cost(Q) = 0                                   if Q misses E
//     cost(Q) = min(side(Q)^delta, sum_children)    otherwise
//
// with finest cells costing 2^(-L delta). Splitting below the finest level
// never helps because 4 * 2^-delta >= 1 for delta <= 2.

#include "hcontent/grid.hpp"

#include <cstddef>
#include <vector>

namespace hcontent {

struct ContentParams {
    double delta = 1.0;

    /// Throws ParameterError unless 0 < delta <= 2.
    void validate() const;
};

struct DyadicCube {
    int level = 0;
    std::size_t i = 0;
    std::size_t j = 0;

    double side() const;
    friend bool operator==(const DyadicCube&, const DyadicCube&) = default;
};

struct CoverSolution {
    double value = 0.0;
    std::vector<DyadicCube> cubes;
};

double dyadic_content(const DyadicMask& mask, ContentParams params);

/// One optimal cover; on ties the single larger cube wins over its children.
CoverSolution dyadic_optimal_cover(const DyadicMask& mask, ContentParams params);

/// Greedy ball cover of the occupied cells (each closed cell must lie inside
/// a closed ball). Returns sum r^delta, an upper bound for the ball content.
/// Throws IncompleteCoverError if `budget` picks do not cover the mask.
double ball_cover_upper(const DyadicMask& mask, ContentParams params, int budget);

/// occupied count * 4^-L.
double lebesgue_area(const DyadicMask& mask);

/// Quadtree DP that accepts cells one at a time. Used to sweep nested
/// superlevel sets: after every insert value() equals dyadic_content of the
/// cells inserted so far, bit for bit.
class ContentAccumulator {
public:
    ContentAccumulator(const DyadicGrid& grid, ContentParams params);

    void reset();
    void insert(std::size_t cell);
    double value() const noexcept { return cost_[0][0]; }

private:
    int level_;
    std::vector<double> side_pow_;          // side_pow_[l] = 2^(-l delta)
    std::vector<std::vector<double>> cost_; // cost_[l][j * 2^l + i]
};

} // namespace hcontent
