#include "hcontent/errors.hpp"

namespace hcontent {

IncompleteCoverError::IncompleteCoverError(double partial_value, std::size_t uncovered)
    : std::runtime_error("ball cover budget exhausted with " + std::to_string(uncovered) +
                         " cells uncovered (partial value " + std::to_string(partial_value) + ")"),
      partial_value_(partial_value),
      uncovered_(uncovered) {}

} // namespace hcontent
