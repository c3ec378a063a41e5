#pragma once

// Fixed-step steepest descent on f, ignoring the DC split.

#include <cstddef>
#include <optional>

#include "dclab/dca.hpp"

namespace dclab {

struct GdConfig {
  // Defaults to 1 / (L_g + L_h) when the instance registers both constants.
  std::optional<double> step_size;
  double epsilon = 1e-6;
  std::size_t max_iter = 1000;
};

/// Step size the run will use; throws std::invalid_argument when none is set
/// and the instance has no L_g, or when the step is not positive.
double resolve_step_size(const DcInstance& inst, const GdConfig& cfg);

/// x_{k+1} = x_k - step * grad f(x_k). Same record schema and epsilon rule as
/// run_dca; an iterate leaving the domain ends the run with domain_exhausted.
Trajectory run_steepest_descent(const DcInstance& inst, const Point& x0, const GdConfig& cfg);

}  // namespace dclab
