#pragma once

// DCA: x_{k+1} = argmin_x g(x) - grad h(x_k)^T (x - x_k), i.e. the solution of
// grad g(x_{k+1}) = grad h(x_k).

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dclab/dc_instance.hpp"

namespace dclab {

// Relative slack on the epsilon test, so a gradient norm that equals epsilon
// in exact arithmetic is not rejected over a last-bit rounding difference.
inline constexpr double kToleranceRelSlack = 1e-12;

/// ||grad f|| <= epsilon, up to kToleranceRelSlack.
bool meets_tolerance(double grad_norm, double epsilon);

struct SolverConfig {
  double epsilon = 1e-6;  // stop once ||grad f(x_k)|| <= epsilon
  std::size_t max_iter = 1000;
  double subproblem_tol = 1e-12;
  std::size_t subproblem_max_iter = 10'000;

  void validate() const;
};

struct IterateRecord {
  std::size_t k = 0;
  Point x;
  double f = 0.0;
  // Unknown (NaN) for trajectories read back from the CSV interchange format.
  double g = 0.0;
  double h = 0.0;
  double grad_f_norm = 0.0;
  double step_norm = 0.0;  // ||x_{k+1} - x_k||, 0 for the last record
};

enum class Termination { epsilon_reached, max_iter, domain_exhausted };

std::string_view to_string(Termination t);
Termination termination_from_string(std::string_view s);

struct Trajectory {
  std::vector<IterateRecord> records;
  Termination terminated_by = Termination::max_iter;

  std::size_t size() const { return records.size(); }
  const IterateRecord& operator[](std::size_t k) const { return records[k]; }
};

/// The inner solve failed to reach the residual tolerance, or the outer
/// iteration stagnated at a non-stationary point. Carries whatever trajectory
/// had been built when the failure happened.
class SubproblemError : public std::runtime_error {
 public:
  SubproblemError(const std::string& what, Trajectory partial = {})
      : std::runtime_error(what), partial_(std::move(partial)) {}

  const Trajectory& partial() const { return partial_; }

 private:
  Trajectory partial_;
};

/// Finds x with ||grad g(x) - target|| <= cfg.subproblem_tol. Uses the
/// instance's closed-form inverse gradient when registered; otherwise runs
/// gradient descent on g(x) - target^T x from `start` (zero when omitted).
Point solve_subproblem(const DcInstance& inst, std::span<const double> target,
                       const SolverConfig& cfg,
                       std::optional<std::span<const double>> start = std::nullopt);

/// One DCA step from x_k. Does not check the domain of the result.
Point dca_step(const DcInstance& inst, std::span<const double> x_k,
               const SolverConfig& cfg);

/// Runs DCA from x0, recording every iterate including x0. The epsilon test
/// is applied at each recorded iterate before stepping.
Trajectory run_dca(const DcInstance& inst, const Point& x0, const SolverConfig& cfg);

/// Builds a record for x, evaluating g, h and the gradient of f.
IterateRecord make_record(const DcInstance& inst, std::size_t k, const Point& x);

}  // namespace dclab
