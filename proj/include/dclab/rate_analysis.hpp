#pragma once

// Checks of the DCA worst-case inequality chain on recorded trajectories.
//
// For k >= 2, with m = ceil(k/2) and n = floor(k/2) + 1:
//   (1/n) sum_{i=m}^{k} ||grad f(x_i)||^2
//       <= L_h^2 (f(x_m) - f(x_{k+1})) / (mu n)
//       <= 2 L_h^2 (f(x_m) - f(x_{k+1})) / (mu k)
// and for 0 <= j <= k the descent sum
//   f(x_j) - f(x_{k+1}) >= mu sum_{i=j}^{k} ||x_{i+1} - x_i||^2.
//
// Every inequality a <= b is accepted when a <= b + slack * (1 + |b|).

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dclab/dca.hpp"

namespace dclab {

inline constexpr double kRelativeSlack = 1e-9;
inline constexpr double kMonotoneSlack = 1e-12;

class AnalysisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

bool within_slack(double lhs, double rhs, double slack = kRelativeSlack);

struct Thm1Check {
  std::size_t k = 0;
  double lhs = 0.0;
  double rhs = 0.0;        // divisor floor(k/2) + 1
  double rhs_loose = 0.0;  // 2 / (mu k) form
  bool pass = false;       // lhs <= rhs <= rhs_loose, with slack
};

struct DescentSumCheck {
  std::size_t j = 0;
  std::size_t k = 0;
  double lhs = 0.0;  // f(x_j) - f(x_{k+1})
  double rhs = 0.0;  // mu * sum of squared steps
  bool pass = false;
};

struct MonotoneViolation {
  std::size_t k = 0;  // f(x_{k+1}) > f(x_k) + kMonotoneSlack
  double increase = 0.0;
};

struct ScaledRateRow {
  std::size_t k = 0;
  double grad_norm = 0.0;
  double scaled = 0.0;  // grad_norm * (k+1)^{1/2+delta}
};

/// Requires k >= 2 and iterates 0..k+1 in the trajectory.
Thm1Check thm1_check(const Trajectory& traj, double mu, double lipschitz_h, std::size_t k);

/// Requires j <= k and iterates 0..k+1 in the trajectory.
DescentSumCheck descent_sum_check(const Trajectory& traj, double mu, std::size_t j,
                                  std::size_t k);

/// Smallest k with ||grad f(x_k)|| <= eps, if any.
std::optional<std::size_t> iterations_to_eps(const Trajectory& traj, double eps);

std::vector<ScaledRateRow> scaled_rate_table(const Trajectory& traj, double delta);

std::vector<MonotoneViolation> monotone_violations(const Trajectory& traj);

/// f(x_{ceil(k/2)}) - f(x_{k+1}); requires k + 1 < size.
double rate_numerator(const Trajectory& traj, std::size_t k);

struct NumeratorEntry {
  std::size_t k = 0;
  double value = 0.0;
};

struct RateReport {
  double mu = 0.0;
  double lipschitz_h = 0.0;
  std::vector<Thm1Check> per_k;
  std::vector<DescentSumCheck> descent_sum_checks;
  std::vector<MonotoneViolation> monotone;
  std::optional<double> eps;
  std::optional<std::size_t> iterations_to_eps;
  std::vector<NumeratorEntry> numerator_sequence;
  std::optional<double> delta;
  std::vector<ScaledRateRow> scaled_rate;
  // max over k of |scaled - 1|, when delta is given.
  std::optional<double> scaled_rate_max_deviation;

  bool all_pass() const;
  /// Indices k with at least one failing inequality, ascending.
  std::vector<std::size_t> failing_k() const;
};

struct ReportOptions {
  std::optional<double> delta;
  std::optional<double> eps;
};

/// Runs thm1_check for every 2 <= k <= size - 2, the descent sum for
/// j = ceil(k/2) at every k <= size - 2, and the monotone-decrease scan.
RateReport build_rate_report(const Trajectory& traj, double mu, double lipschitz_h,
                             const ReportOptions& opts = {});

void write_report_json(const RateReport& report, std::ostream& out);
/// One row per recorded iterate; cells that do not apply at a k are empty.
void write_report_csv(const RateReport& report, const Trajectory& traj, std::ostream& out);

}  // namespace dclab
