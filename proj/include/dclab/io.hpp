#pragma once

// Interchange formats for trajectories and figure data.
//
// Trajectory CSV: header "k,x,f,grad_norm,step_norm", one row per iterate,
// coordinates of x joined by ';'. Numbers are written with 17 significant
// digits. g and h are not part of the CSV and read back as NaN.

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "dclab/dca.hpp"

namespace dclab {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

enum class TrajectoryFormat { csv, json };

void write_trajectory_csv(const Trajectory& traj, std::ostream& out);
void write_trajectory_json(const Trajectory& traj, std::ostream& out);
void write_trajectory(const Trajectory& traj, TrajectoryFormat fmt, std::ostream& out);

Trajectory read_trajectory_csv(std::istream& in);
Trajectory read_trajectory_json(std::istream& in);
/// Detects JSON by a leading '{', CSV otherwise.
Trajectory read_trajectory(std::istream& in);

struct FigureRow {
  double x = 0.0;
  double f = 0.0;
  double g = 0.0;
  double h = 0.0;
};

/// Samples f, g and h of the adversarial instance on [x_{n_knots}, 0] in
/// increasing x: samples_per_interval points per knot interval (left knot
/// included) plus the origin, n_knots * samples_per_interval + 1 rows.
std::vector<FigureRow> figure_data(double delta, std::size_t n_knots,
                                   std::size_t samples_per_interval);

void write_figure_csv(const std::vector<FigureRow>& rows, std::ostream& out);

}  // namespace dclab
