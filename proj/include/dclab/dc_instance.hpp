#pragma once

// DC problem abstraction: f(x) = g(x) - h(x) with g strongly convex and h
// convex with Lipschitz gradient. Instances bundle value/gradient oracles for
// both parts together with the constants the convergence analysis needs.
//
// Strong convexity uses the convention without the 1/2 factor:
//   g(y) >= g(x) + grad g(x)^T (y - x) + mu * ||y - x||^2,
// so g(x) = x^2 / 2 has mu = 1/2.

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dclab {

using Point = std::vector<double>;

using ValueOracle = std::function<double(std::span<const double>)>;
using GradientOracle = std::function<Point(std::span<const double>)>;

/// Raised when a point lies outside the region an instance is defined on.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Closed interval [lower, upper] applied to every coordinate.
struct Interval {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();

  bool contains(double x) const { return x >= lower && x <= upper; }
};

struct DcInstance {
  std::string name;
  ValueOracle g_value;
  GradientOracle g_grad;
  ValueOracle h_value;
  GradientOracle h_grad;

  double mu = 0.0;           // strong convexity of g (no 1/2 factor)
  double lipschitz_h = 0.0;  // Lipschitz constant of grad h
  std::optional<double> lipschitz_g;  // smoothness of g, when known
  std::optional<double> f_low;
  std::size_t dim = 1;
  std::optional<Interval> domain;

  // Solves grad g(x) = target in closed form, when available.
  std::optional<GradientOracle> g_grad_inverse;

  bool in_domain(std::span<const double> x) const;

  /// Throws DomainError unless x has the right dimension, is finite and lies
  /// inside the domain.
  void require_in_domain(std::span<const double> x) const;
};

double f_value(const DcInstance& inst, std::span<const double> x);
Point f_grad(const DcInstance& inst, std::span<const double> x);

struct FiniteDiffReport {
  double max_rel_error = 0.0;
  std::size_t worst_coordinate = 0;
};

/// Compares f_grad against central differences of f_value. The relative
/// error per coordinate is |analytic - numeric| / max(1, |analytic|).
FiniteDiffReport finite_diff_check(const DcInstance& inst,
                                   std::span<const double> x, double step);

/// g = ||x||^2, h = ||x||^2 / 2 + b^T x, so f = ||x||^2 / 2 - b^T x.
DcInstance make_quadratic_dc(const Point& b);

// Small vector helpers shared by the solvers.
double norm(std::span<const double> v);
double distance(std::span<const double> a, std::span<const double> b);
Point subtract(std::span<const double> a, std::span<const double> b);
bool all_finite(std::span<const double> v);

}  // namespace dclab
