#pragma once

// Slow-convergence instance for DCA in one dimension.
//
// g(x) = x^2 / 2 and h is the C^1 piecewise quadratic with knots
//   x_0 = 0,  x_{k+1} = x_k - (k+1)^{-(1/2+delta)},
// gradient conditions grad h(x_k) = x_{k+1} and h(0) = 0. On [x_{k+1}, x_k]
// the curvature is c_k = ((k+1)/(k+2))^{1/2+delta} and the piece is the
// Taylor expansion around the right knot x_k. For x > 0, h(x) = -x.
//
// DCA started at 0 reproduces the knots exactly, with
// ||grad f(x_k)|| = (k+1)^{-(1/2+delta)}.

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <vector>

#include "dclab/dc_instance.hpp"

namespace dclab {

/// Evaluation below the last constructed knot.
class HorizonExceeded : public DomainError {
 public:
  using DomainError::DomainError;
};

struct HValue {
  double value = 0.0;
  double grad = 0.0;
};

class AdversarialInstance {
 public:
  /// Builds knots x_0..x_{K+1} and the interval data for K = horizon.
  AdversarialInstance(double delta, std::size_t horizon);

  double delta() const { return delta_; }
  std::size_t horizon() const { return horizon_; }
  double exponent() const { return 0.5 + delta_; }

  // knots()[k] = x_k for k = 0..K+1.
  const std::vector<double>& knots() const { return knots_; }
  // grad_at_knots()[k] = grad h(x_k) = x_{k+1} for k = 0..K+1.
  const std::vector<double>& grad_at_knots() const { return grads_; }
  // h_at_knots()[k] = h(x_k) for k = 0..K+1.
  const std::vector<double>& h_at_knots() const { return h_values_; }
  // curvatures()[k] = c_k on [x_{k+1}, x_k] for k = 0..K.
  const std::vector<double>& curvatures() const { return curvatures_; }

  double lowest_point() const { return knots_.back(); }
  double f_low() const { return f_low_; }

  /// h and its derivative at x. Throws HorizonExceeded for x < x_{K+1}.
  HValue h_eval(double x) const;

  /// Index k of the interval [x_{k+1}, x_k] used to evaluate x <= 0. Exact
  /// knot hits resolve to the piece anchored at that knot.
  std::size_t locate(double x) const;

  /// CSV with header k,x_k,h_k,grad_k,c_k; c_k is empty on the last knot.
  void write_knot_table(std::ostream& out) const;

 private:
  double delta_;
  std::size_t horizon_;
  std::vector<double> knots_;
  std::vector<double> grads_;
  std::vector<double> h_values_;
  std::vector<double> curvatures_;
  double f_low_;
};

std::shared_ptr<const AdversarialInstance> build_adversarial(double delta,
                                                             std::size_t horizon);

/// The instance as a generic DcInstance: mu = 1/2, L_h = 1, L_g = 1,
/// domain [x_{K+1}, +inf) and the closed-form subproblem x = t. The oracles
/// share ownership of the knot data.
DcInstance make_adversarial_dc(std::shared_ptr<const AdversarialInstance> adv);
DcInstance make_adversarial_dc(double delta, std::size_t horizon);

/// ||grad f(x_k)|| = (k+1)^{-(1/2+delta)} along the DCA iterates.
double theoretical_grad_norm(double delta, std::size_t k);

/// Riemann zeta for s > 1 via Euler-Maclaurin summation; absolute error well
/// below 1e-12 over the range used here.
double riemann_zeta(double s);

/// -zeta(1 + 2 delta) - 2, a lower bound on f over (-inf, 0].
double zeta_lower_bound(double delta);

}  // namespace dclab
