#include "dclab/adversarial.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

#include "dclab/format.hpp"

namespace dclab {

AdversarialInstance::AdversarialInstance(double delta, std::size_t horizon)
    : delta_(delta), horizon_(horizon) {
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw std::invalid_argument("adversarial instance: delta must be positive");
  if (horizon < 1) throw std::invalid_argument("adversarial instance: horizon must be >= 1");

  const double a = exponent();
  const std::size_t n_knots = horizon + 2;  // x_0 .. x_{K+1}

  // x_0 .. x_{K+2}; the extra knot is grad h at x_{K+1}.
  std::vector<double> x(n_knots + 1);
  std::vector<double> step(n_knots);  // step[k] = x_k - x_{k+1}
  x[0] = 0.0;
  for (std::size_t k = 0; k < n_knots; ++k) {
    step[k] = std::pow(static_cast<double>(k + 1), -a);
    x[k + 1] = x[k] - step[k];
  }

  knots_.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n_knots));
  grads_.assign(x.begin() + 1, x.end());

  curvatures_.resize(horizon + 1);
  for (std::size_t k = 0; k <= horizon; ++k) {
    const double ratio = static_cast<double>(k + 1) / static_cast<double>(k + 2);
    curvatures_[k] = std::pow(ratio, a);
  }

  h_values_.resize(n_knots);
  h_values_[0] = 0.0;
  for (std::size_t k = 0; k + 1 < n_knots; ++k) {
    h_values_[k + 1] = h_values_[k] - x[k + 1] * step[k] +
                       0.5 * step[k] * step[k] * curvatures_[k];
  }

  f_low_ = zeta_lower_bound(delta);
}

std::size_t AdversarialInstance::locate(double x) const {
  if (x > 0.0 || x < knots_.back()) {
    std::ostringstream msg;
    msg << "adversarial instance: x = " << format_double(x) << " outside [x_"
        << horizon_ + 1 << ", 0]";
    throw HorizonExceeded(msg.str());
  }
  // First knot strictly below x; knots are decreasing.
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), x, std::greater<>());
  const auto idx = static_cast<std::size_t>(it - knots_.begin());
  return std::min(idx - 1, horizon_);
}

HValue AdversarialInstance::h_eval(double x) const {
  if (std::isnan(x)) throw DomainError("adversarial instance: x is NaN");
  if (x > 0.0) return {-x, -1.0};
  if (x < knots_.back()) {
    std::ostringstream msg;
    msg << "adversarial instance: x = " << format_double(x) << " below x_"
        << horizon_ + 1 << " = " << format_double(knots_.back())
        << "; rebuild with a larger horizon";
    throw HorizonExceeded(msg.str());
  }
  if (x == knots_.back()) return {h_values_.back(), grads_.back()};

  const std::size_t k = locate(x);
  const double dx = x - knots_[k];
  if (dx == 0.0) return {h_values_[k], grads_[k]};
  const double c = curvatures_[k];
  return {h_values_[k] + grads_[k] * dx + 0.5 * c * dx * dx, grads_[k] + c * dx};
}

void AdversarialInstance::write_knot_table(std::ostream& out) const {
  out << "k,x_k,h_k,grad_k,c_k\n";
  for (std::size_t k = 0; k < knots_.size(); ++k) {
    out << k << ',' << format_double(knots_[k]) << ',' << format_double(h_values_[k])
        << ',' << format_double(grads_[k]) << ',';
    if (k < curvatures_.size()) out << format_double(curvatures_[k]);
    out << '\n';
  }
}

std::shared_ptr<const AdversarialInstance> build_adversarial(double delta,
                                                             std::size_t horizon) {
  return std::make_shared<const AdversarialInstance>(delta, horizon);
}

DcInstance make_adversarial_dc(std::shared_ptr<const AdversarialInstance> adv) {
  DcInstance inst;
  std::ostringstream name;
  name << "adversarial(delta=" << adv->delta() << ", K=" << adv->horizon() << ")";
  inst.name = name.str();
  inst.dim = 1;
  inst.g_value = [](std::span<const double> x) { return 0.5 * x[0] * x[0]; };
  inst.g_grad = [](std::span<const double> x) { return Point{x[0]}; };
  inst.h_value = [adv](std::span<const double> x) { return adv->h_eval(x[0]).value; };
  inst.h_grad = [adv](std::span<const double> x) { return Point{adv->h_eval(x[0]).grad}; };
  inst.g_grad_inverse =
      GradientOracle([](std::span<const double> t) { return Point(t.begin(), t.end()); });
  inst.mu = 0.5;
  inst.lipschitz_h = 1.0;
  inst.lipschitz_g = 1.0;
  inst.f_low = adv->f_low();
  inst.domain = Interval{adv->lowest_point(), std::numeric_limits<double>::infinity()};
  return inst;
}

DcInstance make_adversarial_dc(double delta, std::size_t horizon) {
  return make_adversarial_dc(build_adversarial(delta, horizon));
}

double theoretical_grad_norm(double delta, std::size_t k) {
  return std::pow(static_cast<double>(k + 1), -(0.5 + delta));
}

double riemann_zeta(double s) {
  if (!(s > 1.0)) throw std::invalid_argument("riemann_zeta: s must exceed 1");

  // Euler-Maclaurin with the direct sum cut at n = N - 1.
  constexpr int N = 32;
  // B_{2j} / (2j)! for j = 1..7.
  constexpr std::array<double, 7> bernoulli_over_factorial = {
      1.0 / 12.0,
      -1.0 / 720.0,
      1.0 / 30240.0,
      -1.0 / 1209600.0,
      1.0 / 47900160.0,
      -691.0 / 1307674368000.0,
      1.0 / 74724249600.0,
  };

  double head = 0.0;
  for (int n = N - 1; n >= 1; --n) head += std::pow(static_cast<double>(n), -s);

  const double big_n = N;
  double tail = std::pow(big_n, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(big_n, -s);
  // Rising factorial s (s+1) ... (s + 2j - 2) times N^{-s-2j+1}.
  double rising = s;
  double power = std::pow(big_n, -s - 1.0);
  for (std::size_t j = 0; j < bernoulli_over_factorial.size(); ++j) {
    tail += bernoulli_over_factorial[j] * rising * power;
    const double m = static_cast<double>(2 * j + 1);
    rising *= (s + m) * (s + m + 1.0);
    power /= big_n * big_n;
  }
  return head + tail;
}

double zeta_lower_bound(double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("zeta_lower_bound: delta must be positive");
  return -riemann_zeta(1.0 + 2.0 * delta) - 2.0;
}

}  // namespace dclab
