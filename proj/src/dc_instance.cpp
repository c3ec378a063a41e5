#include "dclab/dc_instance.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dclab {

bool DcInstance::in_domain(std::span<const double> x) const {
  if (x.size() != dim || !all_finite(x)) return false;
  if (!domain) return true;
  return std::all_of(x.begin(), x.end(),
                     [this](double xi) { return domain->contains(xi); });
}

void DcInstance::require_in_domain(std::span<const double> x) const {
  if (x.size() != dim) {
    std::ostringstream msg;
    msg << name << ": point has dimension " << x.size() << ", expected " << dim;
    throw DomainError(msg.str());
  }
  if (!all_finite(x)) throw DomainError(name + ": point has non-finite coordinates");
  if (!in_domain(x)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << name << ": point outside domain [" << domain->lower << ", "
        << domain->upper << "]";
    throw DomainError(msg.str());
  }
}

double f_value(const DcInstance& inst, std::span<const double> x) {
  inst.require_in_domain(x);
  return inst.g_value(x) - inst.h_value(x);
}

Point f_grad(const DcInstance& inst, std::span<const double> x) {
  inst.require_in_domain(x);
  Point gg = inst.g_grad(x);
  const Point hg = inst.h_grad(x);
  for (std::size_t i = 0; i < gg.size(); ++i) gg[i] -= hg[i];
  return gg;
}

FiniteDiffReport finite_diff_check(const DcInstance& inst,
                                   std::span<const double> x, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("finite_diff_check: step must be positive");
  inst.require_in_domain(x);

  Point probe(x.begin(), x.end());
  for (std::size_t i = 0; i < probe.size(); ++i) {
    probe[i] = x[i] - step;
    const bool lo_ok = inst.in_domain(probe);
    probe[i] = x[i] + step;
    const bool hi_ok = inst.in_domain(probe);
    probe[i] = x[i];
    if (!lo_ok || !hi_ok)
      throw DomainError(inst.name + ": finite difference stencil leaves the domain");
  }

  const Point analytic = f_grad(inst, x);
  FiniteDiffReport report;
  for (std::size_t i = 0; i < probe.size(); ++i) {
    probe[i] = x[i] + step;
    const double fp = f_value(inst, probe);
    probe[i] = x[i] - step;
    const double fm = f_value(inst, probe);
    probe[i] = x[i];
    const double numeric = (fp - fm) / (2.0 * step);
    const double err =
        std::abs(analytic[i] - numeric) / std::max(1.0, std::abs(analytic[i]));
    if (err > report.max_rel_error) {
      report.max_rel_error = err;
      report.worst_coordinate = i;
    }
  }
  return report;
}

DcInstance make_quadratic_dc(const Point& b) {
  if (b.empty()) throw std::invalid_argument("make_quadratic_dc: b must be nonempty");
  if (!all_finite(b)) throw std::invalid_argument("make_quadratic_dc: b must be finite");

  DcInstance inst;
  inst.name = "quadratic";
  inst.dim = b.size();
  inst.g_value = [](std::span<const double> x) {
    double s = 0.0;
    for (double xi : x) s += xi * xi;
    return s;
  };
  inst.g_grad = [](std::span<const double> x) {
    Point out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = 2.0 * x[i];
    return out;
  };
  inst.h_value = [b](std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += 0.5 * x[i] * x[i] + b[i] * x[i];
    return s;
  };
  inst.h_grad = [b](std::span<const double> x) {
    Point out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + b[i];
    return out;
  };
  inst.g_grad_inverse = GradientOracle([](std::span<const double> t) {
    Point out(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) out[i] = 0.5 * t[i];
    return out;
  });

  inst.mu = 1.0;
  inst.lipschitz_h = 1.0;
  inst.lipschitz_g = 2.0;
  double bb = 0.0;
  for (double bi : b) bb += bi * bi;
  inst.f_low = -0.5 * bb;
  return inst;
}

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double vi : v) s += vi * vi;
  return std::sqrt(s);
}

double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

Point subtract(std::span<const double> a, std::span<const double> b) {
  Point out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace dclab
