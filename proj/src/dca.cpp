#include "dclab/dca.hpp"

#include <cmath>
#include <sstream>

namespace dclab {

namespace {

// Minimizes phi(x) = g(x) - target^T x. grad phi = grad g - target.
Point descend_subproblem(const DcInstance& inst, std::span<const double> target,
                         const SolverConfig& cfg, Point x) {
  auto phi = [&](std::span<const double> y) {
    double s = inst.g_value(y);
    for (std::size_t i = 0; i < y.size(); ++i) s -= target[i] * y[i];
    return s;
  };

  Point grad = subtract(inst.g_grad(x), target);
  double gnorm = norm(grad);
  double value = phi(x);
  Point trial(x.size());

  for (std::size_t it = 0; it < cfg.subproblem_max_iter; ++it) {
    if (gnorm <= cfg.subproblem_tol) return x;

    if (inst.lipschitz_g) {
      const double step = 1.0 / *inst.lipschitz_g;
      for (std::size_t i = 0; i < x.size(); ++i) x[i] -= step * grad[i];
      value = phi(x);
    } else {
      // Armijo backtracking from a unit step. Once the predicted decrease is
      // below the rounding level of phi, the test switches to a drop in the
      // residual.
      double step = 1.0;
      double trial_value = 0.0;
      for (;;) {
        for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] - step * grad[i];
        trial_value = phi(trial);
        const double predicted = 0.5 * step * gnorm * gnorm;
        if (predicted > 1e-14 * (1.0 + std::abs(value))) {
          if (trial_value <= value - predicted) break;
        } else if (norm(subtract(inst.g_grad(trial), target)) < gnorm) {
          break;
        }
        step *= 0.5;
        if (step < 1e-30) {
          std::ostringstream msg;
          msg.precision(3);
          msg << inst.name << ": subproblem line search failed at residual " << gnorm;
          throw SubproblemError(msg.str());
        }
      }
      x.swap(trial);
      value = trial_value;
    }
    grad = subtract(inst.g_grad(x), target);
    gnorm = norm(grad);
  }
  if (gnorm <= cfg.subproblem_tol) return x;

  std::ostringstream msg;
  msg.precision(3);
  msg << inst.name << ": subproblem residual " << gnorm << " above tolerance "
      << cfg.subproblem_tol << " after " << cfg.subproblem_max_iter << " iterations";
  throw SubproblemError(msg.str());
}

}  // namespace

bool meets_tolerance(double grad_norm, double epsilon) {
  return grad_norm <= epsilon * (1.0 + kToleranceRelSlack);
}

void SolverConfig::validate() const {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (!(subproblem_tol > 0.0)) throw std::invalid_argument("subproblem_tol must be positive");
  if (subproblem_max_iter == 0)
    throw std::invalid_argument("subproblem_max_iter must be positive");
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::epsilon_reached: return "epsilon_reached";
    case Termination::max_iter: return "max_iter";
    case Termination::domain_exhausted: return "domain_exhausted";
  }
  return "unknown";
}

Termination termination_from_string(std::string_view s) {
  if (s == "epsilon_reached") return Termination::epsilon_reached;
  if (s == "max_iter") return Termination::max_iter;
  if (s == "domain_exhausted") return Termination::domain_exhausted;
  throw std::invalid_argument("unknown termination reason: " + std::string(s));
}

Point solve_subproblem(const DcInstance& inst, std::span<const double> target,
                       const SolverConfig& cfg,
                       std::optional<std::span<const double>> start) {
  if (target.size() != inst.dim) throw std::invalid_argument("subproblem target has wrong dimension");
  if (!all_finite(target)) throw std::invalid_argument("subproblem target is not finite");

  if (inst.g_grad_inverse) return (*inst.g_grad_inverse)(target);

  Point x0 = start ? Point(start->begin(), start->end()) : Point(inst.dim, 0.0);
  return descend_subproblem(inst, target, cfg, std::move(x0));
}

Point dca_step(const DcInstance& inst, std::span<const double> x_k,
               const SolverConfig& cfg) {
  inst.require_in_domain(x_k);
  const Point target = inst.h_grad(x_k);
  return solve_subproblem(inst, target, cfg, x_k);
}

IterateRecord make_record(const DcInstance& inst, std::size_t k, const Point& x) {
  inst.require_in_domain(x);
  IterateRecord rec;
  rec.k = k;
  rec.x = x;
  rec.g = inst.g_value(x);
  rec.h = inst.h_value(x);
  rec.f = rec.g - rec.h;
  rec.grad_f_norm = norm(f_grad(inst, x));
  return rec;
}

Trajectory run_dca(const DcInstance& inst, const Point& x0, const SolverConfig& cfg) {
  cfg.validate();
  Trajectory traj;
  traj.records.push_back(make_record(inst, 0, x0));

  for (;;) {
    IterateRecord& current = traj.records.back();
    if (meets_tolerance(current.grad_f_norm, cfg.epsilon)) {
      traj.terminated_by = Termination::epsilon_reached;
      return traj;
    }
    if (current.k >= cfg.max_iter) {
      traj.terminated_by = Termination::max_iter;
      return traj;
    }

    Point next;
    try {
      next = dca_step(inst, current.x, cfg);
    } catch (const SubproblemError& e) {
      throw SubproblemError(e.what(), traj);
    }
    if (!inst.in_domain(next)) {
      traj.terminated_by = Termination::domain_exhausted;
      return traj;
    }
    const double step = distance(next, current.x);
    if (step == 0.0) {
      std::ostringstream msg;
      msg << inst.name << ": DCA stagnated at k=" << current.k
          << " with gradient norm " << current.grad_f_norm;
      throw SubproblemError(msg.str(), traj);
    }
    current.step_norm = step;
    const std::size_t k = current.k + 1;
    traj.records.push_back(make_record(inst, k, next));
  }
}

}  // namespace dclab
