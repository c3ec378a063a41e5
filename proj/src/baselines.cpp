#include "dclab/baselines.hpp"

#include <stdexcept>

namespace dclab {

double resolve_step_size(const DcInstance& inst, const GdConfig& cfg) {
  double step = 0.0;
  if (cfg.step_size) {
    step = *cfg.step_size;
  } else if (inst.lipschitz_g) {
    step = 1.0 / (*inst.lipschitz_g + inst.lipschitz_h);
  } else {
    throw std::invalid_argument(inst.name + ": no step size given and L_g unknown");
  }
  if (!(step > 0.0)) throw std::invalid_argument("step size must be positive");
  return step;
}

Trajectory run_steepest_descent(const DcInstance& inst, const Point& x0, const GdConfig& cfg) {
  if (!(cfg.epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  const double step = resolve_step_size(inst, cfg);

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
    const Point grad = f_grad(inst, current.x);
    Point next = current.x;
    for (std::size_t i = 0; i < next.size(); ++i) next[i] -= step * grad[i];
    if (!inst.in_domain(next)) {
      traj.terminated_by = Termination::domain_exhausted;
      return traj;
    }
    current.step_norm = distance(next, current.x);
    const std::size_t k = current.k + 1;
    traj.records.push_back(make_record(inst, k, next));
  }
}

}  // namespace dclab
