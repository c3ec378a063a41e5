// dclab: run DCA / steepest descent experiments, verify the rate inequalities
// on saved trajectories, and export knot tables and figure data.
//
// Exit codes: 0 success, 1 verification failure, 2 invalid arguments or
// unparsable input, 3 solver failure, 4 output not writable.

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dclab/adversarial.hpp"
#include "dclab/baselines.hpp"
#include "dclab/dca.hpp"
#include "dclab/io.hpp"
#include "dclab/rate_analysis.hpp"

namespace {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kInvalid = 2,
  kSolverFailure = 3,
  kUnwritable = 4,
};

// Writes through a buffer so a failed open leaves no partial file behind.
int write_output(const std::string& path, const std::function<void(std::ostream&)>& body) {
  std::ostringstream buf;
  body(buf);
  if (path == "-") {
    std::cout << buf.str();
    std::cout.flush();
    return std::cout ? kOk : kUnwritable;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "dclab: cannot open '" << path << "' for writing\n";
    return kUnwritable;
  }
  out << buf.str();
  out.close();
  if (!out) {
    std::cerr << "dclab: failed writing '" << path << "'\n";
    return kUnwritable;
  }
  return kOk;
}

struct RunArgs {
  std::string problem;
  std::optional<double> delta;
  std::size_t horizon = 10'000;
  std::vector<double> b;
  std::vector<double> x0;
  double eps = 1e-9;
  std::size_t max_iter = 1000;
  std::string method = "dca";
  std::optional<double> gd_step;
  double subproblem_tol = 1e-12;
  std::string out = "-";
  std::string format = "csv";
};

int cmd_run(const RunArgs& a) {
  using namespace dclab;

  DcInstance inst;
  Point x0 = a.x0;
  try {
    if (a.problem == "adversarial") {
      if (!a.b.empty()) throw std::invalid_argument("--b only applies to the quadratic problem");
      if (!a.delta) throw std::invalid_argument("--delta is required for the adversarial problem");
      inst = make_adversarial_dc(*a.delta, a.horizon);
      if (x0.empty()) x0 = {0.0};
    } else {
      if (a.delta) throw std::invalid_argument("--delta only applies to the adversarial problem");
      if (a.b.empty()) throw std::invalid_argument("--b is required for the quadratic problem");
      inst = make_quadratic_dc(a.b);
      if (x0.empty()) x0.assign(inst.dim, 0.0);
    }
    if (a.method == "dca" && a.gd_step)
      throw std::invalid_argument("--gd-step only applies to --method gd");
    if (!inst.in_domain(x0)) throw std::invalid_argument("--x0 has the wrong dimension or lies outside the domain");
    if (!(a.eps > 0.0)) throw std::invalid_argument("--eps must be positive");
  } catch (const std::exception& e) {
    std::cerr << "dclab run: " << e.what() << '\n';
    return kInvalid;
  }

  Trajectory traj;
  try {
    if (a.method == "dca") {
      SolverConfig cfg;
      cfg.epsilon = a.eps;
      cfg.max_iter = a.max_iter;
      cfg.subproblem_tol = a.subproblem_tol;
      traj = run_dca(inst, x0, cfg);
    } else {
      GdConfig cfg;
      cfg.step_size = a.gd_step;
      cfg.epsilon = a.eps;
      cfg.max_iter = a.max_iter;
      try {
        resolve_step_size(inst, cfg);
      } catch (const std::invalid_argument& e) {
        std::cerr << "dclab run: " << e.what() << '\n';
        return kInvalid;
      }
      traj = run_steepest_descent(inst, x0, cfg);
    }
  } catch (const SubproblemError& e) {
    std::cerr << "dclab run: solver failure: " << e.what() << " (after "
              << e.partial().size() << " iterates)\n";
    return kSolverFailure;
  } catch (const std::exception& e) {
    std::cerr << "dclab run: solver failure: " << e.what() << '\n';
    return kSolverFailure;
  }

  const auto fmt = a.format == "json" ? TrajectoryFormat::json : TrajectoryFormat::csv;
  const int rc = write_output(a.out, [&](std::ostream& os) { write_trajectory(traj, fmt, os); });
  if (rc == kOk)
    std::cerr << "dclab run: " << traj.size() << " iterates, terminated by "
              << to_string(traj.terminated_by) << '\n';
  return rc;
}

struct VerifyArgs {
  std::string input;
  double mu = 0.0;
  double lipschitz_h = 0.0;
  std::optional<double> delta;
  std::optional<double> eps;
  std::string out;
  std::string format = "json";
};

int cmd_verify(const VerifyArgs& a) {
  using namespace dclab;

  Trajectory traj;
  {
    std::ifstream in(a.input, std::ios::binary);
    if (!in) {
      std::cerr << "dclab verify: cannot open '" << a.input << "'\n";
      return kInvalid;
    }
    try {
      traj = read_trajectory(in);
    } catch (const ParseError& e) {
      std::cerr << "dclab verify: " << a.input << ": " << e.what() << '\n';
      return kInvalid;
    }
  }
  if (!(a.mu > 0.0) || !(a.lipschitz_h > 0.0)) {
    std::cerr << "dclab verify: --mu and --lh must be positive\n";
    return kInvalid;
  }
  if (a.eps && !(*a.eps > 0.0)) {
    std::cerr << "dclab verify: --eps must be positive\n";
    return kInvalid;
  }

  const RateReport report = build_rate_report(traj, a.mu, a.lipschitz_h, {a.delta, a.eps});

  if (!a.out.empty()) {
    const int rc = write_output(a.out, [&](std::ostream& os) {
      if (a.format == "csv")
        write_report_csv(report, traj, os);
      else
        write_report_json(report, os);
    });
    if (rc != kOk) return rc;
  }

  const auto bad = report.failing_k();
  if (!bad.empty()) {
    std::cerr << "dclab verify: " << bad.size() << " failing k:";
    const std::size_t shown = std::min<std::size_t>(bad.size(), 20);
    for (std::size_t i = 0; i < shown; ++i) std::cerr << ' ' << bad[i];
    if (shown < bad.size()) std::cerr << " ...";
    std::cerr << '\n';
    return kCheckFailed;
  }
  std::cerr << "dclab verify: " << report.per_k.size() << " rate checks and "
            << report.descent_sum_checks.size() << " descent sums pass\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DC optimization laboratory: DCA runs, rate verification, figure data"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run DCA or steepest descent and write the trajectory");
  run_cmd->add_option("--problem", run.problem, "Problem instance")
      ->required()
      ->check(CLI::IsMember({"adversarial", "quadratic"}));
  run_cmd->add_option("--delta", run.delta, "Rate parameter of the adversarial instance (> 0)");
  run_cmd->add_option("--horizon", run.horizon, "Number of adversarial knot intervals")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--b", run.b, "Shift vector of the quadratic instance");
  run_cmd->add_option("--x0", run.x0, "Starting point (default: origin)");
  run_cmd->add_option("--eps", run.eps, "Gradient-norm tolerance");
  run_cmd->add_option("--max-iter", run.max_iter, "Iteration cap");
  run_cmd->add_option("--method", run.method)->check(CLI::IsMember({"dca", "gd"}));
  run_cmd->add_option("--gd-step", run.gd_step, "Steepest-descent step (default 1/(L_g+L_h))");
  run_cmd->add_option("--subproblem-tol", run.subproblem_tol, "Inner solve residual tolerance");
  run_cmd->add_option("--out", run.out, "Output path, '-' for stdout");
  run_cmd->add_option("--format", run.format)->check(CLI::IsMember({"csv", "json"}));

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check rate inequalities on a saved trajectory");
  verify_cmd->add_option("trajectory", verify.input, "Trajectory file (CSV or JSON)")->required();
  verify_cmd->add_option("--mu", verify.mu, "Strong convexity constant of g")->required();
  verify_cmd->add_option("--lh", verify.lipschitz_h, "Lipschitz constant of grad h")->required();
  verify_cmd->add_option("--delta", verify.delta, "Report the scaled rate for this delta");
  verify_cmd->add_option("--eps", verify.eps, "Report iterations to reach this tolerance");
  verify_cmd->add_option("--out", verify.out, "Report path, '-' for stdout");
  verify_cmd->add_option("--format", verify.format)->check(CLI::IsMember({"csv", "json"}));

  double fig_delta = 0.5;
  std::size_t fig_knots = 25;
  std::size_t fig_samples = 8;
  std::string fig_out = "-";
  auto* fig_cmd = app.add_subcommand("figure-data", "Sample f, g, h of the adversarial instance");
  fig_cmd->add_option("--delta", fig_delta)->check(CLI::PositiveNumber);
  fig_cmd->add_option("--knots", fig_knots)->check(CLI::PositiveNumber);
  fig_cmd->add_option("--samples", fig_samples, "Samples per knot interval (>= 2)")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1'000'000}));
  fig_cmd->add_option("--out", fig_out);

  double knot_delta = 0.5;
  std::size_t knot_horizon = 25;
  std::string knot_out = "-";
  auto* knot_cmd = app.add_subcommand("knots", "Export the adversarial knot table");
  knot_cmd->add_option("--delta", knot_delta)->check(CLI::PositiveNumber);
  knot_cmd->add_option("--horizon", knot_horizon)->check(CLI::PositiveNumber);
  knot_cmd->add_option("--out", knot_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  if (*run_cmd) return cmd_run(run);
  if (*verify_cmd) return cmd_verify(verify);
  if (*fig_cmd) {
    try {
      const auto rows = dclab::figure_data(fig_delta, fig_knots, fig_samples);
      return write_output(fig_out, [&](std::ostream& os) { dclab::write_figure_csv(rows, os); });
    } catch (const std::invalid_argument& e) {
      std::cerr << "dclab figure-data: " << e.what() << '\n';
      return kInvalid;
    }
  }
  if (*knot_cmd) {
    const auto adv = dclab::build_adversarial(knot_delta, knot_horizon);
    return write_output(knot_out, [&](std::ostream& os) { adv->write_knot_table(os); });
  }
  return kInvalid;
}
