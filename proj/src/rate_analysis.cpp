#include "dclab/rate_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>
#include <string>

#include <json.hpp>

#include "dclab/format.hpp"

namespace dclab {

namespace {

std::size_t ceil_half(std::size_t k) { return (k + 1) / 2; }

void require_iterates(const Trajectory& traj, std::size_t last, const char* what) {
  if (last >= traj.size()) {
    throw AnalysisError(std::string(what) + ": trajectory has " +
                        std::to_string(traj.size()) + " iterates, need index " +
                        std::to_string(last));
  }
}

}  // namespace

bool within_slack(double lhs, double rhs, double slack) {
  return lhs <= rhs + slack * (1.0 + std::abs(rhs));
}

Thm1Check thm1_check(const Trajectory& traj, double mu, double lipschitz_h, std::size_t k) {
  if (k < 2) throw AnalysisError("thm1_check: k must be at least 2");
  if (!(mu > 0.0) || !(lipschitz_h > 0.0))
    throw AnalysisError("thm1_check: mu and L_h must be positive");
  require_iterates(traj, k + 1, "thm1_check");

  const std::size_t m = ceil_half(k);
  const double n = static_cast<double>(k / 2 + 1);
  double sum = 0.0;
  for (std::size_t i = m; i <= k; ++i) sum += traj[i].grad_f_norm * traj[i].grad_f_norm;

  const double decrease = traj[m].f - traj[k + 1].f;
  const double l2 = lipschitz_h * lipschitz_h;

  Thm1Check out;
  out.k = k;
  out.lhs = sum / n;
  out.rhs = l2 * decrease / (mu * n);
  out.rhs_loose = 2.0 * l2 * decrease / (mu * static_cast<double>(k));
  out.pass = within_slack(out.lhs, out.rhs) && within_slack(out.rhs, out.rhs_loose);
  return out;
}

DescentSumCheck descent_sum_check(const Trajectory& traj, double mu, std::size_t j,
                                  std::size_t k) {
  if (j > k) throw AnalysisError("descent_sum_check: need j <= k");
  require_iterates(traj, k + 1, "descent_sum_check");

  double steps = 0.0;
  for (std::size_t i = j; i <= k; ++i) steps += traj[i].step_norm * traj[i].step_norm;

  DescentSumCheck out;
  out.j = j;
  out.k = k;
  out.lhs = traj[j].f - traj[k + 1].f;
  out.rhs = mu * steps;
  out.pass = out.rhs - kRelativeSlack * (1.0 + std::abs(out.rhs)) <= out.lhs;
  return out;
}

std::optional<std::size_t> iterations_to_eps(const Trajectory& traj, double eps) {
  if (!(eps > 0.0)) throw AnalysisError("iterations_to_eps: eps must be positive");
  for (const auto& rec : traj.records)
    if (meets_tolerance(rec.grad_f_norm, eps)) return rec.k;
  return std::nullopt;
}

std::vector<ScaledRateRow> scaled_rate_table(const Trajectory& traj, double delta) {
  std::vector<ScaledRateRow> rows;
  rows.reserve(traj.size());
  for (const auto& rec : traj.records) {
    const double scale = std::pow(static_cast<double>(rec.k + 1), 0.5 + delta);
    rows.push_back({rec.k, rec.grad_f_norm, rec.grad_f_norm * scale});
  }
  return rows;
}

std::vector<MonotoneViolation> monotone_violations(const Trajectory& traj) {
  std::vector<MonotoneViolation> out;
  for (std::size_t k = 0; k + 1 < traj.size(); ++k) {
    const double rise = traj[k + 1].f - traj[k].f;
    if (!(rise <= kMonotoneSlack)) out.push_back({k, rise});
  }
  return out;
}

double rate_numerator(const Trajectory& traj, std::size_t k) {
  require_iterates(traj, k + 1, "rate_numerator");
  return traj[ceil_half(k)].f - traj[k + 1].f;
}

bool RateReport::all_pass() const { return failing_k().empty(); }

std::vector<std::size_t> RateReport::failing_k() const {
  std::set<std::size_t> bad;
  for (const auto& c : per_k)
    if (!c.pass) bad.insert(c.k);
  for (const auto& c : descent_sum_checks)
    if (!c.pass) bad.insert(c.k);
  for (const auto& v : monotone) bad.insert(v.k);
  return {bad.begin(), bad.end()};
}

RateReport build_rate_report(const Trajectory& traj, double mu, double lipschitz_h,
                             const ReportOptions& opts) {
  RateReport report;
  report.mu = mu;
  report.lipschitz_h = lipschitz_h;
  report.monotone = monotone_violations(traj);

  for (std::size_t k = 0; k + 1 < traj.size(); ++k) {
    report.descent_sum_checks.push_back(descent_sum_check(traj, mu, ceil_half(k), k));
    if (k >= 2) {
      report.per_k.push_back(thm1_check(traj, mu, lipschitz_h, k));
      report.numerator_sequence.push_back({k, rate_numerator(traj, k)});
    }
  }

  if (opts.eps) {
    report.eps = opts.eps;
    report.iterations_to_eps = iterations_to_eps(traj, *opts.eps);
  }
  if (opts.delta) {
    report.delta = opts.delta;
    report.scaled_rate = scaled_rate_table(traj, *opts.delta);
    double worst = 0.0;
    for (const auto& row : report.scaled_rate) worst = std::max(worst, std::abs(row.scaled - 1.0));
    report.scaled_rate_max_deviation = worst;
  }
  return report;
}

void write_report_json(const RateReport& report, std::ostream& out) {
  using nlohmann::json;
  json j;
  j["mu"] = report.mu;
  j["lipschitz_h"] = report.lipschitz_h;
  j["all_pass"] = report.all_pass();
  j["failing_k"] = report.failing_k();

  json per_k = json::array();
  for (const auto& c : report.per_k)
    per_k.push_back({{"k", c.k}, {"lhs", c.lhs}, {"rhs", c.rhs},
                     {"rhs_loose", c.rhs_loose}, {"pass", c.pass}});
  j["per_k"] = std::move(per_k);

  json sums = json::array();
  for (const auto& c : report.descent_sum_checks)
    sums.push_back({{"j", c.j}, {"k", c.k}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"pass", c.pass}});
  j["descent_sum_checks"] = std::move(sums);

  json mono = json::array();
  for (const auto& v : report.monotone) mono.push_back({{"k", v.k}, {"increase", v.increase}});
  j["monotone_violations"] = std::move(mono);

  j["iterations_to_eps"] = report.iterations_to_eps ? json(*report.iterations_to_eps) : json(nullptr);
  if (report.eps) j["eps"] = *report.eps;

  json num = json::array();
  for (const auto& e : report.numerator_sequence) num.push_back({{"k", e.k}, {"value", e.value}});
  j["numerator_sequence"] = std::move(num);

  if (report.delta) {
    j["delta"] = *report.delta;
    json rows = json::array();
    for (const auto& r : report.scaled_rate)
      rows.push_back({{"k", r.k}, {"grad_norm", r.grad_norm}, {"scaled", r.scaled}});
    j["scaled_rate"] = std::move(rows);
    j["scaled_rate_max_deviation"] = *report.scaled_rate_max_deviation;
  }
  out << j.dump(2) << '\n';
}

void write_report_csv(const RateReport& report, const Trajectory& traj, std::ostream& out) {
  out << "k,grad_norm,thm1_lhs,thm1_rhs,thm1_rhs_loose,thm1_pass,"
         "descent_j,descent_lhs,descent_rhs,descent_pass,numerator,scaled\n";

  auto find_k = [](const auto& v, std::size_t k) {
    auto it = std::lower_bound(v.begin(), v.end(), k,
                               [](const auto& e, std::size_t key) { return e.k < key; });
    return (it != v.end() && it->k == k) ? &*it : nullptr;
  };

  for (const auto& rec : traj.records) {
    const std::size_t k = rec.k;
    out << k << ',' << format_double(rec.grad_f_norm) << ',';
    if (const auto* c = find_k(report.per_k, k)) {
      out << format_double(c->lhs) << ',' << format_double(c->rhs) << ','
          << format_double(c->rhs_loose) << ',' << (c->pass ? 1 : 0) << ',';
    } else {
      out << ",,,,";
    }
    if (const auto* c = find_k(report.descent_sum_checks, k)) {
      out << c->j << ',' << format_double(c->lhs) << ',' << format_double(c->rhs) << ','
          << (c->pass ? 1 : 0) << ',';
    } else {
      out << ",,,,";
    }
    if (const auto* e = find_k(report.numerator_sequence, k)) out << format_double(e->value);
    out << ',';
    if (const auto* r = find_k(report.scaled_rate, k)) out << format_double(r->scaled);
    out << '\n';
  }
}

}  // namespace dclab
