#include "dclab/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string_view>

#include <json.hpp>

#include "dclab/adversarial.hpp"
#include "dclab/format.hpp"

namespace dclab {

namespace {

constexpr std::string_view kTrajectoryHeader = "k,x,f,grad_norm,step_norm";

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_double(std::string_view cell, std::size_t line, std::string_view column) {
  double v = 0.0;
  const auto* end = cell.data() + cell.size();
  const auto res = std::from_chars(cell.data(), end, v);
  if (cell.empty() || res.ec != std::errc() || res.ptr != end)
    throw ParseError(line, "bad number '" + std::string(cell) + "' in column " + std::string(column));
  return v;
}

std::size_t parse_index(std::string_view cell, std::size_t line) {
  std::size_t v = 0;
  const auto* end = cell.data() + cell.size();
  const auto res = std::from_chars(cell.data(), end, v);
  if (cell.empty() || res.ec != std::errc() || res.ptr != end)
    throw ParseError(line, "bad iteration index '" + std::string(cell) + "'");
  return v;
}

}  // namespace

void write_trajectory_csv(const Trajectory& traj, std::ostream& out) {
  out << kTrajectoryHeader << '\n';
  for (const auto& rec : traj.records) {
    out << rec.k << ',';
    for (std::size_t i = 0; i < rec.x.size(); ++i) {
      if (i) out << ';';
      out << format_double(rec.x[i]);
    }
    out << ',' << format_double(rec.f) << ',' << format_double(rec.grad_f_norm) << ','
        << format_double(rec.step_norm) << '\n';
  }
}

void write_trajectory_json(const Trajectory& traj, std::ostream& out) {
  using nlohmann::json;
  json records = json::array();
  for (const auto& rec : traj.records) {
    records.push_back({{"k", rec.k}, {"x", rec.x}, {"f", rec.f}, {"g", rec.g},
                       {"h", rec.h}, {"grad_norm", rec.grad_f_norm},
                       {"step_norm", rec.step_norm}});
  }
  json j{{"terminated_by", std::string(to_string(traj.terminated_by))},
         {"records", std::move(records)}};
  out << j.dump(2) << '\n';
}

void write_trajectory(const Trajectory& traj, TrajectoryFormat fmt, std::ostream& out) {
  if (fmt == TrajectoryFormat::json)
    write_trajectory_json(traj, out);
  else
    write_trajectory_csv(traj, out);
}

Trajectory read_trajectory_csv(std::istream& in) {
  Trajectory traj;
  std::string line;
  std::size_t lineno = 0;

  if (!std::getline(in, line)) throw ParseError(1, "empty file, expected header");
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTrajectoryHeader)
    throw ParseError(lineno, "expected header '" + std::string(kTrajectoryHeader) + "'");

  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::size_t dim = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) throw ParseError(lineno, "blank line");
    const auto cells = split(line, ',');
    if (cells.size() != 5)
      throw ParseError(lineno, "expected 5 columns, found " + std::to_string(cells.size()));

    IterateRecord rec;
    rec.k = parse_index(cells[0], lineno);
    if (rec.k != traj.records.size())
      throw ParseError(lineno, "iteration index " + std::to_string(rec.k) + ", expected " +
                                   std::to_string(traj.records.size()));
    for (auto coord : split(cells[1], ';')) rec.x.push_back(parse_double(coord, lineno, "x"));
    if (dim == 0) dim = rec.x.size();
    if (rec.x.size() != dim) throw ParseError(lineno, "dimension changed along the trajectory");
    rec.f = parse_double(cells[2], lineno, "f");
    rec.grad_f_norm = parse_double(cells[3], lineno, "grad_norm");
    rec.step_norm = parse_double(cells[4], lineno, "step_norm");
    if (!(rec.grad_f_norm >= 0.0) || !(rec.step_norm >= 0.0))
      throw ParseError(lineno, "norms must be nonnegative");
    rec.g = nan;
    rec.h = nan;
    traj.records.push_back(std::move(rec));
  }
  if (traj.records.empty()) throw ParseError(lineno, "trajectory has no rows");
  return traj;
}

Trajectory read_trajectory_json(std::istream& in) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(0, e.what());
  }
  Trajectory traj;
  try {
    traj.terminated_by = termination_from_string(j.at("terminated_by").get<std::string>());
    for (const auto& r : j.at("records")) {
      IterateRecord rec;
      rec.k = r.at("k").get<std::size_t>();
      if (rec.k != traj.records.size())
        throw ParseError(rec.k, "iteration indices must be consecutive from 0");
      rec.x = r.at("x").get<std::vector<double>>();
      rec.f = r.at("f").get<double>();
      rec.g = r.at("g").get<double>();
      rec.h = r.at("h").get<double>();
      rec.grad_f_norm = r.at("grad_norm").get<double>();
      rec.step_norm = r.at("step_norm").get<double>();
      traj.records.push_back(std::move(rec));
    }
  } catch (const json::exception& e) {
    throw ParseError(0, e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(0, e.what());
  }
  if (traj.records.empty()) throw ParseError(0, "trajectory has no records");
  return traj;
}

Trajectory read_trajectory(std::istream& in) {
  in >> std::ws;
  if (in.peek() == '{') return read_trajectory_json(in);
  return read_trajectory_csv(in);
}

std::vector<FigureRow> figure_data(double delta, std::size_t n_knots,
                                   std::size_t samples_per_interval) {
  if (samples_per_interval < 2) throw std::invalid_argument("need at least 2 samples per interval");
  if (n_knots < 1) throw std::invalid_argument("need at least one knot interval");

  const auto adv = build_adversarial(delta, n_knots);
  const auto& knots = adv->knots();

  std::vector<FigureRow> rows;
  rows.reserve(n_knots * samples_per_interval + 1);
  auto push = [&](double x) {
    const HValue hv = adv->h_eval(x);
    const double g = 0.5 * x * x;
    rows.push_back({x, g - hv.value, g, hv.value});
  };
  for (std::size_t k = n_knots; k-- > 0;) {
    const double left = knots[k + 1];
    const double width = knots[k] - left;
    for (std::size_t s = 0; s < samples_per_interval; ++s)
      push(left + width * static_cast<double>(s) / static_cast<double>(samples_per_interval));
  }
  push(0.0);
  return rows;
}

void write_figure_csv(const std::vector<FigureRow>& rows, std::ostream& out) {
  out << "x,f,g,h\n";
  for (const auto& r : rows)
    out << format_double(r.x) << ',' << format_double(r.f) << ',' << format_double(r.g) << ','
        << format_double(r.h) << '\n';
}

}  // namespace dclab
