#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "dclab/adversarial.hpp"
#include "dclab/io.hpp"
#include "oracles.hpp"

using namespace dclab;

namespace {

Trajectory random_trajectory(std::mt19937_64& rng, std::size_t n, std::size_t dim) {
  // Wide exponent range so every bit of the mantissa matters.
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-300, 300);
  auto draw = [&] { return std::ldexp(mant(rng), expo(rng)); };
  Trajectory t;
  for (std::size_t k = 0; k < n; ++k) {
    IterateRecord r;
    r.k = k;
    r.x.resize(dim);
    for (auto& xi : r.x) xi = draw();
    r.f = draw();
    r.g = draw();
    r.h = draw();
    r.grad_f_norm = std::abs(draw());
    r.step_norm = std::abs(draw());
    t.records.push_back(r);
  }
  t.terminated_by = Termination::domain_exhausted;
  return t;
}

}  // namespace

TEST_CASE("trajectory CSV and JSON round trips are lossless") {
  auto rng = testing::seeded_rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto dim = static_cast<std::size_t>(1 + trial % 3);
    const auto traj = random_trajectory(rng, 1 + static_cast<std::size_t>(trial), dim);

    std::stringstream csv;
    write_trajectory_csv(traj, csv);
    const auto back = read_trajectory(csv);
    REQUIRE(back.size() == traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k) {
      CHECK(back[k].k == k);
      CHECK(back[k].x == traj[k].x);
      CHECK(back[k].f == traj[k].f);
      CHECK(back[k].grad_f_norm == traj[k].grad_f_norm);
      CHECK(back[k].step_norm == traj[k].step_norm);
      CHECK(std::isnan(back[k].g));
    }

    std::stringstream js;
    write_trajectory_json(traj, js);
    const auto jback = read_trajectory(js);
    REQUIRE(jback.size() == traj.size());
    CHECK(jback.terminated_by == traj.terminated_by);
    for (std::size_t k = 0; k < traj.size(); ++k) {
      CHECK(jback[k].x == traj[k].x);
      CHECK(jback[k].g == traj[k].g);
      CHECK(jback[k].h == traj[k].h);
      CHECK(jback[k].f == traj[k].f);
    }
  }
}

TEST_CASE("trajectory CSV layout") {
  Trajectory t;
  t.records.push_back({0, {0.5, -2.0}, 0.1, 0.0, 0.0, 1.0, 0.25});
  std::ostringstream os;
  write_trajectory_csv(t, os);
  CHECK(os.str() ==
        "k,x,f,grad_norm,step_norm\n"
        "0,0.5;-2,0.10000000000000001,1,0.25\n");
}

TEST_CASE("malformed trajectory CSV reports the line") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_trajectory_csv(in);
  };
  auto line_of = [&](const std::string& text) -> std::size_t {
    try {
      parse(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("") == 1);
  CHECK(line_of("k,x,f\n") == 1);
  CHECK(line_of("k,x,f,grad_norm,step_norm\n") == 1);
  CHECK(line_of("k,x,f,grad_norm,step_norm\n0,1,2,3,4\n1,1,2,abc,4\n") == 3);
  CHECK(line_of("k,x,f,grad_norm,step_norm\n0,1,2,3\n") == 2);
  CHECK(line_of("k,x,f,grad_norm,step_norm\n1,1,2,3,4\n") == 2);
  CHECK(line_of("k,x,f,grad_norm,step_norm\n0,1,2,-3,4\n") == 2);
  CHECK(line_of("k,x,f,grad_norm,step_norm\n0,1;2,2,3,4\n1,1,2,3,4\n") == 3);
  CHECK_NOTHROW(parse("k,x,f,grad_norm,step_norm\r\n0,1,2,3,4\r\n"));
}

TEST_CASE("figure data") {
  const auto rows = figure_data(0.5, 25, 8);
  REQUIRE(rows.size() == 25 * 8 + 1);
  const auto adv = build_adversarial(0.5, 25);
  CHECK(rows.front().x == adv->knots()[25]);
  CHECK(rows.back().x == 0.0);
  CHECK(rows.back().f == 0.0);
  CHECK(rows.back().g == 0.0);
  CHECK(rows.back().h == 0.0);
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) CHECK(rows[i].x < rows[i + 1].x);
  bool saw_minus_one = false;
  for (const auto& r : rows) {
    CHECK(std::abs(r.f - (r.g - r.h)) <= 1e-12);
    if (r.x == -1.0) {
      saw_minus_one = true;
      CHECK(r.f == doctest::Approx(-0.75).epsilon(1e-15));
      CHECK(r.g == 0.5);
      CHECK(r.h == 1.25);
    }
  }
  CHECK(saw_minus_one);

  CHECK(figure_data(0.5, 3, 2).size() == 7);
  CHECK_THROWS_AS(figure_data(0.5, 25, 1), std::invalid_argument);
  CHECK_THROWS_AS(figure_data(0.0, 25, 4), std::invalid_argument);

  std::ostringstream os;
  write_figure_csv(figure_data(0.5, 1, 2), os);
  CHECK(os.str().rfind("x,f,g,h\n", 0) == 0);
}
