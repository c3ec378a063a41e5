#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "dclab/adversarial.hpp"
#include "dclab/dca.hpp"
#include "oracles.hpp"

using namespace dclab;

TEST_CASE("knot data for delta = 1/2") {
  const auto adv = build_adversarial(0.5, 5);
  const auto& x = adv->knots();
  REQUIRE(x.size() == 7);
  CHECK(x[0] == 0.0);
  CHECK(x[1] == -1.0);
  CHECK(x[2] == -1.5);
  CHECK(adv->curvatures()[0] == 0.5);
  CHECK(adv->h_at_knots()[0] == 0.0);
  CHECK(adv->h_at_knots()[1] == 1.25);
  CHECK(adv->h_at_knots()[2] == doctest::Approx(25.0 / 12.0).epsilon(1e-15));
  CHECK(adv->grad_at_knots()[2] == doctest::Approx(-11.0 / 6.0).epsilon(1e-15));
  CHECK(adv->curvatures().size() == 6);
  CHECK(adv->f_low() == doctest::Approx(-std::numbers::pi * std::numbers::pi / 6.0 - 2.0).epsilon(1e-14));
}

TEST_CASE("x_1 = -1 for any delta") {
  for (double delta : {0.05, 0.1, 0.5, 1.0, 3.0}) CHECK(build_adversarial(delta, 1)->knots()[1] == -1.0);
}

TEST_CASE("invalid construction parameters") {
  CHECK_THROWS_AS(build_adversarial(0.0, 5), std::invalid_argument);
  CHECK_THROWS_AS(build_adversarial(-0.5, 5), std::invalid_argument);
  CHECK_THROWS_AS(build_adversarial(0.5, 0), std::invalid_argument);
}

TEST_CASE("h evaluation examples") {
  const auto adv = build_adversarial(0.5, 10);
  auto v = adv->h_eval(2.0);
  CHECK(v.value == -2.0);
  CHECK(v.grad == -1.0);

  v = adv->h_eval(-0.5);
  CHECK(v.value == doctest::Approx(0.5625).epsilon(1e-15));
  CHECK(v.grad == doctest::Approx(-1.25).epsilon(1e-15));

  v = adv->h_eval(-1.5);
  CHECK(v.value == doctest::Approx(25.0 / 12.0).epsilon(1e-15));
  CHECK(v.grad == doctest::Approx(-11.0 / 6.0).epsilon(1e-15));

  v = adv->h_eval(0.0);
  CHECK(v.value == 0.0);
  CHECK(v.grad == -1.0);
}

TEST_CASE("evaluation below the horizon is an error") {
  const auto adv = build_adversarial(0.5, 4);
  const double lowest = adv->lowest_point();
  CHECK_NOTHROW(adv->h_eval(lowest));
  CHECK_THROWS_AS(adv->h_eval(std::nextafter(lowest, -INFINITY)), HorizonExceeded);
  CHECK_THROWS_AS(adv->h_eval(NAN), DomainError);
}

TEST_CASE("locate picks the piece anchored at an exact knot") {
  const auto adv = build_adversarial(0.5, 6);
  const auto& x = adv->knots();
  for (std::size_t k = 0; k <= 6; ++k) CHECK(adv->locate(x[k]) == k);
  CHECK(adv->locate(x[7]) == 6);
  CHECK(adv->locate(-0.5) == 0);
  CHECK(adv->locate(-1.2) == 1);
}

TEST_CASE("knots and h values against long double recurrences") {
  for (double delta : {0.1, 0.5, 1.0}) {
    CAPTURE(delta);
    const std::size_t horizon = 2000;
    const auto adv = build_adversarial(delta, horizon);
    const auto ref_x = testing::reference_knots(delta, horizon + 2);
    const auto ref_h = testing::reference_h(delta, horizon + 2);
    for (std::size_t k = 0; k < horizon + 2; ++k) {
      const double xk = static_cast<double>(ref_x[k]);
      CHECK(std::abs(adv->knots()[k] - xk) <= 1e-12 * (1.0 + std::abs(xk)));
      const double hk = static_cast<double>(ref_h[k]);
      CHECK(std::abs(adv->h_at_knots()[k] - hk) <= 1e-11 * (1.0 + std::abs(hk)));
    }
  }
}

TEST_CASE("construction invariants") {
  for (double delta : {0.1, 0.5, 1.0}) {
    CAPTURE(delta);
    const std::size_t horizon = 5000;
    const auto adv = build_adversarial(delta, horizon);
    const auto& x = adv->knots();
    const auto& gr = adv->grad_at_knots();
    const auto& c = adv->curvatures();
    const double a = 0.5 + delta;

    for (std::size_t k = 0; k + 1 < x.size(); ++k) {
      CHECK(x[k + 1] < x[k]);
      CHECK(std::abs((x[k] - x[k + 1]) - std::pow(k + 1.0, -a)) <= 1e-12 * (1.0 + std::abs(x[k])));
      CHECK(gr[k] == x[k + 1]);
    }
    for (std::size_t k = 0; k <= horizon; ++k) {
      CHECK(c[k] > 0.0);
      CHECK(c[k] <= 1.0);
      CHECK(1.0 - c[k] > 0.0);
      // Right-limit at x_{k+1} from piece k matches the stored gradient.
      CHECK(std::abs(gr[k] + c[k] * (x[k + 1] - x[k]) - gr[k + 1]) <= 1e-12);
      // Value continuity from the left piece.
      const double dx = x[k + 1] - x[k];
      const double from_piece = adv->h_at_knots()[k] + gr[k] * dx + 0.5 * c[k] * dx * dx;
      CHECK(std::abs(from_piece - adv->h_at_knots()[k + 1]) <=
            1e-12 * (1.0 + std::abs(adv->h_at_knots()[k + 1])));
    }
  }
}

TEST_CASE("gradient continuity across knots from both sides") {
  const auto adv = build_adversarial(0.5, 200);
  const auto& x = adv->knots();
  for (std::size_t k = 1; k <= 200; ++k) {
    const double at = adv->h_eval(x[k]).grad;
    const double left = adv->h_eval(std::nextafter(x[k], -INFINITY)).grad;
    const double right = adv->h_eval(std::nextafter(x[k], INFINITY)).grad;
    CHECK(std::abs(left - at) <= 1e-12);
    CHECK(std::abs(right - at) <= 1e-12);
  }
  CHECK(std::abs(adv->h_eval(std::nextafter(0.0, 1.0)).grad - adv->h_eval(0.0).grad) <= 1e-12);
}

TEST_CASE("grad h is nondecreasing and 1-Lipschitz on sampled points") {
  for (double delta : {0.1, 0.5, 1.0}) {
    CAPTURE(delta);
    const auto adv = build_adversarial(delta, 3000);
    auto rng = testing::seeded_rng(static_cast<std::uint64_t>(delta * 1000));
    std::uniform_real_distribution<double> dist(adv->lowest_point(), 3.0);
    for (int i = 0; i < 20000; ++i) {
      double s = dist(rng), t = dist(rng);
      if (s > t) std::swap(s, t);
      const double gs = adv->h_eval(s).grad, gt = adv->h_eval(t).grad;
      CHECK(gs <= gt);
      CHECK(gt - gs <= (t - s) + 1e-12);
    }
  }
}

TEST_CASE("theoretical gradient norm") {
  CHECK(theoretical_grad_norm(0.5, 0) == 1.0);
  CHECK(theoretical_grad_norm(0.5, 3) == 0.25);
  CHECK(theoretical_grad_norm(0.1, 0) == 1.0);
}

TEST_CASE("riemann_zeta against frozen high-precision values") {
  for (const auto& [s, value] : testing::kZetaTable) {
    CAPTURE(s);
    CHECK(std::abs(riemann_zeta(s) - value) <= 1e-12);
  }
  CHECK(std::abs(riemann_zeta(2.0) - std::numbers::pi * std::numbers::pi / 6.0) <= 1e-12);
  CHECK(std::abs(riemann_zeta(4.0) - std::pow(std::numbers::pi, 4) / 90.0) <= 1e-12);
  CHECK_THROWS_AS(riemann_zeta(1.0), std::invalid_argument);
}

TEST_CASE("riemann_zeta agrees with the standard library special function") {
  for (double s = 1.02; s < 8.0; s += 0.137) {
    CAPTURE(s);
    CHECK(std::abs(riemann_zeta(s) - std::riemann_zeta(s)) <= 1e-12 * std::riemann_zeta(s));
  }
}

TEST_CASE("zeta lower bound") {
  CHECK(zeta_lower_bound(0.5) == doctest::Approx(-3.6449340668482264).epsilon(1e-14));
  CHECK(zeta_lower_bound(1.5) == doctest::Approx(-3.0823232337111382).epsilon(1e-14));
  // mpmath: zeta(1.1) = 10.58444846495080095...
  CHECK(zeta_lower_bound(0.05) == doctest::Approx(-12.584448464950801).epsilon(1e-14));
  CHECK_THROWS_AS(zeta_lower_bound(0.0), std::invalid_argument);
}

TEST_CASE("f stays above the zeta bound on a dense sample") {
  for (double delta : {0.1, 0.5, 1.0}) {
    const auto inst = make_adversarial_dc(delta, 2000);
    const double lo = inst.domain->lower;
    for (int i = 0; i <= 50000; ++i) {
      const double x = lo + (2.0 - lo) * i / 50000.0;
      CHECK(f_value(inst, Point{x}) >= *inst.f_low - 1e-9);
    }
  }
}

TEST_CASE("knot table export") {
  const auto adv = build_adversarial(0.5, 2);
  std::ostringstream os;
  adv->write_knot_table(os);
  const std::string expected =
      "k,x_k,h_k,grad_k,c_k\n"
      "0,0,0,-1,0.5\n"
      "1,-1,1.25,-1.5,0.66666666666666663\n";
  CHECK(os.str().substr(0, expected.size()) == expected);
  // Four data rows plus header; last row has an empty curvature cell.
  const std::string s = os.str();
  CHECK(std::count(s.begin(), s.end(), '\n') == 5);
  CHECK(s.substr(s.size() - 2) == ",\n");
}
