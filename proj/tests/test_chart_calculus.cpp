#include "ahg/chart_calculus.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace ahg;

namespace {

Point pt(std::initializer_list<double> v) {
  Point p(static_cast<Eigen::Index>(v.size()));
  Eigen::Index k = 0;
  for (double x : v) p[k++] = x;
  return p;
}

}  // namespace

TEST_CASE("central differences of smooth functions") {
  const Chart c = Chart::whole_space(2, "plane");
  const Point p = pt({0.3, -0.7});
  auto f = [](const Point& q) { return std::sin(q[0]) * std::exp(q[1]); };
  const double exact = std::cos(0.3) * std::exp(-0.7);

  FDConfig c4;
  CHECK(std::abs(partial_derivative(f, c, p, 0, c4) - exact) < 1e-11);

  FDConfig c2;
  c2.scheme = FDScheme::Central2;
  c2.step = 1e-2;
  const double e1 = std::abs(partial_derivative(f, c, p, 0, c2) - exact);
  c2.step = 5e-3;
  const double e2 = std::abs(partial_derivative(f, c, p, 0, c2) - exact);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.02));

  c2.step = 1e-2;
  c2.richardson = true;
  CHECK(std::abs(partial_derivative(f, c, p, 0, c2) - exact) < e1 * 1e-3);
}

TEST_CASE("central-4 is exact on quartics") {
  const Chart c = Chart::whole_space(2, "plane");
  auto f = [](const Point& q) {
    const double x = q[0];
    return 3.0 * x * x * x * x - x * x * x + 2.0 * x;
  };
  FDConfig cfg;
  cfg.step = 0.1;
  const Point p = pt({0.4, 0.0});
  const double exact = 12.0 * 0.064 - 3.0 * 0.16 + 2.0;
  CHECK(partial_derivative(f, c, p, 0, cfg) == doctest::Approx(exact).epsilon(1e-12));
}

TEST_CASE("vector-valued partials and directional derivatives") {
  const Chart c = Chart::whole_space(2, "plane");
  RealVectorField F = [](const Point& q) {
    RealVector v(2);
    v << q[0] * q[1], q[1] * q[1];
    return v;
  };
  const Point p = pt({1.0, 2.0});
  const auto d = axis_partials(F, c, p, FDConfig{});
  REQUIRE(d.size() == 2);
  CHECK(d[0][0] == doctest::Approx(2.0));
  CHECK(d[1][0] == doctest::Approx(1.0));
  CHECK(d[1][1] == doctest::Approx(4.0));
  RealVector v(2);
  v << 1.0, -1.0;
  const RealVector dv = directional_derivative(F, c, p, v, FDConfig{});
  CHECK(dv[0] == doctest::Approx(1.0));
  CHECK(dv[1] == doctest::Approx(-4.0));
}

TEST_CASE("lie bracket of coordinate fields") {
  const Chart c = Chart::whole_space(2, "plane");
  RealVectorField X = [](const Point&) {
    RealVector v(2);
    v << 1.0, 0.0;
    return v;
  };
  RealVectorField Y = [](const Point& q) {
    RealVector v(2);
    v << 0.0, q[0];
    return v;
  };
  const Point p = pt({0.2, 0.5});
  const RealVector b = lie_bracket(X, Y, c, p, FDConfig{});
  CHECK(b[0] == doctest::Approx(0.0));
  CHECK(b[1] == doctest::Approx(1.0));
  const RealVector r = lie_bracket(Y, X, c, p, FDConfig{});
  CHECK((b + r).norm() < 1e-12);
}

TEST_CASE("stencils must stay inside the chart") {
  const Chart box = Chart::box(2, -1.0, 1.0, "box");
  CHECK(box.contains(pt({0.0, 0.0})));
  CHECK_FALSE(box.contains(pt({1.0, 0.0})));
  auto f = [](const Point& q) { return q[0]; };
  FDConfig cfg;
  cfg.step = 0.1;
  const Point near = pt({0.0, 0.85});
  CHECK_NOTHROW(partial_derivative(f, box, near, 0, cfg));
  try {
    partial_derivative(f, box, near, 1, cfg);
    FAIL("expected BoundaryMarginError");
  } catch (const BoundaryMarginError& e) {
    CHECK(e.axis() == 1);
  }
}

TEST_CASE("fd configuration validation") {
  FDConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.step = 0.0;
  CHECK_THROWS_AS(cfg.validate(), GeometryError);
  cfg.step = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(cfg.validate(), GeometryError);
  cfg.step = 1e-3;
  CHECK(cfg.scaled(0.5).step == doctest::Approx(5e-4));
  CHECK(cfg.reach() == doctest::Approx(2e-3));
  CHECK(scheme_from_string(to_string(FDScheme::Central2)) == FDScheme::Central2);
  CHECK(scheme_from_string(to_string(FDScheme::Central4)) == FDScheme::Central4);
  CHECK_THROWS_AS(scheme_from_string("forward"), GeometryError);
}
