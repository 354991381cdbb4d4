#include "ahg/complex_frame.hpp"
#include "ahg/connections.hpp"
#include "ahg/manifold_zoo.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace ahg;

TEST_CASE("zoo structures are valid almost Hermitian structures") {
  for (const auto& d : zoo_catalog()) {
    CAPTURE(d.name);
    const ZooEntry e = test::entry(d.name);
    for (const auto& p : sample_points(e, 4, 3)) {
      const StructureDiagnostics diag = check_structure(e.structure, p, 1e-8);
      CHECK(diag.pass);
      CHECK(diag.j_squared < 1e-10);
      CHECK(diag.compatibility < 1e-10);
      CHECK(diag.definite);
    }
  }
}

TEST_CASE("a non-complex J is rejected with diagnostics") {
  const ZooEntry flat = flat_cn(1);
  ChartedStructure bad = flat.structure;
  bad.J = [](const Point&) {
    Eigen::MatrixXd J(2, 2);
    J << 0.0, -2.0, 1.0, 0.0;
    return J;
  };
  const StructureDiagnostics d = check_structure(bad, Point::Zero(2), 1e-8);
  CHECK_FALSE(d.pass);
  CHECK(d.j_squared > 0.5);

  ChartedStructure incompatible = flat.structure;
  incompatible.g = [](const Point&) {
    Eigen::MatrixXd g(2, 2);
    g << 2.0, 0.0, 0.0, 1.0;
    return g;
  };
  const StructureDiagnostics d2 =
      check_structure(incompatible, Point::Zero(2), 1e-8);
  CHECK_FALSE(d2.pass);
  CHECK(d2.compatibility > 0.5);
}

TEST_CASE("unitary frame is unitary and of type (1,0)") {
  for (const char* name : {"round_s2", "s6_nearly_kahler", "hopf_surface", "random_torus"}) {
    CAPTURE(name);
    test::Fixture f(test::entry(name), 5);
    for (const auto& p : f.points) CHECK(unitarity_residual(f.frame, p) < 1e-12);
  }
}

TEST_CASE("type decomposition splits into J eigenvectors") {
  const ZooEntry e = test::entry("random_torus");
  const Point p = sample_points(e, 1, 9)[0];
  ComplexVector v(4);
  v << cplx(1.0, 0.5), cplx(-0.3, 0.0), cplx(0.2, -1.0), cplx(0.7, 0.1);
  const TypeParts t = type_decompose(v, e.structure, p);
  const Eigen::MatrixXcd J = e.structure.J(p).cast<cplx>();
  CHECK((t.v10 + t.v01 - v).norm() < 1e-12);
  CHECK((J * t.v10 - cplx(0.0, 1.0) * t.v10).norm() < 1e-12);
  CHECK((J * t.v01 + cplx(0.0, 1.0) * t.v01).norm() < 1e-12);
}

TEST_CASE("dependent seeds raise DegenerateSeedError") {
  const ZooEntry e = flat_cn(2);
  ComplexVector s(4);
  s << 1.0, 0.0, 0.0, 0.0;
  CHECK_THROWS_AS(
      {
        const UnitaryFrameField F = unitary_frame(e.structure, {s, s});
        (void)F.full(Point::Zero(4));
      },
      DegenerateSeedError);
  // x_1 and y_1 span the same complex line.
  ComplexVector y(4);
  y << 0.0, 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(
      {
        const UnitaryFrameField F = unitary_frame(e.structure, {s, y});
        (void)F.full(Point::Zero(4));
      },
      DegenerateSeedError);
}

TEST_CASE("Nijenhuis tensor vanishes for integrable J") {
  for (const char* name : {"flat_cn", "round_s2", "hopf_surface"}) {
    CAPTURE(name);
    test::Fixture f(test::entry(name), 3);
    for (const auto& p : f.points) {
      CHECK(nijenhuis_components(f.frame, p, FDConfig{}).max_abs() < 1e-9);
    }
  }
}

TEST_CASE("Nijenhuis tensor equals 4 tau^(0,1) on holomorphic pairs") {
  for (const char* name : {"s6_nearly_kahler", "random_torus"}) {
    CAPTURE(name);
    test::Fixture f(test::entry(name), 2);
    const int n = f.e.structure.n();
    for (const auto& p : f.points) {
      const CTensor N = nijenhuis_components(f.frame, p, FDConfig{});
      const FirstOrderTables t = first_order_tables(f.frame, p, FDConfig{});
      CHECK(N.max_abs() > 0.1);
      for_each_index(3, n, [&](std::span<const int> x) {
        const int i = x[0], j = x[1], k = x[2];
        CHECK(std::abs(N(i, j, k + n) - 4.0 * t.torsion(i, j, k + n)) < 1e-8);
        CHECK(std::abs(N(i, j, k)) < 1e-8);
        CHECK(std::abs(N(i, j + n, k)) < 1e-8);
        CHECK(std::abs(N(i, j + n, k + n)) < 1e-8);
      });
    }
  }
}

TEST_CASE("real Nijenhuis of coordinate fields on S^6 is J-anti-linear") {
  const ZooEntry e = s6_nearly_kahler();
  const Point p = sample_points(e, 1, 5)[0];
  auto axis = [](int a) {
    return RealVectorField([a](const Point&) {
      RealVector v = RealVector::Zero(6);
      v[a] = 1.0;
      return v;
    });
  };
  const RealVector N01 = nijenhuis(e.structure, axis(0), axis(1), p, FDConfig{});
  const RealVector N10 = nijenhuis(e.structure, axis(1), axis(0), p, FDConfig{});
  CHECK(N01.norm() > 0.1);
  CHECK((N01 + N10).norm() < 1e-9);
  // N(JX, Y) = -J N(X, Y) for any almost complex structure.
  const Eigen::MatrixXd J = e.structure.J(p);
  const RealVectorField JX = [&](const Point& q) {
    return RealVector(e.structure.J(q).col(0));
  };
  const RealVector NJ = nijenhuis(e.structure, JX, axis(1), p, FDConfig{});
  CHECK((NJ + J * N01).norm() < 1e-8);
}

TEST_CASE("fundamental form is skew") {
  const ZooEntry e = test::entry("random_torus");
  const Point p = sample_points(e, 1, 2)[0];
  RealVector X(4), Y(4);
  X << 1.0, 2.0, -0.5, 0.3;
  Y << -0.2, 0.4, 1.1, 0.0;
  CHECK(fundamental_form(e.structure, p, X, Y) ==
        doctest::Approx(-fundamental_form(e.structure, p, Y, X)));
  CHECK(std::abs(fundamental_form(e.structure, p, X, X)) < 1e-14);
}
