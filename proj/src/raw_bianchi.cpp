#include "ahg/raw_bianchi.hpp"

#include "ahg/manifold_zoo.hpp"

namespace ahg {

namespace {

// Quadratic polynomial field centred at p.
RealVectorField random_field(const Point& p, Rng& rng) {
  const int dim = static_cast<int>(p.size());
  RealVector c0(dim);
  Eigen::MatrixXd c1(dim, dim);
  std::vector<Eigen::MatrixXd> c2(static_cast<std::size_t>(dim),
                                  Eigen::MatrixXd(dim, dim));
  for (int k = 0; k < dim; ++k) c0[k] = rng.uniform(-1.0, 1.0);
  for (int k = 0; k < dim; ++k) {
    for (int a = 0; a < dim; ++a) c1(k, a) = rng.uniform(-1.0, 1.0);
  }
  for (auto& q : c2) {
    for (int a = 0; a < dim; ++a) {
      for (int b = 0; b < dim; ++b) q(a, b) = rng.uniform(-1.0, 1.0);
    }
  }
  return [p, c0, c1, c2](const Point& q) {
    const RealVector d = q - p;
    RealVector v = c0 + c1 * d;
    for (std::size_t k = 0; k < c2.size(); ++k) {
      v[static_cast<Eigen::Index>(k)] += 0.5 * d.dot(c2[k] * d);
    }
    return v;
  };
}

RealVectorField constant_field(const RealVector& v) {
  return [v](const Point&) { return v; };
}

class Calculus {
 public:
  Calculus(const UnitaryFrameField& F, const StepLadder& steps)
      : F_(F), chart_(F.structure().chart), steps_(steps) {}

  const Chart& chart() const { return chart_; }
  const StepLadder& steps() const { return steps_; }

  // `cfg` differentiates Y; the Christoffel matrices always use steps.first.
  RealVector nabla(const RealVectorField& X, const RealVectorField& Y,
                   const Point& q, const FDConfig& cfg) const {
    const RealVector x = X(q);
    RealVector out = directional_derivative(Y, chart_, q, x, cfg);
    const auto C = coordinate_christoffel(F_, q, steps_.first);
    const RealVector y = Y(q);
    for (int a = 0; a < chart_.dim(); ++a) out += x[a] * (C[a] * y);
    return out;
  }

  RealVectorField nabla_field(RealVectorField X, RealVectorField Y,
                              FDConfig cfg) const {
    return [this, X, Y, cfg](const Point& q) { return nabla(X, Y, q, cfg); };
  }

  RealVectorField bracket_field(RealVectorField X, RealVectorField Y,
                                FDConfig cfg) const {
    return [this, X, Y, cfg](const Point& q) {
      return lie_bracket(X, Y, chart_, q, cfg);
    };
  }

  RealVector torsion(const RealVectorField& X, const RealVectorField& Y,
                     const Point& q, const FDConfig& cfg) const {
    return nabla(X, Y, q, cfg) - nabla(Y, X, q, cfg) -
           lie_bracket(X, Y, chart_, q, cfg);
  }

  RealVectorField torsion_field(RealVectorField X, RealVectorField Y,
                                FDConfig cfg) const {
    return [this, X, Y, cfg](const Point& q) { return torsion(X, Y, q, cfg); };
  }

  // X, Y, Z polynomial or constant: inner derivatives at steps.first,
  // outer derivatives at steps.second.
  RealVector curvature(const RealVectorField& X, const RealVectorField& Y,
                       const RealVectorField& Z, const Point& q) const {
    const FDConfig& c1 = steps_.first;
    const FDConfig& c2 = steps_.second;
    return nabla(X, nabla_field(Y, Z, c1), q, c2) -
           nabla(Y, nabla_field(X, Z, c1), q, c2) -
           nabla(bracket_field(X, Y, c1), Z, q, c1);
  }

  double metric(const Point& q, const RealVector& u, const RealVector& v) const {
    return u.dot(F_.structure().g(q) * v);
  }

 private:
  const UnitaryFrameField& F_;
  const Chart& chart_;
  StepLadder steps_;
};

}  // namespace

void raw_first_bianchi(const UnitaryFrameField& F, const Point& p,
                       const StepLadder& steps, std::uint64_t seed,
                       ResidualTracker& out) {
  const Calculus calc(F, steps);
  Rng rng(seed);
  const RealVectorField X = random_field(p, rng);
  const RealVectorField Y = random_field(p, rng);
  const RealVectorField Z = random_field(p, rng);
  const FDConfig& c1 = steps.first;
  const FDConfig& c2 = steps.second;

  const RealVector lhs = calc.curvature(X, Y, Z, p) +
                         calc.curvature(Y, Z, X, p) +
                         calc.curvature(Z, X, Y, p);

  // (nabla_A tau)(B, C) - tau(A, tau(B, C)) at p.
  auto term = [&](const RealVectorField& A, const RealVectorField& B,
                  const RealVectorField& C) {
    const RealVectorField tBC = calc.torsion_field(B, C, c1);
    const RealVectorField nAB = calc.nabla_field(A, B, c1);
    const RealVectorField nAC = calc.nabla_field(A, C, c1);
    return RealVector(calc.nabla(A, tBC, p, c2) - calc.torsion(nAB, C, p, c2) -
                      calc.torsion(B, nAC, p, c2) - calc.torsion(A, tBC, p, c2));
  };
  const RealVector rhs = term(X, Y, Z) + term(Y, Z, X) + term(Z, X, Y);
  for (int k = 0; k < lhs.size(); ++k) out.add(lhs[k], rhs[k], {k});
}

void raw_second_bianchi(const UnitaryFrameField& F, const Point& p,
                        const StepLadder& steps, std::uint64_t seed,
                        ResidualTracker& out) {
  const Calculus calc(F, steps);
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const RealVectorField X = random_field(p, rng);
  const RealVectorField Y = random_field(p, rng);
  const RealVectorField U = random_field(p, rng);
  const RealVectorField V = random_field(p, rng);
  const RealVectorField W = random_field(p, rng);
  const FDConfig& c1 = steps.first;
  const FDConfig& c3 = steps.third;

  auto R4 = [&](const RealVectorField& A, const RealVectorField& B,
                const RealVectorField& C, const RealVectorField& D,
                const Point& q) {
    return calc.metric(q, calc.curvature(C, D, A, q), B(q));
  };
  // Derived fields enter R4 through constant extensions of their value at
  // p; R4 is tensorial so this does not change the result.
  auto at_p = [&](const RealVector& v) { return constant_field(v); };

  auto nabla_R = [&](const RealVectorField& Wf, const RealVectorField& A,
                     const RealVectorField& B, const RealVectorField& C,
                     const RealVectorField& D) {
    const RealVectorField scalar = [&](const Point& q) {
      RealVector s(1);
      s[0] = R4(A, B, C, D, q);
      return s;
    };
    const double dW =
        directional_derivative(scalar, calc.chart(), p, Wf(p), c3)[0];
    auto nW = [&](const RealVectorField& Z) {
      return at_p(calc.nabla(Wf, Z, p, c1));
    };
    return dW - R4(nW(A), B, C, D, p) - R4(A, nW(B), C, D, p) -
           R4(A, B, nW(C), D, p) - R4(A, B, C, nW(D), p);
  };

  const double lhs = nabla_R(W, X, Y, U, V) + nabla_R(U, X, Y, V, W) +
                     nabla_R(V, X, Y, W, U);
  auto tau_at = [&](const RealVectorField& A, const RealVectorField& B) {
    return at_p(calc.torsion(A, B, p, c1));
  };
  const double rhs = -(R4(X, Y, tau_at(U, V), W, p) +
                       R4(X, Y, tau_at(V, W), U, p) +
                       R4(X, Y, tau_at(W, U), V, p));
  out.add(lhs, rhs, {});
}

}  // namespace ahg
