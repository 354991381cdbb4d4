#include "ahg/complex_frame.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ahg {

namespace {

constexpr cplx kI{0.0, 1.0};

std::string pivot_message(int index, double pivot) {
  std::ostringstream os;
  os << "degenerate seed basis: Gram-Schmidt pivot " << pivot
     << " below threshold at seed index " << index;
  return os.str();
}

// Gram-Schmidt of the (1,0)-projections of `seeds`; returns the smallest
// pivot and fills `out` when non-null. Throws on a degenerate pivot only when
// `throw_on_degenerate` is set.
double orthonormalize(const Eigen::MatrixXd& J, const Eigen::MatrixXd& g,
                      std::span<const ComplexVector> seeds,
                      Eigen::MatrixXcd* out, bool throw_on_degenerate) {
  const auto dim = J.rows();
  const Eigen::MatrixXcd Jc = J.cast<cplx>();
  const Eigen::MatrixXcd gc = g.cast<cplx>();
  std::vector<ComplexVector> basis;
  basis.reserve(seeds.size());
  double min_pivot = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < seeds.size(); ++k) {
    ComplexVector u = 0.5 * (seeds[k] - kI * (Jc * seeds[k]));
    for (const auto& e : basis) {
      // Hermitian product h(u, e) = u^T g conj(e).
      const cplx coeff = u.transpose() * gc * e.conjugate();
      u -= coeff * e;
    }
    const double norm2 = (u.transpose() * gc * u.conjugate())(0).real();
    const double pivot = std::sqrt(std::max(norm2, 0.0));
    min_pivot = std::min(min_pivot, pivot);
    if (pivot < UnitaryFrameField::kMinPivot) {
      if (throw_on_degenerate) {
        throw DegenerateSeedError(static_cast<int>(k), pivot);
      }
      return pivot;
    }
    basis.push_back(u / pivot);
  }
  if (out != nullptr) {
    out->resize(dim, static_cast<Eigen::Index>(basis.size()));
    for (std::size_t k = 0; k < basis.size(); ++k) {
      out->col(static_cast<Eigen::Index>(k)) = basis[k];
    }
  }
  return min_pivot;
}

}  // namespace

StructureDiagnostics check_structure(const ChartedStructure& s, const Point& p,
                                     double tol) {
  if (!s.chart.contains(p)) {
    throw GeometryError("point outside chart '" + s.chart.label() + "'");
  }
  const Eigen::MatrixXd J = s.J(p);
  const Eigen::MatrixXd g = s.g(p);
  const auto dim = s.dim();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(dim, dim);

  StructureDiagnostics d;
  d.j_squared = (J * J + I).cwiseAbs().maxCoeff();
  d.g_symmetry = (g - g.transpose()).cwiseAbs().maxCoeff();
  const Eigen::MatrixXd sym = 0.5 * (g + g.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym,
                                                     Eigen::EigenvaluesOnly);
  d.spd_margin = eig.eigenvalues().minCoeff();
  d.definite = d.spd_margin > 0.0;
  d.compatibility = (J.transpose() * g * J - g).cwiseAbs().maxCoeff();
  d.pass = d.definite && d.j_squared < tol && d.g_symmetry < tol &&
           d.compatibility < tol;
  return d;
}

TypeParts type_decompose(const ComplexVector& v, const ChartedStructure& s,
                         const Point& p) {
  const Eigen::MatrixXcd Jc = s.J(p).cast<cplx>();
  const ComplexVector Jv = Jc * v;
  return {0.5 * (v - kI * Jv), 0.5 * (v + kI * Jv)};
}

cplx metric_pairing(const Eigen::MatrixXd& g, const ComplexVector& u,
                    const ComplexVector& v) {
  return (u.transpose() * g.cast<cplx>() * v)(0);
}

DegenerateSeedError::DegenerateSeedError(int index, double pivot)
    : GeometryError(pivot_message(index, pivot)), index_(index) {}

UnitaryFrameField::UnitaryFrameField(ChartedStructure structure,
                                     std::vector<ComplexVector> seeds)
    : structure_(std::move(structure)), seeds_(std::move(seeds)) {
  if (static_cast<int>(seeds_.size()) != structure_.n()) {
    throw GeometryError("seed basis must contain exactly n vectors");
  }
  for (const auto& s : seeds_) {
    if (s.size() != structure_.dim()) {
      throw GeometryError("seed vector has wrong dimension");
    }
  }
}

Eigen::MatrixXcd UnitaryFrameField::holomorphic(const Point& p) const {
  Eigen::MatrixXcd out;
  orthonormalize(structure_.J(p), structure_.g(p), seeds_, &out, true);
  return out;
}

Eigen::MatrixXcd UnitaryFrameField::full(const Point& p) const {
  const Eigen::MatrixXcd e = holomorphic(p);
  const auto n = e.cols();
  Eigen::MatrixXcd out(e.rows(), 2 * n);
  out.leftCols(n) = e;
  out.rightCols(n) = e.conjugate();
  return out;
}

UnitaryFrameField unitary_frame(const ChartedStructure& s,
                                std::span<const Point> region) {
  if (region.empty()) throw GeometryError("frame region is empty");
  const int dim = s.dim();
  std::vector<Eigen::MatrixXd> Js, gs;
  for (const auto& p : region) {
    Js.push_back(s.J(p));
    gs.push_back(s.g(p));
  }
  std::vector<ComplexVector> seeds;
  std::vector<bool> used(static_cast<std::size_t>(dim), false);
  for (int k = 0; k < s.n(); ++k) {
    int best_axis = -1;
    double best_pivot = -1.0;
    for (int a = 0; a < dim; ++a) {
      if (used[static_cast<std::size_t>(a)]) continue;
      auto trial = seeds;
      trial.push_back(ComplexVector::Unit(dim, a));
      double worst = std::numeric_limits<double>::infinity();
      for (std::size_t q = 0; q < Js.size(); ++q) {
        worst = std::min(worst,
                         orthonormalize(Js[q], gs[q], trial, nullptr, false));
      }
      // Strict comparison keeps the lowest axis on ties.
      if (worst > best_pivot + 1e-12) {
        best_pivot = worst;
        best_axis = a;
      }
    }
    if (best_axis < 0 || best_pivot < UnitaryFrameField::kMinPivot) {
      throw DegenerateSeedError(k, std::max(best_pivot, 0.0));
    }
    used[static_cast<std::size_t>(best_axis)] = true;
    seeds.push_back(ComplexVector::Unit(dim, best_axis));
  }
  return UnitaryFrameField(s, std::move(seeds));
}

UnitaryFrameField unitary_frame(const ChartedStructure& s,
                                std::vector<ComplexVector> seeds) {
  return UnitaryFrameField(s, std::move(seeds));
}

double unitarity_residual(const UnitaryFrameField& frame, const Point& p) {
  const auto& s = frame.structure();
  const Eigen::MatrixXcd e = frame.holomorphic(p);
  const Eigen::MatrixXcd gc = s.g(p).cast<cplx>();
  const Eigen::MatrixXcd gram = e.transpose() * gc * e.conjugate();
  const auto n = e.cols();
  double worst =
      (gram - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  const Eigen::MatrixXcd Je = s.J(p).cast<cplx>() * e;
  worst = std::max(worst, (Je - kI * e).cwiseAbs().maxCoeff());
  return worst;
}

RealVector nijenhuis(const ChartedStructure& s, const RealVectorField& X,
                     const RealVectorField& Y, const Point& p,
                     const FDConfig& cfg) {
  const auto& chart = s.chart;
  RealVectorField JX = [&](const Point& q) -> RealVector { return s.J(q) * X(q); };
  RealVectorField JY = [&](const Point& q) -> RealVector { return s.J(q) * Y(q); };
  const Eigen::MatrixXd J = s.J(p);
  return lie_bracket(JX, JY, chart, p, cfg) -
         J * lie_bracket(JX, Y, chart, p, cfg) -
         J * lie_bracket(X, JY, chart, p, cfg) -
         lie_bracket(X, Y, chart, p, cfg);
}

CTensor nijenhuis_components(const UnitaryFrameField& frame, const Point& p,
                             const FDConfig& cfg) {
  const auto& s = frame.structure();
  const int n = s.n();
  const int m = 2 * n;
  const Eigen::MatrixXcd E = frame.full(p);
  const Eigen::MatrixXd g = s.g(p);

  auto part = [&frame](int A, bool imag) -> RealVectorField {
    return [&frame, A, imag](const Point& q) -> RealVector {
      const Eigen::MatrixXcd Eq = frame.full(q);
      return imag ? RealVector(Eq.col(A).imag()) : RealVector(Eq.col(A).real());
    };
  };

  CTensor out(m, 3);
  for (int A = 0; A < m; ++A) {
    for (int B = 0; B < m; ++B) {
      const RealVectorField ar = part(A, false), ai = part(A, true);
      const RealVectorField br = part(B, false), bi = part(B, true);
      const RealVector rr = nijenhuis(s, ar, br, p, cfg);
      const RealVector ii = nijenhuis(s, ai, bi, p, cfg);
      const RealVector ri = nijenhuis(s, ar, bi, p, cfg);
      const RealVector ir = nijenhuis(s, ai, br, p, cfg);
      const ComplexVector N = (rr - ii).cast<cplx>() + kI * (ri + ir).cast<cplx>();
      for (int C = 0; C < m; ++C) {
        out(A, B, C) = metric_pairing(g, N, E.col(conj_index(C, n)));
      }
    }
  }
  return out;
}

double fundamental_form(const ChartedStructure& s, const Point& p,
                        const RealVector& X, const RealVector& Y) {
  return (s.J(p) * X).dot(s.g(p) * Y);
}

}  // namespace ahg
