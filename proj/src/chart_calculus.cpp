#include "ahg/chart_calculus.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace ahg {

namespace {

std::string margin_message(const std::string& chart, int axis, double margin) {
  std::ostringstream os;
  os << "stencil leaves chart '" << chart << "' along axis " << axis
     << " (required margin " << margin << ")";
  return os.str();
}

}  // namespace

BoundaryMarginError::BoundaryMarginError(const std::string& chart, int axis,
                                         double margin)
    : GeometryError(margin_message(chart, axis, margin)), axis_(axis) {}

Chart::Chart(int dim, std::string label, Predicate contains)
    : dim_(dim), label_(std::move(label)), contains_(std::move(contains)) {
  if (dim < 2 || dim % 2 != 0) {
    throw GeometryError("chart dimension must be even and >= 2, got " +
                        std::to_string(dim));
  }
  if (!contains_) throw GeometryError("chart '" + label_ + "' has no domain");
}

Chart Chart::box(int dim, double lo, double hi, std::string label) {
  return Chart(dim, std::move(label), [lo, hi](const Point& p) {
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      if (!(p[i] > lo && p[i] < hi)) return false;
    }
    return true;
  });
}

Chart Chart::whole_space(int dim, std::string label) {
  return Chart(dim, std::move(label), [](const Point& p) {
    return p.allFinite();
  });
}

bool Chart::contains(const Point& p) const {
  return p.size() == dim_ && contains_(p);
}

const char* to_string(FDScheme scheme) {
  return scheme == FDScheme::Central2 ? "central-2" : "central-4";
}

FDScheme scheme_from_string(const std::string& name) {
  if (name == "central-2") return FDScheme::Central2;
  if (name == "central-4") return FDScheme::Central4;
  throw GeometryError("unknown finite-difference scheme '" + name + "'");
}

void FDConfig::validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw GeometryError("finite-difference step must be positive");
  }
}

FDConfig FDConfig::scaled(double factor) const {
  FDConfig out = *this;
  out.step *= factor;
  return out;
}

void check_margin(const Chart& chart, const Point& p, int axis, double step) {
  if (axis < 0 || axis >= chart.dim()) {
    throw GeometryError("axis " + std::to_string(axis) + " out of range");
  }
  const double margin = 2.0 * step;
  Point q = p;
  q[axis] = p[axis] + margin;
  const bool up = chart.contains(q);
  q[axis] = p[axis] - margin;
  const bool down = chart.contains(q);
  if (!up || !down || !chart.contains(p)) {
    throw BoundaryMarginError(chart.label(), axis, margin);
  }
}

RealVector directional_derivative(const RealVectorField& f, const Chart& chart,
                                  const Point& p, const RealVector& v,
                                  const FDConfig& cfg) {
  RealVector out;
  for (int a = 0; a < chart.dim(); ++a) {
    RealVector d = partial_derivative(f, chart, p, a, cfg);
    if (a == 0) {
      out = v[a] * d;
    } else {
      out += v[a] * d;
    }
  }
  return out;
}

RealVector lie_bracket(const RealVectorField& X, const RealVectorField& Y,
                       const Chart& chart, const Point& p,
                       const FDConfig& cfg) {
  const RealVector x = X(p);
  const RealVector y = Y(p);
  return directional_derivative(Y, chart, p, x, cfg) -
         directional_derivative(X, chart, p, y, cfg);
}

}  // namespace ahg
