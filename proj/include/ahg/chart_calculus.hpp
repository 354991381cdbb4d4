#pragma once

// Chart-local calculus: points, fields as black-box functions, central
// finite differences and Lie brackets.

#include <Eigen/Dense>

#include <functional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace ahg {

using Point = Eigen::VectorXd;
using RealVector = Eigen::VectorXd;
using ScalarField = std::function<double(const Point&)>;
using RealVectorField = std::function<RealVector(const Point&)>;
using MatrixField = std::function<Eigen::MatrixXd(const Point&)>;

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a difference stencil would leave the chart domain.
class BoundaryMarginError : public GeometryError {
 public:
  BoundaryMarginError(const std::string& chart, int axis, double margin);
  int axis() const { return axis_; }

 private:
  int axis_;
};

/// A coordinate patch of even real dimension 2n.
class Chart {
 public:
  using Predicate = std::function<bool(const Point&)>;

  Chart(int dim, std::string label, Predicate contains);

  /// Axis-aligned open box (lo, hi)^dim.
  static Chart box(int dim, double lo, double hi, std::string label);
  /// The whole of R^dim.
  static Chart whole_space(int dim, std::string label);

  int dim() const { return dim_; }
  int complex_dim() const { return dim_ / 2; }
  const std::string& label() const { return label_; }
  bool contains(const Point& p) const;

 private:
  int dim_;
  std::string label_;
  Predicate contains_;
};

enum class FDScheme { Central2, Central4 };

const char* to_string(FDScheme scheme);
FDScheme scheme_from_string(const std::string& name);

struct FDConfig {
  double step = 1e-3;
  FDScheme scheme = FDScheme::Central4;
  bool richardson = false;

  void validate() const;
  /// Same scheme with the step multiplied by `factor`.
  FDConfig scaled(double factor) const;
  /// Largest offset a stencil reaches from its centre point.
  double reach() const { return 2.0 * step; }
};

/// Throws BoundaryMarginError unless p +- 2*step along `axis` lies in the chart.
void check_margin(const Chart& chart, const Point& p, int axis, double step);

namespace detail {

template <class F, class Value>
Value central_difference(F& shifted, double h, FDScheme scheme) {
  if (scheme == FDScheme::Central2) {
    Value plus = shifted(h);
    Value minus = shifted(-h);
    return Value((plus - minus) / (2.0 * h));
  }
  Value p2 = shifted(2.0 * h);
  Value p1 = shifted(h);
  Value m1 = shifted(-h);
  Value m2 = shifted(-2.0 * h);
  return Value((8.0 * (p1 - m1) - (p2 - m2)) / (12.0 * h));
}

}  // namespace detail

/// Central-difference estimate of d f / d x^axis at p.
///
/// `f` may return a scalar, a std::complex or any Eigen dense object. With
/// richardson enabled the estimate at step h is combined with the one at h/2,
/// raising central-2 to fourth order and central-4 to sixth order.
template <class F>
auto partial_derivative(F&& f, const Chart& chart, const Point& p, int axis,
                        const FDConfig& cfg) {
  using Value = std::decay_t<decltype(f(p))>;
  cfg.validate();
  check_margin(chart, p, axis, cfg.step);
  auto shifted = [&](double t) -> Value {
    Point q = p;
    q[axis] += t;
    return Value(f(q));
  };
  Value coarse = detail::central_difference<decltype(shifted), Value>(
      shifted, cfg.step, cfg.scheme);
  if (!cfg.richardson) return coarse;
  Value fine = detail::central_difference<decltype(shifted), Value>(
      shifted, 0.5 * cfg.step, cfg.scheme);
  const double gain = cfg.scheme == FDScheme::Central2 ? 4.0 : 16.0;
  return Value((gain * fine - coarse) / (gain - 1.0));
}

/// All coordinate partials of f at p, indexed by axis.
template <class F>
auto axis_partials(F&& f, const Chart& chart, const Point& p,
                   const FDConfig& cfg) {
  using Value = std::decay_t<decltype(f(p))>;
  std::vector<Value> out;
  out.reserve(static_cast<std::size_t>(chart.dim()));
  for (int a = 0; a < chart.dim(); ++a) {
    out.push_back(partial_derivative(f, chart, p, a, cfg));
  }
  return out;
}

/// Directional derivative v^a d_a f at p for a real direction v.
RealVector directional_derivative(const RealVectorField& f, const Chart& chart,
                                  const Point& p, const RealVector& v,
                                  const FDConfig& cfg);

/// [X,Y]^k = X^i d_i Y^k - Y^i d_i X^k.
RealVector lie_bracket(const RealVectorField& X, const RealVectorField& Y,
                       const Chart& chart, const Point& p,
                       const FDConfig& cfg);

}  // namespace ahg
