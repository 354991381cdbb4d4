#pragma once

// Levi-Civita and canonical connections in a unitary frame, their torsion,
// curvature and covariant derivatives.
//
// Storage conventions (frame indices 0..2n-1, barred = i+n):
//   gamma(A, C, B)          = Gamma^A_{CB},   D_{E_C} E_B = Gamma^A_{CB} E_A
//   torsion(A, B, C)        = tau_{AB}^C
//   bracket(C, D, A)        = <[E_C, E_D], E_A>
//   curvature(A, B, C, D)   = R_{ABCD} = <R(E_C, E_D) E_A, E_B>
//   dtau(A, B, C, E)        = tau_{AB;E}^C
//   dcurv(A, B, C, D, E)    = R_{ABCD;E}
//
// Derivatives are nested central differences: first-order data uses the
// frame jet, curvature differentiates first-order data, and curvature
// derivatives differentiate curvature.

#include "ahg/chart_calculus.hpp"
#include "ahg/complex_frame.hpp"
#include "ahg/tensor.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ahg {

enum class ConnectionKind { LeviCivita, Canonical };

struct ConnectionData {
  ConnectionKind which = ConnectionKind::Canonical;
  CTensor gamma;
};

/// Step sizes used at each differentiation level.
struct StepLadder {
  FDConfig first;
  FDConfig second;
  FDConfig third;

  static StepLadder from(const FDConfig& base);
  /// Total distance the deepest stencil reaches from its centre.
  double reach() const { return first.reach() + second.reach() + third.reach(); }
};

/// Everything computable from the first jet of the frame and metric.
struct FirstOrderTables {
  int n = 0;
  Eigen::MatrixXcd frame;                   ///< columns E_0..E_{2n-1}
  std::vector<Eigen::MatrixXcd> frame_partials;  ///< d_a of frame, per axis
  Eigen::MatrixXd metric;
  CTensor bracket;             ///< <[E_C,E_D],E_A>
  CTensor metric_derivative;   ///< (C, A, B) -> E_C(g(E_A, E_B))
  ConnectionData levi_civita;
  ConnectionData canonical;
  CTensor torsion;             ///< canonical torsion tau_{AB}^C
  CTensor lc_torsion;          ///< torsion of the Levi-Civita coefficients

  /// c^H_{CD}, the frame component of [E_C, E_D].
  cplx structure_constant(int H, int C, int D) const {
    return bracket(C, D, conj_index(H, n));
  }
};

struct SecondOrderTables {
  CTensor curvature;     ///< canonical R_{ABCD}
  CTensor lc_curvature;  ///< Levi-Civita R^L_{ABCD}
  CTensor dtau;          ///< tau_{AB;E}^C
};

struct RicciScalarTable {
  Eigen::MatrixXcd ricci_first;      ///< R'_{AB}, 2n x 2n
  Eigen::MatrixXcd ricci_second;     ///< R''_{ij-bar}, n x n
  Eigen::MatrixXcd ricci_lc_complex; ///< R^L_{ij-bar}, n x n
  Eigen::MatrixXcd ricci_lc_holo;    ///< R^L_{ij}, n x n
  cplx s_canonical;
  cplx s_star;
};

/// All tables at one point. Higher-order pieces are filled on demand.
struct GeometryTables {
  Point point;
  int n = 0;
  FirstOrderTables first;
  std::optional<SecondOrderTables> second;
  std::optional<RicciScalarTable> ricci;
  std::optional<CTensor> dcurv;  ///< R_{ABCD;E} of the canonical connection
};

enum class TableDepth { First = 1, Second = 2, Third = 3 };

/// Raised when a computation needs a table that was not built.
class DependencyError : public GeometryError {
 public:
  explicit DependencyError(std::string table);
  const std::string& table() const { return table_; }

 private:
  std::string table_;
};

FirstOrderTables first_order_tables(const UnitaryFrameField& F, const Point& p,
                                    const FDConfig& cfg);

ConnectionData levi_civita_coeffs(const UnitaryFrameField& F, const Point& p,
                                  const FDConfig& cfg);
ConnectionData canonical_coeffs(const UnitaryFrameField& F, const Point& p,
                                const FDConfig& cfg);

/// Canonical torsion at p.
CTensor torsion_table(const UnitaryFrameField& F, const Point& p,
                      const FDConfig& cfg);

SecondOrderTables second_order_tables(const UnitaryFrameField& F,
                                      const Point& p, const StepLadder& steps);

/// Canonical curvature and its covariant derivative R_{ABCD;E}.
CTensor curvature_derivatives(const UnitaryFrameField& F, const Point& p,
                              const StepLadder& steps);

RicciScalarTable ricci_scalar_table(int n, const CTensor& curvature,
                                    const CTensor& lc_curvature);

GeometryTables geometry_tables(const UnitaryFrameField& F, const Point& p,
                               const StepLadder& steps, TableDepth depth);

/// max |E_C g_AB - Gamma^{B*}_{CA} - Gamma^{A*}_{CB}|.
double metric_compatibility_residual(const FirstOrderTables& t,
                                     const ConnectionData& conn);

/// max |Gamma^{k-bar}_{C i}| + |Gamma^k_{C i-bar}| for the canonical connection.
double type_preservation_residual(const FirstOrderTables& t);

/// max |tau_{i j-bar}^C| over the mixed components.
double mixed_torsion_residual(const FirstOrderTables& t);

/// Coordinate Christoffel matrices of the canonical connection at p:
/// nabla_{d_a} Y = d_a Y + C[a] Y.
std::vector<Eigen::MatrixXd> coordinate_christoffel(const UnitaryFrameField& F,
                                                    const Point& p,
                                                    const FDConfig& cfg);

}  // namespace ahg
