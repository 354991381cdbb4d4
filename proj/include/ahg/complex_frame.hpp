#pragma once

#include "ahg/chart_calculus.hpp"
#include "ahg/tensor.hpp"

#include <Eigen/Dense>

#include <span>
#include <string>
#include <vector>

namespace ahg {

using ComplexVector = Eigen::VectorXcd;

/// An almost Hermitian structure (J, g) described on a single chart.
struct ChartedStructure {
  Chart chart;
  MatrixField J;
  MatrixField g;
  std::string expected_class;

  int dim() const { return chart.dim(); }
  int n() const { return chart.complex_dim(); }
};

struct StructureDiagnostics {
  double j_squared = 0.0;      ///< max |J^2 + I|
  double g_symmetry = 0.0;     ///< max |g - g^T|
  double spd_margin = 0.0;     ///< smallest eigenvalue of sym(g)
  double compatibility = 0.0;  ///< max |J^T g J - g|
  bool definite = false;
  bool pass = false;
};

StructureDiagnostics check_structure(const ChartedStructure& s, const Point& p,
                                     double tol);

struct TypeParts {
  ComplexVector v10;
  ComplexVector v01;
};

/// Splits v into its (1,0) and (0,1) parts with respect to J(p).
TypeParts type_decompose(const ComplexVector& v, const ChartedStructure& s,
                         const Point& p);

/// g(p) extended complex-bilinearly.
cplx metric_pairing(const Eigen::MatrixXd& g, const ComplexVector& u,
                    const ComplexVector& v);

class DegenerateSeedError : public GeometryError {
 public:
  DegenerateSeedError(int index, double pivot);
  int index() const { return index_; }

 private:
  int index_;
};

/// Smooth local unitary (1,0)-frame obtained from a fixed seed basis.
///
/// At every point the seeds are projected to type (1,0) and orthonormalized
/// by Gram-Schmidt for the Hermitian product g(u, conj v), in seed order.
class UnitaryFrameField {
 public:
  static constexpr double kMinPivot = 1e-8;

  UnitaryFrameField(ChartedStructure structure,
                    std::vector<ComplexVector> seeds);

  int n() const { return structure_.n(); }
  const std::vector<ComplexVector>& seed_basis() const { return seeds_; }
  const ChartedStructure& structure() const { return structure_; }

  /// 2n x n matrix with columns e_1..e_n.
  Eigen::MatrixXcd holomorphic(const Point& p) const;
  /// 2n x 2n matrix with columns e_1..e_n, conj(e_1)..conj(e_n).
  Eigen::MatrixXcd full(const Point& p) const;

 private:
  ChartedStructure structure_;
  std::vector<ComplexVector> seeds_;
};

/// Frame built from coordinate-axis seeds chosen greedily so that the
/// smallest Gram-Schmidt pivot over `region` is as large as possible.
UnitaryFrameField unitary_frame(const ChartedStructure& s,
                                std::span<const Point> region);

/// Frame built from an explicit seed basis (n vectors, real or complex).
UnitaryFrameField unitary_frame(const ChartedStructure& s,
                                std::vector<ComplexVector> seeds);

/// max_{ij} |g(e_i, conj e_j) - delta_ij| together with max |J e_i - i e_i|.
double unitarity_residual(const UnitaryFrameField& frame, const Point& p);

/// N(X,Y) = [JX,JY] - J[JX,Y] - J[X,JY] - [X,Y].
RealVector nijenhuis(const ChartedStructure& s, const RealVectorField& X,
                     const RealVectorField& Y, const Point& p,
                     const FDConfig& cfg);

/// Frame components N_{AB}^C = <N(E_A, E_B), conj E_C> of the Nijenhuis
/// tensor, obtained from the real and imaginary parts of the frame fields.
CTensor nijenhuis_components(const UnitaryFrameField& frame, const Point& p,
                             const FDConfig& cfg);

/// omega(X, Y) = g(JX, Y).
double fundamental_form(const ChartedStructure& s, const Point& p,
                        const RealVector& X, const RealVector& Y);

}  // namespace ahg
