#pragma once

// Generalized-Kahler class membership from canonical torsion residuals.

#include "ahg/chart_calculus.hpp"
#include "ahg/complex_frame.hpp"
#include "ahg/tensor.hpp"

#include <span>
#include <string>
#include <vector>

namespace ahg {

enum class LabelStatus { Pass, Fail, Inconclusive };

const char* to_string(LabelStatus s);

struct LabelVerdict {
  std::string label;
  double residual = 0.0;  ///< worst value over all sample points
  LabelStatus status = LabelStatus::Fail;
  /// Passes while the Kahler residual exceeds 10 * tol.
  bool strict = false;
};

struct ClassificationReport {
  double tol = 0.0;
  int sample_count = 0;
  /// Order: kahler, hermitian, almost, quasi, nearly.
  std::vector<LabelVerdict> labels;

  const LabelVerdict& verdict(const std::string& label) const;
  bool passes(const std::string& label) const;
  std::vector<std::string> passed() const;
};

/// Residuals of one torsion table (tau_{AB}^C, extent 2n).
struct TorsionResiduals {
  double hermitian = 0.0;  ///< max |tau_{ij}^{k-bar}|
  double quasi = 0.0;      ///< max |tau_{ij}^k|
  double cyclic = 0.0;     ///< max |tau_{ij}^{k-bar} + tau_{ki}^{j-bar} + tau_{jk}^{i-bar}|
  double nearly = 0.0;     ///< max |tau_{ij}^{k-bar} - tau_{jk}^{i-bar}|
  double full = 0.0;       ///< max over every torsion component
};

TorsionResiduals torsion_residuals(int n, const CTensor& torsion);

ClassificationReport classify_torsion(int n, std::span<const CTensor> torsions,
                                      double tol);

/// Validates the structure at every point, then classifies.
ClassificationReport classify(const UnitaryFrameField& frame,
                              std::span<const Point> points, double tol,
                              const FDConfig& cfg);

ClassificationReport classify(const ChartedStructure& s,
                              std::span<const Point> points, double tol,
                              const FDConfig& cfg);

/// Tolerance used for check_structure before classification.
inline constexpr double kStructureTolerance = 1e-8;

}  // namespace ahg
