#pragma once

// Catalog of curvature and torsion identities as runnable residual checks.

#include "ahg/classification.hpp"
#include "ahg/comparison.hpp"
#include "ahg/connections.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ahg {

enum class Applicability {
  All,
  Hermitian,
  Quasi,
  Almost,
  Nearly,
  NearlyDim6,
  KahlerEquality
};

const char* to_string(Applicability a);

struct IdentityId {
  std::string code;
  Applicability applicability = Applicability::All;
  TableDepth depth = TableDepth::First;
  double tolerance = 1e-6;
  std::string summary;
};

const std::vector<IdentityId>& identity_catalog();

/// Throws UnknownIdentityError for codes outside the catalog.
const IdentityId& find_identity(std::string_view code);

class UnknownIdentityError : public GeometryError {
 public:
  explicit UnknownIdentityError(const std::string& code);
};

enum class IdentityStatus { Pass, Fail, NotApplicable };

const char* to_string(IdentityStatus s);

struct IdentityResult {
  std::string code;
  int point_index = -1;  ///< -1 for results not tied to a point
  Point point;
  double residual = 0.0;
  double tolerance = 0.0;
  IdentityStatus status = IdentityStatus::NotApplicable;
  std::vector<int> worst_indices;  ///< frame indices, barred = i + n

  bool pass() const { return status != IdentityStatus::Fail; }
};

/// Extra inputs for identities that are not pure table contractions.
struct IdentityContext {
  const UnitaryFrameField* frame = nullptr;
  StepLadder steps;
  std::uint64_t seed = 0;
};

/// Evaluates one identity at the point the tables were built for.
/// Applicability is not checked here; run_suite does the gating.
IdentityResult run_identity(const IdentityId& id, const GeometryTables& tables,
                            const IdentityContext& ctx);

/// Scalar-curvature gap S^* - S^c and the torsion norm it should equal.
struct ScalarGap {
  double gap = 0.0;
  double torsion_norm = 0.0;
};
ScalarGap scalar_gap(const GeometryTables& tables);

struct CodeSummary {
  std::string code;
  double max_residual = 0.0;
  double tolerance = 0.0;
  IdentityStatus status = IdentityStatus::NotApplicable;
};

struct SuiteReport {
  std::string label;
  ClassificationReport classification;
  std::vector<IdentityResult> results;
  std::vector<CodeSummary> per_code;
  bool pass = true;
  FDConfig fd;
};

struct SuiteOptions {
  FDConfig fd;
  double classification_tol = 1e-6;
  std::uint64_t seed = 0;
  /// Replaces every catalog tolerance when set.
  std::optional<double> tolerance;
};

/// Classifies, gates, then evaluates every selected identity at every point.
/// An empty selection means the whole catalog.
SuiteReport run_suite(const ChartedStructure& s, const std::string& label,
                      const std::vector<Point>& points,
                      const std::vector<std::string>& selection,
                      const SuiteOptions& options);

bool applicable(Applicability a, const ClassificationReport& c, int n);

/// Human-readable frame index: "1".."n" and "1b".."nb".
std::string index_label(int A, int n);

}  // namespace ahg
