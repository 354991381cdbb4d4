#include "ahg/classification.hpp"

#include "ahg/connections.hpp"

#include <algorithm>
#include <sstream>

namespace ahg {

namespace {

const std::vector<std::string>& label_order() {
  static const std::vector<std::string> order = {"kahler", "hermitian",
                                                 "almost", "quasi", "nearly"};
  return order;
}

LabelStatus status_for(double residual, double tol) {
  if (residual < tol) return LabelStatus::Pass;
  if (residual < 10.0 * tol) return LabelStatus::Inconclusive;
  return LabelStatus::Fail;
}

}  // namespace

const char* to_string(LabelStatus s) {
  switch (s) {
    case LabelStatus::Pass:
      return "pass";
    case LabelStatus::Fail:
      return "fail";
    case LabelStatus::Inconclusive:
      return "inconclusive";
  }
  return "fail";
}

const LabelVerdict& ClassificationReport::verdict(
    const std::string& label) const {
  for (const auto& v : labels) {
    if (v.label == label) return v;
  }
  throw GeometryError("unknown classification label '" + label + "'");
}

bool ClassificationReport::passes(const std::string& label) const {
  return verdict(label).status == LabelStatus::Pass;
}

std::vector<std::string> ClassificationReport::passed() const {
  std::vector<std::string> out;
  for (const auto& v : labels) {
    if (v.status == LabelStatus::Pass) out.push_back(v.label);
  }
  return out;
}

TorsionResiduals torsion_residuals(int n, const CTensor& t) {
  TorsionResiduals r;
  r.full = t.max_abs();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        r.quasi = std::max(r.quasi, std::abs(t(i, j, k)));
        r.hermitian = std::max(r.hermitian, std::abs(t(i, j, k + n)));
        r.cyclic = std::max(r.cyclic, std::abs(t(i, j, k + n) +
                                               t(k, i, j + n) +
                                               t(j, k, i + n)));
        r.nearly =
            std::max(r.nearly, std::abs(t(i, j, k + n) - t(j, k, i + n)));
      }
    }
  }
  return r;
}

ClassificationReport classify_torsion(int n, std::span<const CTensor> torsions,
                                      double tol) {
  if (torsions.empty()) {
    throw GeometryError("classification needs at least one sample point");
  }
  TorsionResiduals worst;
  for (const auto& t : torsions) {
    const TorsionResiduals r = torsion_residuals(n, t);
    worst.hermitian = std::max(worst.hermitian, r.hermitian);
    worst.quasi = std::max(worst.quasi, r.quasi);
    worst.cyclic = std::max(worst.cyclic, r.cyclic);
    worst.nearly = std::max(worst.nearly, r.nearly);
    worst.full = std::max(worst.full, r.full);
  }
  const double almost = std::max(worst.quasi, worst.cyclic);
  const double nearly = std::max(worst.quasi, worst.nearly);
  // Taking the maximum over every criterion keeps the label set monotone:
  // a Kahler pass implies every other pass at the same tolerance.
  const double kahler = std::max(
      {worst.full, worst.hermitian, worst.quasi, almost, nearly});

  ClassificationReport rep;
  rep.tol = tol;
  rep.sample_count = static_cast<int>(torsions.size());
  const std::vector<double> residuals = {kahler, worst.hermitian, almost,
                                         worst.quasi, nearly};
  const bool non_kahler = kahler > 10.0 * tol;
  for (std::size_t k = 0; k < residuals.size(); ++k) {
    LabelVerdict v;
    v.label = label_order()[k];
    v.residual = residuals[k];
    v.status = status_for(residuals[k], tol);
    v.strict = v.status == LabelStatus::Pass && non_kahler;
    rep.labels.push_back(std::move(v));
  }
  return rep;
}

ClassificationReport classify(const UnitaryFrameField& frame,
                              std::span<const Point> points, double tol,
                              const FDConfig& cfg) {
  const auto& s = frame.structure();
  std::vector<CTensor> torsions;
  torsions.reserve(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    const StructureDiagnostics d = check_structure(s, points[k],
                                                   kStructureTolerance);
    if (!d.pass) {
      std::ostringstream os;
      os << "invalid almost Hermitian structure at sample " << k
         << ": |J^2+I| = " << d.j_squared << ", |g-g^T| = " << d.g_symmetry
         << ", min eig = " << d.spd_margin
         << ", |J^T g J - g| = " << d.compatibility;
      throw GeometryError(os.str());
    }
    torsions.push_back(first_order_tables(frame, points[k], cfg).torsion);
  }
  return classify_torsion(s.n(), torsions, tol);
}

ClassificationReport classify(const ChartedStructure& s,
                              std::span<const Point> points, double tol,
                              const FDConfig& cfg) {
  return classify(unitary_frame(s, points), points, tol, cfg);
}

}  // namespace ahg
