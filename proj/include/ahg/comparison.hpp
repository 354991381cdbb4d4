#pragma once

// Index-level access to geometry tables and the closed-form expressions of
// Levi-Civita curvature in terms of canonical torsion and curvature.
//
// Accessors take frame indices (barred index = i + n). Argument order
// follows storage: t(A,B,C) = tau_{AB}^C, dt(A,B,C,E) = tau_{AB;E}^C.

#include "ahg/connections.hpp"

#include <initializer_list>
#include <vector>

namespace ahg {

/// |lhs - rhs| / (1 + max(|lhs|, |rhs|)).
double relative_residual(cplx lhs, cplx rhs);

/// Running maximum of relative_residual over free-index tuples.
class ResidualTracker {
 public:
  void add(cplx lhs, cplx rhs, std::initializer_list<int> idx);
  /// Records a precomputed non-negative residual.
  void add_value(double r, std::initializer_list<int> idx);
  double value() const { return value_; }
  const std::vector<int>& worst() const { return worst_; }

 private:
  double value_ = 0.0;
  std::vector<int> worst_;
  bool seen_ = false;
};

class TableView {
 public:
  explicit TableView(const GeometryTables& g);

  int n() const { return n_; }
  int bar(int i) const { return i + n_; }

  cplx t(int A, int B, int C) const { return g_.first.torsion(A, B, C); }
  cplx dt(int A, int B, int C, int E) const {
    return need_second().dtau(A, B, C, E);
  }
  cplx R(int A, int B, int C, int D) const {
    return need_second().curvature(A, B, C, D);
  }
  cplx RL(int A, int B, int C, int D) const {
    return need_second().lc_curvature(A, B, C, D);
  }
  cplx dR(int A, int B, int C, int D, int E) const {
    if (!g_.dcurv) throw DependencyError("curvature_derivatives");
    return (*g_.dcurv)(A, B, C, D, E);
  }
  const RicciScalarTable& ricci() const {
    if (!g_.ricci) throw DependencyError("ricci_scalar");
    return *g_.ricci;
  }
  const GeometryTables& tables() const { return g_; }

 private:
  const SecondOrderTables& need_second() const {
    if (!g_.second) throw DependencyError("curvature");
    return *g_.second;
  }

  const GeometryTables& g_;
  int n_;
};

/// R^L_{i j-bar k l-bar} from canonical data (general almost Hermitian).
cplx lc_mixed(const TableView& v, int i, int j, int k, int l);
/// R^L_{i j k l-bar} from canonical data.
cplx lc_one_bar(const TableView& v, int i, int j, int k, int l);
/// R^L_{i j k l} from canonical data.
cplx lc_holomorphic(const TableView& v, int i, int j, int k, int l);

/// Full R^L_{ABCD} assembled from the three expressions above using the
/// Riemannian symmetries and reality of R^L.
CTensor reconstruct_lc_curvature(const TableView& v);

struct CrosscheckResult {
  double max_discrepancy = 0.0;
  std::vector<int> worst_indices;
};

/// Compares the directly computed R^L with the reconstruction, using the
/// module-wide residual metric.
CrosscheckResult crosscheck_lc_curvature(const GeometryTables& g);

}  // namespace ahg
