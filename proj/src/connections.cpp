#include "ahg/connections.hpp"

#include <algorithm>
#include <cmath>

namespace ahg {

namespace {

bool barred(int A, int n) { return A >= n; }

Eigen::VectorXcd flatten(const CTensor& t) {
  const auto f = t.flat();
  Eigen::VectorXcd v(static_cast<Eigen::Index>(f.size()));
  for (std::size_t k = 0; k < f.size(); ++k) v[static_cast<Eigen::Index>(k)] = f[k];
  return v;
}

CTensor unflatten(const Eigen::VectorXcd& v, Eigen::Index offset, int extent,
                  int rank) {
  CTensor t(extent, rank);
  auto f = t.flat();
  for (std::size_t k = 0; k < f.size(); ++k) {
    f[k] = v[offset + static_cast<Eigen::Index>(k)];
  }
  return t;
}

// E_D(f) = sum_a E(a, D) d_a f for every frame direction D.
template <class F>
std::vector<Eigen::VectorXcd> frame_derivatives(F&& f, const Chart& chart,
                                                const Point& p,
                                                const Eigen::MatrixXcd& E,
                                                const FDConfig& cfg) {
  const auto partials = axis_partials(f, chart, p, cfg);
  const auto m = E.cols();
  std::vector<Eigen::VectorXcd> out;
  out.reserve(static_cast<std::size_t>(m));
  for (Eigen::Index D = 0; D < m; ++D) {
    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(partials.front().size());
    for (std::size_t a = 0; a < partials.size(); ++a) {
      acc += E(static_cast<Eigen::Index>(a), D) * partials[a];
    }
    out.push_back(std::move(acc));
  }
  return out;
}

CTensor koszul(int n, const CTensor& MG, const CTensor& P) {
  const int m = 2 * n;
  CTensor gamma(m, 3);
  for (int A = 0; A < m; ++A) {
    const int Z = conj_index(A, n);
    for (int C = 0; C < m; ++C) {
      for (int B = 0; B < m; ++B) {
        gamma(A, C, B) = 0.5 * (MG(C, B, Z) + MG(B, C, Z) - MG(Z, C, B) +
                                P(C, B, Z) - P(C, Z, B) - P(B, Z, C));
      }
    }
  }
  return gamma;
}

CTensor canonical_from_brackets(int n, const CTensor& MG, const CTensor& P) {
  const int m = 2 * n;
  CTensor gamma(m, 3);
  for (int A = 0; A < m; ++A) {
    const int Z = conj_index(A, n);
    for (int C = 0; C < m; ++C) {
      for (int B = 0; B < m; ++B) {
        if (barred(A, n) != barred(B, n)) continue;
        if (barred(C, n) == barred(B, n)) {
          // Metric compatibility along a direction of the same type.
          gamma(A, C, B) = MG(C, B, Z) - P(C, Z, B);
        } else {
          // Vanishing mixed torsion.
          gamma(A, C, B) = -P(B, C, Z);
        }
      }
    }
  }
  return gamma;
}

CTensor torsion_of(int n, const CTensor& gamma, const CTensor& P) {
  const int m = 2 * n;
  CTensor tau(m, 3);
  for (int C = 0; C < m; ++C) {
    for (int B = 0; B < m; ++B) {
      for (int A = 0; A < m; ++A) {
        tau(C, B, A) = gamma(A, C, B) - gamma(A, B, C) -
                       P(C, B, conj_index(A, n));
      }
    }
  }
  return tau;
}

// R_{ABCD} from Gamma, its frame derivatives dG[D](G, C, A) and brackets.
CTensor curvature_of(const FirstOrderTables& t, const CTensor& gamma,
                     const std::vector<CTensor>& dgamma) {
  const int n = t.n;
  const int m = 2 * n;
  CTensor R(m, 4);
  for (int A = 0; A < m; ++A) {
    for (int C = 0; C < m; ++C) {
      for (int D = 0; D < m; ++D) {
        for (int G = 0; G < m; ++G) {
          cplx v = dgamma[C](G, D, A) - dgamma[D](G, C, A);
          for (int F = 0; F < m; ++F) {
            v += gamma(F, D, A) * gamma(G, C, F) -
                 gamma(F, C, A) * gamma(G, D, F);
            v -= t.structure_constant(F, C, D) * gamma(G, F, A);
          }
          R(A, conj_index(G, n), C, D) = v;
        }
      }
    }
  }
  return R;
}

std::vector<CTensor> split_derivatives(const std::vector<Eigen::VectorXcd>& d,
                                       Eigen::Index offset, int extent,
                                       int rank) {
  std::vector<CTensor> out;
  out.reserve(d.size());
  for (const auto& v : d) out.push_back(unflatten(v, offset, extent, rank));
  return out;
}

}  // namespace

DependencyError::DependencyError(std::string table)
    : GeometryError("missing table: " + table), table_(std::move(table)) {}

StepLadder StepLadder::from(const FDConfig& base) {
  base.validate();
  return {base, base, base};
}

FirstOrderTables first_order_tables(const UnitaryFrameField& F, const Point& p,
                                    const FDConfig& cfg) {
  const auto& s = F.structure();
  const int n = s.n();
  const int m = 2 * n;
  const int dim = s.dim();

  auto packed = [&](const Point& q) -> Eigen::MatrixXcd {
    Eigen::MatrixXcd out(dim, m + dim);
    out.leftCols(m) = F.full(q);
    out.rightCols(dim) = s.g(q).cast<cplx>();
    return out;
  };
  const Eigen::MatrixXcd P0 = packed(p);
  const auto dP = axis_partials(packed, s.chart, p, cfg);

  FirstOrderTables t;
  t.n = n;
  t.frame = P0.leftCols(m);
  t.metric = P0.rightCols(dim).real();
  t.frame_partials.reserve(dP.size());
  for (const auto& d : dP) t.frame_partials.push_back(d.leftCols(m));

  const Eigen::MatrixXcd& E = t.frame;
  const Eigen::MatrixXcd g = t.metric.cast<cplx>();
  std::vector<Eigen::MatrixXcd> DE(static_cast<std::size_t>(m));
  std::vector<Eigen::MatrixXcd> Dg(static_cast<std::size_t>(m));
  for (int C = 0; C < m; ++C) {
    Eigen::MatrixXcd de = Eigen::MatrixXcd::Zero(dim, m);
    Eigen::MatrixXcd dg = Eigen::MatrixXcd::Zero(dim, dim);
    for (int a = 0; a < dim; ++a) {
      de += E(a, C) * dP[static_cast<std::size_t>(a)].leftCols(m);
      dg += E(a, C) * dP[static_cast<std::size_t>(a)].rightCols(dim);
    }
    DE[static_cast<std::size_t>(C)] = std::move(de);
    Dg[static_cast<std::size_t>(C)] = std::move(dg);
  }

  const Eigen::MatrixXcd gE = g * E;
  t.bracket = CTensor(m, 3);
  for (int C = 0; C < m; ++C) {
    for (int D = 0; D < m; ++D) {
      const Eigen::VectorXcd v = DE[static_cast<std::size_t>(C)].col(D) -
                                 DE[static_cast<std::size_t>(D)].col(C);
      const Eigen::RowVectorXcd row = v.transpose() * gE;
      for (int A = 0; A < m; ++A) t.bracket(C, D, A) = row[A];
    }
  }

  t.metric_derivative = CTensor(m, 3);
  for (int C = 0; C < m; ++C) {
    const auto& de = DE[static_cast<std::size_t>(C)];
    const Eigen::MatrixXcd M = de.transpose() * gE + gE.transpose() * de +
                               E.transpose() * Dg[static_cast<std::size_t>(C)] * E;
    for (int A = 0; A < m; ++A) {
      for (int B = 0; B < m; ++B) t.metric_derivative(C, A, B) = M(A, B);
    }
  }

  t.levi_civita = {ConnectionKind::LeviCivita,
                   koszul(n, t.metric_derivative, t.bracket)};
  t.canonical = {ConnectionKind::Canonical,
                 canonical_from_brackets(n, t.metric_derivative, t.bracket)};
  t.torsion = torsion_of(n, t.canonical.gamma, t.bracket);
  t.lc_torsion = torsion_of(n, t.levi_civita.gamma, t.bracket);
  return t;
}

ConnectionData levi_civita_coeffs(const UnitaryFrameField& F, const Point& p,
                                  const FDConfig& cfg) {
  return first_order_tables(F, p, cfg).levi_civita;
}

ConnectionData canonical_coeffs(const UnitaryFrameField& F, const Point& p,
                                const FDConfig& cfg) {
  return first_order_tables(F, p, cfg).canonical;
}

CTensor torsion_table(const UnitaryFrameField& F, const Point& p,
                      const FDConfig& cfg) {
  return first_order_tables(F, p, cfg).torsion;
}

namespace {

SecondOrderTables second_order_from(const UnitaryFrameField& F, const Point& p,
                                    const FirstOrderTables& t,
                                    const StepLadder& steps) {
  const int n = t.n;
  const int m = 2 * n;
  const auto block = static_cast<Eigen::Index>(t.torsion.size());

  auto packed = [&](const Point& q) -> Eigen::VectorXcd {
    const FirstOrderTables tq = first_order_tables(F, q, steps.first);
    Eigen::VectorXcd out(3 * block);
    out << flatten(tq.levi_civita.gamma), flatten(tq.canonical.gamma),
        flatten(tq.torsion);
    return out;
  };
  const auto d =
      frame_derivatives(packed, F.structure().chart, p, t.frame, steps.second);
  const auto d_lc = split_derivatives(d, 0, m, 3);
  const auto d_can = split_derivatives(d, block, m, 3);
  const auto d_tau = split_derivatives(d, 2 * block, m, 3);

  SecondOrderTables out;
  out.curvature = curvature_of(t, t.canonical.gamma, d_can);
  out.lc_curvature = curvature_of(t, t.levi_civita.gamma, d_lc);

  const CTensor& G = t.canonical.gamma;
  const CTensor& tau = t.torsion;
  out.dtau = CTensor(m, 4);
  for (int A = 0; A < m; ++A) {
    for (int B = 0; B < m; ++B) {
      for (int D = 0; D < m; ++D) {
        for (int E = 0; E < m; ++E) {
          cplx v = d_tau[static_cast<std::size_t>(E)](A, B, D);
          for (int F2 = 0; F2 < m; ++F2) {
            v -= G(F2, E, A) * tau(F2, B, D) + G(F2, E, B) * tau(A, F2, D);
            v += G(D, E, F2) * tau(A, B, F2);
          }
          out.dtau(A, B, D, E) = v;
        }
      }
    }
  }
  return out;
}

}  // namespace

SecondOrderTables second_order_tables(const UnitaryFrameField& F,
                                      const Point& p, const StepLadder& steps) {
  const FirstOrderTables t = first_order_tables(F, p, steps.first);
  return second_order_from(F, p, t, steps);
}

namespace {

CTensor curvature_derivatives_from(const UnitaryFrameField& F, const Point& p,
                                   const FirstOrderTables& t,
                                   const CTensor& R, const StepLadder& steps) {
  const int m = 2 * t.n;
  auto packed = [&](const Point& q) -> Eigen::VectorXcd {
    return flatten(second_order_tables(F, q, steps).curvature);
  };
  const auto d =
      frame_derivatives(packed, F.structure().chart, p, t.frame, steps.third);
  const auto dR = split_derivatives(d, 0, m, 4);

  const CTensor& G = t.canonical.gamma;
  CTensor out(m, 5);
  for (int A = 0; A < m; ++A) {
    for (int B = 0; B < m; ++B) {
      for (int C = 0; C < m; ++C) {
        for (int D = 0; D < m; ++D) {
          for (int E = 0; E < m; ++E) {
            cplx v = dR[static_cast<std::size_t>(E)](A, B, C, D);
            for (int X = 0; X < m; ++X) {
              v -= G(X, E, A) * R(X, B, C, D) + G(X, E, B) * R(A, X, C, D) +
                   G(X, E, C) * R(A, B, X, D) + G(X, E, D) * R(A, B, C, X);
            }
            out(A, B, C, D, E) = v;
          }
        }
      }
    }
  }
  return out;
}

}  // namespace

CTensor curvature_derivatives(const UnitaryFrameField& F, const Point& p,
                              const StepLadder& steps) {
  const FirstOrderTables t = first_order_tables(F, p, steps.first);
  const SecondOrderTables s = second_order_from(F, p, t, steps);
  return curvature_derivatives_from(F, p, t, s.curvature, steps);
}

RicciScalarTable ricci_scalar_table(int n, const CTensor& R,
                                    const CTensor& RL) {
  const int m = 2 * n;
  RicciScalarTable r;
  r.ricci_first = Eigen::MatrixXcd::Zero(m, m);
  r.ricci_second = Eigen::MatrixXcd::Zero(n, n);
  r.ricci_lc_complex = Eigen::MatrixXcd::Zero(n, n);
  r.ricci_lc_holo = Eigen::MatrixXcd::Zero(n, n);
  r.s_canonical = 0.0;
  r.s_star = 0.0;
  for (int l = 0; l < n; ++l) {
    const int lb = l + n;
    for (int A = 0; A < m; ++A) {
      for (int B = 0; B < m; ++B) r.ricci_first(A, B) += R(l, lb, A, B);
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        r.ricci_second(i, j) += R(i, j + n, l, lb);
        r.ricci_lc_holo(i, j) += RL(l, i, j, lb) + RL(lb, i, j, l);
        r.ricci_lc_complex(i, j) += RL(l, i, j + n, lb) + RL(lb, i, j + n, l);
      }
    }
    for (int u = 0; u < n; ++u) {
      r.s_canonical += R(l, lb, u, u + n);
      r.s_star += RL(l, lb, u, u + n);
    }
  }
  return r;
}

GeometryTables geometry_tables(const UnitaryFrameField& F, const Point& p,
                               const StepLadder& steps, TableDepth depth) {
  GeometryTables g;
  g.point = p;
  g.n = F.n();
  g.first = first_order_tables(F, p, steps.first);
  if (depth >= TableDepth::Second) {
    g.second = second_order_from(F, p, g.first, steps);
    g.ricci = ricci_scalar_table(g.n, g.second->curvature,
                                 g.second->lc_curvature);
  }
  if (depth >= TableDepth::Third) {
    g.dcurv = curvature_derivatives_from(F, p, g.first, g.second->curvature,
                                         steps);
  }
  return g;
}

double metric_compatibility_residual(const FirstOrderTables& t,
                                     const ConnectionData& conn) {
  const int n = t.n;
  const int m = 2 * n;
  double worst = 0.0;
  for (int C = 0; C < m; ++C) {
    for (int A = 0; A < m; ++A) {
      for (int B = 0; B < m; ++B) {
        const cplx r = t.metric_derivative(C, A, B) -
                       conn.gamma(conj_index(B, n), C, A) -
                       conn.gamma(conj_index(A, n), C, B);
        worst = std::max(worst, std::abs(r));
      }
    }
  }
  return worst;
}

double type_preservation_residual(const FirstOrderTables& t) {
  const int n = t.n;
  const int m = 2 * n;
  double worst = 0.0;
  for (int A = 0; A < m; ++A) {
    for (int C = 0; C < m; ++C) {
      for (int B = 0; B < m; ++B) {
        if ((A >= n) != (B >= n)) {
          worst = std::max(worst, std::abs(t.canonical.gamma(A, C, B)));
        }
      }
    }
  }
  return worst;
}

double mixed_torsion_residual(const FirstOrderTables& t) {
  const int n = t.n;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int C = 0; C < 2 * n; ++C) {
        worst = std::max(worst, std::abs(t.torsion(i, j + n, C)));
        worst = std::max(worst, std::abs(t.torsion(j + n, i, C)));
      }
    }
  }
  return worst;
}

std::vector<Eigen::MatrixXd> coordinate_christoffel(const UnitaryFrameField& F,
                                                    const Point& p,
                                                    const FDConfig& cfg) {
  const FirstOrderTables t = first_order_tables(F, p, cfg);
  const int m = 2 * t.n;
  const Eigen::MatrixXcd& E = t.frame;
  const Eigen::MatrixXcd Finv = E.inverse();
  std::vector<Eigen::MatrixXd> out;
  out.reserve(static_cast<std::size_t>(m));
  for (int a = 0; a < m; ++a) {
    Eigen::MatrixXcd Ga = Eigen::MatrixXcd::Zero(m, m);
    for (int A = 0; A < m; ++A) {
      for (int B = 0; B < m; ++B) {
        cplx v = 0.0;
        for (int C = 0; C < m; ++C) v += Finv(C, a) * t.canonical.gamma(A, C, B);
        Ga(A, B) = v;
      }
    }
    const Eigen::MatrixXcd Ca =
        -t.frame_partials[static_cast<std::size_t>(a)] * Finv + E * Ga * Finv;
    out.push_back(Ca.real());
  }
  return out;
}

}  // namespace ahg
