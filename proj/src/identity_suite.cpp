#include "ahg/identity_suite.hpp"

#include "ahg/raw_bianchi.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace ahg {

namespace {

constexpr double kTorsionTol = 1e-6;
constexpr double kCurvatureTol = 1e-4;
constexpr double kDerivativeTol = 1e-3;
constexpr double kScalarTol = 1e-5;

struct Eval {
  const TableView& v;
  const GeometryTables& g;
  const IdentityContext& ctx;
  int n;
  int b(int i) const { return i + n; }
};

using Evaluator = std::function<void(const Eval&, ResidualTracker&)>;

template <class F>
void loop(int rank, int n, F&& f) {
  for_each_index(rank, n, std::forward<F>(f));
}

// Sum over lambda of f(lambda).
template <class F>
cplx sum(int n, F&& f) {
  cplx s = 0.0;
  for (int L = 0; L < n; ++L) s += f(L);
  return s;
}

cplx rhs_first_bianchi_holo(const Eval& e, int i, int k, int l, int C) {
  const auto& v = e.v;
  return sum(e.n, [&](int L) {
    return v.t(i, L, C) * v.t(k, l, L) + v.t(k, L, C) * v.t(l, i, L) +
           v.t(l, L, C) * v.t(i, k, L);
  });
}

// Cyclic sum of tau_{..;.}^C over (i, k, l).
cplx cyclic_dtau(const Eval& e, int i, int k, int l, int C) {
  const auto& v = e.v;
  return v.dt(i, k, C, l) + v.dt(k, l, C, i) + v.dt(l, i, C, k);
}

cplx second_bianchi_cyclic(const Eval& e, int i, int j, int k, int l, int m) {
  const auto& v = e.v;
  const int bj = e.b(j);
  return v.dR(i, bj, k, l, m) + v.dR(i, bj, l, m, k) + v.dR(i, bj, m, k, l);
}

void gen_b1(const Eval& e, ResidualTracker& r) {
  loop(4, e.n, [&](std::span<const int> x) {
    const int i = x[0], k = x[1], l = x[2], j = x[3];
    r.add(cyclic_dtau(e, i, k, l, e.b(j)),
          rhs_first_bianchi_holo(e, i, k, l, e.b(j)), {i, k, l, e.b(j)});
  });
}

cplx mixed_swap_first(const Eval& e, int i, int j, int k, int l) {
  return e.v.R(i, e.b(j), k, e.b(l)) - e.v.R(k, e.b(j), i, e.b(l));
}
cplx mixed_swap_second(const Eval& e, int i, int j, int k, int l) {
  return e.v.R(i, e.b(j), k, e.b(l)) - e.v.R(i, e.b(l), k, e.b(j));
}
cplx mixed_swap_pair(const Eval& e, int i, int j, int k, int l) {
  return e.v.R(i, e.b(j), k, e.b(l)) - e.v.R(k, e.b(l), i, e.b(j));
}
cplx cyclic_r20(const Eval& e, int i, int j, int k, int l) {
  const auto& v = e.v;
  const int bj = e.b(j);
  return v.R(i, bj, k, l) + v.R(k, bj, l, i) + v.R(l, bj, i, k);
}

// Generic 4-index check: lhs(i,j,k,l) == rhs(i,j,k,l), indices reported
// through `report`.
template <class L, class R>
void check4(const Eval& e, ResidualTracker& r, L&& lhs, R&& rhs) {
  loop(4, e.n, [&](std::span<const int> x) {
    const int i = x[0], j = x[1], k = x[2], l = x[3];
    r.add(lhs(i, j, k, l), rhs(i, j, k, l), {i, e.b(j), k, l});
  });
}

template <class L, class R>
void check5(const Eval& e, ResidualTracker& r, L&& lhs, R&& rhs) {
  loop(5, e.n, [&](std::span<const int> x) {
    const int i = x[0], j = x[1], k = x[2], l = x[3], m = x[4];
    r.add(lhs(i, j, k, l, m), rhs(i, j, k, l, m), {i, e.b(j), k, l, m});
  });
}

// Sum over lambda and mu.
template <class F>
cplx sum2(int n, F&& f) {
  cplx s = 0.0;
  for (int L = 0; L < n; ++L) {
    for (int M = 0; M < n; ++M) s += f(L, M);
  }
  return s;
}

std::map<std::string, Evaluator> build_evaluators() {
  std::map<std::string, Evaluator> ev;

  ev["GEN-B1"] = gen_b1;
  ev["GEN-B2"] = [](const Eval& e, ResidualTracker& r) {
    check4(e, r, [&](int i, int j, int k, int l) { return mixed_swap_first(e, i, j, k, l); },
           [&](int i, int j, int k, int l) {
             return e.v.dt(i, k, j, e.b(l)) - sum(e.n, [&](int L) {
                      return e.v.t(i, k, e.b(L)) * e.v.t(e.b(l), e.b(L), j);
                    });
           });
  };
  ev["GEN-B3"] = [](const Eval& e, ResidualTracker& r) {
    check4(e, r, [&](int i, int j, int k, int l) { return mixed_swap_second(e, i, j, k, l); },
           [&](int i, int j, int k, int l) {
             return e.v.dt(e.b(j), e.b(l), e.b(i), k) - sum(e.n, [&](int L) {
                      return e.v.t(k, L, e.b(i)) * e.v.t(e.b(j), e.b(l), L);
                    });
           });
  };
  ev["GEN-B4"] = [](const Eval& e, ResidualTracker& r) {
    check4(e, r, [&](int i, int j, int k, int l) { return mixed_swap_pair(e, i, j, k, l); },
           [&](int i, int j, int k, int l) {
             const auto& v = e.v;
             return v.dt(i, k, l, e.b(j)) + v.dt(e.b(j), e.b(l), e.b(i), k) -
                    sum(e.n, [&](int L) {
                      return v.t(k, L, e.b(i)) * v.t(e.b(j), e.b(l), L) +
                             v.t(e.b(j), e.b(L), l) * v.t(i, k, e.b(L));
                    });
           });
  };
  ev["GEN-B5"] = [](const Eval& e, ResidualTracker& r) {
    check4(e, r, [&](int i, int j, int k, int l) { return e.v.R(i, e.b(j), k, l); },
           [&](int i, int j, int k, int l) {
             const auto& v = e.v;
             return -v.dt(k, l, e.b(i), e.b(j)) + sum(e.n, [&](int L) {
                      return v.t(e.b(j), e.b(L), e.b(i)) * v.t(k, l, e.b(L));
                    });
           });
  };
  ev["GEN-B6"] = [](const Eval& e, ResidualTracker& r) {
    check4(e, r, [&](int i, int j, int k, int l) { return cyclic_r20(e, i, j, k, l); },
           [&](int i, int j, int k, int l) {
             return cyclic_dtau(e, i, k, l, j) -
                    rhs_first_bianchi_holo(e, i, k, l, j);
           });
  };
  ev["GEN-B7"] = [](const Eval& e, ResidualTracker& r) {
    check5(e, r, [&](int i, int j, int k, int l, int m) {
             return second_bianchi_cyclic(e, i, j, k, l, m);
           },
           [&](int i, int j, int k, int l, int m) {
             const auto& v = e.v;
             const int bj = e.b(j);
             cplx s = 0.0;
             for (int F = 0; F < 2 * e.n; ++F) {
               s += v.t(k, l, F) * v.R(i, bj, m, F) +
                    v.t(l, m, F) * v.R(i, bj, k, F) +
                    v.t(m, k, F) * v.R(i, bj, l, F);
             }
             return s;
           });
  };
  ev["GEN-B8"] = [](const Eval& e, ResidualTracker& r) {
    check5(e, r, [&](int i, int j, int k, int l, int m) {
             return e.v.dR(i, e.b(j), k, e.b(l), m) - e.v.dR(i, e.b(j), m, e.b(l), k);
           },
           [&](int i, int j, int k, int l, int m) {
             const auto& v = e.v;
             const int bj = e.b(j), bl = e.b(l);
             return -v.dR(i, bj, m, k, bl) - sum(e.n, [&](int L) {
                      return v.t(m, k, L) * v.R(i, bj, L, bl) +
                             v.t(m, k, e.b(L)) * v.R(i, bj, e.b(L), bl);
                    });
           });
  };
  ev["GEN-B9"] = [](const Eval& e, ResidualTracker& r) {
    check5(e, r, [&](int i, int j, int k, int l, int m) {
             return e.v.dR(i, e.b(j), k, e.b(l), e.b(m)) -
                    e.v.dR(i, e.b(j), k, e.b(m), e.b(l));
           },
           [&](int i, int j, int k, int l, int m) {
             const auto& v = e.v;
             const int bj = e.b(j), bl = e.b(l), bm = e.b(m);
             return -v.dR(i, bj, bl, bm, k) - sum(e.n, [&](int L) {
                      return v.t(bl, bm, L) * v.R(i, bj, L, k) -
                             v.t(bl, bm, e.b(L)) * v.R(i, bj, k, e.b(L));
                    });
           });
  };

  // Hermitian specializations.
  ev["HERM-1"] = [](const Eval& e, ResidualTracker& r) {
    check4(e, r, [&](int i, int j, int k, int l) { return mixed_swap_first(e, i, j, k, l); },
           [&](int i, int j, int k, int l) { return e.v.dt(i, k, j, e.b(l)); });
  };
  ev["HERM-2"] = [](const Eval& e, ResidualTracker& r) {
    check4(e, r, [&](int i, int j, int k, int l) { return mixed_swap_second(e, i, j, k, l); },
           [&](int i, int j, int k, int l) {
             return e.v.dt(e.b(j), e.b(l), e.b(i), k);
           });
  };
  ev["HERM-3"] = [](const Eval& e, ResidualTracker& r) {
    check4(e, r, [&](int i, int j, int k, int l) { return mixed_swap_pair(e, i, j, k, l); },
           [&](int i, int j, int k, int l) {
             return e.v.dt(i, k, l, e.b(j)) + e.v.dt(e.b(j), e.b(l), e.b(i), k);
           });
  };
  ev["HERM-4"] = [](const Eval& e, ResidualTracker& r) {
    check4(e, r, [&](int i, int j, int k, int l) { return e.v.R(i, e.b(j), k, l); },
           [](int, int, int, int) { return cplx{}; });
  };
  ev["HERM-5"] = [](const Eval& e, ResidualTracker& r) {
    loop(4, e.n, [&](std::span<const int> x) {
      const int i = x[0], k = x[1], l = x[2], j = x[3];
      r.add(cyclic_dtau(e, i, k, l, j), rhs_first_bianchi_holo(e, i, k, l, j),
            {i, k, l, j});
    });
  };
  ev["HERM-6"] = [](const Eval& e, ResidualTracker& r) {
    check5(e, r, [&](int i, int j, int k, int l, int m) {
             return e.v.dR(i, e.b(j), k, e.b(l), m) - e.v.dR(i, e.b(j), m, e.b(l), k);
           },
           [&](int i, int j, int k, int l, int m) {
             return -sum(e.n, [&](int L) {
               return e.v.t(m, k, L) * e.v.R(i, e.b(j), L, e.b(l));
             });
           });
  };
  ev["HERM-7"] = [](const Eval& e, ResidualTracker& r) {
    check5(e, r, [&](int i, int j, int k, int l, int m) {
             return e.v.dR(i, e.b(j), k, e.b(l), e.b(m)) -
                    e.v.dR(i, e.b(j), k, e.b(m), e.b(l));
           },
           [&](int i, int j, int k, int l, int m) {
             return sum(e.n, [&](int L) {
               return e.v.t(e.b(l), e.b(m), e.b(L)) * e.v.R(i, e.b(j), k, e.b(L));
             });
           });
  };

  // Quasi-Kahler specializations.
  ev["QK-1"] = [](const Eval& e, ResidualTracker& r) {
    loop(4, e.n, [&](std::span<const int> x) {
      const int i = x[0], k = x[1], l = x[2], j = x[3];
      r.add(cyclic_dtau(e, i, k, l, e.b(j)), 0.0, {i, k, l, e.b(j)});
    });
  };
  ev["QK-2"] = [](const Eval& e, ResidualTracker& r) {
    check4(e, r, [&](int i, int j, int k, int l) { return mixed_swap_first(e, i, j, k, l); },
           [&](int i, int j, int k, int l) {
             return -sum(e.n, [&](int L) {
               return e.v.t(i, k, e.b(L)) * e.v.t(e.b(l), e.b(L), j);
             });
           });
  };
  ev["QK-3"] = [](const Eval& e, ResidualTracker& r) {
    check4(e, r, [&](int i, int j, int k, int l) { return mixed_swap_second(e, i, j, k, l); },
           [&](int i, int j, int k, int l) {
             return -sum(e.n, [&](int L) {
               return e.v.t(k, L, e.b(i)) * e.v.t(e.b(j), e.b(l), L);
             });
           });
  };
  ev["QK-4"] = [](const Eval& e, ResidualTracker& r) {
    check4(e, r, [&](int i, int j, int k, int l) { return mixed_swap_pair(e, i, j, k, l); },
           [&](int i, int j, int k, int l) {
             const auto& v = e.v;
             return -sum(e.n, [&](int L) {
               return v.t(k, L, e.b(i)) * v.t(e.b(j), e.b(l), L) +
                      v.t(i, k, e.b(L)) * v.t(e.b(j), e.b(L), l);
             });
           });
  };
  ev["QK-5"] = [](const Eval& e, ResidualTracker& r) {
    check4(e, r, [&](int i, int j, int k, int l) { return e.v.R(i, e.b(j), k, l); },
           [&](int i, int j, int k, int l) {
             return -e.v.dt(k, l, e.b(i), e.b(j));
           });
  };
  ev["QK-6"] = [](const Eval& e, ResidualTracker& r) {
    check4(e, r, [&](int i, int j, int k, int l) { return cyclic_r20(e, i, j, k, l); },
           [](int, int, int, int) { return cplx{}; });
  };
  ev["QK-7"] = [](const Eval& e, ResidualTracker& r) {
    check5(e, r, [&](int i, int j, int k, int l, int m) {
             return second_bianchi_cyclic(e, i, j, k, l, m);
           },
           [&](int i, int j, int k, int l, int m) {
             const auto& v = e.v;
             const int bj = e.b(j);
             return sum(e.n, [&](int L) {
               const int bL = e.b(L);
               return v.t(k, l, bL) * v.R(i, bj, m, bL) +
                      v.t(l, m, bL) * v.R(i, bj, k, bL) +
                      v.t(m, k, bL) * v.R(i, bj, l, bL);
             });
           });
  };
  ev["QK-8"] = [](const Eval& e, ResidualTracker& r) {
    check5(e, r, [&](int i, int j, int k, int l, int m) {
             return e.v.dR(i, e.b(j), k, e.b(l), m) - e.v.dR(i, e.b(j), m, e.b(l), k);
           },
           [&](int i, int j, int k, int l, int m) {
             const auto& v = e.v;
             const int bj = e.b(j), bl = e.b(l);
             return -v.dR(i, bj, m, k, bl) - sum(e.n, [&](int L) {
                      return v.t(m, k, e.b(L)) * v.R(i, bj, e.b(L), bl);
                    });
           });
  };
  ev["QK-9"] = [](const Eval& e, ResidualTracker& r) {
    check5(e, r, [&](int i, int j, int k, int l, int m) {
             return e.v.dR(i, e.b(j), k, e.b(l), e.b(m)) -
                    e.v.dR(i, e.b(j), k, e.b(m), e.b(l));
           },
           [&](int i, int j, int k, int l, int m) {
             const auto& v = e.v;
             const int bj = e.b(j), bl = e.b(l), bm = e.b(m);
             return -v.dR(i, bj, bl, bm, k) - sum(e.n, [&](int L) {
                      return v.t(bl, bm, L) * v.R(i, bj, L, k);
                    });
           });
  };

  // Nearly-Kahler specializations.
  auto nk_torsion_product = [](const Eval& e, int i, int j, int k, int l) {
    return -sum(e.n, [&](int L) {
      return e.v.t(i, k, e.b(L)) * e.v.t(e.b(j), e.b(l), L);
    });
  };
  ev["NK-1"] = [nk_torsion_product](const Eval& e, ResidualTracker& r) {
    check4(e, r, [&](int i, int j, int k, int l) { return mixed_swap_first(e, i, j, k, l); },
           [&](int i, int j, int k, int l) { return nk_torsion_product(e, i, j, k, l); });
  };
  ev["NK-2"] = [nk_torsion_product](const Eval& e, ResidualTracker& r) {
    check4(e, r, [&](int i, int j, int k, int l) { return mixed_swap_second(e, i, j, k, l); },
           [&](int i, int j, int k, int l) { return nk_torsion_product(e, i, j, k, l); });
  };
  ev["NK-3"] = [](const Eval& e, ResidualTracker& r) {
    check4(e, r, [&](int i, int j, int k, int l) { return mixed_swap_pair(e, i, j, k, l); },
           [](int, int, int, int) { return cplx{}; });
  };
  ev["NK-4"] = [](const Eval& e, ResidualTracker& r) {
    const auto& ric = e.v.ricci();
    for (int i = 0; i < e.n; ++i) {
      for (int j = 0; j < e.n; ++j) {
        r.add(ric.ricci_first(i, e.b(j)), ric.ricci_second(i, j), {i, e.b(j)});
      }
    }
  };
  ev["NK-5"] = ev["HERM-4"];
  ev["NK-6"] = [](const Eval& e, ResidualTracker& r) {
    check5(e, r, [&](int i, int j, int k, int l, int m) {
             const auto& v = e.v;
             const int bj = e.b(j);
             return sum(e.n, [&](int L) {
               const int bL = e.b(L);
               return v.t(k, l, bL) * v.R(i, bj, m, bL) +
                      v.t(l, m, bL) * v.R(i, bj, k, bL) +
                      v.t(m, k, bL) * v.R(i, bj, l, bL);
             });
           },
           [](int, int, int, int, int) { return cplx{}; });
  };
  ev["NK-7"] = [](const Eval& e, ResidualTracker& r) {
    check5(e, r, [&](int i, int j, int k, int l, int m) {
             return e.v.dR(i, e.b(j), k, e.b(l), m) - e.v.dR(i, e.b(j), m, e.b(l), k);
           },
           [](int, int, int, int, int) { return cplx{}; });
  };
  ev["NK-8"] = [](const Eval& e, ResidualTracker& r) {
    check5(e, r, [&](int i, int j, int k, int l, int m) {
             return e.v.dR(i, e.b(j), k, e.b(l), e.b(m)) -
                    e.v.dR(i, e.b(j), k, e.b(m), e.b(l));
           },
           [](int, int, int, int, int) { return cplx{}; });
  };
  ev["KIRI"] = [](const Eval& e, ResidualTracker& r) {
    loop(4, 2 * e.n, [&](std::span<const int> x) {
      r.add(e.v.dt(x[0], x[1], x[2], x[3]), 0.0, {x[0], x[1], x[2], x[3]});
    });
  };

  // Levi-Civita curvature in terms of canonical data.
  auto mixed_lhs = [](const Eval& e, int i, int j, int k, int l) {
    return e.v.RL(i, e.b(j), k, e.b(l));
  };
  auto add_mixed = [mixed_lhs](std::string code,
                               std::function<cplx(const Eval&, int, int, int, int)> rhs,
                               std::map<std::string, Evaluator>& out) {
    out[std::move(code)] = [mixed_lhs, rhs](const Eval& e, ResidualTracker& r) {
      loop(4, e.n, [&](std::span<const int> x) {
        const int i = x[0], j = x[1], k = x[2], l = x[3];
        r.add(mixed_lhs(e, i, j, k, l), rhs(e, i, j, k, l),
              {i, e.b(j), k, e.b(l)});
      });
    };
  };
  add_mixed("CMP-1",
            [](const Eval& e, int i, int j, int k, int l) {
              return lc_mixed(e.v, i, j, k, l);
            },
            ev);
  add_mixed("CMP-1HERM",
            [](const Eval& e, int i, int j, int k, int l) {
              const auto& v = e.v;
              auto b = [&](int x) { return e.b(x); };
              return 0.5 * (v.R(i, b(l), k, b(j)) + v.R(k, b(j), i, b(l))) -
                     0.25 * sum(e.n, [&](int L) {
                       return v.t(b(l), b(L), b(i)) * v.t(k, L, j) +
                              v.t(i, L, l) * v.t(b(j), b(L), b(k)) -
                              v.t(i, k, L) * v.t(b(j), b(l), b(L));
                     });
            },
            ev);
  add_mixed("CMP-1QK",
            [](const Eval& e, int i, int j, int k, int l) {
              const auto& v = e.v;
              auto b = [&](int x) { return e.b(x); };
              return v.R(i, b(j), k, b(l)) + 0.25 * sum(e.n, [&](int L) {
                       return (v.t(i, k, b(L)) + v.t(k, L, b(i)) - v.t(L, i, b(k))) *
                              (v.t(b(j), b(l), L) + v.t(b(l), b(L), j) -
                               v.t(b(L), b(j), l));
                     });
            },
            ev);
  add_mixed("CMP-1AK",
            [](const Eval& e, int i, int j, int k, int l) {
              const auto& v = e.v;
              auto b = [&](int x) { return e.b(x); };
              return v.R(i, b(j), k, b(l)) + sum(e.n, [&](int L) {
                       return v.t(L, i, b(k)) * v.t(b(L), b(j), l);
                     });
            },
            ev);
  add_mixed("CMP-1NK",
            [](const Eval& e, int i, int j, int k, int l) {
              const auto& v = e.v;
              auto b = [&](int x) { return e.b(x); };
              return v.R(i, b(j), k, b(l)) + 0.25 * sum(e.n, [&](int L) {
                       return v.t(i, k, b(L)) * v.t(b(j), b(l), L);
                     });
            },
            ev);
  ev["CMP-1H"] = [](const Eval& e, ResidualTracker& r) {
    const auto& v = e.v;
    for (int i = 0; i < e.n; ++i) {
      const int bi = e.b(i);
      const cplx rhs = v.R(i, bi, i, bi) + sum(e.n, [&](int L) {
                         return v.t(i, L, bi) * v.t(bi, e.b(L), i) -
                                0.5 * v.t(i, L, i) * v.t(bi, e.b(L), bi);
                       });
      r.add(v.RL(i, bi, i, bi), rhs, {i, bi, i, bi});
    }
  };

  auto add_one_bar = [](std::string code,
                        std::function<cplx(const Eval&, int, int, int, int)> rhs,
                        std::map<std::string, Evaluator>& out) {
    out[std::move(code)] = [rhs](const Eval& e, ResidualTracker& r) {
      loop(4, e.n, [&](std::span<const int> x) {
        const int i = x[0], j = x[1], k = x[2], l = x[3];
        r.add(e.v.RL(i, j, k, e.b(l)), rhs(e, i, j, k, l), {i, j, k, e.b(l)});
      });
    };
  };
  add_one_bar("CMP-2",
              [](const Eval& e, int i, int j, int k, int l) {
                return lc_one_bar(e.v, i, j, k, l);
              },
              ev);
  add_one_bar("CMP-2HERM",
              [](const Eval& e, int i, int j, int k, int l) {
                const auto& v = e.v;
                return 0.5 * v.dt(i, j, l, k) + 0.25 * sum(e.n, [&](int L) {
                         return v.t(j, L, l) * v.t(i, k, L) -
                                v.t(i, L, l) * v.t(j, k, L);
                       });
              },
              ev);
  add_one_bar("CMP-2QK",
              [](const Eval& e, int i, int j, int k, int l) {
                return e.v.R(k, e.b(l), i, j);
              },
              ev);
  add_one_bar("CMP-2NK", [](const Eval&, int, int, int, int) { return cplx{}; },
              ev);

  auto add_holo = [](std::string code,
                     std::function<cplx(const Eval&, int, int, int, int)> rhs,
                     std::map<std::string, Evaluator>& out) {
    out[std::move(code)] = [rhs](const Eval& e, ResidualTracker& r) {
      loop(4, e.n, [&](std::span<const int> x) {
        const int i = x[0], j = x[1], k = x[2], l = x[3];
        r.add(e.v.RL(i, j, k, l), rhs(e, i, j, k, l), {i, j, k, l});
      });
    };
  };
  add_holo("CMP-3",
           [](const Eval& e, int i, int j, int k, int l) {
             return lc_holomorphic(e.v, i, j, k, l);
           },
           ev);
  add_holo("CMP-3HERM", [](const Eval&, int, int, int, int) { return cplx{}; },
           ev);
  add_holo("CMP-3QK",
           [](const Eval& e, int i, int j, int k, int l) {
             const auto& v = e.v;
             auto b = [&](int x) { return e.b(x); };
             return 0.5 * (v.dt(k, l, b(j), i) - v.dt(k, l, b(i), j)) +
                    0.5 * (v.dt(i, j, b(l), k) - v.dt(i, j, b(k), l));
           },
           ev);
  add_holo("CMP-3NK", [](const Eval&, int, int, int, int) { return cplx{}; },
           ev);

  // Ricci comparisons.
  ev["RIC-AK"] = [](const Eval& e, ResidualTracker& r) {
    const auto& v = e.v;
    const auto& ric = v.ricci();
    for (int i = 0; i < e.n; ++i) {
      for (int j = 0; j < e.n; ++j) {
        const cplx holo = sum(e.n, [&](int L) {
          return v.R(i, e.b(L), L, j) + v.R(j, e.b(L), L, i);
        });
        r.add(ric.ricci_lc_holo(i, j), holo, {i, j});
        const cplx mixed = ric.ricci_first(i, e.b(j)) -
                           2.0 * sum2(e.n, [&](int L, int M) {
                             return v.t(i, M, e.b(L)) * v.t(e.b(j), e.b(L), M);
                           });
        r.add(ric.ricci_lc_complex(i, j), mixed, {i, e.b(j)});
      }
    }
  };
  ev["RIC-NK"] = [](const Eval& e, ResidualTracker& r) {
    const auto& v = e.v;
    const auto& ric = v.ricci();
    for (int i = 0; i < e.n; ++i) {
      for (int j = 0; j < e.n; ++j) {
        r.add(ric.ricci_lc_holo(i, j), 0.0, {i, j});
        const cplx mixed = ric.ricci_first(i, e.b(j)) +
                           1.25 * sum2(e.n, [&](int L, int M) {
                             return v.t(i, L, e.b(M)) * v.t(e.b(j), e.b(L), M);
                           });
        r.add(ric.ricci_lc_complex(i, j), mixed, {i, e.b(j)});
      }
    }
  };

  ev["SCAL"] = [](const Eval& e, ResidualTracker& r) {
    const ScalarGap s = scalar_gap(e.g);
    r.add(s.gap, s.torsion_norm, {});
    // The inequality S^c <= S^* itself.
    r.add_value(std::max(0.0, -s.gap), {});
  };
  ev["SCAL-EQ"] = ev["HERM-4"];
  ev["PROP-NK"] = [](const Eval& e, ResidualTracker& r) {
    const auto& v = e.v;
    for (int i = 0; i < e.n; ++i) {
      for (int j = 0; j < e.n; ++j) {
        cplx s = 0.0;
        loop(4, e.n, [&](std::span<const int> x) {
          const int k = x[0], l = x[1], L = x[2], M = x[3];
          s += v.R(i, e.b(j), k, e.b(l)) * v.t(e.b(L), e.b(M), k) *
               v.t(L, M, e.b(l));
        });
        r.add(s, 0.0, {i, e.b(j)});
      }
    }
  };
  ev["DIM6-NK"] = [](const Eval& e, ResidualTracker& r) {
    const auto& ric = e.v.ricci();
    for (int i = 0; i < e.n; ++i) {
      for (int j = 0; j < e.n; ++j) {
        r.add(ric.ricci_first(i, e.b(j)), 0.0, {i, e.b(j)});
        r.add(ric.ricci_second(i, j), 0.0, {i, e.b(j)});
      }
    }
  };

  // Holomorphic sectional curvature ordering.
  ev["HSC-HERM"] = [](const Eval& e, ResidualTracker& r) {
    for (int i = 0; i < e.n; ++i) {
      const int bi = e.b(i);
      const double excess =
          std::real(e.v.RL(i, bi, i, bi)) - std::real(e.v.R(i, bi, i, bi));
      r.add_value(std::max(0.0, excess), {i, bi, i, bi});
    }
  };
  ev["HSC-QK"] = [](const Eval& e, ResidualTracker& r) {
    for (int i = 0; i < e.n; ++i) {
      const int bi = e.b(i);
      const double deficit =
          std::real(e.v.R(i, bi, i, bi)) - std::real(e.v.RL(i, bi, i, bi));
      r.add_value(std::max(0.0, deficit), {i, bi, i, bi});
    }
  };
  ev["HSC-NK"] = [](const Eval& e, ResidualTracker& r) {
    for (int i = 0; i < e.n; ++i) {
      const int bi = e.b(i);
      r.add(e.v.RL(i, bi, i, bi), e.v.R(i, bi, i, bi), {i, bi, i, bi});
    }
  };

  // Frame-level checks of first-order structure.
  ev["NIJ"] = [](const Eval& e, ResidualTracker& r) {
    if (e.ctx.frame == nullptr) throw DependencyError("frame");
    const CTensor N =
        nijenhuis_components(*e.ctx.frame, e.g.point, e.ctx.steps.first);
    const auto& v = e.v;
    loop(3, e.n, [&](std::span<const int> x) {
      const int i = x[0], j = x[1], k = x[2];
      const int bj = e.b(j), bk = e.b(k);
      r.add(N(i, j, bk), 4.0 * v.t(i, j, bk), {i, j, bk});
      r.add(N(i, j, k), 0.0, {i, j, k});
      r.add(N(i, bj, bk), 0.0, {i, bj, bk});
      r.add(N(i, bj, k), 0.0, {i, bj, k});
    });
  };
  ev["CONN-CMP"] = [](const Eval& e, ResidualTracker& r) {
    const auto& f = e.g.first;
    const int m = 2 * e.n;
    loop(3, m, [&](std::span<const int> x) {
      const int A = x[0], B = x[1], C = x[2];
      const int As = conj_index(A, e.n);
      const cplx lhs = f.levi_civita.gamma(As, C, B);
      const cplx rhs = f.canonical.gamma(As, C, B) +
                       0.5 * (f.torsion(B, C, As) +
                              f.torsion(C, A, conj_index(B, e.n)) -
                              f.torsion(A, B, conj_index(C, e.n)));
      r.add(lhs, rhs, {A, B, C});
    });
  };

  ev["RAW-B1"] = [](const Eval& e, ResidualTracker& r) {
    if (e.ctx.frame == nullptr) throw DependencyError("frame");
    raw_first_bianchi(*e.ctx.frame, e.g.point, e.ctx.steps, e.ctx.seed, r);
  };
  ev["RAW-B2"] = [](const Eval& e, ResidualTracker& r) {
    if (e.ctx.frame == nullptr) throw DependencyError("frame");
    raw_second_bianchi(*e.ctx.frame, e.g.point, e.ctx.steps, e.ctx.seed, r);
  };
  return ev;
}

const std::map<std::string, Evaluator>& evaluators() {
  static const std::map<std::string, Evaluator> ev = build_evaluators();
  return ev;
}

}  // namespace

const char* to_string(Applicability a) {
  switch (a) {
    case Applicability::All:
      return "all";
    case Applicability::Hermitian:
      return "hermitian";
    case Applicability::Quasi:
      return "quasi";
    case Applicability::Almost:
      return "almost";
    case Applicability::Nearly:
      return "nearly";
    case Applicability::NearlyDim6:
      return "nearly-dim6";
    case Applicability::KahlerEquality:
      return "kahler-equality";
  }
  return "all";
}

const char* to_string(IdentityStatus s) {
  switch (s) {
    case IdentityStatus::Pass:
      return "pass";
    case IdentityStatus::Fail:
      return "fail";
    case IdentityStatus::NotApplicable:
      return "not-applicable";
  }
  return "fail";
}

UnknownIdentityError::UnknownIdentityError(const std::string& code)
    : GeometryError("unknown identity code '" + code + "'") {}

const std::vector<IdentityId>& identity_catalog() {
  using A = Applicability;
  using D = TableDepth;
  static const std::vector<IdentityId> catalog = {
      {"GEN-B1", A::All, D::Second, kCurvatureTol, "cyclic nabla tau^(0,1) vs tau.tau"},
      {"GEN-B2", A::All, D::Second, kCurvatureTol, "R_{ij'kl'} - R_{kj'il'}"},
      {"GEN-B3", A::All, D::Second, kCurvatureTol, "R_{ij'kl'} - R_{il'kj'}"},
      {"GEN-B4", A::All, D::Second, kCurvatureTol, "R_{ij'kl'} - R_{kl'ij'}"},
      {"GEN-B5", A::All, D::Second, kCurvatureTol, "R_{ij'kl} from nabla tau"},
      {"GEN-B6", A::All, D::Second, kCurvatureTol, "cyclic R_{ij'kl}"},
      {"GEN-B7", A::All, D::Third, kDerivativeTol, "cyclic nabla R_{ij'kl}"},
      {"GEN-B8", A::All, D::Third, kDerivativeTol, "nabla R_{ij'kl';m} swap"},
      {"GEN-B9", A::All, D::Third, kDerivativeTol, "nabla R_{ij'kl';m'} swap"},
      {"HERM-1", A::Hermitian, D::Second, kCurvatureTol, "Hermitian GEN-B2"},
      {"HERM-2", A::Hermitian, D::Second, kCurvatureTol, "Hermitian GEN-B3"},
      {"HERM-3", A::Hermitian, D::Second, kCurvatureTol, "Hermitian GEN-B4"},
      {"HERM-4", A::Hermitian, D::Second, kCurvatureTol, "R_{ij'kl} = 0"},
      {"HERM-5", A::Hermitian, D::Second, kCurvatureTol, "cyclic nabla tau^(1,0)"},
      {"HERM-6", A::Hermitian, D::Third, kDerivativeTol, "Hermitian GEN-B8"},
      {"HERM-7", A::Hermitian, D::Third, kDerivativeTol, "Hermitian GEN-B9"},
      {"QK-1", A::Quasi, D::Second, kCurvatureTol, "cyclic nabla tau^(0,1) = 0"},
      {"QK-2", A::Quasi, D::Second, kCurvatureTol, "quasi-Kahler GEN-B2"},
      {"QK-3", A::Quasi, D::Second, kCurvatureTol, "quasi-Kahler GEN-B3"},
      {"QK-4", A::Quasi, D::Second, kCurvatureTol, "quasi-Kahler GEN-B4"},
      {"QK-5", A::Quasi, D::Second, kCurvatureTol, "R_{ij'kl} = -nabla tau"},
      {"QK-6", A::Quasi, D::Second, kCurvatureTol, "cyclic R_{ij'kl} = 0"},
      {"QK-7", A::Quasi, D::Third, kDerivativeTol, "quasi-Kahler GEN-B7"},
      {"QK-8", A::Quasi, D::Third, kDerivativeTol, "quasi-Kahler GEN-B8"},
      {"QK-9", A::Quasi, D::Third, kDerivativeTol, "quasi-Kahler GEN-B9"},
      {"NK-1", A::Nearly, D::Second, kCurvatureTol, "nearly-Kahler GEN-B2"},
      {"NK-2", A::Nearly, D::Second, kCurvatureTol, "nearly-Kahler GEN-B3"},
      {"NK-3", A::Nearly, D::Second, kCurvatureTol, "R_{ij'kl'} = R_{kl'ij'}"},
      {"NK-4", A::Nearly, D::Second, kCurvatureTol, "R' = R''"},
      {"NK-5", A::Nearly, D::Second, kCurvatureTol, "R_{ij'kl} = 0"},
      {"NK-6", A::Nearly, D::Second, kCurvatureTol, "cyclic tau.R = 0"},
      {"NK-7", A::Nearly, D::Third, kDerivativeTol, "nabla R_{ij'kl';m} symmetric"},
      {"NK-8", A::Nearly, D::Third, kDerivativeTol, "nabla R_{ij'kl';m'} symmetric"},
      {"KIRI", A::Nearly, D::Second, kDerivativeTol, "nabla tau = 0"},
      {"CMP-1", A::All, D::Second, kCurvatureTol, "R^L_{ij'kl'} from canonical data"},
      {"CMP-1H", A::All, D::Second, kCurvatureTol, "R^L_{ii'ii'} vs R_{ii'ii'}"},
      {"CMP-1HERM", A::Hermitian, D::Second, kCurvatureTol, "Hermitian CMP-1"},
      {"CMP-1QK", A::Quasi, D::Second, kCurvatureTol, "quasi-Kahler CMP-1"},
      {"CMP-1AK", A::Almost, D::Second, kCurvatureTol, "almost-Kahler CMP-1"},
      {"CMP-1NK", A::Nearly, D::Second, kCurvatureTol, "nearly-Kahler CMP-1"},
      {"CMP-2", A::All, D::Second, kCurvatureTol, "R^L_{ijkl'} from canonical data"},
      {"CMP-2HERM", A::Hermitian, D::Second, kCurvatureTol, "Hermitian CMP-2"},
      {"CMP-2QK", A::Quasi, D::Second, kCurvatureTol, "R^L_{ijkl'} = R_{kl'ij}"},
      {"CMP-2NK", A::Nearly, D::Second, kCurvatureTol, "R^L_{ijkl'} = 0"},
      {"CMP-3", A::All, D::Second, kCurvatureTol, "R^L_{ijkl} from canonical data"},
      {"CMP-3HERM", A::Hermitian, D::Second, kCurvatureTol, "R^L_{ijkl} = 0"},
      {"CMP-3QK", A::Quasi, D::Second, kCurvatureTol, "quasi-Kahler CMP-3"},
      {"CMP-3NK", A::Nearly, D::Second, kCurvatureTol, "R^L_{ijkl} = 0"},
      {"RIC-AK", A::Almost, D::Second, kCurvatureTol, "almost-Kahler Ricci comparison"},
      {"RIC-NK", A::Nearly, D::Second, kCurvatureTol, "nearly-Kahler Ricci comparison"},
      {"SCAL", A::Quasi, D::Second, kScalarTol, "S^* - S^c = torsion norm >= 0"},
      {"SCAL-EQ", A::KahlerEquality, D::Second, kCurvatureTol, "equality case: R_{ij'kl} = 0"},
      {"PROP-NK", A::Nearly, D::Second, kCurvatureTol, "R_{ij'kl'} tau tau contraction = 0"},
      {"DIM6-NK", A::NearlyDim6, D::Second, kCurvatureTol, "Ricci vanishes in dimension 6"},
      {"RAW-B1", A::All, D::First, kCurvatureTol, "first Bianchi on random fields"},
      {"RAW-B2", A::All, D::First, kDerivativeTol, "second Bianchi on random fields"},
      {"NIJ", A::All, D::First, kTorsionTol, "Nijenhuis frame components vs 4 tau"},
      {"CONN-CMP", A::All, D::First, kTorsionTol, "Levi-Civita = canonical + torsion terms"},
      {"HSC-HERM", A::Hermitian, D::Second, kTorsionTol, "R^L_{ii'ii'} <= R_{ii'ii'}"},
      {"HSC-QK", A::Quasi, D::Second, kTorsionTol, "R^L_{ii'ii'} >= R_{ii'ii'}"},
      {"HSC-NK", A::Nearly, D::Second, kCurvatureTol, "R^L_{ii'ii'} = R_{ii'ii'}"},
  };
  return catalog;
}

const IdentityId& find_identity(std::string_view code) {
  for (const auto& id : identity_catalog()) {
    if (id.code == code) return id;
  }
  throw UnknownIdentityError(std::string(code));
}

ScalarGap scalar_gap(const GeometryTables& tables) {
  const TableView v(tables);
  const int n = v.n();
  const auto& ric = v.ricci();
  double norm = 0.0;
  for_each_index(3, n, [&](std::span<const int> x) {
    const int L = x[0], M = x[1], N = x[2];
    norm += std::norm(v.t(L, M, N + n) + v.t(M, N, L + n) - v.t(N, L, M + n));
  });
  return {std::real(ric.s_star - ric.s_canonical), 0.25 * norm};
}

IdentityResult run_identity(const IdentityId& id, const GeometryTables& tables,
                            const IdentityContext& ctx) {
  const auto it = evaluators().find(id.code);
  if (it == evaluators().end()) throw UnknownIdentityError(id.code);
  if (id.depth >= TableDepth::Second && !tables.second) {
    throw DependencyError("curvature");
  }
  if (id.depth >= TableDepth::Third && !tables.dcurv) {
    throw DependencyError("curvature_derivatives");
  }
  const TableView view(tables);
  const Eval e{view, tables, ctx, tables.n};
  ResidualTracker track;
  it->second(e, track);

  IdentityResult res;
  res.code = id.code;
  res.point = tables.point;
  res.residual = track.value();
  res.tolerance = id.tolerance;
  res.status = res.residual < id.tolerance ? IdentityStatus::Pass
                                           : IdentityStatus::Fail;
  res.worst_indices = track.worst();
  return res;
}

bool applicable(Applicability a, const ClassificationReport& c, int n) {
  switch (a) {
    case Applicability::All:
      return true;
    case Applicability::Hermitian:
      return c.passes("hermitian");
    case Applicability::Quasi:
      return c.passes("quasi");
    case Applicability::Almost:
      return c.passes("almost");
    case Applicability::Nearly:
      return c.passes("nearly");
    case Applicability::NearlyDim6:
      return n == 3 && c.passes("nearly") && c.verdict("nearly").strict;
    case Applicability::KahlerEquality:
      return c.passes("quasi");
  }
  return false;
}

std::string index_label(int A, int n) {
  return A < n ? std::to_string(A + 1) : std::to_string(A - n + 1) + "b";
}

SuiteReport run_suite(const ChartedStructure& s, const std::string& label,
                      const std::vector<Point>& points,
                      const std::vector<std::string>& selection,
                      const SuiteOptions& options) {
  if (points.empty()) throw GeometryError("suite needs at least one point");
  std::vector<IdentityId> owned;
  if (selection.empty()) {
    owned = identity_catalog();
  } else {
    for (const auto& code : selection) {
      const IdentityId& id = find_identity(code);
      const bool seen = std::any_of(owned.begin(), owned.end(),
                                    [&](const IdentityId& o) { return o.code == id.code; });
      if (!seen) owned.push_back(id);
    }
  }
  if (options.tolerance) {
    if (!(*options.tolerance > 0.0)) {
      throw GeometryError("tolerance override must be positive");
    }
    for (auto& id : owned) id.tolerance = *options.tolerance;
  }
  std::vector<const IdentityId*> ids;
  for (const auto& id : owned) ids.push_back(&id);

  const UnitaryFrameField frame = unitary_frame(s, points);
  const StepLadder steps = StepLadder::from(options.fd);
  SuiteReport rep;
  rep.label = label;
  rep.fd = options.fd;
  rep.classification =
      classify(frame, points, options.classification_tol, steps.first);
  const int n = s.n();

  std::vector<const IdentityId*> active;
  TableDepth depth = TableDepth::First;
  for (const auto* id : ids) {
    if (applicable(id->applicability, rep.classification, n)) {
      active.push_back(id);
      depth = std::max(depth, id->depth);
    }
  }

  std::vector<GeometryTables> tables;
  if (!active.empty()) {
    tables.reserve(points.size());
    for (const auto& p : points) {
      tables.push_back(geometry_tables(frame, p, steps, depth));
    }
  }

  // The equality case needs the scalar gap to vanish at every point.
  bool equality_everywhere = !tables.empty() && depth >= TableDepth::Second;
  if (equality_everywhere) {
    for (const auto& t : tables) {
      if (std::abs(scalar_gap(t).gap) >= find_identity("SCAL").tolerance) {
        equality_everywhere = false;
      }
    }
  }

  const IdentityContext ctx{&frame, steps, options.seed};
  for (const auto* id : ids) {
    CodeSummary summary{id->code, 0.0, id->tolerance,
                        IdentityStatus::NotApplicable};
    const bool gated_out =
        std::find(active.begin(), active.end(), id) == active.end() ||
        (id->applicability == Applicability::KahlerEquality &&
         !equality_everywhere);
    if (gated_out) {
      IdentityResult r;
      r.code = id->code;
      r.tolerance = id->tolerance;
      r.status = IdentityStatus::NotApplicable;
      rep.results.push_back(std::move(r));
      rep.per_code.push_back(summary);
      continue;
    }
    summary.status = IdentityStatus::Pass;
    for (std::size_t k = 0; k < tables.size(); ++k) {
      IdentityResult r = run_identity(*id, tables[k], ctx);
      r.point_index = static_cast<int>(k);
      if (std::isnan(summary.max_residual) || std::isnan(r.residual) ||
          r.residual > summary.max_residual) {
        summary.max_residual = r.residual;
      }
      if (r.status == IdentityStatus::Fail) {
        summary.status = IdentityStatus::Fail;
        rep.pass = false;
      }
      rep.results.push_back(std::move(r));
    }
    rep.per_code.push_back(summary);
  }
  return rep;
}

}  // namespace ahg
