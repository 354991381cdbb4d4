// Runs every acceptance criterion at its stated tolerance and prints one
// PASS/FAIL line per criterion. Exit status is non-zero if any fails.

#include "ahg/cli.hpp"
#include "ahg/comparison.hpp"
#include "ahg/identity_suite.hpp"
#include "ahg/manifold_zoo.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>

using namespace ahg;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

struct CliRun {
  int code;
  std::string out;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str()};
}

ZooEntry zoo(const std::string& name, int n = 2, std::uint64_t seed = 42,
             double amplitude = 0.1) {
  ZooParams p;
  p.n = n;
  p.seed = seed;
  p.amplitude = amplitude;
  return make_zoo_entry(name, p);
}

struct Sampled {
  ZooEntry e;
  std::vector<Point> points;
  UnitaryFrameField frame;

  Sampled(ZooEntry entry, int count, std::uint64_t seed)
      : e(std::move(entry)),
        points(sample_points(e, count, seed)),
        frame(unitary_frame(e.structure, points)) {}

  std::vector<GeometryTables> tables(TableDepth d, const FDConfig& cfg = {}) const {
    std::vector<GeometryTables> out;
    for (const auto& p : points) {
      out.push_back(geometry_tables(frame, p, StepLadder::from(cfg), d));
    }
    return out;
  }
};

const std::vector<std::string> kGen = {"GEN-B1", "GEN-B2", "GEN-B3",
                                       "GEN-B4", "GEN-B5", "GEN-B6",
                                       "GEN-B7", "GEN-B8", "GEN-B9"};

Outcome criterion1() {
  Outcome o;
  const CliRun r = cli({"check", "flat_cn", "--n", "2", "--points", "5"});
  o.require(r.code == 0, "exit code " + std::to_string(r.code));
  const auto doc = nlohmann::json::parse(r.out);
  double worst = 0.0;
  int applicable = 0;
  for (const auto& id : doc["identities"]) {
    if (id["status"] == "not-applicable") continue;
    ++applicable;
    worst = std::max(worst, id["residual"].get<double>());
  }
  o.require(applicable > 0, "nothing evaluated");
  o.require(worst < 1e-10, "max residual " + sci(worst));
  o.detail = o.detail.empty() ? "max residual " + sci(worst) + " over " +
                                    std::to_string(applicable) + " results"
                              : o.detail;
  return o;
}

Outcome criterion2() {
  Outcome o;
  double worst_algebraic = 0.0, worst_derivative = 0.0;
  auto run = [&](const ZooEntry& e, std::uint64_t seed) {
    SuiteOptions opt;
    opt.seed = seed;
    const SuiteReport rep =
        run_suite(e.structure, e.name, sample_points(e, 10, seed), kGen, opt);
    for (const auto& r : rep.results) {
      const bool third = find_identity(r.code).depth == TableDepth::Third;
      const double limit = third ? 1e-3 : 1e-4;
      double& worst = third ? worst_derivative : worst_algebraic;
      worst = std::max(worst, r.residual);
      o.require(r.residual < limit, e.name + " " + r.code + " " + sci(r.residual));
    }
  };
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    run(random_torus_structure(2, seed, 0.1), seed);
  }
  for (const auto& d : zoo_catalog()) run(zoo(d.name), 42);
  if (o.pass) {
    o.detail = "B1-B6 max " + sci(worst_algebraic) + ", B7-B9 max " +
               sci(worst_derivative);
  }
  return o;
}

Outcome criterion3() {
  Outcome o;
  const Sampled s(s6_nearly_kahler(), 10, 3);
  double worst = 0.0;
  for (const auto& t : s.tables(TableDepth::Second)) {
    worst = std::max(worst, t.second->dtau.max_abs());
  }
  o.require(worst < 1e-4, "max |nabla tau| " + sci(worst));
  if (o.pass) o.detail = "max |nabla tau| " + sci(worst);
  return o;
}

Outcome criterion4() {
  Outcome o;
  const Sampled s(s6_nearly_kahler(), 10, 4);
  double first = 0.0, diff = 0.0;
  for (const auto& t : s.tables(TableDepth::Second)) {
    const auto& ric = *t.ricci;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        first = std::max(first, std::abs(ric.ricci_first(i, j + 3)));
        diff = std::max(diff, std::abs(ric.ricci_first(i, j + 3) -
                                       ric.ricci_second(i, j)));
      }
    }
  }
  o.require(first < 1e-4, "max |R'_{ij-bar}| " + sci(first));
  o.require(diff < 1e-4, "max |R' - R''| " + sci(diff));
  if (o.pass) {
    o.detail = "max |R_{ij-bar}| " + sci(first) + ", max |R' - R''| " + sci(diff);
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  double worst = 0.0;
  for (const char* name : {"flat_cn", "round_s2", "hopf_surface",
                           "s6_nearly_kahler", "random_torus"}) {
    const Sampled s(zoo(name), 10, 42);
    for (const auto& t : s.tables(TableDepth::Second)) {
      const double d = crosscheck_lc_curvature(t).max_discrepancy;
      worst = std::max(worst, d);
      o.require(d < 1e-4, std::string(name) + " " + sci(d));
    }
  }
  if (o.pass) o.detail = "max discrepancy " + sci(worst);
  return o;
}

Outcome criterion6() {
  Outcome o;
  double worst_gap_error = 0.0, worst_kahler = 0.0;
  int quasi_entries = 0;
  auto entries = std::vector<ZooEntry>{};
  for (const auto& d : zoo_catalog()) entries.push_back(zoo(d.name));
  entries.push_back(flat_cn(3));
  entries.push_back(round_s2(2.0));
  for (const auto& e : entries) {
    const auto pts = sample_points(e, 10, 6);
    const auto cls = classify(e.structure, pts, 1e-6, FDConfig{});
    if (!cls.passes("quasi")) continue;
    ++quasi_entries;
    const UnitaryFrameField F = unitary_frame(e.structure, pts);
    for (const auto& p : pts) {
      const auto t = geometry_tables(F, p, StepLadder::from(FDConfig{}),
                                     TableDepth::Second);
      const ScalarGap g = scalar_gap(t);
      const double sc = std::real(t.ricci->s_canonical);
      const double ss = std::real(t.ricci->s_star);
      o.require(sc <= ss + 1e-8, e.name + " S^c > S^*");
      const double err = std::abs(g.gap - g.torsion_norm);
      worst_gap_error = std::max(worst_gap_error, err);
      o.require(err < 1e-5, e.name + " gap vs torsion norm " + sci(err));
      if (cls.passes("kahler")) {
        worst_kahler = std::max(worst_kahler, std::abs(g.gap));
        o.require(std::abs(g.gap) < 1e-8, e.name + " Kahler gap " + sci(g.gap));
      }
    }
  }
  o.require(quasi_entries >= 3, "too few quasi-Kahler entries");
  if (o.pass) {
    o.detail = std::to_string(quasi_entries) + " quasi-Kahler entries, |gap - norm| " +
               sci(worst_gap_error) + ", Kahler gap " + sci(worst_kahler);
  }
  return o;
}

Outcome criterion7() {
  Outcome o;
  const Sampled s(hopf_surface(), 10, 7);
  const int n = 2;
  double r20 = 0.0, rl = 0.0, order = -1e300;
  for (const auto& t : s.tables(TableDepth::Second)) {
    const TableView v(t);
    for_each_index(4, n, [&](std::span<const int> x) {
      r20 = std::max(r20, std::abs(v.R(x[0], x[1] + n, x[2], x[3])));
      rl = std::max(rl, std::abs(v.RL(x[0], x[1], x[2], x[3])));
    });
    for (int i = 0; i < n; ++i) {
      order = std::max(order, std::real(v.RL(i, i + n, i, i + n)) -
                                  std::real(v.R(i, i + n, i, i + n)));
    }
  }
  o.require(r20 < 1e-4, "max |R_{ij-bar kl}| " + sci(r20));
  o.require(rl < 1e-4, "max |R^L_{ijkl}| " + sci(rl));
  o.require(order <= 1e-6, "R^L_{ii-bar ii-bar} - R_{ii-bar ii-bar} = " + sci(order));
  if (o.pass) {
    o.detail = "max |R_{ij-bar kl}| " + sci(r20) + ", max |R^L_{ijkl}| " + sci(rl) +
               ", max (R^L - R)_{ii-bar ii-bar} " + sci(order);
  }
  return o;
}

Outcome criterion8() {
  Outcome o;
  const Sampled s(s6_nearly_kahler(), 10, 8);
  const int n = 3;
  double hsc = 0.0, one_bar = 0.0, holo = 0.0, ric = 0.0, prop = 0.0;
  const IdentityContext ctx{&s.frame, StepLadder::from(FDConfig{}), 8};
  for (const auto& t : s.tables(TableDepth::Second)) {
    const TableView v(t);
    for (int i = 0; i < n; ++i) {
      hsc = std::max(hsc, std::abs(v.RL(i, i + n, i, i + n) - v.R(i, i + n, i, i + n)));
    }
    for_each_index(4, n, [&](std::span<const int> x) {
      one_bar = std::max(one_bar, std::abs(v.RL(x[0], x[1], x[2], x[3] + n)));
      holo = std::max(holo, std::abs(v.RL(x[0], x[1], x[2], x[3])));
    });
    ric = std::max(ric, run_identity(find_identity("RIC-NK"), t, ctx).residual);
    prop = std::max(prop, run_identity(find_identity("PROP-NK"), t, ctx).residual);
  }
  o.require(hsc < 1e-4, "holomorphic sectional " + sci(hsc));
  o.require(one_bar < 1e-4, "max |R^L_{ijkl-bar}| " + sci(one_bar));
  o.require(holo < 1e-4, "max |R^L_{ijkl}| " + sci(holo));
  o.require(ric < 1e-4, "RIC-NK " + sci(ric));
  o.require(prop < 1e-4, "PROP-NK " + sci(prop));
  if (o.pass) {
    o.detail = "HSC " + sci(hsc) + ", R^L_{ijkl-bar} " + sci(one_bar) +
               ", R^L_{ijkl} " + sci(holo) + ", RIC-NK " + sci(ric) +
               ", PROP-NK " + sci(prop);
  }
  return o;
}

// Uses the second-order stencil at steps where truncation error dominates
// round-off, so the residual measures discretization error.
Outcome criterion9() {
  Outcome o;
  const ZooEntry e = zoo("random_torus", 2, 42);
  const auto pts = sample_points(e, 10, 42);
  auto residual = [&](double h) {
    SuiteOptions opt;
    opt.fd.scheme = FDScheme::Central2;
    opt.fd.step = h;
    opt.seed = 42;
    const SuiteReport r = run_suite(e.structure, e.name, pts, {"GEN-B2"}, opt);
    return r.per_code.at(0).max_residual;
  };
  const double coarse = residual(1e-2);
  const double fine = residual(5e-3);
  const double ratio = coarse / fine;
  o.require(ratio >= 3.0, "ratio " + sci(ratio));
  o.detail = "central-2 h=1e-2: " + sci(coarse) + ", h=5e-3: " + sci(fine) +
             ", ratio " + std::to_string(ratio);
  return o;
}

Outcome criterion10() {
  Outcome o;
  const std::vector<std::vector<std::string>> commands = {
      {"zoo-list"},
      {"classify", "s6_nearly_kahler", "--points", "4"},
      {"check", "random_torus", "--seed", "42", "--points", "3"},
      {"check", "s6_nearly_kahler", "--identities", "KIRI,NK-7,RAW-B2", "--points", "2"},
      {"crosscheck", "hopf_surface", "--points", "3"},
  };
  for (const auto& args : commands) {
    const CliRun a = cli(args);
    const CliRun b = cli(args);
    o.require(!a.out.empty() && a.out == b.out, "differs: " + args.front());
    o.require(a.code == b.code, "exit codes differ: " + args.front());
  }
  if (o.pass) o.detail = std::to_string(commands.size()) + " commands byte-identical";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"trivial baseline (flat C^2)", criterion1},
      {"universal Bianchi identities", criterion2},
      {"parallel torsion on S^6", criterion3},
      {"Ricci vanishing on S^6", criterion4},
      {"Levi-Civita curvature crosscheck", criterion5},
      {"scalar curvature inequality", criterion6},
      {"Hermitian vanishing on the Hopf surface", criterion7},
      {"nearly-Kahler equalities on S^6", criterion8},
      {"convergence order", criterion9},
      {"determinism", criterion10},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failures;
    std::cout << "criterion " << (k + 1) << ": " << (o.pass ? "PASS" : "FAIL")
              << "  " << criteria[k].first << "  [" << o.detail << "]\n";
  }
  std::cout << (failures == 0 ? "all criteria passed" : "some criteria failed")
            << "\n";
  return failures == 0 ? 0 : 1;
}
