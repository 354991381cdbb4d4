#include "ahg/cli.hpp"

#include "ahg/comparison.hpp"
#include "ahg/identity_suite.hpp"
#include "ahg/manifold_zoo.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

namespace ahg {

namespace {

using json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string manifold;
  ZooParams params;
  int points = 5;
  std::uint64_t seed = 42;
  std::optional<double> tol;
  double fd_step = 1e-3;
  std::string fd_scheme = "central-4";
  bool richardson = false;
  std::string identities;
  std::string format = "json";
  std::string out_path;

  FDConfig fd() const {
    FDConfig c;
    c.step = fd_step;
    c.scheme = scheme_from_string(fd_scheme);
    c.richardson = richardson;
    c.validate();
    return c;
  }
};

std::vector<std::string> split_codes(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

json labels_of(const std::vector<int>& idx, int n) {
  json a = json::array();
  for (int A : idx) a.push_back(index_label(A, n));
  return a;
}

json point_json(const Point& p) {
  json a = json::array();
  for (Eigen::Index k = 0; k < p.size(); ++k) a.push_back(p[k]);
  return a;
}

json meta_json(const RunConfig& cfg, const FDConfig& fd) {
  json m;
  m["version"] = kVersion;
  m["seed"] = cfg.seed;
  m["fd"] = {{"step", fd.step},
             {"scheme", to_string(fd.scheme)},
             {"richardson", fd.richardson}};
  m["manifold"] = cfg.manifold;
  m["params"] = {{"n", cfg.params.n},
                 {"radius", cfg.params.radius},
                 {"amplitude", cfg.params.amplitude},
                 {"seed", cfg.params.seed}};
  m["points"] = cfg.points;
  return m;
}

json classification_json(const ClassificationReport& c) {
  json j;
  j["tol"] = c.tol;
  j["sample_count"] = c.sample_count;
  json labels = json::array();
  for (const auto& v : c.labels) {
    labels.push_back({{"label", v.label},
                      {"residual", v.residual},
                      {"status", to_string(v.status)},
                      {"strict", v.strict}});
  }
  j["labels"] = labels;
  j["passed"] = c.passed();
  return j;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << std::scientific << v;
  return os.str();
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) s += sep;
    s += v[k];
  }
  return s;
}

std::vector<std::string> index_strings(const std::vector<int>& idx, int n) {
  std::vector<std::string> s;
  for (int A : idx) s.push_back(index_label(A, n));
  return s;
}

void human_classification(std::ostream& os, const ClassificationReport& c) {
  os << "classification (tol " << fmt(c.tol) << ", " << c.sample_count
     << " points)\n";
  for (const auto& v : c.labels) {
    os << "  " << std::left << std::setw(10) << v.label << std::setw(13)
       << to_string(v.status) << fmt(v.residual) << (v.strict ? "  strict" : "")
       << "\n";
  }
}

void write_output(const RunConfig& cfg, const std::string& text,
                  std::ostream& out) {
  if (cfg.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out_path, std::ios::binary);
  if (!f) throw UsageError("cannot open output file '" + cfg.out_path + "'");
  f << text;
}

ZooEntry entry_for(const RunConfig& cfg) {
  if (cfg.manifold.empty()) throw UsageError("no manifold given");
  const auto& cat = zoo_catalog();
  const bool known = std::any_of(cat.begin(), cat.end(), [&](const auto& d) {
    return d.name == cfg.manifold;
  });
  if (!known) throw UsageError("unknown manifold '" + cfg.manifold + "'");
  try {
    return make_zoo_entry(cfg.manifold, cfg.params);
  } catch (const GeometryError& e) {
    throw UsageError(e.what());
  }
}

std::string render_suite(const RunConfig& cfg, const SuiteReport& rep, int n) {
  if (cfg.format == "json") {
    json j;
    j["meta"] = meta_json(cfg, rep.fd);
    j["classification"] = classification_json(rep.classification);
    json ids = json::array();
    for (const auto& r : rep.results) {
      ids.push_back({{"code", r.code},
                     {"point", r.point_index},
                     {"coords", point_json(r.point)},
                     {"residual", r.residual},
                     {"tol", r.tolerance},
                     {"pass", r.pass()},
                     {"status", to_string(r.status)},
                     {"worst_indices", labels_of(r.worst_indices, n)}});
    }
    j["identities"] = ids;
    j["pass"] = rep.pass;
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  if (cfg.format == "csv") {
    os << "code,point,residual,tol,pass,status,worst_indices\n";
    for (const auto& r : rep.results) {
      os << r.code << ',' << r.point_index << ','
         << std::setprecision(17) << r.residual << ',' << r.tolerance << ','
         << (r.pass() ? "true" : "false") << ',' << to_string(r.status) << ','
         << join(index_strings(r.worst_indices, n), " ") << "\n";
    }
    return os.str();
  }
  os << rep.label << "  (" << cfg.points << " points, seed " << cfg.seed
     << ", fd " << to_string(rep.fd.scheme) << " h=" << rep.fd.step << ")\n";
  human_classification(os, rep.classification);
  std::vector<CodeSummary> rows = rep.per_code;
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    const bool na = a.status == IdentityStatus::NotApplicable;
    const bool nb = b.status == IdentityStatus::NotApplicable;
    if (na != nb) return nb;
    return a.max_residual > b.max_residual;
  });
  os << "identities (max residual over points, worst first)\n";
  for (const auto& c : rows) {
    os << "  " << std::left << std::setw(11) << c.code << std::setw(16)
       << to_string(c.status);
    if (c.status != IdentityStatus::NotApplicable) {
      os << fmt(c.max_residual) << "  tol " << fmt(c.tolerance);
    }
    os << "\n";
  }
  for (const auto& r : rep.results) {
    if (r.status != IdentityStatus::Fail) continue;
    os << "FAIL " << r.code << " point " << r.point_index << " residual "
       << fmt(r.residual) << " at (" << join(index_strings(r.worst_indices, n), ",")
       << ")\n";
  }
  os << (rep.pass ? "PASS" : "FAIL") << "\n";
  return os.str();
}

int cmd_zoo_list(const RunConfig& cfg, std::ostream& out) {
  std::ostringstream os;
  if (cfg.format == "json") {
    json arr = json::array();
    for (const auto& d : zoo_catalog()) {
      json params = json::array();
      for (const auto& p : d.parameters) {
        params.push_back(
            {{"name", p.name}, {"type", p.type}, {"description", p.description}});
      }
      arr.push_back({{"name", d.name},
                     {"expected_labels", d.expected_labels},
                     {"parameters", params},
                     {"summary", d.summary}});
    }
    os << arr.dump(2) << "\n";
  } else if (cfg.format == "csv") {
    os << "name,expected_labels,parameters\n";
    for (const auto& d : zoo_catalog()) {
      std::vector<std::string> ps;
      for (const auto& p : d.parameters) ps.push_back(p.name + ":" + p.type);
      os << d.name << ',' << join(d.expected_labels, " ") << ','
         << join(ps, " ") << "\n";
    }
  } else {
    for (const auto& d : zoo_catalog()) {
      os << d.name << "  " << d.summary << "\n";
      os << "  expected: "
         << (d.expected_labels.empty() ? "(none)" : join(d.expected_labels, ", "))
         << "\n";
      for (const auto& p : d.parameters) {
        os << "  --" << p.name << " <" << p.type << ">  " << p.description
           << "\n";
      }
    }
  }
  write_output(cfg, os.str(), out);
  return kExitPass;
}

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
  const ZooEntry e = entry_for(cfg);
  const FDConfig fd = cfg.fd();
  const auto pts = sample_points(e, cfg.points, cfg.seed);
  const ClassificationReport rep =
      classify(e.structure, pts, cfg.tol.value_or(1e-6), fd);
  std::ostringstream os;
  if (cfg.format == "json") {
    json j;
    j["meta"] = meta_json(cfg, fd);
    j["classification"] = classification_json(rep);
    os << j.dump(2) << "\n";
  } else if (cfg.format == "csv") {
    os << "label,status,residual,strict\n";
    for (const auto& v : rep.labels) {
      os << v.label << ',' << to_string(v.status) << ','
         << std::setprecision(17) << v.residual << ','
         << (v.strict ? "true" : "false") << "\n";
    }
  } else {
    os << e.name << "  (" << cfg.points << " points, seed " << cfg.seed << ")\n";
    human_classification(os, rep);
  }
  write_output(cfg, os.str(), out);
  return kExitPass;
}

int cmd_check(const RunConfig& cfg, std::ostream& out) {
  const auto selection = split_codes(cfg.identities);
  for (const auto& code : selection) {
    try {
      find_identity(code);
    } catch (const UnknownIdentityError& ex) {
      throw UsageError(ex.what());
    }
  }
  const ZooEntry e = entry_for(cfg);
  SuiteOptions opt;
  opt.fd = cfg.fd();
  opt.seed = cfg.seed;
  opt.tolerance = cfg.tol;
  const auto pts = sample_points(e, cfg.points, cfg.seed);
  const SuiteReport rep = run_suite(e.structure, e.name, pts, selection, opt);
  write_output(cfg, render_suite(cfg, rep, e.structure.n()), out);
  return rep.pass ? kExitPass : kExitFailure;
}

int cmd_crosscheck(const RunConfig& cfg, std::ostream& out) {
  const ZooEntry e = entry_for(cfg);
  const FDConfig fd = cfg.fd();
  const double tol = cfg.tol.value_or(1e-4);
  const auto pts = sample_points(e, cfg.points, cfg.seed);
  const UnitaryFrameField frame = unitary_frame(e.structure, pts);
  const StepLadder steps = StepLadder::from(fd);
  const int n = e.structure.n();

  double worst = 0.0;
  std::vector<CrosscheckResult> per_point;
  for (const auto& p : pts) {
    const GeometryTables t = geometry_tables(frame, p, steps, TableDepth::Second);
    per_point.push_back(crosscheck_lc_curvature(t));
    const double d = per_point.back().max_discrepancy;
    if (std::isnan(d) || d > worst) worst = d;
  }
  const bool pass = worst < tol;

  std::ostringstream os;
  if (cfg.format == "json") {
    json j;
    j["meta"] = meta_json(cfg, fd);
    json arr = json::array();
    for (std::size_t k = 0; k < per_point.size(); ++k) {
      arr.push_back({{"point", static_cast<int>(k)},
                     {"coords", point_json(pts[k])},
                     {"max_discrepancy", per_point[k].max_discrepancy},
                     {"worst_indices", labels_of(per_point[k].worst_indices, n)}});
    }
    j["crosscheck"] = {{"tol", tol},
                       {"max_discrepancy", worst},
                       {"pass", pass},
                       {"points", arr}};
    os << j.dump(2) << "\n";
  } else if (cfg.format == "csv") {
    os << "point,max_discrepancy,worst_indices\n";
    for (std::size_t k = 0; k < per_point.size(); ++k) {
      os << k << ',' << std::setprecision(17) << per_point[k].max_discrepancy
         << ',' << join(index_strings(per_point[k].worst_indices, n), " ")
         << "\n";
    }
  } else {
    os << e.name << "  Levi-Civita curvature: direct vs reconstructed\n";
    for (std::size_t k = 0; k < per_point.size(); ++k) {
      os << "  point " << k << "  " << fmt(per_point[k].max_discrepancy)
         << "  at (" << join(index_strings(per_point[k].worst_indices, n), ",")
         << ")\n";
    }
    os << "max discrepancy " << fmt(worst) << "  tol " << fmt(tol) << "  "
       << (pass ? "PASS" : "FAIL") << "\n";
  }
  write_output(cfg, os.str(), out);
  return pass ? kExitPass : kExitFailure;
}

void add_run_options(CLI::App* sub, RunConfig& cfg, bool identities) {
  sub->add_option("manifold,--manifold", cfg.manifold, "Zoo entry name");
  sub->add_option("--n", cfg.params.n, "Complex dimension");
  sub->add_option("--radius", cfg.params.radius, "Sphere radius");
  sub->add_option("--amplitude", cfg.params.amplitude, "Perturbation amplitude");
  sub->add_option("--points", cfg.points, "Number of sample points")
      ->check(CLI::PositiveNumber);
  sub->add_option("--seed", cfg.seed, "Seed for sampling and generated structures");
  sub->add_option("--tol", cfg.tol, "Tolerance override")
      ->check(CLI::PositiveNumber);
  sub->add_option("--fd-step", cfg.fd_step, "Finite-difference step")
      ->check(CLI::PositiveNumber);
  sub->add_option("--fd-scheme", cfg.fd_scheme, "central-2 or central-4")
      ->check(CLI::IsMember({"central-2", "central-4"}));
  sub->add_flag("--richardson", cfg.richardson, "Richardson extrapolation");
  if (identities) {
    sub->add_option("--identities", cfg.identities,
                    "Comma-separated identity codes (default: all)");
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Identity checker for almost Hermitian structures", "ahgeom"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  RunConfig cfg;
  auto format_opt = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "json, csv or human")
        ->check(CLI::IsMember({"json", "csv", "human"}));
    sub->add_option("--out", cfg.out_path, "Write the report to a file");
  };

  CLI::App* zoo = app.add_subcommand("zoo-list", "List built-in structures");
  format_opt(zoo);
  CLI::App* cls = app.add_subcommand("classify", "Classify a structure");
  add_run_options(cls, cfg, false);
  format_opt(cls);
  CLI::App* chk = app.add_subcommand("check", "Evaluate identities");
  add_run_options(chk, cfg, true);
  format_opt(chk);
  CLI::App* xc = app.add_subcommand(
      "crosscheck", "Compare direct and reconstructed Levi-Civita curvature");
  add_run_options(xc, cfg, false);
  format_opt(xc);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    // Subcommand help arrives as CallForHelp from the subcommand parser.
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitPass;
    }
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  cfg.params.seed = cfg.seed;

  try {
    if (zoo->parsed()) return cmd_zoo_list(cfg, out);
    if (cls->parsed()) return cmd_classify(cfg, out);
    if (chk->parsed()) return cmd_check(cfg, out);
    if (xc->parsed()) return cmd_crosscheck(cfg, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const GeometryError& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace ahg
