#include "ahg/manifold_zoo.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <array>
#include <cmath>
#include <numbers>

namespace ahg {

namespace {

Eigen::MatrixXd standard_j(int dim) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(dim, dim);
  for (int k = 0; k < dim / 2; ++k) {
    J(2 * k + 1, 2 * k) = 1.0;   // J dx_k = dy_k
    J(2 * k, 2 * k + 1) = -1.0;  // J dy_k = -dx_k
  }
  return J;
}

Point uniform_box(Rng& rng, int dim, double half_width) {
  Point p(dim);
  for (int a = 0; a < dim; ++a) p[a] = rng.uniform(-half_width, half_width);
  return p;
}

Point uniform_ball(Rng& rng, int dim, double radius) {
  while (true) {
    Point p = uniform_box(rng, dim, radius);
    if (p.norm() <= radius) return p;
  }
}

// Fano-plane triples (a, b, c) with e_a e_b = e_c, 1-based.
constexpr std::array<std::array<int, 3>, 7> kFano{{{1, 2, 4},
                                                   {2, 3, 5},
                                                   {3, 4, 6},
                                                   {4, 5, 7},
                                                   {5, 6, 1},
                                                   {6, 7, 2},
                                                   {7, 1, 3}}};

// Real matrix field with entries sum_k c_k sin(w_k . p + phi_k), w_k integer.
class TrigMatrixField {
 public:
  TrigMatrixField(int dim, int modes, Rng& rng) : dim_(dim) {
    terms_.resize(static_cast<std::size_t>(dim * dim));
    for (auto& entry : terms_) {
      for (int k = 0; k < modes; ++k) {
        Term t;
        t.freq = Eigen::VectorXd::Zero(dim);
        while (t.freq.isZero()) {
          for (int a = 0; a < dim; ++a) {
            t.freq[a] = std::floor(rng.uniform(-1.0, 2.0));
          }
        }
        t.coeff = rng.uniform(-1.0, 1.0);
        t.phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
        entry.push_back(std::move(t));
      }
    }
  }

  Eigen::MatrixXd operator()(const Point& p) const {
    Eigen::MatrixXd M(dim_, dim_);
    for (int r = 0; r < dim_; ++r) {
      for (int s = 0; s < dim_; ++s) {
        double v = 0.0;
        for (const auto& t : terms_[static_cast<std::size_t>(r * dim_ + s)]) {
          v += t.coeff * std::sin(t.freq.dot(p) + t.phase);
        }
        M(r, s) = v;
      }
    }
    return M;
  }

 private:
  struct Term {
    Eigen::VectorXd freq;
    double coeff = 0.0;
    double phase = 0.0;
  };
  int dim_;
  std::vector<std::vector<Term>> terms_;
};

}  // namespace

Eigen::VectorXd cross7(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(7);
  for (const auto& t : kFano) {
    for (int r = 0; r < 3; ++r) {
      const int i = t[r] - 1;
      const int j = t[(r + 1) % 3] - 1;
      const int k = t[(r + 2) % 3] - 1;
      c[k] += a[i] * b[j] - a[j] * b[i];
    }
  }
  return c;
}

ZooEntry flat_cn(int n) {
  if (n < 1 || n > 4) {
    throw GeometryError("flat_cn: n must be in 1..4, got " + std::to_string(n));
  }
  const int dim = 2 * n;
  ChartedStructure s{Chart::box(dim, -1.0, 1.0, "flat box"),
                     [dim](const Point&) { return standard_j(dim); },
                     [dim](const Point&) {
                       return Eigen::MatrixXd::Identity(dim, dim).eval();
                     },
                     "kahler"};
  ZooEntry e{"flat_cn", std::move(s), {}, {}, {}};
  e.expected_labels = {"kahler", "hermitian", "almost", "quasi", "nearly"};
  e.sampler = [dim](Rng& rng) { return uniform_box(rng, dim, 0.5); };
  e.doc = "C^n with the standard complex structure and Euclidean metric.";
  return e;
}

ZooEntry round_s2(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw GeometryError("round_s2: radius must be positive");
  }
  const double r2 = radius * radius;
  ChartedStructure s{Chart::whole_space(2, "stereographic plane"),
                     [](const Point&) { return standard_j(2); },
                     [r2](const Point& p) {
                       const double d = r2 + p.squaredNorm();
                       const double lam = 4.0 * r2 * r2 / (d * d);
                       return (lam * Eigen::MatrixXd::Identity(2, 2)).eval();
                     },
                     "kahler"};
  ZooEntry e{"round_s2", std::move(s), {}, {}, {}};
  e.expected_labels = {"kahler", "hermitian", "almost", "quasi", "nearly"};
  e.sampler = [radius](Rng& rng) { return uniform_box(rng, 2, radius); };
  e.doc =
      "Sphere of radius r in stereographic coordinates, "
      "g = 4r^4/(r^2+|z|^2)^2 (dx^2+dy^2).";
  return e;
}

ZooEntry s6_nearly_kahler() {
  constexpr double kChartRadius = 0.95;
  constexpr double kSampleRadius = 0.55;
  auto lift = [](const Point& x) {
    Eigen::VectorXd p(7);
    p.head(6) = x;
    p[6] = std::sqrt(1.0 - x.squaredNorm());
    return p;
  };
  ChartedStructure s{
      Chart(6, "upper hemisphere graph",
            [](const Point& x) { return x.norm() < kChartRadius; }),
      [lift](const Point& x) {
        const Eigen::VectorXd p = lift(x);
        Eigen::MatrixXd J(6, 6);
        for (int a = 0; a < 6; ++a) {
          Eigen::VectorXd v = Eigen::VectorXd::Zero(7);
          v[a] = 1.0;
          v[6] = -x[a] / p[6];
          J.col(a) = cross7(p, v).head(6);
        }
        return J;
      },
      [lift](const Point& x) {
        const double p7 = lift(x)[6];
        return (Eigen::MatrixXd::Identity(6, 6) + x * x.transpose() / (p7 * p7))
            .eval();
      },
      "nearly"};
  ZooEntry e{"s6_nearly_kahler", std::move(s), {}, {}, {}};
  e.expected_labels = {"quasi", "nearly"};
  e.sampler = [](Rng& rng) { return uniform_ball(rng, 6, kSampleRadius); };
  e.doc =
      "Unit S^6 in the imaginary octonions, J_p X = p x X, round metric, "
      "graph chart over the upper hemisphere.";
  return e;
}

ZooEntry hopf_surface() {
  ChartedStructure s{Chart(4, "annulus in C^2",
                           [](const Point& p) {
                             const double r = p.norm();
                             return r > 0.5 && r < 2.0;
                           }),
                     [](const Point&) { return standard_j(4); },
                     [](const Point& p) {
                       return (Eigen::MatrixXd::Identity(4, 4) /
                               p.squaredNorm())
                           .eval();
                     },
                     "hermitian"};
  ZooEntry e{"hopf_surface", std::move(s), {}, {}, {}};
  e.expected_labels = {"hermitian"};
  e.sampler = [](Rng& rng) {
    while (true) {
      Point p = uniform_box(rng, 4, 1.25);
      const double r = p.norm();
      if (r >= 0.8 && r <= 1.25) return p;
    }
  };
  e.doc = "C^2 minus the origin with g = |z|^-2 (standard), standard J.";
  return e;
}

ZooEntry random_torus_structure(int n, std::uint64_t seed, double amplitude) {
  if (n < 1 || n > 3) {
    throw GeometryError("random_torus: n must be in 1..3, got " +
                        std::to_string(n));
  }
  if (!(amplitude > 0.0 && amplitude <= 0.2)) {
    throw GeometryError("random_torus: amplitude must be in (0, 0.2]");
  }
  const int dim = 2 * n;
  Rng rng(seed);
  const TrigMatrixField M(dim, 2, rng);
  const TrigMatrixField N(dim, 2, rng);
  const Eigen::MatrixXd J0 = standard_j(dim);

  auto J = [M, J0, amplitude](const Point& p) {
    const Eigen::MatrixXd X = amplitude * M(p);
    const Eigen::MatrixXd A = X.exp();
    const Eigen::MatrixXd Ainv = (-X).exp();
    return (A * J0 * Ainv).eval();
  };
  auto g = [N, J, amplitude, dim](const Point& p) {
    const Eigen::MatrixXd B =
        Eigen::MatrixXd::Identity(dim, dim) + amplitude * N(p);
    const Eigen::MatrixXd h = B.transpose() * B;
    const Eigen::MatrixXd Jp = J(p);
    const Eigen::MatrixXd avg = 0.5 * (h + Jp.transpose() * h * Jp);
    return (0.5 * (avg + avg.transpose())).eval();
  };

  ChartedStructure s{Chart::whole_space(dim, "torus cover"), J, g, "generic"};
  ZooEntry e{"random_torus", std::move(s), {}, {}, {}};
  e.expected_labels = {};
  e.sampler = [dim](Rng& r) { return uniform_box(r, dim, std::numbers::pi); };
  e.doc =
      "Seeded 2pi-periodic perturbation: J = A J0 A^-1 with A = exp(a M(p)), "
      "g the J-average of (I + a N(p))^T (I + a N(p)).";
  return e;
}

std::vector<Point> sample_points(const ZooEntry& e, int count,
                                 std::uint64_t seed) {
  if (count < 1) throw GeometryError("point count must be at least 1");
  Rng rng(seed);
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) out.push_back(e.sampler(rng));
  return out;
}

const std::vector<ZooDescriptor>& zoo_catalog() {
  static const std::vector<ZooDescriptor> catalog = {
      {"flat_cn",
       {"kahler", "hermitian", "almost", "quasi", "nearly"},
       {{"n", "integer", "complex dimension, 1..4"}},
       "standard C^n"},
      {"round_s2",
       {"kahler", "hermitian", "almost", "quasi", "nearly"},
       {{"radius", "real", "sphere radius, > 0"}},
       "round 2-sphere, stereographic chart"},
      {"s6_nearly_kahler",
       {"quasi", "nearly"},
       {},
       "octonionic S^6, strictly nearly Kahler"},
      {"hopf_surface",
       {"hermitian"},
       {},
       "Hopf surface metric |z|^-2 on C^2 minus 0"},
      {"random_torus",
       {},
       {{"n", "integer", "complex dimension, 1..3"},
        {"seed", "integer", "generator seed"},
        {"amplitude", "real", "perturbation size, (0, 0.2]"}},
       "seeded generic almost Hermitian structure"},
  };
  return catalog;
}

ZooEntry make_zoo_entry(const std::string& name, const ZooParams& params) {
  if (name == "flat_cn") return flat_cn(params.n);
  if (name == "round_s2") return round_s2(params.radius);
  if (name == "s6_nearly_kahler") return s6_nearly_kahler();
  if (name == "hopf_surface") return hopf_surface();
  if (name == "random_torus") {
    return random_torus_structure(params.n, params.seed, params.amplitude);
  }
  throw GeometryError("unknown manifold '" + name + "'");
}

}  // namespace ahg
