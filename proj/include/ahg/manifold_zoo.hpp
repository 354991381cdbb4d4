#pragma once

// Built-in almost Hermitian structures with known classes.

#include "ahg/complex_frame.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace ahg {

/// mt19937_64 with a fixed bits-to-double mapping, so draws are identical
/// across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 gen_;
};

struct ParameterInfo {
  std::string name;
  std::string type;
  std::string description;
};

struct ZooEntry {
  std::string name;
  ChartedStructure structure;
  std::vector<std::string> expected_labels;
  /// Draws one point from a region kept well inside the chart.
  std::function<Point(Rng&)> sampler;
  std::string doc;
};

ZooEntry flat_cn(int n);
ZooEntry round_s2(double radius);
ZooEntry s6_nearly_kahler();
ZooEntry hopf_surface();
ZooEntry random_torus_structure(int n, std::uint64_t seed, double amplitude);

/// Deterministic sample points drawn from the entry's region.
std::vector<Point> sample_points(const ZooEntry& e, int count,
                                 std::uint64_t seed);

struct ZooDescriptor {
  std::string name;
  std::vector<std::string> expected_labels;
  std::vector<ParameterInfo> parameters;
  std::string summary;
};

const std::vector<ZooDescriptor>& zoo_catalog();

struct ZooParams {
  int n = 2;
  double radius = 1.0;
  double amplitude = 0.1;
  std::uint64_t seed = 42;
};

/// Builds the entry named `name`; throws GeometryError on unknown names.
ZooEntry make_zoo_entry(const std::string& name, const ZooParams& params);

/// Octonionic cross product on R^7 (imaginary octonions).
Eigen::VectorXd cross7(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

}  // namespace ahg
