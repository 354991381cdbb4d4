#pragma once

#include "ahg/connections.hpp"
#include "ahg/manifold_zoo.hpp"

#include <doctest.h>

namespace test {

inline ahg::ZooEntry entry(const std::string& name, int n = 2,
                           std::uint64_t seed = 42) {
  ahg::ZooParams p;
  p.n = n;
  p.seed = seed;
  return ahg::make_zoo_entry(name, p);
}

struct Fixture {
  ahg::ZooEntry e;
  std::vector<ahg::Point> points;
  ahg::UnitaryFrameField frame;

  Fixture(ahg::ZooEntry entry_, int count, std::uint64_t seed = 1)
      : e(std::move(entry_)),
        points(ahg::sample_points(e, count, seed)),
        frame(ahg::unitary_frame(e.structure, points)) {}

  ahg::GeometryTables tables(std::size_t k,
                             ahg::TableDepth d = ahg::TableDepth::Second,
                             ahg::FDConfig cfg = {}) const {
    return ahg::geometry_tables(frame, points[k], ahg::StepLadder::from(cfg), d);
  }
};

}  // namespace test
