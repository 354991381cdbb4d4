#pragma once

// Bianchi identities of the canonical connection evaluated from the operator
// definitions on random polynomial vector fields, in coordinates.
//
//   tau(X,Y)  = nabla_X Y - nabla_Y X - [X,Y]
//   R(X,Y)Z   = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z
//
// Nothing here goes through the frame-index tables except the coordinate
// Christoffel matrices.

#include "ahg/comparison.hpp"
#include "ahg/connections.hpp"

#include <cstdint>

namespace ahg {

/// sum_cyc R(X,Y)Z = sum_cyc (nabla_X tau)(Y,Z) - tau(X, tau(Y,Z)).
/// One residual entry per coordinate component (index = axis).
void raw_first_bianchi(const UnitaryFrameField& F, const Point& p,
                       const StepLadder& steps, std::uint64_t seed,
                       ResidualTracker& out);

/// With R(X,Y,U,V) = g(R(U,V)X, Y):
/// sum_cyc(U,V,W) (nabla_W R)(X,Y,U,V) = -sum_cyc R(X,Y,tau(U,V),W).
void raw_second_bianchi(const UnitaryFrameField& F, const Point& p,
                        const StepLadder& steps, std::uint64_t seed,
                        ResidualTracker& out);

}  // namespace ahg
