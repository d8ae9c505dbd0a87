#pragma once

#include "aql/replab.hpp"

namespace aql {

// One square matrix per vertex; traces sum to zero.
using MomentValue = std::vector<FpMat>;

// x must live on dq.q (originals first, starred partners after).
MomentValue moment_map(const DoubleQuiver& dq, const FFRep& x);

// moment value equals lambda_i * identity at every vertex, lambda read in F_p
bool is_pi_rep(const DoubleQuiver& dq, const FFRep& x, const LatticeVector& lambda);

// descending chain W_{k+1,j} = sum over doubled arrows into j of the image of
// W_k; true iff it reaches zero
bool is_nilpotent(const DoubleQuiver& dq, const FFRep& x);

// forgets the starred matrices; result lives on the original quiver
FFRep rho(const DoubleQuiver& dq, const FFRep& x, const Quiver& original);

// Basis of the starred parts y with moment_map(x forward, y) = 0; one matrix
// of shape dim[src] x dim[dst] per original arrow, in arrow order.
std::vector<std::vector<FpMat>> lift_space(const FFRep& x);

// Double-quiver point with the given forward part and starred part.
FFRep assemble_double(const DoubleQuiver& dq, const FFRep& x,
                      const std::vector<FpMat>& starred);

struct NilpotentLifts {
  Int space_dim = 0;  // dimension of the full lift space
  Int total = 0;      // p^space_dim, all of them satisfy the zero-moment relation
  Int count = 0;      // how many are nilpotent
  std::vector<std::vector<FpMat>> lifts;  // the nilpotent starred parts
};

NilpotentLifts nilpotent_lifts(const FFRep& x, Budget& budget);

}  // namespace aql
