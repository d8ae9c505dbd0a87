#pragma once

#include <optional>

#include "aql/quiver.hpp"

namespace aql {

struct Root {
  LatticeVector v;
  bool real = false;       // q = 1
  bool imaginary = false;  // v = m*delta
  bool regular = false;    // defect 0
  Int level = 0;           // largest m with v - m*delta still a positive root or zero
  Int multiplicity = 0;    // 1 real, n imaginary
};

struct CoxeterData {
  IMat c;          // -E^{-1} E^T
  IMat euler;      // E
  IMat euler_inv;  // E^{-1}
};

// defect(alpha) = <delta, alpha>
Int defect(const Quiver& q, const AffineData& aff, const LatticeVector& alpha);

// s_i(beta) = beta - (beta, e_i) e_i
LatticeVector simple_reflection(const Quiver& q, int vertex, const LatticeVector& beta);

// Requires acyclic. Construction is validated internally against the product
// of simple reflections in sink-to-source order and the adjoint identity.
CoxeterData coxeter_matrix(const Quiver& q);

// NonRoot -> nullopt. Requires classify_affine data for delta/defect fields.
std::optional<Root> classify_root(const Quiver& q, const AffineData& aff,
                                  const LatticeVector& alpha);

// All roots alpha with 0 < alpha <= bound componentwise, lex-sorted.
std::vector<Root> enumerate_positive_roots(const Quiver& q, const AffineData& aff,
                                           const LatticeVector& bound, Budget& budget,
                                           int jobs = 1);

struct CoxeterOrbit {
  bool finite = false;
  std::vector<LatticeVector> orbit;  // when finite: alpha, c(alpha), ..., period elements
  Int period = 0;
};

CoxeterOrbit coxeter_orbit(const Quiver& q, const AffineData& aff,
                           const LatticeVector& alpha, Int max_steps = 4096);

struct TubeData {
  std::vector<Int> periods;                          // sorted multiset of orbit sizes
  std::vector<std::vector<LatticeVector>> orbits;    // the orbits themselves
};

// Coxeter orbits of positive regular real roots strictly below delta whose
// orbit sum is exactly delta. Asserts sum(period-1) = n-1.
TubeData tube_skeleton(const Quiver& q, const AffineData& aff);

}  // namespace aql
