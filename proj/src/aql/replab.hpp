#pragma once

#include <map>
#include <optional>
#include <string>

#include "aql/gf.hpp"
#include "aql/quiver.hpp"

namespace aql {

// One point of the representation space: a matrix of shape
// dim[target] x dim[source] for every arrow.
struct FFRep {
  const Quiver* q = nullptr;
  Int p = 0;
  LatticeVector dim;
  std::vector<FpMat> mats;
};

FFRep make_rep(const Quiver& q, Int p, LatticeVector dim, std::vector<FpMat> mats);
FFRep zero_rep(const Quiver& q, Int p, LatticeVector dim);
FFRep simple_rep(const Quiver& q, Int p, int vertex);

// Bijection between representations at a fixed dimension and [0, p^T),
// digits in arrow-major, row-major order.
struct RepSpace {
  const Quiver* q = nullptr;
  Fp field;
  LatticeVector dim;
  Int total_entries = 0;
  Int size = 0;  // p^total_entries

  RepSpace(const Quiver& qq, Int p, LatticeVector d, Budget& budget);
  FFRep decode(Int index) const;
  Int encode(const FFRep& x) const;
};

// Orbit decomposition of the full representation space under the product of
// general linear groups. Representatives are the minimal indices.
struct ClassTable {
  RepSpace space;
  std::vector<Int> reps;         // ascending canonical indices
  std::vector<Int> orbit_sizes;  // same order
  std::vector<int> class_of;     // index -> class id
};

Int gl_order(Int p, const LatticeVector& dim);
ClassTable iso_classes(const Quiver& q, const LatticeVector& dim, Int p, Budget& budget);

// Lazily built class tables, keyed by dimension vector, at a fixed prime.
struct ClassCache {
  const Quiver* q;
  Int p;
  Budget* budget;
  std::map<LatticeVector, ClassTable> tables;
  ClassCache(const Quiver& qq, Int pp, Budget& b) : q(&qq), p(pp), budget(&b) {}
  const ClassTable& at(const LatticeVector& dim);
};

// Endomorphism-style intertwiner tuple: one matrix per vertex, mapping X_i to Y_i.
using Intertwiner = std::vector<FpMat>;

Int hom_dim(const FFRep& x, const FFRep& y, std::vector<Intertwiner>* basis = nullptr);
Int ext_dim(const FFRep& x, const FFRep& y);

bool is_indecomposable(const FFRep& x, Budget& budget);
bool is_absolutely_indecomposable(const FFRep& x, Budget& budget);

struct KacPolynomial {
  std::vector<Int> coeffs;  // ascending degree
  Int degree_bound = 0;
  std::vector<std::pair<Int, Int>> counts;  // (prime, absolutely indecomposable classes)
};

KacPolynomial kac_polynomial(const Quiver& q, const LatticeVector& alpha,
                             std::vector<Int> primes, Budget& budget);

// Exact Lagrange interpolation through all points; coefficients ascending.
std::vector<Rat> interpolate_rational(const std::vector<std::pair<Int, Int>>& points);
Rat eval_poly(const std::vector<Rat>& coeffs, const Rat& x);

// Subrepresentation: an RREF basis (beta_i rows) per vertex, closed under arrows.
using SubRep = std::vector<FpMat>;

std::vector<SubRep> enumerate_subreps(const FFRep& z, const LatticeVector& beta,
                                      Budget& budget);
FFRep sub_rep(const FFRep& z, const SubRep& s);
FFRep quotient_rep(const FFRep& z, const SubRep& s);

bool is_isomorphic(const FFRep& x, const FFRep& y, ClassCache& cache);

// Number of subrepresentations of z isomorphic to x with quotient isomorphic to y.
Int hall_number(const FFRep& x, const FFRep& y, const FFRep& z, ClassCache& cache,
                Budget& budget);

// Class specified by integer matrices, reducible modulo any prime.
struct IntRepSpec {
  LatticeVector dim;
  std::map<std::string, IMat> matrices;  // arrow id -> integer matrix
};
FFRep reduce_spec(const Quiver& q, const IntRepSpec& spec, Int p);

struct HallCount {
  std::vector<std::pair<Int, Int>> counts;  // (prime, count)
  std::vector<Rat> poly;                    // interpolated, ascending
  Int degree_bound = 0;
  Int euler_characteristic = 0;  // value at 1
};

HallCount hall_euler_characteristic(const Quiver& q, const IntRepSpec& xs,
                                    const IntRepSpec& ys, const IntRepSpec& zs,
                                    std::vector<Int> primes, Budget& budget);

enum class StabilityVerdict { Unstable, Semistable, Stable };

struct StabilityResult {
  StabilityVerdict verdict;
  Int max_pairing = 0;                 // over proper nonzero subreps; 0 when none exist
  std::optional<LatticeVector> witness_dim;
  std::optional<SubRep> witness;       // maximal-pairing subrep when Unstable
};

StabilityResult stability_status(const FFRep& x, const LatticeVector& theta,
                                 Budget& budget);

enum class WeightKind { Canonical, Regular };

// Regular: pairing beta -> e(delta, beta). Canonical(alpha): beta -> e(alpha, beta) - e(beta, alpha).
LatticeVector standard_stability(const Quiver& q, WeightKind kind,
                                 const LatticeVector* alpha = nullptr);

bool is_generic(const Quiver& q, const LatticeVector& lambda, const LatticeVector& alpha,
                Budget& budget);

}  // namespace aql
