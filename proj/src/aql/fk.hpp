#pragma once

#include <map>

#include "aql/roots.hpp"

namespace aql {

// Thrown when a bracket result lands outside the configured level cutoff.
// Verification loops catch it and count the triple/pair as skipped.
class CutoffExceeded : public Error {
 public:
  explicit CutoffExceeded(const std::string& msg)
      : Error(ErrCode::Validation, "CutoffExceeded", msg) {}
};

enum class FKCocycle { Plain, Twisted };
enum class FKPairing { Literal, Symmetrized };

// Basis key: either a positive real root vector, or the degree-m copy of a
// non-extending simple class in the imaginary layer.
struct FKKey {
  bool imag = false;
  LatticeVector real;  // used when !imag
  Int m = 0;           // used when imag
  int i = 0;           // used when imag
  bool operator==(const FKKey&) const = default;
  bool operator<(const FKKey& o) const {
    if (imag != o.imag) return !imag;
    if (imag) return std::pair(m, i) < std::pair(o.m, o.i);
    return real < o.real;
  }
  static FKKey real_key(LatticeVector v) { return FKKey{false, std::move(v), 0, 0}; }
  static FKKey imag_key(Int m, int i) { return FKKey{true, {}, m, i}; }
};

// Finitely supported rational combination of basis keys. No zero terms stored.
struct FKElement {
  std::map<FKKey, Rat> terms;
  bool is_zero() const { return terms.empty(); }
  void add_term(const FKKey& k, const Rat& c);
  FKElement& operator+=(const FKElement& o);
  FKElement operator*(const Rat& c) const;
  bool operator==(const FKElement&) const = default;
};

struct FKConfig {
  FKCocycle cocycle = FKCocycle::Plain;
  FKPairing pairing = FKPairing::Symmetrized;
  int extending_vertex = -1;  // -1: smallest vertex with delta coordinate 1
  Int cutoff = 2;
};

// Holds a pointer back to the quiver: the quiver must outlive the context.
struct FKContext {
  const Quiver* q = nullptr;
  AffineData aff;
  FKConfig cfg;
};

FKContext make_fk_context(const Quiver& q, const FKConfig& cfg);

// epsilon(alpha, beta) = (-1)^{e(alpha, beta)}; bimultiplicative.
Int fk_epsilon(const Quiver& q, const LatticeVector& a, const LatticeVector& b);
// +1 on (plus/minus) real roots and off the root system, (-1)^{1+m} on m*delta.
Int fk_xi(const Quiver& q, const AffineData& aff, const LatticeVector& a);
// epsilon twisted by the coboundary of xi.
Int fk_epsilon_star(const Quiver& q, const AffineData& aff, const LatticeVector& a,
                    const LatticeVector& b);

// Image of alpha at degree m in the imaginary layer: representative of alpha
// with zero coordinate at the extending vertex, expanded over ImagKeys.
FKElement canonical_class(const FKContext& ctx, const LatticeVector& alpha, Int m);

LatticeVector fk_grade(const FKContext& ctx, const FKKey& k);

// Sorted basis within the cutoff: positive real roots of level <= cutoff,
// then ImagKey(m, i) for 1 <= m <= cutoff, i != extending vertex.
std::vector<FKKey> fk_basis(const FKContext& ctx);

FKElement fk_bracket(const FKContext& ctx, const FKElement& x, const FKElement& y);

struct JacobiViolation {
  FKKey x, y, z;
  FKElement residual;
};
struct JacobiReport {
  Int triples_checked = 0;
  Int skipped = 0;
  std::vector<JacobiViolation> violations;
  bool pass() const { return violations.empty(); }
};
JacobiReport verify_jacobi(const FKContext& ctx, int jobs = 1);

struct SerreItem {
  int i = 0, j = 0;
  Int power = 0;        // 1 - c_ij
  bool vanishes = false;
  bool lower_tested = false;
  bool lower_nonzero = false;
};
struct SerreReport {
  std::vector<SerreItem> items;
  bool pass() const;
};
SerreReport verify_serre(const FKContext& ctx);

// Checks that rescaling each key by xi of its grade carries the plain-cocycle
// bracket to the twisted one on all basis pairs. flip, if set, negates the
// rescaling on one key (negative control). degenerate_xi forces xi = 1.
struct TwistReport {
  Int pairs_checked = 0;
  Int skipped = 0;
  std::vector<std::pair<FKKey, FKKey>> failures;
  bool pass() const { return failures.empty(); }
};
TwistReport twist_isomorphism_check(const Quiver& q, Int cutoff, const FKKey* flip = nullptr,
                                    bool degenerate_xi = false);

// 1 on positive real roots, n at each positive multiple of delta, 0 otherwise.
Int graded_dimension(const Quiver& q, const AffineData& aff, const LatticeVector& alpha);

}  // namespace aql
