#pragma once

#include <cstdint>
#include <vector>

#include "aql/base.hpp"

namespace aql {

// Prime field arithmetic. p is validated once at construction; elements are
// canonical residues in [0, p).
struct Fp {
  Int p;
  explicit Fp(Int prime);
  Int add(Int a, Int b) const { return (a + b) % p; }
  Int sub(Int a, Int b) const { return (a - b % p + p) % p; }
  Int mul(Int a, Int b) const { return (a * b) % p; }
  Int neg(Int a) const { return (p - a % p) % p; }
  Int inv(Int a) const;
  Int pow(Int a, Int e) const;
  Int reduce(Int a) const { return (a % p + p) % p; }
  // smallest generator of the multiplicative group
  Int primitive_root() const;
};

// Dense row-major matrix over F_p. Dimensions may be zero.
struct FpMat {
  int rows = 0, cols = 0;
  std::vector<Int> a;  // rows*cols entries

  FpMat() = default;
  FpMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}
  Int& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  Int at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
  bool operator==(const FpMat& o) const = default;
  static FpMat identity(int n);
};

FpMat fp_mul(const Fp& f, const FpMat& x, const FpMat& y);
FpMat fp_add(const Fp& f, const FpMat& x, const FpMat& y);
FpMat fp_sub(const Fp& f, const FpMat& x, const FpMat& y);
FpMat fp_scale(const Fp& f, Int c, const FpMat& x);

// In-place reduced row echelon form; returns rank. pivots (if given) receives
// the pivot column of each of the first `rank` rows.
int fp_rref(const Fp& f, FpMat& m, std::vector<int>* pivots = nullptr);
int fp_rank(const Fp& f, FpMat m);

// Basis of the right kernel, one column vector per row of the result.
std::vector<std::vector<Int>> fp_kernel(const Fp& f, FpMat m);

// All k-dimensional subspaces of F_p^n as RREF basis matrices (k rows).
// Count is the Gaussian binomial; budget is charged per emitted subspace.
std::vector<FpMat> fp_subspaces(const Fp& f, int n, int k, Budget& budget);

}  // namespace aql
