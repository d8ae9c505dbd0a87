#include "aql/gf.hpp"

#include <algorithm>

namespace aql {

Fp::Fp(Int prime) : p(prime) {
  if (p < 2) fail_validation("NotPrime: field characteristic must be at least 2");
  for (Int d = 2; d * d <= p; ++d)
    if (p % d == 0) fail_validation("NotPrime: " + std::to_string(p) + " is composite");
}

Int Fp::pow(Int a, Int e) const {
  internal_check(e >= 0, "negative exponent");
  Int base = reduce(a), acc = 1;
  while (e > 0) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

Int Fp::inv(Int a) const {
  a = reduce(a);
  if (a == 0) fail_internal("division by zero in F_p");
  return pow(a, p - 2);
}

Int Fp::primitive_root() const {
  if (p == 2) return 1;
  std::vector<Int> prime_factors;
  Int m = p - 1;
  for (Int d = 2; d * d <= m; ++d)
    if (m % d == 0) {
      prime_factors.push_back(d);
      while (m % d == 0) m /= d;
    }
  if (m > 1) prime_factors.push_back(m);
  for (Int g = 2; g < p; ++g) {
    bool ok = true;
    for (Int f : prime_factors)
      if (pow(g, (p - 1) / f) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  fail_internal("no primitive root found");
}

FpMat FpMat::identity(int n) {
  FpMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

FpMat fp_mul(const Fp& f, const FpMat& x, const FpMat& y) {
  internal_check(x.cols == y.rows, "matrix product shape mismatch");
  FpMat out(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      Int xv = x.at(i, k);
      if (xv == 0) continue;
      for (int j = 0; j < y.cols; ++j)
        out.at(i, j) = (out.at(i, j) + xv * y.at(k, j)) % f.p;
    }
  return out;
}

FpMat fp_add(const Fp& f, const FpMat& x, const FpMat& y) {
  internal_check(x.rows == y.rows && x.cols == y.cols, "matrix sum shape mismatch");
  FpMat out(x.rows, x.cols);
  for (size_t i = 0; i < x.a.size(); ++i) out.a[i] = f.add(x.a[i], y.a[i]);
  return out;
}

FpMat fp_sub(const Fp& f, const FpMat& x, const FpMat& y) {
  internal_check(x.rows == y.rows && x.cols == y.cols, "matrix difference shape mismatch");
  FpMat out(x.rows, x.cols);
  for (size_t i = 0; i < x.a.size(); ++i) out.a[i] = f.sub(x.a[i], y.a[i]);
  return out;
}

FpMat fp_scale(const Fp& f, Int c, const FpMat& x) {
  FpMat out(x.rows, x.cols);
  c = f.reduce(c);
  for (size_t i = 0; i < x.a.size(); ++i) out.a[i] = f.mul(c, x.a[i]);
  return out;
}

int fp_rref(const Fp& f, FpMat& m, std::vector<int>* pivots) {
  if (pivots) pivots->clear();
  int rank = 0;
  for (int col = 0; col < m.cols && rank < m.rows; ++col) {
    int piv = -1;
    for (int r = rank; r < m.rows; ++r)
      if (m.at(r, col) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    for (int j = 0; j < m.cols; ++j) std::swap(m.at(rank, j), m.at(piv, j));
    Int inv = f.inv(m.at(rank, col));
    for (int j = 0; j < m.cols; ++j) m.at(rank, j) = f.mul(m.at(rank, j), inv);
    for (int r = 0; r < m.rows; ++r) {
      if (r == rank) continue;
      Int factor = m.at(r, col);
      if (factor == 0) continue;
      for (int j = 0; j < m.cols; ++j)
        m.at(r, j) = f.sub(m.at(r, j), f.mul(factor, m.at(rank, j)));
    }
    if (pivots) pivots->push_back(col);
    ++rank;
  }
  return rank;
}

int fp_rank(const Fp& f, FpMat m) { return fp_rref(f, m); }

std::vector<std::vector<Int>> fp_kernel(const Fp& f, FpMat m) {
  std::vector<int> pivots;
  int rank = fp_rref(f, m, &pivots);
  std::vector<bool> is_pivot(m.cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Int>> basis;
  for (int free = 0; free < m.cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Int> v(m.cols, 0);
    v[free] = 1;
    for (int r = 0; r < rank; ++r) v[pivots[r]] = f.neg(m.at(r, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<FpMat> fp_subspaces(const Fp& f, int n, int k, Budget& budget) {
  internal_check(n >= 0 && k >= 0, "negative dimension");
  std::vector<FpMat> out;
  if (k > n) return out;
  if (k == 0) {
    out.emplace_back(0, n);
    return out;
  }
  // pivot column pattern; remaining entries of the RREF basis run free
  std::vector<int> piv(k);
  for (int i = 0; i < k; ++i) piv[i] = i;
  for (;;) {
    std::vector<std::pair<int, int>> free_cells;  // (row, col)
    for (int r = 0; r < k; ++r)
      for (int c = piv[r] + 1; c < n; ++c) {
        bool pivot_col = std::binary_search(piv.begin(), piv.end(), c);
        if (!pivot_col) free_cells.emplace_back(r, c);
      }
    Int total = 1;
    for (size_t i = 0; i < free_cells.size(); ++i) total = mul_i64(total, f.p, "subspace count");
    budget.charge(total, "subspace enumeration");
    std::vector<Int> digits(free_cells.size(), 0);
    for (;;) {
      FpMat m(k, n);
      for (int r = 0; r < k; ++r) m.at(r, piv[r]) = 1;
      for (size_t i = 0; i < free_cells.size(); ++i)
        m.at(free_cells[i].first, free_cells[i].second) = digits[i];
      out.push_back(std::move(m));
      size_t d = 0;
      while (d < digits.size() && digits[d] == f.p - 1) digits[d++] = 0;
      if (d == digits.size()) break;
      ++digits[d];
    }
    // next pivot combination in lex order
    int i = k - 1;
    while (i >= 0 && piv[i] == n - k + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (int j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
  }
  return out;
}

}  // namespace aql
