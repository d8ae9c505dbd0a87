#include "aql/base.hpp"

namespace aql {

namespace {

// Gauss-Jordan over Rat. Returns reduced matrix rank; `aug` is eliminated in
// lockstep when non-null.
int rref_rat(std::vector<std::vector<Rat>>& m, std::vector<std::vector<Rat>>* aug) {
  size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && m[piv][c].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    if (aug) std::swap((*aug)[piv], (*aug)[r]);
    Rat inv = Rat(1) / m[r][c];
    for (auto& x : m[r]) x = x * inv;
    if (aug) for (auto& x : (*aug)[r]) x = x * inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Rat f = m[i][c];
      for (size_t j = 0; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
      if (aug) for (size_t j = 0; j < (*aug)[i].size(); ++j)
        (*aug)[i][j] = (*aug)[i][j] - f * (*aug)[r][j];
    }
    ++r;
  }
  return static_cast<int>(r);
}

std::vector<std::vector<Rat>> to_rat(const IMat& a) {
  std::vector<std::vector<Rat>> m(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    m[i].resize(a[i].size());
    for (size_t j = 0; j < a[i].size(); ++j) m[i][j] = Rat(a[i][j]);
  }
  return m;
}

}  // namespace

IMat mat_inverse_integer(const IMat& a, const char* what) {
  size_t n = a.size();
  auto m = to_rat(a);
  std::vector<std::vector<Rat>> aug(n, std::vector<Rat>(n));
  for (size_t i = 0; i < n; ++i) aug[i][i] = Rat(1);
  int rank = rref_rat(m, &aug);
  if (rank != static_cast<int>(n))
    fail_internal(std::string(what) + ": matrix is singular");
  IMat inv(n, std::vector<Int>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (!aug[i][j].is_integer())
        fail_internal(std::string(what) + ": inverse is not integral");
      inv[i][j] = aug[i][j].num;
    }
  return inv;
}

std::vector<LatticeVector> integer_kernel(const IMat& a) {
  size_t n = a.size();
  auto m = to_rat(a);
  int rank = rref_rat(m, nullptr);
  size_t nullity = n - static_cast<size_t>(rank);
  if (nullity == 0) return {};
  // Identify pivot columns of the reduced matrix.
  std::vector<int> pivot_of_col(n, -1);
  size_t r = 0;
  for (size_t c = 0; c < n && r < static_cast<size_t>(rank); ++c) {
    if (!m[r][c].is_zero()) { pivot_of_col[c] = static_cast<int>(r); ++r; }
  }
  std::vector<LatticeVector> basis;
  for (size_t free_c = 0; free_c < n; ++free_c) {
    if (pivot_of_col[free_c] >= 0) continue;
    std::vector<Rat> v(n);
    v[free_c] = Rat(1);
    for (size_t c = 0; c < n; ++c) {
      int pr = pivot_of_col[c];
      if (pr >= 0) v[c] = -m[static_cast<size_t>(pr)][free_c];
    }
    // Clear denominators, divide by gcd, normalize sign.
    Int lcm = 1;
    for (auto& x : v) lcm = mul_i64(lcm / std::gcd(lcm, x.den), x.den, "kernel lcm");
    LatticeVector iv(n);
    for (size_t i = 0; i < n; ++i) iv[i] = mul_i64(v[i].num, lcm / v[i].den, "kernel scale");
    Int g = 0;
    for (Int x : iv) g = std::gcd(g, x < 0 ? -x : x);
    if (g > 1) for (auto& x : iv) x /= g;
    for (Int x : iv) {
      if (x != 0) { if (x < 0) for (auto& y : iv) y = -y; break; }
    }
    basis.push_back(std::move(iv));
  }
  return basis;
}

}  // namespace aql
