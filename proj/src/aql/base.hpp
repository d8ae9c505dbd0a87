#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace aql {

using Int = long long;
using LatticeVector = std::vector<Int>;
using IMat = std::vector<std::vector<Int>>;

// Error taxonomy. `code` maps 1:1 onto CLI exit codes and C API return codes:
// 1 validation/parse, 2 budget, 3 internal assertion.
enum class ErrCode : int { Validation = 1, Budget = 2, Internal = 3 };

class Error : public std::runtime_error {
public:
  Error(ErrCode code, std::string kind, const std::string& msg)
      : std::runtime_error(kind + ": " + msg), code_(code), kind_(std::move(kind)) {}
  ErrCode code() const { return code_; }
  const std::string& kind() const { return kind_; }

private:
  ErrCode code_;
  std::string kind_;
};

[[noreturn]] inline void fail_validation(const std::string& kind, const std::string& msg) {
  throw Error(ErrCode::Validation, kind, msg);
}
[[noreturn]] inline void fail_validation(const std::string& kind_msg) {
  auto pos = kind_msg.find(": ");
  if (pos == std::string::npos) throw Error(ErrCode::Validation, "Validation", kind_msg);
  throw Error(ErrCode::Validation, kind_msg.substr(0, pos), kind_msg.substr(pos + 2));
}
[[noreturn]] inline void fail_budget(const std::string& msg) {
  throw Error(ErrCode::Budget, "BudgetExceeded", msg);
}
[[noreturn]] inline void fail_internal(const std::string& msg) {
  throw Error(ErrCode::Internal, "InternalAssertion", msg);
}

inline void internal_check(bool ok, const std::string& msg) {
  if (!ok) fail_internal(msg);
}

// Budget counts abstract "field operations"; enumeration loops charge it and
// bail out deterministically once the limit is crossed.
struct Budget {
  long long limit = 1000000000LL;
  long long used = 0;

  void charge(long long n, const char* what) {
    used += n;
    if (used > limit)
      fail_budget(std::string(what) + " exceeds budget of " + std::to_string(limit) +
                  " field operations");
  }
};

inline Int checked_i64(__int128 v, const char* ctx) {
  if (v > INT64_MAX || v < INT64_MIN) fail_internal(std::string("integer overflow in ") + ctx);
  return static_cast<Int>(v);
}

inline Int mul_i64(Int a, Int b, const char* ctx = "multiply") {
  return checked_i64(static_cast<__int128>(a) * b, ctx);
}

// Exact rational on checked int64. Desk-scale values stay tiny; any overflow
// is an internal assertion, never silent wraparound.
struct Rat {
  Int num = 0;
  Int den = 1;

  Rat() = default;
  Rat(Int n) : num(n), den(1) {}
  Rat(Int n, Int d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) fail_internal("rational with zero denominator");
    if (den < 0) { num = -num; den = -den; }
    Int g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
  }

  bool is_zero() const { return num == 0; }
  bool is_integer() const { return den == 1; }

  friend Rat operator+(const Rat& a, const Rat& b) {
    __int128 n = static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den;
    __int128 d = static_cast<__int128>(a.den) * b.den;
    return reduced(n, d);
  }
  friend Rat operator-(const Rat& a, const Rat& b) { return a + Rat(-b.num, b.den); }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return reduced(static_cast<__int128>(a.num) * b.num, static_cast<__int128>(a.den) * b.den);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num == 0) fail_internal("rational division by zero");
    return reduced(static_cast<__int128>(a.num) * b.den, static_cast<__int128>(a.den) * b.num);
  }
  Rat operator-() const { return Rat(-num, den); }
  friend bool operator==(const Rat& a, const Rat& b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }

  std::string str() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
  }

private:
  static Rat reduced(__int128 n, __int128 d) {
    if (d < 0) { n = -n; d = -d; }
    __int128 an = n < 0 ? -n : n;
    __int128 g = gcd128(an, d);
    if (g > 1) { n /= g; d /= g; }
    Rat r;
    r.num = checked_i64(n, "rational numerator");
    r.den = checked_i64(d, "rational denominator");
    return r;
  }
  static __int128 gcd128(__int128 a, __int128 b) {
    while (b) { __int128 t = a % b; a = b; b = t; }
    return a < 0 ? -a : a;
  }
};

// Lattice vector helpers.
inline LatticeVector vec_add(const LatticeVector& a, const LatticeVector& b) {
  LatticeVector r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}
inline LatticeVector vec_sub(const LatticeVector& a, const LatticeVector& b) {
  LatticeVector r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}
inline LatticeVector vec_scale(Int c, const LatticeVector& a) {
  LatticeVector r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = mul_i64(c, a[i]);
  return r;
}
inline bool vec_is_zero(const LatticeVector& a) {
  for (Int x : a) if (x != 0) return false;
  return true;
}
inline bool vec_nonneg(const LatticeVector& a) {
  for (Int x : a) if (x < 0) return false;
  return true;
}
// componentwise a <= b
inline bool vec_le(const LatticeVector& a, const LatticeVector& b) {
  for (size_t i = 0; i < a.size(); ++i) if (a[i] > b[i]) return false;
  return true;
}
inline Int vec_dot(const LatticeVector& a, const LatticeVector& b) {
  __int128 s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += static_cast<__int128>(a[i]) * b[i];
  return checked_i64(s, "dot product");
}

inline LatticeVector mat_apply(const IMat& m, const LatticeVector& v) {
  LatticeVector r(m.size(), 0);
  for (size_t i = 0; i < m.size(); ++i) {
    __int128 s = 0;
    for (size_t j = 0; j < v.size(); ++j) s += static_cast<__int128>(m[i][j]) * v[j];
    r[i] = checked_i64(s, "matrix apply");
  }
  return r;
}

inline IMat mat_mul(const IMat& a, const IMat& b) {
  size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  IMat r(n, std::vector<Int>(m, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (size_t j = 0; j < m; ++j)
        r[i][j] = checked_i64(static_cast<__int128>(r[i][j]) +
                              static_cast<__int128>(a[i][l]) * b[l][j], "matrix multiply");
    }
  return r;
}

inline IMat mat_transpose(const IMat& a) {
  size_t n = a.size(), m = a.empty() ? 0 : a[0].size();
  IMat r(m, std::vector<Int>(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < m; ++j) r[j][i] = a[i][j];
  return r;
}

inline IMat mat_identity(size_t n) {
  IMat r(n, std::vector<Int>(n, 0));
  for (size_t i = 0; i < n; ++i) r[i][i] = 1;
  return r;
}

// Exact inverse over Q with an integrality check; callers pass unimodular
// matrices (Euler matrix in a topological order), so a non-integer inverse is
// an internal inconsistency.
IMat mat_inverse_integer(const IMat& a, const char* what);

// Rank-1 integer kernel of a square matrix, primitive and sign-normalized so
// the first nonzero entry is positive. Empty result when corank != 1.
std::vector<LatticeVector> integer_kernel(const IMat& a);

}  // namespace aql
