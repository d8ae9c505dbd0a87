#include "aql/roots.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace aql {

Int defect(const Quiver& q, const AffineData& aff, const LatticeVector& alpha) {
  q.check_dim(alpha);
  return euler_form(q, aff.delta, alpha);
}

LatticeVector simple_reflection(const Quiver& q, int vertex, const LatticeVector& beta) {
  q.check_dim(beta);
  internal_check(vertex >= 0 && vertex < q.num_vertices(), "reflection vertex out of range");
  LatticeVector ei(q.num_vertices(), 0);
  ei[vertex] = 1;
  Int pairing = symmetrized_form(q, beta, ei);
  LatticeVector out = beta;
  out[vertex] = checked_i64(out[vertex] - pairing, "reflection");
  return out;
}

CoxeterData coxeter_matrix(const Quiver& q) {
  if (has_oriented_cycle(q))
    fail_validation("OrientedCycle: Coxeter transformation needs an acyclic quiver");
  CoxeterData data;
  data.euler = euler_matrix(q);
  data.euler_inv = mat_inverse_integer(data.euler, "Euler matrix");
  IMat et = mat_transpose(data.euler);
  IMat c = mat_mul(data.euler_inv, et);
  for (auto& row : c)
    for (auto& x : row) x = -x;
  data.c = c;

  // Cross-check: c equals the composite of simple reflections applied
  // sinks-first along a topological order.
  std::vector<int> order = topological_order(q);
  int nv = q.num_vertices();
  for (int j = 0; j < nv; ++j) {
    LatticeVector v(nv, 0);
    v[j] = 1;
    for (int k = nv - 1; k >= 0; --k) v = simple_reflection(q, order[k], v);
    for (int i = 0; i < nv; ++i)
      internal_check(v[i] == data.c[i][j], "Coxeter matrix mismatch vs reflection product");
  }
  return data;
}

namespace {

// level = max m >= 0 with alpha - m*delta a nonnegative nonzero vector or zero
Int root_level(const LatticeVector& alpha, const LatticeVector& delta) {
  Int m = 0;
  LatticeVector cur = alpha;
  for (;;) {
    LatticeVector next = vec_sub(cur, delta);
    bool ok = vec_is_zero(next) || (vec_nonneg(next) && !vec_is_zero(next));
    if (!ok) break;
    cur = next;
    ++m;
  }
  return m;
}

bool is_delta_multiple(const LatticeVector& alpha, const LatticeVector& delta, Int& m_out) {
  // delta is strictly positive, so the ratio is pinned by coordinate 0
  if (alpha[0] % delta[0] != 0) return false;
  Int m = alpha[0] / delta[0];
  if (m == 0) return vec_is_zero(alpha);
  LatticeVector scaled = vec_scale(m, delta);
  if (scaled != alpha) return false;
  m_out = m;
  return true;
}

}  // namespace

std::optional<Root> classify_root(const Quiver& q, const AffineData& aff,
                                  const LatticeVector& alpha) {
  q.check_dim(alpha);
  if (vec_is_zero(alpha)) return std::nullopt;
  bool nonneg = vec_nonneg(alpha);
  LatticeVector neg(alpha.size());
  for (size_t i = 0; i < alpha.size(); ++i) neg[i] = -alpha[i];
  bool nonpos = vec_nonneg(neg);
  if (!nonneg && !nonpos) return std::nullopt;  // roots of an affine form are signed
  const LatticeVector& pos = nonneg ? alpha : neg;

  Int qval = tits_form(q, pos);
  Root r;
  r.v = alpha;
  if (qval == 1) {
    r.real = true;
    r.multiplicity = 1;
  } else if (qval == 0) {
    Int m = 0;
    if (!is_delta_multiple(pos, aff.delta, m)) return std::nullopt;
    r.imaginary = true;
    r.multiplicity = aff.n;
  } else {
    return std::nullopt;
  }
  r.regular = (defect(q, aff, pos) == 0);
  r.level = root_level(pos, aff.delta);
  if (!nonneg) r.level = -r.level;
  return r;
}

std::vector<Root> enumerate_positive_roots(const Quiver& q, const AffineData& aff,
                                           const LatticeVector& bound, Budget& budget,
                                           int /*jobs*/) {
  q.check_dim(bound);
  for (Int b : bound)
    if (b < 0) fail_validation("NegativeBound: root enumeration bound must be nonnegative");
  int nv = q.num_vertices();
  Int cells = 1;
  for (Int b : bound) cells = mul_i64(cells, b + 1, "root box");
  budget.charge(cells, "root enumeration box");

  std::vector<Root> out;
  LatticeVector cur(nv, 0);
  for (;;) {
    if (!vec_is_zero(cur)) {
      auto r = classify_root(q, aff, cur);
      if (r) out.push_back(*r);
    }
    int k = nv - 1;
    while (k >= 0 && cur[k] == bound[k]) {
      cur[k] = 0;
      --k;
    }
    if (k < 0) break;
    ++cur[k];
  }
  std::sort(out.begin(), out.end(),
            [](const Root& a, const Root& b) { return a.v < b.v; });
  return out;
}

CoxeterOrbit coxeter_orbit(const Quiver& q, const AffineData& aff,
                           const LatticeVector& alpha, Int max_steps) {
  q.check_dim(alpha);
  if (!classify_root(q, aff, alpha))
    fail_validation("NonRoot: Coxeter orbit is defined on roots");
  CoxeterData cd = coxeter_matrix(q);
  CoxeterOrbit res;
  LatticeVector cur = alpha;
  for (Int step = 0; step < max_steps; ++step) {
    res.orbit.push_back(cur);
    cur = mat_apply(cd.c, cur);
    if (cur == alpha) {
      res.finite = true;
      res.period = static_cast<Int>(res.orbit.size());
      return res;
    }
  }
  res.finite = false;
  res.orbit.clear();
  res.period = 0;
  return res;
}

TubeData tube_skeleton(const Quiver& q, const AffineData& aff) {
  if (has_oriented_cycle(q))
    fail_validation("OrientedCycle: tube data needs an acyclic quiver");
  Budget budget;
  std::vector<Root> all = enumerate_positive_roots(q, aff, aff.delta, budget);
  std::set<LatticeVector> pool;
  for (const Root& r : all)
    if (r.real && r.regular && r.v != aff.delta) pool.insert(r.v);

  CoxeterData cd = coxeter_matrix(q);
  TubeData data;
  Int excess = 0;
  while (!pool.empty()) {
    LatticeVector seed = *pool.begin();
    std::vector<LatticeVector> orbit;
    LatticeVector cur = seed;
    do {
      internal_check(pool.count(cur) == 1, "regular real root orbit escaped the pool");
      pool.erase(cur);
      orbit.push_back(cur);
      cur = mat_apply(cd.c, cur);
    } while (cur != seed);

    LatticeVector sum(q.num_vertices(), 0);
    for (const auto& v : orbit) sum = vec_add(sum, v);
    Int m = 0;
    internal_check(is_delta_multiple(sum, aff.delta, m) && m >= 1,
                   "regular orbit sum is not a positive multiple of delta");
    if (m == 1) {
      excess += static_cast<Int>(orbit.size()) - 1;
      data.periods.push_back(static_cast<Int>(orbit.size()));
      data.orbits.push_back(std::move(orbit));
    }
  }
  internal_check(excess == aff.n - 1, "tube periods do not satisfy sum(N-1) = n-1");

  // sort orbits by period then lexicographically by smallest element
  std::vector<size_t> idx(data.orbits.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  auto orbit_min = [&](size_t i) {
    return *std::min_element(data.orbits[i].begin(), data.orbits[i].end());
  };
  std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
    if (data.periods[a] != data.periods[b]) return data.periods[a] < data.periods[b];
    return orbit_min(a) < orbit_min(b);
  });
  TubeData sorted;
  for (size_t i : idx) {
    sorted.periods.push_back(data.periods[i]);
    sorted.orbits.push_back(data.orbits[i]);
  }
  return sorted;
}

}  // namespace aql
