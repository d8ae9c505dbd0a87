#include "aql/replab.hpp"

#include <algorithm>
#include <deque>

namespace aql {

namespace {

constexpr Int kIdempotentScanLimit = 1000000;  // endomorphism-algebra scan ceiling

void check_same_context(const FFRep& x, const FFRep& y) {
  if (x.q != y.q) fail_validation("QuiverMismatch: representations on different quivers");
  if (x.p != y.p) fail_validation("FieldMismatch: representations over different fields");
}

}  // namespace

FFRep make_rep(const Quiver& q, Int p, LatticeVector dim, std::vector<FpMat> mats) {
  q.check_dim(dim);
  for (Int d : dim)
    if (d < 0) fail_validation("NegativeDimension: dimension vector must be nonnegative");
  if (mats.size() != q.arrows.size())
    fail_validation("ShapeMismatch: one matrix per arrow required");
  Fp f(p);
  for (size_t a = 0; a < mats.size(); ++a) {
    int want_r = static_cast<int>(dim[q.arrows[a].dst]);
    int want_c = static_cast<int>(dim[q.arrows[a].src]);
    if (mats[a].rows != want_r || mats[a].cols != want_c)
      fail_validation("ShapeMismatch: arrow '" + q.arrows[a].id + "' expects " +
                      std::to_string(want_r) + "x" + std::to_string(want_c));
    for (Int& v : mats[a].a) v = f.reduce(v);
  }
  FFRep x;
  x.q = &q;
  x.p = p;
  x.dim = std::move(dim);
  x.mats = std::move(mats);
  return x;
}

FFRep zero_rep(const Quiver& q, Int p, LatticeVector dim) {
  std::vector<FpMat> mats;
  for (const Arrow& a : q.arrows)
    mats.emplace_back(static_cast<int>(dim[a.dst]), static_cast<int>(dim[a.src]));
  return make_rep(q, p, std::move(dim), std::move(mats));
}

FFRep simple_rep(const Quiver& q, Int p, int vertex) {
  internal_check(vertex >= 0 && vertex < static_cast<int>(q.num_vertices()),
                 "simple vertex out of range");
  LatticeVector dim(q.num_vertices(), 0);
  dim[vertex] = 1;
  return zero_rep(q, p, std::move(dim));
}

RepSpace::RepSpace(const Quiver& qq, Int p, LatticeVector d, Budget& budget)
    : q(&qq), field(p), dim(std::move(d)) {
  qq.check_dim(dim);
  for (Int v : dim)
    if (v < 0) fail_validation("NegativeDimension: dimension vector must be nonnegative");
  for (const Arrow& a : qq.arrows)
    total_entries = checked_i64(total_entries + dim[a.dst] * dim[a.src], "entry count");
  size = 1;
  for (Int t = 0; t < total_entries; ++t) {
    if (size > budget.limit / p)
      fail_budget("RepSpaceTooLarge: p^" + std::to_string(total_entries) +
                  " points exceed the budget");
    size *= p;
  }
  budget.charge(size, "representation space");
}

FFRep RepSpace::decode(Int index) const {
  internal_check(index >= 0 && index < size, "representation index out of range");
  std::vector<FpMat> mats;
  Int rest = index;
  for (const Arrow& a : q->arrows) {
    FpMat m(static_cast<int>(dim[a.dst]), static_cast<int>(dim[a.src]));
    for (auto& v : m.a) {
      v = rest % field.p;
      rest /= field.p;
    }
    mats.push_back(std::move(m));
  }
  return make_rep(*q, field.p, dim, std::move(mats));
}

Int RepSpace::encode(const FFRep& x) const {
  internal_check(x.q == q && x.p == field.p && x.dim == dim,
                 "representation does not belong to this space");
  Int idx = 0, scale = 1;
  for (const FpMat& m : x.mats)
    for (Int v : m.a) {
      idx += v * scale;
      scale = (scale > size) ? scale : scale * field.p;
    }
  return idx;
}

Int gl_order(Int p, const LatticeVector& dim) {
  Int order = 1;
  for (Int d : dim) {
    Int pd = 1;
    for (Int k = 0; k < d; ++k) pd = mul_i64(pd, p, "group order");
    Int pk = 1;
    for (Int k = 0; k < d; ++k) {
      order = mul_i64(order, pd - pk, "group order");
      pk = mul_i64(pk, p, "group order");
    }
  }
  return order;
}

namespace {

struct Generator {
  int vertex;
  FpMat m, minv;
};

std::vector<Generator> gl_generators(const Fp& f, const LatticeVector& dim) {
  std::vector<Generator> gens;
  for (size_t v = 0; v < dim.size(); ++v) {
    int d = static_cast<int>(dim[v]);
    if (d == 0) continue;
    if (f.p > 2) {
      FpMat m = FpMat::identity(d), mi = FpMat::identity(d);
      Int g = f.primitive_root();
      m.at(0, 0) = g;
      mi.at(0, 0) = f.inv(g);
      gens.push_back({static_cast<int>(v), std::move(m), std::move(mi)});
    }
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) {
        if (r == c) continue;
        FpMat m = FpMat::identity(d), mi = FpMat::identity(d);
        m.at(r, c) = 1;
        mi.at(r, c) = f.p - 1;
        gens.push_back({static_cast<int>(v), std::move(m), std::move(mi)});
      }
  }
  return gens;
}

FFRep apply_generator(const FFRep& x, const Generator& g) {
  const Fp f(x.p);
  FFRep out = x;
  for (size_t a = 0; a < x.q->arrows.size(); ++a) {
    const Arrow& ar = x.q->arrows[a];
    if (ar.dst == g.vertex) out.mats[a] = fp_mul(f, g.m, out.mats[a]);
    if (ar.src == g.vertex) out.mats[a] = fp_mul(f, out.mats[a], g.minv);
  }
  return out;
}

}  // namespace

ClassTable iso_classes(const Quiver& q, const LatticeVector& dim, Int p, Budget& budget) {
  budget.charge(gl_order(p, dim), "linear group order");
  ClassTable table{RepSpace(q, p, dim, budget), {}, {}, {}};
  const RepSpace& space = table.space;
  table.class_of.assign(static_cast<size_t>(space.size), -1);
  std::vector<Generator> gens = gl_generators(space.field, dim);
  for (Int seed = 0; seed < space.size; ++seed) {
    if (table.class_of[seed] != -1) continue;
    int cls = static_cast<int>(table.reps.size());
    table.reps.push_back(seed);
    Int count = 0;
    std::deque<Int> queue{seed};
    table.class_of[seed] = cls;
    while (!queue.empty()) {
      Int cur = queue.front();
      queue.pop_front();
      ++count;
      FFRep rep = space.decode(cur);
      for (const Generator& g : gens) {
        Int next = space.encode(apply_generator(rep, g));
        if (table.class_of[next] == -1) {
          table.class_of[next] = cls;
          queue.push_back(next);
        }
      }
    }
    table.orbit_sizes.push_back(count);
  }
  Int covered = 0;
  for (Int s : table.orbit_sizes) covered += s;
  internal_check(covered == space.size, "orbits do not partition the space");
  return table;
}

const ClassTable& ClassCache::at(const LatticeVector& dim) {
  auto it = tables.find(dim);
  if (it != tables.end()) return it->second;
  return tables.emplace(dim, iso_classes(*q, dim, p, *budget)).first->second;
}

namespace {

// Linear system whose kernel is the intertwiner space Hom(x, y).
// Columns indexed per vertex by entries of g_i, rows per arrow by entries of
// g_{t(a)} x_a - y_a g_{s(a)}.
FpMat intertwiner_system(const FFRep& x, const FFRep& y) {
  const Quiver& q = *x.q;
  int nv = static_cast<int>(q.num_vertices());
  std::vector<int> col_off(nv + 1, 0);
  for (int i = 0; i < nv; ++i)
    col_off[i + 1] = col_off[i] + static_cast<int>(y.dim[i] * x.dim[i]);
  int rows = 0;
  for (const Arrow& a : q.arrows) rows += static_cast<int>(y.dim[a.dst] * x.dim[a.src]);
  FpMat sys(rows, col_off[nv]);
  const Fp f(x.p);
  int row = 0;
  for (size_t ai = 0; ai < q.arrows.size(); ++ai) {
    const Arrow& a = q.arrows[ai];
    int s = a.src, t = a.dst;
    int xs = static_cast<int>(x.dim[s]), xt = static_cast<int>(x.dim[t]);
    int ys = static_cast<int>(y.dim[s]), yt = static_cast<int>(y.dim[t]);
    for (int r = 0; r < yt; ++r)
      for (int c = 0; c < xs; ++c) {
        for (int k = 0; k < xt; ++k)
          sys.at(row, col_off[t] + r * xt + k) =
              f.add(sys.at(row, col_off[t] + r * xt + k), x.mats[ai].at(k, c));
        for (int k = 0; k < ys; ++k)
          sys.at(row, col_off[s] + k * xs + c) =
              f.sub(sys.at(row, col_off[s] + k * xs + c), y.mats[ai].at(r, k));
        ++row;
      }
  }
  internal_check(row == rows, "intertwiner system row count");
  return sys;
}

}  // namespace

Int hom_dim(const FFRep& x, const FFRep& y, std::vector<Intertwiner>* basis) {
  check_same_context(x, y);
  FpMat sys = intertwiner_system(x, y);
  const Fp f(x.p);
  auto kernel = fp_kernel(f, sys);
  if (basis) {
    basis->clear();
    const Quiver& q = *x.q;
    for (const auto& vec : kernel) {
      Intertwiner tuple;
      int off = 0;
      for (int i = 0; i < static_cast<int>(q.num_vertices()); ++i) {
        FpMat g(static_cast<int>(y.dim[i]), static_cast<int>(x.dim[i]));
        for (auto& e : g.a) e = vec[off++];
        tuple.push_back(std::move(g));
      }
      basis->push_back(std::move(tuple));
    }
  }
  return static_cast<Int>(kernel.size());
}

Int ext_dim(const FFRep& x, const FFRep& y) {
  check_same_context(x, y);
  if (has_oriented_cycle(*x.q))
    fail_validation("OrientedCycle: extension dimension needs an acyclic quiver");
  const Quiver& q = *x.q;
  // standard-resolution map, assembled arrow by arrow; ext is its corank
  const Fp f(x.p);
  int dom = 0;
  for (int i = 0; i < static_cast<int>(q.num_vertices()); ++i)
    dom += static_cast<int>(y.dim[i] * x.dim[i]);
  int cod = 0;
  for (const Arrow& a : q.arrows) cod += static_cast<int>(y.dim[a.dst] * x.dim[a.src]);
  FpMat phi(cod, dom);
  std::vector<int> col_off(q.num_vertices() + 1, 0);
  for (int i = 0; i < static_cast<int>(q.num_vertices()); ++i)
    col_off[i + 1] = col_off[i] + static_cast<int>(y.dim[i] * x.dim[i]);
  int row = 0;
  for (size_t ai = 0; ai < q.arrows.size(); ++ai) {
    const Arrow& a = q.arrows[ai];
    int xs = static_cast<int>(x.dim[a.src]), xt = static_cast<int>(x.dim[a.dst]);
    int ys = static_cast<int>(y.dim[a.src]), yt = static_cast<int>(y.dim[a.dst]);
    for (int r = 0; r < yt; ++r)
      for (int c = 0; c < xs; ++c) {
        for (int k = 0; k < xt; ++k)
          phi.at(row, col_off[a.dst] + r * xt + k) =
              f.add(phi.at(row, col_off[a.dst] + r * xt + k), x.mats[ai].at(k, c));
        for (int k = 0; k < ys; ++k)
          phi.at(row, col_off[a.src] + k * xs + c) =
              f.sub(phi.at(row, col_off[a.src] + k * xs + c), y.mats[ai].at(r, k));
        ++row;
      }
  }
  return cod - fp_rank(f, phi);
}

namespace {

Int total_dim(const FFRep& x) {
  Int t = 0;
  for (Int d : x.dim) t += d;
  return t;
}

// Applies fn to every element of the span of the endomorphism basis.
// fn returns false to stop early.
template <class F>
void scan_algebra(const Fp& f, const std::vector<Intertwiner>& basis, F&& fn) {
  size_t d = basis.size();
  std::vector<Int> digits(d, 0);
  for (;;) {
    Intertwiner e;
    if (!basis.empty()) {
      for (size_t v = 0; v < basis[0].size(); ++v) {
        FpMat m(basis[0][v].rows, basis[0][v].cols);
        for (size_t i = 0; i < d; ++i)
          if (digits[i] != 0) m = fp_add(f, m, fp_scale(f, digits[i], basis[i][v]));
        e.push_back(std::move(m));
      }
    }
    if (!fn(e)) return;
    size_t j = 0;
    while (j < d && digits[j] == f.p - 1) digits[j++] = 0;
    if (j == d) return;
    ++digits[j];
  }
}

bool tuple_is_identity(const Intertwiner& e) {
  for (const FpMat& m : e)
    if (!(m == FpMat::identity(m.rows))) return false;
  return true;
}

bool tuple_is_zero(const Intertwiner& e) {
  for (const FpMat& m : e)
    for (Int v : m.a)
      if (v != 0) return false;
  return true;
}

}  // namespace

bool is_indecomposable(const FFRep& x, Budget& budget) {
  if (total_dim(x) == 0) return false;
  std::vector<Intertwiner> basis;
  Int d = hom_dim(x, x, &basis);
  const Fp f(x.p);
  Int count = 1;
  for (Int i = 0; i < d; ++i) {
    if (count > kIdempotentScanLimit / x.p)
      fail_budget("EndScanTooLarge: p^" + std::to_string(d) +
                  " endomorphisms exceed the idempotent scan limit");
    count *= x.p;
  }
  budget.charge(count, "endomorphism scan");
  bool split = false;
  scan_algebra(f, basis, [&](const Intertwiner& e) {
    bool idem = true;
    for (const FpMat& m : e)
      if (!(fp_mul(f, m, m) == m)) {
        idem = false;
        break;
      }
    if (idem && !tuple_is_zero(e) && !tuple_is_identity(e)) {
      split = true;
      return false;
    }
    return true;
  });
  return !split;
}

bool is_absolutely_indecomposable(const FFRep& x, Budget& budget) {
  if (!is_indecomposable(x, budget)) return false;
  std::vector<Intertwiner> basis;
  Int d = hom_dim(x, x, &basis);
  const Fp f(x.p);
  Int nonunits = 0;
  scan_algebra(f, basis, [&](const Intertwiner& e) {
    for (const FpMat& m : e) {
      FpMat copy = m;
      if (fp_rref(f, copy) < m.rows) {
        ++nonunits;
        break;
      }
    }
    return true;
  });
  // local algebra: nonunits form the radical, so their count is p^(d - e)
  // with the quotient a field of size p^e
  Int e = d;
  Int power = 1;
  while (power < nonunits) {
    power *= x.p;
    --e;
  }
  internal_check(power == nonunits && e >= 1,
                 "endomorphism nonunit count is not the expected prime power");
  return e == 1;
}

std::vector<Rat> interpolate_rational(const std::vector<std::pair<Int, Int>>& points) {
  internal_check(!points.empty(), "interpolation needs at least one point");
  std::vector<Rat> acc{Rat(0)};
  for (size_t i = 0; i < points.size(); ++i) {
    std::vector<Rat> term{Rat(points[i].second)};
    for (size_t j = 0; j < points.size(); ++j) {
      if (j == i) continue;
      // multiply by (X - x_j) / (x_i - x_j)
      Rat denom = Rat(points[i].first - points[j].first);
      std::vector<Rat> next(term.size() + 1, Rat(0));
      for (size_t k = 0; k < term.size(); ++k) {
        next[k + 1] = next[k + 1] + term[k] / denom;
        next[k] = next[k] - term[k] * Rat(points[j].first) / denom;
      }
      term = std::move(next);
    }
    if (term.size() > acc.size()) acc.resize(term.size(), Rat(0));
    for (size_t k = 0; k < term.size(); ++k) acc[k] = acc[k] + term[k];
  }
  while (acc.size() > 1 && acc.back().num == 0) acc.pop_back();
  return acc;
}

Rat eval_poly(const std::vector<Rat>& coeffs, const Rat& x) {
  Rat v(0);
  for (size_t k = coeffs.size(); k-- > 0;) v = v * x + coeffs[k];
  return v;
}

KacPolynomial kac_polynomial(const Quiver& q, const LatticeVector& alpha,
                             std::vector<Int> primes, Budget& budget) {
  q.check_dim(alpha);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  for (Int p : primes) { Fp check(p); (void)check; }
  Int bound = 1 - tits_form(q, alpha);
  if (bound < 0) bound = 0;
  if (static_cast<Int>(primes.size()) < bound + 1)
    fail_validation("InsufficientPrimes: need at least " + std::to_string(bound + 1) +
                    " primes for degree bound " + std::to_string(bound));
  KacPolynomial out;
  out.degree_bound = bound;
  for (Int p : primes) {
    ClassTable table = iso_classes(q, alpha, p, budget);
    Int count = 0;
    for (Int rep_idx : table.reps) {
      FFRep rep = table.space.decode(rep_idx);
      if (is_absolutely_indecomposable(rep, budget)) ++count;
    }
    out.counts.emplace_back(p, count);
  }
  std::vector<Rat> poly = interpolate_rational(out.counts);
  internal_check(static_cast<Int>(poly.size()) - 1 <= bound,
                 "interpolated count exceeds the degree bound");
  for (const Rat& c : poly) {
    internal_check(c.den == 1, "count polynomial has a non-integer coefficient");
    out.coeffs.push_back(c.num);
  }
  return out;
}

namespace {

std::vector<int> rref_pivots(const FpMat& m) {
  // rows are assumed reduced; pivot of a row is its first nonzero entry
  std::vector<int> piv;
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c)
      if (m.at(r, c) != 0) {
        piv.push_back(c);
        break;
      }
  return piv;
}

// reduce v against an RREF basis in place; v lands in the complement profile
void reduce_by_basis(const Fp& f, const FpMat& basis, const std::vector<int>& piv,
                     std::vector<Int>& v) {
  for (int r = 0; r < basis.rows; ++r) {
    Int c = v[piv[r]];
    if (c == 0) continue;
    for (int j = 0; j < basis.cols; ++j) v[j] = f.sub(v[j], f.mul(c, basis.at(r, j)));
  }
}

std::vector<Int> mat_vec(const Fp& f, const FpMat& m, const std::vector<Int>& v) {
  std::vector<Int> out(m.rows, 0);
  for (int r = 0; r < m.rows; ++r) {
    Int acc = 0;
    for (int c = 0; c < m.cols; ++c) acc = (acc + m.at(r, c) * v[c]) % f.p;
    out[r] = acc;
  }
  return out;
}

}  // namespace

std::vector<SubRep> enumerate_subreps(const FFRep& z, const LatticeVector& beta,
                                      Budget& budget) {
  const Quiver& q = *z.q;
  q.check_dim(beta);
  for (size_t i = 0; i < beta.size(); ++i)
    if (beta[i] < 0 || beta[i] > z.dim[i])
      fail_validation("BadSubdimension: requested dimension does not fit");
  const Fp f(z.p);
  int nv = static_cast<int>(q.num_vertices());
  std::vector<std::vector<FpMat>> choices(nv);
  std::vector<std::vector<std::vector<int>>> pivots(nv);
  Int combos = 1;
  for (int i = 0; i < nv; ++i) {
    choices[i] = fp_subspaces(f, static_cast<int>(z.dim[i]), static_cast<int>(beta[i]),
                              budget);
    for (const FpMat& s : choices[i]) pivots[i].push_back(rref_pivots(s));
    combos = mul_i64(combos, static_cast<Int>(choices[i].size()), "subspace tuples");
  }
  budget.charge(combos, "subrepresentation scan");

  std::vector<SubRep> out;
  std::vector<size_t> pick(nv, 0);
  for (;;) {
    bool closed = true;
    for (size_t ai = 0; ai < q.arrows.size() && closed; ++ai) {
      const Arrow& a = q.arrows[ai];
      const FpMat& vs = choices[a.src][pick[a.src]];
      const FpMat& vt = choices[a.dst][pick[a.dst]];
      const auto& pt = pivots[a.dst][pick[a.dst]];
      for (int r = 0; r < vs.rows && closed; ++r) {
        std::vector<Int> row(vs.cols);
        for (int c = 0; c < vs.cols; ++c) row[c] = vs.at(r, c);
        std::vector<Int> img = mat_vec(f, z.mats[ai], row);
        reduce_by_basis(f, vt, pt, img);
        for (Int v : img)
          if (v != 0) {
            closed = false;
            break;
          }
      }
    }
    if (closed) {
      SubRep s;
      for (int i = 0; i < nv; ++i) s.push_back(choices[i][pick[i]]);
      out.push_back(std::move(s));
    }
    int j = nv - 1;
    while (j >= 0 && pick[j] + 1 == choices[j].size()) pick[j--] = 0;
    if (j < 0) break;
    ++pick[j];
  }
  return out;
}

FFRep sub_rep(const FFRep& z, const SubRep& s) {
  const Quiver& q = *z.q;
  const Fp f(z.p);
  LatticeVector beta(q.num_vertices());
  std::vector<std::vector<int>> piv(q.num_vertices());
  for (int i = 0; i < static_cast<int>(q.num_vertices()); ++i) {
    beta[i] = s[i].rows;
    piv[i] = rref_pivots(s[i]);
  }
  std::vector<FpMat> mats;
  for (size_t ai = 0; ai < q.arrows.size(); ++ai) {
    const Arrow& a = q.arrows[ai];
    FpMat m(static_cast<int>(beta[a.dst]), static_cast<int>(beta[a.src]));
    for (int c = 0; c < m.cols; ++c) {
      std::vector<Int> row(s[a.src].cols);
      for (int j = 0; j < s[a.src].cols; ++j) row[j] = s[a.src].at(c, j);
      std::vector<Int> img = mat_vec(f, z.mats[ai], row);
      for (int r = 0; r < m.rows; ++r) m.at(r, c) = img[piv[a.dst][r]];
      reduce_by_basis(f, s[a.dst], piv[a.dst], img);
      for (Int v : img) internal_check(v == 0, "subspace tuple not closed under arrows");
    }
    mats.push_back(std::move(m));
  }
  return make_rep(q, z.p, std::move(beta), std::move(mats));
}

FFRep quotient_rep(const FFRep& z, const SubRep& s) {
  const Quiver& q = *z.q;
  const Fp f(z.p);
  LatticeVector gamma(q.num_vertices());
  std::vector<std::vector<int>> piv(q.num_vertices()), nonpiv(q.num_vertices());
  for (int i = 0; i < static_cast<int>(q.num_vertices()); ++i) {
    piv[i] = rref_pivots(s[i]);
    std::vector<bool> is_piv(z.dim[i], false);
    for (int c : piv[i]) is_piv[c] = true;
    for (int c = 0; c < static_cast<int>(z.dim[i]); ++c)
      if (!is_piv[c]) nonpiv[i].push_back(c);
    gamma[i] = static_cast<Int>(nonpiv[i].size());
  }
  std::vector<FpMat> mats;
  for (size_t ai = 0; ai < q.arrows.size(); ++ai) {
    const Arrow& a = q.arrows[ai];
    FpMat m(static_cast<int>(gamma[a.dst]), static_cast<int>(gamma[a.src]));
    for (int c = 0; c < m.cols; ++c) {
      std::vector<Int> unit(z.dim[a.src], 0);
      unit[nonpiv[a.src][c]] = 1;
      std::vector<Int> img = mat_vec(f, z.mats[ai], unit);
      reduce_by_basis(f, s[a.dst], piv[a.dst], img);
      for (int r = 0; r < m.rows; ++r) m.at(r, c) = img[nonpiv[a.dst][r]];
    }
    mats.push_back(std::move(m));
  }
  return make_rep(q, z.p, std::move(gamma), std::move(mats));
}

namespace {

std::vector<Int> arrow_rank_fingerprint(const FFRep& x) {
  const Fp f(x.p);
  std::vector<Int> fp;
  for (const FpMat& m : x.mats) fp.push_back(fp_rank(f, m));
  return fp;
}

}  // namespace

bool is_isomorphic(const FFRep& x, const FFRep& y, ClassCache& cache) {
  check_same_context(x, y);
  if (x.dim != y.dim) return false;
  if (arrow_rank_fingerprint(x) != arrow_rank_fingerprint(y)) return false;
  const ClassTable& table = cache.at(x.dim);
  return table.class_of[table.space.encode(x)] == table.class_of[table.space.encode(y)];
}

Int hall_number(const FFRep& x, const FFRep& y, const FFRep& z, ClassCache& cache,
                Budget& budget) {
  check_same_context(x, y);
  check_same_context(x, z);
  if (vec_add(x.dim, y.dim) != z.dim) return 0;
  Int count = 0;
  for (const SubRep& s : enumerate_subreps(z, x.dim, budget)) {
    if (!is_isomorphic(sub_rep(z, s), x, cache)) continue;
    if (!is_isomorphic(quotient_rep(z, s), y, cache)) continue;
    ++count;
  }
  return count;
}

FFRep reduce_spec(const Quiver& q, const IntRepSpec& spec, Int p) {
  q.check_dim(spec.dim);
  std::vector<FpMat> mats;
  const Fp f(p);
  for (const Arrow& a : q.arrows) {
    auto it = spec.matrices.find(a.id);
    if (it == spec.matrices.end())
      fail_validation("MissingMatrix: no matrix for arrow '" + a.id + "'");
    const IMat& m = it->second;
    int rows = static_cast<int>(spec.dim[a.dst]);
    int cols = static_cast<int>(spec.dim[a.src]);
    // [] is accepted for any entryless shape (zero rows or zero columns)
    if (static_cast<int>(m.size()) != rows && !(m.empty() && cols == 0))
      fail_validation("ShapeMismatch: arrow '" + a.id + "' needs " + std::to_string(rows) +
                      " rows, got " + std::to_string(m.size()));
    FpMat fm(rows, cols);
    if (m.empty()) {
      mats.push_back(std::move(fm));
      continue;
    }
    for (int r = 0; r < rows; ++r) {
      if (static_cast<int>(m[r].size()) != cols)
        fail_validation("ShapeMismatch: arrow '" + a.id + "' needs " + std::to_string(cols) +
                        " columns, got " + std::to_string(m[r].size()));
      for (int c = 0; c < cols; ++c) fm.at(r, c) = f.reduce(m[r][c]);
    }
    mats.push_back(std::move(fm));
  }
  if (spec.matrices.size() != q.arrows.size())
    fail_validation("UnknownMatrix: spec names an arrow the quiver lacks");
  return make_rep(q, p, spec.dim, std::move(mats));
}

HallCount hall_euler_characteristic(const Quiver& q, const IntRepSpec& xs,
                                    const IntRepSpec& ys, const IntRepSpec& zs,
                                    std::vector<Int> primes, Budget& budget) {
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  if (vec_add(xs.dim, ys.dim) != zs.dim)
    fail_validation("DimensionMismatch: sub and quotient dimensions must sum to the total");
  HallCount out;
  for (size_t i = 0; i < xs.dim.size(); ++i)
    out.degree_bound += xs.dim[i] * (zs.dim[i] - xs.dim[i]);
  if (static_cast<Int>(primes.size()) < out.degree_bound + 1)
    fail_validation("InsufficientPrimes: need at least " +
                    std::to_string(out.degree_bound + 1) + " primes for degree bound " +
                    std::to_string(out.degree_bound));
  for (Int p : primes) {
    ClassCache cache(q, p, budget);
    FFRep x = reduce_spec(q, xs, p);
    FFRep y = reduce_spec(q, ys, p);
    FFRep z = reduce_spec(q, zs, p);
    out.counts.emplace_back(p, hall_number(x, y, z, cache, budget));
  }
  out.poly = interpolate_rational(out.counts);
  if (static_cast<Int>(out.poly.size()) - 1 > out.degree_bound)
    fail_validation("InterpolationInconsistent: counts exceed the dimension bound");
  Rat chi = eval_poly(out.poly, Rat(1));
  internal_check(chi.den == 1, "point-count value at 1 must be an integer");
  out.euler_characteristic = chi.num;
  return out;
}

StabilityResult stability_status(const FFRep& x, const LatticeVector& theta,
                                 Budget& budget) {
  x.q->check_dim(theta);
  if (vec_dot(theta, x.dim) != 0)
    fail_validation("NonzeroTotalPairing: weight must vanish on the total dimension");
  StabilityResult res{StabilityVerdict::Stable, 0, std::nullopt, std::nullopt};
  bool any = false, zero_seen = false;
  LatticeVector beta(x.dim.size(), 0);
  for (;;) {
    int j = static_cast<int>(beta.size()) - 1;
    while (j >= 0 && beta[j] == x.dim[j]) beta[j--] = 0;
    if (j < 0) break;
    ++beta[j];
    if (vec_is_zero(beta) || beta == x.dim) continue;
    auto subs = enumerate_subreps(x, beta, budget);
    if (subs.empty()) continue;
    Int pairing = vec_dot(theta, beta);
    if (!any || pairing > res.max_pairing) {
      res.max_pairing = pairing;
      res.witness_dim = beta;
      res.witness = subs.front();
    }
    any = true;
    if (pairing == 0) zero_seen = true;
  }
  if (!any) {
    res.verdict = StabilityVerdict::Stable;
    res.witness_dim.reset();
    res.witness.reset();
    return res;
  }
  if (res.max_pairing > 0)
    res.verdict = StabilityVerdict::Unstable;
  else if (zero_seen)
    res.verdict = StabilityVerdict::Semistable;
  else {
    res.verdict = StabilityVerdict::Stable;
    res.witness_dim.reset();
    res.witness.reset();
  }
  return res;
}

LatticeVector standard_stability(const Quiver& q, WeightKind kind,
                                 const LatticeVector* alpha) {
  IMat e = euler_matrix(q);
  int nv = static_cast<int>(q.num_vertices());
  LatticeVector w(nv, 0);
  if (kind == WeightKind::Regular) {
    AffineData aff = classify_affine(q);
    for (int j = 0; j < nv; ++j)
      for (int i = 0; i < nv; ++i) w[j] += aff.delta[i] * e[i][j];
    return w;
  }
  if (!alpha) fail_validation("MissingAlpha: canonical weight needs a dimension vector");
  q.check_dim(*alpha);
  for (int j = 0; j < nv; ++j)
    for (int i = 0; i < nv; ++i) w[j] += (*alpha)[i] * (e[i][j] - e[j][i]);
  return w;
}

bool is_generic(const Quiver& q, const LatticeVector& lambda, const LatticeVector& alpha,
                Budget& budget) {
  q.check_dim(lambda);
  q.check_dim(alpha);
  for (Int a : alpha)
    if (a < 0) fail_validation("NegativeDimension: dimension vector must be nonnegative");
  if (vec_dot(lambda, alpha) != 0) return false;
  Int cells = 1;
  for (Int a : alpha) cells = mul_i64(cells, a + 1, "genericity box");
  budget.charge(cells, "genericity scan");
  LatticeVector beta(alpha.size(), 0);
  for (;;) {
    int j = static_cast<int>(beta.size()) - 1;
    while (j >= 0 && beta[j] == alpha[j]) beta[j--] = 0;
    if (j < 0) break;
    ++beta[j];
    if (vec_is_zero(beta) || beta == alpha) continue;
    if (vec_dot(lambda, beta) == 0) return false;
  }
  return true;
}

}  // namespace aql
