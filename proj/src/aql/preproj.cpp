#include "aql/preproj.hpp"

#include <algorithm>

namespace aql {

namespace {

void check_on_double(const DoubleQuiver& dq, const FFRep& x) {
  if (x.q != &dq.q)
    fail_validation("ShapeMismatch: representation is not on the given double quiver");
}

}  // namespace

MomentValue moment_map(const DoubleQuiver& dq, const FFRep& x) {
  check_on_double(dq, x);
  const Fp f(x.p);
  MomentValue mu;
  for (size_t i = 0; i < x.dim.size(); ++i)
    mu.emplace_back(static_cast<int>(x.dim[i]), static_cast<int>(x.dim[i]));
  for (size_t a = 0; a < dq.original_arrows; ++a) {
    const Arrow& ar = dq.q.arrows[a];
    size_t as = dq.star_of[a];
    // x_{a*} x_a lands at the source, x_a x_{a*} at the target
    mu[ar.src] = fp_add(f, mu[ar.src], fp_mul(f, x.mats[as], x.mats[a]));
    mu[ar.dst] = fp_sub(f, mu[ar.dst], fp_mul(f, x.mats[a], x.mats[as]));
  }
  Int trace = 0;
  for (const FpMat& m : mu)
    for (int d = 0; d < m.rows; ++d) trace = f.add(trace, m.at(d, d));
  internal_check(trace == 0, "moment value traces must sum to zero");
  return mu;
}

bool is_pi_rep(const DoubleQuiver& dq, const FFRep& x, const LatticeVector& lambda) {
  dq.q.check_dim(lambda, "deformation parameter");
  const Fp f(x.p);
  MomentValue mu = moment_map(dq, x);
  for (size_t i = 0; i < mu.size(); ++i) {
    FpMat want = fp_scale(f, f.reduce(lambda[i]), FpMat::identity(mu[i].rows));
    if (!(mu[i] == want)) return false;
  }
  return true;
}

bool is_nilpotent(const DoubleQuiver& dq, const FFRep& x) {
  check_on_double(dq, x);
  const Fp f(x.p);
  int nv = static_cast<int>(dq.q.num_vertices());
  // spanning rows per vertex; start with the full spaces
  std::vector<FpMat> w(nv);
  for (int i = 0; i < nv; ++i) w[i] = FpMat::identity(static_cast<int>(x.dim[i]));
  Int prev = 0;
  for (const FpMat& m : w) prev += m.rows;
  while (prev > 0) {
    std::vector<FpMat> next(nv);
    for (int i = 0; i < nv; ++i) next[i] = FpMat(0, static_cast<int>(x.dim[i]));
    for (size_t a = 0; a < dq.q.arrows.size(); ++a) {
      const Arrow& ar = dq.q.arrows[a];
      const FpMat& src = w[ar.src];
      if (src.rows == 0) continue;
      // rows of src * x_a^T are the images of the spanning rows
      FpMat img(src.rows, static_cast<int>(x.dim[ar.dst]));
      for (int r = 0; r < src.rows; ++r)
        for (int c = 0; c < img.cols; ++c) {
          Int acc = 0;
          for (int k = 0; k < src.cols; ++k)
            acc = (acc + x.mats[a].at(c, k) * src.at(r, k)) % f.p;
          img.at(r, c) = acc;
        }
      FpMat& dst = next[ar.dst];
      FpMat merged(dst.rows + img.rows, img.cols);
      std::copy(dst.a.begin(), dst.a.end(), merged.a.begin());
      std::copy(img.a.begin(), img.a.end(), merged.a.begin() + dst.a.size());
      dst = std::move(merged);
    }
    Int total = 0;
    for (int i = 0; i < nv; ++i) {
      int rank = fp_rref(f, next[i]);
      FpMat trimmed(rank, next[i].cols);
      std::copy(next[i].a.begin(), next[i].a.begin() + static_cast<size_t>(rank) * next[i].cols,
                trimmed.a.begin());
      next[i] = std::move(trimmed);
      total += rank;
    }
    if (total == prev) return false;  // proper fixed point of a descending chain
    w = std::move(next);
    prev = total;
  }
  return true;
}

FFRep rho(const DoubleQuiver& dq, const FFRep& x, const Quiver& original) {
  check_on_double(dq, x);
  if (original.num_arrows() != dq.original_arrows)
    fail_validation("ShapeMismatch: original quiver does not match the double");
  std::vector<FpMat> mats(x.mats.begin(), x.mats.begin() + dq.original_arrows);
  return make_rep(original, x.p, x.dim, std::move(mats));
}

std::vector<std::vector<FpMat>> lift_space(const FFRep& x) {
  const Quiver& q = *x.q;
  if (has_oriented_cycle(q))
    fail_validation("OrientedCycle: lift spaces are built over an acyclic forward quiver");
  const Fp f(x.p);
  int nv = static_cast<int>(q.num_vertices());
  // unknowns: entries of y_a (shape dim[src] x dim[dst]), arrow major
  std::vector<int> off(q.num_arrows() + 1, 0);
  for (size_t a = 0; a < q.num_arrows(); ++a)
    off[a + 1] = off[a] + static_cast<int>(x.dim[q.arrows[a].src] * x.dim[q.arrows[a].dst]);
  int cols = off[q.num_arrows()];
  int rows = 0;
  for (int i = 0; i < nv; ++i) rows += static_cast<int>(x.dim[i] * x.dim[i]);
  FpMat sys(rows, cols);
  int row0 = 0;
  for (int i = 0; i < nv; ++i) {
    int d = static_cast<int>(x.dim[i]);
    for (size_t a = 0; a < q.num_arrows(); ++a) {
      const Arrow& ar = q.arrows[a];
      int ds = static_cast<int>(x.dim[ar.src]), dt = static_cast<int>(x.dim[ar.dst]);
      if (ar.src == i) {
        // + (y_a x_a)(r,c): coefficient of y_a(r,k) is x_a(k,c)
        for (int r = 0; r < d; ++r)
          for (int c = 0; c < d; ++c)
            for (int k = 0; k < dt; ++k)
              sys.at(row0 + r * d + c, off[a] + r * dt + k) =
                  f.add(sys.at(row0 + r * d + c, off[a] + r * dt + k),
                        x.mats[a].at(k, c));
      }
      if (ar.dst == i) {
        // - (x_a y_a)(r,c): coefficient of y_a(k,c) is x_a(r,k)
        for (int r = 0; r < d; ++r)
          for (int c = 0; c < d; ++c)
            for (int k = 0; k < ds; ++k)
              sys.at(row0 + r * d + c, off[a] + k * d + c) =
                  f.sub(sys.at(row0 + r * d + c, off[a] + k * d + c),
                        x.mats[a].at(r, k));
      }
    }
    row0 += d * d;
  }
  auto kernel = fp_kernel(f, sys);
  Int expected = hom_dim(x, x) - tits_form(q, x.dim);
  internal_check(static_cast<Int>(kernel.size()) == expected,
                 "lift space dimension must match End minus the quadratic form");
  std::vector<std::vector<FpMat>> basis;
  for (const auto& vec : kernel) {
    std::vector<FpMat> y;
    for (size_t a = 0; a < q.num_arrows(); ++a) {
      const Arrow& ar = q.arrows[a];
      FpMat m(static_cast<int>(x.dim[ar.src]), static_cast<int>(x.dim[ar.dst]));
      for (size_t e = 0; e < m.a.size(); ++e) m.a[e] = vec[off[a] + e];
      y.push_back(std::move(m));
    }
    basis.push_back(std::move(y));
  }
  return basis;
}

FFRep assemble_double(const DoubleQuiver& dq, const FFRep& x,
                      const std::vector<FpMat>& starred) {
  if (starred.size() != dq.original_arrows)
    fail_validation("ShapeMismatch: one starred matrix per original arrow required");
  std::vector<FpMat> mats = x.mats;
  for (size_t a = 0; a < dq.original_arrows; ++a) mats.push_back(starred[a]);
  return make_rep(dq.q, x.p, x.dim, std::move(mats));
}

NilpotentLifts nilpotent_lifts(const FFRep& x, Budget& budget) {
  const Quiver& q = *x.q;
  DoubleQuiver dq = double_quiver(q);
  auto basis = lift_space(x);
  NilpotentLifts out;
  out.space_dim = static_cast<Int>(basis.size());
  out.total = 1;
  for (Int i = 0; i < out.space_dim; ++i) {
    if (out.total > budget.limit / x.p)
      fail_budget("LiftSpaceTooLarge: p^" + std::to_string(out.space_dim) +
                  " lifts exceed the budget");
    out.total *= x.p;
  }
  budget.charge(out.total, "lift space scan");
  const Fp f(x.p);
  std::vector<Int> digits(static_cast<size_t>(out.space_dim), 0);
  for (;;) {
    std::vector<FpMat> y;
    for (size_t a = 0; a < q.num_arrows(); ++a) {
      const Arrow& ar = q.arrows[a];
      FpMat m(static_cast<int>(x.dim[ar.src]), static_cast<int>(x.dim[ar.dst]));
      for (size_t b = 0; b < basis.size(); ++b)
        if (digits[b] != 0) m = fp_add(f, m, fp_scale(f, digits[b], basis[b][a]));
      y.push_back(std::move(m));
    }
    FFRep point = assemble_double(dq, x, y);
    internal_check(is_pi_rep(dq, point, LatticeVector(x.dim.size(), 0)),
                   "lift space point must satisfy the zero-moment relation");
    if (is_nilpotent(dq, point)) {
      ++out.count;
      out.lifts.push_back(std::move(y));
    }
    size_t j = 0;
    while (j < digits.size() && digits[j] == x.p - 1) digits[j++] = 0;
    if (j == digits.size()) break;
    ++digits[j];
  }
  internal_check(out.count >= 1, "the zero starred part is always a nilpotent lift");
  return out;
}

}  // namespace aql
