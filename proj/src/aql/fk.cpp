#include "aql/fk.hpp"

#include <algorithm>
#include <thread>

namespace aql {

void FKElement::add_term(const FKKey& k, const Rat& c) {
  if (c.num == 0) return;
  auto it = terms.find(k);
  if (it == terms.end()) {
    terms.emplace(k, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.num == 0) terms.erase(it);
}

FKElement& FKElement::operator+=(const FKElement& o) {
  for (const auto& [k, c] : o.terms) add_term(k, c);
  return *this;
}

FKElement FKElement::operator*(const Rat& c) const {
  FKElement out;
  if (c.num == 0) return out;
  for (const auto& [k, v] : terms) out.terms.emplace(k, v * c);
  return out;
}

FKContext make_fk_context(const Quiver& q, const FKConfig& cfg) {
  FKContext ctx;
  ctx.q = &q;
  ctx.aff = classify_affine(q);
  ctx.cfg = cfg;
  if (ctx.cfg.cutoff < 1) fail_validation("BadCutoff: level cutoff must be at least 1");
  if (ctx.cfg.extending_vertex < 0) {
    ctx.cfg.extending_vertex = ctx.aff.extending.at(0);
  } else {
    if (ctx.cfg.extending_vertex >= q.num_vertices() ||
        ctx.aff.delta[ctx.cfg.extending_vertex] != 1)
      fail_validation("BadExtendingVertex: delta coordinate must be 1");
  }
  return ctx;
}

Int fk_epsilon(const Quiver& q, const LatticeVector& a, const LatticeVector& b) {
  Int e = euler_form(q, a, b);
  return (e % 2 == 0) ? 1 : -1;
}

namespace {

// 0 if a is not a nonzero multiple of delta, else the multiple
Int delta_multiple_of(const AffineData& aff, const LatticeVector& a) {
  if (a[0] % aff.delta[0] != 0) return 0;
  Int m = a[0] / aff.delta[0];
  if (m == 0) return 0;
  if (vec_scale(m, aff.delta) != a) return 0;
  return m;
}

bool is_real_root_vec(const Quiver& q, const LatticeVector& a) {
  return tits_form(q, a) == 1;
}

}  // namespace

Int fk_xi(const Quiver& q, const AffineData& aff, const LatticeVector& a) {
  Int m = delta_multiple_of(aff, a);
  if (m != 0) {
    Int am = m < 0 ? -m : m;
    return (1 + am) % 2 == 0 ? 1 : -1;
  }
  // real roots and non-roots both take +1 (fixed extension off the roots)
  return 1;
}

Int fk_epsilon_star(const Quiver& q, const AffineData& aff, const LatticeVector& a,
                    const LatticeVector& b) {
  return fk_epsilon(q, a, b) * fk_xi(q, aff, vec_add(a, b)) * fk_xi(q, aff, a) *
         fk_xi(q, aff, b);
}

FKElement canonical_class(const FKContext& ctx, const LatticeVector& alpha, Int m) {
  ctx.q->check_dim(alpha);
  internal_check(m >= 1, "imaginary degree must be positive");
  int e = ctx.cfg.extending_vertex;
  LatticeVector rep = vec_sub(alpha, vec_scale(alpha[e], ctx.aff.delta));
  internal_check(rep[e] == 0, "canonical representative not normalized");
  FKElement out;
  for (int i = 0; i < ctx.q->num_vertices(); ++i) {
    if (i == e) continue;
    out.add_term(FKKey::imag_key(m, i), Rat(rep[i]));
  }
  return out;
}

LatticeVector fk_grade(const FKContext& ctx, const FKKey& k) {
  if (k.imag) return vec_scale(k.m, ctx.aff.delta);
  return k.real;
}

std::vector<FKKey> fk_basis(const FKContext& ctx) {
  std::vector<FKKey> out;
  Budget budget;
  LatticeVector bound = vec_scale(ctx.cfg.cutoff + 1, ctx.aff.delta);
  for (const Root& r : enumerate_positive_roots(*ctx.q, ctx.aff, bound, budget))
    if (r.real && r.level <= ctx.cfg.cutoff) out.push_back(FKKey::real_key(r.v));
  for (Int m = 1; m <= ctx.cfg.cutoff; ++m)
    for (int i = 0; i < ctx.q->num_vertices(); ++i)
      if (i != ctx.cfg.extending_vertex) out.push_back(FKKey::imag_key(m, i));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void validate_key(const FKContext& ctx, const FKKey& k) {
  if (k.imag) {
    if (k.m < 1 || k.m > ctx.cfg.cutoff)
      fail_validation("BadKey: imaginary degree outside cutoff");
    if (k.i < 0 || k.i >= ctx.q->num_vertices() || k.i == ctx.cfg.extending_vertex)
      fail_validation("BadKey: imaginary index must be a non-extending vertex");
    return;
  }
  auto r = classify_root(*ctx.q, ctx.aff, k.real);
  if (!r || !r->real || r->level < 0 || !vec_nonneg(k.real))
    fail_validation("BadKey: not a positive real root");
  if (r->level > ctx.cfg.cutoff) fail_validation("BadKey: root level outside cutoff");
}

Int cocycle_sign(const FKContext& ctx, const LatticeVector& a, const LatticeVector& b) {
  if (ctx.cfg.cocycle == FKCocycle::Plain) return fk_epsilon(*ctx.q, a, b);
  return fk_epsilon_star(*ctx.q, ctx.aff, a, b);
}

// bracket of two basis keys
FKElement bracket_keys(const FKContext& ctx, const FKKey& x, const FKKey& y) {
  FKElement out;
  if (x.imag && y.imag) return out;

  if (!x.imag && !y.imag) {
    LatticeVector g = vec_add(x.real, y.real);
    auto r = classify_root(*ctx.q, ctx.aff, g);
    if (!r) return out;
    Int sign = cocycle_sign(ctx, x.real, y.real);
    if (r->real) {
      if (r->level > ctx.cfg.cutoff)
        throw CutoffExceeded("CutoffExceeded: real root level " + std::to_string(r->level));
      out.add_term(FKKey::real_key(g), Rat(sign));
      return out;
    }
    Int m = delta_multiple_of(ctx.aff, g);
    internal_check(m >= 1, "imaginary bracket grade not a positive delta multiple");
    if (m > ctx.cfg.cutoff)
      throw CutoffExceeded("CutoffExceeded: imaginary degree " + std::to_string(m));
    return canonical_class(ctx, x.real, m) * Rat(sign);
  }

  // one imaginary, one real: normalize to [imag, real] and track the sign
  Int flip = 1;
  FKKey h = x, ev = y;
  if (!x.imag) {
    h = y;
    ev = x;
    flip = -1;
  }
  LatticeVector alpha_i(ctx.q->num_vertices(), 0);
  alpha_i[h.i] = 1;
  Int coef;
  if (ctx.cfg.pairing == FKPairing::Symmetrized) {
    LatticeVector md = vec_scale(h.m, ctx.aff.delta);
    coef = cocycle_sign(ctx, md, ev.real) * symmetrized_form(*ctx.q, alpha_i, ev.real);
  } else {
    coef = cocycle_sign(ctx, alpha_i, ev.real) * euler_form(*ctx.q, alpha_i, ev.real);
  }
  if (coef == 0) return out;
  LatticeVector g = vec_add(ev.real, vec_scale(h.m, ctx.aff.delta));
  auto r = classify_root(*ctx.q, ctx.aff, g);
  internal_check(r && r->real, "real root shifted by delta must stay real");
  if (r->level > ctx.cfg.cutoff)
    throw CutoffExceeded("CutoffExceeded: real root level " + std::to_string(r->level));
  out.add_term(FKKey::real_key(g), Rat(flip * coef));
  return out;
}

}  // namespace

FKElement fk_bracket(const FKContext& ctx, const FKElement& x, const FKElement& y) {
  for (const auto& [k, c] : x.terms) validate_key(ctx, k);
  for (const auto& [k, c] : y.terms) validate_key(ctx, k);
  FKElement out;
  for (const auto& [kx, cx] : x.terms)
    for (const auto& [ky, cy] : y.terms) {
      FKElement part = bracket_keys(ctx, kx, ky);
      // grading: every produced key sits at the sum of the input grades
      LatticeVector want = vec_add(fk_grade(ctx, kx), fk_grade(ctx, ky));
      for (const auto& [kp, cp] : part.terms)
        internal_check(fk_grade(ctx, kp) == want, "bracket term off its grade");
      out += part * (cx * cy);
    }
  return out;
}

namespace {

struct JacobiShard {
  Int checked = 0, skipped = 0;
  std::vector<JacobiViolation> violations;
  std::exception_ptr failure;
};

void jacobi_run(const FKContext& ctx, const std::vector<FKKey>& basis, int shard,
                int nshards, JacobiShard& out) {
  const size_t n = basis.size();
  Int idx = 0;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j)
      for (size_t k = j; k < n; ++k, ++idx) {
        if (idx % nshards != shard) continue;
        FKElement X, Y, Z;
        X.add_term(basis[i], Rat(1));
        Y.add_term(basis[j], Rat(1));
        Z.add_term(basis[k], Rat(1));
        try {
          FKElement acc = fk_bracket(ctx, X, fk_bracket(ctx, Y, Z));
          acc += fk_bracket(ctx, Y, fk_bracket(ctx, Z, X));
          acc += fk_bracket(ctx, Z, fk_bracket(ctx, X, Y));
          ++out.checked;
          if (!acc.is_zero())
            out.violations.push_back({basis[i], basis[j], basis[k], acc});
        } catch (const CutoffExceeded&) {
          ++out.skipped;
        }
      }
}

}  // namespace

JacobiReport verify_jacobi(const FKContext& ctx, int jobs) {
  if (jobs < 1) fail_validation("BadJobs: worker count must be positive");
  std::vector<FKKey> basis = fk_basis(ctx);
  std::vector<JacobiShard> shards(jobs);
  if (jobs == 1) {
    jacobi_run(ctx, basis, 0, 1, shards[0]);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w)
      pool.emplace_back([&ctx, &basis, w, jobs, &shards] {
        try {
          jacobi_run(ctx, basis, w, jobs, shards[w]);
        } catch (...) {
          shards[w].failure = std::current_exception();
        }
      });
    for (auto& t : pool) t.join();
    for (auto& s : shards)
      if (s.failure) std::rethrow_exception(s.failure);
  }
  JacobiReport rep;
  for (auto& s : shards) {
    rep.triples_checked += s.checked;
    rep.skipped += s.skipped;
    for (auto& v : s.violations) rep.violations.push_back(std::move(v));
  }
  std::sort(rep.violations.begin(), rep.violations.end(),
            [](const JacobiViolation& a, const JacobiViolation& b) {
              return std::tie(a.x, a.y, a.z) < std::tie(b.x, b.y, b.z);
            });
  return rep;
}

bool SerreReport::pass() const {
  for (const auto& it : items)
    if (!it.vanishes || (it.lower_tested && !it.lower_nonzero)) return false;
  return true;
}

SerreReport verify_serre(const FKContext& ctx) {
  SerreReport rep;
  const Quiver& q = *ctx.q;
  IMat cartan = cartan_matrix(q);
  int nv = q.num_vertices();
  for (int i = 0; i < nv; ++i)
    for (int j = 0; j < nv; ++j) {
      if (i == j) continue;
      SerreItem item;
      item.i = i;
      item.j = j;
      item.power = 1 - cartan[i][j];
      FKElement adi;
      LatticeVector ai(nv, 0), aj(nv, 0);
      ai[i] = 1;
      aj[j] = 1;
      adi.add_term(FKKey::real_key(ai), Rat(1));
      FKElement z;
      z.add_term(FKKey::real_key(aj), Rat(1));
      bool truncated = false;
      FKElement lower;
      for (Int k = 1; k <= item.power; ++k) {
        if (k == item.power) lower = z;
        try {
          z = fk_bracket(ctx, adi, z);
        } catch (const CutoffExceeded&) {
          truncated = true;
          break;
        }
      }
      if (truncated) {
        item.vanishes = false;
        item.lower_tested = false;
      } else {
        item.vanishes = z.is_zero();
        // lower power is certified nonzero only when its grade fits the cutoff
        LatticeVector lg = vec_add(aj, vec_scale(item.power - 1, ai));
        auto r = classify_root(q, ctx.aff, lg);
        item.lower_tested = r.has_value() && [&] {
          if (r->imaginary) return delta_multiple_of(ctx.aff, lg) <= ctx.cfg.cutoff;
          return r->level <= ctx.cfg.cutoff;
        }();
        item.lower_nonzero = !lower.is_zero();
      }
      rep.items.push_back(item);
    }
  return rep;
}

TwistReport twist_isomorphism_check(const Quiver& q, Int cutoff, const FKKey* flip,
                                    bool degenerate_xi) {
  FKConfig plain_cfg;
  plain_cfg.cocycle = FKCocycle::Plain;
  plain_cfg.cutoff = cutoff;
  FKContext plain = make_fk_context(q, plain_cfg);
  FKConfig tw_cfg = plain_cfg;
  if (!degenerate_xi) tw_cfg.cocycle = FKCocycle::Twisted;
  FKContext twisted = make_fk_context(q, tw_cfg);

  auto t_factor = [&](const FKKey& k) -> Rat {
    Int s = degenerate_xi ? 1 : fk_xi(q, plain.aff, fk_grade(plain, k));
    if (flip && k == *flip) s = -s;
    return Rat(s);
  };
  auto apply_t = [&](const FKElement& x) {
    FKElement out;
    for (const auto& [k, c] : x.terms) out.add_term(k, c * t_factor(k));
    return out;
  };

  TwistReport rep;
  std::vector<FKKey> basis = fk_basis(plain);
  for (const FKKey& x : basis)
    for (const FKKey& y : basis) {
      FKElement ex, ey;
      ex.add_term(x, Rat(1));
      ey.add_term(y, Rat(1));
      try {
        FKElement lhs = fk_bracket(twisted, apply_t(ex), apply_t(ey));
        FKElement rhs = apply_t(fk_bracket(plain, ex, ey));
        ++rep.pairs_checked;
        if (!(lhs == rhs)) rep.failures.emplace_back(x, y);
      } catch (const CutoffExceeded&) {
        ++rep.skipped;
      }
    }
  return rep;
}

Int graded_dimension(const Quiver& q, const AffineData& aff, const LatticeVector& alpha) {
  auto r = classify_root(q, aff, alpha);
  if (!r || !vec_nonneg(alpha) || vec_is_zero(alpha)) return 0;
  if (r->real) return 1;
  if (r->imaginary) return aff.n;
  return 0;
}

}  // namespace aql
