#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aql/fk.hpp"
#include "common.hpp"

using namespace aql;

namespace {

FKContext ctx_for(const Quiver& q, Int cutoff, FKPairing pairing = FKPairing::Symmetrized) {
  FKConfig cfg;
  cfg.cutoff = cutoff;
  cfg.pairing = pairing;
  return make_fk_context(q, cfg);
}

FKElement single(const FKKey& k, Rat c = Rat(1)) {
  FKElement e;
  e.add_term(k, c);
  return e;
}

}  // namespace

TEST_CASE("cocycle values on the kronecker quiver") {
  Quiver k = kronecker();
  AffineData aff = classify_affine(k);

  // epsilon = (-1)^euler
  CHECK(fk_epsilon(k, {1, 0}, {0, 1}) == 1);   // e = -2
  CHECK(fk_epsilon(k, {0, 1}, {1, 0}) == 1);   // e = 0
  CHECK(fk_epsilon(k, {1, 0}, {1, 0}) == -1);  // e = 1
  CHECK(fk_epsilon(k, {1, 1}, {1, 0}) == -1);  // e = -1

  // bimultiplicative in each slot
  LatticeVector a{2, 1}, b{1, 3}, c{1, 1};
  CHECK(fk_epsilon(k, vec_add(a, b), c) == fk_epsilon(k, a, c) * fk_epsilon(k, b, c));
  CHECK(fk_epsilon(k, a, vec_add(b, c)) == fk_epsilon(k, a, b) * fk_epsilon(k, a, c));

  CHECK(fk_xi(k, aff, {1, 0}) == 1);
  CHECK(fk_xi(k, aff, {-1, 0}) == 1);
  CHECK(fk_xi(k, aff, {1, 1}) == 1);    // delta
  CHECK(fk_xi(k, aff, {2, 2}) == -1);   // 2*delta
  CHECK(fk_xi(k, aff, {3, 3}) == 1);
  CHECK(fk_xi(k, aff, {2, 0}) == 1);    // off the root system

  // epsilon* differs from epsilon exactly by the xi coboundary
  for (LatticeVector x : {LatticeVector{1, 1}, LatticeVector{2, 1}, LatticeVector{1, 0}})
    for (LatticeVector y : {LatticeVector{1, 1}, LatticeVector{0, 1}}) {
      Int cob = fk_xi(k, aff, x) * fk_xi(k, aff, y) * fk_xi(k, aff, vec_add(x, y));
      CHECK(fk_epsilon_star(k, aff, x, y) == fk_epsilon(k, x, y) * cob);
    }
}

TEST_CASE("basis and grading") {
  Quiver k = kronecker();
  FKContext ctx = ctx_for(k, 2);
  auto basis = fk_basis(ctx);
  REQUIRE(basis.size() == 8);

  // reals sorted first, then imaginary keys by (m, i)
  std::vector<FKKey> want{
      FKKey::real_key({0, 1}), FKKey::real_key({1, 0}), FKKey::real_key({1, 2}),
      FKKey::real_key({2, 1}), FKKey::real_key({2, 3}), FKKey::real_key({3, 2}),
      FKKey::imag_key(1, 1),   FKKey::imag_key(2, 1)};
  std::sort(want.begin(), want.end());
  std::vector<FKKey> got = basis;
  std::sort(got.begin(), got.end());
  CHECK(got == want);

  CHECK(fk_grade(ctx, FKKey::real_key({2, 1})) == LatticeVector{2, 1});
  CHECK(fk_grade(ctx, FKKey::imag_key(2, 1)) == LatticeVector{2, 2});

  // imaginary copies avoid the extending vertex (vertex 0 on this quiver)
  for (const auto& key : basis)
    if (key.imag) CHECK(key.i == 1);
}

TEST_CASE("canonical class decomposition") {
  Quiver k = kronecker();
  FKContext ctx = ctx_for(k, 2);

  // alpha_0 has representative -alpha_1 modulo delta
  FKElement a0 = canonical_class(ctx, {1, 0}, 1);
  CHECK(a0 == single(FKKey::imag_key(1, 1), Rat(-1)));

  FKElement a1 = canonical_class(ctx, {0, 1}, 1);
  CHECK(a1 == single(FKKey::imag_key(1, 1), Rat(1)));

  // delta itself has zero canonical part
  CHECK(canonical_class(ctx, {1, 1}, 1).is_zero());
}

TEST_CASE("frozen brackets on the kronecker quiver") {
  Quiver k = kronecker();
  FKContext ctx = ctx_for(k, 2);

  FKElement e10 = single(FKKey::real_key({1, 0}));
  FKElement e01 = single(FKKey::real_key({0, 1}));
  FKElement h1 = single(FKKey::imag_key(1, 1));

  // real + real = imaginary: sum (1,1) = delta
  FKElement b = fk_bracket(ctx, e10, e01);
  CHECK(b == single(FKKey::imag_key(1, 1), Rat(-1)));

  // antisymmetry
  FKElement br = fk_bracket(ctx, e01, e10);
  CHECK(br == single(FKKey::imag_key(1, 1), Rat(1)));

  // imaginary acting on a real root moves it up one level
  CHECK(fk_bracket(ctx, h1, e10) == single(FKKey::real_key({2, 1}), Rat(2)));
  CHECK(fk_bracket(ctx, h1, e01) == single(FKKey::real_key({1, 2}), Rat(-2)));

  // real + real off the root system vanishes: (1,0) + (2,1) = (3,1)
  CHECK(fk_bracket(ctx, e10, single(FKKey::real_key({2, 1}))).is_zero());

  // imaginary keys commute on this quiver (single imaginary slot)
  CHECK(fk_bracket(ctx, h1, single(FKKey::imag_key(2, 1))).is_zero());

  // leaving the cutoff throws
  CHECK_THROWS_AS(fk_bracket(ctx, single(FKKey::real_key({2, 1})), single(FKKey::real_key({1, 2}))),
                  CutoffExceeded);

  // bilinearity over rational coefficients
  FKElement x = single(FKKey::real_key({1, 0}), Rat(1, 2));
  FKElement y = single(FKKey::real_key({0, 1}), Rat(3));
  CHECK(fk_bracket(ctx, x, y) == single(FKKey::imag_key(1, 1), Rat(-3, 2)));
}

TEST_CASE("jacobi verification") {
  Quiver k = kronecker();

  FKContext sym = ctx_for(k, 2, FKPairing::Symmetrized);
  JacobiReport rs = verify_jacobi(sym);
  CHECK(rs.pass());
  CHECK(rs.triples_checked == 41);
  CHECK(rs.triples_checked + rs.skipped == 120);  // multisets from 8 keys: C(10,3)

  FKContext lit = ctx_for(k, 2, FKPairing::Literal);
  JacobiReport rl = verify_jacobi(lit);
  CHECK_FALSE(rl.pass());
  CHECK(rl.violations.size() == 3);
  for (const auto& v : rl.violations) CHECK_FALSE(v.residual.is_zero());

  Quiver a = a2_cycle_free();
  FKContext syma = ctx_for(a, 2, FKPairing::Symmetrized);
  CHECK(verify_jacobi(syma).pass());
  FKContext lita = ctx_for(a, 2, FKPairing::Literal);
  CHECK_FALSE(verify_jacobi(lita).pass());
}

TEST_CASE("jacobi verification is jobs independent") {
  Quiver a = a2_cycle_free();
  FKContext sym = ctx_for(a, 2);
  JacobiReport serial = verify_jacobi(sym, 1);
  JacobiReport parallel = verify_jacobi(sym, 4);
  CHECK(serial.triples_checked == parallel.triples_checked);
  CHECK(serial.skipped == parallel.skipped);
  CHECK(serial.violations.size() == parallel.violations.size());
}

TEST_CASE("serre relations") {
  Quiver kq = kronecker();
  FKContext k = ctx_for(kq, 2);
  SerreReport rk = verify_serre(k);
  CHECK(rk.pass());
  REQUIRE(rk.items.size() == 2);
  for (const auto& it : rk.items) {
    CHECK(it.power == 3);  // 1 - c_ij = 1 - (-2)
    CHECK(it.vanishes);
    CHECK(it.lower_tested);
    CHECK(it.lower_nonzero);
  }

  Quiver aq = a2_cycle_free();
  FKContext a = ctx_for(aq, 2);
  SerreReport ra = verify_serre(a);
  CHECK(ra.pass());
  REQUIRE(ra.items.size() == 6);
  for (const auto& it : ra.items) CHECK(it.power == 2);
}

TEST_CASE("twist isomorphism") {
  Quiver k = kronecker();
  TwistReport t = twist_isomorphism_check(k, 2);
  CHECK(t.pass());
  CHECK(t.pairs_checked == 40);
  CHECK(t.pairs_checked + t.skipped == 64);

  // negative control: flipping the sign on one key must break intertwining
  FKKey bad = FKKey::real_key({1, 0});
  TwistReport broken = twist_isomorphism_check(k, 2, &bad);
  CHECK_FALSE(broken.pass());

  // degenerate xi = 1 twists by nothing, trivially intertwines
  TwistReport degen = twist_isomorphism_check(k, 2, nullptr, true);
  CHECK(degen.pass());

  CHECK(twist_isomorphism_check(a2_cycle_free(), 2).pass());
}

TEST_CASE("graded dimensions") {
  Quiver k = kronecker();
  AffineData ak = classify_affine(k);
  CHECK(graded_dimension(k, ak, {1, 0}) == 1);
  CHECK(graded_dimension(k, ak, {2, 1}) == 1);
  CHECK(graded_dimension(k, ak, {1, 1}) == 1);
  CHECK(graded_dimension(k, ak, {2, 2}) == 1);
  CHECK(graded_dimension(k, ak, {2, 0}) == 0);
  CHECK(graded_dimension(k, ak, {3, 1}) == 0);

  Quiver a = a2_cycle_free();
  AffineData aa = classify_affine(a);
  CHECK(graded_dimension(a, aa, {1, 1, 1}) == 2);
  CHECK(graded_dimension(a, aa, {2, 2, 2}) == 2);
  CHECK(graded_dimension(a, aa, {0, 1, 0}) == 1);

  Quiver d = d4_star();
  AffineData ad = classify_affine(d);
  CHECK(graded_dimension(d, ad, {1, 1, 1, 1, 2}) == 4);
}
