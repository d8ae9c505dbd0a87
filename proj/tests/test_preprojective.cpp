#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "aql/preproj.hpp"
#include "common.hpp"

using namespace aql;

namespace {

FpMat mat1x1(Int v) {
  FpMat m(1, 1);
  m.at(0, 0) = v;
  return m;
}

// Double-quiver point on the kronecker quiver at (1,1) with scalars
// (a, b, a*, b*) in arrow order.
FFRep double_point(const DoubleQuiver& dq, Int p, Int a, Int b, Int as, Int bs) {
  return make_rep(dq.q, p, {1, 1}, {mat1x1(a), mat1x1(b), mat1x1(as), mat1x1(bs)});
}

Int trace_sum(const Fp& f, const MomentValue& mu) {
  Int t = 0;
  for (const auto& m : mu)
    for (int i = 0; i < m.rows; ++i) t = f.add(t, m.at(i, i));
  return t;
}

bool all_zero(const MomentValue& mu) {
  for (const auto& m : mu)
    for (Int v : m.a)
      if (v != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("moment map values") {
  Quiver k = kronecker();
  DoubleQuiver dq = double_quiver(k);

  // a* a + b* b - (a a* + b b*) componentwise: scalars cancel in each slot
  FFRep x = double_point(dq, 5, 1, 1, 1, 4);
  MomentValue mu = moment_map(dq, x);
  REQUIRE(mu.size() == 2);
  CHECK(mu[0].at(0, 0) == 0);
  CHECK(mu[1].at(0, 0) == 0);

  FFRep y = double_point(dq, 5, 1, 0, 1, 0);
  MomentValue muy = moment_map(dq, y);
  CHECK(muy[0].at(0, 0) == 1);
  CHECK(muy[1].at(0, 0) == 4);

  CHECK(all_zero(moment_map(dq, zero_rep(dq.q, 3, {2, 2}))));
}

TEST_CASE("moment traces vanish and conjugation is equivariant") {
  Quiver k = kronecker();
  DoubleQuiver dq = double_quiver(k);
  Fp f(5);
  std::mt19937 rng(2024);
  std::uniform_int_distribution<Int> coef(0, 4);

  for (int trial = 0; trial < 25; ++trial) {
    std::vector<FpMat> mats;
    for (const auto& arr : dq.q.arrows) {
      (void)arr;
      FpMat m(2, 2);
      for (Int& v : m.a) v = coef(rng);
      mats.push_back(m);
    }
    FFRep x = make_rep(dq.q, 5, {2, 2}, std::move(mats));
    MomentValue mu = moment_map(dq, x);
    CHECK(trace_sum(f, mu) == 0);

    // random invertible scalars per vertex act by conjugation
    FpMat g0(2, 2), g1(2, 2);
    do {
      for (Int& v : g0.a) v = coef(rng);
    } while (fp_rank(f, g0) != 2);
    do {
      for (Int& v : g1.a) v = coef(rng);
    } while (fp_rank(f, g1) != 2);
    std::vector<FpMat> g{g0, g1};

    // build g.x on the double quiver
    FFRep gx = x;
    for (size_t ai = 0; ai < dq.q.arrows.size(); ++ai) {
      const auto& arr = dq.q.arrows[ai];
      FpMat gi = g[arr.dst];
      // inverse via kernel-free gaussian inverse: solve g * z = I
      FpMat aug = g[arr.src];
      // compute inverse by rref on [g | I]
      FpMat wide(2, 4);
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
          wide.at(r, c) = aug.at(r, c);
          wide.at(r, c + 2) = (r == c) ? 1 : 0;
        }
      fp_rref(f, wide);
      FpMat inv(2, 2);
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) inv.at(r, c) = wide.at(r, c + 2);
      gx.mats[ai] = fp_mul(f, fp_mul(f, gi, x.mats[ai]), inv);
    }

    MomentValue mug = moment_map(dq, gx);
    for (int i = 0; i < 2; ++i) {
      FpMat wide(2, 4);
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
          wide.at(r, c) = g[i].at(r, c);
          wide.at(r, c + 2) = (r == c) ? 1 : 0;
        }
      fp_rref(f, wide);
      FpMat inv(2, 2);
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) inv.at(r, c) = wide.at(r, c + 2);
      CHECK(fp_mul(f, fp_mul(f, g[i], mu[i]), inv) == mug[i]);
    }
  }
}

TEST_CASE("deformed relation membership") {
  Quiver k = kronecker();
  DoubleQuiver dq = double_quiver(k);

  FFRep x = double_point(dq, 5, 1, 0, 1, 0);
  CHECK(is_pi_rep(dq, x, {1, -1}));
  CHECK_FALSE(is_pi_rep(dq, x, {0, 0}));
  CHECK_FALSE(is_pi_rep(dq, x, {1, 1}));

  // lambda with nonzero dim pairing can never host a rep: trace obstruction
  FFRep zero = zero_rep(dq.q, 5, {1, 1});
  CHECK(is_pi_rep(dq, zero, {0, 0}));
  CHECK_FALSE(is_pi_rep(dq, zero, {1, 0}));
}

TEST_CASE("nilpotency of doubled points") {
  Quiver k = kronecker();
  DoubleQuiver dq = double_quiver(k);

  CHECK(is_nilpotent(dq, double_point(dq, 5, 1, 0, 0, 0)));
  CHECK(is_nilpotent(dq, zero_rep(dq.q, 5, {1, 1})));
  CHECK(is_nilpotent(dq, zero_rep(dq.q, 3, {2, 2})));
  // a and a* both nonzero: the composite loop has full rank forever
  CHECK_FALSE(is_nilpotent(dq, double_point(dq, 5, 1, 0, 1, 0)));
  CHECK_FALSE(is_nilpotent(dq, double_point(dq, 5, 0, 1, 0, 3)));
}

TEST_CASE("forgetting the starred part") {
  Quiver k = kronecker();
  DoubleQuiver dq = double_quiver(k);
  FFRep x = double_point(dq, 5, 2, 3, 1, 4);
  FFRep fwd = rho(dq, x, k);
  CHECK(fwd.dim == x.dim);
  REQUIRE(fwd.mats.size() == 2);
  CHECK(fwd.mats[0].at(0, 0) == 2);
  CHECK(fwd.mats[1].at(0, 0) == 3);

  FFRep back = assemble_double(dq, fwd, {mat1x1(1), mat1x1(4)});
  CHECK(back.mats == x.mats);
}

TEST_CASE("lift space dimensions obey the fiber law") {
  Quiver k = kronecker();

  FFRep indec = make_rep(k, 3, {1, 1}, {mat1x1(1), mat1x1(0)});
  auto basis = lift_space(indec);
  CHECK(basis.size() == 1);  // hom(x,x) - q(dim) = 1 - 0

  FFRep s0 = simple_rep(k, 3, 0);
  CHECK(lift_space(s0).empty());  // 1 - 1

  FFRep zero = zero_rep(k, 3, {1, 1});
  CHECK(lift_space(zero).size() == 2);  // 2 - 0

  // every class at delta and 2*delta, both small fields
  Budget budget;
  for (Int p : {2LL, 3LL})
    for (LatticeVector d : {LatticeVector{1, 1}, LatticeVector{2, 2}}) {
      ClassTable t = iso_classes(k, d, p, budget);
      for (Int r : t.reps) {
        FFRep x = t.space.decode(r);
        Int lifts = static_cast<Int>(lift_space(x).size());
        CHECK(lifts == hom_dim(x, x) - tits_form(k, d));
      }
    }
}

TEST_CASE("nilpotent lift counts") {
  Quiver k = kronecker();
  Budget budget;

  FFRep indec = make_rep(k, 3, {1, 1}, {mat1x1(1), mat1x1(0)});
  NilpotentLifts nl = nilpotent_lifts(indec, budget);
  CHECK(nl.space_dim == 1);
  CHECK(nl.total == 3);
  CHECK(nl.count == 1);
  REQUIRE(nl.lifts.size() == 1);
  for (const auto& m : nl.lifts[0])
    for (Int v : m.a) CHECK(v == 0);

  NilpotentLifts nz = nilpotent_lifts(zero_rep(k, 3, {1, 1}), budget);
  CHECK(nz.space_dim == 2);
  CHECK(nz.total == 9);
  CHECK(nz.count == 9);  // forward part zero: every starred part is nilpotent

  NilpotentLifts ns = nilpotent_lifts(simple_rep(k, 5, 0), budget);
  CHECK(ns.space_dim == 0);
  CHECK(ns.total == 1);
  CHECK(ns.count == 1);

  Budget tiny;
  tiny.limit = 1;
  CHECK_THROWS_AS(nilpotent_lifts(zero_rep(k, 3, {2, 2}), tiny), Error);
}

TEST_CASE("stable forward points stay stable on the double") {
  Quiver k = kronecker();
  DoubleQuiver dq = double_quiver(k);
  Budget budget;
  LatticeVector theta{1, -1};

  FFRep fwd = make_rep(k, 2, {1, 1}, {mat1x1(1), mat1x1(0)});
  CHECK(stability_status(fwd, theta, budget).verdict == StabilityVerdict::Stable);

  FFRep dbl = assemble_double(dq, fwd, {mat1x1(0), mat1x1(0)});
  CHECK(stability_status(dbl, theta, budget).verdict == StabilityVerdict::Stable);
}
