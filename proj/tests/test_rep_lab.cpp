#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "aql/replab.hpp"
#include "common.hpp"

using namespace aql;

namespace {

template <class F>
std::string error_kind(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return "<no error>";
}

FpMat mat1x1(Int v) {
  FpMat m(1, 1);
  m.at(0, 0) = v;
  return m;
}

// Kronecker rep at (1,1) with arrow scalars a, b.
FFRep scalar_pair(const Quiver& k, Int p, Int a, Int b) {
  return make_rep(k, p, {1, 1}, {mat1x1(a), mat1x1(b)});
}

}  // namespace

TEST_CASE("rep space indexing is a bijection") {
  Quiver k = kronecker();
  Budget budget;
  RepSpace space(k, 2, {1, 1}, budget);
  CHECK(space.total_entries == 2);
  CHECK(space.size == 4);
  for (Int i = 0; i < space.size; ++i) {
    FFRep x = space.decode(i);
    CHECK(space.encode(x) == i);
  }
  FFRep zero = space.decode(0);
  for (const auto& m : zero.mats)
    for (Int v : m.a) CHECK(v == 0);

  RepSpace big(k, 3, {2, 2}, budget);
  CHECK(big.total_entries == 8);
  CHECK(big.size == 6561);
  CHECK(big.encode(big.decode(6560)) == 6560);

  Budget tiny;
  tiny.limit = 10;
  CHECK_THROWS_AS(RepSpace(k, 5, {30, 30}, tiny), Error);
  try {
    RepSpace huge(k, 5, {30, 30}, tiny);
  } catch (const Error& e) {
    CHECK(e.code() == ErrCode::Budget);
  }
}

TEST_CASE("gl orders") {
  CHECK(gl_order(2, {1, 1}) == 1);
  CHECK(gl_order(2, {2, 0}) == 6);
  CHECK(gl_order(3, {2, 0}) == 48);
  CHECK(gl_order(3, {2, 2}) == 2304);
  CHECK(gl_order(5, {1, 0}) == 4);
}

TEST_CASE("orbit census on the kronecker quiver at delta") {
  Quiver k = kronecker();
  Budget budget;

  ClassTable t2 = iso_classes(k, {1, 1}, 2, budget);
  CHECK(t2.reps.size() == 4);
  Int total2 = 0;
  for (Int s : t2.orbit_sizes) {
    CHECK(s == 1);  // GL is trivial at this dimension over F_2
    total2 += s;
  }
  CHECK(total2 == t2.space.size);

  ClassTable t3 = iso_classes(k, {1, 1}, 3, budget);
  CHECK(t3.reps.size() == 5);
  std::multiset<Int> sizes(t3.orbit_sizes.begin(), t3.orbit_sizes.end());
  CHECK(sizes == std::multiset<Int>{1, 2, 2, 2, 2});
  Int total3 = 0;
  for (Int s : t3.orbit_sizes) {
    total3 += s;
    CHECK(gl_order(3, {1, 1}) % s == 0);  // orbit-stabilizer
  }
  CHECK(total3 == t3.space.size);

  // canonical representative is the minimum of its orbit, class_of covers space
  for (size_t c = 0; c < t3.reps.size(); ++c)
    CHECK(t3.class_of[t3.reps[c]] == static_cast<int>(c));
  for (Int i = 0; i < t3.space.size; ++i) {
    int c = t3.class_of[i];
    CHECK(t3.reps[c] <= i);
  }
}

TEST_CASE("hom and ext dimensions") {
  Quiver k = kronecker();
  FFRep s0 = simple_rep(k, 2, 0);
  FFRep s1 = simple_rep(k, 2, 1);

  CHECK(hom_dim(s0, s1) == 0);
  CHECK(hom_dim(s1, s0) == 0);
  CHECK(hom_dim(s0, s0) == 1);
  CHECK(ext_dim(s0, s1) == 2);
  CHECK(ext_dim(s1, s0) == 0);
  CHECK(ext_dim(s0, s0) == 0);

  std::vector<Intertwiner> basis;
  CHECK(hom_dim(s0, s0, &basis) == 1);
  REQUIRE(basis.size() == 1);
  CHECK(basis[0][0].at(0, 0) == 1);

  FFRep x = scalar_pair(k, 2, 1, 0);
  CHECK(hom_dim(x, x) == 1);
  CHECK(ext_dim(x, x) == 1);

  // hom - ext = <dim x, dim y> across the full class list at delta
  Budget budget;
  ClassTable t = iso_classes(k, {1, 1}, 3, budget);
  for (Int ri : t.reps)
    for (Int rj : t.reps) {
      FFRep a = t.space.decode(ri), b = t.space.decode(rj);
      CHECK(hom_dim(a, b) - ext_dim(a, b) == euler_form(k, {1, 1}, {1, 1}));
    }
}

TEST_CASE("indecomposability") {
  Quiver k = kronecker();
  Budget budget;

  CHECK(is_indecomposable(simple_rep(k, 2, 0), budget));
  CHECK(is_absolutely_indecomposable(simple_rep(k, 3, 1), budget));

  FFRep zero = zero_rep(k, 2, {1, 1});
  CHECK_FALSE(is_indecomposable(zero, budget));

  FFRep x = scalar_pair(k, 3, 1, 2);
  CHECK(is_indecomposable(x, budget));
  CHECK(is_absolutely_indecomposable(x, budget));

  // companion of x^2+x+1 next to the identity: endomorphisms form F_4,
  // indecomposable here but splits after extending scalars
  FpMat id2 = FpMat::identity(2);
  FpMat comp(2, 2);
  comp.at(0, 0) = 0;
  comp.at(0, 1) = 1;
  comp.at(1, 0) = 1;
  comp.at(1, 1) = 1;
  FFRep twisted = make_rep(k, 2, {2, 2}, {id2, comp});
  CHECK(is_indecomposable(twisted, budget));
  CHECK_FALSE(is_absolutely_indecomposable(twisted, budget));
}

TEST_CASE("counting polynomials at roots") {
  Quiver k = kronecker();
  Budget budget;

  KacPolynomial kd = kac_polynomial(k, {1, 1}, {2, 3}, budget);
  CHECK(kd.degree_bound == 1);
  CHECK(kd.coeffs == std::vector<Int>{1, 1});
  CHECK(kd.counts == std::vector<std::pair<Int, Int>>{{2, 3}, {3, 4}});

  // a held-out prime must land on the same polynomial
  KacPolynomial kd5 = kac_polynomial(k, {1, 1}, {2, 3, 5}, budget);
  CHECK(kd5.coeffs == kd.coeffs);

  KacPolynomial k2d = kac_polynomial(k, {2, 2}, {2, 3}, budget);
  CHECK(k2d.coeffs == std::vector<Int>{1, 1});

  for (LatticeVector real : {LatticeVector{2, 1}, LatticeVector{1, 2}, LatticeVector{3, 2}}) {
    KacPolynomial kr = kac_polynomial(k, real, {2}, budget);
    CHECK(kr.degree_bound == 0);
    CHECK(kr.coeffs == std::vector<Int>{1});
  }

  KacPolynomial knothing = kac_polynomial(k, {2, 0}, {2}, budget);
  CHECK(knothing.coeffs == std::vector<Int>{0});

  CHECK(error_kind([&] { kac_polynomial(k, {1, 1}, {2}, budget); }) ==
        "InsufficientPrimes");
  CHECK(error_kind([&] { kac_polynomial(k, {1, 1}, {4, 6}, budget); }) !=
        "<no error>");

  Quiver a = a2_cycle_free();
  KacPolynomial ad = kac_polynomial(a, {1, 1, 1}, {2, 3}, budget);
  CHECK(ad.coeffs == std::vector<Int>{2, 1});
}

TEST_CASE("exact interpolation") {
  auto quad = interpolate_rational({{2, 7}, {3, 13}, {5, 31}});
  CHECK(quad == std::vector<Rat>{Rat(1), Rat(1), Rat(1)});
  CHECK(eval_poly(quad, Rat(10)) == Rat(111));

  auto line = interpolate_rational({{2, 3}, {3, 4}});
  CHECK(line == std::vector<Rat>{Rat(1), Rat(1)});

  auto half = interpolate_rational({{0, 0}, {2, 1}});
  CHECK(half == std::vector<Rat>{Rat(0), Rat(1, 2)});
}

TEST_CASE("subrepresentations, quotients, hall numbers") {
  Quiver k = kronecker();
  Budget budget;

  FFRep x = scalar_pair(k, 2, 1, 0);  // indecomposable at delta
  auto at01 = enumerate_subreps(x, {0, 1}, budget);
  CHECK(at01.size() == 1);
  auto at10 = enumerate_subreps(x, {1, 0}, budget);
  CHECK(at10.empty());  // the source line is not arrow-stable here

  FFRep sub = sub_rep(x, at01[0]);
  FFRep s1 = simple_rep(k, 2, 1);
  FFRep s0 = simple_rep(k, 2, 0);
  CHECK(sub.dim == LatticeVector{0, 1});
  FFRep quot = quotient_rep(x, at01[0]);
  CHECK(quot.dim == LatticeVector{1, 0});

  ClassCache cache(k, 2, budget);
  CHECK(is_isomorphic(sub, s1, cache));
  CHECK(is_isomorphic(quot, s0, cache));

  FFRep zero = zero_rep(k, 2, {1, 1});
  CHECK(enumerate_subreps(zero, {1, 0}, budget).size() == 1);
  CHECK(enumerate_subreps(zero, {0, 1}, budget).size() == 1);
  CHECK(error_kind([&] { enumerate_subreps(zero, {2, 0}, budget); }) ==
        "BadSubdimension");

  CHECK(hall_number(s1, s0, x, cache, budget) == 1);
  CHECK(hall_number(s0, s1, x, cache, budget) == 0);
  CHECK(hall_number(s1, s0, zero, cache, budget) == 1);
  CHECK(hall_number(s0, s1, zero, cache, budget) == 1);
  CHECK(hall_number(s0, s0, zero, cache, budget) == 0);  // dimensions cannot add up

  // all p+1 lines of the plane at vertex 0 are subreps of the zero rep at (2,0)
  FFRep plane = zero_rep(k, 3, {2, 0});
  CHECK(enumerate_subreps(plane, {1, 0}, budget).size() == 4);
}

TEST_CASE("isomorphism via orbits") {
  Quiver k = kronecker();
  Budget budget;
  ClassCache cache(k, 3, budget);

  FFRep a = scalar_pair(k, 3, 1, 1);
  FFRep b = scalar_pair(k, 3, 2, 2);  // rescaled copy of the same class
  FFRep c = scalar_pair(k, 3, 1, 2);
  CHECK(is_isomorphic(a, b, cache));
  CHECK_FALSE(is_isomorphic(a, c, cache));
  CHECK_FALSE(is_isomorphic(a, zero_rep(k, 3, {1, 1}), cache));
}

TEST_CASE("integer class specs reduce modulo any prime") {
  Quiver k = kronecker();
  IntRepSpec spec;
  spec.dim = {1, 1};
  spec.matrices["a"] = {{1}};
  spec.matrices["b"] = {{-1}};

  FFRep x2 = reduce_spec(k, spec, 2);
  CHECK(x2.mats[1].at(0, 0) == 1);
  FFRep x5 = reduce_spec(k, spec, 5);
  CHECK(x5.mats[1].at(0, 0) == 4);

  IntRepSpec missing;
  missing.dim = {1, 1};
  missing.matrices["a"] = {{1}};
  CHECK(error_kind([&] { reduce_spec(k, missing, 2); }) == "MissingMatrix");

  IntRepSpec unknown = spec;
  unknown.matrices["zz"] = {{1}};
  CHECK(error_kind([&] { reduce_spec(k, unknown, 2); }) == "UnknownMatrix");

  IntRepSpec bad = spec;
  bad.matrices["a"] = {{1, 2}};
  CHECK(error_kind([&] { reduce_spec(k, bad, 2); }) == "ShapeMismatch");

  // entryless shapes may be written [] or omitted row lists
  IntRepSpec point;
  point.dim = {1, 0};
  point.matrices["a"] = {};
  point.matrices["b"] = {};
  FFRep s0 = reduce_spec(k, point, 3);
  CHECK(s0.mats[0].rows == 0);
  CHECK(s0.mats[0].cols == 1);
}

TEST_CASE("euler characteristic of a hall count") {
  Quiver k = kronecker();
  Budget budget;

  IntRepSpec s0;
  s0.dim = {1, 0};
  s0.matrices["a"] = {};
  s0.matrices["b"] = {};
  IntRepSpec two;
  two.dim = {2, 0};
  two.matrices["a"] = {};
  two.matrices["b"] = {};

  HallCount hc = hall_euler_characteristic(k, s0, s0, two, {2, 3}, budget);
  CHECK(hc.degree_bound == 1);
  CHECK(hc.counts == std::vector<std::pair<Int, Int>>{{2, 3}, {3, 4}});
  CHECK(hc.poly == std::vector<Rat>{Rat(1), Rat(1)});  // lines in the plane: q+1
  CHECK(hc.euler_characteristic == 2);

  CHECK(error_kind([&] {
          hall_euler_characteristic(k, s0, s0, two, {2}, budget);
        }) == "InsufficientPrimes");

  IntRepSpec wrong = two;
  wrong.dim = {3, 0};
  wrong.matrices["a"] = {};
  wrong.matrices["b"] = {};
  CHECK(error_kind([&] {
          hall_euler_characteristic(k, s0, s0, wrong, {2, 3}, budget);
        }) == "DimensionMismatch");
}

TEST_CASE("stability on the kronecker quiver") {
  Quiver k = kronecker();
  Budget budget;
  LatticeVector theta{1, -1};

  FFRep x = scalar_pair(k, 2, 1, 0);
  StabilityResult rs = stability_status(x, theta, budget);
  CHECK(rs.verdict == StabilityVerdict::Stable);
  CHECK(rs.max_pairing == -1);
  CHECK_FALSE(rs.witness_dim.has_value());

  FFRep zero = zero_rep(k, 2, {1, 1});
  StabilityResult ru = stability_status(zero, theta, budget);
  CHECK(ru.verdict == StabilityVerdict::Unstable);
  CHECK(ru.max_pairing == 1);
  REQUIRE(ru.witness_dim.has_value());
  CHECK(*ru.witness_dim == LatticeVector{1, 0});
  CHECK(ru.witness.has_value());

  StabilityResult rss = stability_status(x, {0, 0}, budget);
  CHECK(rss.verdict == StabilityVerdict::Semistable);

  CHECK(error_kind([&] { stability_status(x, {1, 0}, budget); }) ==
        "NonzeroTotalPairing");

  // simples have no proper nonzero subreps at all
  StabilityResult rsimple = stability_status(simple_rep(k, 2, 0), {0, 0}, budget);
  CHECK(rsimple.verdict == StabilityVerdict::Stable);
  CHECK(rsimple.max_pairing == 0);
}

TEST_CASE("standard stability weights") {
  Quiver k = kronecker();
  CHECK(standard_stability(k, WeightKind::Regular) == LatticeVector{1, -1});
  LatticeVector alpha{2, 1};
  CHECK(standard_stability(k, WeightKind::Canonical, &alpha) == LatticeVector{2, -4});
  CHECK(error_kind([&] { standard_stability(k, WeightKind::Canonical); }) ==
        "MissingAlpha");

  Quiver a = a2_cycle_free();
  CHECK(standard_stability(a, WeightKind::Regular) == LatticeVector{1, 0, -1});
}

TEST_CASE("generic weights") {
  Quiver k = kronecker();
  Budget budget;
  CHECK(is_generic(k, {1, -1}, {1, 1}, budget));
  CHECK_FALSE(is_generic(k, {1, -1}, {2, 2}, budget));  // delta sits inside
  CHECK_FALSE(is_generic(k, {1, 1}, {1, 1}, budget));   // nonzero total pairing
  CHECK_FALSE(is_generic(k, {0, 0}, {1, 1}, budget));
}
