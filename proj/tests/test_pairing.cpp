#include <random>
#include <set>

#include "doctest.h"
#include "pifin/error.hpp"
#include "pifin/pairing.hpp"

using namespace pifin;

namespace {

Cyclotomic q(long a, long b = 1) { return Cyclotomic::rational(a, b); }

mpz_class ipow(long b, long e) {
  mpz_class r = 1;
  for (long i = 0; i < e; ++i) r *= b;
  return r;
}

// Bareiss elimination over Z, independent of ExactMatrix.
mpz_class integer_det(std::vector<std::vector<mpz_class>> a) {
  const std::size_t n = a.size();
  mpz_class sign = 1, prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

ExactMatrix one(long v = 1) { return ExactMatrix::scalar(q(v)); }

// F(n) = k^n with pushforward along functions.
CatFunctor free_vector_functor(const FinSetCategory& c) {
  CatFunctor f;
  for (std::size_t n = 0; n < c.object_count(); ++n) f.dims.push_back(n);
  f.map = [&c](const CatMorphism& m) {
    ExactMatrix out(m.tgt, m.src);
    auto v = c.function(m.src, m.tgt, m.index);
    for (std::size_t i = 0; i < v.size(); ++i) out(v[i], i) = 1;
    return out;
  };
  return f;
}

// F(n) = k^(n x n) with pushforward on pairs.
CatFunctor pair_functor(const FinSetCategory& c) {
  CatFunctor f;
  for (std::size_t n = 0; n < c.object_count(); ++n) f.dims.push_back(n * n);
  f.map = [&c](const CatMorphism& m) {
    ExactMatrix out(m.tgt * m.tgt, m.src * m.src);
    auto v = c.function(m.src, m.tgt, m.index);
    for (std::size_t i = 0; i < m.src; ++i)
      for (std::size_t j = 0; j < m.src; ++j) out(v[i] * m.tgt + v[j], i * m.src + j) = 1;
    return out;
  };
  return f;
}

std::vector<std::size_t> all_objects(const WeightedCategory& c) {
  std::vector<std::size_t> v(c.object_count());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
  return v;
}

std::vector<NamedGroup> corpus(std::initializer_list<const char*> names) {
  std::vector<NamedGroup> out;
  for (const auto& ng : small_groups(12))
    for (auto n : names)
      if (ng.name == n) out.push_back(ng);
  return out;
}

bool surjective_hom(const WeightedCategory& c, std::size_t m) {
  std::set<Elem> im(c.group_hom(m).begin(), c.group_hom(m).end());
  return im.size() == c.group(c.morphism(m).tgt).order();
}

bool injective_hom(const WeightedCategory& c, std::size_t m) {
  std::set<Elem> im(c.group_hom(m).begin(), c.group_hom(m).end());
  return im.size() == c.group(c.morphism(m).src).order();
}

}  // namespace

TEST_CASE("FinSet pairing is n^m") {
  auto fs = std::make_shared<const FinSetCategory>(6);
  auto c = WeightedCategory::from_category(fs);
  auto f = VecFunctor::constant(c);
  std::vector<DualVectorAt> rows;
  std::vector<VectorAt> cols;
  for (std::size_t n = 0; n <= 6; ++n) {
    rows.push_back({n, one()});
    cols.push_back({n, one()});
  }
  CHECK(linear_pairing(c, f, 3, one(), 2, one()) == q(9));
  auto g = gram_matrix(c, f, rows, cols);
  std::vector<std::vector<mpz_class>> oracle(7, std::vector<mpz_class>(7));
  for (long n = 0; n <= 6; ++n)
    for (long m = 0; m <= 6; ++m) {
      oracle[n][m] = ipow(n, m);
      CHECK(g.matrix(n, m) == Cyclotomic(Rational(oracle[n][m])));
    }
  CHECK(g.rank == 7);
  REQUIRE(g.det.has_value());
  CHECK(*g.det == Cyclotomic(Rational(integer_det(oracle))));
  CHECK(g.full_row_rank());
  CHECK(g.full_col_rank());
}

namespace {

FinGroupoid pt_bz2_bz3() {
  std::vector<GroupoidComponent> comps;
  comps.push_back({make_group(FinGroup()), {0}});
  comps.push_back({make_group(FinGroup::cyclic(2)), {1, 2}});
  comps.push_back({make_group(FinGroup::cyclic(3)), {3}});
  return FinGroupoid(std::move(comps));
}

}  // namespace

TEST_CASE("linear pairing on groupoids and signs") {
  // entries #(X, x)^{-1} (1/|pi_1|) sum phi(L(gamma) v) = |pi_1| for the trivial system
  auto x = pt_bz2_bz3();
  auto c = WeightedCategory::from_groupoid(x);
  auto f = VecFunctor::constant(c);
  validate_functor(c, f);
  auto rows = dual_coinvariant_support(c, f, all_objects(c));
  auto cols = coinvariant_support(c, f, all_objects(c));
  auto g = gram_matrix(c, f, rows, cols);
  REQUIRE(g.matrix.rows() == 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (i != j) CHECK(g.matrix(i, j).is_zero());
  for (std::size_t i = 0; i < 3; ++i) {
    Rational card = x.cardinality_at(rows[i].object);
    CHECK(g.matrix(i, i) == Cyclotomic(1 / card));
  }
  CHECK(g.matrix(1, 1) == q(2));

  // group types: the core of BG has cardinality |Aut G| / |G|
  auto core = WeightedCategory::group_types(corpus({"1", "Z2", "Z3", "S3"})).core();
  auto fc = VecFunctor::constant(core);
  auto gc = gram_matrix(core, fc, dual_coinvariant_support(core, fc, all_objects(core)),
                        coinvariant_support(core, fc, all_objects(core)));
  CHECK(gc.matrix == direct_sum({one(), ExactMatrix::scalar(q(1, 2)), ExactMatrix::scalar(q(2, 3)), one()}));

  // BZ2 with the sign representation
  auto z2 = FinGroup::cyclic(2);
  auto bz2 = WeightedCategory::from_category(std::make_shared<const ExplicitCategory>(ExplicitCategory::from_group(z2)));
  VecFunctor sign;
  sign.dims = {1};
  for (std::size_t m = 0; m < bz2.morphism_count(); ++m)
    sign.maps.push_back(one(static_cast<long>(m) == bz2.identity(0) ? 1 : -1));
  validate_functor(bz2, sign);
  CHECK(linear_pairing(bz2, sign, 0, one(), 0, one()).is_zero());
  CHECK(coinvariant_support(bz2, sign, {0}).empty());
  CHECK(dual_coinvariant_support(bz2, sign, {0}).empty());

  CHECK_THROWS_AS(linear_pairing(bz2, sign, 0, ExactMatrix(1, 2), 0, one()), DimensionMismatch);
  CHECK_THROWS_AS(linear_pairing(bz2, sign, 0, one(), 0, ExactMatrix(2, 1)), DimensionMismatch);
  VecFunctor bad = sign;
  bad.maps[0] = ExactMatrix(2, 1);
  CHECK_THROWS_AS(validate_functor(bz2, bad), DimensionMismatch);
}

TEST_CASE("pairing depends only on coinvariant classes") {
  auto fs = std::make_shared<const FinSetCategory>(3);
  auto c = WeightedCategory::from_category(fs);
  auto f = VecFunctor::from_cat_functor(c, pair_functor(*fs));
  validate_functor(c, f);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> coef(-3, 3);
  auto random_vec = [&](std::size_t r, std::size_t cc) {
    ExactMatrix m(r, cc);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < cc; ++j) m(i, j) = q(coef(rng));
    return m;
  };
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t d = 1 + rng() % 3, s = 1 + rng() % 3;
    auto phi = random_vec(1, f.dims[d]);
    auto v = random_vec(f.dims[s], 1);
    auto base = linear_pairing(c, f, d, phi, s, v);
    auto autos_s = c.automorphisms(s);
    auto autos_d = c.automorphisms(d);
    auto g = autos_s[rng() % autos_s.size()];
    auto h = autos_d[rng() % autos_d.size()];
    CHECK(linear_pairing(c, f, d, phi, s, f.maps[g] * v) == base);
    CHECK(linear_pairing(c, f, d, phi * f.maps[h], s, v) == base);
  }
}

TEST_CASE("Pontryagin pairing examples") {
  auto pt = WeightedCategory::from_category(
      std::make_shared<const ExplicitCategory>(ExplicitCategory::from_group(FinGroup())));
  FgAbelian z2({2});
  auto om = AbFunctor::constant(pt, z2);
  validate_ab_functor(pt, om);
  auto chars = characters(z2);
  auto elems = z2.elements();
  std::vector<CharacterAt> rows;
  std::vector<ElementAt> cols;
  for (auto& chi : chars) rows.push_back({0, chi});
  for (auto& x : elems) cols.push_back({0, x});
  auto g = gram_matrix(pt, om, rows, cols);
  CHECK(g.matrix == ExactMatrix::from_rows({{q(1), q(1)}, {q(1), q(-1)}}));
  CHECK(g.rank == 2);

  // BZ2 acting on Z/4 by negation
  auto bz2 = WeightedCategory::from_category(
      std::make_shared<const ExplicitCategory>(ExplicitCategory::from_group(FinGroup::cyclic(2))));
  FgAbelian z4({4});
  AbFunctor neg;
  neg.values = {z4};
  for (std::size_t m = 0; m < bz2.morphism_count(); ++m)
    neg.maps.push_back({{Integer(static_cast<long>(m) == bz2.identity(0) ? 1 : -1)}});
  validate_ab_functor(bz2, neg);
  for (const auto& chi : characters(z4)) {
    long k = chi.exps[0];
    for (long x = 0; x < 4; ++x) {
      // oracle: chi(x) + chi(-x) with chi(x) = i^(k x)
      Cyclotomic expect = Cyclotomic::zeta(4, k * x) + Cyclotomic::zeta(4, -k * x);
      auto val = pontryagin_pairing(bz2, neg, 0, chi, 0, {x});
      CHECK(val == expect);
      CHECK(pontryagin_pairing(bz2, neg, 0, chi, 0, {(4 - x) % 4}) == val);
    }
  }
  Character phi1 = characters(z4)[1];
  CHECK(pontryagin_pairing(bz2, neg, 0, phi1, 0, {1}).is_zero());
  auto cs = character_orbit_support(bz2, neg, {0});
  auto es = element_orbit_support(bz2, neg, {0});
  CHECK(cs.size() == 3);
  CHECK(es.size() == 3);
  CHECK(gram_matrix(bz2, neg, cs, es).rank == 3);

  // halving all weights halves every value
  auto half = bz2.scaled(Rational(1, 2));
  for (const auto& chi : characters(z4))
    for (long x = 0; x < 4; ++x)
      CHECK(pontryagin_pairing(half, neg, 0, chi, 0, {x}) * q(2) == pontryagin_pairing(bz2, neg, 0, chi, 0, {x}));

  Character bad = phi1;
  bad.orders = {0};
  CHECK_THROWS_AS(pontryagin_pairing(bz2, neg, 0, bad, 0, {1}), ValidationError);
  CHECK_THROWS_AS(pontryagin_pairing(bz2, neg, 0, chars[1], 0, {1}), DimensionMismatch);
  CHECK_THROWS_AS(pontryagin_pairing(bz2, neg, 0, phi1, 0, {1, 2}), DimensionMismatch);
  AbFunctor broken = neg;
  broken.values = {FgAbelian({3})};
  broken.maps[0] = {{Integer(2)}};
  CHECK_THROWS_AS(validate_ab_functor(bz2, broken), ValidationError);
}

TEST_CASE("Gram matrices") {
  auto gx = WeightedCategory::from_groupoid(pt_bz2_bz3());
  auto om = AbFunctor::trivial(gx);
  auto g = gram_matrix(gx, om, character_orbit_support(gx, om, all_objects(gx)),
                       element_orbit_support(gx, om, all_objects(gx)));
  CHECK(g.matrix == direct_sum({one(), one(2), one(3)}));
  CHECK(g.rank == 3);

  auto pt = WeightedCategory::from_category(
      std::make_shared<const ExplicitCategory>(ExplicitCategory::from_group(FinGroup())));
  FgAbelian z6({6});
  auto om6 = AbFunctor::constant(pt, z6);
  auto g6 = gram_matrix(pt, om6, character_orbit_support(pt, om6, {0}), element_orbit_support(pt, om6, {0}));
  ExactMatrix oracle(6, 6);
  for (long k = 0; k < 6; ++k)
    for (long x = 0; x < 6; ++x) oracle(k, x) = Cyclotomic::zeta(6, k * x);
  CHECK(oracle.rank() == 6);
  CHECK(g6.rank == 6);
  CHECK(g6.matrix.rank() == oracle.rank());
}

TEST_CASE("non-degeneracy on group types") {
  auto c = WeightedCategory::group_types(corpus({"1", "Z2", "Z3", "Z4", "S3"}));
  for (auto om : {AbFunctor::trivial(c), AbFunctor::abelianization(c), AbFunctor::constant(c, FgAbelian({2}))}) {
    validate_ab_functor(c, om);
    auto support = factorizable_closure(c, image_group_middle(c), all_objects(c));
    auto rows = character_orbit_support(c, om, support);
    auto cols = element_orbit_support(c, om, support);
    auto g = gram_matrix(c, om, rows, cols);
    CHECK(rows.size() == cols.size());
    CHECK(g.full_row_rank());
    CHECK(g.full_col_rank());

    // the same numbers through k[Omega(-)] and the character linearization
    auto kf = group_ring_functor(c, om);
    validate_functor(c, kf);
    for (const auto& r : rows)
      for (const auto& col : cols) {
        auto elems = om.values[r.object].elements();
        ExactMatrix phi(1, elems.size());
        for (std::size_t i = 0; i < elems.size(); ++i) phi(0, i) = r.chi.value(elems[i]);
        ExactMatrix v(kf.dims[col.object], 1);
        v(om.values[col.object].index_of(col.x), 0) = 1;
        CHECK(linear_pairing(c, kf, r.object, phi, col.object, v) ==
              pontryagin_pairing(c, om, r.object, r.chi, col.object, col.x));
      }
  }
}

TEST_CASE("factorizable closure") {
  auto fs = std::make_shared<const FinSetCategory>(5);
  auto c = WeightedCategory::from_category(fs);
  auto mid = image_size_middle(c, *fs);
  auto closed = factorizable_closure(c, mid, {0, 3});
  // oracle: image sizes of functions between members, iterated
  std::set<std::size_t> s{0, 3};
  for (bool grew = true; grew;) {
    grew = false;
    for (auto a : std::set<std::size_t>(s))
      for (auto b : std::set<std::size_t>(s)) {
        if (b == 0) continue;
        std::size_t total = 1;
        for (std::size_t i = 0; i < a; ++i) total *= b;
        for (std::size_t f = 0; f < total; ++f) {
          std::set<std::size_t> im;
          std::size_t x = f;
          for (std::size_t i = 0; i < a; ++i, x /= b) im.insert(x % b);
          grew = s.insert(im.size()).second || grew;
        }
      }
  }
  CHECK(closed == std::vector<std::size_t>(s.begin(), s.end()));
  CHECK(closed == std::vector<std::size_t>{0, 1, 2, 3});
  CHECK_THROWS_AS(factorizable_closure(c, mid, {0, 3}, 2), BoundExceeded);

  auto p = std::make_shared<const PosetCategory>(PosetCategory::divisors(12));
  auto pc = WeightedCategory::from_category(p);
  CHECK(factorizable_closure(pc, target_middle(pc), {1, 4}) == std::vector<std::size_t>{1, 4});

  auto g = WeightedCategory::group_types(corpus({"1", "Z2", "Z3", "S3"}));
  std::size_t s3 = 3;
  REQUIRE(g.label(s3) == "BS3");
  auto level0 = factorizable_closure(g, image_group_middle(g), {s3});
  CHECK(level0 == std::vector<std::size_t>{0, 1, 3});
  CHECK(factorizable_closure(g, image_group_middle(g), level0) == level0);
  CHECK(factorizable_closure(g, target_middle(g), {s3}) == std::vector<std::size_t>{s3});
}

TEST_CASE("character linearization") {
  CHECK(character_linearization(FgAbelian({2})) == ExactMatrix::from_rows({{q(1), q(1)}, {q(1), q(-1)}}));
  auto v4 = character_linearization(FgAbelian({2, 2}));
  CHECK(v4.rows() == 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK((v4(i, j) == q(1) || v4(i, j) == q(-1)));
  CHECK(v4.rank() == 4);
  auto z5 = character_linearization(FgAbelian({5}));
  CHECK(z5.rank() == 5);
  CHECK(z5(1, 1) == Cyclotomic::zeta(5, 1));
  for (std::size_t n = 1; n <= 12; ++n) {
    CHECK(character_linearization(FgAbelian({static_cast<long>(n)})).rank() == n);
    CHECK(character_linearization(FgAbelian({static_cast<long>(n)})).transpose().rank() == n);
  }
}

TEST_CASE("pairing through factorizations on FinSet") {
  auto fs = std::make_shared<const FinSetCategory>(3);
  auto c = WeightedCategory::from_category(fs);
  auto objs = all_objects(c);
  auto surj = [&](std::size_t m) {
    auto o = *c.origin(m);
    return fs->surjective(o.src, o.tgt, o.index);
  };
  auto inj = [&](std::size_t m) {
    auto o = *c.origin(m);
    return fs->injective(o.src, o.tgt, o.index);
  };
  auto iso = [&](std::size_t m) { return c.is_iso(m); };
  for (auto cf : {CatFunctor::constant_functor(*fs), free_vector_functor(*fs), pair_functor(*fs)}) {
    auto f = VecFunctor::from_cat_functor(c, cf);
    auto full = pairing_form(c, f, objs);
    CHECK(full == pairing_form(c, f, objs, inj) * weighted_linearize(c, f, objs, surj));
    CHECK(full == pairing_form(c, f, objs, iso) * weighted_linearize(c, f, objs));
    CHECK(weighted_linearize(c, f, objs) == cat_linearize(*fs, cf));
  }
}

TEST_CASE("pairing through factorizations on group types") {
  auto c = WeightedCategory::group_types(corpus({"1", "Z2", "Z3", "S3"}));
  auto objs = all_objects(c);
  auto surj = [&](std::size_t m) { return surjective_hom(c, m); };
  auto inj = [&](std::size_t m) { return injective_hom(c, m); };
  auto iso = [&](std::size_t m) { return c.is_iso(m); };
  for (auto om : {AbFunctor::trivial(c), AbFunctor::abelianization(c)}) {
    auto f = group_ring_functor(c, om);
    auto full = pairing_form(c, f, objs);
    CHECK(full == pairing_form(c, f, objs, iso) * weighted_linearize(c, f, objs));
    CHECK(full == pairing_form(c, f, objs, inj) * weighted_linearize(c, f, objs, surj));
    CHECK(full.rank() == full.rows());
  }
}
