#include <random>

#include "doctest.h"
#include "pifin/error.hpp"
#include "pifin/fincat.hpp"
#include "pifin/reps.hpp"
#include "pifin/testkit.hpp"

using namespace pifin;

namespace {

Cyclotomic q(long a, long b = 1) { return Cyclotomic::rational(a, b); }

// mu(a, b) by the defining recursion over the order relation
std::vector<std::vector<long>> moebius_recursion(const PosetCategory& p) {
  const std::size_t n = p.object_count();
  std::vector<std::vector<long>> mu(n, std::vector<long>(n, 0));
  // process b in an order compatible with <=: count of elements below
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  auto below = [&](std::size_t x) {
    std::size_t k = 0;
    for (std::size_t y = 0; y < n; ++y) k += p.leq(y, x);
    return k;
  };
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return below(x) < below(y); });
  for (std::size_t a = 0; a < n; ++a)
    for (auto b : order) {
      if (!p.leq(a, b)) continue;
      if (a == b) {
        mu[a][b] = 1;
        continue;
      }
      long s = 0;
      for (std::size_t c = 0; c < n; ++c)
        if (p.leq(a, c) && p.leq(c, b) && c != b) s += mu[a][c];
      mu[a][b] = -s;
    }
  return mu;
}

PosetCategory random_poset(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) leq[i][i] = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) leq[i][j] = rng() % 3 == 0;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (leq[i][k] && leq[k][j]) leq[i][j] = true;
  return PosetCategory(leq);
}

// k[set]: the free vector space on each finite set
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

// Sum of indicator functors of random up-sets, conjugated objectwise.
CatFunctor random_poset_functor(std::mt19937_64& rng, const PosetCategory& p) {
  const std::size_t n = p.object_count();
  std::size_t summands = 1 + rng() % 2;
  std::vector<std::vector<bool>> in(summands, std::vector<bool>(n));
  for (auto& u : in) {
    std::vector<bool> seed(n);
    for (std::size_t i = 0; i < n; ++i) seed[i] = rng() % 3 == 0;
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t a = 0; a < n; ++a)
        if (seed[a] && p.leq(a, b)) u[b] = true;
  }
  CatFunctor f;
  std::vector<std::vector<std::size_t>> slots(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t s = 0; s < summands; ++s)
      if (in[s][a]) slots[a].push_back(s);
    f.dims.push_back(slots[a].size());
  }
  testkit::Rng r2(rng());
  std::vector<ExactMatrix> conj, conj_inv;
  for (std::size_t a = 0; a < n; ++a) {
    conj.push_back(testkit::random_invertible(r2, f.dims[a]));
    conj_inv.push_back(conj.back().inverse());
  }
  f.map = [slots, conj, conj_inv](const CatMorphism& m) {
    ExactMatrix base(slots[m.tgt].size(), slots[m.src].size());
    for (std::size_t i = 0; i < slots[m.tgt].size(); ++i)
      for (std::size_t j = 0; j < slots[m.src].size(); ++j)
        if (slots[m.tgt][i] == slots[m.src][j]) base(i, j) = 1;
    return conj[m.tgt] * base * conj_inv[m.src];
  };
  return f;
}

long factorial(long n) { return n <= 1 ? 1 : n * factorial(n - 1); }

// |Surj(m, a)| via inclusion-exclusion, an independent formula
long surj_count(long m, long a) {
  long s = 0;
  for (long j = 0; j <= a; ++j) {
    long binom = factorial(a) / (factorial(j) * factorial(a - j));
    long p = 1;
    for (long i = 0; i < m; ++i) p *= (a - j);
    s += ((j % 2) ? -1 : 1) * binom * p;
  }
  return s;
}

long inj_count(long a, long n) { return a > n ? 0 : factorial(n) / factorial(n - a); }

}  // namespace

TEST_CASE("category axioms") {
  FinSetCategory fs(3);
  CHECK(!check_category_axioms(fs).has_value());
  CHECK(!check_category_axioms(PosetCategory::divisors(12)).has_value());
  // two objects, one arrow each way, composites forced to identities
  CHECK_NOTHROW(ExplicitCategory(2, {{0, 0}, {1, 1}, {0, 1}, {1, 0}}, {0, 1},
                                 {{0, -1, -1, 3}, {-1, 1, 2, -1}, {2, -1, -1, 1}, {-1, 3, 0, -1}}));
  // composite with the wrong endpoints
  CHECK_THROWS_AS(ExplicitCategory(2, {{0, 0}, {1, 1}, {0, 1}, {1, 0}}, {0, 1},
                                   {{0, -1, -1, 3}, {-1, 1, 2, -1}, {2, -1, -1, 1}, {-1, 3, 1, -1}}),
                  ValidationError);
  CHECK_THROWS_AS(PosetCategory({{true, true}, {true, true}}), ValidationError);
  CHECK_THROWS_AS(FinSetCategory(finset_cap() + 1), BoundExceeded);
}

TEST_CASE("linearization of posets and FinSet") {
  auto p = PosetCategory::divisors(12);
  auto z = cat_linearize(p, CatFunctor::constant_functor(p));
  const std::vector<long> d = {1, 2, 3, 4, 6, 12};
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) CHECK(z(j, i) == q(d[j] % d[i] == 0 ? 1 : 0));

  FinSetCategory fs(2);
  auto phi = cat_linearize(fs, CatFunctor::constant_functor(fs));
  CHECK(phi == ExactMatrix::from_rows({{q(1), q(0), q(0)}, {q(1), q(1), q(1)}, {q(1, 2), q(1), q(2)}}));
  // brute-force function counts
  FinSetCategory f4(4);
  auto phi4 = cat_linearize(f4, CatFunctor::constant_functor(f4));
  for (std::size_t m = 0; m <= 4; ++m)
    for (std::size_t n = 0; n <= 4; ++n) {
      long count = 0;
      for (std::size_t k = 0; k < f4.hom_size(m, n); ++k) ++count;
      CHECK(phi4(n, m) == q(count, factorial(static_cast<long>(n))));
    }
}

TEST_CASE("one-object category") {
  auto s3 = FinGroup::symmetric(3);
  auto c = ExplicitCategory::from_group(s3);
  for (auto& r : irreducible_reps(s3)) {
    CatFunctor f;
    f.dims = {r[0].rows()};
    f.map = [r](const CatMorphism& m) { return r[m.index]; };
    validate_functor(c, f);
    auto phi = cat_linearize(c, f);
    CHECK(phi.is_identity());
  }
  auto reg = regular_rep(s3);
  CatFunctor f{{6}, [reg](const CatMorphism& m) { return reg[m.index]; }, false};
  CHECK(cat_linearize(c, f) == ExactMatrix::identity(1));
}

TEST_CASE("span route agrees with the direct formula") {
  FinSetCategory fs(3);
  CHECK(cat_linearize_via_spans(fs, CatFunctor::constant_functor(fs)) == cat_linearize(fs, CatFunctor::constant_functor(fs)));
  auto kf = free_vector_functor(fs);
  validate_functor(fs, kf);
  CHECK(cat_linearize_via_spans(fs, kf) == cat_linearize(fs, kf));
  auto p = PosetCategory::divisors(30);
  CHECK(cat_linearize_via_spans(p, CatFunctor::constant_functor(p)) == cat_linearize(p, CatFunctor::constant_functor(p)));
  auto g = ExplicitCategory::from_group(FinGroup::dihedral(4));
  auto reg = regular_rep(FinGroup::dihedral(4));
  CatFunctor f{{8}, [reg](const CatMorphism& m) { return reg[m.index]; }, false};
  CHECK(cat_linearize_via_spans(g, f) == cat_linearize(g, f));
  std::mt19937_64 rng(4);
  for (int t = 0; t < 4; ++t) {
    auto rp = random_poset(rng, 5);
    auto rf = random_poset_functor(rng, rp);
    validate_functor(rp, rf);
    CHECK(cat_linearize_via_spans(rp, rf) == cat_linearize(rp, rf));
  }
}

TEST_CASE("Moebius inversion") {
  for (unsigned long n : {12UL, 30UL, 60UL}) {
    auto p = PosetCategory::divisors(n);
    auto f = CatFunctor::constant_functor(p);
    auto res = moebius_invert(p, f);
    auto mu = moebius_recursion(p);
    for (std::size_t a = 0; a < p.object_count(); ++a)
      for (std::size_t b = 0; b < p.object_count(); ++b) CHECK(res.inverse(b, a) == q(mu[a][b]));
    CHECK(res.chain_length < p.representatives().size());
    CHECK((cat_linearize(p, f) * res.inverse).is_identity());
  }
  auto p12 = PosetCategory::divisors(12);
  auto inv12 = moebius_invert(p12, CatFunctor::constant_functor(p12)).inverse;
  CHECK(inv12(4, 0) == q(1));  // mu(1, 6)
  CHECK(inv12(5, 0) == q(0));  // mu(1, 12)

  PosetCategory discrete({{true, false, false}, {false, true, false}, {false, false, true}});
  CHECK(moebius_invert(discrete, CatFunctor::constant_functor(discrete)).inverse.is_identity());
  PosetCategory chain({{true, true, true}, {false, true, true}, {false, false, true}});
  auto ci = moebius_invert(chain, CatFunctor::constant_functor(chain)).inverse;
  CHECK(ci == cat_linearize(chain, CatFunctor::constant_functor(chain)).inverse());
  CHECK(ci(1, 0) == q(-1));
  CHECK(ci(2, 0) == q(0));

  FinSetCategory fs(2);
  CHECK_THROWS_AS(moebius_invert(fs, CatFunctor::constant_functor(fs)), ValidationError);
}

TEST_CASE("chains of two morphisms") {
  auto p = PosetCategory::divisors(60);
  auto f = CatFunctor::constant_functor(p);
  auto n1 = chain_linearization(p, f, 1);
  CHECK(chain_linearization(p, f, 2) == n1 * n1);
  FinSetCategory fs(3);
  auto kf = free_vector_functor(fs);
  MorphismFilter inj = [&fs](const CatMorphism& m) { return fs.injective(m.src, m.tgt, m.index); };
  auto m1 = chain_linearization(fs, kf, 1, inj);
  CHECK(chain_linearization(fs, kf, 2, inj) == m1 * m1);
  CHECK(m1 + ExactMatrix::identity(m1.rows()) == cat_linearize(fs, kf, inj));
}

TEST_CASE("random posets against the Moebius recursion") {
  std::mt19937_64 rng(12345);
  for (int t = 0; t < 20; ++t) {
    auto p = random_poset(rng, 1 + rng() % 8);
    auto res = moebius_invert(p, CatFunctor::constant_functor(p));
    auto mu = moebius_recursion(p);
    for (std::size_t a = 0; a < p.object_count(); ++a)
      for (std::size_t b = 0; b < p.object_count(); ++b) CHECK(res.inverse(b, a) == q(mu[a][b]));
    auto rf = random_poset_functor(rng, p);
    validate_functor(p, rf);
    auto phi = cat_linearize(p, rf);
    auto inv = moebius_invert(p, rf).inverse;
    CHECK((phi * inv).is_identity());
    CHECK((inv * phi).is_identity());
  }
}

TEST_CASE("functor validation") {
  auto p = PosetCategory::divisors(4);
  CatFunctor bad{{1, 1, 1}, [](const CatMorphism& m) {
                   return ExactMatrix::scalar(m.src == 0 && m.tgt == 2 ? q(3) : q(1));
                 }, false};
  CHECK_THROWS_AS(validate_functor(p, bad), ValidationError);
}

TEST_CASE("factorization systems") {
  auto fs = std::make_shared<const FinSetCategory>(3);
  CHECK(validate_factorization(surj_inj(fs)).ok);
  CHECK(validate_factorization(trivial_all_iso(fs)).ok);
  CHECK(validate_factorization(trivial_iso_all(fs)).ok);
  auto p = std::make_shared<const PosetCategory>(PosetCategory::divisors(12));
  CHECK(validate_factorization(trivial_all_iso(p)).ok);
  FactorizationSystem isos{p, trivial_iso_all(p).left, trivial_iso_all(p).left};
  auto d = validate_factorization(isos);
  CHECK(!d.ok);
  REQUIRE(d.witness.has_value());
  CHECK(d.witness->src != d.witness->tgt);
  // (Inj, Surj) is not a factorization system
  FactorizationSystem swapped{fs, surj_inj(fs).right, surj_inj(fs).left};
  CHECK(!validate_factorization(swapped).ok);
}

TEST_CASE("inversion through factorization") {
  auto fs = std::make_shared<const FinSetCategory>(3);
  NestedSystem ns{{surj_inj(fs)}};
  auto f = CatFunctor::constant_functor(*fs);
  auto res = factorized_invert(*fs, ns, f);
  CHECK(res.inverse == cat_linearize(*fs, f).inverse());

  auto kf = free_vector_functor(*fs);
  auto rk = factorized_invert(*fs, ns, kf);
  CHECK((rk.inverse * cat_linearize(*fs, kf)).is_identity());

  auto f4 = std::make_shared<const FinSetCategory>(4);
  NestedSystem n4{{surj_inj(f4)}};
  auto r4 = factorized_invert(*f4, n4, CatFunctor::constant_functor(*f4));
  REQUIRE(r4.factors.size() == 2);
  for (long a = 0; a <= 4; ++a)
    for (long b = 0; b <= 4; ++b) {
      CHECK(r4.factors[0](b, a) == q(inj_count(a, b), factorial(b)));
      CHECK(r4.factors[1](b, a) == q(surj_count(a, b), factorial(b)));
    }
  CHECK(r4.factors[0] * r4.factors[1] == cat_linearize(*f4, CatFunctor::constant_functor(*f4)));
  CHECK(r4.inverse == cat_linearize(*f4, CatFunctor::constant_functor(*f4)).inverse());

  auto p = std::make_shared<const PosetCategory>(PosetCategory::divisors(12));
  NestedSystem trivial{{trivial_all_iso(p)}};
  auto pf = CatFunctor::constant_functor(*p);
  CHECK(factorized_invert(*p, trivial, pf).inverse == moebius_invert(*p, pf).inverse);

  // all/iso on FinSet leaves non-invertible endomorphisms in T(1)
  NestedSystem badns{{trivial_all_iso(fs)}};
  CHECK_THROWS_AS(factorized_invert(*fs, badns, f), ValidationError);
}

TEST_CASE("Postnikov factorizations") {
  auto z4 = make_group(FinGroup::cyclic(4));
  auto z2 = make_group(FinGroup::cyclic(2));
  auto b4 = make_groupoid(FinGroupoid::classifying(z4));
  auto b2 = make_groupoid(FinGroupoid::classifying(z2));
  GroupoidFunctor quot(b4, b2, {0}, {0}, {{0, 1, 0, 1}});
  auto p0 = postnikov_factor(quot, 0);
  CHECK(p0.middle->vertex_group(0).order() == 2);
  CHECK(pi1_surjective(*p0.left));
  CHECK(pi1_injective(*p0.right));
  CHECK(pi1_surjective(*p0.right));  // r is an equivalence
  CHECK(compose(*p0.right, *p0.left) == quot);

  auto id = GroupoidFunctor::identity(b4);
  for (int level : {-1, 0}) {
    auto p = postnikov_factor(id, level);
    CHECK(pi0_injective(*p.left));
    CHECK(pi0_surjective(*p.left));
    CHECK(pi1_injective(*p.left));
    CHECK(pi1_surjective(*p.left));
  }

  auto two = make_groupoid(FinGroupoid({{z2, {0}}, {z4, {1}}}));
  GroupoidFunctor incl(b2, two, {0}, {0}, {{0, 1}});
  auto pm = postnikov_factor(incl, -1);
  CHECK(pm.middle->component_count() == 1);
  CHECK(pi0_injective(*pm.right));
  CHECK(!pi0_surjective(*pm.right));
  CHECK(pi1_surjective(*pm.right));

  testkit::Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    auto x = testkit::random_groupoid(rng);
    auto y = testkit::random_groupoid(rng);
    auto f = testkit::random_functor(rng, x, y);
    auto m1 = postnikov_factor(f, -1);
    CHECK(pi0_surjective(*m1.left));
    CHECK(pi0_injective(*m1.right));
    CHECK(pi1_injective(*m1.right));
    CHECK(pi1_surjective(*m1.right));
    CHECK(compose(*m1.right, *m1.left) == f);
    auto m0 = postnikov_factor(f, 0);
    CHECK(pi0_injective(*m0.left));
    CHECK(pi0_surjective(*m0.left));
    CHECK(pi1_surjective(*m0.left));
    CHECK(pi1_injective(*m0.right));
    CHECK(compose(*m0.right, *m0.left) == f);
  }
}
