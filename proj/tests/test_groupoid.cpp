#include <random>
#include <set>

#include "doctest.h"
#include "pifin/error.hpp"
#include "pifin/groupoid.hpp"

using namespace pifin;

namespace {

Cyclotomic q(long a, long b = 1) { return Cyclotomic::rational(a, b); }

ExactMatrix vec(std::vector<Cyclotomic> v) { return ExactMatrix::column(v); }

GroupoidFunctor inclusion_functor(GroupPtr h, GroupPtr g, const std::vector<Elem>& embed) {
  return GroupoidFunctor(make_groupoid(FinGroupoid::classifying(h)), make_groupoid(FinGroupoid::classifying(g)), {0},
                         {g->identity()}, {embed});
}

Elem find_label(const FinGroup& g, const std::string& s) {
  for (Elem x = 0; x < g.order(); ++x)
    if (g.label(x) == s) return x;
  throw Error("label not found");
}

ExactMatrix random_vec(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<int> d(-5, 5);
  std::vector<Cyclotomic> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(q(d(rng), 1 + std::abs(d(rng))));
  return vec(v);
}

}  // namespace

TEST_CASE("components") {
  auto s3 = make_group(FinGroup::symmetric(3));
  auto bg = FinGroupoid::classifying(s3);
  CHECK(bg.component_count() == 1);
  CHECK(bg.vertex_group(0) == *s3);
  auto d3 = FinGroupoid::discrete(3);
  CHECK(d3.component_count() == 3);
  for (std::size_t c = 0; c < 3; ++c) CHECK(d3.vertex_group(c).order() == 1);

  // {+1,-1} with Z/2 acting by negation; orbit/stabilizer oracle: one free orbit
  auto neg = action_groupoid(make_group(FinGroup::cyclic(2)), 2, [](Elem h, std::size_t i) { return h ? 1 - i : i; });
  CHECK(neg.groupoid->object_count() == 2);
  CHECK(neg.groupoid->component_count() == 1);
  CHECK(neg.groupoid->vertex_group(0).order() == 1);
  CHECK(neg.groupoid->total_cardinality() == 1);
}

TEST_CASE("homotopy cardinality") {
  CHECK(FinGroupoid::classifying(make_group(FinGroup::cyclic(6))).total_cardinality() == Rational(1, 6));
  CHECK(pi_cardinality({2, 3}) == Rational(3, 2));
  CHECK(pi_cardinality({4}) == Rational(1, 4));
  CHECK(pi_cardinality({2, 3, 5}) == Rational(3, 10));
  CHECK_THROWS_AS(pi_cardinality({0}), ValidationError);
}

TEST_CASE("path integral") {
  auto bz2 = FinGroupoid::classifying(make_group(FinGroup::cyclic(2)));
  auto v = vec({q(3), q(-4, 7)});
  CHECK(path_integral(bz2, {v}) == vec({q(3, 2), q(-2, 7)}));
  auto two = FinGroupoid::discrete(2);
  auto w = vec({q(1), q(1)});
  CHECK(path_integral(two, {v, w}) == v + w);
  CHECK_THROWS_AS(path_integral(two, {v, ExactMatrix::column({q(1)})}), DimensionMismatch);
  CHECK_THROWS_AS(path_integral(two, {v}), DimensionMismatch);

  // Z/2 swapping 0<->1 and 2<->3, fixing 4
  auto act = action_groupoid(make_group(FinGroup::cyclic(2)), 5,
                             [](Elem h, std::size_t i) { return (h && i < 4) ? (i ^ 1U) : i; });
  CHECK(act.groupoid->component_count() == 3);
  std::vector<ExactMatrix> one(3, ExactMatrix::scalar(q(1)));
  // Burnside-style count: sum over orbits of 1/|stab| = |X|/|G|
  Rational burnside(5, 2);
  CHECK(path_integral(*act.groupoid, one) == ExactMatrix::scalar(Cyclotomic(burnside)));
}

TEST_CASE("homotopy fibers") {
  auto s3 = make_group(FinGroup::symmetric(3));
  Elem t = find_label(*s3, "(1 2)");
  std::vector<Elem> embed;
  auto h = make_group(FinGroup::subgroup(*s3, {s3->identity(), t}, &embed));
  auto f = inclusion_functor(h, s3, embed);
  auto fib = homotopy_fiber(f, 0);
  // coset oracle: S3 / <(12)> has 3 right cosets
  std::set<std::set<Elem>> cosets;
  for (Elem u = 0; u < 6; ++u) cosets.insert({u, s3->mul(t, u)});
  CHECK(fib.groupoid->component_count() == cosets.size());
  for (std::size_t c = 0; c < fib.groupoid->component_count(); ++c) CHECK(fib.groupoid->vertex_group(c).order() == 1);
  // every object carries a path a -> F(x)
  for (std::size_t o = 0; o < fib.groupoid->object_count(); ++o) {
    CHECK(fib.gamma[o].src == 0);
    CHECK(fib.gamma[o].tgt == f.object(fib.inclusion->object(o)));
  }

  auto x = make_groupoid(FinGroupoid::classifying(s3));
  auto id = homotopy_fiber(GroupoidFunctor::identity(x), 0);
  CHECK(id.groupoid->component_count() == 1);
  CHECK(id.groupoid->vertex_group(0).order() == 1);

  auto pt = make_groupoid(FinGroupoid::point());
  auto toP = homotopy_fiber(GroupoidFunctor::constant(x, pt, 0), 0);
  CHECK(equivalent(*toP.groupoid, *x));

  // fiber morphisms satisfy F(u) o gamma = gamma'
  auto z4 = make_group(FinGroup::cyclic(4));
  auto z2 = make_group(FinGroup::cyclic(2));
  GroupoidFunctor quo(make_groupoid(FinGroupoid::classifying(z4)), make_groupoid(FinGroupoid::classifying(z2)), {0}, {0},
                      {{0, 1, 0, 1}});
  auto qf = homotopy_fiber(quo, 0);
  CHECK(qf.groupoid->component_count() == 1);
  CHECK(qf.groupoid->vertex_group(0).order() == 2);
  const FinGroupoid& fg = *qf.groupoid;
  for (std::size_t o1 = 0; o1 < fg.object_count(); ++o1)
    for (std::size_t o2 = 0; o2 < fg.object_count(); ++o2)
      for (auto& m : fg.hom(o1, o2)) {
        auto u = (*qf.inclusion)(m);
        CHECK(quo.target()->compose(quo(u), qf.gamma[o1]) == qf.gamma[o2]);
      }
}

TEST_CASE("homotopy pullbacks") {
  auto s3 = make_group(FinGroup::symmetric(3));
  auto z2 = make_group(FinGroup::cyclic(2));
  auto z3 = make_group(FinGroup::cyclic(3));
  auto pt = make_groupoid(FinGroupoid::point());
  auto x = make_groupoid(FinGroupoid::classifying(z2));
  auto y = make_groupoid(FinGroupoid({{z3, {0, 1}}, {make_group(FinGroup()), {2}}}));
  auto pb = homotopy_pullback(GroupoidFunctor::constant(x, pt, 0), GroupoidFunctor::constant(y, pt, 0));
  CHECK(equivalent(*pb.groupoid, *product(x, y).groupoid));
  CHECK(pb.groupoid->component_count() == 2);

  Elem t = find_label(*s3, "(1 2)");
  std::vector<Elem> embed;
  auto h = make_group(FinGroup::subgroup(*s3, {s3->identity(), t}, &embed));
  auto bs3 = make_groupoid(FinGroupoid::classifying(s3));
  auto f = inclusion_functor(h, s3, embed);
  auto p = GroupoidFunctor::constant(pt, bs3, 0);
  auto pb2 = homotopy_pullback(f, p);
  CHECK(equivalent(*pb2.groupoid, FinGroupoid::discrete(3)));
  auto pb2r = homotopy_pullback(p, f);
  CHECK(equivalent(*pb2.groupoid, *pb2r.groupoid));

  auto pb3 = homotopy_pullback(GroupoidFunctor::identity(bs3), f);
  CHECK(equivalent(*pb3.groupoid, *f.source()));

  // projections and gamma form a commuting square: G(v) gamma = gamma' F(u)
  const FinGroupoid& g = *pb2.groupoid;
  for (std::size_t o1 = 0; o1 < g.object_count(); ++o1)
    for (std::size_t o2 = 0; o2 < g.object_count(); ++o2)
      for (auto& m : g.hom(o1, o2)) {
        auto lhs = bs3->compose(p((*pb2.right)(m)), pb2.gamma[o1]);
        auto rhs = bs3->compose(pb2.gamma[o2], f((*pb2.left)(m)));
        CHECK(lhs == rhs);
      }
}

TEST_CASE("Fubini") {
  std::mt19937 rng(3);
  auto z2 = make_group(FinGroup::cyclic(2));
  auto z4 = make_group(FinGroup::cyclic(4));
  auto s3 = make_group(FinGroup::symmetric(3));
  auto pt = make_groupoid(FinGroupoid::point());
  auto x = make_groupoid(FinGroupoid({{s3, {0, 1}}, {z2, {2}}}));
  auto alpha = std::vector<ExactMatrix>{random_vec(rng, 2), random_vec(rng, 2)};
  auto r = fubini_check(GroupoidFunctor::constant(x, pt, 0), alpha);
  CHECK(r.equal);
  CHECK(r.direct == path_integral(*x, alpha));

  auto two = make_groupoid(FinGroupoid::discrete(2));
  GroupoidFunctor split(x, two, {0, 0, 1}, {0, 0, 0}, {GroupHom(6, 0), GroupHom(2, 0)});
  CHECK(fubini_check(split, alpha).equal);

  GroupoidFunctor quo(make_groupoid(FinGroupoid::classifying(z4)), make_groupoid(FinGroupoid::classifying(z2)), {0}, {0},
                      {{0, 1, 0, 1}});
  for (int i = 0; i < 5; ++i) {
    auto rr = fubini_check(quo, {random_vec(rng, 3)});
    CHECK(rr.equal);
  }
}

TEST_CASE("cardinality is multiplicative over fibrations") {
  auto z4 = make_group(FinGroup::cyclic(4));
  auto z2 = make_group(FinGroup::cyclic(2));
  GroupoidFunctor quo(make_groupoid(FinGroupoid::classifying(z4)), make_groupoid(FinGroupoid::classifying(z2)), {0}, {0},
                      {{0, 1, 0, 1}});
  auto fib = homotopy_fiber(quo, 0);
  CHECK(quo.source()->total_cardinality() == quo.target()->total_cardinality() * fib.groupoid->total_cardinality());
}

TEST_CASE("integral of an equivariant function is fixed") {
  // Z/2 swaps the two components of X = BZ3 + BZ3; alpha swapped by the same action
  auto z3 = make_group(FinGroup::cyclic(3));
  FinGroupoid x({{z3, {0}}, {z3, {1}}});
  auto a = vec({q(1), q(2)}), b = vec({q(2), q(1)});
  auto swap_vec = [](const ExactMatrix& v) { return vec({v(1, 0), v(0, 0)}); };
  auto integral = path_integral(x, {a, b});
  CHECK(swap_vec(integral) == integral);
}

TEST_CASE("explicit groupoid normalization") {
  // Z/2 acting freely on two points: 4 morphisms
  ExplicitGroupoid e;
  e.objects = 2;
  e.morphisms = {{0, 0}, {1, 1}, {0, 1}, {1, 0}};
  e.identity = {0, 1};
  auto n = std::nullopt;
  e.compose = {{0, n, n, 3}, {n, 1, 2, n}, {2, n, n, 1}, {n, 3, 0, n}};
  auto g = normalize(e);
  CHECK(g.groupoid->component_count() == 1);
  CHECK(g.groupoid->vertex_group(0).order() == 1);
  for (std::size_t f = 0; f < 4; ++f)
    for (std::size_t h = 0; h < 4; ++h)
      if (e.compose[f][h]) CHECK(g.groupoid->compose(g.morphisms[f], g.morphisms[h]) == g.morphisms[*e.compose[f][h]]);

  auto bad = e;
  bad.compose[2][0] = std::nullopt;
  CHECK_THROWS_AS(normalize(bad), ValidationError);
  auto bad2 = e;
  bad2.compose[2][3] = 0;
  CHECK_THROWS_AS(normalize(bad2), ValidationError);
}

TEST_CASE("functor composition and products") {
  auto s3 = make_group(FinGroup::symmetric(3));
  auto bs3 = make_groupoid(FinGroupoid::classifying(s3));
  auto x = make_groupoid(FinGroupoid({{s3, {0, 1, 2}}}));
  auto f = GroupoidFunctor::from_map(x, bs3, [](const Morphism& m) { return Morphism{0, 0, m.h}; });
  auto id = GroupoidFunctor::identity(bs3);
  CHECK(compose(id, f) == f);
  auto p = product(x, bs3);
  CHECK(p.groupoid->object_count() == 3);
  CHECK(p.groupoid->vertex_group(0).order() == 36);
  auto m = pair_morphism(p, Morphism{0, 2, 3}, Morphism{0, 0, 4});
  CHECK((*p.first)(m) == Morphism{0, 2, 3});
  CHECK((*p.second)(m) == Morphism{0, 0, 4});
  CHECK_THROWS_AS(GroupoidFunctor(bs3, bs3, {0}, {0}, {GroupHom{0, 1, 2, 3, 4, 0}}), ValidationError);
}
