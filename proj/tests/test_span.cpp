#include "doctest.h"
#include "pifin/error.hpp"
#include "pifin/span.hpp"
#include "pifin/testkit.hpp"

using namespace pifin;

namespace {

GroupoidPtr point() { return make_groupoid(FinGroupoid::point()); }
GroupoidPtr bg(const FinGroup& g) { return make_groupoid(FinGroupoid::classifying(make_group(g))); }

Cyclotomic q(long a, long b = 1) { return Cyclotomic::rational(a, b); }

// rank of (1/|G|) sum rho(g), computed directly
std::size_t averaging_rank(const Representation& r) {
  ExactMatrix s(r[0].rows(), r[0].rows());
  for (auto& m : r) s += m;
  return (s * q(1, static_cast<long>(r.size()))).rank();
}

// Same groupoid with one extra object per component, and the equivalence onto the original.
GroupoidFunctor fattening(const GroupoidPtr& x, testkit::Rng& rng) {
  const std::size_t n = x->object_count();
  std::vector<GroupoidComponent> comps;
  for (std::size_t c = 0; c < x->component_count(); ++c) {
    auto gc = x->component(c);
    gc.objects.push_back(n + c);
    comps.push_back(gc);
  }
  auto fat = make_groupoid(FinGroupoid(comps));
  std::vector<std::size_t> obj(fat->object_count());
  std::vector<Elem> k(fat->object_count());
  std::vector<GroupHom> phi;
  for (std::size_t o = 0; o < n; ++o) {
    obj[o] = o;
    k[o] = x->group_at(o).identity();
  }
  for (std::size_t c = 0; c < x->component_count(); ++c) {
    obj[n + c] = x->base(c);
    k[n + c] = static_cast<Elem>(rng() % x->vertex_group(c).order());
    GroupHom id(x->vertex_group(c).order());
    for (Elem h = 0; h < id.size(); ++h) id[h] = h;
    phi.push_back(id);
  }
  return GroupoidFunctor(fat, x, obj, k, phi);
}

}  // namespace

TEST_CASE("colimits and limits of basic systems") {
  for (auto g : {FinGroup::cyclic(2), FinGroup::cyclic(5), FinGroup::symmetric(3)}) {
    auto l = make_system(LocalSystem::trivial(bg(g)));
    CHECK(colim(l).dim == 1);
    CHECK(lim(l).dim == 1);
  }
  auto z2 = make_group(FinGroup::cyclic(2));
  auto sign = extend_representation(*z2, {1}, {ExactMatrix::scalar(-1)});
  auto ls = make_system(LocalSystem::on_classifying(z2, sign));
  auto cs = colim(ls);
  auto li = lim(ls);
  CHECK(cs.dim == 0);
  CHECK(li.dim == 0);
  auto n = norm_matrix(cs, li);
  CHECK(n.rows() == 0);
  CHECK(n.cols() == 0);

  auto s3 = make_group(FinGroup::symmetric(3));
  auto reg = regular_rep(*s3);
  auto lr = make_system(LocalSystem::on_classifying(s3, reg));
  CHECK(colim(lr).dim == averaging_rank(reg));
  CHECK(colim(lr).dim == 1);
  CHECK(lim(lr).dim == 1);
}

TEST_CASE("colimit maps are compatible with the system") {
  testkit::Rng rng(7);
  for (int trial = 0; trial < 6; ++trial) {
    auto x = testkit::random_groupoid(rng);
    auto l = testkit::random_system(rng, x, 3);
    auto c = colim(l);
    auto m = lim(l);
    CHECK(c.dim == m.dim);
    for (std::size_t a = 0; a < x->object_count(); ++a)
      for (std::size_t b = 0; b < x->object_count(); ++b)
        for (auto& f : x->hom(a, b)) {
          CHECK(c.iota(b) * (*l)(f) == c.iota(a));
          CHECK((*l)(f) * m.restrict_to(a) == m.restrict_to(b));
        }
    for (std::size_t k = 0; k < x->component_count(); ++k) {
      CHECK((c.projection[k] * c.section[k]).is_identity());
      CHECK((m.coordinates[k] * m.basis[k]).is_identity());
    }
  }
}

TEST_CASE("norm maps") {
  for (std::size_t n = 1; n <= 6; ++n) {
    auto l = make_system(LocalSystem::trivial(bg(FinGroup::cyclic(n))));
    auto nm = norm_matrix(colim(l), lim(l));
    CHECK(nm == ExactMatrix::scalar(q(static_cast<long>(n))));
  }
  auto z3 = make_group(FinGroup::cyclic(3));
  auto l = make_system(LocalSystem::on_classifying(z3, regular_rep(*z3)));
  auto c = colim(l);
  auto m = lim(l);
  ExactMatrix u = ExactMatrix::column({q(1), q(1), q(1)});
  // class of the invariant vector u goes to 3u
  CHECK(norm_matrix(c, m) * c.iota(0) * u == m.coordinates[0] * (u * q(3)));
  testkit::Rng rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    auto x = testkit::random_groupoid(rng);
    auto ls = testkit::random_system(rng, x, 3);
    auto nm = norm_matrix(colim(ls), lim(ls));
    CHECK(nm.rank() == nm.rows());
  }
}

TEST_CASE("pullback of a local system") {
  testkit::Rng rng(3);
  for (int trial = 0; trial < 6; ++trial) {
    auto a = testkit::random_groupoid(rng);
    auto x = testkit::random_groupoid(rng);
    auto f = testkit::random_functor(rng, x, a);
    auto l = testkit::random_system(rng, a, 2);
    auto p = LocalSystem::pullback(f, *l);
    for (std::size_t u = 0; u < x->object_count(); ++u)
      for (std::size_t v = 0; v < x->object_count(); ++v)
        for (auto& m : x->hom(u, v)) CHECK(p(m) == (*l)(f(m)));
  }
}

TEST_CASE("local system validation") {
  auto z2 = make_group(FinGroup::cyclic(2));
  Representation bad = {ExactMatrix::identity(1), ExactMatrix::scalar(2)};
  CHECK_THROWS_AS(LocalSystem::on_classifying(z2, bad), ValidationError);
  Representation mixed = {ExactMatrix::identity(2), ExactMatrix::from_rows({{q(0), q(1)}, {q(1), q(0)}})};
  auto x = bg(*z2);
  CHECK_NOTHROW(LocalSystem(x, {mixed}));
  CHECK_THROWS_AS(LocalSystem(x, {mixed}, {}, {{false, true}}), ValidationError);
}

TEST_CASE("linearization examples") {
  for (auto g : {FinGroup::cyclic(2), FinGroup::cyclic(3), FinGroup::symmetric(3), FinGroup::quaternion()}) {
    auto x = bg(g);
    auto pt = point();
    auto lp = make_system(LocalSystem::trivial(pt));
    auto s = GroupoidFunctor::constant(x, pt, 0);
    DecoratedSpan sp(s, s, lp, lp, {ExactMatrix::identity(1)});
    CHECK(linearize(sp) == ExactMatrix::scalar(q(1, static_cast<long>(g.order()))));
  }
  auto two = make_groupoid(FinGroupoid::discrete(2));
  auto pt = point();
  auto lp = make_system(LocalSystem::trivial(pt));
  auto c = GroupoidFunctor::constant(two, pt, 0);
  DecoratedSpan sp(c, c, lp, lp, {ExactMatrix::identity(1), ExactMatrix::identity(1)});
  CHECK(linearize(sp) == ExactMatrix::scalar(q(2)));

  testkit::Rng rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    auto a = testkit::random_groupoid(rng);
    auto l = testkit::random_system(rng, a, 3);
    CHECK(linearize(DecoratedSpan::identity(l)).is_identity());
  }
}

TEST_CASE("composite through a classifying space") {
  for (auto g : {FinGroup::cyclic(4), FinGroup::symmetric(3)}) {
    auto x = bg(g);
    auto pt = point();
    auto lp = make_system(LocalSystem::trivial(pt));
    auto lx = make_system(LocalSystem::trivial(x));
    auto in = GroupoidFunctor::constant(pt, x, 0);
    auto id = GroupoidFunctor::identity(pt);
    DecoratedSpan s1(id, in, lp, lx, {ExactMatrix::identity(1)});
    DecoratedSpan s2(in, id, lx, lp, {ExactMatrix::identity(1)});
    auto comp = compose(s2, s1);
    // apex is the discrete set G
    CHECK(comp.apex()->object_count() == g.order());
    CHECK(comp.apex()->component_count() == g.order());
    auto expected = ExactMatrix::scalar(q(static_cast<long>(g.order())));
    CHECK(linearize(comp) == expected);
    CHECK(linearize(s2) * linearize(s1) == expected);
    CHECK(linearize(compose(s1, DecoratedSpan::identity(lp))) == linearize(s1));
  }
}

TEST_CASE("linearization respects composition of random spans") {
  testkit::Rng rng(2024);
  int nonzero = 0;
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<LocalSystemPtr> sys;
    for (int i = 0; i < 4; ++i) sys.push_back(testkit::random_system(rng, bg(*testkit::pool_group(rng() % 5)), 3));
    auto s1 = testkit::random_span(rng, sys[0], sys[1]);
    auto s2 = testkit::random_span(rng, sys[1], sys[2]);
    auto s3 = testkit::random_span(rng, sys[2], sys[3]);
    auto p1 = linearize(s1), p2 = linearize(s2), p3 = linearize(s3);
    CHECK(linearize(compose(s2, s1)) == p2 * p1);
    CHECK(linearize(compose(s3, compose(s2, s1))) == linearize(compose(compose(s3, s2), s1)));
    CHECK(linearize(compose(s3, s2)) * p1 == p3 * linearize(compose(s2, s1)));
    if (!(p2 * p1).is_zero()) ++nonzero;
  }
  CHECK(nonzero >= 3);
}

TEST_CASE("mismatched composition is rejected") {
  auto pt = point();
  auto lp = make_system(LocalSystem::trivial(pt));
  auto l2 = make_system(LocalSystem::trivial(pt, 2));
  auto id = DecoratedSpan::identity(lp);
  CHECK_THROWS_AS(compose(DecoratedSpan::identity(l2), id), ValidationError);
  auto z2 = make_group(FinGroup::cyclic(2));
  auto x = bg(*z2);
  auto sign = make_system(LocalSystem::on_classifying(z2, extend_representation(*z2, {1}, {ExactMatrix::scalar(-1)})));
  auto triv = make_system(LocalSystem::trivial(x));
  auto idf = GroupoidFunctor::identity(x);
  CHECK_THROWS_AS(DecoratedSpan(idf, idf, triv, sign, {ExactMatrix::identity(1)}), ValidationError);
  CHECK_THROWS_AS(DecoratedSpan(idf, idf, triv, triv, {ExactMatrix::identity(2)}), DimensionMismatch);
}

TEST_CASE("tensor products") {
  auto pt = point();
  auto lp = make_system(LocalSystem::trivial(pt));
  auto make = [&](const FinGroup& g) {
    auto x = bg(g);
    auto s = GroupoidFunctor::constant(x, pt, 0);
    return DecoratedSpan(s, s, lp, lp, {ExactMatrix::identity(1)});
  };
  auto t = tensor(make(FinGroup::cyclic(2)), make(FinGroup::cyclic(3)));
  CHECK(linearize(*t.span) == ExactMatrix::scalar(q(1, 6)));

  testkit::Rng rng(99);
  for (int trial = 0; trial < 5; ++trial) {
    auto a1 = testkit::random_system(rng, bg(*testkit::pool_group(rng() % 5)), 2);
    auto b1 = testkit::random_system(rng, bg(*testkit::pool_group(rng() % 5)), 2);
    auto a2 = testkit::random_system(rng, bg(*testkit::pool_group(rng() % 5)), 2);
    auto b2 = testkit::random_system(rng, bg(*testkit::pool_group(rng() % 5)), 2);
    auto s1 = testkit::random_span(rng, a1, b1);
    auto s2 = testkit::random_span(rng, a2, b2);
    auto ts = tensor(s1, s2);
    auto ca = colim(ts.span->source_system()), cb = colim(ts.span->target_system());
    auto qa = tensor_comparison(ca, colim(a1), colim(a2));
    auto qb = tensor_comparison(cb, colim(b1), colim(b2));
    CHECK(qa.rank() == qa.rows());
    CHECK(qa.rows() == qa.cols());
    CHECK(linearize(*ts.span, ca, cb) * qa == qb * linearize(s1).kron(linearize(s2)));
    // unit span leaves the linearization unchanged up to the comparison map
    auto tu = tensor(s1, DecoratedSpan::identity(lp));
    auto cu = colim(tu.span->source_system()), cv = colim(tu.span->target_system());
    auto ua = tensor_comparison(cu, colim(a1), colim(lp));
    auto ub = tensor_comparison(cv, colim(b1), colim(lp));
    CHECK(linearize(*tu.span, cu, cv) * ua == ub * linearize(s1));
  }
  ExactMatrix m2(2, 2), m3(3, 3);
  CHECK(m2.kron(m3).rows() == 6);
  CHECK(m2.kron(m3).cols() == 6);
}

TEST_CASE("limit linearization matches through norm maps") {
  testkit::Rng rng(77);
  for (int trial = 0; trial < 8; ++trial) {
    auto a = testkit::random_groupoid(rng, 2, 5);
    auto b = testkit::random_groupoid(rng, 2, 5);
    auto la = testkit::random_system(rng, a, 2);
    auto lb = testkit::random_system(rng, b, 2);
    auto sp = testkit::random_span(rng, la, lb);
    auto ca = colim(la), cb = colim(lb);
    auto ma = lim(la), mb = lim(lb);
    CHECK(norm_matrix(cb, mb) * linearize(sp, ca, cb) == linearize_limit(sp, ma, mb) * norm_matrix(ca, ma));
  }
}

TEST_CASE("linearization is invariant under equivalence of spans") {
  testkit::Rng rng(31);
  for (int trial = 0; trial < 6; ++trial) {
    auto la = testkit::random_system(rng, testkit::random_groupoid(rng, 2, 5), 2);
    auto lb = testkit::random_system(rng, testkit::random_groupoid(rng, 2, 5), 2);
    auto sp = testkit::random_span(rng, la, lb);
    auto e = fattening(sp.apex(), rng);
    std::vector<ExactMatrix> alpha;
    for (std::size_t o = 0; o < e.source()->object_count(); ++o) alpha.push_back(sp.decoration(e.object(o)));
    DecoratedSpan moved(compose(sp.source_leg(), e), compose(sp.target_leg(), e), la, lb, alpha);
    CHECK(linearize(moved) == linearize(sp));
  }
}
