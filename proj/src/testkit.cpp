#include "pifin/testkit.hpp"

#include <map>

namespace pifin::testkit {

namespace {

std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

}  // namespace

GroupPtr pool_group(std::size_t i) {
  static const std::vector<GroupPtr> pool = {
      make_group(FinGroup()),          make_group(FinGroup::cyclic(2)),    make_group(FinGroup::cyclic(3)),
      make_group(FinGroup::cyclic(4)), make_group(FinGroup::symmetric(3)), make_group(FinGroup::abelian({2, 2}))};
  return pool.at(i);
}

Cyclotomic random_rational(Rng& rng, long range) {
  long num = std::uniform_int_distribution<long>(-range, range)(rng);
  long den = std::uniform_int_distribution<long>(1, 2)(rng);
  return Cyclotomic::rational(num, den);
}

ExactMatrix random_invertible(Rng& rng, std::size_t n) {
  for (;;) {
    ExactMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = random_rational(rng);
    if (m.rank() == n) return m;
  }
}

GroupoidPtr random_groupoid(Rng& rng, std::size_t max_components, std::size_t max_pool) {
  std::size_t nc = 1 + pick(rng, max_components);
  std::vector<GroupoidComponent> comps;
  std::size_t next = 0;
  for (std::size_t c = 0; c < nc; ++c) {
    GroupoidComponent gc;
    gc.group = pool_group(pick(rng, max_pool));
    std::size_t no = 1 + pick(rng, 2);
    for (std::size_t k = 0; k < no; ++k) gc.objects.push_back(next++);
    comps.push_back(std::move(gc));
  }
  return make_groupoid(FinGroupoid(std::move(comps)));
}

GroupoidFunctor random_functor(Rng& rng, const GroupoidPtr& src, const GroupoidPtr& tgt) {
  const FinGroupoid& x = *src;
  const FinGroupoid& y = *tgt;
  std::vector<std::size_t> obj(x.object_count());
  std::vector<Elem> k(x.object_count());
  std::vector<GroupHom> phi;
  for (std::size_t c = 0; c < x.component_count(); ++c) {
    std::size_t cy = pick(rng, y.component_count());
    const auto& objs = y.component(cy).objects;
    const FinGroup& h = y.vertex_group(cy);
    auto homs = homomorphisms(x.vertex_group(c), h);
    phi.push_back(homs[pick(rng, homs.size())]);
    for (auto o : x.component(c).objects) {
      obj[o] = objs[pick(rng, objs.size())];
      k[o] = o == x.base(c) ? h.identity() : static_cast<Elem>(pick(rng, h.order()));
    }
  }
  return GroupoidFunctor(src, tgt, std::move(obj), std::move(k), std::move(phi));
}

Representation random_representation(Rng& rng, const FinGroup& g, std::size_t max_dim) {
  static std::map<std::vector<std::vector<Elem>>, std::vector<Representation>> cache;
  auto key = g.table_rows();
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, irreducible_reps(g)).first;
  const auto& irr = it->second;
  std::size_t target = 1 + pick(rng, max_dim);
  // irr[0] is the trivial representation; include it often so colimits are nonzero
  Representation r;
  std::size_t d = 0;
  if (pick(rng, 3) != 0) {
    r = irr[0];
    d = 1;
  }
  for (int tries = 0; tries < 20 && d < target; ++tries) {
    const auto& cand = irr[pick(rng, irr.size())];
    std::size_t cd = cand[0].rows();
    if (d + cd > target) continue;
    r = r.empty() ? cand : direct_sum(r, cand);
    d += cd;
  }
  if (r.empty()) r = irr[0];
  ExactMatrix p = random_invertible(rng, d), pinv = p.inverse();
  for (auto& m : r) m = p * m * pinv;
  return r;
}

LocalSystemPtr random_system(Rng& rng, const GroupoidPtr& base, std::size_t max_dim) {
  const FinGroupoid& x = *base;
  std::vector<Representation> rho;
  for (std::size_t c = 0; c < x.component_count(); ++c) rho.push_back(random_representation(rng, x.vertex_group(c), max_dim));
  std::vector<ExactMatrix> t;
  for (std::size_t o = 0; o < x.object_count(); ++o) {
    std::size_t c = x.component_of(o), d = rho[c][0].rows();
    t.push_back(o == x.base(c) ? ExactMatrix::identity(d) : random_invertible(rng, d));
  }
  return make_system(LocalSystem(base, std::move(rho), std::move(t)));
}

std::vector<ExactMatrix> random_decoration(Rng& rng, const GroupoidFunctor& s, const GroupoidFunctor& t,
                                           const LocalSystem& la, const LocalSystem& lb) {
  auto basis = natural_decorations(s, t, la, lb);
  std::vector<ExactMatrix> out;
  const FinGroupoid& x = *s.source();
  for (std::size_t o = 0; o < x.object_count(); ++o) out.emplace_back(lb.dim_at(t.object(o)), la.dim_at(s.object(o)));
  for (auto& b : basis) {
    auto c = random_rational(rng);
    for (std::size_t o = 0; o < out.size(); ++o) out[o] += b[o] * c;
  }
  return out;
}

DecoratedSpan random_span(Rng& rng, const LocalSystemPtr& la, const LocalSystemPtr& lb) {
  auto x = random_groupoid(rng, 2, 5);
  auto s = random_functor(rng, x, la->base());
  auto t = random_functor(rng, x, lb->base());
  auto alpha = random_decoration(rng, s, t, *la, *lb);
  return DecoratedSpan(s, t, la, lb, std::move(alpha));
}

}  // namespace pifin::testkit
