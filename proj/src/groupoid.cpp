#include "pifin/groupoid.hpp"

#include <algorithm>
#include <numeric>

#include "pifin/error.hpp"

namespace pifin {

namespace {
constexpr Elem kNoElem = static_cast<Elem>(-1);
constexpr std::size_t kNone = static_cast<std::size_t>(-1);
}  // namespace

FinGroupoid::FinGroupoid(std::vector<GroupoidComponent> comps) : comps_(std::move(comps)) {
  std::size_t n = 0;
  for (auto& c : comps_) {
    if (!c.group) throw ValidationError("groupoid component without a vertex group");
    if (c.objects.empty()) throw ValidationError("groupoid component without objects");
    n += c.objects.size();
  }
  comp_of_.assign(n, kNone);
  for (std::size_t c = 0; c < comps_.size(); ++c)
    for (auto x : comps_[c].objects) {
      if (x >= n || comp_of_[x] != kNone) throw ValidationError("groupoid components do not partition the objects");
      comp_of_[x] = c;
    }
}

FinGroupoid FinGroupoid::point() { return FinGroupoid({{make_group(FinGroup()), {0}}}); }

FinGroupoid FinGroupoid::classifying(GroupPtr g) { return FinGroupoid({{std::move(g), {0}}}); }

FinGroupoid FinGroupoid::discrete(std::size_t n) {
  auto triv = make_group(FinGroup());
  std::vector<GroupoidComponent> cs;
  for (std::size_t i = 0; i < n; ++i) cs.push_back({triv, {i}});
  return FinGroupoid(std::move(cs));
}

GroupoidPtr make_groupoid(FinGroupoid g) { return std::make_shared<const FinGroupoid>(std::move(g)); }

std::size_t FinGroupoid::morphism_count() const {
  std::size_t n = 0;
  for (auto& c : comps_) n += c.objects.size() * c.objects.size() * c.group->order();
  return n;
}

Morphism FinGroupoid::compose(const Morphism& f, const Morphism& g) const {
  if (g.tgt != f.src) throw ValidationError("composing non-composable morphisms");
  return {g.src, f.tgt, group_at(f.src).mul(f.h, g.h)};
}

Morphism FinGroupoid::inverse(const Morphism& f) const { return {f.tgt, f.src, group_at(f.src).inv(f.h)}; }

std::vector<Morphism> FinGroupoid::hom(std::size_t x, std::size_t y) const {
  std::vector<Morphism> out;
  if (!connected(x, y)) return out;
  for (Elem h = 0; h < group_at(x).order(); ++h) out.push_back({x, y, h});
  return out;
}

Rational FinGroupoid::cardinality_at(std::size_t x) const {
  return Rational(1, static_cast<unsigned long>(group_at(x).order()));
}

Rational FinGroupoid::total_cardinality() const {
  Rational s = 0;
  for (auto& c : comps_) s += Rational(1, static_cast<unsigned long>(c.group->order()));
  s.canonicalize();
  return s;
}

Rational pi_cardinality(const std::vector<unsigned long>& orders) {
  Rational r = 1;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (orders[i] == 0) throw ValidationError("homotopy group orders must be positive");
    if (i % 2 == 0)
      r /= orders[i];
    else
      r *= orders[i];
  }
  r.canonicalize();
  return r;
}

GroupoidFunctor::GroupoidFunctor(GroupoidPtr src, GroupoidPtr tgt, std::vector<std::size_t> objects,
                                 std::vector<Elem> transport, std::vector<GroupHom> local)
    : src_(std::move(src)), tgt_(std::move(tgt)), obj_(std::move(objects)), k_(std::move(transport)), phi_(std::move(local)) {
  const FinGroupoid& x = *src_;
  const FinGroupoid& y = *tgt_;
  if (obj_.size() != x.object_count() || k_.size() != x.object_count() || phi_.size() != x.component_count())
    throw ValidationError("functor data has wrong size");
  for (std::size_t c = 0; c < x.component_count(); ++c) {
    const auto& comp = x.component(c);
    if (obj_[comp.objects[0]] >= y.object_count()) throw ValidationError("functor object image out of range");
    std::size_t cy = y.component_of(obj_[comp.objects[0]]);
    const FinGroup& h = y.vertex_group(cy);
    for (auto o : comp.objects) {
      if (obj_[o] >= y.object_count() || y.component_of(obj_[o]) != cy)
        throw ValidationError("functor sends a connected pair of objects to different components");
      if (k_[o] >= h.order()) throw ValidationError("functor transport element out of range");
    }
    if (k_[comp.objects[0]] != h.identity()) throw ValidationError("functor does not preserve the identity at a base object");
    const FinGroup& g = *comp.group;
    const GroupHom& p = phi_[c];
    if (p.size() != g.order()) throw ValidationError("functor vertex map has wrong size");
    for (auto v : p)
      if (v >= h.order()) throw ValidationError("functor vertex map out of range");
    for (Elem a = 0; a < g.order(); ++a)
      for (Elem b = 0; b < g.order(); ++b)
        if (p[g.mul(a, b)] != h.mul(p[a], p[b]))
          throw ValidationError("functor does not preserve composition in component " + std::to_string(c));
  }
}

GroupoidFunctor GroupoidFunctor::from_map(GroupoidPtr src, GroupoidPtr tgt,
                                          const std::function<Morphism(const Morphism&)>& f) {
  const FinGroupoid& x = *src;
  std::vector<std::size_t> obj(x.object_count());
  std::vector<Elem> k(x.object_count());
  std::vector<GroupHom> phi(x.component_count());
  for (std::size_t c = 0; c < x.component_count(); ++c) {
    const auto& comp = x.component(c);
    std::size_t b = comp.objects[0];
    Morphism idb = f(x.identity(b));
    if (idb.src != idb.tgt) throw ValidationError("functor sends an identity to a non-endomorphism");
    for (auto o : comp.objects) {
      Morphism m = f(x.connecting(o));
      if (m.src != idb.src) throw ValidationError("functor does not respect sources");
      obj[o] = m.tgt;
      k[o] = m.h;
    }
    phi[c].resize(comp.group->order());
    for (Elem h = 0; h < comp.group->order(); ++h) {
      Morphism m = f({b, b, h});
      if (m.src != idb.src || m.tgt != idb.src) throw ValidationError("functor does not respect endpoints");
      phi[c][h] = m.h;
    }
  }
  return GroupoidFunctor(std::move(src), std::move(tgt), std::move(obj), std::move(k), std::move(phi));
}

GroupoidFunctor GroupoidFunctor::identity(GroupoidPtr x) {
  std::vector<std::size_t> obj(x->object_count());
  std::iota(obj.begin(), obj.end(), 0);
  std::vector<Elem> k(x->object_count());
  for (std::size_t o = 0; o < k.size(); ++o) k[o] = x->group_at(o).identity();
  std::vector<GroupHom> phi;
  for (std::size_t c = 0; c < x->component_count(); ++c) {
    GroupHom p(x->vertex_group(c).order());
    std::iota(p.begin(), p.end(), 0);
    phi.push_back(std::move(p));
  }
  return GroupoidFunctor(x, x, std::move(obj), std::move(k), std::move(phi));
}

GroupoidFunctor GroupoidFunctor::constant(GroupoidPtr src, GroupoidPtr tgt, std::size_t object) {
  Elem e = tgt->group_at(object).identity();
  std::vector<GroupHom> phi;
  for (std::size_t c = 0; c < src->component_count(); ++c) phi.emplace_back(src->vertex_group(c).order(), e);
  std::size_t n = src->object_count();
  return GroupoidFunctor(std::move(src), std::move(tgt), std::vector<std::size_t>(n, object), std::vector<Elem>(n, e),
                         std::move(phi));
}

std::size_t GroupoidFunctor::component_image(std::size_t c) const {
  return tgt_->component_of(obj_[src_->base(c)]);
}

Morphism GroupoidFunctor::operator()(const Morphism& m) const {
  std::size_t c = src_->component_of(m.src);
  const FinGroup& h = tgt_->group_at(obj_[m.src]);
  return {obj_[m.src], obj_[m.tgt], h.mul(h.mul(k_[m.tgt], phi_[c][m.h]), h.inv(k_[m.src]))};
}

bool operator==(const GroupoidFunctor& a, const GroupoidFunctor& b) {
  return a.obj_ == b.obj_ && a.k_ == b.k_ && a.phi_ == b.phi_ &&
         a.tgt_->object_count() == b.tgt_->object_count() && a.src_->object_count() == b.src_->object_count();
}

GroupoidFunctor compose(const GroupoidFunctor& g, const GroupoidFunctor& f) {
  if (f.target()->object_count() != g.source()->object_count()) throw ValidationError("functors are not composable");
  return GroupoidFunctor::from_map(f.source(), g.target(), [&](const Morphism& m) { return g(f(m)); });
}

ElementsGroupoid::ElementsGroupoid(GroupoidPtr base, const std::vector<SetAction>& actions)
    : base_(std::move(base)), actions_(actions) {
  const FinGroupoid& b = *base_;
  if (actions_.size() != b.component_count()) throw DimensionMismatch("one set action per component is required");
  trans_.resize(b.component_count());
  orbit_.resize(b.component_count());

  struct Orbit {
    std::size_t base_comp;
    std::vector<std::size_t> elems;
    GroupPtr stab;
    std::vector<Elem> embed;
  };
  std::vector<Orbit> orbits;
  for (std::size_t c = 0; c < b.component_count(); ++c) {
    const FinGroup& g = b.vertex_group(c);
    const std::size_t n = actions_[c].size;
    const auto& act = actions_[c].act;
    auto gens = g.generators();
    trans_[c].assign(n, kNoElem);
    orbit_[c].assign(n, kNone);
    for (std::size_t r = 0; r < n; ++r) {
      if (orbit_[c][r] != kNone) continue;
      Orbit o;
      o.base_comp = c;
      std::size_t rc = orbits.size();
      orbit_[c][r] = rc;
      trans_[c][r] = g.identity();
      o.elems.push_back(r);
      for (std::size_t q = 0; q < o.elems.size(); ++q) {
        std::size_t j = o.elems[q];
        for (Elem s : gens) {
          std::size_t k = act(s, j);
          if (k >= n) throw ValidationError("set action out of range");
          if (orbit_[c][k] == kNone) {
            orbit_[c][k] = rc;
            trans_[c][k] = g.mul(s, trans_[c][j]);
            o.elems.push_back(k);
          }
        }
      }
      std::sort(o.elems.begin(), o.elems.end());
      std::vector<Elem> stab;
      for (Elem h = 0; h < g.order(); ++h)
        if (act(h, r) == r) stab.push_back(h);
      o.stab = make_group(FinGroup::subgroup(g, stab, &o.embed));
      orbits.push_back(std::move(o));
    }
  }

  offset_.assign(b.object_count(), 0);
  std::size_t total = 0;
  for (std::size_t x = 0; x < b.object_count(); ++x) {
    offset_[x] = total;
    total += actions_[b.component_of(x)].size;
  }
  label_.resize(total);
  for (std::size_t x = 0; x < b.object_count(); ++x)
    for (std::size_t i = 0; i < actions_[b.component_of(x)].size; ++i) label_[offset_[x] + i] = {x, i};

  std::vector<GroupoidComponent> comps;
  sub_index_.resize(orbits.size());
  for (std::size_t rc = 0; rc < orbits.size(); ++rc) {
    auto& o = orbits[rc];
    GroupoidComponent gc;
    gc.group = o.stab;
    for (auto x : b.component(o.base_comp).objects)
      for (auto i : o.elems) gc.objects.push_back(offset_[x] + i);
    comps.push_back(std::move(gc));
    sub_index_[rc].assign(b.vertex_group(o.base_comp).order(), kNoElem);
    for (std::size_t s = 0; s < o.embed.size(); ++s) sub_index_[rc][o.embed[s]] = static_cast<Elem>(s);
  }
  g_ = make_groupoid(FinGroupoid(std::move(comps)));

  std::vector<std::size_t> obj(total);
  std::vector<Elem> k(total);
  for (std::size_t o = 0; o < total; ++o) {
    auto [x, i] = label_[o];
    obj[o] = x;
    k[o] = trans_[b.component_of(x)][i];
  }
  std::vector<GroupHom> phi;
  for (auto& o : orbits) phi.push_back(o.embed);
  proj_.emplace(g_, base_, std::move(obj), std::move(k), std::move(phi));
}

std::size_t ElementsGroupoid::object(std::size_t x, std::size_t i) const {
  if (i >= actions_[base_->component_of(x)].size) return npos;
  return offset_[x] + i;
}

Morphism ElementsGroupoid::lift(const Morphism& m, std::size_t i) const {
  std::size_t c = base_->component_of(m.src);
  const FinGroup& g = base_->vertex_group(c);
  std::size_t j = actions_[c].act(m.h, i);
  Elem s = g.mul(g.mul(g.inv(trans_[c][j]), m.h), trans_[c][i]);
  Elem idx = sub_index_[orbit_[c][i]][s];
  if (idx == kNoElem) throw Error("lift left the stabilizer");
  return {offset_[m.src] + i, offset_[m.tgt] + j, idx};
}

HomotopyFiber homotopy_fiber(const GroupoidFunctor& f, std::size_t a) {
  const FinGroupoid& x = *f.source();
  const FinGroupoid& ag = *f.target();
  if (a >= ag.object_count()) throw ValidationError("fiber point out of range");
  const std::size_t ca = ag.component_of(a);
  const FinGroup& ga = ag.vertex_group(ca);
  std::vector<SetAction> acts(x.component_count());
  for (std::size_t c = 0; c < x.component_count(); ++c) {
    if (f.component_image(c) != ca) continue;
    const GroupHom* phi = &f.local(c);
    acts[c].size = ga.order();
    acts[c].act = [phi, &ga](Elem h, std::size_t u) { return static_cast<std::size_t>(ga.mul((*phi)[h], static_cast<Elem>(u))); };
  }
  ElementsGroupoid el(f.source(), acts);
  HomotopyFiber out;
  out.groupoid = el.groupoid();
  out.inclusion.emplace(el.projection());
  out.gamma.resize(out.groupoid->object_count());
  for (std::size_t o = 0; o < out.gamma.size(); ++o) {
    std::size_t xo = el.base_object(o);
    out.gamma[o] = {a, f.object(xo), ga.mul(f.transport(xo), static_cast<Elem>(el.element(o)))};
  }
  return out;
}

ProductGroupoid product(const GroupoidPtr& a, const GroupoidPtr& b) {
  const std::size_t nb = b->object_count();
  std::vector<GroupoidComponent> comps;
  for (std::size_t c1 = 0; c1 < a->component_count(); ++c1)
    for (std::size_t c2 = 0; c2 < b->component_count(); ++c2) {
      GroupoidComponent gc;
      gc.group = make_group(FinGroup::direct_product(a->vertex_group(c1), b->vertex_group(c2)));
      for (auto x : a->component(c1).objects)
        for (auto y : b->component(c2).objects) gc.objects.push_back(x * nb + y);
      comps.push_back(std::move(gc));
    }
  ProductGroupoid p;
  p.groupoid = make_groupoid(FinGroupoid(std::move(comps)));
  p.left_factor = a;
  p.right_factor = b;
  const std::size_t n = p.groupoid->object_count();
  std::vector<std::size_t> o1(n), o2(n);
  std::vector<Elem> k1(n), k2(n);
  for (std::size_t o = 0; o < n; ++o) {
    o1[o] = o / nb;
    o2[o] = o % nb;
    k1[o] = a->group_at(o1[o]).identity();
    k2[o] = b->group_at(o2[o]).identity();
  }
  std::vector<GroupHom> phi1, phi2;
  for (std::size_t c1 = 0; c1 < a->component_count(); ++c1)
    for (std::size_t c2 = 0; c2 < b->component_count(); ++c2) {
      std::size_t m = b->vertex_group(c2).order(), order = a->vertex_group(c1).order() * m;
      GroupHom h1(order), h2(order);
      for (std::size_t h = 0; h < order; ++h) {
        h1[h] = static_cast<Elem>(h / m);
        h2[h] = static_cast<Elem>(h % m);
      }
      phi1.push_back(std::move(h1));
      phi2.push_back(std::move(h2));
    }
  p.first.emplace(p.groupoid, a, std::move(o1), std::move(k1), std::move(phi1));
  p.second.emplace(p.groupoid, b, std::move(o2), std::move(k2), std::move(phi2));
  return p;
}

Morphism pair_morphism(const ProductGroupoid& p, const Morphism& m1, const Morphism& m2) {
  const std::size_t nb = p.right_factor->object_count();
  const std::size_t m = p.right_factor->group_at(m2.src).order();
  return {m1.src * nb + m2.src, m1.tgt * nb + m2.tgt, static_cast<Elem>(m1.h * m + m2.h)};
}

GroupoidFunctor product_functor(const ProductGroupoid& src, const ProductGroupoid& tgt, const GroupoidFunctor& f1,
                                const GroupoidFunctor& f2) {
  return GroupoidFunctor::from_map(src.groupoid, tgt.groupoid, [&](const Morphism& m) {
    return pair_morphism(tgt, f1((*src.first)(m)), f2((*src.second)(m)));
  });
}

HomotopyPullback homotopy_pullback(const GroupoidFunctor& f, const GroupoidFunctor& g) {
  if (f.target()->object_count() != g.target()->object_count() ||
      f.target()->component_count() != g.target()->component_count())
    throw ValidationError("pullback of functors with different codomains");
  const FinGroupoid& a = *f.target();
  auto prod = product(f.source(), g.source());
  const FinGroupoid& x = *f.source();
  const FinGroupoid& y = *g.source();
  std::vector<SetAction> acts(prod.groupoid->component_count());
  for (std::size_t c1 = 0; c1 < x.component_count(); ++c1)
    for (std::size_t c2 = 0; c2 < y.component_count(); ++c2) {
      std::size_t ca = f.component_image(c1);
      if (g.component_image(c2) != ca) continue;
      const FinGroup* h = &a.vertex_group(ca);
      const GroupHom* pf = &f.local(c1);
      const GroupHom* pg = &g.local(c2);
      std::size_t m = y.vertex_group(c2).order();
      auto& s = acts[c1 * y.component_count() + c2];
      s.size = h->order();
      s.act = [h, pf, pg, m](Elem hh, std::size_t u) {
        Elem h1 = static_cast<Elem>(hh / m), h2 = static_cast<Elem>(hh % m);
        return static_cast<std::size_t>(h->mul(h->mul((*pg)[h2], static_cast<Elem>(u)), h->inv((*pf)[h1])));
      };
    }
  ElementsGroupoid el(prod.groupoid, acts);
  HomotopyPullback out;
  out.groupoid = el.groupoid();
  out.left.emplace(compose(*prod.first, el.projection()));
  out.right.emplace(compose(*prod.second, el.projection()));
  out.gamma.resize(out.groupoid->object_count());
  const std::size_t ny = y.object_count();
  for (std::size_t o = 0; o < out.gamma.size(); ++o) {
    std::size_t po = el.base_object(o);
    std::size_t xo = po / ny, yo = po % ny;
    const FinGroup& h = a.group_at(f.object(xo));
    Elem u = static_cast<Elem>(el.element(o));
    out.gamma[o] = {f.object(xo), g.object(yo), h.mul(h.mul(g.transport(yo), u), h.inv(f.transport(xo)))};
  }
  return out;
}

GroupoidPtr full_subgroupoid(const FinGroupoid& x, const std::vector<std::size_t>& comps,
                             std::vector<std::size_t>* objects) {
  std::vector<GroupoidComponent> out;
  std::vector<std::size_t> old;
  for (auto c : comps) {
    if (c >= x.component_count()) throw ValidationError("component index out of range");
    GroupoidComponent gc;
    gc.group = x.component(c).group;
    for (auto o : x.component(c).objects) {
      gc.objects.push_back(old.size());
      old.push_back(o);
    }
    out.push_back(std::move(gc));
  }
  if (objects) *objects = old;
  return make_groupoid(FinGroupoid(std::move(out)));
}

ActionGroupoid action_groupoid(GroupPtr g, std::size_t set_size, const std::function<std::size_t(Elem, std::size_t)>& act) {
  auto base = make_groupoid(FinGroupoid::classifying(g));
  for (Elem a = 0; a < g->order(); ++a)
    for (Elem b = 0; b < g->order(); ++b)
      for (std::size_t i = 0; i < set_size; ++i)
        if (act(g->mul(a, b), i) != act(a, act(b, i))) throw ValidationError("not a left group action");
  ActionGroupoid out;
  out.elements = std::make_shared<ElementsGroupoid>(base, std::vector<SetAction>{{set_size, act}});
  out.groupoid = out.elements->groupoid();
  return out;
}

NormalizedGroupoid normalize(const ExplicitGroupoid& e) {
  const std::size_t n = e.objects, m = e.morphisms.size();
  auto fail = [](const std::string& what) { throw ValidationError("groupoid: " + what); };
  for (std::size_t f = 0; f < m; ++f)
    if (e.morphisms[f].first >= n || e.morphisms[f].second >= n) fail("morphism " + std::to_string(f) + " endpoint out of range");
  if (e.identity.size() != n) fail("identity list has wrong length");
  for (std::size_t x = 0; x < n; ++x) {
    auto i = e.identity[x];
    if (i >= m || e.morphisms[i].first != x || e.morphisms[i].second != x) fail("identity of object " + std::to_string(x) + " is not an endomorphism of it");
  }
  if (e.compose.size() != m) fail("compose table has wrong number of rows");
  for (std::size_t f = 0; f < m; ++f) {
    if (e.compose[f].size() != m) fail("compose row " + std::to_string(f) + " has wrong length");
    for (std::size_t g = 0; g < m; ++g) {
      bool composable = e.morphisms[g].second == e.morphisms[f].first;
      const auto& r = e.compose[f][g];
      if (composable != r.has_value())
        fail("compose[" + std::to_string(f) + "][" + std::to_string(g) + "] defined on the wrong pairs");
      if (r && (*r >= m || e.morphisms[*r].first != e.morphisms[g].first || e.morphisms[*r].second != e.morphisms[f].second))
        fail("compose[" + std::to_string(f) + "][" + std::to_string(g) + "] has wrong endpoints");
    }
  }
  for (std::size_t f = 0; f < m; ++f) {
    if (*e.compose[f][e.identity[e.morphisms[f].first]] != f || *e.compose[e.identity[e.morphisms[f].second]][f] != f)
      fail("identity law fails at morphism " + std::to_string(f));
  }
  for (std::size_t f = 0; f < m; ++f)
    for (std::size_t g = 0; g < m; ++g) {
      if (!e.compose[f][g]) continue;
      for (std::size_t h = 0; h < m; ++h) {
        if (!e.compose[g][h]) continue;
        if (e.compose[*e.compose[f][g]][h] != e.compose[f][*e.compose[g][h]])
          fail("associativity fails at (" + std::to_string(f) + "," + std::to_string(g) + "," + std::to_string(h) + ")");
      }
    }
  std::vector<std::size_t> inv(m, kNone);
  for (std::size_t f = 0; f < m; ++f) {
    auto [s, t] = e.morphisms[f];
    for (std::size_t g = 0; g < m && inv[f] == kNone; ++g)
      if (e.morphisms[g].first == t && e.morphisms[g].second == s && *e.compose[g][f] == e.identity[s] &&
          *e.compose[f][g] == e.identity[t])
        inv[f] = g;
    if (inv[f] == kNone) fail("morphism " + std::to_string(f) + " has no inverse");
  }

  // components, base = smallest object, connecting arrow = first morphism base -> x
  std::vector<std::size_t> comp(n, kNone), conn(n, kNone);
  std::vector<std::size_t> bases;
  for (std::size_t x = 0; x < n; ++x) {
    if (comp[x] != kNone) continue;
    std::size_t c = bases.size();
    bases.push_back(x);
    for (std::size_t f = 0; f < m; ++f)
      if (e.morphisms[f].first == x && conn[e.morphisms[f].second] == kNone) {
        conn[e.morphisms[f].second] = f;
        comp[e.morphisms[f].second] = c;
      }
    conn[x] = e.identity[x];
  }
  std::vector<GroupoidComponent> comps(bases.size());
  std::vector<std::vector<std::size_t>> auts(bases.size());
  std::vector<std::vector<Elem>> aut_index(bases.size(), std::vector<Elem>(m, kNoElem));
  for (std::size_t c = 0; c < bases.size(); ++c) {
    std::size_t b = bases[c];
    for (std::size_t f = 0; f < m; ++f)
      if (e.morphisms[f].first == b && e.morphisms[f].second == b) {
        aut_index[c][f] = static_cast<Elem>(auts[c].size());
        auts[c].push_back(f);
      }
    std::vector<std::vector<Elem>> t(auts[c].size(), std::vector<Elem>(auts[c].size()));
    for (std::size_t i = 0; i < auts[c].size(); ++i)
      for (std::size_t j = 0; j < auts[c].size(); ++j) t[i][j] = aut_index[c][*e.compose[auts[c][i]][auts[c][j]]];
    comps[c].group = make_group(FinGroup::from_table(t));
    comps[c].objects.push_back(b);
  }
  for (std::size_t x = 0; x < n; ++x)
    if (x != bases[comp[x]]) comps[comp[x]].objects.push_back(x);
  NormalizedGroupoid out;
  out.groupoid = make_groupoid(FinGroupoid(comps));
  for (std::size_t f = 0; f < m; ++f) {
    auto [s, t] = e.morphisms[f];
    std::size_t c = comp[s];
    std::size_t h = *e.compose[inv[conn[t]]][*e.compose[f][conn[s]]];
    out.morphisms.push_back({s, t, aut_index[c][h]});
  }
  return out;
}

ExactMatrix path_integral(const FinGroupoid& x, const std::vector<ExactMatrix>& alpha) {
  if (alpha.size() != x.component_count()) throw DimensionMismatch("integrand must have one value per component");
  if (alpha.empty()) return ExactMatrix();
  ExactMatrix s(alpha[0].rows(), alpha[0].cols());
  for (std::size_t c = 0; c < alpha.size(); ++c) {
    if (alpha[c].rows() != s.rows() || alpha[c].cols() != s.cols())
      throw DimensionMismatch("integrand values have different shapes");
    s += alpha[c] * Cyclotomic(Rational(1, static_cast<unsigned long>(x.vertex_group(c).order())));
  }
  return s;
}

FubiniReport fubini_check(const GroupoidFunctor& s, const std::vector<ExactMatrix>& alpha) {
  const FinGroupoid& x = *s.source();
  const FinGroupoid& a = *s.target();
  FubiniReport r;
  r.direct = path_integral(x, alpha);
  r.iterated = ExactMatrix(r.direct.rows(), r.direct.cols());
  for (std::size_t ca = 0; ca < a.component_count(); ++ca) {
    auto fib = homotopy_fiber(s, a.base(ca));
    std::vector<ExactMatrix> inner;
    for (std::size_t k = 0; k < fib.groupoid->component_count(); ++k)
      inner.push_back(alpha[x.component_of(fib.inclusion->object(fib.groupoid->base(k)))]);
    if (inner.empty()) continue;
    r.iterated += path_integral(*fib.groupoid, inner) *
                  Cyclotomic(Rational(1, static_cast<unsigned long>(a.vertex_group(ca).order())));
  }
  r.equal = r.direct == r.iterated;
  return r;
}

bool equivalent(const FinGroupoid& a, const FinGroupoid& b) {
  if (a.component_count() != b.component_count()) return false;
  std::vector<bool> used(b.component_count(), false);
  for (std::size_t c = 0; c < a.component_count(); ++c) {
    bool found = false;
    for (std::size_t d = 0; d < b.component_count() && !found; ++d)
      if (!used[d] && isomorphic(a.vertex_group(c), b.vertex_group(d))) {
        used[d] = true;
        found = true;
      }
    if (!found) return false;
  }
  return true;
}

}  // namespace pifin
