#include "pifin/pairing.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "pifin/error.hpp"
#include "pifin/span.hpp"

namespace pifin {

WeightedCategory::WeightedCategory(std::vector<std::string> objects, std::vector<WeightedMorphism> morphisms,
                                   std::vector<long> identities, std::vector<std::vector<long>> compose)
    : labels_(std::move(objects)), mors_(std::move(morphisms)), ids_(std::move(identities)) {
  const std::size_t n = labels_.size(), m = mors_.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (mors_[i].src >= n || mors_[i].tgt >= n) throw ValidationError("morphism " + std::to_string(i) + ": bad endpoint");
    if (mors_[i].weight <= 0) throw ValidationError("morphism " + std::to_string(i) + ": weight must be positive");
  }
  if (!ids_.empty()) {
    if (ids_.size() != n) throw ValidationError("identities: expected one entry per object");
    for (std::size_t a = 0; a < n; ++a) {
      long id = ids_[a];
      if (id == kUnknown) continue;
      if (id < 0 || static_cast<std::size_t>(id) >= m || mors_[id].src != a || mors_[id].tgt != a)
        throw ValidationError("identity of object " + std::to_string(a) + " is not an endomorphism");
    }
  }
  if (!compose.empty()) {
    if (compose.size() != m) throw ValidationError("compose: expected one row per morphism");
    for (std::size_t g = 0; g < m; ++g) {
      if (compose[g].size() != m) throw ValidationError("compose: row " + std::to_string(g) + " has wrong length");
      for (std::size_t f = 0; f < m; ++f) {
        long h = compose[g][f];
        if (h == kUnknown || mors_[f].tgt != mors_[g].src) continue;
        if (h < 0 || static_cast<std::size_t>(h) >= m || mors_[h].src != mors_[f].src || mors_[h].tgt != mors_[g].tgt)
          throw ValidationError("compose[" + std::to_string(g) + "][" + std::to_string(f) + "] has wrong endpoints");
      }
    }
    comp_ = [t = std::move(compose)](std::size_t g, std::size_t f) { return t[g][f]; };
  }
  index_homs();
}

void WeightedCategory::index_homs() {
  const std::size_t n = labels_.size();
  homs_.assign(n * n, {});
  for (std::size_t i = 0; i < mors_.size(); ++i) homs_[mors_[i].src * n + mors_[i].tgt].push_back(i);
  origin_.resize(mors_.size());
}

WeightedCategory WeightedCategory::from_category(const CategoryPtr& c) {
  WeightedCategory w;
  const std::size_t n = c->object_count();
  std::vector<std::size_t> offset(n * n + 1, 0);
  for (std::size_t a = 0; a < n; ++a) {
    w.labels_.push_back(c->object_label(a));
    for (std::size_t b = 0; b < n; ++b) offset[a * n + b + 1] = offset[a * n + b] + c->hom_size(a, b);
  }
  w.mors_.reserve(offset.back());
  std::vector<std::optional<CatMorphism>> origin;
  origin.reserve(offset.back());
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t i = 0; i < c->hom_size(a, b); ++i) {
        w.mors_.push_back({a, b, 1, ""});
        origin.push_back(CatMorphism{a, b, i});
      }
  for (std::size_t a = 0; a < n; ++a) w.ids_.push_back(static_cast<long>(offset[a * n + a] + c->identity(a)));
  w.index_homs();
  w.origin_ = std::move(origin);
  // composition and isomorphism through the underlying category
  auto origins = std::make_shared<std::vector<std::optional<CatMorphism>>>(w.origin_);
  w.comp_ = [c, offset, n, origins](std::size_t g, std::size_t f) -> long {
    const auto& of = *(*origins)[f];
    const auto& og = *(*origins)[g];
    if (of.tgt != og.src) return kUnknown;
    std::size_t h = c->compose(of.src, of.tgt, og.tgt, og.index, of.index);
    return static_cast<long>(offset[of.src * n + og.tgt] + h);
  };
  w.iso_ = [c, origins](std::size_t m) {
    const auto& o = *(*origins)[m];
    return c->is_iso(o.src, o.tgt, o.index);
  };
  return w;
}

WeightedCategory WeightedCategory::from_groupoid(const FinGroupoid& g) {
  const std::size_t n = g.object_count();
  std::vector<std::string> labels;
  std::vector<WeightedMorphism> mors;
  std::map<std::tuple<std::size_t, std::size_t, Elem>, long> index;
  for (std::size_t x = 0; x < n; ++x) {
    labels.push_back(std::to_string(x));
    for (std::size_t y = 0; y < n; ++y)
      for (const auto& m : g.hom(x, y)) {
        index.emplace(std::make_tuple(x, y, m.h), static_cast<long>(mors.size()));
        mors.push_back({x, y, 1, ""});
      }
  }
  std::vector<Morphism> arrows;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (const auto& m : g.hom(x, y)) arrows.push_back(m);
  std::vector<long> ids;
  for (std::size_t x = 0; x < n; ++x) ids.push_back(index.at({x, x, g.identity(x).h}));
  std::vector<std::vector<long>> table(mors.size(), std::vector<long>(mors.size(), kUnknown));
  for (std::size_t f = 0; f < arrows.size(); ++f)
    for (std::size_t h = 0; h < arrows.size(); ++h) {
      if (arrows[f].tgt != arrows[h].src) continue;
      auto c = g.compose(arrows[h], arrows[f]);
      table[h][f] = index.at({c.src, c.tgt, c.h});
    }
  return WeightedCategory(std::move(labels), std::move(mors), std::move(ids), std::move(table));
}

namespace {

GroupHom conjugate_hom(const FinGroup& g, const GroupHom& f, Elem x) {
  GroupHom out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = g.conj(x, f[i]);
  return out;
}

GroupHom canonical_hom(const FinGroup& g, const GroupHom& f) {
  GroupHom best = f;
  for (Elem x = 0; x < g.order(); ++x) best = std::min(best, conjugate_hom(g, f, x));
  return best;
}

std::vector<Elem> image_of(const GroupHom& f) {
  std::vector<Elem> im(f.begin(), f.end());
  std::sort(im.begin(), im.end());
  im.erase(std::unique(im.begin(), im.end()), im.end());
  return im;
}

}  // namespace

WeightedCategory WeightedCategory::group_types(const std::vector<NamedGroup>& groups) {
  WeightedCategory w;
  const std::size_t n = groups.size();
  for (const auto& ng : groups) {
    w.labels_.push_back("B" + ng.name);
    w.groups_.push_back(make_group(ng.group));
  }
  std::vector<std::map<GroupHom, std::size_t>> index(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const FinGroup& h = *w.groups_[a];
      const FinGroup& g = *w.groups_[b];
      for (const auto& f : homomorphisms(h, g)) {
        GroupHom can = canonical_hom(g, f);
        auto& idx = index[a * n + b];
        if (idx.count(can)) continue;
        idx.emplace(can, w.mors_.size());
        Rational weight(1, static_cast<long>(g.centralizer(image_of(can)).size()));
        w.mors_.push_back({a, b, weight, ""});
        w.reps_.push_back(can);
      }
    }
  for (std::size_t a = 0; a < n; ++a) {
    GroupHom id(w.groups_[a]->order());
    for (Elem x = 0; x < id.size(); ++x) id[x] = x;
    w.ids_.push_back(static_cast<long>(index[a * n + a].at(id)));
  }
  const std::size_t m = w.mors_.size();
  std::vector<std::vector<long>> table(m, std::vector<long>(m, kUnknown));
  for (std::size_t f = 0; f < m; ++f)
    for (std::size_t g = 0; g < m; ++g) {
      if (w.mors_[f].tgt != w.mors_[g].src) continue;
      const auto& rf = w.reps_[f];
      const auto& rg = w.reps_[g];
      GroupHom gf(rf.size());
      for (std::size_t x = 0; x < rf.size(); ++x) gf[x] = rg[rf[x]];
      std::size_t c = w.mors_[g].tgt;
      table[g][f] = static_cast<long>(index[w.mors_[f].src * n + c].at(canonical_hom(*w.groups_[c], gf)));
    }
  w.comp_ = [t = std::move(table)](std::size_t g, std::size_t f) { return t[g][f]; };
  w.index_homs();
  // bijective representatives are exactly the invertible classes
  auto reps = std::make_shared<std::vector<GroupHom>>(w.reps_);
  auto orders = std::make_shared<std::vector<std::size_t>>();
  for (const auto& g : w.groups_) orders->push_back(g->order());
  auto mors = std::make_shared<std::vector<WeightedMorphism>>(w.mors_);
  w.iso_ = [reps, orders, mors](std::size_t f) {
    const auto& mf = (*mors)[f];
    return (*orders)[mf.src] == (*orders)[mf.tgt] && image_of((*reps)[f]).size() == (*orders)[mf.tgt];
  };
  return w;
}

long WeightedCategory::compose(std::size_t g, std::size_t f) const {
  if (mors_[f].tgt != mors_[g].src) throw DimensionMismatch("compose: morphisms are not composable");
  return comp_ ? comp_(g, f) : kUnknown;
}

bool WeightedCategory::is_iso(std::size_t m) const {
  if (iso_) return iso_(m);
  const auto& mm = mors_[m];
  long ia = identity(mm.src), ib = identity(mm.tgt);
  if (ia == kUnknown || ib == kUnknown)
    throw ValidationError("is_iso: identity unknown at " + labels_[ia == kUnknown ? mm.src : mm.tgt]);
  for (auto g : hom(mm.tgt, mm.src)) {
    long gf = compose(g, m), fg = compose(m, g);
    if (gf == kUnknown || fg == kUnknown) throw ValidationError("is_iso: composition unknown for " + labels_[mm.src]);
    if (gf == ia && fg == ib) return true;
  }
  return false;
}

std::vector<std::size_t> WeightedCategory::automorphisms(std::size_t a) const {
  std::vector<std::size_t> out;
  for (auto m : hom(a, a))
    if (is_iso(m)) out.push_back(m);
  if (out.empty()) throw ValidationError("no automorphisms recorded at " + labels_[a]);
  return out;
}

Rational WeightedCategory::automorphism_cardinality(std::size_t a) const {
  Rational s = 0;
  for (auto m : automorphisms(a)) s += mors_[m].weight;
  return s;
}

bool WeightedCategory::isomorphic(std::size_t a, std::size_t b) const {
  if (a == b) return true;
  for (auto m : hom(a, b))
    if (is_iso(m)) return true;
  return false;
}

std::vector<std::size_t> WeightedCategory::iso_representatives(const std::vector<std::size_t>& objects) const {
  std::vector<std::size_t> reps;
  for (auto o : objects) {
    bool seen = false;
    for (auto r : reps) seen = seen || isomorphic(r, o);
    if (!seen) reps.push_back(o);
  }
  return reps;
}

WeightedCategory WeightedCategory::scaled(const Rational& s) const {
  if (s <= 0) throw ValidationError("scaled: factor must be positive");
  WeightedCategory w = *this;
  for (auto& m : w.mors_) {
    m.weight *= s;
    m.weight.canonicalize();
  }
  return w;
}

WeightedCategory WeightedCategory::core() const {
  std::vector<long> keep_index(mors_.size(), kUnknown);
  std::vector<WeightedMorphism> mors;
  std::vector<std::size_t> kept;
  for (std::size_t m = 0; m < mors_.size(); ++m)
    if (is_iso(m)) {
      keep_index[m] = static_cast<long>(mors.size());
      mors.push_back(mors_[m]);
      kept.push_back(m);
    }
  std::vector<long> ids;
  for (auto id : ids_) ids.push_back(id == kUnknown ? kUnknown : keep_index[id]);
  std::vector<std::vector<long>> table(kept.size(), std::vector<long>(kept.size(), kUnknown));
  for (std::size_t g = 0; g < kept.size(); ++g)
    for (std::size_t f = 0; f < kept.size(); ++f) {
      if (mors_[kept[f]].tgt != mors_[kept[g]].src) continue;
      long h = compose(kept[g], kept[f]);
      table[g][f] = h == kUnknown ? kUnknown : keep_index[h];
    }
  WeightedCategory w(labels_, std::move(mors), std::move(ids), std::move(table));
  for (std::size_t i = 0; i < kept.size(); ++i) w.origin_[i] = origin_[kept[i]];
  if (!groups_.empty()) {
    w.groups_ = groups_;
    for (auto m : kept) w.reps_.push_back(reps_[m]);
  }
  return w;
}

VecFunctor VecFunctor::constant(const WeightedCategory& c) {
  VecFunctor f;
  f.dims.assign(c.object_count(), 1);
  f.maps.assign(c.morphism_count(), ExactMatrix::identity(1));
  return f;
}

VecFunctor VecFunctor::from_cat_functor(const WeightedCategory& c, const CatFunctor& f) {
  VecFunctor out;
  out.dims = f.dims;
  for (std::size_t m = 0; m < c.morphism_count(); ++m) {
    if (!c.origin(m)) throw ValidationError("from_cat_functor: category was not built from a FinCategory");
    out.maps.push_back(f(*c.origin(m)));
  }
  return out;
}

void validate_functor(const WeightedCategory& c, const VecFunctor& f) {
  if (f.dims.size() != c.object_count() || f.maps.size() != c.morphism_count())
    throw DimensionMismatch("functor: wrong number of objects or morphisms");
  for (std::size_t m = 0; m < c.morphism_count(); ++m) {
    const auto& mm = c.morphism(m);
    if (f.maps[m].rows() != f.dims[mm.tgt] || f.maps[m].cols() != f.dims[mm.src])
      throw DimensionMismatch("functor: morphism " + std::to_string(m) + " has the wrong shape");
  }
  for (std::size_t a = 0; a < c.object_count(); ++a) {
    long id = c.identity(a);
    if (id != WeightedCategory::kUnknown && !f.maps[id].is_identity())
      throw ValidationError("functor: identity of " + c.label(a) + " not sent to the identity");
  }
  for (std::size_t f1 = 0; f1 < c.morphism_count(); ++f1)
    for (std::size_t g = 0; g < c.morphism_count(); ++g) {
      if (c.morphism(f1).tgt != c.morphism(g).src) continue;
      long h = c.compose(g, f1);
      if (h == WeightedCategory::kUnknown) continue;
      if (f.maps[h] != f.maps[g] * f.maps[f1])
        throw ValidationError("functor: composition fails for " + std::to_string(g) + " after " + std::to_string(f1));
    }
}

std::vector<long> AbFunctor::apply(const WeightedCategory& c, std::size_t m, const std::vector<long>& x) const {
  const auto& mm = c.morphism(m);
  const FgAbelian& src = values.at(mm.src);
  const FgAbelian& tgt = values.at(mm.tgt);
  if (x.size() != src.ngens()) throw DimensionMismatch("apply: element has wrong length");
  const IntMatrix& a = maps.at(m);
  std::vector<long> y(tgt.ngens());
  for (std::size_t i = 0; i < tgt.ngens(); ++i) {
    Integer s = 0;
    for (std::size_t j = 0; j < x.size(); ++j) s += a[i][j] * x[j];
    long d = tgt.factors()[i];
    if (d > 0) {
      s %= d;
      if (s < 0) s += d;
    }
    y[i] = s.get_si();
  }
  return tgt.reduce(y);
}

namespace {

IntMatrix int_identity(std::size_t n) {
  IntMatrix m(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

std::vector<long> unit_vector(std::size_t n, std::size_t j, long v = 1) {
  std::vector<long> x(n, 0);
  x[j] = v;
  return x;
}

}  // namespace

AbFunctor AbFunctor::trivial(const WeightedCategory& c) { return constant(c, FgAbelian()); }

AbFunctor AbFunctor::constant(const WeightedCategory& c, const FgAbelian& a) {
  AbFunctor om;
  om.values.assign(c.object_count(), a);
  om.maps.assign(c.morphism_count(), int_identity(a.ngens()));
  return om;
}

AbFunctor AbFunctor::abelianization(const WeightedCategory& c) {
  if (!c.has_groups()) throw ValidationError("abelianization needs a group-type category");
  AbFunctor om;
  std::vector<Abelianization> ab;
  for (std::size_t a = 0; a < c.object_count(); ++a) {
    ab.push_back(pifin::abelianization(c.group(a)));
    om.values.push_back(ab.back().structure.group);
  }
  for (std::size_t m = 0; m < c.morphism_count(); ++m) {
    const auto& mm = c.morphism(m);
    const auto& as = ab[mm.src];
    const auto& at = ab[mm.tgt];
    const GroupHom& f = c.group_hom(m);
    IntMatrix mat(at.structure.group.ngens(), std::vector<Integer>(as.structure.group.ngens(), 0));
    for (std::size_t j = 0; j < as.structure.generators.size(); ++j) {
      Elem q = as.structure.generators[j];
      auto lift = std::find(as.proj.begin(), as.proj.end(), q);
      Elem h = static_cast<Elem>(lift - as.proj.begin());
      const auto& y = at.structure.coords[at.proj[f[h]]];
      for (std::size_t i = 0; i < y.size(); ++i) mat[i][j] = y[i];
    }
    om.maps.push_back(std::move(mat));
  }
  return om;
}

void validate_ab_functor(const WeightedCategory& c, const AbFunctor& om) {
  if (om.values.size() != c.object_count() || om.maps.size() != c.morphism_count())
    throw DimensionMismatch("abelian functor: wrong number of objects or morphisms");
  for (std::size_t m = 0; m < c.morphism_count(); ++m) {
    const auto& mm = c.morphism(m);
    const auto& src = om.values[mm.src];
    const auto& tgt = om.values[mm.tgt];
    const auto& a = om.maps[m];
    if (a.size() != tgt.ngens() || std::any_of(a.begin(), a.end(), [&](const auto& r) { return r.size() != src.ngens(); }))
      throw DimensionMismatch("abelian functor: morphism " + std::to_string(m) + " has the wrong shape");
    for (std::size_t j = 0; j < src.ngens(); ++j) {
      long d = src.factors()[j];
      if (d == 0) continue;
      auto y = om.apply(c, m, unit_vector(src.ngens(), j, d));
      if (std::any_of(y.begin(), y.end(), [](long v) { return v != 0; }))
        throw ValidationError("abelian functor: morphism " + std::to_string(m) + " does not respect relation " +
                              std::to_string(j));
    }
  }
  for (std::size_t a = 0; a < c.object_count(); ++a) {
    long id = c.identity(a);
    if (id == WeightedCategory::kUnknown) continue;
    for (std::size_t j = 0; j < om.values[a].ngens(); ++j) {
      auto e = om.values[a].reduce(unit_vector(om.values[a].ngens(), j));
      if (om.apply(c, id, e) != e) throw ValidationError("abelian functor: identity of " + c.label(a) + " moves a generator");
    }
  }
  for (std::size_t f = 0; f < c.morphism_count(); ++f)
    for (std::size_t g = 0; g < c.morphism_count(); ++g) {
      if (c.morphism(f).tgt != c.morphism(g).src) continue;
      long h = c.compose(g, f);
      if (h == WeightedCategory::kUnknown) continue;
      const auto& src = om.values[c.morphism(f).src];
      for (std::size_t j = 0; j < src.ngens(); ++j) {
        auto e = src.reduce(unit_vector(src.ngens(), j));
        if (om.apply(c, h, e) != om.apply(c, g, om.apply(c, f, e)))
          throw ValidationError("abelian functor: composition fails for " + std::to_string(g) + " after " +
                                std::to_string(f));
      }
    }
}

VecFunctor group_ring_functor(const WeightedCategory& c, const AbFunctor& om) {
  VecFunctor f;
  std::vector<std::vector<std::vector<long>>> elems;
  for (const auto& a : om.values) {
    if (!a.is_finite()) throw ValidationError("group ring functor needs finite values");
    elems.push_back(a.elements());
    f.dims.push_back(elems.back().size());
  }
  for (std::size_t m = 0; m < c.morphism_count(); ++m) {
    const auto& mm = c.morphism(m);
    ExactMatrix p(f.dims[mm.tgt], f.dims[mm.src]);
    for (std::size_t j = 0; j < elems[mm.src].size(); ++j)
      p(om.values[mm.tgt].index_of(om.apply(c, m, elems[mm.src][j])), j) = 1;
    f.maps.push_back(std::move(p));
  }
  return f;
}

Cyclotomic linear_pairing(const WeightedCategory& c, const VecFunctor& f, std::size_t d, const ExactMatrix& phi,
                          std::size_t src, const ExactMatrix& v) {
  if (phi.rows() != 1 || phi.cols() != f.dims.at(d))
    throw DimensionMismatch("linear_pairing: dual vector has shape " + std::to_string(phi.rows()) + "x" +
                            std::to_string(phi.cols()) + ", expected 1x" + std::to_string(f.dims.at(d)));
  if (v.cols() != 1 || v.rows() != f.dims.at(src))
    throw DimensionMismatch("linear_pairing: vector has shape " + std::to_string(v.rows()) + "x" +
                            std::to_string(v.cols()) + ", expected " + std::to_string(f.dims.at(src)) + "x1");
  Cyclotomic s = 0;
  for (auto m : c.hom(src, d)) s += Cyclotomic(c.weight(m)) * (phi * f.maps[m] * v)(0, 0);
  return s;
}

namespace {

void check_character(const AbFunctor& om, std::size_t obj, const Character& chi) {
  if (!(chi.group == om.values.at(obj))) throw DimensionMismatch("pontryagin_pairing: character on the wrong group");
  for (long o : chi.orders)
    if (o <= 0) throw ValidationError("pontryagin_pairing: infinite-order character");
}

}  // namespace

Cyclotomic pontryagin_pairing(const WeightedCategory& c, const AbFunctor& om, std::size_t obj, const Character& chi,
                              std::size_t d, const std::vector<long>& x) {
  check_character(om, obj, chi);
  if (x.size() != om.values.at(d).ngens()) throw DimensionMismatch("pontryagin_pairing: element has wrong length");
  Cyclotomic s = 0;
  for (auto m : c.hom(d, obj)) s += Cyclotomic(c.weight(m)) * chi.value(om.apply(c, m, x));
  return s;
}

namespace {

GramResult finish_gram(ExactMatrix g) {
  GramResult r;
  r.rank = g.rank();
  if (g.rows() == g.cols() && g.rows() > 0) r.det = g.det();
  r.matrix = std::move(g);
  return r;
}

}  // namespace

GramResult gram_matrix(const WeightedCategory& c, const VecFunctor& f, const std::vector<DualVectorAt>& rows,
                       const std::vector<VectorAt>& cols) {
  ExactMatrix g(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      g(i, j) = linear_pairing(c, f, rows[i].object, rows[i].phi, cols[j].object, cols[j].v);
  return finish_gram(std::move(g));
}

GramResult gram_matrix(const WeightedCategory& c, const AbFunctor& om, const std::vector<CharacterAt>& rows,
                       const std::vector<ElementAt>& cols) {
  ExactMatrix g(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      g(i, j) = pontryagin_pairing(c, om, rows[i].object, rows[i].chi, cols[j].object, cols[j].x);
  return finish_gram(std::move(g));
}

namespace {

CoinvariantBasis object_coinvariants(const WeightedCategory& c, const VecFunctor& f, std::size_t a, bool dual) {
  std::vector<ExactMatrix> actions;
  for (auto g : c.automorphisms(a)) actions.push_back(dual ? f.maps[g].transpose() : f.maps[g]);
  return coinvariants(f.dims[a], actions);
}

}  // namespace

std::vector<VectorAt> coinvariant_support(const WeightedCategory& c, const VecFunctor& f,
                                          const std::vector<std::size_t>& objects) {
  std::vector<VectorAt> out;
  for (auto a : c.iso_representatives(objects)) {
    auto cb = object_coinvariants(c, f, a, false);
    for (std::size_t j = 0; j < cb.section.cols(); ++j) out.push_back({a, cb.section.col(j)});
  }
  return out;
}

std::vector<DualVectorAt> dual_coinvariant_support(const WeightedCategory& c, const VecFunctor& f,
                                                   const std::vector<std::size_t>& objects) {
  std::vector<DualVectorAt> out;
  for (auto a : c.iso_representatives(objects)) {
    auto cb = object_coinvariants(c, f, a, true);
    for (std::size_t j = 0; j < cb.section.cols(); ++j) out.push_back({a, cb.section.col(j).transpose()});
  }
  return out;
}

namespace {

// Character as the fractions chi(e_i) = exp(2 pi i q_i), q_i in [0, 1).
std::vector<Rational> character_key(const Character& chi) {
  std::vector<Rational> k;
  for (std::size_t i = 0; i < chi.orders.size(); ++i) {
    long e = ((chi.exps[i] % chi.orders[i]) + chi.orders[i]) % chi.orders[i];
    Rational q(e, chi.orders[i]);
    q.canonicalize();
    k.push_back(q);
  }
  return k;
}

// Key of chi after Omega(m), as a character of the source of m.
std::vector<Rational> pulled_key(const WeightedCategory& c, const AbFunctor& om, std::size_t m, const Character& chi) {
  const FgAbelian& src = om.values[c.morphism(m).src];
  auto base = character_key(chi);
  std::vector<Rational> k;
  for (std::size_t j = 0; j < src.ngens(); ++j) {
    auto y = om.apply(c, m, src.reduce(unit_vector(src.ngens(), j)));
    Rational q = 0;
    for (std::size_t i = 0; i < y.size(); ++i) q += base[i] * y[i];
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    q -= fl;
    q.canonicalize();
    k.push_back(q);
  }
  return k;
}

}  // namespace

std::vector<CharacterAt> character_orbit_support(const WeightedCategory& c, const AbFunctor& om,
                                                 const std::vector<std::size_t>& objects) {
  std::vector<CharacterAt> out;
  for (auto a : c.iso_representatives(objects)) {
    if (!om.values[a].is_finite())
      throw ValidationError("character support at " + c.label(a) + ": free part is only partially certified");
    auto chars = characters(om.values[a]);
    std::map<std::vector<Rational>, std::size_t> by_key;
    for (std::size_t i = 0; i < chars.size(); ++i) by_key.emplace(character_key(chars[i]), i);
    auto autos = c.automorphisms(a);
    std::vector<bool> seen(chars.size(), false);
    for (std::size_t i = 0; i < chars.size(); ++i) {
      if (seen[i]) continue;
      out.push_back({a, chars[i]});
      for (auto g : autos) seen[by_key.at(pulled_key(c, om, g, chars[i]))] = true;
    }
  }
  return out;
}

std::vector<ElementAt> element_orbit_support(const WeightedCategory& c, const AbFunctor& om,
                                             const std::vector<std::size_t>& objects) {
  std::vector<ElementAt> out;
  for (auto a : c.iso_representatives(objects)) {
    const FgAbelian& A = om.values[a];
    auto elems = A.elements();
    auto autos = c.automorphisms(a);
    std::vector<bool> seen(elems.size(), false);
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if (seen[i]) continue;
      out.push_back({a, elems[i]});
      for (auto g : autos) seen[A.index_of(om.apply(c, g, elems[i]))] = true;
    }
  }
  return out;
}

ExactMatrix weighted_linearize(const WeightedCategory& c, const VecFunctor& f, const std::vector<std::size_t>& objects,
                               const WeightedFilter& keep) {
  auto reps = c.iso_representatives(objects);
  std::vector<CoinvariantBasis> cb;
  std::vector<std::size_t> offset{0};
  for (auto a : reps) {
    cb.push_back(object_coinvariants(c, f, a, false));
    offset.push_back(offset.back() + cb.back().section.cols());
  }
  ExactMatrix out(offset.back(), offset.back());
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = 0; j < reps.size(); ++j) {
      ExactMatrix acc(f.dims[reps[i]], f.dims[reps[j]]);
      for (auto m : c.hom(reps[j], reps[i]))
        if (!keep || keep(m)) acc += f.maps[m] * Cyclotomic(c.weight(m));
      Rational aut = c.automorphism_cardinality(reps[i]);
      out.set_block(offset[i], offset[j], cb[i].projection * acc * cb[j].section * Cyclotomic(Rational(1) / aut));
    }
  return out;
}

ExactMatrix pairing_form(const WeightedCategory& c, const VecFunctor& f, const std::vector<std::size_t>& objects,
                         const WeightedFilter& keep) {
  auto rows = dual_coinvariant_support(c, f, objects);
  auto cols = coinvariant_support(c, f, objects);
  ExactMatrix out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) {
      Cyclotomic s = 0;
      for (auto m : c.hom(cols[j].object, rows[i].object))
        if (!keep || keep(m)) s += Cyclotomic(c.weight(m)) * (rows[i].phi * f.maps[m] * cols[j].v)(0, 0);
      out(i, j) = s;
    }
  return out;
}

std::vector<std::size_t> factorizable_closure(const WeightedCategory& c, const MiddleFn& middle,
                                              const std::vector<std::size_t>& seed, std::size_t max_size) {
  std::vector<std::size_t> set = c.iso_representatives(seed);
  if (set.size() > max_size) throw BoundExceeded("max closure size", max_size, "seed alone exceeds the bound");
  std::set<std::pair<std::size_t, std::size_t>> done;
  bool grew = true;
  while (grew) {
    grew = false;
    const auto snapshot = set;
    for (auto a : snapshot)
      for (auto b : snapshot) {
        if (!done.emplace(a, b).second) continue;
        for (auto m : c.hom(a, b)) {
          std::size_t mid = middle(m);
          bool present = false;
          for (auto s : set) present = present || c.isomorphic(s, mid);
          if (present) continue;
          set.push_back(mid);
          grew = true;
          if (set.size() > max_size)
            throw BoundExceeded("max closure size", max_size, "factorizable closure grew past the bound");
        }
      }
  }
  std::sort(set.begin(), set.end());
  return set;
}

MiddleFn target_middle(const WeightedCategory& c) {
  return [&c](std::size_t m) { return c.morphism(m).tgt; };
}

MiddleFn image_size_middle(const WeightedCategory& c, const FinSetCategory& fs) {
  return [&c, &fs](std::size_t m) {
    const auto& o = c.origin(m);
    if (!o) throw ValidationError("image_size_middle: category was not built from FinSet");
    auto vals = fs.function(o->src, o->tgt, o->index);
    std::sort(vals.begin(), vals.end());
    return static_cast<std::size_t>(std::unique(vals.begin(), vals.end()) - vals.begin());
  };
}

MiddleFn image_group_middle(const WeightedCategory& c) {
  if (!c.has_groups()) throw ValidationError("image_group_middle needs a group-type category");
  return [&c](std::size_t m) {
    const FinGroup& g = c.group(c.morphism(m).tgt);
    FinGroup im = FinGroup::subgroup(g, image_of(c.group_hom(m)));
    for (std::size_t o = 0; o < c.object_count(); ++o)
      if (c.group(o).order() == im.order() && pifin::isomorphic(c.group(o), im)) return o;
    throw ValidationError("image_group_middle: no object for the image of morphism " + std::to_string(m));
  };
}

ExactMatrix character_linearization(const FgAbelian& a) { return character_table(a).transpose(); }

}  // namespace pifin
