#include "pifin/dw.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <map>

#include "pifin/error.hpp"
#include "pifin/reps.hpp"
#include "pifin/span.hpp"

namespace pifin {

ManifoldDescription ManifoldDescription::surface(unsigned genus, std::string name) {
  ManifoldDescription m;
  m.genus_ = genus;
  m.dim_ = 2;
  m.name_ = name.empty() ? "surface genus " + std::to_string(genus) : std::move(name);
  m.pres_.generators = 2 * genus;
  if (genus > 0) {
    Word r;
    for (unsigned i = 0; i < genus; ++i) {
      int a = static_cast<int>(2 * i + 1), b = a + 1;
      r.insert(r.end(), {a, b, -a, -b});
    }
    m.pres_.relators.push_back(std::move(r));
  }
  return m;
}

ManifoldDescription ManifoldDescription::presented(GroupPresentation p, unsigned dimension, std::string name) {
  for (std::size_t r = 0; r < p.relators.size(); ++r)
    for (int k : p.relators[r])
      if (k == 0 || static_cast<std::size_t>(std::abs(k)) > p.generators)
        throw ValidationError("relator " + std::to_string(r) + " uses generator " + std::to_string(k) + " outside 1.." +
                              std::to_string(p.generators));
  ManifoldDescription m;
  m.dim_ = dimension;
  m.name_ = std::move(name);
  m.pres_ = std::move(p);
  return m;
}

unsigned ManifoldDescription::genus() const {
  if (!genus_) throw ValidationError("manifold is not described as a surface");
  return *genus_;
}

DwTheory::DwTheory(GroupPtr g, std::optional<Cocycle2> c, std::string n)
    : group(std::move(g)), twist(std::move(c)), name(std::move(n)) {
  if (!group) throw ValidationError("theory needs a group");
  if (twist) {
    if (!(twist->group() == *group)) throw ValidationError("cocycle lives on a different group");
    auto d = validate_cocycle(*twist);
    if (!d.ok) throw ValidationError("invalid cocycle: " + d.reason);
  }
}

Elem evaluate_word(const FinGroup& g, const Word& w, const std::vector<Elem>& images) {
  Elem x = g.identity();
  for (int k : w) {
    Elem y = images.at(static_cast<std::size_t>(std::abs(k)) - 1);
    x = g.mul(x, k > 0 ? y : g.inv(y));
  }
  return x;
}

std::vector<std::vector<Elem>> presentation_homs(const GroupPresentation& p, const FinGroup& g,
                                                 unsigned long long bound) {
  unsigned long long total = 1;
  for (std::size_t i = 0; i < p.generators; ++i) {
    total *= g.order();
    if (total > bound)
      throw BoundExceeded("max hom search", bound,
                          "enumerating |G|^" + std::to_string(p.generators) + " generator images");
  }
  std::vector<std::vector<Elem>> out;
  std::vector<Elem> img(p.generators, 0);
  while (true) {
    bool ok = true;
    for (const auto& r : p.relators)
      if (evaluate_word(g, r, img) != g.identity()) {
        ok = false;
        break;
      }
    if (ok) out.push_back(img);
    std::size_t i = p.generators;
    while (i > 0 && ++img[i - 1] == g.order()) img[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

MappingGroupoid mapping_groupoid(const ManifoldDescription& m, const FinGroup& g, unsigned long long bound) {
  MappingGroupoid out;
  out.homs = presentation_homs(m.presentation(), g, bound);
  auto gp = make_group(g);
  auto index = std::make_shared<std::map<std::vector<Elem>, std::size_t>>();
  for (std::size_t i = 0; i < out.homs.size(); ++i) index->emplace(out.homs[i], i);
  auto homs = std::make_shared<std::vector<std::vector<Elem>>>(out.homs);
  auto act = [homs, index, gp](Elem h, std::size_t i) {
    std::vector<Elem> y = (*homs)[i];
    for (auto& x : y) x = gp->conj(h, x);
    return index->at(y);
  };
  auto ag = action_groupoid(gp, homs->size(), act);
  out.groupoid = ag.groupoid;
  return out;
}

mpz_class surface_hom_count(const FinGroup& g, unsigned genus) {
  const std::size_t n = g.order();
  std::vector<mpz_class> comm(n, 0), acc(n, 0);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) comm[g.commutator(a, b)] += 1;
  acc[g.identity()] = 1;
  for (unsigned i = 0; i < genus; ++i) {
    std::vector<mpz_class> next(n, 0);
    for (Elem x = 0; x < n; ++x) {
      if (acc[x] == 0) continue;
      for (Elem y = 0; y < n; ++y)
        if (comm[y] != 0) next[g.mul(x, y)] += acc[x] * comm[y];
    }
    acc = std::move(next);
  }
  return acc[g.identity()];
}

Cyclotomic twisted_torus_direct(const Cocycle2& c) {
  const FinGroup& g = c.group();
  Cyclotomic s = 0;
  for (Elem a = 0; a < g.order(); ++a)
    for (Elem b = 0; b < g.order(); ++b)
      if (g.mul(a, b) == g.mul(b, a)) s += c.value(a, b) / c.value(b, a);
  return s * Cyclotomic::rational(1, static_cast<long>(g.order()));
}

Cyclotomic transgression(const Cocycle2& c, Elem h, Elem x) {
  const FinGroup& g = c.group();
  return c.value(h, x) / c.value(g.conj(h, x), h);
}

std::optional<std::array<Elem, 3>> transgression_defect(const Cocycle2& c) {
  const FinGroup& g = c.group();
  for (Elem h2 = 0; h2 < g.order(); ++h2)
    for (Elem h1 = 0; h1 < g.order(); ++h1)
      for (Elem x = 0; x < g.order(); ++x)
        if (transgression(c, g.mul(h2, h1), x) != transgression(c, h2, g.conj(h1, x)) * transgression(c, h1, x))
          return std::array<Elem, 3>{h2, h1, x};
  return std::nullopt;
}

namespace {

FrobeniusAlgebra center_frobenius(const DwTheory& t) {
  Cocycle2 c = t.twist ? *t.twist : Cocycle2::trivial(t.group);
  return group_frobenius(twisted_group_algebra(c)).center();
}

const char* kEulerNote =
    "untwisted values ignore the Euler characteristic of the bordism class; character-weighted twists are not "
    "evaluated";

}  // namespace

DwValue partition_function(const DwTheory& t, const ManifoldDescription& m, unsigned long long bound) {
  const FinGroup& g = *t.group;
  DwValue out;
  if (t.twist) {
    if (!m.is_surface()) throw ValidationError("twisted theories are only evaluated on surfaces");
    out.value = handle_and_window(center_frobenius(t)).genus(m.genus());
    out.route = "frobenius: counit of handle^g in the center of the twisted group algebra";
    return out;
  }
  mpz_class homs;
  if (m.is_surface()) {
    homs = surface_hom_count(g, m.genus());
    out.route = "groupoid sum: commutator convolution count of Hom(pi_1, G) / |G|";
  } else {
    homs = presentation_homs(m.presentation(), g, bound).size();
    out.route = "groupoid sum: enumerated Hom(pi_1, G) / |G|";
  }
  out.value = Cyclotomic(Rational(homs, mpz_class(g.order())));
  out.note = kEulerNote;
  return out;
}

namespace {

// Colimit of tau over G//G under the pair-of-pants span, as an algebra.
struct LoopData {
  ActionGroupoid loops;
  LocalSystemPtr tau;
};

LoopData loop_system(const Cocycle2& c) {
  const FinGroup& g = c.group();
  GroupPtr gp = c.group_ptr();
  LoopData d;
  d.loops = action_groupoid(gp, g.order(), [&g](Elem h, std::size_t x) { return static_cast<std::size_t>(g.conj(h, static_cast<Elem>(x))); });
  const FinGroupoid& lg = *d.loops.groupoid;
  const ElementsGroupoid& el = *d.loops.elements;
  auto value = [&](const Morphism& m) {
    Elem h = el.projection()(m).h;
    return ExactMatrix::scalar(transgression(c, h, static_cast<Elem>(el.element(m.src))));
  };
  std::vector<Representation> rho;
  for (std::size_t k = 0; k < lg.component_count(); ++k) {
    std::size_t b = lg.base(k);
    Representation r;
    for (Elem h = 0; h < lg.vertex_group(k).order(); ++h) r.push_back(value({b, b, h}));
    rho.push_back(std::move(r));
  }
  std::vector<ExactMatrix> transport;
  for (std::size_t x = 0; x < lg.object_count(); ++x) transport.push_back(value(lg.connecting(x)));
  d.tau = make_system(LocalSystem(d.loops.groupoid, std::move(rho), std::move(transport)));
  // the encoded system must agree with tau on every arrow
  for (std::size_t x = 0; x < lg.object_count(); ++x)
    for (std::size_t y = 0; y < lg.object_count(); ++y)
      for (const auto& m : lg.hom(x, y))
        if ((*d.tau)(m) != value(m))
          throw Error("local system disagrees with tau on an arrow " + std::to_string(el.element(x)) + " -> " +
                      std::to_string(el.element(y)));
  return d;
}

}  // namespace

SphereAlgebra sphere_algebra(const DwTheory& t) {
  Cocycle2 c = t.twist ? *t.twist : Cocycle2::trivial(t.group);
  if (auto bad = transgression_defect(c))
    throw Error("transgressed local system is not functorial at h' = " + std::to_string((*bad)[0]) +
                ", h = " + std::to_string((*bad)[1]) + ", x = " + std::to_string((*bad)[2]));
  const FinGroup& g = c.group();
  const std::size_t n = g.order();
  auto loop = loop_system(c);
  const auto& lg = loop.loops.groupoid;
  const ElementsGroupoid& el = *loop.loops.elements;

  // apex: pairs (a, b) under simultaneous conjugation, index a * n + b
  auto apex = action_groupoid(c.group_ptr(), n * n, [&g, n](Elem h, std::size_t p) {
    return static_cast<std::size_t>(g.conj(h, static_cast<Elem>(p / n))) * n + g.conj(h, static_cast<Elem>(p % n));
  });
  auto pair = product(lg, lg);
  const ElementsGroupoid& ap = *apex.elements;
  auto lift = [&](Elem h, std::size_t x) { return el.lift({0, 0, h}, x); };
  auto s = GroupoidFunctor::from_map(apex.groupoid, pair.groupoid, [&](const Morphism& m) {
    Elem h = ap.projection()(m).h;
    std::size_t p = ap.element(m.src);
    return pair_morphism(pair, lift(h, p / n), lift(h, p % n));
  });
  auto tleg = GroupoidFunctor::from_map(apex.groupoid, lg, [&](const Morphism& m) {
    Elem h = ap.projection()(m).h;
    std::size_t p = ap.element(m.src);
    return lift(h, g.mul(static_cast<Elem>(p / n), static_cast<Elem>(p % n)));
  });
  auto la = make_system(LocalSystem::external_tensor(pair, *loop.tau, *loop.tau));
  std::vector<ExactMatrix> alpha;
  for (std::size_t o = 0; o < apex.groupoid->object_count(); ++o) {
    std::size_t p = ap.element(o);
    alpha.push_back(ExactMatrix::scalar(c.value(static_cast<Elem>(p / n), static_cast<Elem>(p % n))));
  }
  DecoratedSpan pants(s, tleg, la, loop.tau, std::move(alpha));
  Colimit cpair = colim(la), cloop = colim(loop.tau);
  ExactMatrix product_map = linearize(pants, cpair, cloop) * tensor_comparison(cpair, cloop, cloop);
  const std::size_t r = cloop.dim;

  SphereAlgebra out;
  if (r == 0) throw Error("sphere algebra is zero");
  std::vector<ExactMatrix> left(r, ExactMatrix(r, r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) left[i].set_block(0, j, product_map.col(i * r + j));
  // unit: sum_i u_i left_i = I
  ExactMatrix sys(r * r, r), rhs(r * r, 1);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t p = 0; p < r; ++p)
      for (std::size_t q = 0; q < r; ++q) sys(p * r + q, i) = left[i](p, q);
  for (std::size_t p = 0; p < r; ++p) rhs(p * r + p, 0) = 1;
  out.algebra = FdAlgebra(std::move(left), sys.solve(rhs));

  // norm map into the twisted group algebra: [v] -> sum_y (T_y w) u_y with w the averaged vector
  out.comparison = ExactMatrix(n, r);
  for (std::size_t k = 0; k < lg->component_count(); ++k) {
    if (cloop.block[k] == 0) continue;
    std::size_t b = lg->base(k);
    Cyclotomic w = 0;
    for (Elem h = 0; h < lg->vertex_group(k).order(); ++h) w += (*loop.tau)({b, b, h})(0, 0) * cloop.section[k](0, 0);
    for (auto y : lg->component(k).objects)
      out.comparison(el.element(y), cloop.offset[k]) = (*loop.tau)(lg->connecting(y))(0, 0) * w;
  }
  auto tw = twisted_group_algebra(c);
  out.center = tw.algebra.center();
  bool agree = out.comparison.rank() == r && r == out.center.dim() &&
               out.comparison * out.algebra.unit() == tw.algebra.unit();
  for (std::size_t i = 0; agree && i < r; ++i)
    for (std::size_t j = 0; agree && j < r; ++j)
      agree = out.comparison * out.algebra.left(i).col(j) ==
              tw.algebra.multiply(out.comparison.col(i), out.comparison.col(j));
  out.routes_agree = agree;
  out.report = is_semisimple(out.center);
  out.window_invertible = handle_and_window(center_frobenius(t)).window_invertible;
  return out;
}

namespace {

// Lexicographically least conjugate of a tuple.
std::vector<Elem> canonical_tuple(const FinGroup& g, const std::vector<Elem>& x) {
  std::vector<Elem> best = x;
  for (Elem h = 0; h < g.order(); ++h) {
    std::vector<Elem> y = x;
    for (auto& e : y) e = g.conj(h, e);
    best = std::min(best, y);
  }
  return best;
}

}  // namespace

ManifoldCategory manifold_category(const ManifoldDescription& m, const std::vector<NamedGroup>& groups,
                                   unsigned long long bound) {
  auto gt = WeightedCategory::group_types(groups);
  const std::size_t ng = groups.size(), mg = gt.morphism_count();
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < ng; ++a) labels.push_back(gt.label(a));
  labels.push_back(m.name().empty() ? "M" : m.name());
  std::vector<WeightedMorphism> mors;
  for (std::size_t f = 0; f < mg; ++f) mors.push_back(gt.morphism(f));
  std::vector<std::vector<Elem>> images(mg);
  std::vector<std::map<std::vector<Elem>, std::size_t>> index(ng);
  for (std::size_t b = 0; b < ng; ++b) {
    const FinGroup& h = gt.group(b);
    for (const auto& img : presentation_homs(m.presentation(), h, bound)) {
      auto can = canonical_tuple(h, img);
      if (index[b].count(can)) continue;
      index[b].emplace(can, mors.size());
      mors.push_back({ng, b, Rational(1, static_cast<long>(h.centralizer(can).size())), ""});
      images.push_back(can);
    }
  }
  const std::size_t mt = mors.size();
  std::vector<std::vector<long>> table(mt, std::vector<long>(mt, WeightedCategory::kUnknown));
  for (std::size_t gm = 0; gm < mg; ++gm) {
    for (std::size_t f = 0; f < mg; ++f)
      if (mors[f].tgt == mors[gm].src) table[gm][f] = gt.compose(gm, f);
    for (std::size_t f = mg; f < mt; ++f) {
      if (mors[f].tgt != mors[gm].src) continue;
      const auto& hom = gt.group_hom(gm);
      std::vector<Elem> img = images[f];
      for (auto& e : img) e = hom[e];
      std::size_t cidx = mors[gm].tgt;
      table[gm][f] = static_cast<long>(index[cidx].at(canonical_tuple(gt.group(cidx), img)));
    }
  }
  std::vector<long> ids;
  for (std::size_t a = 0; a < ng; ++a) ids.push_back(gt.identity(a));
  ids.push_back(WeightedCategory::kUnknown);
  return {WeightedCategory(std::move(labels), std::move(mors), std::move(ids), std::move(table)), ng,
          std::move(images)};
}

DwPairing dw_as_pairing(const DwTheory& t, const ManifoldDescription& m, const ManifoldCategory& mc,
                        std::size_t group_object, const AbFunctor& om, const Character& chi,
                        const std::vector<long>& fundamental_class) {
  if (t.twist) throw ValidationError("dw_as_pairing: only untwisted theories");
  const WeightedCategory& c = mc.category;
  if (mc.manifold_object >= c.object_count() || c.identity(mc.manifold_object) != WeightedCategory::kUnknown)
    throw ValidationError("dw_as_pairing: the manifold object is missing from the category");
  if (group_object >= c.object_count() || group_object == mc.manifold_object)
    throw ValidationError("dw_as_pairing: group object out of range");
  validate_ab_functor(c, om);
  DwPairing out;
  out.pairing = pontryagin_pairing(c, om, group_object, chi, mc.manifold_object, fundamental_class);
  out.partition = partition_function(t, m).value;
  out.trivial_character = chi == trivial_character(chi.group);
  out.equal = out.pairing == out.partition;
  return out;
}

Distinction distinguish(const std::vector<ManifoldDescription>& ms, const std::vector<DwTheory>& theories,
                        unsigned long long bound, unsigned jobs) {
  Distinction d;
  d.values.assign(ms.size(), std::vector<Cyclotomic>(theories.size()));
  const std::size_t cells = ms.size() * theories.size();
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next++) < cells;)
      d.values[k / theories.size()][k % theories.size()] =
          partition_function(theories[k % theories.size()], ms[k / theories.size()], bound).value;
  };
  if (jobs <= 1 || cells <= 1) {
    worker();
  } else {
    std::vector<std::future<void>> pool;
    for (unsigned w = 0; w < std::min<std::size_t>(jobs, cells); ++w) pool.push_back(std::async(std::launch::async, worker));
    for (auto& f : pool) f.get();  // rethrows the first worker error
  }
  for (std::size_t i = 0; i < ms.size(); ++i) {
    std::size_t b = 0;
    while (b < d.blocks.size() && d.values[d.blocks[b][0]] != d.values[i]) ++b;
    if (b == d.blocks.size()) d.blocks.emplace_back();
    d.blocks[b].push_back(i);
  }
  for (std::size_t a = 0; a < d.blocks.size(); ++a)
    for (std::size_t b = a + 1; b < d.blocks.size(); ++b) {
      const auto& va = d.values[d.blocks[a][0]];
      const auto& vb = d.values[d.blocks[b][0]];
      std::size_t k = 0;
      while (va[k] == vb[k]) ++k;
      d.separations.push_back({a, b, k});
    }
  return d;
}

}  // namespace pifin
