#include "pifin/fincat.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <unordered_map>

#include "pifin/error.hpp"
#include "pifin/span.hpp"

namespace pifin {

namespace {

Cyclotomic inverse_count(std::size_t n) {
  Rational q(1L, static_cast<unsigned long>(n));
  q.canonicalize();
  return q;
}

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= b;
  return r;
}

bool keeps(const MorphismFilter& keep, const CatMorphism& f) { return !keep || keep(f); }

}  // namespace

// ---- FinCategory ----

bool FinCategory::is_iso(std::size_t a, std::size_t b, std::size_t f) const {
  std::size_t ia = identity(a), ib = identity(b);
  for (std::size_t g = 0; g < hom_size(b, a); ++g)
    if (compose(a, b, a, g, f) == ia && compose(b, a, b, f, g) == ib) return true;
  return false;
}

std::size_t FinCategory::automorphism_count(std::size_t a) const { return automorphisms(a).size(); }

CatMorphism FinCategory::compose(const CatMorphism& g, const CatMorphism& f) const {
  if (f.tgt != g.src) throw ValidationError("morphisms are not composable");
  return {f.src, g.tgt, compose(f.src, f.tgt, g.tgt, g.index, f.index)};
}

std::vector<std::size_t> FinCategory::isomorphisms(std::size_t a, std::size_t b) const {
  std::vector<std::size_t> out;
  for (std::size_t f = 0; f < hom_size(a, b); ++f)
    if (is_iso(a, b, f)) out.push_back(f);
  return out;
}

void FinCategory::classify() const {
  if (!reps_.empty() || object_count() == 0) return;
  class_of_.assign(object_count(), 0);
  for (std::size_t a = 0; a < object_count(); ++a) {
    bool found = false;
    for (std::size_t i = 0; i < reps_.size() && !found; ++i) {
      std::size_t r = reps_[i];
      for (std::size_t f = 0; f < hom_size(r, a); ++f)
        if (is_iso(r, a, f)) {
          class_of_[a] = i;
          found = true;
          break;
        }
    }
    if (!found) {
      class_of_[a] = reps_.size();
      reps_.push_back(a);
    }
  }
}

const std::vector<std::size_t>& FinCategory::representatives() const {
  classify();
  return reps_;
}

std::size_t FinCategory::iso_class(std::size_t a) const {
  classify();
  return class_of_[a];
}

FinGroup FinCategory::automorphism_group(std::size_t a) const {
  auto autos = automorphisms(a);
  std::unordered_map<std::size_t, Elem> pos;
  for (std::size_t i = 0; i < autos.size(); ++i) pos[autos[i]] = static_cast<Elem>(i);
  std::vector<std::vector<Elem>> table(autos.size(), std::vector<Elem>(autos.size()));
  for (std::size_t i = 0; i < autos.size(); ++i)
    for (std::size_t j = 0; j < autos.size(); ++j) table[i][j] = pos.at(compose(a, a, a, autos[i], autos[j]));
  return FinGroup::from_table(table);
}

std::optional<std::string> check_category_axioms(const FinCategory& c) {
  const std::size_t n = c.object_count();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t f = 0; f < c.hom_size(a, b); ++f) {
        if (c.compose(a, b, b, c.identity(b), f) != f || c.compose(a, a, b, f, c.identity(a)) != f)
          return "identity law fails for morphism " + std::to_string(f) + ": " + c.object_label(a) + " -> " +
                 c.object_label(b);
      }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t cc = 0; cc < n; ++cc)
        for (std::size_t d = 0; d < n; ++d)
          for (std::size_t f = 0; f < c.hom_size(a, b); ++f)
            for (std::size_t g = 0; g < c.hom_size(b, cc); ++g) {
              std::size_t gf = c.compose(a, b, cc, g, f);
              for (std::size_t h = 0; h < c.hom_size(cc, d); ++h)
                if (c.compose(a, cc, d, h, gf) != c.compose(a, b, d, c.compose(b, cc, d, h, g), f))
                  return "associativity fails on objects " + c.object_label(a) + ", " + c.object_label(b) + ", " +
                         c.object_label(cc) + ", " + c.object_label(d);
            }
  return std::nullopt;
}

// ---- ExplicitCategory ----

ExplicitCategory::ExplicitCategory(std::size_t objects, std::vector<std::pair<std::size_t, std::size_t>> morphisms,
                                   std::vector<std::size_t> identities, std::vector<std::vector<long>> compose,
                                   std::vector<std::string> labels)
    : n_(objects), mors_(std::move(morphisms)), ids_(std::move(identities)), comp_(std::move(compose)),
      labels_(std::move(labels)) {
  const std::size_t m = mors_.size();
  if (ids_.size() != n_) throw ValidationError("one identity per object is required");
  if (comp_.size() != m) throw ValidationError("composition table has wrong size");
  for (auto& row : comp_)
    if (row.size() != m) throw ValidationError("composition table has wrong size");
  homs_.assign(n_ * n_, {});
  local_.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    auto [s, t] = mors_[i];
    if (s >= n_ || t >= n_) throw ValidationError("morphism endpoint out of range");
    local_[i] = homs_[s * n_ + t].size();
    homs_[s * n_ + t].push_back(i);
  }
  for (std::size_t a = 0; a < n_; ++a)
    if (ids_[a] >= m || mors_[ids_[a]] != std::make_pair(a, a)) throw ValidationError("identity has wrong endpoints");
  for (std::size_t f = 0; f < m; ++f)
    for (std::size_t g = 0; g < m; ++g) {
      if (mors_[f].second != mors_[g].first) continue;
      long h = comp_[g][f];
      if (h < 0 || static_cast<std::size_t>(h) >= m ||
          mors_[static_cast<std::size_t>(h)] != std::make_pair(mors_[f].first, mors_[g].second))
        throw ValidationError("composite of morphisms " + std::to_string(g) + " and " + std::to_string(f) +
                              " is missing or has wrong endpoints");
    }
  if (auto err = check_category_axioms(*this)) throw ValidationError(*err);
}

ExplicitCategory ExplicitCategory::from_group(const FinGroup& g) {
  std::size_t n = g.order();
  std::vector<std::pair<std::size_t, std::size_t>> mors(n, {0, 0});
  std::vector<std::vector<long>> comp(n, std::vector<long>(n));
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) comp[a][b] = g.mul(a, b);
  return ExplicitCategory(1, mors, {g.identity()}, comp);
}

std::size_t ExplicitCategory::compose(std::size_t a, std::size_t b, std::size_t c, std::size_t g, std::size_t f) const {
  std::size_t gf = static_cast<std::size_t>(comp_[homs_[b * n_ + c][g]][homs_[a * n_ + b][f]]);
  return local_[gf];
}

std::size_t ExplicitCategory::identity(std::size_t a) const { return local_[ids_[a]]; }

std::string ExplicitCategory::object_label(std::size_t a) const {
  return a < labels_.size() ? labels_[a] : std::to_string(a);
}

// ---- FinSetCategory ----

std::size_t finset_cap() {
  if (const char* e = std::getenv("PIFIN_MAX_FINSET")) return std::strtoul(e, nullptr, 10);
  return 7;
}

FinSetCategory::FinSetCategory(std::size_t max_size) : n_(max_size) {
  if (max_size > finset_cap())
    throw BoundExceeded("PIFIN_MAX_FINSET", finset_cap(), "FinSet of size " + std::to_string(max_size) + " requested");
}

std::size_t FinSetCategory::hom_size(std::size_t a, std::size_t b) const { return ipow(b, a); }

std::vector<std::size_t> FinSetCategory::function(std::size_t a, std::size_t b, std::size_t f) const {
  std::vector<std::size_t> v(a);
  for (std::size_t i = 0; i < a; ++i) {
    v[i] = f % b;
    f /= b;
  }
  return v;
}

std::size_t FinSetCategory::index_of(std::size_t b, const std::vector<std::size_t>& values) const {
  std::size_t idx = 0;
  for (std::size_t i = values.size(); i-- > 0;) idx = idx * b + values[i];
  return idx;
}

std::size_t FinSetCategory::compose(std::size_t a, std::size_t b, std::size_t c, std::size_t g, std::size_t f) const {
  auto fv = function(a, b, f), gv = function(b, c, g);
  for (auto& x : fv) x = gv[x];
  return index_of(c, fv);
}

std::size_t FinSetCategory::identity(std::size_t a) const {
  std::vector<std::size_t> v(a);
  for (std::size_t i = 0; i < a; ++i) v[i] = i;
  return index_of(a, v);
}

bool FinSetCategory::injective(std::size_t a, std::size_t b, std::size_t f) const {
  auto v = function(a, b, f);
  std::vector<bool> hit(b, false);
  for (auto x : v) {
    if (hit[x]) return false;
    hit[x] = true;
  }
  return true;
}

bool FinSetCategory::surjective(std::size_t a, std::size_t b, std::size_t f) const {
  auto v = function(a, b, f);
  std::vector<bool> hit(b, false);
  for (auto x : v) hit[x] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool h) { return h; });
}

bool FinSetCategory::is_iso(std::size_t a, std::size_t b, std::size_t f) const { return a == b && injective(a, b, f); }

std::size_t FinSetCategory::automorphism_count(std::size_t a) const {
  std::size_t r = 1;
  for (std::size_t i = 2; i <= a; ++i) r *= i;
  return r;
}

// ---- PosetCategory ----

PosetCategory::PosetCategory(std::vector<std::vector<bool>> leq, std::vector<std::string> labels)
    : leq_(std::move(leq)), labels_(std::move(labels)) {
  const std::size_t n = leq_.size();
  for (auto& r : leq_)
    if (r.size() != n) throw ValidationError("order relation must be square");
  for (std::size_t a = 0; a < n; ++a) {
    if (!leq_[a][a]) throw ValidationError("order relation is not reflexive");
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && leq_[a][b] && leq_[b][a]) throw ValidationError("order relation is not antisymmetric");
      for (std::size_t c = 0; c < n; ++c)
        if (leq_[a][b] && leq_[b][c] && !leq_[a][c]) throw ValidationError("order relation is not transitive");
    }
  }
}

PosetCategory PosetCategory::divisors(unsigned long n) {
  std::vector<unsigned long> d;
  for (unsigned long k = 1; k <= n; ++k)
    if (n % k == 0) d.push_back(k);
  std::vector<std::vector<bool>> leq(d.size(), std::vector<bool>(d.size()));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < d.size(); ++i) {
    labels.push_back(std::to_string(d[i]));
    for (std::size_t j = 0; j < d.size(); ++j) leq[i][j] = d[j] % d[i] == 0;
  }
  return PosetCategory(std::move(leq), std::move(labels));
}

std::string PosetCategory::object_label(std::size_t a) const {
  return a < labels_.size() ? labels_[a] : std::to_string(a);
}

// ---- functors ----

CatFunctor CatFunctor::constant_functor(const FinCategory& c) {
  CatFunctor f;
  f.dims.assign(c.object_count(), 1);
  f.constant = true;
  return f;
}

ExactMatrix CatFunctor::operator()(const CatMorphism& f) const {
  if (constant) return ExactMatrix::identity(1);
  return map(f);
}

void validate_functor(const FinCategory& c, const CatFunctor& f) {
  const std::size_t n = c.object_count();
  if (f.dims.size() != n) throw ValidationError("functor needs one dimension per object");
  if (f.constant) return;
  if (!f.map) throw ValidationError("functor has no morphism map");
  for (std::size_t a = 0; a < n; ++a) {
    if (!f({a, a, c.identity(a)}).is_identity())
      throw ValidationError("functor does not send the identity of " + c.object_label(a) + " to the identity");
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t m = 0; m < c.hom_size(a, b); ++m) {
        auto x = f({a, b, m});
        if (x.rows() != f.dims[b] || x.cols() != f.dims[a])
          throw DimensionMismatch("functor matrix has the wrong shape on a morphism " + c.object_label(a) + " -> " +
                                  c.object_label(b));
      }
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t cc = 0; cc < n; ++cc)
        for (std::size_t g = 0; g < c.hom_size(b, cc); ++g) {
          auto fg = f({b, cc, g});
          for (std::size_t h = 0; h < c.hom_size(a, b); ++h)
            if (f({a, cc, c.compose(a, b, cc, g, h)}) != fg * f({a, b, h}))
              throw ValidationError("functor does not preserve composition on objects " + c.object_label(a) + ", " +
                                    c.object_label(b) + ", " + c.object_label(cc));
        }
}

CatColimit cat_colimit(const FinCategory& c, const CatFunctor& f) {
  CatColimit out;
  for (auto a : c.representatives()) {
    std::size_t d = f.dims[a];
    CoinvariantBasis cb;
    if (f.constant) {
      cb = {ExactMatrix::identity(1), ExactMatrix::identity(1)};
    } else {
      std::vector<ExactMatrix> acts;
      for (auto g : c.automorphisms(a)) acts.push_back(f({a, a, g}));
      cb = coinvariants(d, acts);
    }
    out.offset.push_back(out.dim);
    out.block.push_back(cb.section.cols());
    out.dim += cb.section.cols();
    out.projection.push_back(std::move(cb.projection));
    out.section.push_back(std::move(cb.section));
  }
  return out;
}

ExactMatrix cat_linearize(const FinCategory& c, const CatFunctor& f, const MorphismFilter& keep) {
  auto cc = cat_colimit(c, f);
  const auto& reps = c.representatives();
  ExactMatrix out(cc.dim, cc.dim);
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = 0; j < reps.size(); ++j) {
      std::size_t a = reps[i], b = reps[j];
      Cyclotomic w = inverse_count(c.automorphism_count(b));
      if (f.constant) {
        std::size_t count = 0;
        if (!keep) {
          count = c.hom_size(a, b);
        } else {
          for (std::size_t m = 0; m < c.hom_size(a, b); ++m)
            if (keep({a, b, m})) ++count;
        }
        out(j, i) = Cyclotomic(static_cast<long>(count)) * w;
        continue;
      }
      ExactMatrix acc(f.dims[b], f.dims[a]);
      for (std::size_t m = 0; m < c.hom_size(a, b); ++m)
        if (keeps(keep, {a, b, m})) acc += f({a, b, m});
      out.set_block(cc.offset[j], cc.offset[i], cc.projection[j] * acc * cc.section[i] * w);
    }
  return out;
}

ExactMatrix cat_linearize_via_spans(const FinCategory& c, const CatFunctor& f) {
  const auto& reps = c.representatives();
  const std::size_t k = reps.size();
  std::vector<std::vector<std::size_t>> autos;
  std::vector<GroupoidComponent> comps;
  std::vector<Representation> rho;
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t a = reps[i];
    autos.push_back(c.automorphisms(a));
    comps.push_back({make_group(c.automorphism_group(a)), {i}});
    Representation r;
    for (auto g : autos.back()) r.push_back(f({a, a, g}));
    rho.push_back(std::move(r));
  }
  auto c0 = make_groupoid(FinGroupoid(std::move(comps)));
  auto sys = make_system(LocalSystem(c0, std::move(rho)));
  auto pr = product(c0, c0);
  // C1 up to equivalence: Aut(a) x Aut(b) acting on C(a, b) by (u, v) f = v f u^-1
  std::vector<SetAction> acts;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      std::size_t a = reps[i], b = reps[j];
      const auto* au = &autos[i];
      const auto* av = &autos[j];
      const FinGroup* ga = &c0->vertex_group(i);
      std::size_t nb = av->size();
      acts.push_back({c.hom_size(a, b), [&c, au, av, ga, nb, a, b](Elem h, std::size_t m) {
                        std::size_t v = (*av)[h % nb];
                        std::size_t uinv = (*au)[ga->inv(static_cast<Elem>(h / nb))];
                        std::size_t mu = c.compose(a, a, b, m, uinv);
                        return c.compose(a, b, b, v, mu);
                      }});
    }
  ElementsGroupoid c1(pr.groupoid, acts);
  auto s = compose(*pr.first, c1.projection());
  auto t = compose(*pr.second, c1.projection());
  std::vector<ExactMatrix> alpha;
  for (std::size_t o = 0; o < c1.groupoid()->object_count(); ++o) {
    std::size_t po = c1.base_object(o);
    std::size_t i = po / k, j = po % k;
    alpha.push_back(f({reps[i], reps[j], c1.element(o)}));
  }
  DecoratedSpan span(s, t, sys, sys, std::move(alpha));
  return linearize(span);
}

namespace {

// Chains a_0 -> ... -> a_n of non-invertible morphisms between representatives,
// weighted by 1/|Aut| of every object after the first. Returns the matrix and
// whether any chain exists.
std::pair<ExactMatrix, bool> chains(const FinCategory& c, const CatFunctor& f, std::size_t n,
                                    const MorphismFilter& keep, const CatColimit& cc) {
  const auto& reps = c.representatives();
  const std::size_t k = reps.size();
  ExactMatrix out(cc.dim, cc.dim);
  if (n == 0) return {ExactMatrix::identity(cc.dim), k > 0};
  bool any = false;
  for (std::size_t i = 0; i < k; ++i) {
    // state per representative: map F(a_i) -> F(rep) summed over chains so far
    std::vector<std::optional<ExactMatrix>> cur(k);
    cur[i] = f.constant ? ExactMatrix::identity(1) : ExactMatrix::identity(f.dims[reps[i]]);
    for (std::size_t step = 0; step < n; ++step) {
      std::vector<std::optional<ExactMatrix>> next(k);
      for (std::size_t x = 0; x < k; ++x) {
        if (!cur[x]) continue;
        for (std::size_t y = 0; y < k; ++y) {
          std::size_t a = reps[x], b = reps[y];
          for (std::size_t m = 0; m < c.hom_size(a, b); ++m) {
            CatMorphism mor{a, b, m};
            if (c.is_iso(a, b, m) || !keeps(keep, mor)) continue;
            ExactMatrix term = f(mor) * *cur[x] * inverse_count(c.automorphism_count(b));
            if (next[y])
              *next[y] += term;
            else
              next[y] = std::move(term);
          }
        }
      }
      cur = std::move(next);
    }
    for (std::size_t y = 0; y < k; ++y)
      if (cur[y]) {
        any = true;
        out.set_block(cc.offset[y], cc.offset[i], cc.projection[y] * *cur[y] * cc.section[i]);
      }
  }
  return {out, any};
}

void check_endomorphisms(const FinCategory& c, const MorphismFilter& keep, const std::string& where) {
  for (auto a : c.representatives())
    for (std::size_t m = 0; m < c.hom_size(a, a); ++m)
      if (keeps(keep, {a, a, m}) && !c.is_iso(a, a, m))
        throw ValidationError(where + "non-invertible endomorphism " + std::to_string(m) + " of object " +
                              c.object_label(a) + "; chain inversion needs invertible endomorphisms (use factorized_invert)");
}

}  // namespace

ExactMatrix chain_linearization(const FinCategory& c, const CatFunctor& f, std::size_t n, const MorphismFilter& keep) {
  return chains(c, f, n, keep, cat_colimit(c, f)).first;
}

MoebiusResult moebius_invert(const FinCategory& c, const CatFunctor& f, const MorphismFilter& keep) {
  check_endomorphisms(c, keep, "");
  auto cc = cat_colimit(c, f);
  const std::size_t k = c.representatives().size();
  MoebiusResult out;
  out.inverse = ExactMatrix::identity(cc.dim);
  for (std::size_t n = 1;; ++n) {
    auto [m, any] = chains(c, f, n, keep, cc);
    if (!any) break;
    if (n >= k) throw Error("chains of non-invertible morphisms longer than the number of isomorphism classes");
    out.chain_length = n;
    if (n % 2)
      out.inverse -= m;
    else
      out.inverse += m;
  }
  auto phi = cat_linearize(c, f, keep);
  if (!(out.inverse * phi).is_identity() || !(phi * out.inverse).is_identity())
    throw Error("alternating chain sum is not an inverse of the linearization");
  return out;
}

// ---- factorization systems ----

FactorizationDiagnosis validate_factorization(const FactorizationSystem& fs) {
  const FinCategory& c = *fs.category;
  const std::size_t n = c.object_count();
  std::vector<std::vector<std::vector<std::size_t>>> ls(n, std::vector<std::vector<std::size_t>>(n)), rs = ls, isos = ls;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t m = 0; m < c.hom_size(a, b); ++m) {
        CatMorphism mor{a, b, m};
        bool l = fs.left(mor), r = fs.right(mor);
        if (c.is_iso(a, b, m)) {
          isos[a][b].push_back(m);
          if (!l || !r) return {false, "an isomorphism is missing from one of the classes", mor};
        }
        if (l) ls[a][b].push_back(m);
        if (r) rs[a][b].push_back(m);
      }
  struct Fact {
    std::size_t mid, l, r;
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t cc = 0; cc < n; ++cc) {
      std::map<std::size_t, std::vector<Fact>> by;
      for (std::size_t b = 0; b < n; ++b)
        for (auto l : ls[a][b])
          for (auto r : rs[b][cc]) by[c.compose(a, b, cc, r, l)].push_back({b, l, r});
      for (std::size_t m = 0; m < c.hom_size(a, cc); ++m) {
        CatMorphism mor{a, cc, m};
        auto it = by.find(m);
        if (it == by.end()) return {false, "morphism has no factorization", mor};
        const Fact& f0 = it->second.front();
        for (auto& fx : it->second) {
          std::size_t count = 0;
          for (auto u : isos[f0.mid][fx.mid])
            if (c.compose(a, f0.mid, fx.mid, u, f0.l) == fx.l && c.compose(f0.mid, fx.mid, cc, fx.r, u) == f0.r) ++count;
          if (count != 1)
            return {false,
                    count == 0 ? "two factorizations are not related by an isomorphism"
                               : "a factorization has a nontrivial automorphism",
                    mor};
        }
      }
    }
  return {};
}

FactorizationSystem surj_inj(const std::shared_ptr<const FinSetCategory>& c) {
  const FinSetCategory* p = c.get();
  return {c, [p](const CatMorphism& f) { return p->surjective(f.src, f.tgt, f.index); },
          [p](const CatMorphism& f) { return p->injective(f.src, f.tgt, f.index); }};
}

FactorizationSystem trivial_all_iso(const CategoryPtr& c) {
  const FinCategory* p = c.get();
  return {c, [](const CatMorphism&) { return true; },
          [p](const CatMorphism& f) { return p->is_iso(f.src, f.tgt, f.index); }};
}

FactorizationSystem trivial_iso_all(const CategoryPtr& c) {
  const FinCategory* p = c.get();
  return {c, [p](const CatMorphism& f) { return p->is_iso(f.src, f.tgt, f.index); },
          [](const CatMorphism&) { return true; }};
}

std::vector<MorphismFilter> NestedSystem::derived() const {
  std::vector<MorphismFilter> t;
  const std::size_t n = levels.size();
  if (n == 0) return {[](const CatMorphism&) { return true; }};
  t.push_back(levels[0].right);
  for (std::size_t l = 1; l < n; ++l) {
    auto r = levels[l].right, lf = levels[l - 1].left;
    t.push_back([r, lf](const CatMorphism& f) { return r(f) && lf(f); });
  }
  t.push_back(levels[n - 1].left);
  return t;
}

void validate_nested(const NestedSystem& ns) {
  for (std::size_t k = 0; k < ns.levels.size(); ++k) {
    auto d = validate_factorization(ns.levels[k]);
    if (!d.ok) throw ValidationError("level " + std::to_string(k + 1) + " is not a factorization system: " + d.reason);
  }
  for (std::size_t k = 1; k < ns.levels.size(); ++k) {
    const FinCategory& c = *ns.levels[k].category;
    for (std::size_t a = 0; a < c.object_count(); ++a)
      for (std::size_t b = 0; b < c.object_count(); ++b)
        for (std::size_t m = 0; m < c.hom_size(a, b); ++m)
          if (ns.levels[k - 1].right({a, b, m}) && !ns.levels[k].right({a, b, m}))
            throw ValidationError("right classes are not nested at level " + std::to_string(k + 1));
  }
}

FactorizedInverse factorized_invert(const FinCategory& c, const NestedSystem& ns, const CatFunctor& f) {
  validate_nested(ns);
  auto t = ns.derived();
  FactorizedInverse out;
  for (std::size_t l = 0; l < t.size(); ++l) {
    check_endomorphisms(c, t[l], "derived class T(" + std::to_string(l) + ") has a ");
    out.factors.push_back(cat_linearize(c, f, t[l]));
    out.inverses.push_back(moebius_invert(c, f, t[l]).inverse);
  }
  ExactMatrix prod = out.factors[0];
  for (std::size_t l = 1; l < t.size(); ++l) prod = prod * out.factors[l];
  auto phi = cat_linearize(c, f);
  if (prod != phi) throw Error("product of factor linearizations differs from the linearization");
  out.inverse = out.inverses.back();
  for (std::size_t l = t.size() - 1; l-- > 0;) out.inverse = out.inverse * out.inverses[l];
  if (!(out.inverse * phi).is_identity() || !(phi * out.inverse).is_identity())
    throw Error("factorized inverse does not invert the linearization");
  return out;
}

// ---- Postnikov factorizations ----

PostnikovFactorization postnikov_factor(const GroupoidFunctor& f, int level) {
  const FinGroupoid& x = *f.source();
  const FinGroupoid& y = *f.target();
  PostnikovFactorization out;
  if (level == -1) {
    std::vector<std::size_t> hit;
    for (std::size_t c = 0; c < x.component_count(); ++c) hit.push_back(f.component_image(c));
    std::sort(hit.begin(), hit.end());
    hit.erase(std::unique(hit.begin(), hit.end()), hit.end());
    std::vector<std::size_t> old;
    out.middle = full_subgroupoid(y, hit, &old);
    std::vector<std::size_t> fresh(y.object_count(), 0);
    for (std::size_t i = 0; i < old.size(); ++i) fresh[old[i]] = i;
    std::vector<std::size_t> lobj;
    std::vector<Elem> lk;
    std::vector<GroupHom> lphi;
    for (std::size_t o = 0; o < x.object_count(); ++o) {
      lobj.push_back(fresh[f.object(o)]);
      lk.push_back(f.transport(o));
    }
    for (std::size_t c = 0; c < x.component_count(); ++c) lphi.push_back(f.local(c));
    out.left.emplace(f.source(), out.middle, lobj, lk, lphi);
    std::vector<Elem> rk;
    std::vector<GroupHom> rphi;
    for (std::size_t o = 0; o < old.size(); ++o) rk.push_back(out.middle->group_at(o).identity());
    for (std::size_t c = 0; c < out.middle->component_count(); ++c) {
      GroupHom id(out.middle->vertex_group(c).order());
      for (Elem h = 0; h < id.size(); ++h) id[h] = h;
      rphi.push_back(id);
    }
    out.right.emplace(out.middle, f.target(), old, rk, rphi);
  } else if (level == 0) {
    std::vector<GroupoidComponent> comps;
    std::vector<GroupHom> lphi, rphi;
    for (std::size_t c = 0; c < x.component_count(); ++c) {
      const FinGroup& h = y.vertex_group(f.component_image(c));
      std::vector<Elem> image(f.local(c).begin(), f.local(c).end());
      std::sort(image.begin(), image.end());
      image.erase(std::unique(image.begin(), image.end()), image.end());
      std::vector<Elem> embed;
      auto sub = make_group(FinGroup::subgroup(h, image, &embed));
      std::vector<Elem> back(h.order(), 0);
      for (Elem i = 0; i < embed.size(); ++i) back[embed[i]] = i;
      GroupHom l(x.vertex_group(c).order());
      for (Elem g = 0; g < l.size(); ++g) l[g] = back[f.local(c)[g]];
      lphi.push_back(std::move(l));
      rphi.push_back(embed);
      comps.push_back({sub, x.component(c).objects});
    }
    out.middle = make_groupoid(FinGroupoid(std::move(comps)));
    std::vector<std::size_t> ids(x.object_count());
    std::vector<Elem> lk(x.object_count());
    for (std::size_t o = 0; o < ids.size(); ++o) {
      ids[o] = o;
      lk[o] = out.middle->group_at(o).identity();
    }
    out.left.emplace(f.source(), out.middle, ids, lk, lphi);
    std::vector<Elem> rk;
    for (std::size_t o = 0; o < ids.size(); ++o) rk.push_back(f.transport(o));
    out.right.emplace(out.middle, f.target(), f.object_map(), rk, rphi);
  } else {
    throw ValidationError("Postnikov level must be -1 or 0");
  }
  if (!(compose(*out.right, *out.left) == f)) throw Error("Postnikov factors do not recompose to the functor");
  return out;
}

bool pi0_surjective(const GroupoidFunctor& f) {
  std::vector<bool> hit(f.target()->component_count(), false);
  for (std::size_t c = 0; c < f.source()->component_count(); ++c) hit[f.component_image(c)] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool h) { return h; });
}

bool pi0_injective(const GroupoidFunctor& f) {
  std::vector<bool> hit(f.target()->component_count(), false);
  for (std::size_t c = 0; c < f.source()->component_count(); ++c) {
    if (hit[f.component_image(c)]) return false;
    hit[f.component_image(c)] = true;
  }
  return true;
}

bool pi1_surjective(const GroupoidFunctor& f) {
  for (std::size_t c = 0; c < f.source()->component_count(); ++c) {
    std::vector<Elem> im(f.local(c).begin(), f.local(c).end());
    std::sort(im.begin(), im.end());
    im.erase(std::unique(im.begin(), im.end()), im.end());
    if (im.size() != f.target()->vertex_group(f.component_image(c)).order()) return false;
  }
  return true;
}

bool pi1_injective(const GroupoidFunctor& f) {
  for (std::size_t c = 0; c < f.source()->component_count(); ++c) {
    const FinGroup& g = f.source()->vertex_group(c);
    const FinGroup& h = f.target()->vertex_group(f.component_image(c));
    for (Elem a = 0; a < g.order(); ++a)
      if (a != g.identity() && f.local(c)[a] == h.identity()) return false;
  }
  return true;
}

}  // namespace pifin
