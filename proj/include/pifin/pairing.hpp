#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pifin/abelian.hpp"
#include "pifin/fincat.hpp"
#include "pifin/fingroup.hpp"
#include "pifin/groupoid.hpp"
#include "pifin/matrix.hpp"

namespace pifin {

// One component of a mapping space, weighted by its homotopy cardinality.
struct WeightedMorphism {
  std::size_t src = 0, tgt = 0;
  Rational weight = 1;
  std::string label;
};

// Homotopy-category data of a locally finite category with component weights.
// Composition and identities may be partially known (kUnknown); operations that
// need automorphisms throw if the data at an object is missing.
class WeightedCategory {
 public:
  static constexpr long kUnknown = -1;

  // compose[g][f] = g after f, or kUnknown; an empty table means nothing is known.
  WeightedCategory(std::vector<std::string> objects, std::vector<WeightedMorphism> morphisms,
                   std::vector<long> identities = {}, std::vector<std::vector<long>> compose = {});
  // Every morphism weight 1, ordered by (source, target, index).
  static WeightedCategory from_category(const CategoryPtr& c);
  // Objects and arrows of a groupoid, every arrow weight 1.
  static WeightedCategory from_groupoid(const FinGroupoid& g);
  // Objects BG; morphisms Hom(H, G)/G with weight 1/|C_G(im f)|.
  static WeightedCategory group_types(const std::vector<NamedGroup>& groups);

  std::size_t object_count() const { return labels_.size(); }
  std::size_t morphism_count() const { return mors_.size(); }
  const std::string& label(std::size_t a) const { return labels_[a]; }
  const WeightedMorphism& morphism(std::size_t m) const { return mors_[m]; }
  Rational weight(std::size_t m) const { return mors_[m].weight; }
  // Global morphism indices a -> b.
  const std::vector<std::size_t>& hom(std::size_t a, std::size_t b) const { return homs_[a * labels_.size() + b]; }
  long identity(std::size_t a) const { return ids_.empty() ? kUnknown : ids_[a]; }
  // g after f, or kUnknown
  long compose(std::size_t g, std::size_t f) const;

  bool is_iso(std::size_t m) const;
  std::vector<std::size_t> automorphisms(std::size_t a) const;
  // Homotopy cardinality of the automorphism space.
  Rational automorphism_cardinality(std::size_t a) const;
  // First object of each isomorphism class among `objects`, in order.
  std::vector<std::size_t> iso_representatives(const std::vector<std::size_t>& objects) const;
  bool isomorphic(std::size_t a, std::size_t b) const;

  WeightedCategory scaled(const Rational& s) const;
  // Same objects, invertible morphisms only.
  WeightedCategory core() const;

  // Filled by from_category.
  const std::optional<CatMorphism>& origin(std::size_t m) const { return origin_[m]; }
  // Filled by group_types.
  bool has_groups() const { return !groups_.empty(); }
  const FinGroup& group(std::size_t a) const { return *groups_.at(a); }
  const GroupHom& group_hom(std::size_t m) const { return reps_.at(m); }

 private:
  WeightedCategory() = default;
  void index_homs();

  std::vector<std::string> labels_;
  std::vector<WeightedMorphism> mors_;
  std::vector<long> ids_;
  std::function<long(std::size_t, std::size_t)> comp_;
  std::function<bool(std::size_t)> iso_;
  std::vector<std::vector<std::size_t>> homs_;
  std::vector<std::optional<CatMorphism>> origin_;
  std::vector<GroupPtr> groups_;
  std::vector<GroupHom> reps_;
};

// Vector-space valued functor: one matrix per morphism.
struct VecFunctor {
  std::vector<std::size_t> dims;
  std::vector<ExactMatrix> maps;
  static VecFunctor constant(const WeightedCategory& c);
  static VecFunctor from_cat_functor(const WeightedCategory& c, const CatFunctor& f);
};
// Shapes, identities and known compositions.
void validate_functor(const WeightedCategory& c, const VecFunctor& f);

// Abelian-group valued functor; maps are integer matrices on generators.
struct AbFunctor {
  std::vector<FgAbelian> values;
  std::vector<IntMatrix> maps;  // ngens(target) x ngens(source)
  std::vector<long> apply(const WeightedCategory& c, std::size_t m, const std::vector<long>& x) const;
  static AbFunctor trivial(const WeightedCategory& c);
  // A at every object, identity maps.
  static AbFunctor constant(const WeightedCategory& c, const FgAbelian& a);
  // G -> G^ab on a group-type category.
  static AbFunctor abelianization(const WeightedCategory& c);
};
void validate_ab_functor(const WeightedCategory& c, const AbFunctor& om);

// k[Omega(-)] with elements in FgAbelian::elements() order; Omega finite.
VecFunctor group_ring_functor(const WeightedCategory& c, const AbFunctor& om);

// sum over [f] in pi0 C(c, d) of w(f) phi(F(f) v); phi is 1 x dim F(d), v is dim F(c) x 1.
Cyclotomic linear_pairing(const WeightedCategory& c, const VecFunctor& f, std::size_t d, const ExactMatrix& phi,
                          std::size_t src, const ExactMatrix& v);
// sum over [f] in pi0 C(d, c) of w(f) chi(Omega(f) x).
Cyclotomic pontryagin_pairing(const WeightedCategory& c, const AbFunctor& om, std::size_t obj, const Character& chi,
                              std::size_t d, const std::vector<long>& x);

struct DualVectorAt {
  std::size_t object = 0;
  ExactMatrix phi;  // row
};
struct VectorAt {
  std::size_t object = 0;
  ExactMatrix v;  // column
};
struct CharacterAt {
  std::size_t object = 0;
  Character chi;
};
struct ElementAt {
  std::size_t object = 0;
  std::vector<long> x;
};

struct GramResult {
  ExactMatrix matrix;
  std::size_t rank = 0;
  std::optional<Cyclotomic> det;  // square case
  bool full_row_rank() const { return rank == matrix.rows(); }
  bool full_col_rank() const { return rank == matrix.cols(); }
};
GramResult gram_matrix(const WeightedCategory& c, const VecFunctor& f, const std::vector<DualVectorAt>& rows,
                       const std::vector<VectorAt>& cols);
GramResult gram_matrix(const WeightedCategory& c, const AbFunctor& om, const std::vector<CharacterAt>& rows,
                       const std::vector<ElementAt>& cols);

// Bases of the coinvariants of F and of its dual at iso-class representatives.
std::vector<VectorAt> coinvariant_support(const WeightedCategory& c, const VecFunctor& f,
                                          const std::vector<std::size_t>& objects);
std::vector<DualVectorAt> dual_coinvariant_support(const WeightedCategory& c, const VecFunctor& f,
                                                   const std::vector<std::size_t>& objects);
// Automorphism-orbit representatives of characters and of elements.
std::vector<CharacterAt> character_orbit_support(const WeightedCategory& c, const AbFunctor& om,
                                                 const std::vector<std::size_t>& objects);
std::vector<ElementAt> element_orbit_support(const WeightedCategory& c, const AbFunctor& om,
                                             const std::vector<std::size_t>& objects);

using WeightedFilter = std::function<bool(std::size_t morphism)>;

// Linearization between colimits over the core, on the supports above:
// block [b <- a] = (1/|Aut b|) sum over kept [f] of w(f) iota_b F(f) s_a.
ExactMatrix weighted_linearize(const WeightedCategory& c, const VecFunctor& f, const std::vector<std::size_t>& objects,
                               const WeightedFilter& keep = nullptr);
// Pairing restricted to kept morphisms, in the coinvariant bases of both sides.
ExactMatrix pairing_form(const WeightedCategory& c, const VecFunctor& f, const std::vector<std::size_t>& objects,
                         const WeightedFilter& keep = nullptr);

// Object index of the middle of the factorization of morphism m.
using MiddleFn = std::function<std::size_t(std::size_t morphism)>;
// Smallest set of iso-class representatives containing the seed and closed
// under middles; throws BoundExceeded past max_size objects.
std::vector<std::size_t> factorizable_closure(const WeightedCategory& c, const MiddleFn& middle,
                                              const std::vector<std::size_t>& seed, std::size_t max_size = 64);
// (all, iso): the middle is the target.
MiddleFn target_middle(const WeightedCategory& c);
// (Surj, Inj) on a category built by from_category over FinSet: |image|.
MiddleFn image_size_middle(const WeightedCategory& c, const FinSetCategory& fs);
// (pi1-surjective, pi1-injective) on group types: an object isomorphic to B(im f).
MiddleFn image_group_middle(const WeightedCategory& c);

// Psi_A: k[A^] -> k[A]^dual; entry (x, chi) = chi(x) with x, chi in enumeration order.
ExactMatrix character_linearization(const FgAbelian& a);

}  // namespace pifin
