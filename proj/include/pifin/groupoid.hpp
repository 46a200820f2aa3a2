#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pifin/fingroup.hpp"
#include "pifin/matrix.hpp"

namespace pifin {

// Morphism src -> tgt in normal form: p_tgt * h * p_src^{-1}, where p_x is the
// connecting arrow from the base object of the component and h lies in the
// vertex group of that component.
struct Morphism {
  std::size_t src = 0, tgt = 0;
  Elem h = 0;
  friend bool operator==(const Morphism& a, const Morphism& b) { return a.src == b.src && a.tgt == b.tgt && a.h == b.h; }
};

struct GroupoidComponent {
  GroupPtr group;                    // automorphisms of the base object
  std::vector<std::size_t> objects;  // objects[0] is the base object
};

class FinGroupoid {
 public:
  FinGroupoid() = default;
  explicit FinGroupoid(std::vector<GroupoidComponent> comps);
  static FinGroupoid point();
  static FinGroupoid classifying(GroupPtr g);
  static FinGroupoid discrete(std::size_t n);

  std::size_t object_count() const { return comp_of_.size(); }
  std::size_t component_count() const { return comps_.size(); }
  const GroupoidComponent& component(std::size_t c) const { return comps_[c]; }
  std::size_t component_of(std::size_t x) const { return comp_of_[x]; }
  std::size_t base(std::size_t c) const { return comps_[c].objects[0]; }
  const FinGroup& vertex_group(std::size_t c) const { return *comps_[c].group; }
  const FinGroup& group_at(std::size_t x) const { return *comps_[comp_of_[x]].group; }
  std::size_t morphism_count() const;

  Morphism identity(std::size_t x) const { return {x, x, group_at(x).identity()}; }
  Morphism connecting(std::size_t x) const { return {base(comp_of_[x]), x, group_at(x).identity()}; }
  Morphism compose(const Morphism& f, const Morphism& g) const;  // f after g
  Morphism inverse(const Morphism& f) const;
  bool connected(std::size_t x, std::size_t y) const { return comp_of_[x] == comp_of_[y]; }
  // All morphisms x -> y, ordered by vertex-group element.
  std::vector<Morphism> hom(std::size_t x, std::size_t y) const;

  Rational cardinality_at(std::size_t x) const;
  Rational total_cardinality() const;

 private:
  std::vector<GroupoidComponent> comps_;
  std::vector<std::size_t> comp_of_;
};

using GroupoidPtr = std::shared_ptr<const FinGroupoid>;
GroupoidPtr make_groupoid(FinGroupoid g);

// Homotopy cardinality from the orders of pi_1, pi_2, ...
Rational pi_cardinality(const std::vector<unsigned long>& orders);

// Functor given by an object map, the images of connecting arrows (as vertex
// group elements of the target) and a vertex-group homomorphism per component.
class GroupoidFunctor {
 public:
  GroupoidFunctor(GroupoidPtr src, GroupoidPtr tgt, std::vector<std::size_t> objects, std::vector<Elem> transport,
                  std::vector<GroupHom> local);
  // Reads off the functor data from a morphism map, then checks it.
  static GroupoidFunctor from_map(GroupoidPtr src, GroupoidPtr tgt, const std::function<Morphism(const Morphism&)>& f);
  static GroupoidFunctor identity(GroupoidPtr x);
  static GroupoidFunctor constant(GroupoidPtr src, GroupoidPtr tgt, std::size_t object);

  const GroupoidPtr& source() const { return src_; }
  const GroupoidPtr& target() const { return tgt_; }
  std::size_t object(std::size_t x) const { return obj_[x]; }
  const std::vector<std::size_t>& object_map() const { return obj_; }
  Elem transport(std::size_t x) const { return k_[x]; }
  const GroupHom& local(std::size_t c) const { return phi_[c]; }
  // Component of the target hit by component c of the source.
  std::size_t component_image(std::size_t c) const;
  Morphism operator()(const Morphism& m) const;

  friend bool operator==(const GroupoidFunctor& a, const GroupoidFunctor& b);

 private:
  GroupoidPtr src_, tgt_;
  std::vector<std::size_t> obj_;
  std::vector<Elem> k_;
  std::vector<GroupHom> phi_;
};

// g after f
GroupoidFunctor compose(const GroupoidFunctor& g, const GroupoidFunctor& f);

// Left action of each base vertex group on a finite set attached to the base
// object; other objects carry the transported copy.
struct SetAction {
  std::size_t size = 0;
  std::function<std::size_t(Elem, std::size_t)> act;
};

// Groupoid of elements of a set-valued functor on a base groupoid. Object
// (x, i) stands for the element i of the base-object set, moved to x along
// the connecting arrow.
class ElementsGroupoid {
 public:
  ElementsGroupoid(GroupoidPtr base, const std::vector<SetAction>& actions);

  const GroupoidPtr& groupoid() const { return g_; }
  const GroupoidFunctor& projection() const { return *proj_; }
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t object(std::size_t x, std::size_t i) const;
  std::size_t base_object(std::size_t obj) const { return label_[obj].first; }
  std::size_t element(std::size_t obj) const { return label_[obj].second; }
  // Lift of m: x -> y starting at (x, i).
  Morphism lift(const Morphism& m, std::size_t i) const;

 private:
  GroupoidPtr base_, g_;
  std::optional<GroupoidFunctor> proj_;
  std::vector<SetAction> actions_;
  std::vector<std::size_t> offset_;
  std::vector<std::pair<std::size_t, std::size_t>> label_;
  std::vector<std::vector<Elem>> trans_;      // per base component, per element
  std::vector<std::vector<std::size_t>> orbit_;  // per base component, per element -> result component
  std::vector<std::vector<Elem>> sub_index_;  // per result component: vertex element -> stabilizer index
};

struct HomotopyFiber {
  GroupoidPtr groupoid;
  std::optional<GroupoidFunctor> inclusion;
  std::vector<Morphism> gamma;  // per object (x, gamma): a -> F(x)
};
HomotopyFiber homotopy_fiber(const GroupoidFunctor& f, std::size_t a);

struct HomotopyPullback {
  GroupoidPtr groupoid;
  std::optional<GroupoidFunctor> left, right;
  std::vector<Morphism> gamma;  // per object (x, y, gamma): F(x) -> G(y)
};
HomotopyPullback homotopy_pullback(const GroupoidFunctor& f, const GroupoidFunctor& g);

struct ProductGroupoid {
  GroupoidPtr groupoid;  // object (x1, x2) has index x1 * |X2| + x2
  std::optional<GroupoidFunctor> first, second;
  GroupoidPtr left_factor, right_factor;
};
ProductGroupoid product(const GroupoidPtr& a, const GroupoidPtr& b);
// F1 x F2 between product groupoids.
GroupoidFunctor product_functor(const ProductGroupoid& src, const ProductGroupoid& tgt, const GroupoidFunctor& f1,
                                const GroupoidFunctor& f2);
Morphism pair_morphism(const ProductGroupoid& p, const Morphism& m1, const Morphism& m2);

// Full subgroupoid on a set of components; `objects` receives new -> old object.
GroupoidPtr full_subgroupoid(const FinGroupoid& x, const std::vector<std::size_t>& comps,
                             std::vector<std::size_t>* objects = nullptr);

// Group acting on a set through permutations (one per group element).
struct ActionGroupoid {
  GroupoidPtr groupoid;
  std::shared_ptr<ElementsGroupoid> elements;
};
ActionGroupoid action_groupoid(GroupPtr g, std::size_t set_size, const std::function<std::size_t(Elem, std::size_t)>& act);

// Explicit groupoid data: compose[f][g] = f after g, or nullopt.
struct ExplicitGroupoid {
  std::size_t objects = 0;
  std::vector<std::pair<std::size_t, std::size_t>> morphisms;  // (src, tgt)
  std::vector<std::size_t> identity;
  std::vector<std::vector<std::optional<std::size_t>>> compose;
};
struct NormalizedGroupoid {
  GroupoidPtr groupoid;
  std::vector<Morphism> morphisms;  // explicit index -> normal form
};
// Checks the axioms exhaustively.
NormalizedGroupoid normalize(const ExplicitGroupoid& e);

// Sum over components of cardinality * alpha(component); all values share a shape.
ExactMatrix path_integral(const FinGroupoid& x, const std::vector<ExactMatrix>& alpha);

// Both sides of the Fubini identity for s: X -> A.
struct FubiniReport {
  ExactMatrix direct, iterated;
  bool equal = false;
};
FubiniReport fubini_check(const GroupoidFunctor& s, const std::vector<ExactMatrix>& alpha);

// Same multiset of vertex-group isomorphism classes.
bool equivalent(const FinGroupoid& a, const FinGroupoid& b);

}  // namespace pifin
