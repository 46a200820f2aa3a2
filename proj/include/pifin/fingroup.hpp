#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pifin/cyclotomic.hpp"

namespace pifin {

using Elem = std::uint32_t;

// Finite group stored as a full multiplication table.
class FinGroup {
 public:
  FinGroup();  // trivial group
  // Validates all group axioms; throws ValidationError naming the first failure.
  static FinGroup from_table(const std::vector<std::vector<Elem>>& mul, std::vector<std::string> labels = {});
  // Permutations of {0..degree-1}; product p*q means "apply q, then p".
  static FinGroup from_permutations(const std::vector<std::vector<int>>& gens, int degree);
  static FinGroup cyclic(std::size_t n);
  // Element index = x_0 + d_0 x_1 + d_0 d_1 x_2 + ...
  static FinGroup abelian(const std::vector<std::size_t>& factors);
  static FinGroup symmetric(int n);
  static FinGroup dihedral(std::size_t n);  // order 2n
  static FinGroup quaternion();
  // <a, x | a^2n, x^2 = a^n, x a x^-1 = a^-1>, order 4n; a^k x^j at index k + 2n j
  static FinGroup dicyclic(std::size_t n);
  static FinGroup alternating(int n);
  static FinGroup direct_product(const FinGroup& a, const FinGroup& b);  // (x, y) -> x * |b| + y
  // Subgroup on the listed elements; `embed` receives new index -> old index.
  static FinGroup subgroup(const FinGroup& g, std::vector<Elem> elems, std::vector<Elem>* embed = nullptr);

  std::size_t order() const { return n_; }
  Elem identity() const { return e_; }
  Elem mul(Elem a, Elem b) const { return t_[a * n_ + b]; }
  Elem inv(Elem a) const { return inv_[a]; }
  Elem conj(Elem g, Elem x) const { return mul(mul(g, x), inv(g)); }
  Elem commutator(Elem a, Elem b) const { return mul(mul(a, b), mul(inv(a), inv(b))); }
  Elem power(Elem a, long k) const;
  std::size_t element_order(Elem a) const;
  std::size_t exponent() const;
  bool is_abelian() const;
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(Elem a) const;

  std::vector<Elem> closure(const std::vector<Elem>& gens) const;
  std::vector<Elem> centralizer(const std::vector<Elem>& s) const;
  std::vector<std::vector<Elem>> conjugacy_classes() const;
  // Deterministic small generating set.
  std::vector<Elem> generators() const;
  std::vector<Elem> derived_subgroup() const;
  bool is_normal(const std::vector<Elem>& sub) const;
  // Quotient by a normal subgroup; `proj` receives the projection map.
  FinGroup quotient(const std::vector<Elem>& normal, std::vector<Elem>* proj = nullptr) const;
  std::vector<std::vector<Elem>> table_rows() const;

  friend bool operator==(const FinGroup& a, const FinGroup& b) { return a.n_ == b.n_ && a.e_ == b.e_ && a.t_ == b.t_; }

 private:
  std::size_t n_ = 1;
  Elem e_ = 0;
  std::vector<Elem> t_{0};
  std::vector<Elem> inv_{0};
  std::vector<std::string> labels_;
  void finish_unchecked();
};

struct NamedGroup {
  std::string name;
  FinGroup group;
};
// One group from each isomorphism class of order <= max_order (max_order <= 12).
std::vector<NamedGroup> small_groups(std::size_t max_order);

using GroupPtr = std::shared_ptr<const FinGroup>;
GroupPtr make_group(FinGroup g);

// Homomorphism given by the image of every element.
using GroupHom = std::vector<Elem>;

// Extends generator images to a homomorphism if possible.
std::optional<GroupHom> extend_homomorphism(const FinGroup& src, const std::vector<Elem>& gens,
                                            const std::vector<Elem>& images, const FinGroup& tgt);
std::vector<GroupHom> homomorphisms(const FinGroup& src, const FinGroup& tgt);
std::optional<GroupHom> find_isomorphism(const FinGroup& a, const FinGroup& b);
inline bool isomorphic(const FinGroup& a, const FinGroup& b) { return find_isomorphism(a, b).has_value(); }
std::vector<GroupHom> automorphisms(const FinGroup& g);

// Normalized 2-cocycle with values zeta_N^e(g,h).
class Cocycle2 {
 public:
  Cocycle2(GroupPtr g, unsigned n, std::vector<std::vector<long>> exponents);
  static Cocycle2 trivial(GroupPtr g);
  // c'(g,h) = c(g,h) * f(g) f(h) / f(gh), f(g) = zeta_N^{f_g}
  Cocycle2 times_coboundary(const std::vector<long>& f) const;
  // c'(x,y) = c(phi x, phi y) along a homomorphism src -> group()
  Cocycle2 pullback(GroupPtr src, const GroupHom& phi) const;

  const FinGroup& group() const { return *g_; }
  GroupPtr group_ptr() const { return g_; }
  unsigned root_order() const { return n_; }
  unsigned exponent(Elem a, Elem b) const { return e_[a * g_->order() + b]; }
  Cyclotomic value(Elem a, Elem b) const { return Cyclotomic::zeta(n_, exponent(a, b)); }
  std::vector<std::vector<long>> table() const;

 private:
  GroupPtr g_;
  unsigned n_;
  std::vector<unsigned> e_;
};

struct CocycleDiagnosis {
  bool ok = true;
  std::string reason;
  std::optional<std::array<Elem, 3>> triple;
};
CocycleDiagnosis validate_cocycle(const Cocycle2& c);

}  // namespace pifin
