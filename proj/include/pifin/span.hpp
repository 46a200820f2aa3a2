#pragma once

#include <memory>
#include <vector>

#include "pifin/groupoid.hpp"
#include "pifin/matrix.hpp"
#include "pifin/reps.hpp"

namespace pifin {

// Functor from a groupoid to vector spaces. On each component it is stored as
// a representation of the vertex group at the base object plus the image of
// every connecting arrow; L(x, y, h) = T_y rho(h) T_x^{-1}.
class LocalSystem {
 public:
  // transport may be empty (all identities). parity[c][i] marks basis vector i
  // of component c as odd; empty means everything is even.
  LocalSystem(GroupoidPtr base, std::vector<Representation> rho, std::vector<ExactMatrix> transport = {},
              std::vector<std::vector<bool>> parity = {});
  static LocalSystem trivial(GroupoidPtr base, std::size_t dim = 1);
  // Same representation on every component with group g.
  static LocalSystem on_classifying(GroupPtr g, Representation rho);
  // F^* L
  static LocalSystem pullback(const GroupoidFunctor& f, const LocalSystem& l);
  // External tensor product on a product groupoid.
  static LocalSystem external_tensor(const ProductGroupoid& p, const LocalSystem& a, const LocalSystem& b);

  const GroupoidPtr& base() const { return base_; }
  std::size_t dim(std::size_t c) const { return rho_[c][0].rows(); }
  std::size_t dim_at(std::size_t x) const { return dim(base_->component_of(x)); }
  std::size_t odd_dim(std::size_t c) const;
  const std::vector<bool>& parity(std::size_t c) const { return parity_[c]; }
  const ExactMatrix& rho(std::size_t c, Elem h) const { return rho_[c][h]; }
  const Representation& representation(std::size_t c) const { return rho_[c]; }
  const ExactMatrix& transport(std::size_t x) const { return t_[x]; }
  const ExactMatrix& transport_inverse(std::size_t x) const { return tinv_[x]; }
  ExactMatrix operator()(const Morphism& m) const;

  friend bool operator==(const LocalSystem& a, const LocalSystem& b);

 private:
  GroupoidPtr base_;
  std::vector<Representation> rho_;
  std::vector<ExactMatrix> t_, tinv_;
  std::vector<std::vector<bool>> parity_;
};

using LocalSystemPtr = std::shared_ptr<const LocalSystem>;
LocalSystemPtr make_system(LocalSystem l);

// Quotient of k^d by the span of the columns of `relations`: projection (q x d)
// kills the relations, section (d x q) picks standard vectors, projection * section = I.
struct CoinvariantBasis {
  ExactMatrix projection, section;
};
CoinvariantBasis coinvariants(std::size_t d, const ExactMatrix& relations);
// relations from g - I for each listed action
CoinvariantBasis coinvariants(std::size_t d, const std::vector<ExactMatrix>& actions);

// Coinvariants, one block per component.
struct Colimit {
  LocalSystemPtr system;
  std::vector<std::size_t> offset, block;
  std::vector<ExactMatrix> projection;  // block x d: L(base) -> block
  std::vector<ExactMatrix> section;     // d x block, projection * section = I
  std::size_t dim = 0;
  // L(x) -> colim
  ExactMatrix iota(std::size_t x) const;
};
Colimit colim(const LocalSystemPtr& l);

// Invariants, one block per component.
struct Limit {
  LocalSystemPtr system;
  std::vector<std::size_t> offset, block;
  std::vector<ExactMatrix> basis;        // d x block, invariant vectors at the base
  std::vector<ExactMatrix> coordinates;  // block x d, left inverse of basis
  std::size_t dim = 0;
  // lim -> L(x)
  ExactMatrix restrict_to(std::size_t x) const;
};
Limit lim(const LocalSystemPtr& l);

// [v] -> sum over Aut(base) of L(g) v, per component.
std::vector<ExactMatrix> norm_map(const Colimit& c, const Limit& l);
ExactMatrix norm_matrix(const Colimit& c, const Limit& l);

// Span A <-s- X -t-> B with alpha_x : L_A(s x) -> L_B(t x).
class DecoratedSpan {
 public:
  DecoratedSpan(GroupoidFunctor s, GroupoidFunctor t, LocalSystemPtr la, LocalSystemPtr lb,
                std::vector<ExactMatrix> alpha);
  static DecoratedSpan identity(const LocalSystemPtr& l);

  const GroupoidFunctor& source_leg() const { return s_; }
  const GroupoidFunctor& target_leg() const { return t_; }
  const GroupoidPtr& apex() const { return s_.source(); }
  const LocalSystemPtr& source_system() const { return la_; }
  const LocalSystemPtr& target_system() const { return lb_; }
  const ExactMatrix& decoration(std::size_t x) const { return alpha_[x]; }
  const std::vector<ExactMatrix>& decorations() const { return alpha_; }

 private:
  GroupoidFunctor s_, t_;
  LocalSystemPtr la_, lb_;
  std::vector<ExactMatrix> alpha_;
};

// Basis of the space of natural maps s^* L_A -> t^* L_B, each given per object.
std::vector<std::vector<ExactMatrix>> natural_decorations(const GroupoidFunctor& s, const GroupoidFunctor& t,
                                                          const LocalSystem& la, const LocalSystem& lb);

// colim L_A -> colim L_B
ExactMatrix linearize(const DecoratedSpan& s, const Colimit& ca, const Colimit& cb);
ExactMatrix linearize(const DecoratedSpan& s);
// lim L_A -> lim L_B
ExactMatrix linearize_limit(const DecoratedSpan& s, const Limit& la, const Limit& lb);

// s2 after s1
DecoratedSpan compose(const DecoratedSpan& s2, const DecoratedSpan& s1);

struct TensorSpan {
  std::shared_ptr<DecoratedSpan> span;
  ProductGroupoid source, apex, target;
};
TensorSpan tensor(const DecoratedSpan& a, const DecoratedSpan& b);
// colim(L1) (x) colim(L2) -> colim(L1 [x] L2), Kronecker ordering of the left side.
ExactMatrix tensor_comparison(const Colimit& product, const Colimit& a, const Colimit& b);

}  // namespace pifin
