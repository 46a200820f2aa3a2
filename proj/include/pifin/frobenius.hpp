#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pifin/cyclotomic.hpp"
#include "pifin/fingroup.hpp"
#include "pifin/matrix.hpp"

namespace pifin {

// Finite-dimensional associative unital superalgebra. Vectors are columns in
// the basis e_0..e_{n-1}; left(i) is multiplication by e_i on the left, so
// left(i)(k, j) is the coefficient of e_k in e_i e_j.
class FdAlgebra {
 public:
  FdAlgebra() = default;
  // structure[i][j][k] = coefficient of e_k in e_i e_j; grading 0 (even) / 1 (odd).
  FdAlgebra(std::vector<std::vector<std::vector<Cyclotomic>>> structure, ExactMatrix unit, std::vector<int> grading = {});
  FdAlgebra(std::vector<ExactMatrix> left, ExactMatrix unit, std::vector<int> grading = {});

  static FdAlgebra group_algebra(const FinGroup& g);
  static FdAlgebra diagonal(std::size_t n);  // k^n
  // k[x]/x^n, or the exterior algebra on one odd generator when odd is set (n = 2).
  static FdAlgebra truncated_polynomial(std::size_t n, bool odd = false);
  static FdAlgebra direct_sum(const std::vector<FdAlgebra>& parts);

  std::size_t dim() const { return left_.size(); }
  const ExactMatrix& left(std::size_t i) const { return left_[i]; }
  const ExactMatrix& unit() const { return unit_; }
  int grading(std::size_t i) const { return grading_.empty() ? 0 : grading_[i]; }
  const std::vector<int>& gradings() const { return grading_; }
  Cyclotomic structure(std::size_t i, std::size_t j, std::size_t k) const { return left_[i](k, j); }
  ExactMatrix basis_vector(std::size_t i) const;

  ExactMatrix multiply(const ExactMatrix& a, const ExactMatrix& b) const;
  ExactMatrix left_multiplication(const ExactMatrix& a) const;
  ExactMatrix right_multiplication(const ExactMatrix& a) const;
  bool is_commutative() const;

  // Columns of basis span a subalgebra with its own unit (possibly not ours);
  // the result is expressed in that basis. Throws if not closed or no unit.
  FdAlgebra subalgebra(const ExactMatrix& basis) const;
  // Basis of the center, in reduced echelon form.
  ExactMatrix center_basis() const;
  FdAlgebra center() const { return subalgebra(center_basis()); }

  friend bool operator==(const FdAlgebra& a, const FdAlgebra& b) {
    return a.left_ == b.left_ && a.unit_ == b.unit_ && a.grading_ == b.grading_;
  }

 private:
  std::vector<ExactMatrix> left_;
  ExactMatrix unit_;
  std::vector<int> grading_;
  void validate() const;
};

struct SemisimplicityReport {
  bool semisimple = false;
  std::size_t radical_dim = 0;
  ExactMatrix trace_form;
};
// Trace form of the regular representation (characteristic zero).
SemisimplicityReport is_semisimple(const FdAlgebra& a);

// ab = (-1)^{|a||b|} ba on homogeneous basis elements.
bool super_commutative_check(const FdAlgebra& a);

// Primitive central idempotents over a cyclotomic field containing the
// eigenvalues. Eigenvalues are located numerically, recognized in Q(zeta_N),
// and every identity is then checked exactly. conductor_hint = 0 searches.
std::vector<ExactMatrix> central_idempotents(const FdAlgebra& a, std::uint64_t conductor_hint = 0);

struct EvenDecomposition {
  bool ok = false;
  std::vector<ExactMatrix> idempotents;
  std::string reason;
  std::optional<ExactMatrix> odd_witness;  // nonzero odd element squaring to zero
};
EvenDecomposition even_trivial_decomposition(const FdAlgebra& a, std::uint64_t conductor_hint = 0);

struct Splitting {
  std::vector<ExactMatrix> bases;  // basis of each summand A e_i
  std::vector<FdAlgebra> summands;
};
Splitting split(const FdAlgebra& a, const std::vector<ExactMatrix>& central_idempotents);

class FrobeniusAlgebra {
 public:
  // counit is a row vector; the form (a, b) -> counit(ab) must be non-degenerate.
  FrobeniusAlgebra(FdAlgebra algebra, ExactMatrix counit);
  const FdAlgebra& algebra() const { return a_; }
  const ExactMatrix& counit() const { return eps_; }
  Cyclotomic counit(const ExactMatrix& x) const { return (eps_ * x)(0, 0); }
  // form(i, j) = counit(e_i e_j)
  const ExactMatrix& form() const { return form_; }
  // Columns: the dual basis f^k with counit(e_i f^k) = delta.
  const ExactMatrix& dual_basis() const { return dual_; }
  // Restriction of the counit to the center.
  FrobeniusAlgebra center() const;

 private:
  FdAlgebra a_;
  ExactMatrix eps_, form_, dual_;
};

struct HandleWindow {
  ExactMatrix handle;  // m(Delta(1)) = sum_k e_k f^k
  ExactMatrix window;  // a -> a * handle
  bool window_invertible = false;
  ExactMatrix counit;
  // Closed genus-g surface: counit(handle^g).
  Cyclotomic genus(unsigned g) const;

 private:
  friend HandleWindow handle_and_window(const FrobeniusAlgebra& fa);
  FdAlgebra algebra_;
};
HandleWindow handle_and_window(const FrobeniusAlgebra& fa);

struct TwistedGroupAlgebra {
  Cocycle2 cocycle;
  FdAlgebra algebra;  // basis u_g in group-element order
  const FinGroup& group() const { return cocycle.group(); }
};
// u_g u_h = c(g, h) u_{gh}; the cocycle is validated first.
TwistedGroupAlgebra twisted_group_algebra(const Cocycle2& c);
// counit(u_g) = delta_{g,e} / |G|
FrobeniusAlgebra group_frobenius(const TwistedGroupAlgebra& t);

// zeta_N -> zeta_N^b applied to x, with N a multiple of the conductor of x.
Cyclotomic galois_conjugate(const Cyclotomic& x, std::uint64_t n, std::uint64_t b);

}  // namespace pifin
