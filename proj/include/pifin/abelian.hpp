#pragma once

#include <gmpxx.h>

#include <vector>

#include "pifin/cyclotomic.hpp"
#include "pifin/fingroup.hpp"
#include "pifin/matrix.hpp"

namespace pifin {

using Integer = mpz_class;
using IntMatrix = std::vector<std::vector<Integer>>;

// U * M * V = diag(d), U and V unimodular, d_i | d_{i+1}, d_i >= 0.
struct SmithForm {
  std::vector<Integer> diag;  // length min(rows, cols)
  IntMatrix u, v;
};
SmithForm smith_normal_form(const IntMatrix& m, std::size_t rows, std::size_t cols);

IntMatrix int_mul(const IntMatrix& a, const IntMatrix& b);

// Z/d_1 + ... + Z/d_k with d_i | d_{i+1}; d_i = 0 is a free factor Z (free factors last).
class FgAbelian {
 public:
  FgAbelian() = default;
  explicit FgAbelian(std::vector<long> factors);

  const std::vector<long>& factors() const { return d_; }
  std::size_t ngens() const { return d_.size(); }
  bool is_finite() const;
  std::size_t free_rank() const;
  std::size_t order() const;  // throws for infinite groups

  std::vector<long> reduce(std::vector<long> x) const;
  std::vector<long> add(const std::vector<long>& a, const std::vector<long>& b) const;
  std::vector<long> neg(const std::vector<long>& a) const;
  // Mixed-radix enumeration, first coordinate fastest.
  std::vector<std::vector<long>> elements() const;
  std::size_t index_of(const std::vector<long>& x) const;

  friend bool operator==(const FgAbelian& a, const FgAbelian& b) { return a.d_ == b.d_; }

 private:
  std::vector<long> d_;
};

// Cokernel of an integer matrix (rows = generators, columns = relations), with
// the projection Z^rows -> A as an integer matrix (A.ngens() x rows).
struct Presentation {
  FgAbelian group;
  IntMatrix projection;
  std::vector<long> project(const std::vector<long>& x) const;
};
Presentation cokernel(const IntMatrix& relations, std::size_t rows, std::size_t cols);

// Finite-order character: generator i maps to zeta_{orders[i]}^{exps[i]}.
struct Character {
  FgAbelian group;
  std::vector<long> orders;
  std::vector<long> exps;

  Cyclotomic value(const std::vector<long>& x) const;
  // exponent e with value(x) = zeta_{root_order()}^e
  long exponent(const std::vector<long>& x) const;
  long root_order() const;
  Character operator*(const Character& o) const;
  friend bool operator==(const Character& a, const Character& b) {
    return a.group == b.group && a.orders == b.orders && a.exps == b.exps;
  }
};

// All characters of A (|A| of them). Free factors require free_order > 0 and
// then map to the free_order-th roots of unity.
std::vector<Character> characters(const FgAbelian& a, long free_order = 0);
Character trivial_character(const FgAbelian& a);

// Matrix [chi_i(x_j)] over characters(a) and a.elements().
ExactMatrix character_table(const FgAbelian& a);

// Abelian FinGroup as an FgAbelian plus coordinates of each element and a
// representative element for each cyclic generator.
struct AbelianStructure {
  FgAbelian group;
  std::vector<std::vector<long>> coords;  // element -> coordinates
  std::vector<Elem> generators;
  Elem element_of(const std::vector<long>& x) const;
};
AbelianStructure abelian_structure(const FinGroup& g);

// G^ab = G / [G,G] with the projection.
struct Abelianization {
  FinGroup quotient;
  std::vector<Elem> proj;
  AbelianStructure structure;
};
Abelianization abelianization(const FinGroup& g);

}  // namespace pifin
