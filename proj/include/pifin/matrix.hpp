#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pifin/cyclotomic.hpp"

namespace pifin {

class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t r, std::size_t c) : r_(r), c_(c), a_(r * c) {}
  static ExactMatrix identity(std::size_t n);
  static ExactMatrix from_rows(const std::vector<std::vector<Cyclotomic>>& rows);
  static ExactMatrix column(const std::vector<Cyclotomic>& v);
  static ExactMatrix scalar(const Cyclotomic& x);

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  Cyclotomic& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const Cyclotomic& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  ExactMatrix transpose() const;
  ExactMatrix kron(const ExactMatrix& o) const;
  ExactMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const ExactMatrix& b);
  ExactMatrix hstack(const ExactMatrix& o) const;
  ExactMatrix vstack(const ExactMatrix& o) const;
  ExactMatrix col(std::size_t j) const { return block(0, j, r_, 1); }
  std::vector<Cyclotomic> column_vector(std::size_t j) const;

  bool is_zero() const;
  bool is_identity() const;

  struct Echelon;
  Echelon echelon() const;
  std::size_t rank() const;
  // Columns form a basis of the null space; free variables in increasing order.
  ExactMatrix kernel() const;
  ExactMatrix inverse() const;
  Cyclotomic det() const;
  // Unique X with (*this) X = B; throws SingularMatrix if no unique solution exists.
  ExactMatrix solve(const ExactMatrix& b) const;

  ExactMatrix& operator+=(const ExactMatrix& o);
  ExactMatrix& operator-=(const ExactMatrix& o);
  ExactMatrix& operator*=(const Cyclotomic& s);
  friend ExactMatrix operator+(ExactMatrix a, const ExactMatrix& b) { return a += b; }
  friend ExactMatrix operator-(ExactMatrix a, const ExactMatrix& b) { return a -= b; }
  friend ExactMatrix operator*(ExactMatrix a, const Cyclotomic& s) { return a *= s; }
  friend ExactMatrix operator*(const Cyclotomic& s, ExactMatrix a) { return a *= s; }
  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b);
  friend bool operator!=(const ExactMatrix& a, const ExactMatrix& b) { return !(a == b); }

  std::string str() const;

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<Cyclotomic> a_;
};

struct ExactMatrix::Echelon {
  ExactMatrix rref;
  std::vector<std::size_t> pivots;
};

// Block-diagonal assembly.
ExactMatrix direct_sum(const std::vector<ExactMatrix>& blocks);

}  // namespace pifin
