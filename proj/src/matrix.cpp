#include "pifin/matrix.hpp"

#include <sstream>

#include "pifin/error.hpp"

namespace pifin {

ExactMatrix ExactMatrix::identity(std::size_t n) {
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Cyclotomic(1L);
  return m;
}

ExactMatrix ExactMatrix::from_rows(const std::vector<std::vector<Cyclotomic>>& rows) {
  std::size_t c = rows.empty() ? 0 : rows[0].size();
  ExactMatrix m(rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw DimensionMismatch("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

ExactMatrix ExactMatrix::column(const std::vector<Cyclotomic>& v) {
  ExactMatrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

ExactMatrix ExactMatrix::scalar(const Cyclotomic& x) {
  ExactMatrix m(1, 1);
  m(0, 0) = x;
  return m;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(c_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

ExactMatrix ExactMatrix::kron(const ExactMatrix& o) const {
  ExactMatrix k(r_ * o.r_, c_ * o.c_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) {
      const Cyclotomic& x = (*this)(i, j);
      if (x.is_zero()) continue;
      for (std::size_t p = 0; p < o.r_; ++p)
        for (std::size_t q = 0; q < o.c_; ++q)
          if (!o(p, q).is_zero()) k(i * o.r_ + p, j * o.c_ + q) = x * o(p, q);
    }
  return k;
}

ExactMatrix ExactMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > r_ || c0 + nc > c_) throw DimensionMismatch("block out of range");
  ExactMatrix b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

void ExactMatrix::set_block(std::size_t r0, std::size_t c0, const ExactMatrix& b) {
  if (r0 + b.r_ > r_ || c0 + b.c_ > c_) throw DimensionMismatch("block out of range");
  for (std::size_t i = 0; i < b.r_; ++i)
    for (std::size_t j = 0; j < b.c_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

ExactMatrix ExactMatrix::hstack(const ExactMatrix& o) const {
  if (r_ != o.r_) throw DimensionMismatch("hstack row mismatch");
  ExactMatrix m(r_, c_ + o.c_);
  m.set_block(0, 0, *this);
  m.set_block(0, c_, o);
  return m;
}

ExactMatrix ExactMatrix::vstack(const ExactMatrix& o) const {
  if (c_ != o.c_) throw DimensionMismatch("vstack column mismatch");
  ExactMatrix m(r_ + o.r_, c_);
  m.set_block(0, 0, *this);
  m.set_block(r_, 0, o);
  return m;
}

std::vector<Cyclotomic> ExactMatrix::column_vector(std::size_t j) const {
  std::vector<Cyclotomic> v(r_);
  for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
  return v;
}

bool ExactMatrix::is_zero() const {
  for (auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

bool ExactMatrix::is_identity() const {
  if (r_ != c_) return false;
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) {
      const auto& x = (*this)(i, j);
      if (i == j ? !x.is_one() : !x.is_zero()) return false;
    }
  return true;
}

ExactMatrix::Echelon ExactMatrix::echelon() const {
  Echelon e{*this, {}};
  ExactMatrix& m = e.rref;
  std::size_t row = 0;
  for (std::size_t col = 0; col < c_ && row < r_; ++col) {
    std::size_t piv = row;
    while (piv < r_ && m(piv, col).is_zero()) ++piv;
    if (piv == r_) continue;
    if (piv != row)
      for (std::size_t j = 0; j < c_; ++j) std::swap(m(piv, j), m(row, j));
    Cyclotomic inv = m(row, col).inv();
    for (std::size_t j = col; j < c_; ++j)
      if (!m(row, j).is_zero()) m(row, j) *= inv;
    for (std::size_t r = 0; r < r_; ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      Cyclotomic f = m(r, col);
      for (std::size_t j = col; j < c_; ++j)
        if (!m(row, j).is_zero()) m(r, j) -= f * m(row, j);
    }
    e.pivots.push_back(col);
    ++row;
  }
  return e;
}

std::size_t ExactMatrix::rank() const { return echelon().pivots.size(); }

ExactMatrix ExactMatrix::kernel() const {
  auto e = echelon();
  std::vector<bool> is_piv(c_, false);
  for (auto p : e.pivots) is_piv[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < c_; ++j)
    if (!is_piv[j]) free.push_back(j);
  ExactMatrix k(c_, free.size());
  for (std::size_t f = 0; f < free.size(); ++f) {
    k(free[f], f) = Cyclotomic(1L);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) k(e.pivots[r], f) = -e.rref(r, free[f]);
  }
  return k;
}

ExactMatrix ExactMatrix::inverse() const {
  if (r_ != c_) throw DimensionMismatch("inverse of non-square matrix");
  return solve(identity(r_));
}

ExactMatrix ExactMatrix::solve(const ExactMatrix& b) const {
  if (b.r_ != r_) throw DimensionMismatch("solve: row mismatch");
  auto e = hstack(b).echelon();
  std::size_t rank = 0;
  while (rank < e.pivots.size() && e.pivots[rank] < c_) ++rank;
  if (rank < c_) throw SingularMatrix(rank, c_);
  if (e.pivots.size() > rank) throw Error("solve: inconsistent system");
  return e.rref.block(0, c_, c_, b.c_);
}

Cyclotomic ExactMatrix::det() const {
  if (r_ != c_) throw DimensionMismatch("determinant of non-square matrix");
  ExactMatrix m = *this;
  Cyclotomic d(1L);
  for (std::size_t col = 0; col < c_; ++col) {
    std::size_t piv = col;
    while (piv < r_ && m(piv, col).is_zero()) ++piv;
    if (piv == r_) return Cyclotomic(0L);
    if (piv != col) {
      for (std::size_t j = 0; j < c_; ++j) std::swap(m(piv, j), m(col, j));
      d = -d;
    }
    d *= m(col, col);
    Cyclotomic inv = m(col, col).inv();
    for (std::size_t r = col + 1; r < r_; ++r) {
      if (m(r, col).is_zero()) continue;
      Cyclotomic f = m(r, col) * inv;
      for (std::size_t j = col; j < c_; ++j)
        if (!m(col, j).is_zero()) m(r, j) -= f * m(col, j);
    }
  }
  return d;
}

ExactMatrix& ExactMatrix::operator+=(const ExactMatrix& o) {
  if (r_ != o.r_ || c_ != o.c_) throw DimensionMismatch("matrix sum shape mismatch");
  for (std::size_t i = 0; i < a_.size(); ++i)
    if (!o.a_[i].is_zero()) a_[i] += o.a_[i];
  return *this;
}

ExactMatrix& ExactMatrix::operator-=(const ExactMatrix& o) {
  if (r_ != o.r_ || c_ != o.c_) throw DimensionMismatch("matrix difference shape mismatch");
  for (std::size_t i = 0; i < a_.size(); ++i)
    if (!o.a_[i].is_zero()) a_[i] -= o.a_[i];
  return *this;
}

ExactMatrix& ExactMatrix::operator*=(const Cyclotomic& s) {
  for (auto& x : a_)
    if (!x.is_zero()) x *= s;
  return *this;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.c_ != b.r_)
    throw DimensionMismatch("matrix product " + std::to_string(a.r_) + "x" + std::to_string(a.c_) + " * " +
                            std::to_string(b.r_) + "x" + std::to_string(b.c_));
  ExactMatrix p(a.r_, b.c_);
  for (std::size_t i = 0; i < a.r_; ++i)
    for (std::size_t k = 0; k < a.c_; ++k) {
      const Cyclotomic& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.c_; ++j)
        if (!b(k, j).is_zero()) p(i, j) += x * b(k, j);
    }
  return p;
}

bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.r_ != b.r_ || a.c_ != b.c_) return false;
  for (std::size_t i = 0; i < a.a_.size(); ++i)
    if (a.a_[i] != b.a_[i]) return false;
  return true;
}

std::string ExactMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < r_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < c_; ++j) os << (j ? ", " : "") << (*this)(i, j).str();
    os << "]";
  }
  os << "]";
  return os.str();
}

ExactMatrix direct_sum(const std::vector<ExactMatrix>& blocks) {
  std::size_t r = 0, c = 0;
  for (auto& b : blocks) {
    r += b.rows();
    c += b.cols();
  }
  ExactMatrix m(r, c);
  r = c = 0;
  for (auto& b : blocks) {
    m.set_block(r, c, b);
    r += b.rows();
    c += b.cols();
  }
  return m;
}

}  // namespace pifin
