#include "pifin/abelian.hpp"

#include <algorithm>
#include <numeric>

#include "pifin/error.hpp"

namespace pifin {

IntMatrix int_mul(const IntMatrix& a, const IntMatrix& b) {
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  IntMatrix r(n, std::vector<Integer>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l)
      if (sgn(a[i][l]) != 0)
        for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
  return r;
}

namespace {
IntMatrix int_identity(std::size_t n) {
  IntMatrix r(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = 1;
  return r;
}
}  // namespace

SmithForm smith_normal_form(const IntMatrix& m, std::size_t r, std::size_t c) {
  if (m.size() != r) throw DimensionMismatch("integer matrix has wrong number of rows");
  for (auto& row : m)
    if (row.size() != c) throw DimensionMismatch("integer matrix has ragged rows");
  IntMatrix a = m, u = int_identity(r), v = int_identity(c);

  auto row_axpy = [&](std::size_t dst, std::size_t src, const Integer& q) {  // row_dst -= q row_src
    for (std::size_t j = 0; j < c; ++j) a[dst][j] -= q * a[src][j];
    for (std::size_t j = 0; j < r; ++j) u[dst][j] -= q * u[src][j];
  };
  auto col_axpy = [&](std::size_t dst, std::size_t src, const Integer& q) {
    for (std::size_t i = 0; i < r; ++i) a[i][dst] -= q * a[i][src];
    for (std::size_t i = 0; i < c; ++i) v[i][dst] -= q * v[i][src];
  };

  const std::size_t k = std::min(r, c);
  std::size_t t = 0;
  for (; t < k; ++t) {
    bool any = false;
    while (true) {
      std::size_t bi = 0, bj = 0;
      any = false;
      for (std::size_t i = t; i < r; ++i)
        for (std::size_t j = t; j < c; ++j)
          if (sgn(a[i][j]) != 0 && (!any || abs(a[i][j]) < abs(a[bi][bj]))) {
            bi = i;
            bj = j;
            any = true;
          }
      if (!any) break;
      std::swap(a[t], a[bi]);
      std::swap(u[t], u[bi]);
      if (bj != t) {
        for (std::size_t i = 0; i < r; ++i) std::swap(a[i][t], a[i][bj]);
        for (std::size_t i = 0; i < c; ++i) std::swap(v[i][t], v[i][bj]);
      }
      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i)
        if (sgn(a[i][t]) != 0) {
          Integer q = a[i][t] / a[t][t];
          row_axpy(i, t, q);
          if (sgn(a[i][t]) != 0) clean = false;
        }
      for (std::size_t j = t + 1; j < c; ++j)
        if (sgn(a[t][j]) != 0) {
          Integer q = a[t][j] / a[t][t];
          col_axpy(j, t, q);
          if (sgn(a[t][j]) != 0) clean = false;
        }
      if (!clean) continue;
      bool divides = true;
      for (std::size_t i = t + 1; i < r && divides; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (sgn(a[i][j]) != 0 && a[i][j] % a[t][t] != 0) {
            row_axpy(t, i, Integer(-1));
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (!any) break;
    if (sgn(a[t][t]) < 0) {
      for (auto& x : a[t]) x = -x;
      for (auto& x : u[t]) x = -x;
    }
  }
  SmithForm s;
  s.diag.assign(k, 0);
  for (std::size_t i = 0; i < k; ++i) s.diag[i] = a[i][i];
  s.u = std::move(u);
  s.v = std::move(v);
  return s;
}

FgAbelian::FgAbelian(std::vector<long> factors) {
  bool seen_free = false;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    long d = factors[i];
    if (d < 0) throw ValidationError("invariant factor must be nonnegative");
    if (d == 1) continue;
    if (d == 0) {
      seen_free = true;
    } else {
      if (seen_free) throw ValidationError("free factors must come last");
      if (!d_.empty() && d % d_.back() != 0)
        throw ValidationError("invariant factors must divide each other: " + std::to_string(d_.back()) + " does not divide " +
                              std::to_string(d));
    }
    d_.push_back(d);
  }
}

bool FgAbelian::is_finite() const { return free_rank() == 0; }

std::size_t FgAbelian::free_rank() const {
  return static_cast<std::size_t>(std::count(d_.begin(), d_.end(), 0L));
}

std::size_t FgAbelian::order() const {
  if (!is_finite()) throw ValidationError("abelian group is infinite");
  std::size_t n = 1;
  for (long d : d_) n *= static_cast<std::size_t>(d);
  return n;
}

std::vector<long> FgAbelian::reduce(std::vector<long> x) const {
  if (x.size() != d_.size()) throw DimensionMismatch("abelian group element has wrong length");
  for (std::size_t i = 0; i < x.size(); ++i)
    if (d_[i] > 0) x[i] = ((x[i] % d_[i]) + d_[i]) % d_[i];
  return x;
}

std::vector<long> FgAbelian::add(const std::vector<long>& a, const std::vector<long>& b) const {
  std::vector<long> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return reduce(std::move(r));
}

std::vector<long> FgAbelian::neg(const std::vector<long>& a) const {
  std::vector<long> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return reduce(std::move(r));
}

std::vector<std::vector<long>> FgAbelian::elements() const {
  std::size_t n = order();
  std::vector<std::vector<long>> out;
  out.reserve(n);
  std::vector<long> x(d_.size(), 0);
  for (std::size_t k = 0; k < n; ++k) {
    out.push_back(x);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (++x[i] < d_[i]) break;
      x[i] = 0;
    }
  }
  return out;
}

std::size_t FgAbelian::index_of(const std::vector<long>& x) const {
  auto y = reduce(x);
  std::size_t idx = 0, w = 1;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (d_[i] == 0) throw ValidationError("index_of on an infinite group");
    idx += static_cast<std::size_t>(y[i]) * w;
    w *= static_cast<std::size_t>(d_[i]);
  }
  return idx;
}

std::vector<long> Presentation::project(const std::vector<long>& x) const {
  std::vector<long> r(group.ngens(), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    Integer s = 0;
    for (std::size_t j = 0; j < x.size(); ++j) s += projection[i][j] * x[j];
    long d = group.factors()[i];
    if (d > 0) {
      s %= d;
      if (sgn(s) < 0) s += d;
    }
    if (!s.fits_slong_p()) throw Error("abelian coordinate overflow");
    r[i] = s.get_si();
  }
  return r;
}

Presentation cokernel(const IntMatrix& relations, std::size_t rows, std::size_t cols) {
  auto s = smith_normal_form(relations, rows, cols);
  std::vector<long> factors;
  Presentation p;
  for (std::size_t i = 0; i < rows; ++i) {
    Integer d = i < s.diag.size() ? s.diag[i] : Integer(0);
    if (d == 1) continue;
    if (!d.fits_slong_p()) throw Error("invariant factor overflow");
    factors.push_back(d.get_si());
    p.projection.push_back(s.u[i]);
  }
  p.group = FgAbelian(factors);
  return p;
}

long Character::root_order() const {
  long n = 1;
  for (long o : orders) n = std::lcm(n, o);
  return n;
}

long Character::exponent(const std::vector<long>& x) const {
  if (x.size() != exps.size()) throw DimensionMismatch("character argument has wrong length");
  long n = root_order();
  long e = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    long xi = ((x[i] % orders[i]) + orders[i]) % orders[i];
    e = (e + exps[i] * xi % orders[i] * (n / orders[i])) % n;
  }
  return e;
}

Cyclotomic Character::value(const std::vector<long>& x) const {
  return Cyclotomic::zeta(static_cast<std::uint64_t>(root_order()), exponent(x));
}

Character Character::operator*(const Character& o) const {
  if (!(group == o.group) || orders != o.orders) throw DimensionMismatch("characters on different groups");
  Character r = *this;
  for (std::size_t i = 0; i < exps.size(); ++i) r.exps[i] = (exps[i] + o.exps[i]) % orders[i];
  return r;
}

std::vector<Character> characters(const FgAbelian& a, long free_order) {
  std::vector<long> orders;
  for (long d : a.factors()) {
    if (d == 0) {
      if (free_order <= 0)
        throw ValidationError("characters of a group with a free factor need a root-of-unity order");
      orders.push_back(free_order);
    } else {
      orders.push_back(d);
    }
  }
  std::size_t count = 1;
  for (long o : orders) count *= static_cast<std::size_t>(o);
  std::vector<Character> out;
  std::vector<long> e(orders.size(), 0);
  for (std::size_t k = 0; k < count; ++k) {
    out.push_back(Character{a, orders, e});
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (++e[i] < orders[i]) break;
      e[i] = 0;
    }
  }
  return out;
}

Character trivial_character(const FgAbelian& a) {
  std::vector<long> orders;
  for (long d : a.factors()) orders.push_back(d == 0 ? 1 : d);
  return Character{a, orders, std::vector<long>(orders.size(), 0)};
}

ExactMatrix character_table(const FgAbelian& a) {
  auto chars = characters(a);
  auto elems = a.elements();
  ExactMatrix m(chars.size(), elems.size());
  for (std::size_t i = 0; i < chars.size(); ++i)
    for (std::size_t j = 0; j < elems.size(); ++j) m(i, j) = chars[i].value(elems[j]);
  return m;
}

Elem AbelianStructure::element_of(const std::vector<long>& x) const {
  auto y = group.reduce(x);
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (coords[i] == y) return static_cast<Elem>(i);
  throw ValidationError("coordinates do not name a group element");
}

AbelianStructure abelian_structure(const FinGroup& g) {
  if (!g.is_abelian()) throw ValidationError("group is not abelian");
  auto gens = g.generators();
  const std::size_t k = gens.size();
  std::vector<std::vector<long>> word(g.order());
  std::vector<bool> seen(g.order(), false);
  word[g.identity()] = std::vector<long>(k, 0);
  seen[g.identity()] = true;
  std::vector<Elem> queue{g.identity()};
  std::vector<std::vector<long>> rels;
  for (std::size_t q = 0; q < queue.size(); ++q) {
    Elem x = queue[q];
    for (std::size_t i = 0; i < k; ++i) {
      Elem y = g.mul(x, gens[i]);
      auto w = word[x];
      ++w[i];
      if (!seen[y]) {
        seen[y] = true;
        word[y] = w;
        queue.push_back(y);
      } else {
        for (std::size_t j = 0; j < k; ++j) w[j] -= word[y][j];
        if (std::any_of(w.begin(), w.end(), [](long v) { return v != 0; })) rels.push_back(w);
      }
    }
  }
  std::sort(rels.begin(), rels.end());
  rels.erase(std::unique(rels.begin(), rels.end()), rels.end());
  IntMatrix m(k, std::vector<Integer>(rels.size(), 0));
  for (std::size_t j = 0; j < rels.size(); ++j)
    for (std::size_t i = 0; i < k; ++i) m[i][j] = rels[j][i];
  auto p = cokernel(m, k, rels.size());
  AbelianStructure s;
  s.group = p.group;
  if (!s.group.is_finite() || s.group.order() != g.order()) throw Error("abelian decomposition failed");
  s.coords.resize(g.order());
  for (Elem x = 0; x < g.order(); ++x) s.coords[x] = p.project(word[x]);
  for (std::size_t i = 0; i < s.group.ngens(); ++i) {
    std::vector<long> e(s.group.ngens(), 0);
    e[i] = 1;
    s.generators.push_back(s.element_of(e));
  }
  return s;
}

Abelianization abelianization(const FinGroup& g) {
  Abelianization a;
  a.quotient = g.quotient(g.derived_subgroup(), &a.proj);
  a.structure = abelian_structure(a.quotient);
  return a;
}

}  // namespace pifin
