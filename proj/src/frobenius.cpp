#include "pifin/frobenius.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>

#include "pifin/error.hpp"

namespace pifin {

namespace {

ExactMatrix unit_column(std::size_t n, std::size_t i) {
  ExactMatrix v(n, 1);
  v(i, 0) = 1;
  return v;
}

// Canonical basis of the column space: nonzero rows of rref(m^T), as columns.
ExactMatrix column_space(const ExactMatrix& m) {
  auto e = m.transpose().echelon();
  return e.rref.block(0, 0, e.pivots.size(), m.rows()).transpose();
}

}  // namespace

FdAlgebra::FdAlgebra(std::vector<std::vector<std::vector<Cyclotomic>>> structure, ExactMatrix unit,
                     std::vector<int> grading)
    : unit_(std::move(unit)), grading_(std::move(grading)) {
  const std::size_t n = structure.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (structure[i].size() != n) throw DimensionMismatch("structure: row " + std::to_string(i) + " has wrong length");
    ExactMatrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      if (structure[i][j].size() != n)
        throw DimensionMismatch("structure[" + std::to_string(i) + "][" + std::to_string(j) + "] has wrong length");
      for (std::size_t k = 0; k < n; ++k) l(k, j) = structure[i][j][k];
    }
    left_.push_back(std::move(l));
  }
  validate();
}

FdAlgebra::FdAlgebra(std::vector<ExactMatrix> left, ExactMatrix unit, std::vector<int> grading)
    : left_(std::move(left)), unit_(std::move(unit)), grading_(std::move(grading)) {
  validate();
}

void FdAlgebra::validate() const {
  const std::size_t n = left_.size();
  for (const auto& l : left_)
    if (l.rows() != n || l.cols() != n) throw DimensionMismatch("structure matrices must be square of size dim");
  if (unit_.rows() != n || unit_.cols() != 1) throw DimensionMismatch("unit must be a column of length dim");
  if (!grading_.empty()) {
    if (grading_.size() != n) throw DimensionMismatch("grading must have one entry per basis vector");
    for (int g : grading_)
      if (g != 0 && g != 1) throw ValidationError("grading entries must be 0 or 1");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (!left_[i](k, j).is_zero() && grading_[k] != (grading_[i] + grading_[j]) % 2)
            throw ValidationError("product e" + std::to_string(i) + " e" + std::to_string(j) + " breaks the grading");
  }
  // products of basis vectors, reused for the associativity check
  std::vector<ExactMatrix> prod(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) prod[i * n + j] = left_[i].col(j);
  auto times_basis = [&](const ExactMatrix& x, std::size_t k, bool x_on_left) {
    ExactMatrix out(n, 1);
    for (std::size_t m = 0; m < n; ++m) {
      if (x(m, 0).is_zero()) continue;
      const ExactMatrix& p = x_on_left ? prod[m * n + k] : prod[k * n + m];
      for (std::size_t r = 0; r < n; ++r)
        if (!p(r, 0).is_zero()) out(r, 0) += x(m, 0) * p(r, 0);
    }
    return out;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (times_basis(prod[i * n + j], k, true) != times_basis(prod[j * n + k], i, false))
          throw ValidationError("associativity fails on (e" + std::to_string(i) + ", e" + std::to_string(j) + ", e" +
                                std::to_string(k) + ")");
  for (std::size_t j = 0; j < n; ++j) {
    auto e = unit_column(n, j);
    if (multiply(unit_, e) != e || multiply(e, unit_) != e)
      throw ValidationError("unit law fails on e" + std::to_string(j));
  }
}

ExactMatrix FdAlgebra::basis_vector(std::size_t i) const { return unit_column(dim(), i); }

ExactMatrix FdAlgebra::left_multiplication(const ExactMatrix& a) const {
  ExactMatrix out(dim(), dim());
  for (std::size_t i = 0; i < dim(); ++i)
    if (!a(i, 0).is_zero()) out += left_[i] * a(i, 0);
  return out;
}

ExactMatrix FdAlgebra::right_multiplication(const ExactMatrix& a) const {
  ExactMatrix out(dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j) out.set_block(0, j, left_[j] * a);
  return out;
}

ExactMatrix FdAlgebra::multiply(const ExactMatrix& a, const ExactMatrix& b) const {
  if (a.rows() != dim() || b.rows() != dim() || a.cols() != 1 || b.cols() != 1)
    throw DimensionMismatch("multiply: vectors must be columns of length dim");
  ExactMatrix out(dim(), 1);
  for (std::size_t i = 0; i < dim(); ++i)
    if (!a(i, 0).is_zero()) out += (left_[i] * b) * a(i, 0);
  return out;
}

bool FdAlgebra::is_commutative() const {
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = i + 1; j < dim(); ++j)
      if (left_[i].col(j) != left_[j].col(i)) return false;
  return true;
}

FdAlgebra FdAlgebra::group_algebra(const FinGroup& g) {
  const std::size_t n = g.order();
  std::vector<ExactMatrix> left(n, ExactMatrix(n, n));
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) left[a](g.mul(a, b), b) = 1;
  return FdAlgebra(std::move(left), unit_column(n, g.identity()));
}

FdAlgebra FdAlgebra::diagonal(std::size_t n) {
  std::vector<ExactMatrix> left(n, ExactMatrix(n, n));
  ExactMatrix unit(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    left[i](i, i) = 1;
    unit(i, 0) = 1;
  }
  return FdAlgebra(std::move(left), std::move(unit));
}

FdAlgebra FdAlgebra::truncated_polynomial(std::size_t n, bool odd) {
  if (n == 0) throw ValidationError("truncated_polynomial: n must be positive");
  std::vector<ExactMatrix> left(n, ExactMatrix(n, n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; i + j < n; ++j) left[i](i + j, j) = 1;
  std::vector<int> grading;
  if (odd)
    for (std::size_t i = 0; i < n; ++i) grading.push_back(static_cast<int>(i % 2));
  return FdAlgebra(std::move(left), unit_column(n, 0), std::move(grading));
}

FdAlgebra FdAlgebra::direct_sum(const std::vector<FdAlgebra>& parts) {
  std::size_t n = 0;
  bool graded = false;
  for (const auto& p : parts) {
    n += p.dim();
    graded = graded || !p.grading_.empty();
  }
  std::vector<ExactMatrix> left;
  ExactMatrix unit(n, 1);
  std::vector<int> grading;
  std::size_t off = 0;
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < p.dim(); ++i) {
      ExactMatrix l(n, n);
      l.set_block(off, off, p.left_[i]);
      left.push_back(std::move(l));
      if (graded) grading.push_back(p.grading(i));
    }
    unit.set_block(off, 0, p.unit_);
    off += p.dim();
  }
  return FdAlgebra(std::move(left), std::move(unit), std::move(grading));
}

FdAlgebra FdAlgebra::subalgebra(const ExactMatrix& basis) const {
  const std::size_t r = basis.cols();
  if (basis.rows() != dim()) throw DimensionMismatch("subalgebra: basis has wrong length");
  if (basis.rank() != r) throw ValidationError("subalgebra: basis is linearly dependent");
  std::vector<ExactMatrix> cols;
  for (std::size_t i = 0; i < r; ++i) cols.push_back(basis.col(i));
  std::vector<ExactMatrix> left(r, ExactMatrix(r, r));
  std::vector<std::vector<ExactMatrix>> prods(r, std::vector<ExactMatrix>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      prods[i][j] = multiply(cols[i], cols[j]);
      ExactMatrix x;
      try {
        x = basis.solve(prods[i][j]);
      } catch (const Error&) {
        throw ValidationError("subalgebra: span not closed under products");
      }
      left[i].set_block(0, j, x);
    }
  // unit: u with u b_j = b_j = b_j u for all j
  ExactMatrix sys(2 * r * dim(), r), rhs(2 * r * dim(), 1);
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t i = 0; i < r; ++i) {
      sys.set_block(2 * j * dim(), i, prods[i][j]);
      sys.set_block((2 * j + 1) * dim(), i, prods[j][i]);
    }
    rhs.set_block(2 * j * dim(), 0, cols[j]);
    rhs.set_block((2 * j + 1) * dim(), 0, cols[j]);
  }
  ExactMatrix unit;
  try {
    unit = sys.solve(rhs);
  } catch (const Error&) {
    throw ValidationError("subalgebra: no unit");
  }
  std::vector<int> grading;
  if (!grading_.empty())
    for (std::size_t i = 0; i < r; ++i) {
      int g = -1;
      for (std::size_t k = 0; k < dim(); ++k) {
        if (cols[i](k, 0).is_zero()) continue;
        if (g == -1) g = grading_[k];
        if (g != grading_[k]) throw ValidationError("subalgebra: basis vector " + std::to_string(i) + " is not homogeneous");
      }
      grading.push_back(g == -1 ? 0 : g);
    }
  return FdAlgebra(std::move(left), std::move(unit), std::move(grading));
}

ExactMatrix FdAlgebra::center_basis() const {
  const std::size_t n = dim();
  ExactMatrix eqs(n * n, n);
  for (std::size_t i = 0; i < n; ++i) {
    // z e_i - e_i z
    ExactMatrix d(n, n);
    for (std::size_t j = 0; j < n; ++j) d.set_block(0, j, left_[j].col(i) - left_[i].col(j));
    eqs.set_block(i * n, 0, d);
  }
  return column_space(eqs.kernel());
}

SemisimplicityReport is_semisimple(const FdAlgebra& a) {
  const std::size_t n = a.dim();
  SemisimplicityReport r;
  r.trace_form = ExactMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Cyclotomic t = 0;
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) {
          const auto& x = a.left(i)(p, q);
          if (x.is_zero()) continue;
          const auto& y = a.left(j)(q, p);
          if (!y.is_zero()) t += x * y;
        }
      r.trace_form(i, j) = t;
      r.trace_form(j, i) = t;
    }
  std::size_t rank = r.trace_form.rank();
  r.radical_dim = n - rank;
  r.semisimple = rank == n;
  return r;
}

bool super_commutative_check(const FdAlgebra& a) {
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i; j < a.dim(); ++j) {
      Cyclotomic sign = (a.grading(i) && a.grading(j)) ? -1 : 1;
      if (a.left(i).col(j) != a.left(j).col(i) * sign) return false;
    }
  return true;
}

Cyclotomic galois_conjugate(const Cyclotomic& x, std::uint64_t n, std::uint64_t b) {
  if (n % x.conductor() != 0) throw ValidationError("galois_conjugate: conductor does not divide n");
  Cyclotomic y = x.lifted(n);
  Cyclotomic out = 0;
  for (std::size_t k = 0; k < y.coeffs().size(); ++k)
    if (y.coeffs()[k] != 0) out += Cyclotomic::zeta(n, static_cast<std::int64_t>((b * k) % n)) * Cyclotomic(y.coeffs()[k]);
  return out;
}

namespace {

using CMat = Eigen::MatrixXcd;

CMat approx(const ExactMatrix& m) {
  CMat out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).approx();
  return out;
}

std::vector<std::complex<double>> eigenvalues(const CMat& m) {
  Eigen::ComplexEigenSolver<CMat> es(m, false);
  std::vector<std::complex<double>> v;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) v.push_back(es.eigenvalues()(i));
  return v;
}

ExactMatrix conjugate_matrix(const ExactMatrix& m, std::uint64_t n, std::uint64_t b) {
  ExactMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) out(i, j) = galois_conjugate(m(i, j), n, b);
  return out;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

// Algebraic integer in Q(zeta_n) whose conjugates sigma_b are listed (b coprime to n, increasing).
std::optional<Cyclotomic> recognize(std::uint64_t n, const std::vector<std::uint64_t>& units,
                                    const std::vector<std::complex<double>>& conj) {
  const std::size_t phi = units.size();
  CMat v(phi, phi);
  const double two_pi = 2 * std::acos(-1.0);
  for (std::size_t r = 0; r < phi; ++r)
    for (std::size_t k = 0; k < phi; ++k) v(r, k) = std::polar(1.0, two_pi * static_cast<double>((units[r] * k) % n) / n);
  Eigen::VectorXcd s(phi);
  for (std::size_t r = 0; r < phi; ++r) s(r) = conj[r];
  Eigen::VectorXcd a = v.partialPivLu().solve(s);
  std::vector<Rational> coeffs;
  for (std::size_t k = 0; k < phi; ++k) {
    double re = a(k).real();
    double rounded = std::round(re);
    if (std::abs(re - rounded) > 1e-6 * (1 + std::abs(re)) || std::abs(a(k).imag()) > 1e-6 * (1 + std::abs(re)))
      return std::nullopt;
    coeffs.emplace_back(static_cast<long>(rounded));
  }
  return Cyclotomic::from_coeffs(n, std::move(coeffs));
}

struct Candidate {
  std::uint64_t n;
  std::size_t phi;
};

std::vector<Candidate> conductor_candidates(std::uint64_t base, std::uint64_t hint) {
  std::vector<Candidate> out;
  std::vector<std::uint64_t> seen;
  auto add = [&](std::uint64_t n) {
    if (n % 4 == 2 && base % 4 != 2) n /= 2;
    if (std::find(seen.begin(), seen.end(), n) != seen.end()) return;
    seen.push_back(n);
    out.push_back({n, static_cast<std::size_t>(euler_phi(n))});
  };
  if (hint) {
    add(lcm_u64(base, hint));
    return out;
  }
  for (std::uint64_t k = 1; k <= 120; ++k) add(lcm_u64(base, k));
  std::stable_sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) { return a.phi < b.phi; });
  while (!out.empty() && out.back().phi > 8) out.pop_back();
  return out;
}

// Primitive idempotents of a commutative semisimple algebra, in its own basis.
std::vector<ExactMatrix> split_commutative(const FdAlgebra& z, std::uint64_t hint) {
  const std::size_t r = z.dim();
  if (r == 1) return {z.unit()};
  std::uint64_t base = 1;
  mpz_class den = 1;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t p = 0; p < r; ++p)
      for (std::size_t q = 0; q < r; ++q) {
        const auto& x = z.left(i)(p, q);
        if (x.is_zero()) continue;
        base = lcm_u64(base, x.conductor());
        for (const auto& c : x.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
      }
  // generic element with distinct eigenvalues
  std::uint64_t state = 12345;
  ExactMatrix op;
  CMat op_num;
  std::vector<std::complex<double>> ev;
  for (int attempt = 0;; ++attempt) {
    if (attempt == 40) throw ValidationError("central_idempotents: no element with simple spectrum found");
    ExactMatrix coeffs(r, 1);
    for (std::size_t i = 0; i < r; ++i) {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      coeffs(i, 0) = static_cast<long>(1 + (state >> 33) % (5 + attempt));
    }
    op = z.left_multiplication(coeffs) * Cyclotomic(Rational(den));
    ev = eigenvalues(approx(op));
    double gap = 1e300, scale = 1;
    for (std::size_t i = 0; i < ev.size(); ++i) {
      scale = std::max(scale, std::abs(ev[i]));
      for (std::size_t j = i + 1; j < ev.size(); ++j) gap = std::min(gap, std::abs(ev[i] - ev[j]));
    }
    if (gap > 1e-6 * scale) break;
  }
  for (const auto& cand : conductor_candidates(base, hint)) {
    const std::uint64_t n = cand.n;
    std::vector<std::uint64_t> units;
    for (std::uint64_t b = 1; b < n || (n == 1 && b == 1); ++b)
      if (gcd_u64(b, n) == 1) units.push_back(b);
    if (n == 1) units = {1};
    // numeric spectra of the conjugated operators
    std::map<std::uint64_t, std::vector<std::complex<double>>> spectra;
    for (auto b : units) {
      std::uint64_t key = b % base;
      if (!spectra.count(key)) spectra[key] = key == 1 % base ? ev : eigenvalues(approx(conjugate_matrix(op, base, b)));
    }
    // free positions: one b from each pair {b, n - b} other than {1, n - 1}
    std::vector<std::size_t> free_pos;
    std::vector<std::size_t> partner(units.size());
    for (std::size_t i = 0; i < units.size(); ++i) {
      auto it = std::find(units.begin(), units.end(), (n - units[i]) % n);
      partner[i] = it == units.end() ? i : static_cast<std::size_t>(it - units.begin());
    }
    for (std::size_t i = 1; i < units.size(); ++i)
      if (partner[i] > i && units[i] != n - 1) free_pos.push_back(i);
    double combos = std::pow(static_cast<double>(r), static_cast<double>(free_pos.size()));
    if (combos > 2e5) continue;
    std::vector<ExactMatrix> idem;
    bool all = true;
    for (const auto& lambda : ev) {
      std::optional<Cyclotomic> found;
      std::vector<std::size_t> pick(free_pos.size(), 0);
      for (bool more = true; more && !found;) {
        std::vector<std::complex<double>> conj(units.size());
        conj[0] = lambda;
        for (std::size_t f = 0; f < free_pos.size(); ++f) conj[free_pos[f]] = spectra[units[free_pos[f]] % base][pick[f]];
        for (std::size_t i = 0; i < units.size(); ++i)
          if (partner[i] < i || (partner[i] == i && i != 0)) conj[i] = std::conj(conj[partner[i]]);
        if (units.size() > 1 && partner[0] != 0) conj[partner[0]] = std::conj(lambda);
        found = recognize(n, units, conj);
        if (found) {
          // exact check: lambda is an eigenvalue
          ExactMatrix shifted = op - ExactMatrix::identity(r) * *found;
          auto ker = shifted.kernel();
          if (ker.cols() != 1) {
            found.reset();
          } else {
            ExactMatrix x = ker;
            ExactMatrix xx = z.multiply(x, x);
            std::size_t p = 0;
            while (x(p, 0).is_zero()) ++p;
            Cyclotomic mu = xx(p, 0) / x(p, 0);
            if (mu.is_zero() || xx != x * mu) {
              found.reset();
            } else {
              idem.push_back(x * mu.inv());
            }
          }
        }
        std::size_t f = 0;
        while (f < pick.size() && ++pick[f] == r) pick[f++] = 0;
        more = f < pick.size();
      }
      if (!found) {
        all = false;
        break;
      }
    }
    if (all) return idem;
  }
  throw ValidationError("central_idempotents: eigenvalues not recognized in a cyclotomic field of degree <= 8");
}

}  // namespace

std::vector<ExactMatrix> central_idempotents(const FdAlgebra& a, std::uint64_t conductor_hint) {
  ExactMatrix basis = a.center_basis();
  FdAlgebra z = a.subalgebra(basis);
  if (!is_semisimple(z).semisimple || !is_semisimple(a).semisimple)
    throw ValidationError("central_idempotents: algebra is not semisimple");
  auto local = split_commutative(z, conductor_hint);
  std::vector<ExactMatrix> out;
  for (const auto& e : local) out.push_back(basis * e);
  std::sort(out.begin(), out.end(), [](const ExactMatrix& x, const ExactMatrix& y) { return x.str() < y.str(); });
  // exact certification
  ExactMatrix sum(a.dim(), 1);
  for (std::size_t i = 0; i < out.size(); ++i) {
    sum += out[i];
    for (std::size_t j = 0; j < out.size(); ++j) {
      ExactMatrix p = a.multiply(out[i], out[j]);
      if (p != (i == j ? out[i] : ExactMatrix(a.dim(), 1)))
        throw ValidationError("central_idempotents: orthogonality check failed");
    }
  }
  if (sum != a.unit()) throw ValidationError("central_idempotents: idempotents do not sum to the unit");
  return out;
}

EvenDecomposition even_trivial_decomposition(const FdAlgebra& a, std::uint64_t conductor_hint) {
  EvenDecomposition d;
  if (!super_commutative_check(a)) {
    d.reason = "not super-commutative";
    return d;
  }
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (a.grading(i) == 1) {
      auto x = a.basis_vector(i);
      d.odd_witness = x;
      d.reason = a.multiply(x, x).is_zero() ? "odd part is nonzero; odd basis vector " + std::to_string(i) + " squares to zero"
                                             : "odd part is nonzero";
      return d;
    }
  if (!is_semisimple(a).semisimple) {
    d.reason = "not semisimple";
    return d;
  }
  d.idempotents = central_idempotents(a, conductor_hint);
  for (const auto& e : d.idempotents)
    if (a.left_multiplication(e).rank() != 1) {
      d.reason = "a summand has dimension > 1";
      return d;
    }
  d.ok = true;
  return d;
}

Splitting split(const FdAlgebra& a, const std::vector<ExactMatrix>& idems) {
  Splitting s;
  for (const auto& e : idems) {
    ExactMatrix b = column_space(a.right_multiplication(e));
    s.summands.push_back(a.subalgebra(b));
    s.bases.push_back(std::move(b));
  }
  return s;
}

FrobeniusAlgebra::FrobeniusAlgebra(FdAlgebra algebra, ExactMatrix counit) : a_(std::move(algebra)), eps_(std::move(counit)) {
  const std::size_t n = a_.dim();
  if (eps_.rows() != 1 || eps_.cols() != n) throw DimensionMismatch("counit must be a row of length dim");
  form_ = ExactMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i) form_.set_block(i, 0, eps_ * a_.left(i));
  if (form_.rank() != n) throw ValidationError("Frobenius form is degenerate");
  dual_ = form_.inverse();
}

FrobeniusAlgebra FrobeniusAlgebra::center() const {
  ExactMatrix b = a_.center_basis();
  return FrobeniusAlgebra(a_.subalgebra(b), eps_ * b);
}

HandleWindow handle_and_window(const FrobeniusAlgebra& fa) {
  const FdAlgebra& a = fa.algebra();
  HandleWindow hw;
  hw.handle = ExactMatrix(a.dim(), 1);
  for (std::size_t k = 0; k < a.dim(); ++k) hw.handle += a.multiply(a.basis_vector(k), fa.dual_basis().col(k));
  hw.window = a.right_multiplication(hw.handle);
  hw.window_invertible = hw.window.rank() == a.dim();
  hw.counit = fa.counit();
  hw.algebra_ = a;
  return hw;
}

Cyclotomic HandleWindow::genus(unsigned g) const {
  ExactMatrix x = algebra_.unit();
  for (unsigned i = 0; i < g; ++i) x = algebra_.multiply(x, handle);
  return (counit * x)(0, 0);
}

TwistedGroupAlgebra twisted_group_algebra(const Cocycle2& c) {
  auto diag = validate_cocycle(c);
  if (!diag.ok) throw ValidationError("invalid cocycle: " + diag.reason);
  const FinGroup& g = c.group();
  const std::size_t n = g.order();
  std::vector<ExactMatrix> left(n, ExactMatrix(n, n));
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) left[a](g.mul(a, b), b) = c.value(a, b);
  return {c, FdAlgebra(std::move(left), unit_column(n, g.identity()))};
}

FrobeniusAlgebra group_frobenius(const TwistedGroupAlgebra& t) {
  ExactMatrix eps(1, t.algebra.dim());
  eps(0, t.group().identity()) = Cyclotomic::rational(1, static_cast<long>(t.group().order()));
  return FrobeniusAlgebra(t.algebra, std::move(eps));
}

}  // namespace pifin
