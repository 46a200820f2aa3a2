#include <random>

#include "doctest.h"
#include "pifin/error.hpp"
#include "pifin/frobenius.hpp"

using namespace pifin;

namespace {

Cyclotomic q(long a, long b = 1) { return Cyclotomic::rational(a, b); }

std::size_t element_order(const FinGroup& g, Elem x) {
  std::size_t k = 1;
  for (Elem y = x; y != g.identity(); y = g.mul(y, x)) ++k;
  return k;
}

// e_chi = chi(1)/|G| sum chi(g^-1) g
ExactMatrix idempotent_from_character(const FinGroup& g, const std::vector<Cyclotomic>& chi) {
  ExactMatrix e(g.order(), 1);
  Cyclotomic d = chi[g.identity()];
  for (Elem x = 0; x < g.order(); ++x) e(x, 0) = d * chi[g.inv(x)] * q(1, static_cast<long>(g.order()));
  return e;
}

std::vector<ExactMatrix> sorted(std::vector<ExactMatrix> v) {
  std::sort(v.begin(), v.end(), [](const ExactMatrix& a, const ExactMatrix& b) { return a.str() < b.str(); });
  return v;
}

Cocycle2 klein_cocycle() {
  auto g = make_group(FinGroup::abelian({2, 2}));
  std::vector<std::vector<long>> e(4, std::vector<long>(4));
  for (Elem a = 0; a < 4; ++a)
    for (Elem b = 0; b < 4; ++b) e[a][b] = (a % 2) * (b / 2);
  return Cocycle2(g, 2, e);
}

ExactMatrix row(std::vector<Cyclotomic> v) { return ExactMatrix::from_rows({std::move(v)}); }

}  // namespace

TEST_CASE("construction validates shapes, associativity, unit and grading") {
  CHECK_THROWS_AS(FdAlgebra({ExactMatrix(2, 2)}, ExactMatrix(1, 1)), DimensionMismatch);
  // e0 e0 = e1, e1 anything = 0, unit e0: unit law fails
  std::vector<ExactMatrix> bad(2, ExactMatrix(2, 2));
  bad[0](1, 0) = 1;
  CHECK_THROWS_AS(FdAlgebra(bad, ExactMatrix::column({q(1), q(0)})), ValidationError);
  // non-associative: 2-dim with e1 e1 = e0 + e1 but e1 e0 = 0
  std::vector<std::vector<std::vector<Cyclotomic>>> s = {{{1, 0}, {0, 1}}, {{0, 1}, {1, 1}}};
  CHECK_NOTHROW(FdAlgebra(s, ExactMatrix::column({q(1), q(0)})));
  s[1][1] = {2, 1};
  CHECK_NOTHROW(FdAlgebra(s, ExactMatrix::column({q(1), q(0)})));
  std::vector<std::vector<std::vector<Cyclotomic>>> na = {
      {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {{0, 1, 0}, {0, 0, 1}, {0, 0, 0}}, {{0, 0, 1}, {1, 0, 0}, {0, 0, 0}}};
  CHECK_THROWS_AS(FdAlgebra(na, ExactMatrix::column({q(1), q(0), q(0)})), ValidationError);
  // odd * odd landing in odd breaks the grading
  std::vector<std::vector<std::vector<Cyclotomic>>> g = {{{1, 0}, {0, 1}}, {{0, 1}, {0, 1}}};
  CHECK_THROWS_AS(FdAlgebra(g, ExactMatrix::column({q(1), q(0)}), {0, 1}), ValidationError);
  CHECK_THROWS_AS(FdAlgebra::truncated_polynomial(2, false).subalgebra(ExactMatrix::column({q(0), q(1)})),
                  ValidationError);
}

TEST_CASE("semisimplicity via the trace form") {
  auto z3 = FdAlgebra::group_algebra(FinGroup::cyclic(3));
  auto r = is_semisimple(z3);
  CHECK(r.semisimple);
  CHECK(r.radical_dim == 0);
  CHECK(r.trace_form == ExactMatrix::from_rows({{3, 0, 0}, {0, 0, 3}, {0, 3, 0}}));

  auto dual = FdAlgebra::truncated_polynomial(2);
  r = is_semisimple(dual);
  CHECK_FALSE(r.semisimple);
  CHECK(r.radical_dim == 1);
  CHECK(is_semisimple(FdAlgebra::truncated_polynomial(5)).radical_dim == 4);

  auto tw = twisted_group_algebra(klein_cocycle());
  CHECK_FALSE(tw.algebra.is_commutative());
  r = is_semisimple(tw.algebra);
  CHECK(r.semisimple);
  CHECK(r.trace_form.rows() == 4);
  CHECK(r.trace_form.det() != q(0));

  auto s3 = FdAlgebra::group_algebra(FinGroup::symmetric(3));
  CHECK(is_semisimple(s3).semisimple);
}

TEST_CASE("twisted group algebras reject invalid cocycles") {
  auto g = make_group(FinGroup::cyclic(3));
  std::vector<std::vector<long>> e(3, std::vector<long>(3, 0));
  e[1][1] = 1;
  CHECK_THROWS_AS(twisted_group_algebra(Cocycle2(g, 3, e)), ValidationError);
  // a coboundary twist gives an isomorphic but different table; still valid
  auto t = twisted_group_algebra(Cocycle2::trivial(g).times_coboundary({0, 1, 2}));
  CHECK(t.algebra.is_commutative());
}

TEST_CASE("super-commutativity and the odd witness") {
  auto ext = FdAlgebra::truncated_polynomial(2, true);
  CHECK(super_commutative_check(ext));
  auto d = even_trivial_decomposition(ext);
  CHECK_FALSE(d.ok);
  REQUIRE(d.odd_witness.has_value());
  CHECK_FALSE(d.odd_witness->is_zero());
  CHECK(ext.multiply(*d.odd_witness, *d.odd_witness).is_zero());

  auto kk = FdAlgebra::diagonal(3);
  d = even_trivial_decomposition(kk);
  CHECK(d.ok);
  CHECK(d.idempotents.size() == 3);

  d = even_trivial_decomposition(FdAlgebra::truncated_polynomial(2));
  CHECK_FALSE(d.ok);
  CHECK(d.reason == "not semisimple");

  d = even_trivial_decomposition(FdAlgebra::group_algebra(FinGroup::symmetric(3)));
  CHECK_FALSE(d.ok);
  CHECK(d.reason == "not super-commutative");

  d = even_trivial_decomposition(twisted_group_algebra(klein_cocycle()).algebra);
  CHECK_FALSE(d.ok);
}

TEST_CASE("primitive central idempotents against character oracles") {
  SUBCASE("k + k and k^n") {
    auto e = central_idempotents(FdAlgebra::diagonal(2));
    CHECK(e.size() == 2);
    for (std::size_t n = 1; n <= 4; ++n) {
      auto a = FdAlgebra::diagonal(n);
      std::vector<ExactMatrix> expect;
      for (std::size_t i = 0; i < n; ++i) expect.push_back(a.basis_vector(i));
      CHECK(central_idempotents(a) == sorted(expect));
    }
  }
  SUBCASE("k[Z2]") {
    auto a = FdAlgebra::group_algebra(FinGroup::cyclic(2));
    auto expect = sorted({ExactMatrix::column({q(1, 2), q(1, 2)}), ExactMatrix::column({q(1, 2), q(-1, 2)})});
    CHECK(central_idempotents(a) == expect);
  }
  SUBCASE("k[Z3] and k[Z4] need roots of unity") {
    for (std::size_t n : {3u, 4u, 5u}) {
      auto g = FinGroup::cyclic(n);
      auto a = FdAlgebra::group_algebra(g);
      std::vector<ExactMatrix> expect;
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<Cyclotomic> chi(n);
        Elem gen = 1;
        Elem x = g.identity();
        for (std::size_t k = 0; k < n; ++k, x = g.mul(x, gen)) chi[x] = Cyclotomic::zeta(n, static_cast<long>(j * k));
        expect.push_back(idempotent_from_character(g, chi));
      }
      CHECK(central_idempotents(a) == sorted(expect));
    }
  }
  SUBCASE("k[S3]") {
    auto g = FinGroup::symmetric(3);
    auto a = FdAlgebra::group_algebra(g);
    std::vector<Cyclotomic> triv(6, q(1)), sign(6), std2(6);
    for (Elem x = 0; x < 6; ++x) {
      auto o = element_order(g, x);
      sign[x] = o == 2 ? q(-1) : q(1);
      std2[x] = o == 1 ? q(2) : o == 2 ? q(0) : q(-1);
    }
    auto expect = sorted({idempotent_from_character(g, triv), idempotent_from_character(g, sign),
                          idempotent_from_character(g, std2)});
    CHECK(central_idempotents(a) == expect);
    CHECK(a.center_basis().cols() == 3);
  }
  SUBCASE("twisted Klein group has a single block") {
    auto t = twisted_group_algebra(klein_cocycle());
    auto e = central_idempotents(t.algebra);
    REQUIRE(e.size() == 1);
    CHECK(e[0] == t.algebra.unit());
  }
  CHECK_THROWS_AS(central_idempotents(FdAlgebra::truncated_polynomial(3)), ValidationError);
}

TEST_CASE("galois conjugation") {
  CHECK(galois_conjugate(Cyclotomic::zeta(5), 5, 2) == Cyclotomic::zeta(5, 2));
  CHECK(galois_conjugate(Cyclotomic::zeta(4), 8, 3) == Cyclotomic::zeta(4, 3));
  CHECK(galois_conjugate(Cyclotomic::zeta(3) + q(2), 3, 2) == (Cyclotomic::zeta(3) + q(2)).conj());
  CHECK_THROWS_AS(galois_conjugate(Cyclotomic::zeta(5), 6, 1), ValidationError);
}

TEST_CASE("centers") {
  auto s3 = FdAlgebra::group_algebra(FinGroup::symmetric(3));
  CHECK(s3.center().dim() == 3);
  CHECK(s3.center().is_commutative());
  CHECK(twisted_group_algebra(klein_cocycle()).algebra.center().dim() == 1);
  for (std::size_t n = 1; n <= 6; ++n) CHECK(FdAlgebra::group_algebra(FinGroup::cyclic(n)).center().dim() == n);
  // class sums span the center of k[G]
  for (std::size_t n : {3u, 4u, 5u}) {
    auto g = FinGroup::dihedral(n);
    CHECK(FdAlgebra::group_algebra(g).center_basis().cols() == g.conjugacy_classes().size());
  }
}

TEST_CASE("handle element and window") {
  SUBCASE("k with counit lambda") {
    for (long lam : {1L, 2L, 3L, -5L}) {
      FrobeniusAlgebra fa(FdAlgebra::diagonal(1), row({q(lam)}));
      auto hw = handle_and_window(fa);
      CHECK(hw.window_invertible);
      for (unsigned g = 0; g <= 4; ++g) CHECK(hw.genus(g) == Cyclotomic(q(lam)).pow(1 - static_cast<long>(g)));
    }
  }
  SUBCASE("k[Z2]") {
    auto fa = group_frobenius(twisted_group_algebra(Cocycle2::trivial(make_group(FinGroup::cyclic(2)))));
    auto hw = handle_and_window(fa);
    CHECK(hw.handle == ExactMatrix::column({q(4), q(0)}));
    CHECK(fa.counit(hw.handle) == q(2));
    CHECK(hw.window_invertible);
  }
  SUBCASE("dual numbers") {
    FrobeniusAlgebra fa(FdAlgebra::truncated_polynomial(2), row({q(0), q(1)}));
    auto hw = handle_and_window(fa);
    CHECK(hw.handle == ExactMatrix::column({q(0), q(2)}));
    CHECK_FALSE(hw.window_invertible);
    CHECK(hw.genus(0) == q(0));
    CHECK(hw.genus(1) == q(2));
    CHECK(hw.genus(2) == q(0));
  }
  CHECK_THROWS_AS(FrobeniusAlgebra(FdAlgebra::truncated_polynomial(2), row({q(1), q(0)})), ValidationError);
  CHECK_THROWS_AS(FrobeniusAlgebra(FdAlgebra::diagonal(2), row({q(1)})), DimensionMismatch);
}

TEST_CASE("surface values on the center match the character sum") {
  struct Case {
    FinGroup g;
    std::vector<long> dims;
  };
  std::vector<Case> cases = {{FinGroup::cyclic(3), {1, 1, 1}},
                             {FinGroup::symmetric(3), {1, 1, 2}},
                             {FinGroup::dihedral(4), {1, 1, 1, 1, 2}},
                             {FinGroup::quaternion(), {1, 1, 1, 1, 2}}};
  for (auto& c : cases) {
    const long n = static_cast<long>(c.g.order());
    auto fa = group_frobenius(twisted_group_algebra(Cocycle2::trivial(make_group(c.g)))).center();
    auto hw = handle_and_window(fa);
    for (unsigned genus = 0; genus <= 3; ++genus) {
      Cyclotomic expect = 0;
      for (long d : c.dims) expect += Cyclotomic(q(n, d)).pow(2 * static_cast<long>(genus) - 2);
      CHECK(hw.genus(genus) == expect);
    }
  }
  auto klein = group_frobenius(twisted_group_algebra(klein_cocycle())).center();
  auto hw = handle_and_window(klein);
  CHECK(hw.genus(0) == q(1, 4));
  CHECK(hw.genus(1) == q(1));
  CHECK(hw.genus(2) == q(4));
}

TEST_CASE("window invertible exactly when semisimple") {
  std::vector<std::pair<FrobeniusAlgebra, bool>> cases = {
      {FrobeniusAlgebra(FdAlgebra::truncated_polynomial(3), row({q(0), q(0), q(1)})), false},
      {FrobeniusAlgebra(FdAlgebra::diagonal(3), row({q(1), q(2), q(3)})), true},
      {group_frobenius(twisted_group_algebra(Cocycle2::trivial(make_group(FinGroup::symmetric(3))))), true},
      {group_frobenius(twisted_group_algebra(klein_cocycle())), true},
      {FrobeniusAlgebra(FdAlgebra::direct_sum({FdAlgebra::diagonal(1), FdAlgebra::truncated_polynomial(2)}),
                        row({q(1), q(0), q(1)})),
       false},
  };
  for (auto& [fa, ss] : cases) {
    CHECK(is_semisimple(fa.algebra()).semisimple == ss);
    CHECK(handle_and_window(fa).window_invertible == ss);
  }
}

TEST_CASE("splitting reconstructs the algebra") {
  auto a = FdAlgebra::group_algebra(FinGroup::symmetric(3));
  auto s = split(a, central_idempotents(a));
  REQUIRE(s.summands.size() == 3);
  std::vector<std::size_t> dims;
  for (auto& p : s.summands) dims.push_back(p.dim());
  std::sort(dims.begin(), dims.end());
  CHECK(dims == std::vector<std::size_t>{1, 1, 4});
  ExactMatrix all = s.bases[0];
  for (std::size_t i = 1; i < s.bases.size(); ++i) all = all.hstack(s.bases[i]);
  CHECK(a.subalgebra(all) == FdAlgebra::direct_sum(s.summands));

  std::mt19937 rng(7);
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<FdAlgebra> parts;
    std::size_t radical = 0, center = 0;
    int k = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < k; ++i) {
      switch (rng() % 3) {
        case 0: {
          std::size_t n = 1 + rng() % 3;
          parts.push_back(FdAlgebra::diagonal(n));
          center += n;
          break;
        }
        case 1: {
          std::size_t n = 2 + rng() % 3;
          parts.push_back(FdAlgebra::group_algebra(FinGroup::cyclic(n)));
          center += n;
          break;
        }
        default: {
          std::size_t n = 2 + rng() % 2;
          parts.push_back(FdAlgebra::truncated_polynomial(n));
          radical += n - 1;
          center += n;
        }
      }
    }
    auto sum = FdAlgebra::direct_sum(parts);
    CHECK(is_semisimple(sum).radical_dim == radical);
    CHECK(sum.center_basis().cols() == center);
    if (radical == 0) {
      auto e = central_idempotents(sum);
      CHECK(e.size() == center);
      auto sp = split(sum, e);
      ExactMatrix b = sp.bases[0];
      for (std::size_t i = 1; i < sp.bases.size(); ++i) b = b.hstack(sp.bases[i]);
      CHECK(sum.subalgebra(b) == FdAlgebra::direct_sum(sp.summands));
    }
  }
}
