#include "pifin/span.hpp"

#include <algorithm>

#include "pifin/error.hpp"

namespace pifin {

namespace {

bool preserves_parity(const ExactMatrix& m, const std::vector<bool>& rows, const std::vector<bool>& cols) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (rows[i] != cols[j] && !m(i, j).is_zero()) return false;
  return true;
}

bool same_base(const FinGroupoid& a, const FinGroupoid& b) {
  return a.object_count() == b.object_count() && a.component_count() == b.component_count();
}

Cyclotomic inverse_order(const FinGroup& g) {
  Rational q(1L, static_cast<unsigned long>(g.order()));
  q.canonicalize();
  return q;
}

}  // namespace

LocalSystem::LocalSystem(GroupoidPtr base, std::vector<Representation> rho, std::vector<ExactMatrix> transport,
                         std::vector<std::vector<bool>> parity)
    : base_(std::move(base)), rho_(std::move(rho)), t_(std::move(transport)), parity_(std::move(parity)) {
  const FinGroupoid& x = *base_;
  if (rho_.size() != x.component_count()) throw ValidationError("local system needs one representation per component");
  if (parity_.empty()) parity_.resize(x.component_count());
  if (parity_.size() != x.component_count()) throw ValidationError("local system parity has wrong size");
  for (std::size_t c = 0; c < x.component_count(); ++c) {
    const FinGroup& g = x.vertex_group(c);
    auto& r = rho_[c];
    if (r.size() != g.order()) throw ValidationError("representation size differs from the vertex group order");
    std::size_t d = r[0].rows();
    for (auto& m : r)
      if (m.rows() != d || m.cols() != d) throw DimensionMismatch("representation matrices must be square of equal size");
    if (parity_[c].empty()) parity_[c].assign(d, false);
    if (parity_[c].size() != d) throw ValidationError("parity vector has wrong length");
    if (!r[g.identity()].is_identity()) throw ValidationError("identity does not act as the identity matrix");
    // rho(x s) = rho(x) rho(s) for all x and generators s forces a homomorphism
    for (Elem s : g.generators())
      for (Elem a = 0; a < g.order(); ++a)
        if (r[g.mul(a, s)] != r[a] * r[s])
          throw ValidationError("local system does not preserve composition in component " + std::to_string(c));
    for (auto& m : r)
      if (!preserves_parity(m, parity_[c], parity_[c])) throw ValidationError("local system matrix mixes parities");
  }
  if (t_.empty())
    for (std::size_t o = 0; o < x.object_count(); ++o) t_.push_back(ExactMatrix::identity(dim_at(o)));
  if (t_.size() != x.object_count()) throw ValidationError("local system needs one transport per object");
  for (std::size_t o = 0; o < x.object_count(); ++o) {
    std::size_t c = x.component_of(o), d = dim(c);
    if (t_[o].rows() != d || t_[o].cols() != d) throw DimensionMismatch("transport matrix has wrong shape");
    if (o == x.base(c) && !t_[o].is_identity()) throw ValidationError("transport at a base object must be the identity");
    if (!preserves_parity(t_[o], parity_[c], parity_[c])) throw ValidationError("transport mixes parities");
    tinv_.push_back(t_[o].inverse());
  }
}

LocalSystem LocalSystem::trivial(GroupoidPtr base, std::size_t dim) {
  std::vector<Representation> rho;
  for (std::size_t c = 0; c < base->component_count(); ++c) rho.push_back(trivial_rep(base->vertex_group(c), dim));
  return LocalSystem(std::move(base), std::move(rho));
}

LocalSystem LocalSystem::on_classifying(GroupPtr g, Representation rho) {
  return LocalSystem(make_groupoid(FinGroupoid::classifying(std::move(g))), {std::move(rho)});
}

std::size_t LocalSystem::odd_dim(std::size_t c) const {
  return static_cast<std::size_t>(std::count(parity_[c].begin(), parity_[c].end(), true));
}

ExactMatrix LocalSystem::operator()(const Morphism& m) const {
  std::size_t c = base_->component_of(m.src);
  return t_[m.tgt] * rho_[c][m.h] * tinv_[m.src];
}

LocalSystem LocalSystem::pullback(const GroupoidFunctor& f, const LocalSystem& l) {
  const FinGroupoid& x = *f.source();
  if (!same_base(*f.target(), *l.base())) throw ValidationError("pullback along a functor into a different groupoid");
  std::vector<Representation> rho;
  std::vector<std::vector<bool>> parity;
  for (std::size_t c = 0; c < x.component_count(); ++c) {
    std::size_t fb = f.object(x.base(c));
    std::size_t cy = l.base()->component_of(fb);
    const auto& phi = f.local(c);
    Representation r;
    for (Elem h = 0; h < x.vertex_group(c).order(); ++h) r.push_back(l.transport(fb) * l.rho(cy, phi[h]) * l.transport_inverse(fb));
    rho.push_back(std::move(r));
    parity.push_back(l.parity(cy));
  }
  std::vector<ExactMatrix> t;
  for (std::size_t o = 0; o < x.object_count(); ++o) {
    std::size_t c = x.component_of(o);
    std::size_t fb = f.object(x.base(c)), fo = f.object(o);
    t.push_back(l.transport(fo) * l.rho(l.base()->component_of(fb), f.transport(o)) * l.transport_inverse(fb));
  }
  return LocalSystem(f.source(), std::move(rho), std::move(t), std::move(parity));
}

LocalSystem LocalSystem::external_tensor(const ProductGroupoid& p, const LocalSystem& a, const LocalSystem& b) {
  if (!same_base(*p.left_factor, *a.base()) || !same_base(*p.right_factor, *b.base()))
    throw ValidationError("external tensor factors do not match the product");
  const FinGroupoid& ga = *a.base();
  const FinGroupoid& gb = *b.base();
  std::vector<Representation> rho;
  std::vector<std::vector<bool>> parity;
  for (std::size_t c1 = 0; c1 < ga.component_count(); ++c1)
    for (std::size_t c2 = 0; c2 < gb.component_count(); ++c2) {
      std::size_t n1 = ga.vertex_group(c1).order(), n2 = gb.vertex_group(c2).order();
      Representation r;
      for (std::size_t h = 0; h < n1 * n2; ++h)
        r.push_back(a.rho(c1, static_cast<Elem>(h / n2)).kron(b.rho(c2, static_cast<Elem>(h % n2))));
      rho.push_back(std::move(r));
      std::vector<bool> par;
      for (bool p1 : a.parity(c1))
        for (bool p2 : b.parity(c2)) par.push_back(p1 != p2);
      parity.push_back(std::move(par));
    }
  std::vector<ExactMatrix> t;
  const std::size_t nb = gb.object_count();
  for (std::size_t o = 0; o < p.groupoid->object_count(); ++o) t.push_back(a.transport(o / nb).kron(b.transport(o % nb)));
  return LocalSystem(p.groupoid, std::move(rho), std::move(t), std::move(parity));
}

bool operator==(const LocalSystem& a, const LocalSystem& b) {
  return same_base(*a.base_, *b.base_) && a.rho_ == b.rho_ && a.t_ == b.t_ && a.parity_ == b.parity_;
}

LocalSystemPtr make_system(LocalSystem l) { return std::make_shared<const LocalSystem>(std::move(l)); }

CoinvariantBasis coinvariants(std::size_t d, const ExactMatrix& rel) {
  ExactMatrix m = rel.hstack(ExactMatrix::identity(d));
  auto piv = m.echelon().pivots;
  // basis of k^d: relation columns first, then the chosen standard vectors
  ExactMatrix b(d, 0), sec(d, 0);
  for (auto p : piv) {
    b = b.hstack(m.col(p));
    if (p >= rel.cols()) sec = sec.hstack(m.col(p));
  }
  std::size_t q = sec.cols();
  ExactMatrix binv = d ? b.inverse() : ExactMatrix(0, 0);
  return {binv.block(d - q, 0, q, d), std::move(sec)};
}

CoinvariantBasis coinvariants(std::size_t d, const std::vector<ExactMatrix>& actions) {
  ExactMatrix rel(d, 0);
  for (auto& g : actions) rel = rel.hstack(g - ExactMatrix::identity(d));
  return coinvariants(d, rel);
}

Colimit colim(const LocalSystemPtr& l) {
  const FinGroupoid& x = *l->base();
  Colimit out;
  out.system = l;
  for (std::size_t c = 0; c < x.component_count(); ++c) {
    std::vector<ExactMatrix> acts;
    for (Elem s : x.vertex_group(c).generators()) acts.push_back(l->rho(c, s));
    auto cb = coinvariants(l->dim(c), acts);
    std::size_t q = cb.section.cols();
    out.offset.push_back(out.dim);
    out.block.push_back(q);
    out.projection.push_back(std::move(cb.projection));
    out.section.push_back(std::move(cb.section));
    out.dim += q;
  }
  return out;
}

ExactMatrix Colimit::iota(std::size_t x) const {
  std::size_t c = system->base()->component_of(x);
  ExactMatrix out(dim, system->dim(c));
  out.set_block(offset[c], 0, projection[c] * system->transport_inverse(x));
  return out;
}

Limit lim(const LocalSystemPtr& l) {
  const FinGroupoid& x = *l->base();
  Limit out;
  out.system = l;
  for (std::size_t c = 0; c < x.component_count(); ++c) {
    std::size_t d = l->dim(c);
    ExactMatrix eq(0, d);
    for (Elem s : x.vertex_group(c).generators()) eq = eq.vstack(l->rho(c, s) - ExactMatrix::identity(d));
    ExactMatrix k = eq.rows() ? eq.kernel() : ExactMatrix::identity(d);
    std::size_t q = k.cols();
    auto piv = k.transpose().echelon().pivots;
    ExactMatrix sub(q, q);
    for (std::size_t i = 0; i < q; ++i)
      for (std::size_t j = 0; j < q; ++j) sub(i, j) = k(piv[i], j);
    ExactMatrix inv = q ? sub.inverse() : sub;
    ExactMatrix coords(q, d);
    for (std::size_t j = 0; j < q; ++j)
      for (std::size_t i = 0; i < q; ++i) coords(i, piv[j]) = inv(i, j);
    out.offset.push_back(out.dim);
    out.block.push_back(q);
    out.basis.push_back(std::move(k));
    out.coordinates.push_back(std::move(coords));
    out.dim += q;
  }
  return out;
}

ExactMatrix Limit::restrict_to(std::size_t x) const {
  std::size_t c = system->base()->component_of(x);
  ExactMatrix out(system->dim(c), dim);
  out.set_block(0, offset[c], system->transport(x) * basis[c]);
  return out;
}

std::vector<ExactMatrix> norm_map(const Colimit& c, const Limit& l) {
  if (c.system != l.system && !(*c.system == *l.system)) throw ValidationError("norm map between different systems");
  const LocalSystem& sys = *c.system;
  std::vector<ExactMatrix> out;
  for (std::size_t k = 0; k < sys.base()->component_count(); ++k) {
    std::size_t d = sys.dim(k);
    ExactMatrix avg(d, d);
    for (auto& m : sys.representation(k)) avg += m;
    out.push_back(l.coordinates[k] * avg * c.section[k]);
  }
  return out;
}

ExactMatrix norm_matrix(const Colimit& c, const Limit& l) {
  auto blocks = norm_map(c, l);
  ExactMatrix out(l.dim, c.dim);
  for (std::size_t k = 0; k < blocks.size(); ++k) out.set_block(l.offset[k], c.offset[k], blocks[k]);
  return out;
}

DecoratedSpan::DecoratedSpan(GroupoidFunctor s, GroupoidFunctor t, LocalSystemPtr la, LocalSystemPtr lb,
                             std::vector<ExactMatrix> alpha)
    : s_(std::move(s)), t_(std::move(t)), la_(std::move(la)), lb_(std::move(lb)), alpha_(std::move(alpha)) {
  const FinGroupoid& x = *s_.source();
  if (!same_base(x, *t_.source())) throw ValidationError("span legs start at different groupoids");
  if (!same_base(*s_.target(), *la_->base())) throw ValidationError("source system lives on the wrong groupoid");
  if (!same_base(*t_.target(), *lb_->base())) throw ValidationError("target system lives on the wrong groupoid");
  if (alpha_.size() != x.object_count()) throw ValidationError("decoration needs one matrix per apex object");
  const LocalSystem& a = *la_;
  const LocalSystem& b = *lb_;
  for (std::size_t o = 0; o < x.object_count(); ++o) {
    std::size_t ca = a.base()->component_of(s_.object(o)), cb = b.base()->component_of(t_.object(o));
    if (alpha_[o].rows() != b.dim(cb) || alpha_[o].cols() != a.dim(ca))
      throw DimensionMismatch("decoration at object " + std::to_string(o) + " has the wrong shape");
    if (!preserves_parity(alpha_[o], b.parity(cb), a.parity(ca))) throw ValidationError("decoration is not even");
  }
  // naturality on a generating set: vertex generators at base objects and connecting arrows
  for (std::size_t c = 0; c < x.component_count(); ++c) {
    std::size_t x0 = x.base(c);
    std::vector<Morphism> gens;
    for (Elem h : x.vertex_group(c).generators()) gens.push_back({x0, x0, h});
    for (auto o : x.component(c).objects)
      if (o != x0) gens.push_back(x.connecting(o));
    for (auto& u : gens)
      if (alpha_[u.tgt] * a(s_(u)) != b(t_(u)) * alpha_[u.src])
        throw ValidationError("decoration is not natural along a morphism out of object " + std::to_string(u.src));
  }
}

DecoratedSpan DecoratedSpan::identity(const LocalSystemPtr& l) {
  auto id = GroupoidFunctor::identity(l->base());
  std::vector<ExactMatrix> alpha;
  for (std::size_t o = 0; o < l->base()->object_count(); ++o) alpha.push_back(ExactMatrix::identity(l->dim_at(o)));
  return DecoratedSpan(id, id, l, l, std::move(alpha));
}

std::vector<std::vector<ExactMatrix>> natural_decorations(const GroupoidFunctor& s, const GroupoidFunctor& t,
                                                          const LocalSystem& la, const LocalSystem& lb) {
  const FinGroupoid& x = *s.source();
  std::vector<std::vector<ExactMatrix>> out;
  auto zero = [&] {
    std::vector<ExactMatrix> z;
    for (std::size_t o = 0; o < x.object_count(); ++o) z.emplace_back(lb.dim_at(t.object(o)), la.dim_at(s.object(o)));
    return z;
  };
  for (std::size_t c = 0; c < x.component_count(); ++c) {
    std::size_t x0 = x.base(c);
    std::size_t ca = la.base()->component_of(s.object(x0)), cb = lb.base()->component_of(t.object(x0));
    std::size_t da = la.dim(ca), db = lb.dim(cb), n = da * db;
    // unknown alpha(i, j) at index i * da + j
    ExactMatrix eq(0, n);
    for (Elem h : x.vertex_group(c).generators()) {
      Morphism u{x0, x0, h};
      ExactMatrix ma = la(s(u)), mb = lb(t(u));
      ExactMatrix rows(n, n);
      for (std::size_t i = 0; i < db; ++i)
        for (std::size_t j = 0; j < da; ++j)
          for (std::size_t k = 0; k < da; ++k) rows(i * da + j, i * da + k) += ma(k, j);
      for (std::size_t i = 0; i < db; ++i)
        for (std::size_t j = 0; j < da; ++j)
          for (std::size_t k = 0; k < db; ++k) rows(i * da + j, k * da + j) -= mb(i, k);
      eq = eq.vstack(rows);
    }
    for (std::size_t i = 0; i < db; ++i)
      for (std::size_t j = 0; j < da; ++j)
        if (lb.parity(cb)[i] != la.parity(ca)[j]) {
          ExactMatrix r(1, n);
          r(0, i * da + j) = 1;
          eq = eq.vstack(r);
        }
    ExactMatrix k = eq.rows() ? eq.kernel() : ExactMatrix::identity(n);
    for (std::size_t v = 0; v < k.cols(); ++v) {
      ExactMatrix a0(db, da);
      for (std::size_t i = 0; i < db; ++i)
        for (std::size_t j = 0; j < da; ++j) a0(i, j) = k(i * da + j, v);
      auto dec = zero();
      for (auto o : x.component(c).objects) {
        Morphism p = x.connecting(o);
        dec[o] = lb(t(p)) * a0 * la(s(p)).inverse();
      }
      out.push_back(std::move(dec));
    }
  }
  return out;
}

ExactMatrix linearize(const DecoratedSpan& sp, const Colimit& ca, const Colimit& cb) {
  if (!(*ca.system == *sp.source_system()) || !(*cb.system == *sp.target_system()))
    throw ValidationError("colimits do not belong to the span's local systems");
  const LocalSystem& la = *sp.source_system();
  const FinGroupoid& a = *la.base();
  ExactMatrix out(cb.dim, ca.dim);
  for (std::size_t c = 0; c < a.component_count(); ++c) {
    if (ca.block[c] == 0) continue;
    auto fib = homotopy_fiber(sp.source_leg(), a.base(c));
    const FinGroupoid& f = *fib.groupoid;
    ExactMatrix acc(cb.dim, la.dim(c));
    for (std::size_t k = 0; k < f.component_count(); ++k) {
      std::size_t o = f.base(k);
      std::size_t xo = fib.inclusion->object(o);
      ExactMatrix term = cb.iota(sp.target_leg().object(xo)) * sp.decoration(xo) * la(fib.gamma[o]);
      acc += term * inverse_order(f.vertex_group(k));
    }
    out.set_block(0, ca.offset[c], acc * ca.section[c]);
  }
  return out;
}

ExactMatrix linearize(const DecoratedSpan& sp) {
  return linearize(sp, colim(sp.source_system()), colim(sp.target_system()));
}

ExactMatrix linearize_limit(const DecoratedSpan& sp, const Limit& la, const Limit& lb) {
  if (!(*la.system == *sp.source_system()) || !(*lb.system == *sp.target_system()))
    throw ValidationError("limits do not belong to the span's local systems");
  const LocalSystem& sb = *sp.target_system();
  const FinGroupoid& b = *sb.base();
  ExactMatrix out(lb.dim, la.dim);
  for (std::size_t c = 0; c < b.component_count(); ++c) {
    if (lb.block[c] == 0) continue;
    auto fib = homotopy_fiber(sp.target_leg(), b.base(c));
    const FinGroupoid& f = *fib.groupoid;
    ExactMatrix acc(sb.dim(c), la.dim);
    for (std::size_t k = 0; k < f.component_count(); ++k) {
      std::size_t o = f.base(k);
      std::size_t xo = fib.inclusion->object(o);
      Morphism back = b.inverse(fib.gamma[o]);
      ExactMatrix term = sb(back) * sp.decoration(xo) * la.restrict_to(sp.source_leg().object(xo));
      acc += term * inverse_order(f.vertex_group(k));
    }
    out.set_block(lb.offset[c], 0, lb.coordinates[c] * acc);
  }
  return out;
}

DecoratedSpan compose(const DecoratedSpan& s2, const DecoratedSpan& s1) {
  if (s1.target_system() != s2.source_system() && !(*s1.target_system() == *s2.source_system()))
    throw ValidationError("spans do not share the middle local system");
  auto pb = homotopy_pullback(s1.target_leg(), s2.source_leg());
  const LocalSystem& mid = *s1.target_system();
  std::vector<ExactMatrix> alpha;
  for (std::size_t o = 0; o < pb.groupoid->object_count(); ++o) {
    std::size_t xo = pb.left->object(o), yo = pb.right->object(o);
    alpha.push_back(s2.decoration(yo) * mid(pb.gamma[o]) * s1.decoration(xo));
  }
  return DecoratedSpan(compose(s1.source_leg(), *pb.left), compose(s2.target_leg(), *pb.right), s1.source_system(),
                       s2.target_system(), std::move(alpha));
}

TensorSpan tensor(const DecoratedSpan& a, const DecoratedSpan& b) {
  TensorSpan out;
  out.source = product(a.source_leg().target(), b.source_leg().target());
  out.apex = product(a.apex(), b.apex());
  out.target = product(a.target_leg().target(), b.target_leg().target());
  auto s = product_functor(out.apex, out.source, a.source_leg(), b.source_leg());
  auto t = product_functor(out.apex, out.target, a.target_leg(), b.target_leg());
  auto la = make_system(LocalSystem::external_tensor(out.source, *a.source_system(), *b.source_system()));
  auto lb = make_system(LocalSystem::external_tensor(out.target, *a.target_system(), *b.target_system()));
  std::vector<ExactMatrix> alpha;
  const std::size_t nb = b.apex()->object_count();
  for (std::size_t o = 0; o < out.apex.groupoid->object_count(); ++o)
    alpha.push_back(a.decoration(o / nb).kron(b.decoration(o % nb)));
  out.span = std::make_shared<DecoratedSpan>(s, t, la, lb, std::move(alpha));
  return out;
}

ExactMatrix tensor_comparison(const Colimit& prod, const Colimit& a, const Colimit& b) {
  const FinGroupoid& ga = *a.system->base();
  const FinGroupoid& gb = *b.system->base();
  const std::size_t nb = gb.object_count();
  ExactMatrix out(prod.dim, a.dim * b.dim);
  for (std::size_t c1 = 0; c1 < ga.component_count(); ++c1)
    for (std::size_t c2 = 0; c2 < gb.component_count(); ++c2) {
      std::size_t o = ga.base(c1) * nb + gb.base(c2);
      ExactMatrix blk = prod.iota(o) * a.section[c1].kron(b.section[c2]);
      std::size_t q2 = b.block[c2];
      for (std::size_t i1 = 0; i1 < a.block[c1]; ++i1)
        for (std::size_t i2 = 0; i2 < q2; ++i2) {
          std::size_t col = (a.offset[c1] + i1) * b.dim + b.offset[c2] + i2;
          for (std::size_t r = 0; r < prod.dim; ++r) out(r, col) = blk(r, i1 * q2 + i2);
        }
    }
  return out;
}

}  // namespace pifin
