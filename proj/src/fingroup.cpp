#include "pifin/fingroup.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

#include "pifin/error.hpp"

namespace pifin {

namespace {
constexpr Elem kUnset = static_cast<Elem>(-1);

std::string cycle_label(const std::vector<int>& p) {
  std::vector<bool> seen(p.size(), false);
  std::ostringstream os;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<int>(i)) continue;
    os << "(";
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      os << (first ? "" : " ") << j + 1;
      first = false;
      j = static_cast<std::size_t>(p[j]);
    }
    os << ")";
  }
  std::string s = os.str();
  return s.empty() ? "e" : s;
}
}  // namespace

FinGroup::FinGroup() = default;

GroupPtr make_group(FinGroup g) { return std::make_shared<const FinGroup>(std::move(g)); }

void FinGroup::finish_unchecked() {
  inv_.assign(n_, kUnset);
  for (Elem a = 0; a < n_; ++a)
    for (Elem b = 0; b < n_; ++b)
      if (mul(a, b) == e_) {
        inv_[a] = b;
        break;
      }
}

FinGroup FinGroup::from_table(const std::vector<std::vector<Elem>>& mul, std::vector<std::string> labels) {
  const std::size_t n = mul.size();
  if (n == 0) throw ValidationError("group table is empty");
  FinGroup g;
  g.n_ = n;
  g.t_.assign(n * n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    if (mul[a].size() != n)
      throw ValidationError("group table row " + std::to_string(a) + " has length " + std::to_string(mul[a].size()));
    for (std::size_t b = 0; b < n; ++b) {
      if (mul[a][b] >= n)
        throw ValidationError("group table entry [" + std::to_string(a) + "][" + std::to_string(b) + "] out of range");
      g.t_[a * n + b] = mul[a][b];
    }
  }
  Elem e = kUnset;
  for (Elem c = 0; c < n && e == kUnset; ++c) {
    bool ok = true;
    for (Elem x = 0; x < n && ok; ++x) ok = g.mul(c, x) == x && g.mul(x, c) == x;
    if (ok) e = c;
  }
  if (e == kUnset) throw ValidationError("group table has no identity element");
  g.e_ = e;
  g.finish_unchecked();
  for (Elem a = 0; a < n; ++a)
    if (g.inv_[a] == kUnset || g.mul(g.inv_[a], a) != e)
      throw ValidationError("element " + std::to_string(a) + " has no two-sided inverse");
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      Elem ab = g.mul(a, b);
      for (Elem c = 0; c < n; ++c)
        if (g.mul(ab, c) != g.mul(a, g.mul(b, c)))
          throw ValidationError("associativity fails at (" + std::to_string(a) + "," + std::to_string(b) + "," +
                                std::to_string(c) + ")");
    }
  if (!labels.empty() && labels.size() != n) throw ValidationError("label count differs from group order");
  g.labels_ = std::move(labels);
  return g;
}

FinGroup FinGroup::from_permutations(const std::vector<std::vector<int>>& gens, int degree) {
  if (degree < 0) throw ValidationError("negative permutation degree");
  const std::size_t d = static_cast<std::size_t>(degree);
  for (auto& p : gens) {
    if (p.size() != d) throw ValidationError("permutation generator has wrong length");
    std::vector<bool> hit(d, false);
    for (int x : p) {
      if (x < 0 || static_cast<std::size_t>(x) >= d || hit[x]) throw ValidationError("generator is not a permutation");
      hit[x] = true;
    }
  }
  std::vector<int> id(d);
  std::iota(id.begin(), id.end(), 0);
  std::vector<std::vector<int>> elems{id};
  std::map<std::vector<int>, Elem> index{{id, 0}};
  auto compose = [&](const std::vector<int>& p, const std::vector<int>& q) {
    std::vector<int> r(d);
    for (std::size_t i = 0; i < d; ++i) r[i] = p[q[i]];
    return r;
  };
  for (std::size_t k = 0; k < elems.size(); ++k)
    for (auto& s : gens) {
      auto r = compose(s, elems[k]);
      if (!index.count(r)) {
        index.emplace(r, static_cast<Elem>(elems.size()));
        elems.push_back(r);
        if (elems.size() > 100000) throw ValidationError("permutation group too large for a table");
      }
    }
  const std::size_t n = elems.size();
  FinGroup g;
  g.n_ = n;
  g.t_.assign(n * n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) g.t_[a * n + b] = index.at(compose(elems[a], elems[b]));
  g.e_ = 0;
  g.finish_unchecked();
  for (auto& p : elems) g.labels_.push_back(cycle_label(p));
  return g;
}

FinGroup FinGroup::cyclic(std::size_t n) { return abelian({n}); }

FinGroup FinGroup::abelian(const std::vector<std::size_t>& factors) {
  std::size_t n = 1;
  for (auto f : factors) {
    if (f == 0) throw ValidationError("abelian factor must be positive");
    n *= f;
  }
  FinGroup g;
  g.n_ = n;
  g.t_.assign(n * n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::size_t x = a, y = b, r = 0, w = 1;
      for (auto f : factors) {
        r += ((x % f + y % f) % f) * w;
        w *= f;
        x /= f;
        y /= f;
      }
      g.t_[a * n + b] = static_cast<Elem>(r);
    }
  g.e_ = 0;
  g.finish_unchecked();
  return g;
}

FinGroup FinGroup::symmetric(int n) {
  if (n <= 1) return FinGroup();
  std::vector<int> swap(n), cyc(n);
  std::iota(swap.begin(), swap.end(), 0);
  std::swap(swap[0], swap[1]);
  for (int i = 0; i < n; ++i) cyc[i] = (i + 1) % n;
  return from_permutations({swap, cyc}, n);
}

FinGroup FinGroup::dihedral(std::size_t n) {
  // r^a s^x at index a + n x
  FinGroup g;
  g.n_ = 2 * n;
  g.t_.assign(g.n_ * g.n_, 0);
  for (std::size_t i = 0; i < g.n_; ++i)
    for (std::size_t j = 0; j < g.n_; ++j) {
      std::size_t a = i % n, x = i / n, b = j % n, y = j / n;
      std::size_t c = x ? (a + n - b) % n : (a + b) % n;
      g.t_[i * g.n_ + j] = static_cast<Elem>(c + n * ((x + y) % 2));
    }
  g.e_ = 0;
  g.finish_unchecked();
  return g;
}

FinGroup FinGroup::quaternion() {
  // index = 2 * unit + sign, unit in {1, i, j, k}
  static const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int unit_sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  FinGroup g;
  g.n_ = 8;
  g.t_.assign(64, 0);
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      int ua = a / 2, ub = b / 2;
      int sign = (a % 2 + b % 2 + unit_sign[ua][ub]) % 2;
      g.t_[a * 8 + b] = static_cast<Elem>(2 * unit_mul[ua][ub] + sign);
    }
  g.e_ = 0;
  g.finish_unchecked();
  g.labels_ = {"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
  return g;
}

FinGroup FinGroup::dicyclic(std::size_t n) {
  FinGroup g;
  const std::size_t m = 2 * n;
  g.n_ = 2 * m;
  g.t_.assign(g.n_ * g.n_, 0);
  for (std::size_t i = 0; i < g.n_; ++i)
    for (std::size_t j = 0; j < g.n_; ++j) {
      std::size_t k = i % m, x = i / m, l = j % m, y = j / m;
      std::size_t c = x ? (k + m - l) % m : (k + l) % m;
      if (x && y) c = (c + n) % m;
      g.t_[i * g.n_ + j] = static_cast<Elem>(c + m * ((x + y) % 2));
    }
  g.e_ = 0;
  g.finish_unchecked();
  return g;
}

FinGroup FinGroup::alternating(int n) {
  if (n <= 2) return FinGroup();
  std::vector<std::vector<int>> gens;
  for (int k = 2; k < n; ++k) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    p[0] = 1;
    p[1] = k;
    p[k] = 0;
    gens.push_back(p);
  }
  return from_permutations(gens, n);
}

std::vector<NamedGroup> small_groups(std::size_t max_order) {
  if (max_order > 12) throw ValidationError("small group corpus stops at order 12");
  std::vector<NamedGroup> all = {
      {"1", FinGroup()},
      {"Z2", FinGroup::cyclic(2)},
      {"Z3", FinGroup::cyclic(3)},
      {"Z4", FinGroup::cyclic(4)},
      {"Z2xZ2", FinGroup::abelian({2, 2})},
      {"Z5", FinGroup::cyclic(5)},
      {"Z6", FinGroup::cyclic(6)},
      {"S3", FinGroup::symmetric(3)},
      {"Z7", FinGroup::cyclic(7)},
      {"Z8", FinGroup::cyclic(8)},
      {"Z4xZ2", FinGroup::abelian({4, 2})},
      {"Z2^3", FinGroup::abelian({2, 2, 2})},
      {"D4", FinGroup::dihedral(4)},
      {"Q8", FinGroup::quaternion()},
      {"Z9", FinGroup::cyclic(9)},
      {"Z3xZ3", FinGroup::abelian({3, 3})},
      {"Z10", FinGroup::cyclic(10)},
      {"D5", FinGroup::dihedral(5)},
      {"Z11", FinGroup::cyclic(11)},
      {"Z12", FinGroup::cyclic(12)},
      {"Z6xZ2", FinGroup::abelian({6, 2})},
      {"A4", FinGroup::alternating(4)},
      {"D6", FinGroup::dihedral(6)},
      {"Dic3", FinGroup::dicyclic(3)},
  };
  std::vector<NamedGroup> out;
  for (auto& g : all)
    if (g.group.order() <= max_order) out.push_back(std::move(g));
  return out;
}

FinGroup FinGroup::direct_product(const FinGroup& a, const FinGroup& b) {
  FinGroup g;
  g.n_ = a.n_ * b.n_;
  g.t_.assign(g.n_ * g.n_, 0);
  for (Elem x = 0; x < g.n_; ++x)
    for (Elem y = 0; y < g.n_; ++y)
      g.t_[x * g.n_ + y] =
          static_cast<Elem>(a.mul(x / b.n_, y / b.n_) * b.n_ + b.mul(x % b.n_, y % b.n_));
  g.e_ = static_cast<Elem>(a.e_ * b.n_ + b.e_);
  g.finish_unchecked();
  return g;
}

FinGroup FinGroup::subgroup(const FinGroup& g, std::vector<Elem> elems, std::vector<Elem>* embed) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  std::vector<Elem> pos(g.n_, kUnset);
  for (std::size_t i = 0; i < elems.size(); ++i) pos[elems[i]] = static_cast<Elem>(i);
  FinGroup h;
  h.n_ = elems.size();
  h.t_.assign(h.n_ * h.n_, 0);
  for (std::size_t i = 0; i < h.n_; ++i)
    for (std::size_t j = 0; j < h.n_; ++j) {
      Elem p = pos[g.mul(elems[i], elems[j])];
      if (p == kUnset) throw ValidationError("element set is not closed under multiplication");
      h.t_[i * h.n_ + j] = p;
    }
  if (pos[g.e_] == kUnset) throw ValidationError("element set does not contain the identity");
  h.e_ = pos[g.e_];
  h.finish_unchecked();
  if (!g.labels_.empty())
    for (auto x : elems) h.labels_.push_back(g.labels_[x]);
  if (embed) *embed = elems;
  return h;
}

std::string FinGroup::label(Elem a) const { return labels_.empty() ? std::to_string(a) : labels_[a]; }

Elem FinGroup::power(Elem a, long k) const {
  if (k < 0) return power(inv(a), -k);
  Elem r = e_;
  for (long i = 0; i < k; ++i) r = mul(r, a);
  return r;
}

std::size_t FinGroup::element_order(Elem a) const {
  std::size_t k = 1;
  for (Elem x = a; x != e_; x = mul(x, a)) ++k;
  return k;
}

std::size_t FinGroup::exponent() const {
  std::size_t e = 1;
  for (Elem a = 0; a < n_; ++a) e = std::lcm(e, element_order(a));
  return e;
}

bool FinGroup::is_abelian() const {
  for (Elem a = 0; a < n_; ++a)
    for (Elem b = a + 1; b < n_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

std::vector<Elem> FinGroup::closure(const std::vector<Elem>& gens) const {
  std::vector<bool> in(n_, false);
  std::vector<Elem> out{e_};
  in[e_] = true;
  for (std::size_t k = 0; k < out.size(); ++k)
    for (Elem s : gens) {
      Elem y = mul(out[k], s);
      if (!in[y]) {
        in[y] = true;
        out.push_back(y);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Elem> FinGroup::centralizer(const std::vector<Elem>& s) const {
  std::vector<Elem> out;
  for (Elem g = 0; g < n_; ++g) {
    bool ok = true;
    for (Elem x : s)
      if (mul(g, x) != mul(x, g)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(g);
  }
  return out;
}

std::vector<std::vector<Elem>> FinGroup::conjugacy_classes() const {
  std::vector<bool> seen(n_, false);
  std::vector<std::vector<Elem>> out;
  for (Elem x = 0; x < n_; ++x) {
    if (seen[x]) continue;
    std::vector<Elem> cls;
    for (Elem g = 0; g < n_; ++g) {
      Elem y = conj(g, x);
      if (!seen[y]) {
        seen[y] = true;
        cls.push_back(y);
      }
    }
    std::sort(cls.begin(), cls.end());
    out.push_back(std::move(cls));
  }
  return out;
}

std::vector<Elem> FinGroup::generators() const {
  std::vector<Elem> gens;
  std::vector<Elem> cur{e_};
  std::vector<std::size_t> ord(n_);
  for (Elem a = 0; a < n_; ++a) ord[a] = element_order(a);
  while (cur.size() < n_) {
    std::vector<bool> in(n_, false);
    for (auto x : cur) in[x] = true;
    Elem best = kUnset;
    for (Elem a = 0; a < n_; ++a)
      if (!in[a] && (best == kUnset || ord[a] > ord[best])) best = a;
    gens.push_back(best);
    cur = closure(gens);
  }
  return gens;
}

std::vector<Elem> FinGroup::derived_subgroup() const {
  std::vector<Elem> comms;
  for (Elem a = 0; a < n_; ++a)
    for (Elem b = 0; b < n_; ++b) comms.push_back(commutator(a, b));
  std::sort(comms.begin(), comms.end());
  comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
  return closure(comms);
}

bool FinGroup::is_normal(const std::vector<Elem>& sub) const {
  std::vector<bool> in(n_, false);
  for (auto x : sub) in[x] = true;
  for (Elem g = 0; g < n_; ++g)
    for (auto x : sub)
      if (!in[conj(g, x)]) return false;
  return true;
}

FinGroup FinGroup::quotient(const std::vector<Elem>& normal, std::vector<Elem>* proj) const {
  if (!is_normal(normal)) throw ValidationError("quotient by a non-normal subgroup");
  std::vector<Elem> coset(n_, kUnset);
  std::vector<Elem> reps;
  for (Elem x = 0; x < n_; ++x) {
    if (coset[x] != kUnset) continue;
    Elem c = static_cast<Elem>(reps.size());
    reps.push_back(x);
    for (auto k : normal) coset[mul(x, k)] = c;
  }
  std::vector<std::vector<Elem>> t(reps.size(), std::vector<Elem>(reps.size()));
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = 0; j < reps.size(); ++j) t[i][j] = coset[mul(reps[i], reps[j])];
  if (proj) *proj = coset;
  return from_table(t);
}

std::vector<std::vector<Elem>> FinGroup::table_rows() const {
  std::vector<std::vector<Elem>> rows(n_, std::vector<Elem>(n_));
  for (Elem a = 0; a < n_; ++a)
    for (Elem b = 0; b < n_; ++b) rows[a][b] = mul(a, b);
  return rows;
}

std::optional<GroupHom> extend_homomorphism(const FinGroup& src, const std::vector<Elem>& gens,
                                            const std::vector<Elem>& images, const FinGroup& tgt) {
  GroupHom phi(src.order(), kUnset);
  phi[src.identity()] = tgt.identity();
  std::vector<Elem> queue{src.identity()};
  for (std::size_t k = 0; k < queue.size(); ++k) {
    Elem x = queue[k];
    for (std::size_t i = 0; i < gens.size(); ++i) {
      Elem y = src.mul(x, gens[i]);
      Elem v = tgt.mul(phi[x], images[i]);
      if (phi[y] == kUnset) {
        phi[y] = v;
        queue.push_back(y);
      } else if (phi[y] != v) {
        return std::nullopt;
      }
    }
  }
  if (queue.size() != src.order()) throw ValidationError("generators do not generate the group");
  return phi;
}

std::vector<GroupHom> homomorphisms(const FinGroup& src, const FinGroup& tgt) {
  auto gens = src.generators();
  std::vector<std::vector<Elem>> cand(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::size_t o = src.element_order(gens[i]);
    for (Elem y = 0; y < tgt.order(); ++y)
      if (o % tgt.element_order(y) == 0) cand[i].push_back(y);
  }
  std::vector<GroupHom> out;
  std::vector<std::size_t> idx(gens.size(), 0);
  std::vector<Elem> img(gens.size());
  while (true) {
    for (std::size_t i = 0; i < gens.size(); ++i) img[i] = cand[i][idx[i]];
    if (auto h = extend_homomorphism(src, gens, img, tgt)) out.push_back(std::move(*h));
    std::size_t i = 0;
    while (i < gens.size() && ++idx[i] == cand[i].size()) idx[i++] = 0;
    if (i == gens.size()) break;
  }
  return out;
}

namespace {
std::vector<std::size_t> order_histogram(const FinGroup& g) {
  std::vector<std::size_t> h(g.order() + 1, 0);
  for (Elem a = 0; a < g.order(); ++a) ++h[g.element_order(a)];
  return h;
}

bool is_bijective(const GroupHom& h, std::size_t n) {
  std::vector<bool> hit(n, false);
  for (auto y : h) {
    if (hit[y]) return false;
    hit[y] = true;
  }
  return true;
}

template <class F>
void for_each_iso_candidate(const FinGroup& a, const FinGroup& b, F&& f) {
  if (a.order() != b.order() || order_histogram(a) != order_histogram(b)) return;
  auto gens = a.generators();
  std::vector<std::vector<Elem>> cand(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (Elem y = 0; y < b.order(); ++y)
      if (b.element_order(y) == a.element_order(gens[i])) cand[i].push_back(y);
  for (auto& c : cand)
    if (c.empty()) return;
  std::vector<std::size_t> idx(gens.size(), 0);
  std::vector<Elem> img(gens.size());
  while (true) {
    for (std::size_t i = 0; i < gens.size(); ++i) img[i] = cand[i][idx[i]];
    if (auto h = extend_homomorphism(a, gens, img, b); h && is_bijective(*h, b.order()))
      if (!f(std::move(*h))) return;
    std::size_t i = 0;
    while (i < gens.size() && ++idx[i] == cand[i].size()) idx[i++] = 0;
    if (i == gens.size()) return;
  }
}
}  // namespace

std::optional<GroupHom> find_isomorphism(const FinGroup& a, const FinGroup& b) {
  std::optional<GroupHom> found;
  for_each_iso_candidate(a, b, [&](GroupHom h) {
    found = std::move(h);
    return false;
  });
  return found;
}

std::vector<GroupHom> automorphisms(const FinGroup& g) {
  std::vector<GroupHom> out;
  for_each_iso_candidate(g, g, [&](GroupHom h) {
    out.push_back(std::move(h));
    return true;
  });
  return out;
}

Cocycle2::Cocycle2(GroupPtr g, unsigned n, std::vector<std::vector<long>> exponents) : g_(std::move(g)), n_(n) {
  if (n_ == 0) throw ValidationError("cocycle root order N must be positive");
  const std::size_t m = g_->order();
  if (exponents.size() != m) throw ValidationError("cocycle table has wrong number of rows");
  e_.assign(m * m, 0);
  for (std::size_t a = 0; a < m; ++a) {
    if (exponents[a].size() != m) throw ValidationError("cocycle table row " + std::to_string(a) + " has wrong length");
    for (std::size_t b = 0; b < m; ++b) {
      long v = exponents[a][b] % static_cast<long>(n_);
      e_[a * m + b] = static_cast<unsigned>(v < 0 ? v + n_ : v);
    }
  }
}

Cocycle2 Cocycle2::trivial(GroupPtr g) {
  std::size_t m = g->order();
  return Cocycle2(std::move(g), 1, std::vector<std::vector<long>>(m, std::vector<long>(m, 0)));
}

std::vector<std::vector<long>> Cocycle2::table() const {
  const std::size_t m = g_->order();
  std::vector<std::vector<long>> t(m, std::vector<long>(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) t[a][b] = e_[a * m + b];
  return t;
}

Cocycle2 Cocycle2::times_coboundary(const std::vector<long>& f) const {
  const FinGroup& g = *g_;
  if (f.size() != g.order()) throw ValidationError("coboundary function has wrong length");
  if (f[g.identity()] % static_cast<long>(n_) != 0) throw ValidationError("coboundary must vanish at the identity");
  auto t = table();
  for (Elem a = 0; a < g.order(); ++a)
    for (Elem b = 0; b < g.order(); ++b) t[a][b] += f[a] + f[b] - f[g.mul(a, b)];
  return Cocycle2(g_, n_, std::move(t));
}

Cocycle2 Cocycle2::pullback(GroupPtr src, const GroupHom& phi) const {
  const std::size_t m = src->order();
  if (phi.size() != m) throw ValidationError("pullback map has wrong length");
  std::vector<std::vector<long>> t(m, std::vector<long>(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) t[a][b] = exponent(phi[a], phi[b]);
  return Cocycle2(std::move(src), n_, std::move(t));
}

CocycleDiagnosis validate_cocycle(const Cocycle2& c) {
  const FinGroup& g = c.group();
  const Elem e = g.identity();
  const unsigned n = c.root_order();
  CocycleDiagnosis d;
  for (Elem a = 0; a < g.order(); ++a)
    if (c.exponent(e, a) != 0 || c.exponent(a, e) != 0) {
      d.ok = false;
      d.reason = "not normalized at element " + std::to_string(a);
      d.triple = std::array<Elem, 3>{e, a, e};
      return d;
    }
  for (Elem a = 0; a < g.order(); ++a)
    for (Elem b = 0; b < g.order(); ++b)
      for (Elem k = 0; k < g.order(); ++k) {
        unsigned lhs = (c.exponent(a, b) + c.exponent(g.mul(a, b), k)) % n;
        unsigned rhs = (c.exponent(a, g.mul(b, k)) + c.exponent(b, k)) % n;
        if (lhs != rhs) {
          d.ok = false;
          d.reason = "cocycle identity fails";
          d.triple = std::array<Elem, 3>{a, b, k};
          return d;
        }
      }
  return d;
}

}  // namespace pifin
