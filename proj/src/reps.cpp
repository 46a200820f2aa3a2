#include "pifin/reps.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "pifin/error.hpp"

namespace pifin {

Representation extend_representation(const FinGroup& g, const std::vector<Elem>& gens,
                                     const std::vector<ExactMatrix>& images) {
  if (gens.size() != images.size()) throw ValidationError("generator/image count mismatch");
  std::size_t d = images.empty() ? 0 : images[0].rows();
  for (auto& m : images)
    if (m.rows() != d || m.cols() != d) throw ValidationError("generator images must be square of equal size");
  if (images.empty()) {
    if (g.order() != 1) throw ValidationError("no generators for a nontrivial group");
    return {ExactMatrix::identity(0)};
  }
  std::vector<std::optional<ExactMatrix>> rep(g.order());
  rep[g.identity()] = ExactMatrix::identity(d);
  std::deque<Elem> queue{g.identity()};
  while (!queue.empty()) {
    Elem x = queue.front();
    queue.pop_front();
    for (std::size_t k = 0; k < gens.size(); ++k) {
      Elem y = g.mul(x, gens[k]);
      ExactMatrix m = *rep[x] * images[k];
      if (!rep[y]) {
        rep[y] = std::move(m);
        queue.push_back(y);
      } else if (*rep[y] != m) {
        throw ValidationError("generator images violate a relation at element " + g.label(y));
      }
    }
  }
  Representation out;
  for (Elem x = 0; x < g.order(); ++x) {
    if (!rep[x]) throw ValidationError("generators do not generate the group");
    out.push_back(std::move(*rep[x]));
  }
  return out;
}

Representation trivial_rep(const FinGroup& g, std::size_t dim) {
  return Representation(g.order(), ExactMatrix::identity(dim));
}

Representation regular_rep(const FinGroup& g) {
  std::size_t n = g.order();
  Representation r;
  for (Elem x = 0; x < n; ++x) {
    ExactMatrix m(n, n);
    for (Elem h = 0; h < n; ++h) m(g.mul(x, h), h) = 1;
    r.push_back(std::move(m));
  }
  return r;
}

Representation direct_sum(const Representation& a, const Representation& b) {
  if (a.size() != b.size()) throw DimensionMismatch("representations of different groups");
  Representation r;
  for (std::size_t i = 0; i < a.size(); ++i) r.push_back(direct_sum(std::vector<ExactMatrix>{a[i], b[i]}));
  return r;
}

Representation induced_rep(const FinGroup& g, const std::vector<Elem>& sub, const std::vector<Cyclotomic>& values) {
  std::vector<long> idx(g.order(), -1);
  for (std::size_t i = 0; i < sub.size(); ++i) idx[sub[i]] = static_cast<long>(i);
  // left coset representatives, smallest element of each coset
  std::vector<Elem> reps;
  std::vector<bool> seen(g.order(), false);
  for (Elem t = 0; t < g.order(); ++t) {
    if (seen[t]) continue;
    reps.push_back(t);
    for (Elem h : sub) seen[g.mul(t, h)] = true;
  }
  std::size_t k = reps.size();
  Representation r;
  for (Elem x = 0; x < g.order(); ++x) {
    ExactMatrix m(k, k);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < k; ++i) {
        long h = idx[g.mul(g.inv(reps[i]), g.mul(x, reps[j]))];
        if (h >= 0) m(i, j) = values[h];
      }
    r.push_back(std::move(m));
  }
  return r;
}

bool is_representation(const FinGroup& g, const Representation& r) {
  if (r.size() != g.order()) return false;
  if (!r[g.identity()].is_identity()) return false;
  for (Elem a = 0; a < g.order(); ++a)
    for (Elem b = 0; b < g.order(); ++b)
      if (r[g.mul(a, b)] != r[a] * r[b]) return false;
  return true;
}

std::vector<Cyclotomic> character(const Representation& r) {
  std::vector<Cyclotomic> chi;
  for (auto& m : r) {
    Cyclotomic t;
    for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
    chi.push_back(t);
  }
  return chi;
}

Cyclotomic character_inner(const FinGroup& g, const std::vector<Cyclotomic>& chi, const std::vector<Cyclotomic>& psi) {
  Cyclotomic s;
  for (Elem x = 0; x < g.order(); ++x) s += chi[x] * psi[x].conj();
  return s / Cyclotomic(static_cast<long>(g.order()));
}

std::vector<std::vector<Elem>> subgroups(const FinGroup& g) {
  std::set<std::vector<Elem>> found{{g.identity()}};
  std::deque<std::vector<Elem>> queue{{g.identity()}};
  while (!queue.empty()) {
    auto h = queue.front();
    queue.pop_front();
    for (Elem x = 0; x < g.order(); ++x) {
      if (std::binary_search(h.begin(), h.end(), x)) continue;
      auto gens = h;
      gens.push_back(x);
      auto c = g.closure(gens);
      std::sort(c.begin(), c.end());
      if (found.insert(c).second) queue.push_back(c);
    }
  }
  std::vector<std::vector<Elem>> out(found.begin(), found.end());
  std::stable_sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.size() > b.size(); });
  return out;
}

std::vector<Representation> irreducible_reps(const FinGroup& g) {
  std::vector<Representation> irreps;
  std::vector<std::vector<Cyclotomic>> chars;
  std::size_t total = 0;
  for (auto& sub : subgroups(g)) {
    std::vector<Elem> embed;
    auto h = FinGroup::subgroup(g, sub, &embed);
    std::size_t m = h.exponent();
    auto cyc = FinGroup::cyclic(m);
    for (auto& lam : homomorphisms(h, cyc)) {
      std::vector<Cyclotomic> values(sub.size());
      for (Elem i = 0; i < h.order(); ++i) {
        auto pos = std::lower_bound(sub.begin(), sub.end(), embed[i]) - sub.begin();
        values[pos] = Cyclotomic::zeta(m, lam[i]);
      }
      auto rep = induced_rep(g, sub, values);
      auto chi = character(rep);
      if (!character_inner(g, chi, chi).is_one()) continue;
      bool fresh = true;
      for (auto& c : chars)
        if (!character_inner(g, chi, c).is_zero()) fresh = false;
      if (!fresh) continue;
      total += rep[0].rows() * rep[0].rows();
      chars.push_back(std::move(chi));
      irreps.push_back(std::move(rep));
      if (total == g.order()) return irreps;
    }
  }
  throw ValidationError("group has an irreducible representation that is not monomial");
}

}  // namespace pifin
