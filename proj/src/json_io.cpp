#include "pifin/json_io.hpp"

#include <fstream>

namespace pifin::io {

namespace {

const Json& field(const Json& j, const std::string& key, const std::string& ptr) {
  if (!j.is_object()) throw InputError(ptr, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(ptr + "/" + key, "missing");
  return *it;
}

long integer(const Json& j, const std::string& ptr) {
  if (!j.is_number_integer()) throw InputError(ptr, "expected an integer");
  return j.get<long>();
}

std::size_t count(const Json& j, const std::string& ptr) {
  long v = integer(j, ptr);
  if (v < 0) throw InputError(ptr, "expected a nonnegative integer");
  return static_cast<std::size_t>(v);
}

const Json& array(const Json& j, const std::string& ptr, std::optional<std::size_t> size = std::nullopt) {
  if (!j.is_array()) throw InputError(ptr, "expected an array");
  if (size && j.size() != *size)
    throw InputError(ptr, "expected " + std::to_string(*size) + " entries, found " + std::to_string(j.size()));
  return j;
}

std::string at(const std::string& ptr, std::size_t i) { return ptr + "/" + std::to_string(i); }

template <class F>
auto guarded(const std::string& ptr, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InputError&) {
    throw;
  } catch (const BoundExceeded&) {
    throw;
  } catch (const Error& e) {
    throw InputError(ptr, e.what());
  }
}

}  // namespace

Json read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw InputError("", "cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError("", std::string("not valid JSON: ") + e.what());
  }
}

Json approx_json(const Cyclotomic& x) {
  auto z = x.approx();
  return Json::array({z.real(), z.imag()});
}

Json to_json(const Cyclotomic& x) {
  Cyclotomic s = x.simplified();
  Json coeffs = Json::array();
  for (const auto& c : s.coeffs()) coeffs.push_back({c.get_num().get_str(), c.get_den().get_str()});
  return {{"conductor", s.conductor()}, {"coeffs", coeffs}, {"approx", approx_json(s)}};
}

Json to_json(const ExactMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    out.push_back(row);
  }
  return out;
}

Cyclotomic scalar_from_json(const Json& j, const std::string& ptr) {
  if (j.is_number_integer()) return Cyclotomic(j.get<long>());
  if (j.is_string()) return guarded(ptr, [&] { return Cyclotomic(parse_rational(j.get<std::string>())); });
  if (j.is_object()) {
    std::size_t n = count(field(j, "conductor", ptr), ptr + "/conductor");
    if (n == 0) throw InputError(ptr + "/conductor", "must be positive");
    const Json& cs = array(field(j, "coeffs", ptr), ptr + "/coeffs");
    std::vector<Rational> c;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      std::string p = at(ptr + "/coeffs", i);
      const Json& e = cs[i];
      if (e.is_array() && e.size() == 2 && e[0].is_string() && e[1].is_string())
        c.push_back(guarded(p, [&] { return parse_rational(e[0].get<std::string>() + "/" + e[1].get<std::string>()); }));
      else if (e.is_string())
        c.push_back(guarded(p, [&] { return parse_rational(e.get<std::string>()); }));
      else if (e.is_number_integer())
        c.emplace_back(e.get<long>());
      else
        throw InputError(p, "expected [\"num\", \"den\"], a rational string or an integer");
    }
    return guarded(ptr, [&] { return Cyclotomic::from_coeffs(n, std::move(c)); });
  }
  throw InputError(ptr, "expected a scalar (integer, \"p/q\" or {conductor, coeffs})");
}

ExactMatrix matrix_from_json(const Json& j, const std::string& ptr) {
  array(j, ptr);
  std::vector<std::vector<Cyclotomic>> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Json& r = array(j[i], at(ptr, i), rows.empty() ? std::nullopt : std::optional<std::size_t>(rows[0].size()));
    std::vector<Cyclotomic> row;
    for (std::size_t k = 0; k < r.size(); ++k) row.push_back(scalar_from_json(r[k], at(at(ptr, i), k)));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) return ExactMatrix();
  return ExactMatrix::from_rows(rows);
}

FinGroup group_from_json(const Json& j, const std::string& ptr) {
  if (!j.is_object()) throw InputError(ptr, "expected a group object");
  if (j.contains("builtin")) {
    const Json& b = j["builtin"];
    if (!b.is_string()) throw InputError(ptr + "/builtin", "expected a group name");
    std::string name = b.get<std::string>();
    for (auto& ng : small_groups(12))
      if (ng.name == name) return ng.group;
    if (name == "S4") return FinGroup::symmetric(4);
    throw InputError(ptr + "/builtin", "unknown group '" + name + "'");
  }
  if (j.contains("perm_generators")) {
    int degree = static_cast<int>(count(field(j, "degree", ptr), ptr + "/degree"));
    const Json& gens = array(j["perm_generators"], ptr + "/perm_generators");
    std::vector<std::vector<int>> perms;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const Json& p = array(gens[i], at(ptr + "/perm_generators", i), static_cast<std::size_t>(degree));
      std::vector<int> perm;
      for (std::size_t k = 0; k < p.size(); ++k) perm.push_back(static_cast<int>(integer(p[k], at(at(ptr + "/perm_generators", i), k))));
      perms.push_back(std::move(perm));
    }
    return guarded(ptr + "/perm_generators", [&] { return FinGroup::from_permutations(perms, degree); });
  }
  std::size_t n = count(field(j, "order", ptr), ptr + "/order");
  const Json& mul = array(field(j, "mul", ptr), ptr + "/mul", n);
  std::vector<std::vector<Elem>> table;
  for (std::size_t i = 0; i < n; ++i) {
    const Json& r = array(mul[i], at(ptr + "/mul", i), n);
    std::vector<Elem> row;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t v = count(r[k], at(at(ptr + "/mul", i), k));
      if (v >= n) throw InputError(at(at(ptr + "/mul", i), k), "entry out of range");
      row.push_back(static_cast<Elem>(v));
    }
    table.push_back(std::move(row));
  }
  return guarded(ptr + "/mul", [&] { return FinGroup::from_table(table); });
}

Json to_json(const FinGroup& g) { return {{"order", g.order()}, {"mul", g.table_rows()}}; }

Cocycle2 cocycle_from_json(const Json& j, GroupPtr g, const std::string& ptr) {
  std::size_t n = count(field(j, "N", ptr), ptr + "/N");
  if (n == 0) throw InputError(ptr + "/N", "must be positive");
  const Json& t = array(field(j, "table", ptr), ptr + "/table", g->order());
  std::vector<std::vector<long>> e;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const Json& r = array(t[i], at(ptr + "/table", i), g->order());
    std::vector<long> row;
    for (std::size_t k = 0; k < r.size(); ++k) row.push_back(integer(r[k], at(at(ptr + "/table", i), k)));
    e.push_back(std::move(row));
  }
  Cocycle2 c = guarded(ptr + "/table", [&] { return Cocycle2(g, static_cast<unsigned>(n), e); });
  auto d = validate_cocycle(c);
  if (!d.ok) throw InputError(ptr + "/table", "not a normalized 2-cocycle: " + d.reason);
  return c;
}

ManifoldDescription manifold_from_json(const Json& j, const std::string& ptr) {
  if (!j.is_object()) throw InputError(ptr, "expected a manifold object");
  std::string name;
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw InputError(ptr + "/name", "expected a string");
    name = j["name"].get<std::string>();
  }
  if (j.contains("surface_genus"))
    return ManifoldDescription::surface(static_cast<unsigned>(count(j["surface_genus"], ptr + "/surface_genus")), name);
  GroupPresentation p;
  p.generators = count(field(j, "generators", ptr), ptr + "/generators");
  const Json& rs = array(field(j, "relators", ptr), ptr + "/relators");
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const Json& w = array(rs[i], at(ptr + "/relators", i));
    Word word;
    for (std::size_t k = 0; k < w.size(); ++k) {
      long v = integer(w[k], at(at(ptr + "/relators", i), k));
      if (v == 0 || static_cast<std::size_t>(std::labs(v)) > p.generators)
        throw InputError(at(at(ptr + "/relators", i), k), "generator index out of range");
      word.push_back(static_cast<int>(v));
    }
    p.relators.push_back(std::move(word));
  }
  unsigned dim = j.contains("dimension") ? static_cast<unsigned>(count(j["dimension"], ptr + "/dimension")) : 0;
  return ManifoldDescription::presented(std::move(p), dim, name);
}

LoadedCategory category_from_json(const Json& j, const std::string& ptr) {
  if (!j.is_object()) throw InputError(ptr, "expected a category object");
  LoadedCategory out;
  if (j.contains("finset")) {
    std::size_t n = count(j["finset"], ptr + "/finset");
    out.finset = guarded(ptr + "/finset", [&] { return std::make_shared<const FinSetCategory>(n); });
    out.category = out.finset;
    return out;
  }
  if (j.contains("divisors")) {
    std::size_t n = count(j["divisors"], ptr + "/divisors");
    if (n == 0) throw InputError(ptr + "/divisors", "must be positive");
    out.category = std::make_shared<const PosetCategory>(PosetCategory::divisors(n));
    return out;
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    const Json& l = array(j["labels"], ptr + "/labels");
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (!l[i].is_string()) throw InputError(at(ptr + "/labels", i), "expected a string");
      labels.push_back(l[i].get<std::string>());
    }
  }
  if (j.contains("leq")) {
    const Json& l = array(j["leq"], ptr + "/leq");
    std::vector<std::vector<bool>> leq;
    for (std::size_t i = 0; i < l.size(); ++i) {
      const Json& r = array(l[i], at(ptr + "/leq", i), l.size());
      std::vector<bool> row;
      for (std::size_t k = 0; k < r.size(); ++k) {
        if (!r[k].is_boolean() && !r[k].is_number_integer()) throw InputError(at(at(ptr + "/leq", i), k), "expected a boolean");
        row.push_back(r[k].is_boolean() ? r[k].get<bool>() : r[k].get<long>() != 0);
      }
      leq.push_back(std::move(row));
    }
    out.category = guarded(ptr + "/leq", [&] { return std::make_shared<const PosetCategory>(leq, labels); });
    return out;
  }
  std::size_t n = count(field(j, "objects", ptr), ptr + "/objects");
  const Json& ms = array(field(j, "morphisms", ptr), ptr + "/morphisms");
  std::vector<std::pair<std::size_t, std::size_t>> mors;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    std::string p = at(ptr + "/morphisms", i);
    std::size_t s = count(field(ms[i], "src", p), p + "/src"), t = count(field(ms[i], "tgt", p), p + "/tgt");
    if (s >= n) throw InputError(p + "/src", "object out of range");
    if (t >= n) throw InputError(p + "/tgt", "object out of range");
    mors.emplace_back(s, t);
  }
  const Json& ids = array(field(j, "identity", ptr), ptr + "/identity", n);
  std::vector<std::size_t> identities;
  for (std::size_t i = 0; i < n; ++i) identities.push_back(count(ids[i], at(ptr + "/identity", i)));
  const Json& comp = array(field(j, "compose", ptr), ptr + "/compose", mors.size());
  std::vector<std::vector<long>> table;
  for (std::size_t g = 0; g < mors.size(); ++g) {
    const Json& r = array(comp[g], at(ptr + "/compose", g), mors.size());
    std::vector<long> row;
    for (std::size_t f = 0; f < mors.size(); ++f)
      row.push_back(r[f].is_null() ? -1 : static_cast<long>(count(r[f], at(at(ptr + "/compose", g), f))));
    table.push_back(std::move(row));
  }
  auto c = guarded(ptr, [&] { return std::make_shared<const ExplicitCategory>(n, mors, identities, table, labels); });
  if (auto bad = check_category_axioms(*c)) throw InputError(ptr + "/compose", *bad);
  out.category = c;
  return out;
}

GroupoidPtr groupoid_from_json(const Json& j, const std::string& ptr) {
  if (!j.is_object()) throw InputError(ptr, "expected a groupoid object");
  if (j.contains("BG")) return make_groupoid(FinGroupoid::classifying(make_group(group_from_json(j["BG"], ptr + "/BG"))));
  if (j.contains("action")) {
    std::string p = ptr + "/action";
    GroupPtr g = make_group(group_from_json(field(j["action"], "group", p), p + "/group"));
    const Json& perms = array(field(j["action"], "permutations", p), p + "/permutations", g->order());
    std::vector<std::vector<std::size_t>> act;
    std::size_t n = 0;
    for (std::size_t e = 0; e < perms.size(); ++e) {
      std::string pe = at(p + "/permutations", e);
      const Json& r = array(perms[e], pe, e == 0 ? std::nullopt : std::optional<std::size_t>(n));
      if (e == 0) n = r.size();
      std::vector<std::size_t> row;
      std::vector<bool> hit(n, false);
      for (std::size_t x = 0; x < n; ++x) {
        std::size_t y = count(r[x], at(pe, x));
        if (y >= n || hit[y]) throw InputError(at(pe, x), "not a permutation");
        hit[y] = true;
        row.push_back(y);
      }
      act.push_back(std::move(row));
    }
    for (Elem a = 0; a < g->order(); ++a)
      for (Elem b = 0; b < g->order(); ++b)
        for (std::size_t x = 0; x < n; ++x)
          if (act[g->mul(a, b)][x] != act[a][act[b][x]])
            throw InputError(p + "/permutations", "not an action: element " + std::to_string(g->mul(a, b)));
    return action_groupoid(g, n, [act](Elem e, std::size_t x) { return act[e][x]; }).groupoid;
  }
  ExplicitGroupoid e;
  e.objects = count(field(j, "objects", ptr), ptr + "/objects");
  const Json& ms = array(field(j, "morphisms", ptr), ptr + "/morphisms");
  for (std::size_t i = 0; i < ms.size(); ++i) {
    std::string p = at(ptr + "/morphisms", i);
    std::size_t s = count(field(ms[i], "src", p), p + "/src"), t = count(field(ms[i], "tgt", p), p + "/tgt");
    if (s >= e.objects) throw InputError(p + "/src", "object out of range");
    if (t >= e.objects) throw InputError(p + "/tgt", "object out of range");
    e.morphisms.emplace_back(s, t);
  }
  const Json& ids = array(field(j, "identity", ptr), ptr + "/identity", e.objects);
  for (std::size_t i = 0; i < e.objects; ++i) {
    std::size_t m = count(ids[i], at(ptr + "/identity", i));
    if (m >= e.morphisms.size()) throw InputError(at(ptr + "/identity", i), "morphism out of range");
    e.identity.push_back(m);
  }
  const Json& comp = array(field(j, "compose", ptr), ptr + "/compose", e.morphisms.size());
  for (std::size_t f = 0; f < e.morphisms.size(); ++f) {
    const Json& r = array(comp[f], at(ptr + "/compose", f), e.morphisms.size());
    std::vector<std::optional<std::size_t>> row;
    for (std::size_t g = 0; g < e.morphisms.size(); ++g) {
      if (r[g].is_null()) {
        row.push_back(std::nullopt);
        continue;
      }
      std::size_t m = count(r[g], at(at(ptr + "/compose", f), g));
      if (m >= e.morphisms.size()) throw InputError(at(at(ptr + "/compose", f), g), "morphism out of range");
      row.push_back(m);
    }
    e.compose.push_back(std::move(row));
  }
  return guarded(ptr + "/compose", [&] { return normalize(e).groupoid; });
}

LoadedAlgebra algebra_from_json(const Json& j, const std::string& ptr) {
  std::size_t n = count(field(j, "dim", ptr), ptr + "/dim");
  const Json& s = array(field(j, "structure", ptr), ptr + "/structure", n);
  std::vector<std::vector<std::vector<Cyclotomic>>> c(n, std::vector<std::vector<Cyclotomic>>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const Json& si = array(s[i], at(ptr + "/structure", i), n);
    for (std::size_t k = 0; k < n; ++k) {
      std::string p = at(at(ptr + "/structure", i), k);
      const Json& sik = array(si[k], p, n);
      for (std::size_t l = 0; l < n; ++l) c[i][k].push_back(scalar_from_json(sik[l], at(p, l)));
    }
  }
  auto vec = [&](const std::string& key) {
    const Json& v = array(field(j, key, ptr), ptr + "/" + key, n);
    ExactMatrix out(n, 1);
    for (std::size_t i = 0; i < n; ++i) out(i, 0) = scalar_from_json(v[i], at(ptr + "/" + key, i));
    return out;
  };
  ExactMatrix unit = vec("unit");
  std::vector<int> grading;
  if (j.contains("grading")) {
    const Json& g = array(j["grading"], ptr + "/grading", n);
    for (std::size_t i = 0; i < n; ++i) {
      long v = integer(g[i], at(ptr + "/grading", i));
      if (v != 0 && v != 1) throw InputError(at(ptr + "/grading", i), "grading must be 0 or 1");
      grading.push_back(static_cast<int>(v));
    }
  }
  LoadedAlgebra out;
  out.algebra = guarded(ptr + "/structure", [&] { return FdAlgebra(c, unit, grading); });
  if (j.contains("counit")) out.counit = vec("counit").transpose();
  return out;
}

Json to_json(const FdAlgebra& a) {
  const std::size_t n = a.dim();
  Json s = Json::array();
  for (std::size_t i = 0; i < n; ++i) {
    Json si = Json::array();
    for (std::size_t k = 0; k < n; ++k) {
      Json sik = Json::array();
      for (std::size_t l = 0; l < n; ++l) sik.push_back(to_json(a.structure(i, k, l)));
      si.push_back(sik);
    }
    s.push_back(si);
  }
  Json unit = Json::array();
  for (std::size_t i = 0; i < n; ++i) unit.push_back(to_json(a.unit()(i, 0)));
  Json grading = Json::array();
  for (std::size_t i = 0; i < n; ++i) grading.push_back(a.grading(i));
  return {{"dim", n}, {"grading", grading}, {"structure", s}, {"unit", unit}};
}

DwTheory theory_from_json(const Json& j, const std::filesystem::path& base, const std::string& ptr) {
  auto resolve = [&](const Json& v, const std::string& p) -> Json {
    if (v.is_string()) return read_file(base / v.get<std::string>());
    if (!v.is_object()) throw InputError(p, "expected an object or a file name");
    return v;
  };
  GroupPtr g = make_group(group_from_json(resolve(field(j, "group", ptr), ptr + "/group"), ptr + "/group"));
  std::optional<Cocycle2> c;
  if (j.contains("cocycle") && !j["cocycle"].is_null())
    c = cocycle_from_json(resolve(j["cocycle"], ptr + "/cocycle"), g, ptr + "/cocycle");
  std::string name;
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw InputError(ptr + "/name", "expected a string");
    name = j["name"].get<std::string>();
  }
  return guarded(ptr, [&] { return DwTheory(g, c, name); });
}

}  // namespace pifin::io
