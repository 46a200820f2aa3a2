#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pifin/acceptance.hpp"
#include "pifin/json_io.hpp"

using namespace pifin;
using io::InputError;
using io::Json;
namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kFailed = 1, kBadInput = 2, kBound = 3, kError = 4 };

struct RunConfig {
  unsigned long long max_hom_search = kDefaultHomSearchBound;
  std::size_t max_chain_length = 64;
  std::size_t max_closure = 64;
  std::string format = "json";
  std::string out;
  unsigned jobs = 1;
  std::uint64_t seed = 0;
};

// ---- rendering

bool is_scalar(const Json& j) { return j.is_object() && j.contains("conductor") && j.contains("coeffs"); }

bool is_matrix(const Json& j) {
  if (!j.is_array() || j.empty()) return false;
  for (const auto& r : j)
    if (!r.is_array() || r.size() != j[0].size() || std::any_of(r.begin(), r.end(), [](const Json& x) { return !is_scalar(x); }))
      return false;
  return true;
}

std::string exact(const Json& s) { return io::scalar_from_json(s).str(); }

std::string approx_text(const Json& s) {
  std::ostringstream os;
  os << std::setprecision(10) << s["approx"][0].get<double>();
  double im = s["approx"][1].get<double>();
  if (im != 0) os << (im < 0 ? " - " : " + ") << std::abs(im) << "i";
  return os.str();
}

std::string leaf(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

void csv_field(std::ostream& os, const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) {
    os << s;
    return;
  }
  os << '"';
  for (char c : s) os << (c == '"' ? "\"\"" : std::string(1, c));
  os << '"';
}

void render_csv(std::ostream& os, const Json& j, const std::string& path) {
  if (is_scalar(j)) {
    csv_field(os, path);
    os << ',';
    csv_field(os, exact(j));
    os << '\n';
  } else if (is_matrix(j)) {
    os << "# " << path << '\n';
    for (const auto& r : j) {
      for (std::size_t k = 0; k < r.size(); ++k) {
        if (k) os << ',';
        csv_field(os, exact(r[k]));
      }
      os << '\n';
    }
  } else if (j.is_object()) {
    for (const auto& [k, v] : j.items()) render_csv(os, v, path.empty() ? k : path + "." + k);
  } else if (j.is_array() && std::any_of(j.begin(), j.end(), [](const Json& x) { return x.is_structured(); })) {
    for (std::size_t i = 0; i < j.size(); ++i) render_csv(os, j[i], path + "." + std::to_string(i));
  } else {
    csv_field(os, path);
    os << ',';
    csv_field(os, j.is_array() ? j.dump() : leaf(j));
    os << '\n';
  }
}

void render_pretty(std::ostream& os, const Json& j, const std::string& key, int indent) {
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  std::string head = pad + (key.empty() ? "" : key + ": ");
  if (is_scalar(j)) {
    os << head << exact(j) << "  (~ " << approx_text(j) << ")\n";
  } else if (is_matrix(j)) {
    os << head << j.size() << " x " << j[0].size() << '\n';
    std::vector<std::vector<std::string>> cells;
    std::size_t width = 1;
    for (const auto& r : j) {
      cells.emplace_back();
      for (const auto& x : r) {
        cells.back().push_back(exact(x));
        width = std::max(width, cells.back().back().size());
      }
    }
    for (const auto& r : cells) {
      os << pad << "  ";
      for (const auto& c : r) os << std::setw(static_cast<int>(width) + 1) << c;
      os << '\n';
    }
  } else if (j.is_object()) {
    if (!key.empty()) os << head << '\n';
    for (const auto& [k, v] : j.items()) render_pretty(os, v, k, indent + (key.empty() ? 0 : 1));
  } else if (j.is_array() && std::any_of(j.begin(), j.end(), [](const Json& x) { return x.is_structured(); })) {
    os << head << '\n';
    for (std::size_t i = 0; i < j.size(); ++i) render_pretty(os, j[i], "[" + std::to_string(i) + "]", indent + 1);
  } else {
    os << head << (j.is_array() ? j.dump() : leaf(j)) << '\n';
  }
}

void emit(const RunConfig& cfg, const Json& doc) {
  std::ostringstream os;
  if (cfg.format == "csv")
    render_csv(os, doc, "");
  else if (cfg.format == "pretty")
    render_pretty(os, doc, "", 0);
  else
    os << doc.dump(2) << '\n';
  if (cfg.out.empty()) {
    std::cout << os.str();
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw Error("cannot write " + cfg.out);
  f << os.str();
}

Json scalar_field(const Cyclotomic& x) { return io::to_json(x); }

Json load(const std::string& file) { return io::read_file(file); }

// Wraps errors raised while reading `file` so the message names it.
template <class F>
auto from_file(const std::string& file, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InputError& e) {
    throw InputError(file, e);
  }
}

std::vector<std::size_t> parse_index_spec(const std::string& spec, std::size_t n, const std::string& flag) {
  std::vector<std::size_t> out;
  std::stringstream ss(spec);
  std::string part;
  auto num = [&](const std::string& s) -> std::size_t {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != s.size() || s.empty()) throw ValidationError(flag + ": bad index '" + s + "'");
    if (v >= n) throw ValidationError(flag + ": object " + s + " out of range (category has " + std::to_string(n) + ")");
    return v;
  };
  while (std::getline(ss, part, ',')) {
    auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(num(part));
      continue;
    }
    std::size_t a = num(part.substr(0, dots)), b = num(part.substr(dots + 2));
    if (a > b) throw ValidationError(flag + ": empty range " + part);
    for (std::size_t i = a; i <= b; ++i) out.push_back(i);
  }
  if (out.empty()) throw ValidationError(flag + ": no objects selected");
  return out;
}

// ---- dw

DwTheory theory_from_files(const std::string& group, const std::string& cocycle) {
  GroupPtr g = make_group(from_file(group, [&] { return io::group_from_json(load(group)); }));
  std::optional<Cocycle2> c;
  if (!cocycle.empty()) c = from_file(cocycle, [&] { return io::cocycle_from_json(load(cocycle), g); });
  return DwTheory(g, c, fs::path(group).stem().string());
}

Json dw_value_json(const DwValue& v, const ManifoldDescription& m, const DwTheory& t) {
  return {{"value", scalar_field(v.value)},
          {"approx", io::approx_json(v.value)},
          {"route", v.route},
          {"note", v.note},
          {"manifold", m.name()},
          {"theory", t.name},
          {"group_order", t.group->order()},
          {"twisted", t.twist.has_value()}};
}

std::vector<fs::path> json_files(const std::string& dir) {
  if (!fs::is_directory(dir)) throw InputError("", dir + " is not a directory");
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  if (out.empty()) throw InputError("", "no .json files in " + dir);
  return out;
}

Json dw_distinguish(const RunConfig& cfg, const std::string& mdir, const std::string& tdir) {
  std::vector<ManifoldDescription> ms;
  for (const auto& p : json_files(mdir))
    ms.push_back(from_file(p.string(), [&] {
      Json j = load(p.string());
      if (j.is_object() && !j.contains("name")) j["name"] = p.stem().string();
      return io::manifold_from_json(j);
    }));
  std::vector<DwTheory> ts;
  for (const auto& p : json_files(tdir))
    ts.push_back(from_file(p.string(), [&] {
      Json j = load(p.string());
      if (j.is_object() && j.contains("group")) {
        if (!j.contains("name")) j["name"] = p.stem().string();
        return io::theory_from_json(j, p.parent_path());
      }
      return DwTheory(make_group(io::group_from_json(j)), std::nullopt, p.stem().string());
    }));
  auto d = distinguish(ms, ts, cfg.max_hom_search, cfg.jobs);
  Json values = Json::array();
  for (std::size_t i = 0; i < ms.size(); ++i) {
    Json row = Json::object();
    row["manifold"] = ms[i].name();
    Json vals = Json::array();
    for (std::size_t k = 0; k < ts.size(); ++k) vals.push_back(scalar_field(d.values[i][k]));
    row["values"] = vals;
    values.push_back(row);
  }
  Json blocks = Json::array();
  for (const auto& b : d.blocks) {
    Json names = Json::array();
    for (auto i : b) names.push_back(ms[i].name());
    blocks.push_back(names);
  }
  Json seps = Json::array();
  for (const auto& s : d.separations)
    seps.push_back({{"block_a", s.block_a}, {"block_b", s.block_b}, {"theory", ts[s.theory].name}});
  Json theories = Json::array();
  for (const auto& t : ts) theories.push_back(t.name);
  return {{"theories", theories}, {"values", values}, {"blocks", blocks}, {"separations", seps},
          {"route", "partition function per (manifold, theory); blocks = equal value rows"}};
}

Json dw_sphere(const DwTheory& t) {
  auto s = sphere_algebra(t);
  return {{"theory", t.name},
          {"dim", s.algebra.dim()},
          {"algebra", io::to_json(s.algebra)},
          {"comparison", io::to_json(s.comparison)},
          {"routes_agree", s.routes_agree},
          {"semisimple", s.report.semisimple},
          {"radical_dim", s.report.radical_dim},
          {"window_invertible", s.window_invertible},
          {"route", "pair-of-pants span linearized on the colimit of the transgressed system, compared with the "
                    "center of the twisted group algebra through the norm map"}};
}

// ---- moebius

Json moebius(const RunConfig& cfg, const std::string& file, const std::string& functor) {
  auto lc = from_file(file, [&] { return io::category_from_json(load(file)); });
  const FinCategory& c = *lc.category;
  if (c.representatives().size() > cfg.max_chain_length + 1)
    throw BoundExceeded("max chain length", cfg.max_chain_length,
                        "chains may have length up to " + std::to_string(c.representatives().size() - 1));
  CatFunctor f;
  if (functor == "constant") {
    f = CatFunctor::constant_functor(c);
  } else {
    if (!lc.finset) throw ValidationError("--functor free needs a FinSet category");
    auto fsc = lc.finset;
    for (std::size_t n = 0; n < fsc->object_count(); ++n) f.dims.push_back(n);
    f.map = [fsc](const CatMorphism& m) {
      ExactMatrix out(m.tgt, m.src);
      auto v = fsc->function(m.src, m.tgt, m.index);
      for (std::size_t i = 0; i < v.size(); ++i) out(v[i], i) = 1;
      return out;
    };
  }
  auto zeta = cat_linearize(c, f);
  ExactMatrix inverse;
  Json extra;
  std::string route;
  if (lc.finset) {
    // FinSet has non-invertible endomorphisms; invert through the (Surj, Inj) factorization.
    auto res = factorized_invert(c, NestedSystem{{surj_inj(lc.finset)}}, f);
    inverse = res.inverse;
    extra["factors"] = res.factors.size();
    route = "product of chain-sum inverses of the (Surj, Inj) factors";
  } else {
    auto res = moebius_invert(c, f);
    inverse = res.inverse;
    extra["chain_length"] = res.chain_length;
    route = "alternating sum over nondegenerate chains of iso classes";
  }
  bool verified = (zeta * inverse).is_identity() && (inverse * zeta).is_identity();
  Json labels = Json::array();
  for (auto r : c.representatives()) labels.push_back(c.object_label(r));
  Json out = {{"objects", labels},
              {"zeta", io::to_json(zeta)},
              {"moebius", io::to_json(inverse)},
              {"verified", verified},
              {"route", route}};
  out.update(extra);
  return out;
}

// ---- pairing

Json pairing_gram(const std::string& file, const std::string& rows, const std::string& cols) {
  auto lc = from_file(file, [&] { return io::category_from_json(load(file)); });
  auto c = WeightedCategory::from_category(lc.category);
  auto f = VecFunctor::constant(c);
  std::vector<DualVectorAt> r;
  std::vector<VectorAt> k;
  for (auto i : parse_index_spec(rows, c.object_count(), "--rows")) r.push_back({i, ExactMatrix::scalar(1)});
  for (auto i : parse_index_spec(cols, c.object_count(), "--cols")) k.push_back({i, ExactMatrix::scalar(1)});
  auto g = gram_matrix(c, f, r, k);
  Json out = {{"gram", io::to_json(g.matrix)},
              {"rank", g.rank},
              {"full_row_rank", g.full_row_rank()},
              {"full_col_rank", g.full_col_rank()},
              {"functor", "constant k"}};
  if (g.det) out["det"] = scalar_field(*g.det);
  return out;
}

Json pairing_pontryagin(const RunConfig& cfg, const std::string& groups, const std::string& omega) {
  std::vector<NamedGroup> gs;
  std::stringstream ss(groups);
  std::string name;
  auto all = small_groups(12);
  while (std::getline(ss, name, ',')) {
    auto it = std::find_if(all.begin(), all.end(), [&](const NamedGroup& g) { return g.name == name; });
    if (it == all.end()) throw ValidationError("--groups: unknown group " + name);
    gs.push_back(*it);
  }
  auto c = WeightedCategory::group_types(gs);
  AbFunctor om;
  if (omega == "trivial") {
    om = AbFunctor::trivial(c);
  } else if (omega == "abelianization") {
    om = AbFunctor::abelianization(c);
  } else if (omega.rfind("constant:", 0) == 0) {
    std::vector<long> factors;
    std::stringstream fs_(omega.substr(9));
    std::string d;
    while (std::getline(fs_, d, 'x')) {
      long v = 0;
      try {
        v = std::stol(d);
      } catch (const std::exception&) {
        throw ValidationError("--omega: bad factor '" + d + "'");
      }
      if (v < 2) throw ValidationError("--omega: factors must be finite and > 1");
      factors.push_back(v);
    }
    om = AbFunctor::constant(c, FgAbelian(factors));
  } else {
    throw ValidationError("--omega must be trivial, abelianization or constant:d1xd2...");
  }
  std::vector<std::size_t> seed(c.object_count());
  for (std::size_t i = 0; i < seed.size(); ++i) seed[i] = i;
  auto support = factorizable_closure(c, image_group_middle(c), seed, cfg.max_closure);
  auto g = gram_matrix(c, om, character_orbit_support(c, om, support), element_orbit_support(c, om, support));
  Json objs = Json::array();
  for (auto i : support) objs.push_back(c.label(i));
  Json out = {{"support", objs},
              {"gram", io::to_json(g.matrix)},
              {"rank", g.rank},
              {"nondegenerate_on_support", g.full_row_rank() && g.full_col_rank()}};
  if (g.det) out["det"] = scalar_field(*g.det);
  return out;
}

// ---- cardinality

Json cardinality(const std::string& file) {
  auto g = from_file(file, [&] { return io::groupoid_from_json(load(file)); });
  Json comps = Json::array();
  for (std::size_t c = 0; c < g->component_count(); ++c) {
    Rational card = g->cardinality_at(g->base(c));
    comps.push_back({{"objects", g->component(c).objects.size()},
                     {"automorphisms", g->vertex_group(c).order()},
                     {"cardinality", scalar_field(Cyclotomic(card))}});
  }
  Cyclotomic total(g->total_cardinality());
  return {{"components", comps}, {"value", scalar_field(total)}, {"approx", io::approx_json(total)}};
}

// ---- frobenius

Json frobenius(const std::string& file, unsigned max_genus) {
  auto la = from_file(file, [&] { return io::algebra_from_json(load(file)); });
  const FdAlgebra& a = la.algebra;
  auto rep = is_semisimple(a);
  Json out = {{"dim", a.dim()},
              {"semisimple", rep.semisimple},
              {"radical_dim", rep.radical_dim},
              {"super_commutative", super_commutative_check(a)},
              {"trace_form", io::to_json(rep.trace_form)}};
  auto ev = even_trivial_decomposition(a);
  out["even_trivial"] = ev.ok;
  if (!ev.ok) out["even_trivial_reason"] = ev.reason;
  if (ev.ok) {
    Json ids = Json::array();
    for (const auto& e : ev.idempotents) ids.push_back(io::to_json(e.transpose())[0]);
    out["central_idempotents"] = ids;
  }
  if (la.counit) {
    FrobeniusAlgebra fa(a, *la.counit);
    auto hw = handle_and_window(fa);
    out["handle"] = io::to_json(hw.handle.transpose())[0];
    out["window_invertible"] = hw.window_invertible;
    Json genus = Json::array();
    for (unsigned g = 0; g <= max_genus; ++g) genus.push_back({{"genus", g}, {"value", scalar_field(hw.genus(g))}});
    out["surfaces"] = genus;
  }
  return out;
}

// ---- selftest

int selftest(const RunConfig& cfg, const std::vector<int>& only, bool timing) {
  acceptance::set_seed(cfg.seed);
  Json rows = Json::array();
  bool ok = true;
  std::ostringstream table;
  for (const auto& c : acceptance::criteria()) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    auto r = acceptance::run_one(c);
    ok = ok && r.passed;
    Json row = {{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail}};
    if (timing) row["seconds"] = r.seconds;
    rows.push_back(row);
  }
  if (cfg.format == "json") {
    emit(cfg, {{"criteria", rows}, {"passed", ok}});
  } else if (cfg.format == "csv") {
    RunConfig c2 = cfg;
    std::ostringstream os;
    os << "id,passed,title,detail\n";
    for (const auto& r : rows) {
      os << r["id"].get<int>() << ',' << (r["passed"].get<bool>() ? "PASS" : "FAIL") << ',';
      csv_field(os, r["title"].get<std::string>());
      os << ',';
      csv_field(os, r["detail"].get<std::string>());
      os << '\n';
    }
    if (cfg.out.empty())
      std::cout << os.str();
    else
      std::ofstream(cfg.out, std::ios::binary) << os.str();
  } else {
    for (const auto& r : rows)
      table << (r["passed"].get<bool>() ? "PASS" : "FAIL") << "  " << std::setw(2) << r["id"].get<int>() << "  "
            << r["title"].get<std::string>() << "\n        " << r["detail"].get<std::string>() << '\n';
    table << (ok ? "all criteria passed\n" : "some criteria FAILED\n");
    if (cfg.out.empty())
      std::cout << table.str();
    else
      std::ofstream(cfg.out, std::ios::binary) << table.str();
  }
  return ok ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact homotopy cardinality, span linearization, Moebius inversion, pairings and "
               "Dijkgraaf-Witten invariants over finite groups"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--format", cfg.format, "json, csv or pretty")
      ->check(CLI::IsMember({"json", "csv", "pretty"}))
      ->envname("PIFIN_FORMAT");
  app.add_option("--out", cfg.out, "write output to this file instead of stdout");
  app.add_option("--max-hom-search", cfg.max_hom_search, "bound on |G|^generators for homomorphism enumeration")
      ->envname("PIFIN_MAX_HOM_SEARCH")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-chain-length", cfg.max_chain_length, "bound on chain length for Moebius inversion")
      ->envname("PIFIN_MAX_CHAIN_LENGTH")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-closure", cfg.max_closure, "bound on factorizable closure size")
      ->envname("PIFIN_MAX_CLOSURE")
      ->check(CLI::PositiveNumber);
  app.add_option("--jobs", cfg.jobs, "worker threads for grid evaluations")->envname("PIFIN_JOBS")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "seed shift for randomized checks")->envname("PIFIN_SEED");

  std::function<Json()> action;
  std::function<int()> raw_action;

  auto* dw = app.add_subcommand("dw", "Dijkgraaf-Witten invariants")->require_subcommand(1);
  std::string group, cocycle, presentation, mdir, tdir;
  unsigned genus = 0;
  auto* surf = dw->add_subcommand("surface", "closed oriented surface of given genus");
  surf->add_option("--group", group, "group JSON")->required();
  surf->add_option("--genus", genus, "genus")->required();
  surf->add_option("--cocycle", cocycle, "2-cocycle JSON");
  surf->callback([&] {
    action = [&] {
      auto t = theory_from_files(group, cocycle);
      auto m = ManifoldDescription::surface(genus);
      return dw_value_json(partition_function(t, m, cfg.max_hom_search), m, t);
    };
  });
  auto* man = dw->add_subcommand("manifold", "closed manifold given by a presentation of its fundamental group");
  man->add_option("--group", group, "group JSON")->required();
  man->add_option("--presentation", presentation, "presentation JSON")->required();
  man->add_option("--cocycle", cocycle, "2-cocycle JSON (surfaces only)");
  man->callback([&] {
    action = [&] {
      auto t = theory_from_files(group, cocycle);
      auto m = from_file(presentation, [&] {
        Json j = load(presentation);
        if (j.is_object() && !j.contains("name")) j["name"] = fs::path(presentation).stem().string();
        return io::manifold_from_json(j);
      });
      return dw_value_json(partition_function(t, m, cfg.max_hom_search), m, t);
    };
  });
  auto* sph = dw->add_subcommand("sphere-algebra", "algebra on the circle and its comparison with the center");
  sph->add_option("--group", group, "group JSON")->required();
  sph->add_option("--cocycle", cocycle, "2-cocycle JSON");
  sph->callback([&] { action = [&] { return dw_sphere(theory_from_files(group, cocycle)); }; });
  auto* dis = dw->add_subcommand("distinguish", "group manifolds by their invariants");
  dis->add_option("--manifolds", mdir, "directory of manifold JSON files")->required();
  dis->add_option("--theories", tdir, "directory of theory or group JSON files")->required();
  dis->callback([&] { action = [&] { return dw_distinguish(cfg, mdir, tdir); }; });

  std::string category, functor = "constant";
  auto* mob = app.add_subcommand("moebius", "zeta and Moebius matrices of a finite category");
  mob->add_option("--category", category, "category JSON")->required();
  mob->add_option("--functor", functor, "constant or free (FinSet only)")->check(CLI::IsMember({"constant", "free"}));
  mob->callback([&] {
    action = [&] { return moebius(cfg, category, functor); };
  });

  auto* pair = app.add_subcommand("pairing", "pairing matrices")->require_subcommand(1);
  std::string rows = "all", cols = "all", groups = "1,Z2,Z3,Z4,S3", omega = "trivial";
  auto* gram = pair->add_subcommand("gram", "Gram matrix of the constant functor on a category");
  gram->add_option("--category", category, "category JSON")->required();
  gram->add_option("--rows", rows, "objects, e.g. 0..6 or 0,2,5");
  gram->add_option("--cols", cols, "objects, e.g. 0..6 or 0,2,5");
  gram->callback([&] {
    action = [&] {
      auto spec = [&](std::string s) {
        if (s != "all") return s;
        auto lc = from_file(category, [&] { return io::category_from_json(load(category)); });
        return "0.." + std::to_string(lc.category->object_count() - 1);
      };
      return pairing_gram(category, spec(rows), spec(cols));
    };
  });
  auto* pont = pair->add_subcommand("pontryagin", "character Gram matrix on group types over a closed support");
  pont->add_option("--groups", groups, "comma-separated group names of order <= 12");
  pont->add_option("--omega", omega, "trivial, abelianization or constant:d1xd2...");
  pont->callback([&] { action = [&] { return pairing_pontryagin(cfg, groups, omega); }; });

  std::string groupoid;
  auto* card = app.add_subcommand("cardinality", "homotopy cardinality of a finite groupoid");
  card->add_option("--groupoid", groupoid, "groupoid JSON")->required();
  card->callback([&] { action = [&] { return cardinality(groupoid); }; });

  std::string algebra;
  unsigned max_genus = 3;
  auto* frob = app.add_subcommand("frobenius", "semisimplicity, idempotents and surface values of an algebra");
  frob->add_option("--algebra", algebra, "algebra JSON")->required();
  frob->add_option("--max-genus", max_genus, "surface values up to this genus when a counit is given");
  frob->callback([&] { action = [&] { return frobenius(algebra, max_genus); }; });

  std::vector<int> only;
  bool timing = false;
  auto* self = app.add_subcommand("selftest", "run the acceptance suite");
  self->add_option("--only", only, "criterion ids");
  self->add_flag("--timing", timing, "include run times (output is then not reproducible)");
  self->callback([&] { raw_action = [&] { return selftest(cfg, only, timing); }; });

  CLI11_PARSE(app, argc, argv);
  try {
    if (raw_action) return raw_action();
    emit(cfg, action());
    return kOk;
  } catch (const InputError& e) {
    std::cerr << "error: malformed input: " << e.what() << '\n';
    return kBadInput;
  } catch (const BoundExceeded& e) {
    std::cerr << "error: bound exceeded: " << e.bound << " (limit " << e.limit << "): " << e.what() << '\n';
    return kBound;
  } catch (const ValidationError& e) {
    std::cerr << "error: invalid input: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
}
