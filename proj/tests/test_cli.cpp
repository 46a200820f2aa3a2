#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "pifin/json_io.hpp"

using namespace pifin;
using io::Json;

namespace {

struct Run {
  int code = -1;
  std::string out, err;
};

Run run(const std::string& args, const std::string& env = "") {
  static int counter = 0;
  std::string errfile = std::filesystem::temp_directory_path() / ("pifin_cli_err_" + std::to_string(counter++));
  std::string cmd = "cd " PIFIN_DATA_DIR " && " + env + " " PIFIN_CLI_PATH " " + args + " 2>" + errfile;
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream e(errfile);
  r.err.assign(std::istreambuf_iterator<char>(e), {});
  std::filesystem::remove(errfile);
  return r;
}

Json run_json(const std::string& args) {
  auto r = run(args);
  INFO(args << "\n" << r.err);
  REQUIRE(r.code == 0);
  return Json::parse(r.out);
}

Cyclotomic value_of(const Json& j) { return io::scalar_from_json(j); }

}  // namespace

TEST_CASE("scalar json round trip") {
  for (auto x : {Cyclotomic(0), Cyclotomic::rational(-7, 3), Cyclotomic::zeta(5, 2) + Cyclotomic::rational(1, 2),
                 Cyclotomic::zeta(12, 1) * Cyclotomic::zeta(8, 3)}) {
    Json j = io::to_json(x);
    CHECK(io::scalar_from_json(j) == x);
    CHECK(j["approx"][0].get<double>() == doctest::Approx(x.approx().real()));
  }
  CHECK(io::scalar_from_json(Json("3/4")) == Cyclotomic::rational(3, 4));
  CHECK(io::scalar_from_json(Json(5)) == Cyclotomic(5));
  CHECK_THROWS_AS(io::scalar_from_json(Json("x/2"), "/a"), io::InputError);
}

TEST_CASE("reader errors point at the field") {
  try {
    io::group_from_json(Json::parse(R"({"order": 2, "mul": [[0, 1], [1, 7]]})"));
    FAIL("accepted a bad table");
  } catch (const io::InputError& e) {
    CHECK(e.pointer.rfind("/mul", 0) == 0);
  }
  try {
    io::manifold_from_json(Json::parse(R"({"generators": 1, "relators": [[1, 2]]})"));
    FAIL("accepted an unknown generator");
  } catch (const io::InputError& e) {
    CHECK(e.pointer.rfind("/relators", 0) == 0);
  }
  auto g = make_group(FinGroup::cyclic(2));
  CHECK_THROWS_AS(io::cocycle_from_json(Json::parse(R"({"N": 2, "table": [[0, 1], [0, 0]]})"), g), io::InputError);
  CHECK_THROWS_AS(io::category_from_json(Json::parse(R"({"leq": [[1, 1], [1, 1]]})")), io::InputError);
}

TEST_CASE("group readers agree") {
  auto a = io::group_from_json(Json::parse(R"({"perm_generators": [[1, 0, 2], [1, 2, 0]], "degree": 3})"));
  auto b = io::group_from_json(Json::parse(R"({"builtin": "S3"})"));
  CHECK(a.order() == 6);
  CHECK(a.conjugacy_classes().size() == b.conjugacy_classes().size());
  auto c = io::group_from_json(io::to_json(b));
  CHECK(c == b);
}

TEST_CASE("groupoid readers") {
  auto bg = io::groupoid_from_json(Json::parse(R"({"BG": {"builtin": "Z3"}})"));
  CHECK(bg->total_cardinality() == Rational(1, 3));
  auto act = io::groupoid_from_json(
      Json::parse(R"({"action": {"group": {"builtin": "Z2"}, "permutations": [[0, 1, 2], [1, 0, 2]]}})"));
  CHECK(act->total_cardinality() == Rational(3, 2));
  CHECK_THROWS_AS(io::groupoid_from_json(Json::parse(
                      R"({"action": {"group": {"builtin": "Z2"}, "permutations": [[0, 1, 2], [1, 2, 0]]}})")),
                  io::InputError);
}

TEST_CASE("algebra reader and writer round trip") {
  auto a = FdAlgebra::group_algebra(FinGroup::cyclic(3));
  auto la = io::algebra_from_json(io::to_json(a));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) CHECK(la.algebra.structure(i, j, k) == a.structure(i, j, k));
  CHECK(!la.counit);
}

TEST_CASE("dw surface example") {
  auto j = run_json("dw surface --group Z2.json --genus 2");
  CHECK(j["value"]["conductor"] == 1);
  CHECK(j["value"]["coeffs"] == Json::parse(R"([["8","1"]])"));
  CHECK(j["approx"] == Json::parse("[8.0, 0.0]"));
  CHECK(j["route"].get<std::string>().find("groupoid") != std::string::npos);
  // 2^(2g-1) for Z2
  for (int g = 0; g <= 4; ++g) {
    auto v = value_of(run_json("dw surface --group Z2.json --genus " + std::to_string(g))["value"]);
    CHECK(v * Cyclotomic(2) == Cyclotomic(Rational(mpz_class(1) << (2 * g))));
  }
}

TEST_CASE("dw twisted surface and sphere algebra") {
  auto j = run_json("dw surface --group klein.json --cocycle klein_cocycle.json --genus 1");
  CHECK(value_of(j["value"]) == Cyclotomic(1));
  CHECK(j["route"].get<std::string>().find("frobenius") != std::string::npos);
  auto s = run_json("dw sphere-algebra --group klein.json --cocycle klein_cocycle.json");
  CHECK(s["dim"] == 1);
  CHECK(s["routes_agree"] == true);
  CHECK(s["window_invertible"] == true);
  auto u = run_json("dw sphere-algebra --group S3.json");
  CHECK(u["dim"] == 3);
  CHECK(u["semisimple"] == true);
}

TEST_CASE("dw manifold and distinguish") {
  // |Hom(Z3, S3)| / 6 = 3 / 6
  auto j = run_json("dw manifold --group S3.json --presentation lens3.json");
  CHECK(value_of(j["value"]) == Cyclotomic::rational(1, 2));
  auto d = run_json("dw distinguish --manifolds manifolds --theories theories");
  CHECK(d["blocks"].size() == 3);
  bool paired = false;
  for (const auto& b : d["blocks"]) paired = paired || b.size() == 2;
  CHECK(paired);
  auto d4 = run_json("--jobs 4 dw distinguish --manifolds manifolds --theories theories");
  CHECK(d4 == d);
}

TEST_CASE("moebius example") {
  auto r = run("moebius --category divisors12.json --format csv");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("# zeta") != std::string::npos);
  CHECK(r.out.find("# moebius") != std::string::npos);
  CHECK(r.out.find("verified,true") != std::string::npos);
  auto j = run_json("moebius --category divisors12.json");
  auto zeta = io::matrix_from_json(j["zeta"]);
  auto mu = io::matrix_from_json(j["moebius"]);
  CHECK((zeta * mu).is_identity());
  // mu(1, 12) = 0, mu(1, 6) = 1
  CHECK(value_of(j["moebius"][5][0]) == Cyclotomic(0));
  CHECK(value_of(j["moebius"][4][0]) == Cyclotomic(1));
  auto f = run_json("moebius --category finset4.json --functor free");
  CHECK(f["verified"] == true);
  CHECK(f["route"].get<std::string>().find("Surj") != std::string::npos);
  CHECK(run_json("moebius --category poset_v.json")["verified"] == true);
}

TEST_CASE("pairing gram example") {
  auto j = run_json("pairing gram --category finset.json --rows 0..6 --cols 0..6");
  CHECK(j["rank"] == 7);
  CHECK(j.contains("det"));
  for (long n = 0; n <= 6; ++n) {
    Cyclotomic p = 1;
    for (long m = 0; m <= 6; ++m) {
      CHECK(value_of(j["gram"][n][m]) == p);
      p *= Cyclotomic(n);
    }
  }
  auto sub = run_json("pairing gram --category finset.json --rows 1,2 --cols 1..3");
  CHECK(sub["rank"] == 2);
  CHECK(!sub.contains("det"));
  auto p = run_json("pairing pontryagin --groups 1,Z2,Z3 --omega constant:2");
  CHECK(p["nondegenerate_on_support"] == true);
}

TEST_CASE("cardinality and frobenius") {
  CHECK(value_of(run_json("cardinality --groupoid BS3.json")["value"]) == Cyclotomic::rational(1, 6));
  CHECK(value_of(run_json("cardinality --groupoid z2_on_3.json")["value"]) == Cyclotomic::rational(3, 2));
  CHECK(value_of(run_json("cardinality --groupoid interval.json")["value"]) == Cyclotomic(1));
  auto f = run_json("frobenius --algebra algebra_z2.json");
  CHECK(f["semisimple"] == true);
  CHECK(f["central_idempotents"].size() == 2);
  CHECK(value_of(f["surfaces"][2]["value"]) == Cyclotomic(8));
  auto d = run_json("frobenius --algebra algebra_dual_numbers.json");
  CHECK(d["semisimple"] == false);
  CHECK(d["radical_dim"] == 1);
  auto c = run_json("frobenius --algebra algebra_cl1.json");
  CHECK(c["super_commutative"] == false);
  CHECK(c["even_trivial"] == false);
}

TEST_CASE("malformed input names the field") {
  auto r = run("dw manifold --group Z2.json --presentation bad_manifold.json");
  CHECK(r.code == 2);
  CHECK(r.err.find("/relators") != std::string::npos);
  r = run("dw surface --group bad_group.json --genus 1");
  CHECK(r.code == 2);
  CHECK(r.err.find("/mul") != std::string::npos);
  r = run("dw surface --group Z2.json --cocycle klein_cocycle.json --genus 1");
  CHECK(r.code == 2);
  CHECK(r.err.find("/table") != std::string::npos);
  r = run("dw surface --group missing.json --genus 1");
  CHECK(r.code == 2);
  r = run("pairing gram --category finset.json --rows 0..9");
  CHECK(r.code == 2);
  CHECK(r.err.find("--rows") != std::string::npos);
  r = run("moebius --category idempotent_monoid.json");
  CHECK(r.code == 2);
}

TEST_CASE("exceeded bounds are named") {
  auto r = run("dw manifold --group S3.json --presentation manifolds/surface2_tietze.json --max-hom-search 1000");
  CHECK(r.code == 3);
  CHECK(r.err.find("max hom search") != std::string::npos);
  r = run("moebius --category divisors12.json", "PIFIN_MAX_CHAIN_LENGTH=2");
  CHECK(r.code == 3);
  CHECK(r.err.find("max chain length") != std::string::npos);
  r = run("pairing pontryagin --max-closure 2");
  CHECK(r.code == 3);
  CHECK(r.err.find("max closure size") != std::string::npos);
  r = run("moebius --category finset.json", "PIFIN_MAX_FINSET=4");
  CHECK(r.code != 0);
  CHECK(r.err.find("PIFIN_MAX_FINSET") != std::string::npos);
}

TEST_CASE("formats and determinism") {
  auto a = run("dw surface --group Z2.json --genus 3");
  auto b = run("dw surface --group Z2.json --genus 3");
  CHECK(a.out == b.out);
  auto out = std::filesystem::temp_directory_path() / "pifin_cli_out.json";
  REQUIRE(run("dw surface --group Z2.json --genus 3 --out " + out.string()).code == 0);
  std::ifstream f(out);
  std::string written((std::istreambuf_iterator<char>(f)), {});
  CHECK(written == a.out);
  std::filesystem::remove(out);
  auto pretty = run("dw surface --group Z2.json --genus 3 --format pretty");
  CHECK(pretty.out.find("value: 32") != std::string::npos);
  auto csv = run("dw surface --group Z2.json --genus 3 --format csv");
  CHECK(csv.out.find("value,32") != std::string::npos);
  auto s1 = run("selftest --only 5 6 14 --seed 7");
  auto s2 = run("selftest --only 5 6 14 --seed 7");
  CHECK(s1.code == 0);
  CHECK(s1.out == s2.out);
}

TEST_CASE("selftest runs a criterion") {
  auto r = run("selftest --only 1 --format pretty");
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS   1") != std::string::npos);
}
