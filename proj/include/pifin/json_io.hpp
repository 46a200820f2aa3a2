#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "json.hpp"
#include "pifin/dw.hpp"
#include "pifin/error.hpp"
#include "pifin/fincat.hpp"
#include "pifin/frobenius.hpp"

namespace pifin::io {

using Json = nlohmann::json;

// Malformed input; `pointer` is a JSON pointer to the offending field.
struct InputError : ValidationError {
  std::string pointer;
  InputError(std::string ptr, const std::string& what)
      : ValidationError("field " + (ptr.empty() ? std::string("/") : ptr) + ": " + what), pointer(std::move(ptr)) {}
  // Same error, message prefixed with the file it came from.
  InputError(const std::string& file, const InputError& inner)
      : ValidationError(file + ": " + inner.what()), pointer(inner.pointer) {}
};

Json read_file(const std::filesystem::path& p);

Json to_json(const Cyclotomic& x);
Json approx_json(const Cyclotomic& x);
Json to_json(const ExactMatrix& m);
Cyclotomic scalar_from_json(const Json& j, const std::string& ptr = "");
ExactMatrix matrix_from_json(const Json& j, const std::string& ptr = "");

// {"order", "mul"} | {"perm_generators", "degree"} | {"builtin": name}
FinGroup group_from_json(const Json& j, const std::string& ptr = "");
Json to_json(const FinGroup& g);
// {"N", "table"}
Cocycle2 cocycle_from_json(const Json& j, GroupPtr g, const std::string& ptr = "");
// {"surface_genus"} | {"generators", "relators", "dimension"}, optional "name"
ManifoldDescription manifold_from_json(const Json& j, const std::string& ptr = "");

struct LoadedCategory {
  CategoryPtr category;
  std::shared_ptr<const FinSetCategory> finset;  // set when the file asks for FinSet
};
// {"finset": N} | {"divisors": n} | {"leq": [[bool]]} | explicit {"objects", "morphisms", "identity", "compose"}
LoadedCategory category_from_json(const Json& j, const std::string& ptr = "");

// {"BG": group} | {"action": {"group", "permutations": [perm per element]}} | explicit {"objects", "morphisms", "identity", "compose"}
GroupoidPtr groupoid_from_json(const Json& j, const std::string& ptr = "");

struct LoadedAlgebra {
  FdAlgebra algebra;
  std::optional<ExactMatrix> counit;
};
// {"dim", "grading", "structure", "unit", "counit"}
LoadedAlgebra algebra_from_json(const Json& j, const std::string& ptr = "");
Json to_json(const FdAlgebra& a);

// {"group": group or file name, "cocycle": optional cocycle or file name, "name"}; paths resolve against base.
DwTheory theory_from_json(const Json& j, const std::filesystem::path& base, const std::string& ptr = "");

}  // namespace pifin::io
