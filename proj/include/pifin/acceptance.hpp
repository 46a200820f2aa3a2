#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pifin/dw.hpp"
#include "pifin/error.hpp"

namespace pifin::acceptance {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

struct Criterion {
  int id;
  std::string title;
  std::function<std::string()> run;  // returns a detail line; throws CriterionFailed on failure
};

struct CriterionFailed : Error {
  using Error::Error;
};

const std::vector<Criterion>& criteria();
// Shifts the seeds of the randomized criteria (5, 6, 14); 0 reproduces the default corpus.
void set_seed(std::uint64_t seed);
CriterionResult run_one(const Criterion& c);
// ids empty means all
std::vector<CriterionResult> run_all(const std::vector<int>& ids = {});

// c(a, b) = zeta_n^(a_i b_j) on FinGroup::abelian(factors)
Cocycle2 bilinear_cocycle(const std::vector<std::size_t>& factors, unsigned n, std::size_t i, std::size_t j);
// (group, cocycle) pairs with |G| <= 24 used by the semisimplicity criterion.
std::vector<std::pair<std::string, Cocycle2>> cocycle_corpus();

}  // namespace pifin::acceptance
