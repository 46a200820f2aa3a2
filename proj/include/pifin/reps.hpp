#pragma once

#include <vector>

#include "pifin/fingroup.hpp"
#include "pifin/matrix.hpp"

namespace pifin {

// Matrix per group element.
using Representation = std::vector<ExactMatrix>;

// Extends generator images; throws ValidationError if they do not define a representation.
Representation extend_representation(const FinGroup& g, const std::vector<Elem>& gens,
                                     const std::vector<ExactMatrix>& images);
Representation trivial_rep(const FinGroup& g, std::size_t dim = 1);
// Left regular representation, basis indexed by group elements.
Representation regular_rep(const FinGroup& g);
Representation direct_sum(const Representation& a, const Representation& b);
// Induced from a 1-dimensional representation of a subgroup (given by its element list).
Representation induced_rep(const FinGroup& g, const std::vector<Elem>& sub, const std::vector<Cyclotomic>& values);
bool is_representation(const FinGroup& g, const Representation& r);

std::vector<Cyclotomic> character(const Representation& r);
// (1/|G|) sum chi(g) conj(psi(g))
Cyclotomic character_inner(const FinGroup& g, const std::vector<Cyclotomic>& chi, const std::vector<Cyclotomic>& psi);

std::vector<std::vector<Elem>> subgroups(const FinGroup& g);
// Complete list of irreducible representations, found among representations
// induced from linear characters of subgroups. Throws if the group has an
// irreducible that is not of this form.
std::vector<Representation> irreducible_reps(const FinGroup& g);

}  // namespace pifin
