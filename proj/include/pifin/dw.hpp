#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pifin/frobenius.hpp"
#include "pifin/groupoid.hpp"
#include "pifin/pairing.hpp"

namespace pifin {

// Word in the generators: k > 0 is generator k-1, -k its inverse.
using Word = std::vector<int>;

struct GroupPresentation {
  std::size_t generators = 0;
  std::vector<Word> relators;
};

// Closed manifold known through its fundamental group, or an oriented surface.
class ManifoldDescription {
 public:
  static ManifoldDescription surface(unsigned genus, std::string name = "");
  static ManifoldDescription presented(GroupPresentation p, unsigned dimension = 0, std::string name = "");

  bool is_surface() const { return genus_.has_value(); }
  unsigned genus() const;
  unsigned dimension() const { return dim_; }
  const std::string& name() const { return name_; }
  // Standard one-relator presentation for surfaces.
  const GroupPresentation& presentation() const { return pres_; }

 private:
  std::optional<unsigned> genus_;
  unsigned dim_ = 0;
  std::string name_;
  GroupPresentation pres_;
};

// Gauge group with an optional 2-cocycle twist (dimension 2 only).
struct DwTheory {
  GroupPtr group;
  std::optional<Cocycle2> twist;
  std::string name;

  DwTheory(GroupPtr g, std::optional<Cocycle2> c = std::nullopt, std::string n = "");
};

// Bound on |G|^generators for explicit enumeration of homomorphisms.
constexpr unsigned long long kDefaultHomSearchBound = 20'000'000ULL;

// Generator images of every homomorphism pi_1 -> G, in lexicographic order.
std::vector<std::vector<Elem>> presentation_homs(const GroupPresentation& p, const FinGroup& g,
                                                 unsigned long long bound = kDefaultHomSearchBound);
Elem evaluate_word(const FinGroup& g, const Word& w, const std::vector<Elem>& images);

struct MappingGroupoid {
  GroupoidPtr groupoid;
  std::vector<std::vector<Elem>> homs;  // object index -> generator images
};
// Hom(pi_1 M, G) // G under simultaneous conjugation.
MappingGroupoid mapping_groupoid(const ManifoldDescription& m, const FinGroup& g,
                                 unsigned long long bound = kDefaultHomSearchBound);

struct DwValue {
  Cyclotomic value;
  std::string route;
  std::string note;
};
DwValue partition_function(const DwTheory& t, const ManifoldDescription& m,
                           unsigned long long bound = kDefaultHomSearchBound);

// Number of homomorphisms from the genus-g surface group, by convolving the commutator distribution.
mpz_class surface_hom_count(const FinGroup& g, unsigned genus);
// (1/|G|) sum over commuting (a, b) of c(a, b) / c(b, a)
Cyclotomic twisted_torus_direct(const Cocycle2& c);
// tau(h, x) = c(h, x) c(h x h^-1, h)^-1
Cyclotomic transgression(const Cocycle2& c, Elem h, Elem x);
// First (h', h, x) where tau fails to be multiplicative, if any.
std::optional<std::array<Elem, 3>> transgression_defect(const Cocycle2& c);

struct SphereAlgebra {
  FdAlgebra algebra;        // pair-of-pants product on the colimit of tau over G//G
  ExactMatrix comparison;   // colimit basis -> twisted group algebra, through the norm map
  FdAlgebra center;         // center of the twisted group algebra, canonical basis
  bool routes_agree = false;
  SemisimplicityReport report;
  bool window_invertible = false;
};
SphereAlgebra sphere_algebra(const DwTheory& t);

// Group types plus one object for the 1-type of M, whose morphisms to BH are
// Hom(pi_1 M, H)/H weighted 1/|C(im)|. The manifold object has no known identity.
struct ManifoldCategory {
  WeightedCategory category;
  std::size_t manifold_object = 0;
  std::vector<std::vector<Elem>> images;  // per morphism out of M: generator images
};
ManifoldCategory manifold_category(const ManifoldDescription& m, const std::vector<NamedGroup>& groups,
                                   unsigned long long bound = kDefaultHomSearchBound);

struct DwPairing {
  Cyclotomic pairing;
  Cyclotomic partition;
  bool trivial_character = false;
  bool equal = false;  // pairing == partition, meaningful for the trivial character
};
// <(BG, chi), (M, x)> over the category; compared with partition_function.
DwPairing dw_as_pairing(const DwTheory& t, const ManifoldDescription& m, const ManifoldCategory& mc,
                        std::size_t group_object, const AbFunctor& om, const Character& chi,
                        const std::vector<long>& fundamental_class);

struct Separation {
  std::size_t block_a = 0, block_b = 0, theory = 0;
};
struct Distinction {
  std::vector<std::vector<Cyclotomic>> values;  // manifold x theory
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<Separation> separations;
};
// The (manifold, theory) grid is evaluated by up to `jobs` threads.
Distinction distinguish(const std::vector<ManifoldDescription>& ms, const std::vector<DwTheory>& theories,
                        unsigned long long bound = kDefaultHomSearchBound, unsigned jobs = 1);

}  // namespace pifin
