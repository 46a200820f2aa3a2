#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pifin/groupoid.hpp"
#include "pifin/matrix.hpp"

namespace pifin {

// A morphism is addressed by (source, target, index in the hom set).
struct CatMorphism {
  std::size_t src = 0, tgt = 0, index = 0;
  friend bool operator==(const CatMorphism& a, const CatMorphism& b) {
    return a.src == b.src && a.tgt == b.tgt && a.index == b.index;
  }
};

class FinCategory {
 public:
  virtual ~FinCategory() = default;
  virtual std::size_t object_count() const = 0;
  virtual std::size_t hom_size(std::size_t a, std::size_t b) const = 0;
  // g after f, for f: a -> b and g: b -> c
  virtual std::size_t compose(std::size_t a, std::size_t b, std::size_t c, std::size_t g, std::size_t f) const = 0;
  virtual std::size_t identity(std::size_t a) const = 0;
  virtual bool is_iso(std::size_t a, std::size_t b, std::size_t f) const;
  virtual std::size_t automorphism_count(std::size_t a) const;
  virtual std::string object_label(std::size_t a) const { return std::to_string(a); }

  CatMorphism compose(const CatMorphism& g, const CatMorphism& f) const;
  std::vector<std::size_t> isomorphisms(std::size_t a, std::size_t b) const;
  std::vector<std::size_t> automorphisms(std::size_t a) const { return isomorphisms(a, a); }
  // Representatives (smallest index) of the isomorphism classes, and class per object.
  const std::vector<std::size_t>& representatives() const;
  std::size_t iso_class(std::size_t a) const;
  // Group of automorphisms of a; element i is automorphisms(a)[i].
  FinGroup automorphism_group(std::size_t a) const;

 private:
  void classify() const;
  mutable std::vector<std::size_t> reps_, class_of_;
};

using CategoryPtr = std::shared_ptr<const FinCategory>;

// Exhaustive identity and associativity check; returns a description of the first failure.
std::optional<std::string> check_category_axioms(const FinCategory& c);

class ExplicitCategory : public FinCategory {
 public:
  // compose[g][f] = index of g after f, for composable pairs (other entries ignored).
  ExplicitCategory(std::size_t objects, std::vector<std::pair<std::size_t, std::size_t>> morphisms,
                   std::vector<std::size_t> identities, std::vector<std::vector<long>> compose,
                   std::vector<std::string> labels = {});
  // One object with the given group as its endomorphisms.
  static ExplicitCategory from_group(const FinGroup& g);
  std::size_t object_count() const override { return n_; }
  std::size_t hom_size(std::size_t a, std::size_t b) const override { return homs_[a * n_ + b].size(); }
  std::size_t compose(std::size_t a, std::size_t b, std::size_t c, std::size_t g, std::size_t f) const override;
  std::size_t identity(std::size_t a) const override;
  std::string object_label(std::size_t a) const override;
  std::size_t global_index(std::size_t a, std::size_t b, std::size_t f) const { return homs_[a * n_ + b][f]; }
  std::size_t morphism_count() const { return mors_.size(); }
  const std::pair<std::size_t, std::size_t>& morphism(std::size_t m) const { return mors_[m]; }
  std::size_t local_index(std::size_t m) const { return local_[m]; }
  using FinCategory::compose;

 private:
  std::size_t n_;
  std::vector<std::pair<std::size_t, std::size_t>> mors_;
  std::vector<std::size_t> ids_, local_;
  std::vector<std::vector<long>> comp_;
  std::vector<std::vector<std::size_t>> homs_;
  std::vector<std::string> labels_;
};

// Sets {0..n-1} for n = 0..N and all functions; f: m -> n has index sum f(i) n^i.
class FinSetCategory : public FinCategory {
 public:
  explicit FinSetCategory(std::size_t max_size);
  std::size_t object_count() const override { return n_ + 1; }
  std::size_t hom_size(std::size_t a, std::size_t b) const override;
  std::size_t compose(std::size_t a, std::size_t b, std::size_t c, std::size_t g, std::size_t f) const override;
  std::size_t identity(std::size_t a) const override;
  bool is_iso(std::size_t a, std::size_t b, std::size_t f) const override;
  std::size_t automorphism_count(std::size_t a) const override;
  std::vector<std::size_t> function(std::size_t a, std::size_t b, std::size_t f) const;
  std::size_t index_of(std::size_t b, const std::vector<std::size_t>& values) const;
  bool injective(std::size_t a, std::size_t b, std::size_t f) const;
  bool surjective(std::size_t a, std::size_t b, std::size_t f) const;
  using FinCategory::compose;

 private:
  std::size_t n_;
};

// Default cap on FinSet size; env PIFIN_MAX_FINSET overrides.
std::size_t finset_cap();

class PosetCategory : public FinCategory {
 public:
  // leq[a][b] true iff a <= b; must be a partial order.
  explicit PosetCategory(std::vector<std::vector<bool>> leq, std::vector<std::string> labels = {});
  static PosetCategory divisors(unsigned long n);
  std::size_t object_count() const override { return leq_.size(); }
  std::size_t hom_size(std::size_t a, std::size_t b) const override { return leq_[a][b] ? 1 : 0; }
  std::size_t compose(std::size_t, std::size_t, std::size_t, std::size_t, std::size_t) const override { return 0; }
  std::size_t identity(std::size_t) const override { return 0; }
  bool is_iso(std::size_t a, std::size_t b, std::size_t) const override { return a == b; }
  std::size_t automorphism_count(std::size_t) const override { return 1; }
  std::string object_label(std::size_t a) const override;
  bool leq(std::size_t a, std::size_t b) const { return leq_[a][b]; }
  using FinCategory::compose;

 private:
  std::vector<std::vector<bool>> leq_;
  std::vector<std::string> labels_;
};

// Functor to finite-dimensional vector spaces.
struct CatFunctor {
  std::vector<std::size_t> dims;
  std::function<ExactMatrix(const CatMorphism&)> map;
  bool constant = false;  // every space 1-dimensional, every map the identity
  static CatFunctor constant_functor(const FinCategory& c);
  ExactMatrix operator()(const CatMorphism& f) const;
};
// Identities and composition, exhaustively; throws ValidationError on failure.
void validate_functor(const FinCategory& c, const CatFunctor& f);

using MorphismFilter = std::function<bool(const CatMorphism&)>;

// Coinvariants of F(rep) under Aut(rep), one block per isomorphism class.
struct CatColimit {
  std::vector<std::size_t> offset, block;
  std::vector<ExactMatrix> projection, section;
  std::size_t dim = 0;
};
CatColimit cat_colimit(const FinCategory& c, const CatFunctor& f);

// Block [b <- a] = (1/|Aut b|) sum over f in C(a, b) passing the filter of iota_b F(f) s_a.
ExactMatrix cat_linearize(const FinCategory& c, const CatFunctor& f, const MorphismFilter& keep = nullptr);
// Same map built as the linearization of the span C0 <- C1 -> C0 of groupoids.
ExactMatrix cat_linearize_via_spans(const FinCategory& c, const CatFunctor& f);
// Part of the linearization coming from chains of n composable non-invertible
// morphisms (all passing the filter), enumerated over isomorphism classes.
ExactMatrix chain_linearization(const FinCategory& c, const CatFunctor& f, std::size_t n,
                                const MorphismFilter& keep = nullptr);

struct MoebiusResult {
  ExactMatrix inverse;
  std::size_t chain_length = 0;  // longest nonempty chain space
};
// Alternating chain sum; throws ValidationError if some endomorphism passing the
// filter is not invertible. The result is checked to be a two-sided inverse.
MoebiusResult moebius_invert(const FinCategory& c, const CatFunctor& f, const MorphismFilter& keep = nullptr);

struct FactorizationSystem {
  CategoryPtr category;
  MorphismFilter left, right;
};
struct FactorizationDiagnosis {
  bool ok = true;
  std::string reason;
  std::optional<CatMorphism> witness;
};
FactorizationDiagnosis validate_factorization(const FactorizationSystem& fs);
FactorizationSystem surj_inj(const std::shared_ptr<const FinSetCategory>& c);
FactorizationSystem trivial_all_iso(const CategoryPtr& c);
FactorizationSystem trivial_iso_all(const CategoryPtr& c);

struct NestedSystem {
  std::vector<FactorizationSystem> levels;
  // T(0) = R(1), T(l) = R(l+1) and L(l), T(n) = L(n)
  std::vector<MorphismFilter> derived() const;
};
// Throws ValidationError if R(k-1) is not contained in R(k).
void validate_nested(const NestedSystem& ns);

struct FactorizedInverse {
  std::vector<ExactMatrix> factors;   // Phi_{T(0)}, ..., Phi_{T(n)}
  std::vector<ExactMatrix> inverses;  // chain inverses of the factors
  ExactMatrix inverse;                // composite, checked against Phi_C
};
FactorizedInverse factorized_invert(const FinCategory& c, const NestedSystem& ns, const CatFunctor& f);

struct PostnikovFactorization {
  GroupoidPtr middle;
  std::optional<GroupoidFunctor> left, right;
};
// level -1: middle is the full subgroupoid on the components that are hit;
// level 0: middle has the images of the vertex-group maps as vertex groups.
PostnikovFactorization postnikov_factor(const GroupoidFunctor& f, int level);

bool pi0_surjective(const GroupoidFunctor& f);
bool pi0_injective(const GroupoidFunctor& f);
bool pi1_surjective(const GroupoidFunctor& f);
bool pi1_injective(const GroupoidFunctor& f);

}  // namespace pifin
