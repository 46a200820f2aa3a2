#pragma once

#include <random>

#include "pifin/span.hpp"

namespace pifin::testkit {

using Rng = std::mt19937_64;

// Small groups used as vertex groups: 1, Z2, Z3, Z4, S3, V4.
GroupPtr pool_group(std::size_t i);
constexpr std::size_t kPoolSize = 6;

Cyclotomic random_rational(Rng& rng, long range = 3);
ExactMatrix random_invertible(Rng& rng, std::size_t n);

// Up to max_components components, up to two objects each.
GroupoidPtr random_groupoid(Rng& rng, std::size_t max_components = 3, std::size_t max_pool = kPoolSize);
GroupoidFunctor random_functor(Rng& rng, const GroupoidPtr& src, const GroupoidPtr& tgt);
// Sum of irreducibles of total dimension <= max_dim (at least 1), conjugated by a random matrix.
Representation random_representation(Rng& rng, const FinGroup& g, std::size_t max_dim);
LocalSystemPtr random_system(Rng& rng, const GroupoidPtr& base, std::size_t max_dim);
// Random combination of a basis of natural decorations.
std::vector<ExactMatrix> random_decoration(Rng& rng, const GroupoidFunctor& s, const GroupoidFunctor& t,
                                           const LocalSystem& la, const LocalSystem& lb);
DecoratedSpan random_span(Rng& rng, const LocalSystemPtr& la, const LocalSystemPtr& lb);

}  // namespace pifin::testkit
