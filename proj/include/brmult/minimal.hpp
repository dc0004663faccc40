#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "brmult/poly.hpp"
#include "brmult/quotient.hpp"

namespace brm {

/// Indices of a subset of gens whose images form a basis of M/mM, chosen
/// greedily in input order. Needs M of finite colength; throws
/// NotFiniteColength otherwise. exponent_hint is any s with m^s F inside M.
template <Field K>
std::vector<std::size_t> select_minimal_generators(const K& field, int nvars, int rank,
                                                   const std::vector<PolyVec<K>>& gens, int s_max,
                                                   std::optional<int> exponent_hint = std::nullopt);

/// Generators of mM: every x_i * g_j.
template <Field K>
std::vector<PolyVec<K>> maximal_times(const K& field, int nvars, const std::vector<PolyVec<K>>& gens);

}  // namespace brm
