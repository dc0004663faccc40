#pragma once

#include <cstddef>
#include <vector>

#include "brmult/poly.hpp"

namespace brm {

inline constexpr std::size_t kDefaultMinorCap = 1u << 20;

/// All nonzero rank x rank minors of the rank x m matrix whose columns are
/// cols, by row-by-row Laplace expansion with memoized column subsets.
/// Supports m <= 64; throws GeneratorOverflow when m > 64 or an
/// intermediate level holds more than cap subsets.
template <Field K>
std::vector<Poly<K>> maximal_minors(const K& field, int nvars, int rank, const std::vector<PolyVec<K>>& cols,
                                    std::size_t cap = kDefaultMinorCap);

/// Exact determinant of a square matrix given by columns.
template <Field K>
Poly<K> determinant(const K& field, int nvars, const std::vector<PolyVec<K>>& cols);

}  // namespace brm
