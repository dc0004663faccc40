#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "brmult/field.hpp"
#include "brmult/poly.hpp"
#include "brmult/polyparse.hpp"

namespace brm::testing {

using Fp = PrimeField;
using Q = RationalField;

inline const std::vector<std::string>& xyz() {
  static const std::vector<std::string> names{"x", "y", "z"};
  return names;
}

inline std::vector<std::string> first_vars(int d) {
  return {xyz().begin(), xyz().begin() + d};
}

template <Field K = Fp>
Poly<K> P(const std::string& text, int d = 2, K field = K()) {
  return parse_poly(text, first_vars(d), field);
}

template <Field K = Fp>
std::vector<Poly<K>> Ps(std::initializer_list<const char*> texts, int d = 2, K field = K()) {
  std::vector<Poly<K>> out;
  for (const char* t : texts) out.push_back(P<K>(t, d, field));
  return out;
}

/// Column vector from strings.
template <Field K = Fp>
PolyVec<K> V(std::initializer_list<const char*> texts, int d = 2, K field = K()) {
  return Ps<K>(texts, d, field);
}

inline std::int64_t binom(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < k) return 0;
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Brute-force staircase: monomials of R not divisible by any generator
/// exponent, counted in the box [0, bound)^d.
inline std::int64_t staircase_count(const std::vector<std::vector<int>>& gens, int d, int bound) {
  std::int64_t count = 0;
  std::vector<int> e(static_cast<std::size_t>(d), 0);
  for (;;) {
    bool divisible = false;
    for (const auto& g : gens) {
      bool div = true;
      for (int i = 0; i < d; ++i) div = div && g[static_cast<std::size_t>(i)] <= e[static_cast<std::size_t>(i)];
      divisible = divisible || div;
    }
    if (!divisible) ++count;
    int i = 0;
    while (i < d && ++e[static_cast<std::size_t>(i)] == bound) e[static_cast<std::size_t>(i++)] = 0;
    if (i == d) return count;
  }
}

inline int draw(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

}  // namespace brm::testing
