#include "brmult/minors.hpp"

#include <bit>
#include <map>

#include "brmult/errors.hpp"

namespace brm {

namespace {

// Ordered map keeps the minor list deterministic.
template <Field K>
using Level = std::map<std::uint64_t, Poly<K>>;

template <Field K>
Level<K> expand(const K& field, int nvars, int rank, const std::vector<PolyVec<K>>& cols, std::size_t cap) {
  const std::size_t m = cols.size();
  if (m > 64) throw GeneratorOverflow(m, 64);
  Level<K> level;
  level.emplace(0, Poly<K>::constant(field, nvars, field.one()));
  for (int i = 0; i < rank; ++i) {
    Level<K> next;
    for (const auto& [mask, p] : level) {
      for (std::size_t c = 0; c < m; ++c) {
        const std::uint64_t bit = std::uint64_t{1} << c;
        if (mask & bit) continue;
        const auto& a = cols[c][static_cast<std::size_t>(i)];
        if (a.is_zero()) continue;
        const int below = std::popcount(mask & (bit - 1));
        Poly<K> term = a * p;
        if ((i + below) % 2 != 0) term = -term;
        auto [it, fresh] = next.try_emplace(mask | bit, term);
        if (!fresh) it->second += term;
      }
    }
    std::erase_if(next, [](const auto& kv) { return kv.second.is_zero(); });
    if (next.size() > cap) throw GeneratorOverflow(next.size(), cap);
    level = std::move(next);
  }
  return level;
}

}  // namespace

template <Field K>
std::vector<Poly<K>> maximal_minors(const K& field, int nvars, int rank, const std::vector<PolyVec<K>>& cols,
                                    std::size_t cap) {
  for (const auto& c : cols) {
    if (static_cast<int>(c.size()) != rank) throw std::invalid_argument("column length differs from rank");
  }
  std::vector<Poly<K>> out;
  if (static_cast<int>(cols.size()) < rank) return out;
  for (auto& [mask, p] : expand(field, nvars, rank, cols, cap)) out.push_back(std::move(p));
  return out;
}

template <Field K>
Poly<K> determinant(const K& field, int nvars, const std::vector<PolyVec<K>>& cols) {
  const int n = static_cast<int>(cols.size());
  auto minors = maximal_minors(field, nvars, n, cols);
  return minors.empty() ? Poly<K>(field, nvars) : minors.front();
}

template std::vector<Poly<PrimeField>> maximal_minors(const PrimeField&, int, int,
                                                      const std::vector<PolyVec<PrimeField>>&, std::size_t);
template std::vector<Poly<RationalField>> maximal_minors(const RationalField&, int, int,
                                                         const std::vector<PolyVec<RationalField>>&, std::size_t);
template Poly<PrimeField> determinant(const PrimeField&, int, const std::vector<PolyVec<PrimeField>>&);
template Poly<RationalField> determinant(const RationalField&, int, const std::vector<PolyVec<RationalField>>&);

}  // namespace brm
