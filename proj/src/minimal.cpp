#include "brmult/minimal.hpp"

#include "brmult/errors.hpp"
#include "brmult/localring.hpp"

namespace brm {

namespace {

/// Incremental echelon set of dense vectors; insert() reports independence.
template <Field K>
class IndependentSet {
 public:
  using Element = typename K::Element;
  explicit IndependentSet(const K& field) : k_(field) {}

  bool insert(std::vector<Element> v) {
    for (const auto& [pivot, row] : rows_) {
      if (k_.is_zero(v[pivot])) continue;
      const auto c = v[pivot];
      for (std::size_t j = 0; j < v.size(); ++j) v[j] = k_.sub(v[j], k_.mul(c, row[j]));
    }
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (k_.is_zero(v[j])) continue;
      const auto inv = k_.inv(v[j]);
      for (auto& e : v) e = k_.mul(e, inv);
      for (auto& [pivot, row] : rows_) {
        if (k_.is_zero(row[j])) continue;
        const auto c = row[j];
        for (std::size_t i = 0; i < row.size(); ++i) row[i] = k_.sub(row[i], k_.mul(c, v[i]));
      }
      rows_.emplace_back(j, std::move(v));
      return true;
    }
    return false;
  }

 private:
  const K& k_;
  std::vector<std::pair<std::size_t, std::vector<Element>>> rows_;
};

}  // namespace

template <Field K>
std::vector<PolyVec<K>> maximal_times(const K& field, int nvars, const std::vector<PolyVec<K>>& gens) {
  std::vector<PolyVec<K>> out;
  out.reserve(gens.size() * static_cast<std::size_t>(nvars));
  for (const auto& g : gens) {
    for (int i = 0; i < nvars; ++i) {
      const auto x = Poly<K>::variable(field, nvars, i);
      PolyVec<K> v;
      v.reserve(g.size());
      for (const auto& p : g) v.push_back(p * x);
      out.push_back(std::move(v));
    }
  }
  return dedupe_columns(std::move(out));
}

template <Field K>
std::vector<std::size_t> select_minimal_generators(const K& field, int nvars, int rank,
                                                   const std::vector<PolyVec<K>>& gens, int s_max,
                                                   std::optional<int> exponent_hint) {
  if (!exponent_hint) {
    auto cert = certify_module(field, nvars, rank, gens, s_max);
    if (!cert) throw NotFiniteColength("minimal generators need finite colength", s_max);
    exponent_hint = cert->exponent;
  }
  auto mm = certify_module(field, nvars, rank, maximal_times(field, nvars, gens), s_max + 1, *exponent_hint + 1);
  if (!mm) throw NotFiniteColength("minimal generators need finite colength", s_max);
  IndependentSet<K> basis(field);
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < gens.size(); ++j) {
    if (basis.insert(mm->oracle->normal_form(gens[j], mm->exponent))) keep.push_back(j);
  }
  return keep;
}

#define BRM_INSTANTIATE_MINIMAL(K)                                                                             \
  template std::vector<PolyVec<K>> maximal_times<K>(const K&, int, const std::vector<PolyVec<K>>&);           \
  template std::vector<std::size_t> select_minimal_generators<K>(const K&, int, int,                           \
                                                                 const std::vector<PolyVec<K>>&, int,         \
                                                                 std::optional<int>);

BRM_INSTANTIATE_MINIMAL(PrimeField)
BRM_INSTANTIATE_MINIMAL(RationalField)

}  // namespace brm
