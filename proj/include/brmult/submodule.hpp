#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "brmult/localring.hpp"

namespace brm {

/// Submodule M of F = R^r given by generator columns. Immutable; the Fitting
/// ideal and the colength certificate are computed lazily and shared between
/// copies.
template <Field K>
class Submodule {
 public:
  Submodule(K field, int nvars, int rank, std::vector<PolyVec<K>> gens,
            std::optional<int> exponent_hint = std::nullopt);

  static Submodule free(K field, int nvars, int rank);
  static Submodule from_ideal(const MIdeal<K>& ideal);

  const K& field() const { return field_; }
  int nvars() const { return nvars_; }
  int rank() const { return rank_; }
  const std::vector<PolyVec<K>>& gens() const { return gens_; }
  std::size_t num_generators() const { return gens_.size(); }

  /// Ideal of maximal minors (zero ideal when there are fewer than r columns).
  const MIdeal<K>& fitting_ideal() const;
  /// Exponent of the Fitting ideal; I(M) F is inside M by Cramer's rule.
  std::optional<int> cramer_exponent(int s_max = kDefaultSMax) const;
  /// ord(I(M)).
  int order() const { return fitting_ideal().ord(); }

  std::optional<ModuleCertificate<K>> certificate(int s_max = kDefaultSMax) const;
  std::optional<int> known_exponent() const;

  /// Length of F/M. Throws NotFiniteColength.
  std::int64_t colength(int s_max = kDefaultSMax) const;
  bool has_finite_colength(int s_max = kDefaultSMax) const { return certificate(s_max).has_value(); }

  bool contains(const PolyVec<K>& v, int s_max = kDefaultSMax) const;
  bool is_contained_in(const Submodule& other, int s_max = kDefaultSMax) const;
  bool equals(const Submodule& other, int s_max = kDefaultSMax) const;

  /// Minimal number of generators, dim M/mM.
  std::size_t min_generators(int s_max = kDefaultSMax) const;
  /// Same module, generated by a minimal subset of the columns.
  Submodule minimalized(int s_max = kDefaultSMax) const;

  std::vector<std::vector<Poly<K>>> matrix_rows() const;

 private:
  struct Cache;
  K field_;
  int nvars_;
  int rank_;
  std::vector<PolyVec<K>> gens_;
  std::optional<int> hint_;
  std::shared_ptr<Cache> cache_;
};

/// M1 (+) M2 inside R^(r1 + r2).
template <Field K>
Submodule<K> direct_sum(const Submodule<K>& a, const Submodule<K>& b);

/// I M: every product of an ideal generator with a module generator.
template <Field K>
Submodule<K> scalar_extend(const MIdeal<K>& ideal, const Submodule<K>& m);

/// A + B inside the same free module.
template <Field K>
Submodule<K> submodule_sum(const Submodule<K>& a, const Submodule<K>& b);

}  // namespace brm
