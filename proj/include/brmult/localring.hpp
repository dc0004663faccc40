#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "brmult/poly.hpp"
#include "brmult/quotient.hpp"

namespace brm {

namespace detail {

/// Lazily computed finite-colength certificate shared between copies of an
/// immutable ideal or module.
template <Field K>
struct CertificateCache {
  std::mutex mu;
  std::optional<ModuleCertificate<K>> cert;
  int failed_bound = -1;  // largest s_max known to fail
};

}  // namespace detail

/// Ideal of the local ring k[x_1..x_d] at the origin, given by generators.
/// Zero generators are dropped and exact duplicates removed.
template <Field K>
class MIdeal {
 public:
  MIdeal(K field, int nvars, std::vector<Poly<K>> gens, std::optional<int> exponent_hint = std::nullopt);

  static MIdeal unit(K field, int nvars);
  static MIdeal maximal(K field, int nvars);
  static MIdeal maximal_power(K field, int nvars, int s);
  static MIdeal monomial(K field, int nvars, const std::vector<Monomial>& monos);

  const K& field() const { return field_; }
  int nvars() const { return nvars_; }
  const std::vector<Poly<K>>& gens() const { return gens_; }
  std::size_t num_generators() const { return gens_.size(); }
  bool is_monomial() const;
  bool is_zero() const { return gens_.empty(); }

  /// Smallest order of a generator (kInfiniteOrder for the zero ideal).
  int ord() const;

  /// Smallest s with m^s inside the ideal, certified by truncated linear
  /// algebra; empty ("indeterminate") if none s <= s_max certifies.
  std::optional<int> mprimary_exponent(int s_max = kDefaultSMax) const;

  /// Length of R/I. Throws NotFiniteColength.
  std::int64_t colength(int s_max = kDefaultSMax) const;

  bool contains(const Poly<K>& f, int s_max = kDefaultSMax) const;
  /// Every generator of *this lies in other (the certificate lives on other).
  bool is_contained_in(const MIdeal& other, int s_max = kDefaultSMax) const;
  bool equals(const MIdeal& other, int s_max = kDefaultSMax) const;

  /// Exponent known without further work: the cached certificate if any,
  /// else the construction hint.
  std::optional<int> known_exponent() const;
  std::optional<ModuleCertificate<K>> certificate(int s_max = kDefaultSMax) const;

  /// Generators as rank-1 columns.
  std::vector<PolyVec<K>> columns() const;

  /// Monomial ideals: drop generators divisible by others. Otherwise keeps a
  /// subset whose images in I/mI are a basis (needs finite colength).
  MIdeal minimalized(int s_max = kDefaultSMax) const;

 private:
  K field_;
  int nvars_;
  std::vector<Poly<K>> gens_;
  std::optional<int> hint_;
  std::shared_ptr<detail::CertificateCache<K>> cache_;
};

template <Field K>
MIdeal<K> ideal_product(const MIdeal<K>& a, const MIdeal<K>& b);
template <Field K>
MIdeal<K> ideal_power(const MIdeal<K>& a, int n);
template <Field K>
MIdeal<K> ideal_sum(const MIdeal<K>& a, const MIdeal<K>& b);

/// Shared helper: certificate lookup through a cache.
template <Field K>
std::optional<ModuleCertificate<K>> cached_certificate(detail::CertificateCache<K>& cache, const K& field, int nvars,
                                                       int rank, const std::vector<PolyVec<K>>& gens, int s_max,
                                                       std::optional<int> hint);

/// Removes zero columns and columns that are scalar multiples of an earlier
/// one, keeping first-occurrence order.
template <Field K>
std::vector<PolyVec<K>> dedupe_columns(std::vector<PolyVec<K>> cols);

}  // namespace brm
