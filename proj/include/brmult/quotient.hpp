#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "brmult/exactla.hpp"
#include "brmult/monomial.hpp"
#include "brmult/poly.hpp"

namespace brm {

inline constexpr int kDefaultSMax = 24;

/// Linear-algebra view of F/(M + m^T F), where F = R^r and M is the
/// submodule generated by a list of columns. Every length and membership
/// question in the library is answered by one of these.
///
/// Coordinates follow TruncationLayout (sorted by degree), and the internal
/// echelon basis pivots on the lowest-degree coordinate, so for every t <= T
/// the projection to degrees < t is read off the same basis.
template <Field K>
class QuotientOracle {
 public:
  using Element = typename K::Element;

  explicit QuotientOracle(std::shared_ptr<const TruncationLayout> layout) : layout_(std::move(layout)) {}
  virtual ~QuotientOracle() = default;

  const TruncationLayout& layout() const { return *layout_; }
  int truncation() const { return layout_->truncation(); }

  /// dim_k F/(M + m^t F) for 0 <= t <= truncation().
  virtual std::int64_t quotient_length(int t) const = 0;

  /// Canonical representative of v modulo M + m^t F in the first
  /// layout().prefix(t) coordinates; all zero iff v lies in M + m^t F.
  virtual std::vector<Element> normal_form(const PolyVec<K>& v, int t) const = 0;

  bool contains(const PolyVec<K>& v, int t) const;

  /// Smallest s with quotient_length(s + 1) == quotient_length(s), i.e. with
  /// m^s F contained in M + m^(s+1) F; by the Krull intersection theorem this
  /// means m^s F is contained in M. Empty if no such s < truncation().
  std::optional<int> stable_exponent() const;

 protected:
  std::shared_ptr<const TruncationLayout> layout_;
};

/// Dense coordinates of v in the layout (terms of degree >= T dropped).
template <Field K>
std::vector<typename K::Element> to_coordinates(const K& field, const TruncationLayout& layout,
                                                const PolyVec<K>& v);

/// Incremental closure: inserts each generator into an echelon basis and
/// keeps multiplying new basis vectors by the variables until the span is an
/// R-submodule. Works for arbitrary generators.
template <Field K>
std::unique_ptr<QuotientOracle<K>> make_closure_oracle(const K& field,
                                                       std::shared_ptr<const TruncationLayout> layout,
                                                       const std::vector<PolyVec<K>>& gens);

/// Staircase count for monomial generators (each column a single term in a
/// single component). No elimination needed.
template <Field K>
std::unique_ptr<QuotientOracle<K>> make_staircase_oracle(const K& field,
                                                         std::shared_ptr<const TruncationLayout> layout,
                                                         const std::vector<PolyVec<K>>& gens);

/// Serial reference: stacks every x^a * g_j of degree < T into one matrix and
/// row-reduces it. Slow; kept to cross-check the other two.
template <Field K>
std::unique_ptr<QuotientOracle<K>> make_reference_oracle(const K& field,
                                                         std::shared_ptr<const TruncationLayout> layout,
                                                         const std::vector<PolyVec<K>>& gens);

/// Staircase oracle when every generator is a monomial vector, closure oracle
/// otherwise.
template <Field K>
std::unique_ptr<QuotientOracle<K>> make_oracle(const K& field, int nvars, int rank, int truncation,
                                               const std::vector<PolyVec<K>>& gens);

/// Certified finite colength of the submodule generated by gens.
template <Field K>
struct ModuleCertificate {
  int exponent = 0;            // smallest s with m^s F inside M
  std::int64_t colength = 0;   // length of F/M
  std::shared_ptr<const QuotientOracle<K>> oracle;  // truncation > exponent
};

/// Searches for the exponent s <= s_max by growing the truncation. A hint
/// (any known s' with m^s' F inside M) sizes the first attempt.
template <Field K>
std::optional<ModuleCertificate<K>> certify_module(const K& field, int nvars, int rank,
                                                   const std::vector<PolyVec<K>>& gens, int s_max,
                                                   std::optional<int> hint = std::nullopt);

}  // namespace brm
