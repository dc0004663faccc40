#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "brmult/exactla.hpp"
#include "brmult/koszul.hpp"
#include "brmult/symprod.hpp"

namespace brm {

inline constexpr int kDefaultNMax = 6;

/// B_k = M_k A_k for coefficient matrices A_k (m_k x r_k) over the field.
/// Columns are kept exactly as computed (no deduplication), so repeated or
/// zero columns stay visible.
template <Field K>
struct JointReduction {
  std::uint64_t seed = 0;
  std::vector<DenseMatrix<K>> coefficients;
  std::vector<std::vector<PolyVec<K>>> columns;

  std::size_t size() const { return columns.size(); }
  Submodule<K> module(std::size_t k, int nvars) const;
  Endo<K> endo(std::size_t k, int nvars) const;
};

/// Coefficients drawn uniformly from the field by a generator seeded with seed.
template <Field K>
JointReduction<K> random_candidate(const std::vector<Submodule<K>>& ms, std::uint64_t seed);

/// Candidate from explicit B_k columns (coefficients left empty).
template <Field K>
JointReduction<K> candidate_from_columns(std::vector<std::vector<PolyVec<K>>> columns);

struct EquationalResult {
  bool holds = false;
  int n = 0;
  int lhs_exponent = 0;           // certified exponent of the left side
  std::int64_t lhs_colength = 0;
  std::int64_t rhs_truncated = 0; // length of F/(RHS + m^(s+1) F)
};

/// S_{n+1}(M_1)..S_{n+1}(M_q) = sum_k S_{n+1}(M_1)..B_k S_n(M_k)..S_{n+1}(M_q).
/// The right side lies in the left one, and equality holds iff the right
/// side has the same length modulo m^(s+1) F, s the left side's exponent.
template <Field K>
EquationalResult verify_equational(const std::vector<Submodule<K>>& ms, const JointReduction<K>& b, int n,
                                   const BROptions& opt = {});

struct SweepResult {
  std::optional<int> number;  // smallest n that holds; empty means NotFound(n_max)
  int n_max = 0;
  std::vector<EquationalResult> steps;
};

template <Field K>
SweepResult joint_reduction_number(const std::vector<Submodule<K>>& ms, const JointReduction<K>& b,
                                   int n_max = kDefaultNMax, const BROptions& opt = {});

struct DeterminantalResult {
  bool holds = false;
  std::optional<int> n;  // first n with P^{n+1} = J P^n
  int n_max = 0;
  std::vector<int> det_orders;
};

/// J = sum_k det(B_k) prod_{j != k} I(M_j) is a reduction of P = prod I(M_j),
/// checked by P^{n+1} = J P^n for n <= n_max.
template <Field K>
DeterminantalResult verify_determinantal(const std::vector<Submodule<K>>& ms, const JointReduction<K>& b,
                                         int n_max = kDefaultNMax, int s_max = kDefaultSMax);

struct FreenessReport {
  std::vector<bool> det_nonzero;
  std::vector<bool> extends_mingen;
};

template <Field K>
FreenessReport freeness_and_minimality_check(const std::vector<Submodule<K>>& ms, const JointReduction<K>& b,
                                             int s_max = kDefaultSMax);

}  // namespace brm
