#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "brmult/submodule.hpp"

namespace brm {

/// Endomorphism of R^r by its matrix in the standard basis; the determinant is
/// computed exactly at construction.
template <Field K>
class Endo {
 public:
  /// rows[i][j] = entry (i, j).
  Endo(K field, int nvars, std::vector<std::vector<Poly<K>>> rows);
  /// Matrix whose j-th column is cols[j]; requires a square shape.
  static Endo from_columns(K field, int nvars, const std::vector<PolyVec<K>>& cols);

  const K& field() const { return field_; }
  int nvars() const { return nvars_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  const std::vector<std::vector<Poly<K>>>& rows() const { return rows_; }
  std::vector<PolyVec<K>> columns() const;
  const Poly<K>& det() const { return det_; }
  /// Submodule im(phi) of R^r (zero columns dropped).
  Submodule<K> image() const;

 private:
  K field_;
  int nvars_;
  std::vector<std::vector<Poly<K>>> rows_;
  Poly<K> det_;
};

/// (det phi_1, ..., det phi_q).
template <Field K>
MIdeal<K> determinant_ideal(const std::vector<Endo<K>>& phis);

struct H0Result {
  std::int64_t length = 0;
  int det_exponent = 0;     // m^s inside the determinant ideal
  int module_exponent = 0;  // certified exponent of the layer sum
};

/// Length of F_1/im(phi_1) (x) ... (x) F_q/im(phi_q), as the colength of the
/// layer sum of F_1 (x) .. im(phi_k) .. (x) F_q. Throws NotFiniteColength
/// unless the determinant ideal certifies as m-primary.
template <Field K>
H0Result h0_length(const std::vector<Endo<K>>& phis, int s_max = kDefaultSMax);

/// Layer-sum submodule used by h0_length.
template <Field K>
Submodule<K> h0_submodule(const std::vector<Endo<K>>& phis, std::optional<int> exponent_hint = std::nullopt);

/// Colength of the determinant ideal; needs exactly d endomorphisms.
template <Field K>
std::int64_t det_koszul_colength(const std::vector<Endo<K>>& phis, int s_max = kDefaultSMax);

struct ComparisonReport {
  std::int64_t h0 = 0;
  std::int64_t det_colength = 0;
  bool equal = false;
  int det_exponent = 0;
  int module_exponent = 0;
};

template <Field K>
ComparisonReport verify_comparison(const std::vector<Endo<K>>& phis, int s_max = kDefaultSMax);

/// Endo whose columns are the generators of B; B must have exactly rank(B)
/// generator columns.
template <Field K>
Endo<K> endo_from_joint_reduction(const Submodule<K>& b);

struct RandomEndoOptions {
  int max_rank = 3;
  int max_degree = 2;
  int attempts = 200;
  int s_max = kDefaultSMax;
};

/// count endomorphisms with small integer coefficients; diagonal entries have
/// no constant term. Redrawn until the determinant ideal is m-primary (so
/// count must be at least nvars). Throws NotFiniteColength when every attempt
/// fails.
template <Field K>
std::vector<Endo<K>> random_endo_family(std::mt19937_64& rng, const K& field, int nvars, int count,
                                        const RandomEndoOptions& opt = {});

}  // namespace brm
