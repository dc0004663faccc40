#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "brmult/submodule.hpp"

namespace brm {

inline constexpr std::size_t kDefaultGeneratorCap = 20000;

/// Monomial basis of S_{n_1}(F_1) ... S_{n_q}(F_q), F_k = R^{r_k}. Each factor
/// lists exponent tuples of size r_k summing to n_k in lexicographically
/// descending order (T_1^n first); the product basis is factor-major.
class SymBasis {
 public:
  SymBasis(std::vector<int> ranks, std::vector<int> degrees);

  const std::vector<int>& ranks() const { return ranks_; }
  const std::vector<int>& degrees() const { return degrees_; }
  std::size_t size() const { return size_; }
  std::size_t factor_size(std::size_t k) const { return factors_[k].size(); }
  const std::vector<std::vector<int>>& factor(std::size_t k) const { return factors_[k]; }

  /// Index of an exponent tuple inside factor k.
  std::size_t index_in_factor(std::size_t k, const std::vector<int>& exps) const;
  /// Product index from per-factor indices.
  std::size_t index(const std::vector<std::size_t>& per_factor) const;

  /// Exponent tuples of size r summing to n, lexicographically descending.
  static std::vector<std::vector<int>> tuples(int r, int n);

 private:
  std::vector<int> ranks_;
  std::vector<int> degrees_;
  std::vector<std::vector<std::vector<int>>> factors_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 1;
};

/// S_n(M) inside S_n(F): products of n generator columns read as linear forms.
template <Field K>
Submodule<K> sym_power(const Submodule<K>& m, int n, std::size_t cap = kDefaultGeneratorCap);

/// S_{n_1}(M_1) ... S_{n_q}(M_q) inside the product of the S_{n_k}(F_k).
/// Throws GeneratorOverflow past cap columns.
template <Field K>
Submodule<K> graded_product(const std::vector<Submodule<K>>& ms, const std::vector<int>& ns,
                            std::size_t cap = kDefaultGeneratorCap);

/// Tensor product of submodules M_k of F_k inside F_1 (x) ... (x) F_q
/// (factor-major basis): all products of one generator per factor.
template <Field K>
Submodule<K> tensor_product(const std::vector<Submodule<K>>& factors, std::size_t cap = kDefaultGeneratorCap);

/// A B inside S_{p+q}(F) for A in S_p(F), B in S_q(F), F of rank r.
template <Field K>
Submodule<K> sym_multiply(const Submodule<K>& a, int p, const Submodule<K>& b, int q, int r,
                          std::size_t cap = kDefaultGeneratorCap);

/// Values of f(n_1..n_q) = length of the product quotient on a box window.
struct BRTable {
  std::vector<int> origin;
  std::vector<int> extents;           // points per axis
  std::vector<std::int64_t> values;   // row-major, last axis fastest
  int d = 0;
  std::vector<int> ranks;

  std::size_t num_axes() const { return origin.size(); }
  std::size_t size() const { return values.size(); }
  /// Coordinates (absolute n) of the i-th value.
  std::vector<int> point(std::size_t i) const;
  std::size_t offset(const std::vector<int>& n) const;
  std::int64_t at(const std::vector<int>& n) const { return values[offset(n)]; }
  std::vector<int> upper() const;

  std::string to_csv() const;
  std::string to_json() const;
};

struct BROptions {
  int s_max = kDefaultSMax;
  std::size_t cap = kDefaultGeneratorCap;
};

template <Field K>
std::int64_t br_function(const std::vector<Submodule<K>>& ms, const std::vector<int>& ns, const BROptions& opt = {});

/// Fills the window [lower, upper] (inclusive) in parallel.
template <Field K>
BRTable br_table(const std::vector<Submodule<K>>& ms, const std::vector<int>& lower, const std::vector<int>& upper,
                 const BROptions& opt = {});

/// Single-threaded fill; same result as br_table.
template <Field K>
BRTable br_table_serial(const std::vector<Submodule<K>>& ms, const std::vector<int>& lower,
                        const std::vector<int>& upper, const BROptions& opt = {});

/// Iterated backward differences; orders[i] applications along axis i. Throws
/// WindowTooSmall unless every axis keeps at least one point.
BRTable finite_difference(const BRTable& table, const std::vector<int>& orders);

struct MixedBR {
  std::int64_t value = 0;
  bool stabilized = false;
  std::vector<int> upper;
  BRTable differenced;
};

/// Delta_1^{r_1} ... Delta_d^{r_d} f at the top corner of the window ending at
/// upper; stabilized iff the differenced table is constant on its last two
/// points per axis. Requires q = d and upper_k >= r_k + 2.
template <Field K>
MixedBR mixed_br(const std::vector<Submodule<K>>& ms, const std::vector<int>& upper, const BROptions& opt = {});

/// Default window corner for mixed_br: r_k + 2 per axis.
template <Field K>
std::vector<int> default_mixed_window(const std::vector<Submodule<K>>& ms);

struct DegreeReport {
  int expected = 0;              // d + sum r_k - q
  bool higher_vanish = false;    // all differences of order expected + 1 vanish
  bool top_nonzero = false;      // some difference of order expected is nonzero
  bool ok() const { return higher_vanish && top_nonzero; }
};

/// Needs at least expected + 2 points on every axis.
DegreeReport degree_check(const BRTable& table);

struct MuTable {
  std::vector<std::size_t> values;  // n = 0..n_max
  int degree_estimate = -1;         // largest D with nonzero D-th difference
};

template <Field K>
MuTable mu_table(const std::vector<Submodule<K>>& ms, int n_max, const BROptions& opt = {});

}  // namespace brm
