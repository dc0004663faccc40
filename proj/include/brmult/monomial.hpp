#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace brm {

inline constexpr int kMaxVars = 8;

/// Exponent vector of a monomial in at most kMaxVars variables.
///
/// Ordering is graded: total degree first, then lexicographically *larger*
/// exponent tuples first, so in k[x,y] the degree-2 monomials come out as
/// x^2, xy, y^2.
class Monomial {
 public:
  Monomial() = default;
  Monomial(std::initializer_list<int> exps);
  explicit Monomial(std::span<const int> exps);

  static Monomial variable(int i);

  int operator[](int i) const { return e_[static_cast<std::size_t>(i)]; }
  int degree() const { return deg_; }

  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  /// o / *this; requires divides(o).
  Monomial quotient_of(const Monomial& o) const;

  std::uint64_t key() const;

  bool operator==(const Monomial& o) const { return e_ == o.e_; }
  std::strong_ordering operator<=>(const Monomial& o) const {
    if (deg_ != o.deg_) return deg_ <=> o.deg_;
    for (std::size_t i = 0; i < e_.size(); ++i) {
      if (e_[i] != o.e_[i]) return o.e_[i] <=> e_[i];
    }
    return std::strong_ordering::equal;
  }

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  void set(int i, int v);
  std::array<std::uint8_t, kMaxVars> e_{};
  std::uint16_t deg_ = 0;
};

/// All monomials of degree exactly t in n variables, in graded order.
std::vector<Monomial> monomials_of_degree(int nvars, int t);

/// Number of monomials of degree < t in n variables: binom(t - 1 + n, n).
std::int64_t count_monomials_below(int nvars, int t);

/// Coordinates of F/m^T F for F = R^rank: all monomials of degree < T, each
/// paired with every basis vector. Coordinate index = mono_index * rank +
/// component, so coordinates are sorted by degree.
class TruncationLayout {
 public:
  TruncationLayout(int nvars, int rank, int truncation);

  int nvars() const { return nvars_; }
  int rank() const { return rank_; }
  int truncation() const { return truncation_; }
  std::size_t num_monomials() const { return monos_.size(); }
  std::size_t dimension() const { return monos_.size() * static_cast<std::size_t>(rank_); }

  /// Number of coordinates of degree < t (t <= truncation).
  std::size_t prefix(int t) const;

  const Monomial& monomial(std::size_t idx) const { return monos_[idx]; }
  /// -1 when the monomial has degree >= truncation.
  std::ptrdiff_t index_of(const Monomial& m) const;
  /// Index of x_var * monomial(idx), or -1 when it leaves the truncation.
  std::ptrdiff_t shifted(int var, std::size_t idx) const {
    return shift_[static_cast<std::size_t>(var)][idx];
  }
  int degree_of_coordinate(std::size_t coord) const {
    return monos_[coord / static_cast<std::size_t>(rank_)].degree();
  }

 private:
  int nvars_;
  int rank_;
  int truncation_;
  std::vector<Monomial> monos_;
  std::vector<std::size_t> degree_start_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
  std::vector<std::vector<std::ptrdiff_t>> shift_;
};

}  // namespace brm
