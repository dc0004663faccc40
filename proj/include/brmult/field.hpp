#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace brm {

inline constexpr std::uint32_t kDefaultPrime = 32003;

/// Prime field F_p with a runtime modulus. Elements are canonical residues
/// in [0, p). The modulus must be a prime in (10^4, 2^31).
class PrimeField {
 public:
  using Element = std::uint32_t;

  explicit PrimeField(std::uint32_t p = kDefaultPrime);

  std::uint32_t prime() const { return p_; }
  std::string name() const { return "fp:" + std::to_string(p_); }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<Element>(r);
  }
  bool is_zero(Element a) const { return a == 0; }
  bool is_one(Element a) const { return a == 1; }

  Element add(Element a, Element b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Element sub(Element a, Element b) const { return a >= b ? a - b : a + p_ - b; }
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element mul(Element a, Element b) const {
    return static_cast<Element>(static_cast<std::uint64_t>(a) * b % p_);
  }
  Element inv(Element a) const;
  Element div(Element a, Element b) const { return mul(a, inv(b)); }

  /// Uniform draw from the field. Uses rejection sampling on raw 64-bit
  /// output so the sequence is identical on every standard library.
  Element random(std::mt19937_64& rng) const;

  /// Symmetric lift to (-p/2, p/2], used for printing.
  std::int64_t lift(Element a) const {
    return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : static_cast<std::int64_t>(a);
  }
  std::string to_string(Element a) const { return std::to_string(lift(a)); }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  std::uint32_t p_;
};

/// The rationals, backed by GMP. Exact but slow; meant for certification runs
/// on small instances.
class RationalField {
 public:
  using Element = mpq_class;

  /// Random draws are integers in [-kRandomBound, kRandomBound].
  static constexpr std::int64_t kRandomBound = 1 << 15;

  std::string name() const { return "q"; }

  Element zero() const { return Element(0); }
  Element one() const { return Element(1); }
  Element from_int(std::int64_t v) const { return Element(static_cast<long>(v)); }
  bool is_zero(const Element& a) const { return sgn(a) == 0; }
  bool is_one(const Element& a) const { return a == 1; }

  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element neg(const Element& a) const { return -a; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element inv(const Element& a) const {
    if (sgn(a) == 0) throw std::domain_error("inverse of zero");
    return Element(1) / a;
  }
  Element div(const Element& a, const Element& b) const { return a / b; }

  Element random(std::mt19937_64& rng) const;

  std::string to_string(const Element& a) const { return a.get_str(); }

  bool operator==(const RationalField&) const { return true; }
};

bool is_prime(std::uint64_t n);

/// Uniform integer in [0, bound) from raw engine output (no std distributions,
/// whose output is implementation-defined).
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

template <class K>
concept Field = requires(const K& k, typename K::Element a) {
  { k.add(a, a) } -> std::convertible_to<typename K::Element>;
  { k.mul(a, a) } -> std::convertible_to<typename K::Element>;
  { k.inv(a) } -> std::convertible_to<typename K::Element>;
  { k.is_zero(a) } -> std::convertible_to<bool>;
  { k.name() } -> std::convertible_to<std::string>;
};

}  // namespace brm
