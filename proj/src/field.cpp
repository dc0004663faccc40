#include "brmult/field.hpp"

#include <limits>

namespace brm {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) return false;
  }
  return true;
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p <= 10000 || p >= (1u << 31) || !is_prime(p)) {
    throw std::invalid_argument("field modulus must be a prime in (10^4, 2^31), got " +
                                std::to_string(p));
  }
}

PrimeField::Element PrimeField::inv(Element a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p_, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += p_;
  return static_cast<Element>(t);
}

PrimeField::Element PrimeField::random(std::mt19937_64& rng) const {
  return static_cast<Element>(uniform_below(rng, p_));
}

RationalField::Element RationalField::random(std::mt19937_64& rng) const {
  const auto span = static_cast<std::uint64_t>(2 * kRandomBound + 1);
  auto v = static_cast<std::int64_t>(uniform_below(rng, span)) - kRandomBound;
  return Element(static_cast<long>(v));
}

}  // namespace brm
