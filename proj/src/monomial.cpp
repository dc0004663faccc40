#include "brmult/monomial.hpp"

#include <stdexcept>

namespace brm {

Monomial::Monomial(std::initializer_list<int> exps) {
  if (exps.size() > kMaxVars) throw std::invalid_argument("too many variables");
  int i = 0;
  for (int e : exps) set(i++, e);
}

Monomial::Monomial(std::span<const int> exps) {
  if (exps.size() > kMaxVars) throw std::invalid_argument("too many variables");
  for (std::size_t i = 0; i < exps.size(); ++i) set(static_cast<int>(i), exps[i]);
}

Monomial Monomial::variable(int i) {
  Monomial m;
  m.set(i, 1);
  return m;
}

void Monomial::set(int i, int v) {
  if (v < 0 || v > 255) throw std::out_of_range("exponent out of range [0, 255]");
  if (i < 0 || i >= kMaxVars) throw std::out_of_range("variable index out of range");
  deg_ = static_cast<std::uint16_t>(deg_ - e_[static_cast<std::size_t>(i)] + v);
  e_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v);
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial m;
  for (std::size_t i = 0; i < e_.size(); ++i) {
    int v = e_[i] + o.e_[i];
    if (v > 255) throw std::overflow_error("monomial exponent overflow");
    m.e_[i] = static_cast<std::uint8_t>(v);
  }
  m.deg_ = static_cast<std::uint16_t>(deg_ + o.deg_);
  return m;
}

bool Monomial::divides(const Monomial& o) const {
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (e_[i] > o.e_[i]) return false;
  }
  return true;
}

Monomial Monomial::quotient_of(const Monomial& o) const {
  Monomial m;
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (e_[i] > o.e_[i]) throw std::domain_error("monomial does not divide");
    m.e_[i] = static_cast<std::uint8_t>(o.e_[i] - e_[i]);
  }
  m.deg_ = static_cast<std::uint16_t>(o.deg_ - deg_);
  return m;
}

std::uint64_t Monomial::key() const {
  std::uint64_t k = 0;
  for (std::size_t i = 0; i < e_.size(); ++i) k |= static_cast<std::uint64_t>(e_[i]) << (8 * i);
  return k;
}

std::string Monomial::to_string(const std::vector<std::string>& names) const {
  std::string out;
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (e_[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += i < names.size() ? names[i] : "x" + std::to_string(i + 1);
    if (e_[i] > 1) out += '^' + std::to_string(e_[i]);
  }
  return out.empty() ? "1" : out;
}

namespace {

void enumerate(int nvars, int var, int remaining, std::vector<int>& exps, std::vector<Monomial>& out) {
  if (var == nvars - 1) {
    exps[static_cast<std::size_t>(var)] = remaining;
    out.emplace_back(std::span<const int>(exps));
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    exps[static_cast<std::size_t>(var)] = e;
    enumerate(nvars, var + 1, remaining - e, exps, out);
  }
}

}  // namespace

std::vector<Monomial> monomials_of_degree(int nvars, int t) {
  std::vector<Monomial> out;
  if (nvars <= 0) {
    if (t == 0) out.emplace_back();
    return out;
  }
  std::vector<int> exps(static_cast<std::size_t>(nvars), 0);
  enumerate(nvars, 0, t, exps, out);
  return out;
}

std::int64_t count_monomials_below(int nvars, int t) {
  // binom(t - 1 + n, n)
  if (t <= 0) return 0;
  std::int64_t r = 1;
  for (int i = 1; i <= nvars; ++i) r = r * (t - 1 + i) / i;
  return r;
}

TruncationLayout::TruncationLayout(int nvars, int rank, int truncation)
    : nvars_(nvars), rank_(rank), truncation_(truncation) {
  if (nvars < 0 || nvars > kMaxVars) throw std::invalid_argument("bad variable count");
  if (rank < 1) throw std::invalid_argument("ambient rank must be positive");
  if (truncation < 0) throw std::invalid_argument("negative truncation");
  degree_start_.push_back(0);
  for (int t = 0; t < truncation; ++t) {
    for (auto& m : monomials_of_degree(nvars, t)) {
      index_.emplace(m.key(), monos_.size());
      monos_.push_back(m);
    }
    degree_start_.push_back(monos_.size());
  }
  shift_.assign(static_cast<std::size_t>(nvars), std::vector<std::ptrdiff_t>(monos_.size(), -1));
  for (int v = 0; v < nvars; ++v) {
    const Monomial xv = Monomial::variable(v);
    for (std::size_t i = 0; i < monos_.size(); ++i) {
      shift_[static_cast<std::size_t>(v)][i] = index_of(monos_[i] * xv);
    }
  }
}

std::size_t TruncationLayout::prefix(int t) const {
  if (t < 0 || t > truncation_) throw std::out_of_range("prefix degree outside truncation");
  return degree_start_[static_cast<std::size_t>(t)] * static_cast<std::size_t>(rank_);
}

std::ptrdiff_t TruncationLayout::index_of(const Monomial& m) const {
  if (m.degree() >= truncation_) return -1;
  auto it = index_.find(m.key());
  return it == index_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

}  // namespace brm
