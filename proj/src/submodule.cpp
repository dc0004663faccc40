#include "brmult/submodule.hpp"

#include <algorithm>

#include "brmult/errors.hpp"
#include "brmult/minimal.hpp"
#include "brmult/minors.hpp"

namespace brm {

template <Field K>
struct Submodule<K>::Cache {
  detail::CertificateCache<K> cert;
  std::once_flag fitting_once;
  std::optional<MIdeal<K>> fitting;
};

template <Field K>
Submodule<K>::Submodule(K field, int nvars, int rank, std::vector<PolyVec<K>> gens, std::optional<int> exponent_hint)
    : field_(std::move(field)), nvars_(nvars), rank_(rank), hint_(exponent_hint), cache_(std::make_shared<Cache>()) {
  if (rank < 0) throw std::invalid_argument("negative rank");
  for (const auto& g : gens) {
    if (static_cast<int>(g.size()) != rank_) throw std::invalid_argument("generator column length differs from rank");
    for (const auto& p : g) {
      if (p.nvars() != nvars_) throw VariableMismatch("module generator has the wrong number of variables");
    }
  }
  gens_ = dedupe_columns(std::move(gens));
}

template <Field K>
Submodule<K> Submodule<K>::free(K field, int nvars, int rank) {
  std::vector<PolyVec<K>> gens;
  for (int i = 0; i < rank; ++i) gens.push_back(unit_vec(field, nvars, rank, i));
  return Submodule(field, nvars, rank, std::move(gens), 0);
}

template <Field K>
Submodule<K> Submodule<K>::from_ideal(const MIdeal<K>& ideal) {
  return Submodule(ideal.field(), ideal.nvars(), 1, ideal.columns(), ideal.known_exponent());
}

template <Field K>
const MIdeal<K>& Submodule<K>::fitting_ideal() const {
  std::call_once(cache_->fitting_once, [&] {
    cache_->fitting.emplace(field_, nvars_, maximal_minors(field_, nvars_, rank_, gens_));
  });
  return *cache_->fitting;
}

template <Field K>
std::optional<int> Submodule<K>::cramer_exponent(int s_max) const {
  return fitting_ideal().mprimary_exponent(s_max);
}

template <Field K>
std::optional<ModuleCertificate<K>> Submodule<K>::certificate(int s_max) const {
  return cached_certificate(cache_->cert, field_, nvars_, rank_, gens_, s_max, hint_);
}

template <Field K>
std::optional<int> Submodule<K>::known_exponent() const {
  std::lock_guard<std::mutex> lock(cache_->cert.mu);
  if (cache_->cert.cert) return cache_->cert.cert->exponent;
  return hint_;
}

template <Field K>
std::int64_t Submodule<K>::colength(int s_max) const {
  auto cert = certificate(s_max);
  if (!cert) throw NotFiniteColength("submodule does not have finite colength", s_max);
  return cert->colength;
}

template <Field K>
bool Submodule<K>::contains(const PolyVec<K>& v, int s_max) const {
  if (static_cast<int>(v.size()) != rank_) throw std::invalid_argument("vector length differs from rank");
  auto cert = certificate(s_max);
  if (!cert) throw NotFiniteColength("membership needs finite colength", s_max);
  return cert->oracle->contains(v, cert->exponent);
}

template <Field K>
bool Submodule<K>::is_contained_in(const Submodule& other, int s_max) const {
  if (rank_ != other.rank_) throw std::invalid_argument("submodules of different free modules");
  return std::all_of(gens_.begin(), gens_.end(), [&](const PolyVec<K>& g) { return other.contains(g, s_max); });
}

template <Field K>
bool Submodule<K>::equals(const Submodule& other, int s_max) const {
  if (rank_ != other.rank_) return false;
  auto a = certificate(s_max);
  auto b = other.certificate(s_max);
  if (a && b && a->colength != b->colength) return false;
  return is_contained_in(other, s_max) && other.is_contained_in(*this, s_max);
}

template <Field K>
std::size_t Submodule<K>::min_generators(int s_max) const {
  if (!certificate(s_max)) throw NotFiniteColength("minimal generators need finite colength", s_max);
  return select_minimal_generators(field_, nvars_, rank_, gens_, s_max, known_exponent()).size();
}

template <Field K>
Submodule<K> Submodule<K>::minimalized(int s_max) const {
  if (!certificate(s_max)) throw NotFiniteColength("minimal generators need finite colength", s_max);
  std::vector<PolyVec<K>> keep;
  for (auto i : select_minimal_generators(field_, nvars_, rank_, gens_, s_max, known_exponent())) {
    keep.push_back(gens_[i]);
  }
  return Submodule(field_, nvars_, rank_, std::move(keep), known_exponent());
}

template <Field K>
std::vector<std::vector<Poly<K>>> Submodule<K>::matrix_rows() const {
  std::vector<std::vector<Poly<K>>> rows(static_cast<std::size_t>(rank_));
  for (const auto& g : gens_) {
    for (int i = 0; i < rank_; ++i) rows[static_cast<std::size_t>(i)].push_back(g[static_cast<std::size_t>(i)]);
  }
  return rows;
}

template <Field K>
Submodule<K> direct_sum(const Submodule<K>& a, const Submodule<K>& b) {
  if (a.nvars() != b.nvars()) throw VariableMismatch("direct sum across rings");
  const int r = a.rank() + b.rank();
  std::vector<PolyVec<K>> gens;
  const Poly<K> zero(a.field(), a.nvars());
  for (const auto& g : a.gens()) {
    PolyVec<K> v = g;
    v.resize(static_cast<std::size_t>(r), zero);
    gens.push_back(std::move(v));
  }
  for (const auto& g : b.gens()) {
    PolyVec<K> v(static_cast<std::size_t>(a.rank()), zero);
    v.insert(v.end(), g.begin(), g.end());
    gens.push_back(std::move(v));
  }
  std::optional<int> hint;
  if (auto sa = a.known_exponent(), sb = b.known_exponent(); sa && sb) hint = std::max(*sa, *sb);
  return Submodule<K>(a.field(), a.nvars(), r, std::move(gens), hint);
}

template <Field K>
Submodule<K> scalar_extend(const MIdeal<K>& ideal, const Submodule<K>& m) {
  if (ideal.nvars() != m.nvars()) throw VariableMismatch("ideal and module over different rings");
  std::vector<PolyVec<K>> gens;
  for (const auto& f : ideal.gens()) {
    for (const auto& g : m.gens()) {
      PolyVec<K> v;
      for (const auto& p : g) v.push_back(f * p);
      gens.push_back(std::move(v));
    }
  }
  std::optional<int> hint;
  if (auto si = ideal.known_exponent(), sm = m.known_exponent(); si && sm) hint = *si + *sm;
  return Submodule<K>(m.field(), m.nvars(), m.rank(), std::move(gens), hint);
}

template <Field K>
Submodule<K> submodule_sum(const Submodule<K>& a, const Submodule<K>& b) {
  if (a.rank() != b.rank()) throw std::invalid_argument("sum of submodules of different free modules");
  auto gens = a.gens();
  gens.insert(gens.end(), b.gens().begin(), b.gens().end());
  std::optional<int> hint;
  auto sa = a.known_exponent();
  auto sb = b.known_exponent();
  if (sa && sb) {
    hint = std::min(*sa, *sb);
  } else {
    hint = sa ? sa : sb;
  }
  return Submodule<K>(a.field(), a.nvars(), a.rank(), std::move(gens), hint);
}

#define BRM_INSTANTIATE_SUBMODULE(K)                                              \
  template class Submodule<K>;                                                    \
  template Submodule<K> direct_sum<K>(const Submodule<K>&, const Submodule<K>&);  \
  template Submodule<K> scalar_extend<K>(const MIdeal<K>&, const Submodule<K>&);  \
  template Submodule<K> submodule_sum<K>(const Submodule<K>&, const Submodule<K>&);

BRM_INSTANTIATE_SUBMODULE(PrimeField)
BRM_INSTANTIATE_SUBMODULE(RationalField)

}  // namespace brm
