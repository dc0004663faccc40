#include "brmult/localring.hpp"

#include <algorithm>
#include <set>

#include "brmult/errors.hpp"
#include "brmult/minimal.hpp"

namespace brm {

namespace {

template <Field K>
int compare_poly(const Poly<K>& a, const Poly<K>& b) {
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  if (ta.size() != tb.size()) return ta.size() < tb.size() ? -1 : 1;
  for (std::size_t i = 0; i < ta.size(); ++i) {
    if (ta[i].mono != tb[i].mono) return ta[i].mono < tb[i].mono ? -1 : 1;
    if (ta[i].coeff != tb[i].coeff) return ta[i].coeff < tb[i].coeff ? -1 : 1;
  }
  return 0;
}

template <Field K>
struct ColumnLess {
  bool operator()(const PolyVec<K>& a, const PolyVec<K>& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
      const int c = compare_poly(a[i], b[i]);
      if (c != 0) return c < 0;
    }
    return false;
  }
};

template <Field K>
PolyVec<K> normalized(const PolyVec<K>& v) {
  for (const auto& p : v) {
    if (p.is_zero()) continue;
    const auto& k = p.field();
    const auto inv = k.inv(p.terms().front().coeff);
    PolyVec<K> out;
    out.reserve(v.size());
    for (const auto& q : v) out.push_back(q.scale(inv));
    return out;
  }
  return v;
}

// Pure powers x_i^{a_i} among monomial generators put m^{sum(a_i - 1) + 1}
// inside the ideal.
template <Field K>
std::optional<int> pure_power_exponent(const std::vector<Poly<K>>& gens, int nvars) {
  std::vector<int> pure(static_cast<std::size_t>(nvars), 0);
  for (const auto& g : gens) {
    const auto& m = g.terms().front().mono;
    int support = -1;
    int count = 0;
    for (int i = 0; i < nvars; ++i) {
      if (m[i] > 0) {
        support = i;
        ++count;
      }
    }
    if (count == 0) return 0;
    auto& a = pure[static_cast<std::size_t>(support)];
    if (count == 1 && (a == 0 || m[support] < a)) a = m[support];
  }
  int s = 1;
  for (int a : pure) {
    if (a == 0) return std::nullopt;
    s += a - 1;
  }
  return s;
}

}  // namespace

template <Field K>
std::vector<PolyVec<K>> dedupe_columns(std::vector<PolyVec<K>> cols) {
  std::set<PolyVec<K>, ColumnLess<K>> seen;
  std::vector<PolyVec<K>> out;
  out.reserve(cols.size());
  for (auto& c : cols) {
    if (is_zero_vec(c)) continue;
    if (seen.insert(normalized(c)).second) out.push_back(std::move(c));
  }
  return out;
}

template <Field K>
std::optional<ModuleCertificate<K>> cached_certificate(detail::CertificateCache<K>& cache, const K& field, int nvars,
                                                       int rank, const std::vector<PolyVec<K>>& gens, int s_max,
                                                       std::optional<int> hint) {
  {
    std::lock_guard<std::mutex> lock(cache.mu);
    if (cache.cert) return cache.cert;
    if (s_max <= cache.failed_bound) return std::nullopt;
  }
  auto cert = certify_module(field, nvars, rank, gens, s_max, hint);
  std::lock_guard<std::mutex> lock(cache.mu);
  if (cert) {
    cache.cert = cert;
  } else {
    cache.failed_bound = std::max(cache.failed_bound, s_max);
  }
  return cert;
}

template <Field K>
MIdeal<K>::MIdeal(K field, int nvars, std::vector<Poly<K>> gens, std::optional<int> exponent_hint)
    : field_(std::move(field)), nvars_(nvars), hint_(exponent_hint),
      cache_(std::make_shared<detail::CertificateCache<K>>()) {
  std::vector<PolyVec<K>> cols;
  cols.reserve(gens.size());
  for (auto& g : gens) {
    if (g.nvars() != nvars_) throw VariableMismatch("ideal generator has the wrong number of variables");
    cols.push_back(PolyVec<K>{std::move(g)});
  }
  for (auto& c : dedupe_columns(std::move(cols))) gens_.push_back(std::move(c.front()));
  if (!hint_ && is_monomial()) hint_ = pure_power_exponent(gens_, nvars_);
}

template <Field K>
MIdeal<K> MIdeal<K>::unit(K field, int nvars) {
  auto one = Poly<K>::constant(field, nvars, field.one());
  return MIdeal(field, nvars, {one}, 0);
}

template <Field K>
MIdeal<K> MIdeal<K>::maximal(K field, int nvars) {
  return maximal_power(std::move(field), nvars, 1);
}

template <Field K>
MIdeal<K> MIdeal<K>::maximal_power(K field, int nvars, int s) {
  return monomial(field, nvars, monomials_of_degree(nvars, s));
}

template <Field K>
MIdeal<K> MIdeal<K>::monomial(K field, int nvars, const std::vector<Monomial>& monos) {
  std::vector<Poly<K>> gens;
  gens.reserve(monos.size());
  for (const auto& m : monos) gens.push_back(Poly<K>::term(field, nvars, m, field.one()));
  return MIdeal(field, nvars, std::move(gens));
}

template <Field K>
bool MIdeal<K>::is_monomial() const {
  return std::all_of(gens_.begin(), gens_.end(), [](const Poly<K>& p) { return p.is_monomial(); });
}

template <Field K>
int MIdeal<K>::ord() const {
  int o = kInfiniteOrder;
  for (const auto& g : gens_) o = std::min(o, g.ord());
  return o;
}

template <Field K>
std::vector<PolyVec<K>> MIdeal<K>::columns() const {
  std::vector<PolyVec<K>> cols;
  cols.reserve(gens_.size());
  for (const auto& g : gens_) cols.push_back(PolyVec<K>{g});
  return cols;
}

template <Field K>
std::optional<ModuleCertificate<K>> MIdeal<K>::certificate(int s_max) const {
  return cached_certificate(*cache_, field_, nvars_, 1, columns(), s_max, hint_);
}

template <Field K>
std::optional<int> MIdeal<K>::known_exponent() const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  if (cache_->cert) return cache_->cert->exponent;
  return hint_;
}

template <Field K>
std::optional<int> MIdeal<K>::mprimary_exponent(int s_max) const {
  if (s_max < 1) throw std::invalid_argument("s_max must be at least 1");
  auto cert = certificate(s_max);
  if (!cert) return std::nullopt;
  return cert->exponent;
}

template <Field K>
std::int64_t MIdeal<K>::colength(int s_max) const {
  auto cert = certificate(s_max);
  if (!cert) throw NotFiniteColength("ideal is not m-primary", s_max);
  return cert->colength;
}

template <Field K>
bool MIdeal<K>::contains(const Poly<K>& f, int s_max) const {
  auto cert = certificate(s_max);
  if (!cert) throw NotFiniteColength("membership needs an m-primary ideal", s_max);
  return cert->oracle->contains(PolyVec<K>{f}, cert->exponent);
}

template <Field K>
bool MIdeal<K>::is_contained_in(const MIdeal& other, int s_max) const {
  return std::all_of(gens_.begin(), gens_.end(), [&](const Poly<K>& g) { return other.contains(g, s_max); });
}

template <Field K>
bool MIdeal<K>::equals(const MIdeal& other, int s_max) const {
  return is_contained_in(other, s_max) && other.is_contained_in(*this, s_max);
}

template <Field K>
MIdeal<K> MIdeal<K>::minimalized(int s_max) const {
  if (is_monomial()) {
    std::vector<Monomial> monos;
    for (const auto& g : gens_) monos.push_back(g.terms().front().mono);
    std::sort(monos.begin(), monos.end());
    std::vector<Monomial> keep;
    for (const auto& m : monos) {
      if (std::none_of(keep.begin(), keep.end(), [&](const Monomial& g) { return g.divides(m); })) keep.push_back(m);
    }
    MIdeal out = monomial(field_, nvars_, keep);
    out.hint_ = known_exponent();
    return out;
  }
  const auto idx = select_minimal_generators(field_, nvars_, 1, columns(), s_max, known_exponent());
  std::vector<Poly<K>> keep;
  for (auto i : idx) keep.push_back(gens_[i]);
  return MIdeal(field_, nvars_, std::move(keep), known_exponent());
}

template <Field K>
MIdeal<K> ideal_product(const MIdeal<K>& a, const MIdeal<K>& b) {
  if (a.nvars() != b.nvars()) throw VariableMismatch("ideal product across rings");
  std::vector<Poly<K>> gens;
  gens.reserve(a.num_generators() * b.num_generators());
  for (const auto& f : a.gens()) {
    for (const auto& g : b.gens()) gens.push_back(f * g);
  }
  std::optional<int> hint;
  if (auto sa = a.known_exponent(), sb = b.known_exponent(); sa && sb) hint = *sa + *sb;
  MIdeal<K> out(a.field(), a.nvars(), std::move(gens), hint);
  return out.is_monomial() ? out.minimalized() : out;
}

template <Field K>
MIdeal<K> ideal_power(const MIdeal<K>& a, int n) {
  if (n < 0) throw std::invalid_argument("negative ideal power");
  MIdeal<K> acc = MIdeal<K>::unit(a.field(), a.nvars());
  for (int i = 0; i < n; ++i) acc = ideal_product(acc, a);
  return acc;
}

template <Field K>
MIdeal<K> ideal_sum(const MIdeal<K>& a, const MIdeal<K>& b) {
  if (a.nvars() != b.nvars()) throw VariableMismatch("ideal sum across rings");
  std::vector<Poly<K>> gens = a.gens();
  gens.insert(gens.end(), b.gens().begin(), b.gens().end());
  std::optional<int> hint;
  auto sa = a.known_exponent();
  auto sb = b.known_exponent();
  if (sa && sb) {
    hint = std::min(*sa, *sb);
  } else if (sa) {
    hint = sa;
  } else {
    hint = sb;
  }
  return MIdeal<K>(a.field(), a.nvars(), std::move(gens), hint);
}

#define BRM_INSTANTIATE_LOCALRING(K)                                                                           \
  template class MIdeal<K>;                                                                                    \
  template MIdeal<K> ideal_product<K>(const MIdeal<K>&, const MIdeal<K>&);                                     \
  template MIdeal<K> ideal_power<K>(const MIdeal<K>&, int);                                                    \
  template MIdeal<K> ideal_sum<K>(const MIdeal<K>&, const MIdeal<K>&);                                         \
  template std::vector<PolyVec<K>> dedupe_columns<K>(std::vector<PolyVec<K>>);                                \
  template std::optional<ModuleCertificate<K>> cached_certificate<K>(detail::CertificateCache<K>&, const K&,   \
                                                                     int, int, const std::vector<PolyVec<K>>&, \
                                                                     int, std::optional<int>);

BRM_INSTANTIATE_LOCALRING(PrimeField)
BRM_INSTANTIATE_LOCALRING(RationalField)

}  // namespace brm
