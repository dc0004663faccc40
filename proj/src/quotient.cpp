#include "brmult/quotient.hpp"

#include <algorithm>
#include <type_traits>

namespace brm {

template <Field K>
bool QuotientOracle<K>::contains(const PolyVec<K>& v, int t) const {
  const auto nf = normal_form(v, t);
  // Element types differ between fields; compare against a default zero.
  for (const auto& x : nf) {
    if (!(x == Element(0))) return false;
  }
  return true;
}

template <Field K>
std::optional<int> QuotientOracle<K>::stable_exponent() const {
  for (int s = 0; s < truncation(); ++s) {
    if (quotient_length(s + 1) == quotient_length(s)) return s;
  }
  return std::nullopt;
}

template <Field K>
std::vector<typename K::Element> to_coordinates(const K& field, const TruncationLayout& layout,
                                                const PolyVec<K>& v) {
  if (static_cast<int>(v.size()) != layout.rank()) {
    throw std::invalid_argument("vector length " + std::to_string(v.size()) + " does not match ambient rank " +
                                std::to_string(layout.rank()));
  }
  std::vector<typename K::Element> out(layout.dimension(), field.zero());
  const auto r = static_cast<std::size_t>(layout.rank());
  for (std::size_t c = 0; c < v.size(); ++c) {
    for (const auto& t : v[c].terms()) {
      if (t.mono.degree() >= layout.truncation()) break;
      const auto idx = layout.index_of(t.mono);
      out[static_cast<std::size_t>(idx) * r + c] = t.coeff;
    }
  }
  return out;
}

namespace {

/// Echelon basis whose rows store only the tail starting at their pivot.
template <Field K>
class EchelonBasis {
 public:
  using Element = typename K::Element;

  EchelonBasis(const K& field, std::size_t dim) : k_(field), dim_(dim), pivot_of_(dim, -1) {}

  std::size_t size() const { return rows_.size(); }
  std::size_t pivot(std::size_t i) const { return rows_[i].pivot; }
  const std::vector<Element>& tail(std::size_t i) const { return rows_[i].data; }

  /// Reduces coordinates [start, end) of v against rows pivoting there.
  void reduce(std::vector<Element>& v, std::size_t start, std::size_t end) const {
    if constexpr (std::is_same_v<K, PrimeField>) {
      reduce_fp(v, start, end);
    } else {
      for (std::size_t c = start; c < end; ++c) {
        if (k_.is_zero(v[c])) continue;
        const auto r = pivot_of_[c];
        if (r < 0) continue;
        const Element f = v[c];
        const auto& row = rows_[static_cast<std::size_t>(r)].data;
        for (std::size_t j = c; j < end; ++j) {
          if (!k_.is_zero(row[j - c])) v[j] = k_.sub(v[j], k_.mul(f, row[j - c]));
        }
      }
    }
  }

  /// Reduces v fully; appends it as a new row if it is independent. Returns
  /// the new row index, or -1.
  std::ptrdiff_t insert(std::vector<Element> v) {
    std::size_t first = 0;
    while (first < dim_ && k_.is_zero(v[first])) ++first;
    if (first == dim_) return -1;
    reduce(v, first, dim_);
    while (first < dim_ && k_.is_zero(v[first])) ++first;
    if (first == dim_) return -1;
    const Element inv = k_.inv(v[first]);
    std::vector<Element> tail(v.begin() + static_cast<std::ptrdiff_t>(first), v.end());
    for (auto& x : tail) {
      if (!k_.is_zero(x)) x = k_.mul(x, inv);
    }
    rows_.push_back({first, std::move(tail)});
    pivot_of_[first] = static_cast<std::ptrdiff_t>(rows_.size() - 1);
    return static_cast<std::ptrdiff_t>(rows_.size() - 1);
  }

  /// Number of pivots below each cutoff in `cuts` (ascending).
  std::vector<std::size_t> pivots_below(const std::vector<std::size_t>& cuts) const {
    std::vector<std::size_t> out;
    out.reserve(cuts.size());
    for (auto cut : cuts) {
      std::size_t n = 0;
      for (std::size_t c = 0; c < cut && c < dim_; ++c) n += pivot_of_[c] >= 0;
      out.push_back(n);
    }
    return out;
  }

 private:
  struct Row {
    std::size_t pivot;
    std::vector<Element> data;
  };

  // Delayed modular reduction: accumulate in 64 bits and reduce only when a
  // coordinate is inspected or the accumulator could overflow.
  void reduce_fp(std::vector<Element>& v, std::size_t start, std::size_t end) const
    requires std::is_same_v<K, PrimeField>
  {
    const std::uint64_t p = k_.prime();
    const std::uint64_t limit = (~std::uint64_t{0} - p) / ((p - 1) * (p - 1));
    std::vector<std::uint64_t> acc(v.begin() + static_cast<std::ptrdiff_t>(start),
                                   v.begin() + static_cast<std::ptrdiff_t>(end));
    const std::size_t len = end - start;
    std::uint64_t adds = 0;
    for (std::size_t i = 0; i < len; ++i) {
      const std::uint64_t val = acc[i] % p;
      acc[i] = val;
      if (val == 0) continue;
      const auto r = pivot_of_[start + i];
      if (r < 0) continue;
      const std::uint64_t f = p - val;
      const Element* row = rows_[static_cast<std::size_t>(r)].data.data();
      std::uint64_t* dst = acc.data() + i;
      const std::size_t n = len - i;
      dst[0] = 0;
#pragma omp simd
      for (std::size_t j = 1; j < n; ++j) dst[j] += f * row[j];
      if (++adds >= limit) {
        for (std::size_t j = i + 1; j < len; ++j) acc[j] %= p;
        adds = 0;
      }
    }
    for (std::size_t i = 0; i < len; ++i) v[start + i] = static_cast<Element>(acc[i] % p);
  }

  K k_;
  std::size_t dim_;
  std::vector<Row> rows_;
  std::vector<std::ptrdiff_t> pivot_of_;
};

template <Field K>
std::vector<std::size_t> degree_cuts(const TruncationLayout& layout) {
  std::vector<std::size_t> cuts;
  for (int t = 0; t <= layout.truncation(); ++t) cuts.push_back(layout.prefix(t));
  return cuts;
}

/// Shared by the closure and reference oracles: both end in an echelon basis.
template <Field K>
class EchelonOracle : public QuotientOracle<K> {
 public:
  using Element = typename K::Element;

  EchelonOracle(const K& field, std::shared_ptr<const TruncationLayout> layout)
      : QuotientOracle<K>(std::move(layout)), k_(field), basis_(field, this->layout_->dimension()) {}

  std::int64_t quotient_length(int t) const override {
    if (t < 0 || t > this->truncation()) throw std::out_of_range("quotient_length: degree outside truncation");
    const auto idx = static_cast<std::size_t>(t);
    return static_cast<std::int64_t>(this->layout_->prefix(t)) - static_cast<std::int64_t>(below_[idx]);
  }

  std::vector<Element> normal_form(const PolyVec<K>& v, int t) const override {
    if (t < 0 || t > this->truncation()) throw std::out_of_range("normal_form: degree outside truncation");
    auto coords = to_coordinates(k_, *this->layout_, v);
    const std::size_t cut = this->layout_->prefix(t);
    basis_.reduce(coords, 0, cut);
    coords.resize(cut);
    return coords;
  }

 protected:
  void finish() { below_ = basis_.pivots_below(degree_cuts<K>(*this->layout_)); }

  K k_;
  EchelonBasis<K> basis_;
  std::vector<std::size_t> below_;
};

template <Field K>
class ClosureOracle final : public EchelonOracle<K> {
 public:
  using Element = typename K::Element;

  ClosureOracle(const K& field, std::shared_ptr<const TruncationLayout> layout, const std::vector<PolyVec<K>>& gens)
      : EchelonOracle<K>(field, std::move(layout)) {
    const auto& lay = *this->layout_;
    const int nvars = lay.nvars();
    std::vector<std::pair<std::size_t, int>> work;
    auto push = [&](std::ptrdiff_t row) {
      if (row < 0) return;
      for (int v = 0; v < nvars; ++v) work.emplace_back(static_cast<std::size_t>(row), v);
    };
    for (const auto& g : gens) push(this->basis_.insert(to_coordinates(this->k_, lay, g)));
    const auto r = static_cast<std::size_t>(lay.rank());
    const std::size_t dim = lay.dimension();
    for (std::size_t head = 0; head < work.size(); ++head) {
      const auto [row, var] = work[head];
      const std::size_t piv = this->basis_.pivot(row);
      const auto& tail = this->basis_.tail(row);
      std::vector<Element> w(dim, this->k_.zero());
      bool any = false;
      for (std::size_t j = piv; j < dim; ++j) {
        const auto& e = tail[j - piv];
        if (this->k_.is_zero(e)) continue;
        const auto s = lay.shifted(var, j / r);
        if (s < 0) continue;
        w[static_cast<std::size_t>(s) * r + j % r] = e;
        any = true;
      }
      if (any) push(this->basis_.insert(std::move(w)));
    }
    this->finish();
  }
};

template <Field K>
class ReferenceOracle final : public EchelonOracle<K> {
 public:
  ReferenceOracle(const K& field, std::shared_ptr<const TruncationLayout> layout,
                  const std::vector<PolyVec<K>>& gens)
      : EchelonOracle<K>(field, std::move(layout)) {
    const auto& lay = *this->layout_;
    const int trunc = lay.truncation();
    DenseMatrix<K> big(field, 0, lay.dimension());
    for (const auto& g : gens) {
      const int o = ord_vec(g);
      if (o >= trunc) continue;
      for (std::size_t a = 0; a < lay.num_monomials(); ++a) {
        const Monomial& mono = lay.monomial(a);
        if (mono.degree() + o >= trunc) break;
        PolyVec<K> shifted;
        shifted.reserve(g.size());
        for (const auto& p : g) shifted.push_back(p.times_monomial(mono));
        big.append_row(to_coordinates(field, lay, shifted));
      }
    }
    const auto red = rref_serial(big);
    for (std::size_t i = 0; i < red.rank; ++i) {
      const auto row = red.reduced.row(i);
      this->basis_.insert(std::vector<typename K::Element>(row.begin(), row.end()));
    }
    this->finish();
  }
};

template <Field K>
class StaircaseOracle final : public QuotientOracle<K> {
 public:
  using Element = typename K::Element;

  StaircaseOracle(const K& field, std::shared_ptr<const TruncationLayout> layout,
                  const std::vector<PolyVec<K>>& gens)
      : QuotientOracle<K>(std::move(layout)), k_(field) {
    const auto& lay = *this->layout_;
    const auto r = static_cast<std::size_t>(lay.rank());
    std::vector<std::vector<Monomial>> per_comp(r);
    for (const auto& g : gens) {
      for (std::size_t c = 0; c < r; ++c) {
        if (g[c].is_zero()) continue;
        if (!g[c].is_monomial()) throw std::invalid_argument("staircase oracle needs monomial generators");
        const Monomial& m = g[c].terms().front().mono;
        if (m.degree() < lay.truncation()) per_comp[c].push_back(m);
      }
    }
    in_module_.assign(lay.dimension(), false);
    for (std::size_t c = 0; c < r; ++c) {
      auto& list = per_comp[c];
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
      std::vector<Monomial> minimal;
      for (const auto& m : list) {
        bool redundant = std::any_of(minimal.begin(), minimal.end(), [&](const Monomial& g) { return g.divides(m); });
        if (!redundant) minimal.push_back(m);
      }
      for (std::size_t idx = 0; idx < lay.num_monomials(); ++idx) {
        const Monomial& mono = lay.monomial(idx);
        for (const auto& g : minimal) {
          if (g.divides(mono)) {
            in_module_[idx * r + c] = true;
            break;
          }
        }
      }
    }
    for (int t = 0; t <= lay.truncation(); ++t) {
      std::size_t cut = lay.prefix(t);
      std::int64_t outside = 0;
      for (std::size_t j = 0; j < cut; ++j) outside += !in_module_[j];
      lengths_.push_back(outside);
    }
  }

  std::int64_t quotient_length(int t) const override {
    if (t < 0 || t > this->truncation()) throw std::out_of_range("quotient_length: degree outside truncation");
    return lengths_[static_cast<std::size_t>(t)];
  }

  std::vector<Element> normal_form(const PolyVec<K>& v, int t) const override {
    auto coords = to_coordinates(k_, *this->layout_, v);
    const std::size_t cut = this->layout_->prefix(t);
    coords.resize(cut);
    for (std::size_t j = 0; j < cut; ++j) {
      if (in_module_[j]) coords[j] = k_.zero();
    }
    return coords;
  }

 private:
  K k_;
  std::vector<bool> in_module_;
  std::vector<std::int64_t> lengths_;
};

}  // namespace

template <Field K>
std::unique_ptr<QuotientOracle<K>> make_closure_oracle(const K& field, std::shared_ptr<const TruncationLayout> layout,
                                                       const std::vector<PolyVec<K>>& gens) {
  return std::make_unique<ClosureOracle<K>>(field, std::move(layout), gens);
}

template <Field K>
std::unique_ptr<QuotientOracle<K>> make_staircase_oracle(const K& field,
                                                         std::shared_ptr<const TruncationLayout> layout,
                                                         const std::vector<PolyVec<K>>& gens) {
  return std::make_unique<StaircaseOracle<K>>(field, std::move(layout), gens);
}

template <Field K>
std::unique_ptr<QuotientOracle<K>> make_reference_oracle(const K& field,
                                                         std::shared_ptr<const TruncationLayout> layout,
                                                         const std::vector<PolyVec<K>>& gens) {
  return std::make_unique<ReferenceOracle<K>>(field, std::move(layout), gens);
}

template <Field K>
std::unique_ptr<QuotientOracle<K>> make_oracle(const K& field, int nvars, int rank, int truncation,
                                               const std::vector<PolyVec<K>>& gens) {
  auto layout = std::make_shared<const TruncationLayout>(nvars, rank, truncation);
  const bool monomial = std::all_of(gens.begin(), gens.end(), [](const PolyVec<K>& g) { return is_monomial_vec(g); });
  if (monomial) return make_staircase_oracle(field, std::move(layout), gens);
  return make_closure_oracle(field, std::move(layout), gens);
}

template <Field K>
std::optional<ModuleCertificate<K>> certify_module(const K& field, int nvars, int rank,
                                                   const std::vector<PolyVec<K>>& gens, int s_max,
                                                   std::optional<int> hint) {
  if (s_max < 0) throw std::invalid_argument("s_max must be non-negative");
  int max_degree = 0;
  for (const auto& g : gens) {
    for (const auto& p : g) max_degree = std::max(max_degree, p.degree());
  }
  int trunc = hint ? *hint + 1 : std::max(3, 2 * max_degree + 1);
  trunc = std::clamp(trunc, 1, s_max + 1);
  for (;;) {
    std::shared_ptr<const QuotientOracle<K>> oracle = make_oracle(field, nvars, rank, trunc, gens);
    if (auto s = oracle->stable_exponent()) {
      return ModuleCertificate<K>{*s, oracle->quotient_length(*s), std::move(oracle)};
    }
    if (trunc >= s_max + 1) return std::nullopt;
    trunc = std::min(s_max + 1, 2 * trunc);
  }
}

#define BRM_INSTANTIATE_QUOTIENT(K)                                                                          \
  template class QuotientOracle<K>;                                                                          \
  template std::vector<K::Element> to_coordinates<K>(const K&, const TruncationLayout&, const PolyVec<K>&);  \
  template std::unique_ptr<QuotientOracle<K>> make_closure_oracle<K>(                                        \
      const K&, std::shared_ptr<const TruncationLayout>, const std::vector<PolyVec<K>>&);                    \
  template std::unique_ptr<QuotientOracle<K>> make_staircase_oracle<K>(                                      \
      const K&, std::shared_ptr<const TruncationLayout>, const std::vector<PolyVec<K>>&);                    \
  template std::unique_ptr<QuotientOracle<K>> make_reference_oracle<K>(                                      \
      const K&, std::shared_ptr<const TruncationLayout>, const std::vector<PolyVec<K>>&);                    \
  template std::unique_ptr<QuotientOracle<K>> make_oracle<K>(const K&, int, int, int,                        \
                                                             const std::vector<PolyVec<K>>&);                \
  template std::optional<ModuleCertificate<K>> certify_module<K>(const K&, int, int,                         \
                                                                 const std::vector<PolyVec<K>>&, int,        \
                                                                 std::optional<int>);

BRM_INSTANTIATE_QUOTIENT(PrimeField)
BRM_INSTANTIATE_QUOTIENT(RationalField)

}  // namespace brm
