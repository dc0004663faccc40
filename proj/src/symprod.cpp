#include "brmult/symprod.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "brmult/errors.hpp"

namespace brm {

std::vector<std::vector<int>> SymBasis::tuples(int r, int n) {
  std::vector<std::vector<int>> out;
  if (r == 0) {
    if (n == 0) out.emplace_back();
    return out;
  }
  for (int first = n; first >= 0; --first) {
    for (auto& rest : tuples(r - 1, n - first)) {
      rest.insert(rest.begin(), first);
      out.push_back(std::move(rest));
    }
  }
  return out;
}

SymBasis::SymBasis(std::vector<int> ranks, std::vector<int> degrees)
    : ranks_(std::move(ranks)), degrees_(std::move(degrees)) {
  if (ranks_.size() != degrees_.size()) throw std::invalid_argument("ranks and degrees differ in length");
  for (std::size_t k = 0; k < ranks_.size(); ++k) {
    if (degrees_[k] < 0 || ranks_[k] < 0) throw std::invalid_argument("negative rank or degree");
    factors_.push_back(tuples(ranks_[k], degrees_[k]));
  }
  strides_.assign(factors_.size(), 1);
  for (std::size_t k = factors_.size(); k-- > 0;) {
    strides_[k] = size_;
    size_ *= factors_[k].size();
  }
}

std::size_t SymBasis::index_in_factor(std::size_t k, const std::vector<int>& exps) const {
  const auto& f = factors_[k];
  // Descending lexicographic order allows binary search with a reversed comparator.
  auto it = std::lower_bound(f.begin(), f.end(), exps, std::greater<>());
  if (it == f.end() || *it != exps) throw std::invalid_argument("exponent tuple not in basis");
  return static_cast<std::size_t>(it - f.begin());
}

std::size_t SymBasis::index(const std::vector<std::size_t>& per_factor) const {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < per_factor.size(); ++k) idx += per_factor[k] * strides_[k];
  return idx;
}

namespace {

std::int64_t multiset_count(std::size_t m, int n, std::size_t cap) {
  // binom(m + n - 1, n), saturating just above cap
  if (n == 0) return 1;
  if (m == 0) return 0;
  long double v = 1;
  for (int i = 1; i <= n; ++i) {
    v = v * static_cast<long double>(m - 1 + static_cast<std::size_t>(i)) / i;
    if (v > static_cast<long double>(cap) * 4) return static_cast<std::int64_t>(cap) + 1;
  }
  return static_cast<std::int64_t>(v + 0.5L);
}

template <Field K>
class SymPowerBuilder {
 public:
  SymPowerBuilder(const Submodule<K>& m, int n)
      : m_(m), n_(n), r_(m.rank()), zero_(m.field(), m.nvars()) {
    for (int a = 0; a <= n; ++a) {
      auto t = SymBasis::tuples(r_, a);
      std::map<std::vector<int>, std::size_t> idx;
      for (std::size_t i = 0; i < t.size(); ++i) idx.emplace(t[i], i);
      tuples_.push_back(std::move(t));
      index_.push_back(std::move(idx));
    }
  }

  std::vector<PolyVec<K>> build() {
    out_.clear();
    PolyVec<K> one{Poly<K>::constant(m_.field(), m_.nvars(), m_.field().one())};
    dfs(one, 0, 0);
    return std::move(out_);
  }

 private:
  void dfs(const PolyVec<K>& partial, int depth, std::size_t first) {
    if (depth == n_) {
      out_.push_back(partial);
      return;
    }
    const auto& gens = m_.gens();
    for (std::size_t j = first; j < gens.size(); ++j) dfs(times_linear(partial, depth, gens[j]), depth + 1, j);
  }

  PolyVec<K> times_linear(const PolyVec<K>& v, int deg, const PolyVec<K>& g) const {
    const auto& src = tuples_[static_cast<std::size_t>(deg)];
    const auto& dst = index_[static_cast<std::size_t>(deg + 1)];
    PolyVec<K> out(tuples_[static_cast<std::size_t>(deg + 1)].size(), zero_);
    for (std::size_t t = 0; t < src.size(); ++t) {
      if (v[t].is_zero()) continue;
      auto e = src[t];
      for (int i = 0; i < r_; ++i) {
        const auto& gi = g[static_cast<std::size_t>(i)];
        if (gi.is_zero()) continue;
        ++e[static_cast<std::size_t>(i)];
        out[dst.at(e)] += v[t] * gi;
        --e[static_cast<std::size_t>(i)];
      }
    }
    return out;
  }

  const Submodule<K>& m_;
  int n_;
  int r_;
  Poly<K> zero_;
  std::vector<std::vector<std::vector<int>>> tuples_;
  std::vector<std::map<std::vector<int>, std::size_t>> index_;
  std::vector<PolyVec<K>> out_;
};

std::int64_t binom(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < k) return 0;
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

template <Field K>
Submodule<K> tensor_product(const std::vector<Submodule<K>>& factors, std::size_t cap) {
  if (factors.empty()) throw std::invalid_argument("tensor product of no modules");
  const auto& field = factors.front().field();
  const int nvars = factors.front().nvars();
  std::size_t total = 1;
  int rank = 1;
  std::optional<int> hint = 0;
  for (const auto& f : factors) {
    total *= f.num_generators();
    if (total > cap) throw GeneratorOverflow(total, cap);
    rank *= f.rank();
    auto s = f.known_exponent();
    hint = (hint && s) ? std::optional<int>(*hint + *s) : std::nullopt;
  }
  std::vector<PolyVec<K>> cols{PolyVec<K>{Poly<K>::constant(field, nvars, field.one())}};
  for (const auto& f : factors) {
    std::vector<PolyVec<K>> next;
    next.reserve(cols.size() * f.num_generators());
    for (const auto& c : cols) {
      for (const auto& g : f.gens()) {
        PolyVec<K> v;
        v.reserve(c.size() * g.size());
        for (const auto& a : c) {
          for (const auto& b : g) v.push_back(a.is_zero() || b.is_zero() ? Poly<K>(field, nvars) : a * b);
        }
        next.push_back(std::move(v));
      }
    }
    cols = std::move(next);
  }
  return Submodule<K>(field, nvars, rank, std::move(cols), hint);
}

template <Field K>
Submodule<K> sym_multiply(const Submodule<K>& a, int p, const Submodule<K>& b, int q, int r, std::size_t cap) {
  const auto ta = SymBasis::tuples(r, p);
  const auto tb = SymBasis::tuples(r, q);
  const SymBasis target({r}, {p + q});
  if (a.rank() != static_cast<int>(ta.size()) || b.rank() != static_cast<int>(tb.size())) {
    throw std::invalid_argument("factor ranks do not match the symmetric degrees");
  }
  if (a.num_generators() * b.num_generators() > cap) {
    throw GeneratorOverflow(a.num_generators() * b.num_generators(), cap);
  }
  // Product table of basis monomials.
  std::vector<std::vector<std::size_t>> where(ta.size(), std::vector<std::size_t>(tb.size()));
  for (std::size_t i = 0; i < ta.size(); ++i) {
    for (std::size_t j = 0; j < tb.size(); ++j) {
      auto e = ta[i];
      for (std::size_t c = 0; c < e.size(); ++c) e[c] += tb[j][c];
      where[i][j] = target.index_in_factor(0, e);
    }
  }
  const Poly<K> zero(a.field(), a.nvars());
  std::vector<PolyVec<K>> cols;
  for (const auto& u : a.gens()) {
    for (const auto& v : b.gens()) {
      PolyVec<K> w(target.size(), zero);
      for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i].is_zero()) continue;
        for (std::size_t j = 0; j < v.size(); ++j) {
          if (!v[j].is_zero()) w[where[i][j]] += u[i] * v[j];
        }
      }
      cols.push_back(std::move(w));
    }
  }
  std::optional<int> hint;
  if (auto sa = a.known_exponent(), sb = b.known_exponent(); sa && sb) hint = *sa + *sb;
  return Submodule<K>(a.field(), a.nvars(), static_cast<int>(target.size()), std::move(cols), hint);
}

namespace {

template <Field K>
int effective_s_max(const Submodule<K>& m, int s_max) {
  // A known exponent is already a proof; never search below it.
  auto s = m.known_exponent();
  return s ? std::max(s_max, *s) : s_max;
}

std::vector<int> box_point(const std::vector<int>& origin, const std::vector<int>& extents, std::size_t i) {
  std::vector<int> n(origin.size());
  for (std::size_t k = origin.size(); k-- > 0;) {
    const auto e = static_cast<std::size_t>(extents[k]);
    n[k] = origin[k] + static_cast<int>(i % e);
    i /= e;
  }
  return n;
}

void check_window(std::size_t q, const std::vector<int>& lower, const std::vector<int>& upper) {
  if (lower.size() != q || upper.size() != q) throw std::invalid_argument("window dimension differs from module count");
  for (std::size_t k = 0; k < q; ++k) {
    if (lower[k] < 0 || upper[k] < lower[k]) throw std::invalid_argument("window bounds must satisfy 0 <= lower <= upper");
  }
}

template <Field K>
BRTable empty_table(const std::vector<Submodule<K>>& ms, const std::vector<int>& lower, const std::vector<int>& upper) {
  BRTable t;
  t.origin = lower;
  for (std::size_t k = 0; k < lower.size(); ++k) t.extents.push_back(upper[k] - lower[k] + 1);
  std::size_t cells = 1;
  for (int e : t.extents) cells *= static_cast<std::size_t>(e);
  t.values.assign(cells, 0);
  t.d = ms.front().nvars();
  for (const auto& m : ms) t.ranks.push_back(m.rank());
  return t;
}

/// powers[k][n - lower_k] = S_n(M_k)
template <Field K>
using PowerGrid = std::vector<std::vector<Submodule<K>>>;

template <Field K>
PowerGrid<K> power_grid(const std::vector<Submodule<K>>& ms, const std::vector<int>& lower,
                        const std::vector<int>& upper, std::size_t cap) {
  PowerGrid<K> grid(ms.size());
  for (std::size_t k = 0; k < ms.size(); ++k) {
    for (int n = lower[k]; n <= upper[k]; ++n) grid[k].push_back(sym_power(ms[k], n, cap));
  }
  return grid;
}

template <Field K>
std::int64_t cell_value(const PowerGrid<K>& grid, const std::vector<int>& lower, const std::vector<int>& n,
                        const BROptions& opt) {
  std::vector<Submodule<K>> factors;
  for (std::size_t k = 0; k < grid.size(); ++k) factors.push_back(grid[k][static_cast<std::size_t>(n[k] - lower[k])]);
  auto prod = factors.size() == 1 ? factors.front() : tensor_product(factors, opt.cap);
  return prod.colength(effective_s_max(prod, opt.s_max));
}

}  // namespace

template <Field K>
Submodule<K> sym_power(const Submodule<K>& m, int n, std::size_t cap) {
  if (n < 0) throw std::invalid_argument("negative symmetric power");
  if (n == 0) return Submodule<K>::free(m.field(), m.nvars(), 1);
  // Populates the certificate cache so powers and products inherit hints.
  if (!m.known_exponent()) m.certificate(kDefaultSMax);
  if (n == 1) return m;
  // Fewer generators when a certificate is at hand.
  Submodule<K> base = m.known_exponent() ? m.minimalized(effective_s_max(m, kDefaultSMax)) : m;
  const auto count = multiset_count(base.num_generators(), n, cap);
  if (count > static_cast<std::int64_t>(cap)) throw GeneratorOverflow(static_cast<std::size_t>(count), cap);
  SymPowerBuilder<K> builder(base, n);
  std::optional<int> hint;
  if (auto s = base.known_exponent()) hint = n * *s;
  const int rank = static_cast<int>(binom(n + m.rank() - 1, m.rank() - 1));
  return Submodule<K>(m.field(), m.nvars(), rank, builder.build(), hint);
}

template <Field K>
Submodule<K> graded_product(const std::vector<Submodule<K>>& ms, const std::vector<int>& ns, std::size_t cap) {
  if (ms.empty()) throw std::invalid_argument("graded product of no modules");
  if (ms.size() != ns.size()) throw std::invalid_argument("one degree per module required");
  std::vector<Submodule<K>> factors;
  for (std::size_t k = 0; k < ms.size(); ++k) factors.push_back(sym_power(ms[k], ns[k], cap));
  if (factors.size() == 1) return factors.front();
  return tensor_product(factors, cap);
}

template <Field K>
std::int64_t br_function(const std::vector<Submodule<K>>& ms, const std::vector<int>& ns, const BROptions& opt) {
  auto prod = graded_product(ms, ns, opt.cap);
  return prod.colength(effective_s_max(prod, opt.s_max));
}

template <Field K>
BRTable br_table(const std::vector<Submodule<K>>& ms, const std::vector<int>& lower, const std::vector<int>& upper,
                 const BROptions& opt) {
  check_window(ms.size(), lower, upper);
  auto table = empty_table(ms, lower, upper);
  const auto grid = power_grid(ms, lower, upper, opt.cap);
  std::exception_ptr failure;
  const auto cells = static_cast<std::int64_t>(table.values.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < cells; ++i) {
    try {
      const auto n = box_point(table.origin, table.extents, static_cast<std::size_t>(i));
      table.values[static_cast<std::size_t>(i)] = cell_value(grid, lower, n, opt);
    } catch (...) {
#pragma omp critical(brm_table_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return table;
}

template <Field K>
BRTable br_table_serial(const std::vector<Submodule<K>>& ms, const std::vector<int>& lower,
                        const std::vector<int>& upper, const BROptions& opt) {
  check_window(ms.size(), lower, upper);
  auto table = empty_table(ms, lower, upper);
  const auto grid = power_grid(ms, lower, upper, opt.cap);
  for (std::size_t i = 0; i < table.values.size(); ++i) {
    table.values[i] = cell_value(grid, lower, box_point(table.origin, table.extents, i), opt);
  }
  return table;
}

std::vector<int> BRTable::point(std::size_t i) const { return box_point(origin, extents, i); }

std::size_t BRTable::offset(const std::vector<int>& n) const {
  if (n.size() != origin.size()) throw std::invalid_argument("point dimension differs from table");
  std::size_t idx = 0;
  for (std::size_t k = 0; k < n.size(); ++k) {
    const int rel = n[k] - origin[k];
    if (rel < 0 || rel >= extents[k]) throw std::out_of_range("point outside table window");
    idx = idx * static_cast<std::size_t>(extents[k]) + static_cast<std::size_t>(rel);
  }
  return idx;
}

std::vector<int> BRTable::upper() const {
  std::vector<int> u(origin.size());
  for (std::size_t k = 0; k < origin.size(); ++k) u[k] = origin[k] + extents[k] - 1;
  return u;
}

std::string BRTable::to_csv() const {
  std::ostringstream out;
  for (std::size_t k = 0; k < origin.size(); ++k) out << "n" << (k + 1) << ",";
  out << "length\r\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (int v : point(i)) out << v << ",";
    out << values[i] << "\r\n";
  }
  return out.str();
}

std::string BRTable::to_json() const {
  nlohmann::json j;
  j["d"] = d;
  j["ranks"] = ranks;
  j["origin"] = origin;
  j["extents"] = extents;
  j["values"] = values;
  return j.dump();
}

BRTable finite_difference(const BRTable& table, const std::vector<int>& orders) {
  if (orders.size() != table.num_axes()) throw std::invalid_argument("one order per axis required");
  BRTable cur = table;
  for (std::size_t axis = 0; axis < orders.size(); ++axis) {
    if (orders[axis] < 0) throw std::invalid_argument("negative difference order");
    if (orders[axis] >= cur.extents[axis]) {
      throw WindowTooSmall("difference order " + std::to_string(orders[axis]) + " on axis " +
                           std::to_string(axis + 1) + " needs more than " + std::to_string(cur.extents[axis]) +
                           " points");
    }
    for (int step = 0; step < orders[axis]; ++step) {
      BRTable next = cur;
      next.origin[axis] += 1;
      next.extents[axis] -= 1;
      next.values.assign(cur.values.size() / static_cast<std::size_t>(cur.extents[axis]) *
                             static_cast<std::size_t>(next.extents[axis]),
                         0);
      for (std::size_t i = 0; i < next.values.size(); ++i) {
        auto n = next.point(i);
        const auto hi = cur.at(n);
        n[axis] -= 1;
        next.values[i] = hi - cur.at(n);
      }
      cur = std::move(next);
    }
  }
  return cur;
}

template <Field K>
std::vector<int> default_mixed_window(const std::vector<Submodule<K>>& ms) {
  std::vector<int> upper;
  for (const auto& m : ms) upper.push_back(m.rank() + 2);
  return upper;
}

template <Field K>
MixedBR mixed_br(const std::vector<Submodule<K>>& ms, const std::vector<int>& upper, const BROptions& opt) {
  if (ms.empty() || static_cast<int>(ms.size()) != ms.front().nvars()) {
    throw std::invalid_argument("mixed multiplicity needs exactly d modules");
  }
  if (upper.size() != ms.size()) throw std::invalid_argument("window dimension differs from module count");
  std::vector<int> lower;
  std::vector<int> orders;
  for (std::size_t k = 0; k < ms.size(); ++k) {
    const int r = ms[k].rank();
    if (upper[k] < r + 2) {
      throw WindowTooSmall("window corner " + std::to_string(upper[k]) + " on axis " + std::to_string(k + 1) +
                           " is below rank + 2 = " + std::to_string(r + 2));
    }
    lower.push_back(upper[k] - r - 1);
    orders.push_back(r);
  }
  MixedBR out;
  out.upper = upper;
  out.differenced = finite_difference(br_table(ms, lower, upper, opt), orders);
  out.value = out.differenced.at(upper);
  const auto& v = out.differenced.values;
  out.stabilized = std::all_of(v.begin(), v.end(), [&](std::int64_t x) { return x == v.front(); });
  return out;
}

namespace {

void compositions(std::size_t parts, int total, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (cur.size() + 1 == parts) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int a = 0; a <= total; ++a) {
    cur.push_back(a);
    compositions(parts, total - a, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> compositions(std::size_t parts, int total) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  if (parts > 0) compositions(parts, total, cur, out);
  return out;
}

}  // namespace

DegreeReport degree_check(const BRTable& table) {
  DegreeReport rep;
  const int q = static_cast<int>(table.num_axes());
  rep.expected = table.d + std::accumulate(table.ranks.begin(), table.ranks.end(), 0) - q;
  for (std::size_t k = 0; k < table.num_axes(); ++k) {
    if (table.extents[k] < rep.expected + 2) {
      throw WindowTooSmall("degree check needs " + std::to_string(rep.expected + 2) + " points on axis " +
                           std::to_string(k + 1));
    }
  }
  rep.higher_vanish = true;
  for (const auto& a : compositions(table.num_axes(), rep.expected + 1)) {
    const auto diff = finite_difference(table, a);
    rep.higher_vanish =
        rep.higher_vanish && std::all_of(diff.values.begin(), diff.values.end(), [](std::int64_t x) { return x == 0; });
  }
  for (const auto& a : compositions(table.num_axes(), rep.expected)) {
    const auto diff = finite_difference(table, a);
    rep.top_nonzero = rep.top_nonzero || diff.at(diff.upper()) != 0;
  }
  return rep;
}

template <Field K>
MuTable mu_table(const std::vector<Submodule<K>>& ms, int n_max, const BROptions& opt) {
  if (n_max < 0) throw std::invalid_argument("n_max must be non-negative");
  MuTable out;
  for (int n = 0; n <= n_max; ++n) {
    auto prod = graded_product(ms, std::vector<int>(ms.size(), n), opt.cap);
    out.values.push_back(prod.min_generators(effective_s_max(prod, opt.s_max)));
  }
  std::vector<std::int64_t> seq(out.values.begin(), out.values.end());
  for (int order = 0; !seq.empty(); ++order) {
    if (seq.back() != 0) out.degree_estimate = order;
    std::vector<std::int64_t> next;
    for (std::size_t i = 1; i < seq.size(); ++i) next.push_back(seq[i] - seq[i - 1]);
    seq = std::move(next);
  }
  return out;
}

#define BRM_INSTANTIATE_SYMPROD(K)                                                                                \
  template Submodule<K> sym_power<K>(const Submodule<K>&, int, std::size_t);                                     \
  template Submodule<K> graded_product<K>(const std::vector<Submodule<K>>&, const std::vector<int>&, std::size_t); \
  template std::int64_t br_function<K>(const std::vector<Submodule<K>>&, const std::vector<int>&, const BROptions&); \
  template BRTable br_table<K>(const std::vector<Submodule<K>>&, const std::vector<int>&, const std::vector<int>&,  \
                               const BROptions&);                                                                 \
  template BRTable br_table_serial<K>(const std::vector<Submodule<K>>&, const std::vector<int>&,                   \
                                      const std::vector<int>&, const BROptions&);                                 \
  template MixedBR mixed_br<K>(const std::vector<Submodule<K>>&, const std::vector<int>&, const BROptions&);       \
  template std::vector<int> default_mixed_window<K>(const std::vector<Submodule<K>>&);                            \
  template Submodule<K> tensor_product<K>(const std::vector<Submodule<K>>&, std::size_t);                          \
  template Submodule<K> sym_multiply<K>(const Submodule<K>&, int, const Submodule<K>&, int, int, std::size_t);     \
  template MuTable mu_table<K>(const std::vector<Submodule<K>>&, int, const BROptions&);

BRM_INSTANTIATE_SYMPROD(PrimeField)
BRM_INSTANTIATE_SYMPROD(RationalField)

}  // namespace brm
