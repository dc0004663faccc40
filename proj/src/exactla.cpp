#include "brmult/exactla.hpp"

#include <utility>

namespace brm {

template <Field K>
DenseMatrix<K> DenseMatrix<K>::from_rows(K field, std::size_t cols,
                                         const std::vector<std::vector<Element>>& rows) {
  DenseMatrix m(std::move(field), rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("from_rows: ragged rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

template <Field K>
void DenseMatrix<K>::append_row(std::span<const Element> r) {
  if (r.size() != cols_) throw std::invalid_argument("append_row: dimension mismatch");
  entries_.insert(entries_.end(), r.begin(), r.end());
  ++rows_;
}

namespace {

// Minimum matrix size before the elimination loop is handed to OpenMP.
constexpr std::size_t kParallelThreshold = 1 << 14;

template <Field K>
RrefResult<K> gauss_jordan(const DenseMatrix<K>& a, bool parallel) {
  const K& k = a.field();
  DenseMatrix<K> m = a;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  const bool use_omp = parallel && rows * cols >= kParallelThreshold;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && k.is_zero(m(piv, c))) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      for (std::size_t j = c; j < cols; ++j) std::swap(m(piv, j), m(r, j));
    }
    const auto scale = k.inv(m(r, c));
    for (std::size_t j = c; j < cols; ++j) m(r, j) = k.mul(m(r, j), scale);

    const auto pivot_row = m.row(r);
    const auto n_rows = static_cast<std::ptrdiff_t>(rows);
#pragma omp parallel for schedule(static) if (use_omp)
    for (std::ptrdiff_t i = 0; i < n_rows; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      if (ui == r) continue;
      const auto f = m(ui, c);
      if (k.is_zero(f)) continue;
      auto target = m.row(ui);
      for (std::size_t j = c; j < cols; ++j) {
        target[j] = k.sub(target[j], k.mul(f, pivot_row[j]));
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return RrefResult<K>{std::move(m), std::move(pivots), r};
}

}  // namespace

template <Field K>
RrefResult<K> rref(const DenseMatrix<K>& a) {
  return gauss_jordan(a, true);
}

template <Field K>
RrefResult<K> rref_serial(const DenseMatrix<K>& a) {
  return gauss_jordan(a, false);
}

template <Field K>
bool span_contains(const DenseMatrix<K>& basis, std::span<const typename K::Element> v) {
  if (v.size() != basis.cols()) {
    throw std::invalid_argument("span_contains: vector length " + std::to_string(v.size()) +
                                " does not match basis width " + std::to_string(basis.cols()));
  }
  const K& k = basis.field();
  const auto red = rref(basis);
  std::vector<typename K::Element> w(v.begin(), v.end());
  for (std::size_t i = 0; i < red.rank; ++i) {
    const std::size_t c = red.pivots[i];
    const auto f = w[c];
    if (k.is_zero(f)) continue;
    const auto prow = red.reduced.row(i);
    for (std::size_t j = c; j < w.size(); ++j) w[j] = k.sub(w[j], k.mul(f, prow[j]));
  }
  for (const auto& x : w) {
    if (!k.is_zero(x)) return false;
  }
  return true;
}

template <Field K>
DenseMatrix<K> kernel_basis(const DenseMatrix<K>& a) {
  const K& k = a.field();
  const auto red = rref(a);
  const std::size_t cols = a.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto c : red.pivots) is_pivot[c] = true;
  DenseMatrix<K> basis(k, 0, cols);
  std::vector<typename K::Element> v(cols, k.zero());
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::fill(v.begin(), v.end(), k.zero());
    v[free] = k.one();
    for (std::size_t i = 0; i < red.rank; ++i) {
      v[red.pivots[i]] = k.neg(red.reduced(i, free));
    }
    basis.append_row(v);
  }
  return basis;
}

#define BRM_INSTANTIATE_LA(K)                                                          \
  template class DenseMatrix<K>;                                                       \
  template RrefResult<K> rref<K>(const DenseMatrix<K>&);                               \
  template RrefResult<K> rref_serial<K>(const DenseMatrix<K>&);                        \
  template bool span_contains<K>(const DenseMatrix<K>&, std::span<const K::Element>); \
  template DenseMatrix<K> kernel_basis<K>(const DenseMatrix<K>&);

BRM_INSTANTIATE_LA(PrimeField)
BRM_INSTANTIATE_LA(RationalField)

}  // namespace brm
