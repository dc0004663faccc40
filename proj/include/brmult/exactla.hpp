#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "brmult/field.hpp"

namespace brm {

/// Row-major dense matrix over an exact field.
template <Field K>
class DenseMatrix {
 public:
  using Element = typename K::Element;

  DenseMatrix(K field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), entries_(rows * cols, field_.zero()) {}

  static DenseMatrix identity(K field, std::size_t n) {
    DenseMatrix m(std::move(field), n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = m.field_.one();
    return m;
  }

  /// Builds a matrix from a list of equal-length rows.
  static DenseMatrix from_rows(K field, std::size_t cols, const std::vector<std::vector<Element>>& rows);

  const K& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Element& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Element& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  std::span<Element> row(std::size_t i) { return {entries_.data() + i * cols_, cols_}; }
  std::span<const Element> row(std::size_t i) const { return {entries_.data() + i * cols_, cols_}; }

  void append_row(std::span<const Element> r);

  bool operator==(const DenseMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
  }

 private:
  K field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Element> entries_;
};

template <Field K>
struct RrefResult {
  DenseMatrix<K> reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

/// Reduced row-echelon form by Gauss-Jordan elimination with first-nonzero
/// pivoting. Row elimination for each pivot runs in parallel (OpenMP).
template <Field K>
RrefResult<K> rref(const DenseMatrix<K>& a);

/// Single-threaded reference elimination; same result as rref().
template <Field K>
RrefResult<K> rref_serial(const DenseMatrix<K>& a);

template <Field K>
std::size_t rank(const DenseMatrix<K>& a) {
  return rref(a).rank;
}

/// True iff v lies in the row space of basis. Throws std::invalid_argument on
/// a dimension mismatch.
template <Field K>
bool span_contains(const DenseMatrix<K>& basis, std::span<const typename K::Element> v);

/// Rows form a basis of the right null space {x : A x = 0}.
template <Field K>
DenseMatrix<K> kernel_basis(const DenseMatrix<K>& a);

}  // namespace brm
