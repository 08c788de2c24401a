#pragma once

#include <utility>
#include <vector>

#include "alex/rational.hpp"

namespace alex {

/// Reduced row echelon form together with the pivot column of each non-zero
/// row. Exact for exact scalars; zero tests are literal comparisons.
template <typename Scalar>
struct RowEchelon {
  Matrix<Scalar> reduced;
  std::vector<Index> pivots;

  Index rank() const { return static_cast<Index>(pivots.size()); }
};

template <typename Derived>
RowEchelon<typename Derived::Scalar> row_reduce(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  RowEchelon<Scalar> out{input, {}};
  Matrix<Scalar>& m = out.reduced;
  const Scalar zero(0);
  Index row = 0;
  for (Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Index pivot = row;
    while (pivot < m.rows() && m(pivot, col) == zero) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row) m.row(pivot).swap(m.row(row));
    const Scalar inv = Scalar(1) / m(row, col);
    for (Index j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (Index i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == zero) continue;
      const Scalar factor = m(i, col);
      for (Index j = col; j < m.cols(); ++j) m(i, j) -= factor * m(row, j);
    }
    out.pivots.push_back(col);
    ++row;
  }
  return out;
}

template <typename Derived>
Index rank(const Eigen::MatrixBase<Derived>& m) {
  return row_reduce(m).rank();
}

template <typename Derived>
bool is_injective(const Eigen::MatrixBase<Derived>& m) {
  return rank(m) == m.cols();
}

template <typename Derived>
bool is_surjective(const Eigen::MatrixBase<Derived>& m) {
  return rank(m) == m.rows();
}

template <typename Derived>
bool is_invertible(const Eigen::MatrixBase<Derived>& m) {
  return m.rows() == m.cols() && rank(m) == m.rows();
}

/// Quotient of Scalar^n by the span of the columns of `relations`.
///
/// The quotient basis is the set of non-pivot coordinates after eliminating
/// the relation vectors, so `quotient` maps coordinate `basis[k]` to the k-th
/// unit vector and kills every relation column.
template <typename Scalar>
struct Cokernel {
  Matrix<Scalar> quotient;
  std::vector<Index> basis;
};

template <typename Derived>
Cokernel<typename Derived::Scalar> cokernel(const Eigen::MatrixBase<Derived>& relations) {
  using Scalar = typename Derived::Scalar;
  const Index n = relations.rows();
  const RowEchelon<Scalar> ech = row_reduce(relations.transpose());

  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (Index c : ech.pivots) is_pivot[static_cast<std::size_t>(c)] = true;

  Cokernel<Scalar> out;
  for (Index c = 0; c < n; ++c)
    if (!is_pivot[static_cast<std::size_t>(c)]) out.basis.push_back(c);

  const auto k = static_cast<Index>(out.basis.size());
  out.quotient = Matrix<Scalar>::Zero(k, n);
  for (Index q = 0; q < k; ++q) {
    const Index coord = out.basis[static_cast<std::size_t>(q)];
    out.quotient(q, coord) = Scalar(1);
    for (Index r = 0; r < ech.rank(); ++r)
      out.quotient(q, ech.pivots[static_cast<std::size_t>(r)]) = -ech.reduced(r, coord);
  }
  return out;
}

/// Columns form a basis of the null space of m.
template <typename Derived>
Matrix<typename Derived::Scalar> kernel(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const RowEchelon<Scalar> ech = row_reduce(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (Index c : ech.pivots) is_pivot[static_cast<std::size_t>(c)] = true;

  std::vector<Index> free;
  for (Index c = 0; c < m.cols(); ++c)
    if (!is_pivot[static_cast<std::size_t>(c)]) free.push_back(c);

  Matrix<Scalar> basis = Matrix<Scalar>::Zero(m.cols(), static_cast<Index>(free.size()));
  for (std::size_t f = 0; f < free.size(); ++f) {
    const auto col = static_cast<Index>(f);
    basis(free[f], col) = Scalar(1);
    for (Index r = 0; r < ech.rank(); ++r)
      basis(ech.pivots[static_cast<std::size_t>(r)], col) = -ech.reduced(r, free[f]);
  }
  return basis;
}

}  // namespace alex
