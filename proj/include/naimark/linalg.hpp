#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include "naimark/errors.hpp"

namespace naimark {

using Index = Eigen::Index;

template <class Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <class Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RealMatrix = DenseMatrix<double>;
using ComplexMatrix = DenseMatrix<std::complex<double>>;

/// Largest entry magnitude; 0 for an empty matrix.
template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

template <class Scalar>
bool is_finite(const DenseMatrix<Scalar>& m) {
  return m.allFinite();
}

namespace detail {

/// Index of the entry of largest magnitude, first one on ties.
template <class Scalar>
Index leading_index(const DenseVector<Scalar>& v) {
  Index best = 0;
  double best_mag = std::abs(v[0]);
  for (Index i = 1; i < v.size(); ++i) {
    const double mag = std::abs(v[i]);
    if (mag > best_mag) {
      best_mag = mag;
      best = i;
    }
  }
  return best;
}

inline double phase_factor(double x) { return x < 0.0 ? -1.0 : 1.0; }

inline std::complex<double> phase_factor(const std::complex<double>& x) {
  const double mag = std::abs(x);
  if (mag == 0.0) return 1.0;
  return std::conj(x) / mag;
}

/// Factor that makes the vector's largest-magnitude entry real and positive.
template <class Scalar>
Scalar phase_fix(const DenseVector<Scalar>& v) {
  return phase_factor(v[leading_index<Scalar>(v)]);
}

}  // namespace detail

template <class Scalar>
struct EigResult {
  std::vector<double> eigenvalues;   // sorted descending
  DenseMatrix<Scalar> eigenvectors;  // column m pairs with eigenvalues[m]
};

template <class Scalar>
struct SvdResult {
  DenseMatrix<Scalar> u;                  // orthonormal columns
  std::vector<double> singular_values;    // descending, non-negative
  DenseMatrix<Scalar> v;                  // orthonormal columns; a = u diag(s) v*
};

/// Eigendecomposition of a Hermitian matrix with a fixed sign convention:
/// eigenvalues descending, and each eigenvector scaled so its first
/// largest-magnitude component is real and positive.
template <class Scalar>
EigResult<Scalar> hermitian_eigendecomposition(const DenseMatrix<Scalar>& s) {
  if (s.rows() != s.cols()) fail(ErrorKind::InvalidInput, "eigendecomposition requires a square matrix");
  if (!s.allFinite()) fail(ErrorKind::InvalidInput, "matrix has non-finite entries");
  const Index m = s.rows();
  EigResult<Scalar> result;
  if (m == 0) {
    result.eigenvectors.resize(0, 0);
    return result;
  }
  const double scale = std::max(1.0, max_abs(s));
  if (max_abs((s - s.adjoint()).eval()) > 1e-10 * scale)
    fail(ErrorKind::InvalidInput, "matrix is not Hermitian within 1e-10 relative");

  Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>> solver(s);
  if (solver.info() != Eigen::Success) fail(ErrorKind::InvalidInput, "eigendecomposition failed to converge");

  // Solver returns eigenvalues ascending; flip to descending.
  result.eigenvalues.resize(static_cast<std::size_t>(m));
  result.eigenvectors.resize(m, m);
  for (Index j = 0; j < m; ++j) {
    result.eigenvalues[static_cast<std::size_t>(j)] = solver.eigenvalues()[m - 1 - j];
    result.eigenvectors.col(j) = solver.eigenvectors().col(m - 1 - j);
    const DenseVector<Scalar> col = result.eigenvectors.col(j);
    result.eigenvectors.col(j) *= detail::phase_fix<Scalar>(col);
  }
  return result;
}

/// Thin SVD, singular values descending. The (u, v) column pairs share the
/// phase convention of the eigendecomposition, keyed on the u column.
template <class Scalar>
SvdResult<Scalar> singular_value_decomposition(const DenseMatrix<Scalar>& a) {
  if (!a.allFinite()) fail(ErrorKind::InvalidInput, "matrix has non-finite entries");
  SvdResult<Scalar> result;
  const Index k = std::min(a.rows(), a.cols());
  if (k == 0) {
    result.u.resize(a.rows(), 0);
    result.v.resize(a.cols(), 0);
    return result;
  }
  Eigen::JacobiSVD<DenseMatrix<Scalar>> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  result.u = svd.matrixU();
  result.v = svd.matrixV();
  result.singular_values.assign(svd.singularValues().data(), svd.singularValues().data() + k);
  for (Index j = 0; j < k; ++j) {
    const DenseVector<Scalar> col = result.u.col(j);
    const auto factor = detail::phase_factor(col[detail::leading_index<Scalar>(col)]);
    result.u.col(j) *= factor;
    result.v.col(j) *= factor;
  }
  return result;
}

/// Unitary polar factor: the nearest unitary to a square matrix.
template <class Scalar>
DenseMatrix<Scalar> nearest_unitary(const DenseMatrix<Scalar>& a) {
  if (a.rows() != a.cols()) fail(ErrorKind::InvalidInput, "polar factor needs a square matrix");
  const SvdResult<Scalar> svd = singular_value_decomposition(a);
  return svd.u * svd.v.adjoint();
}

/// Completes a matrix with orthonormal rows to a square unitary. Returns the
/// added rows only: stacking input over output is unitary within 1e-10.
/// Deterministic: rows come from the SVD null space, each scaled so its
/// largest-magnitude entry is real positive, ordered by that entry's index.
template <class Scalar>
DenseMatrix<Scalar> complete_orthonormal_rows(const DenseMatrix<Scalar>& rows) {
  const Index r = rows.rows();
  const Index d = rows.cols();
  if (r > d) fail(ErrorKind::InvalidInput, "cannot complete: more rows than columns");
  if (!rows.allFinite()) fail(ErrorKind::InvalidInput, "matrix has non-finite entries");
  if (r == 0) return DenseMatrix<Scalar>::Identity(d, d);

  const DenseMatrix<Scalar> row_gram = rows * rows.adjoint();
  if (max_abs((row_gram - DenseMatrix<Scalar>::Identity(r, r)).eval()) > 1e-9)
    fail(ErrorKind::NotIsometric, "input rows are not orthonormal within 1e-9");
  if (r == d) return DenseMatrix<Scalar>(0, d);

  Eigen::JacobiSVD<DenseMatrix<Scalar>> svd(rows, Eigen::ComputeFullV);
  DenseMatrix<Scalar> added = svd.matrixV().rightCols(d - r).adjoint();
  std::vector<Index> order(static_cast<std::size_t>(added.rows()));
  std::vector<Index> leads(order.size());
  for (Index i = 0; i < added.rows(); ++i) {
    DenseVector<Scalar> row = added.row(i).transpose();
    added.row(i) *= detail::phase_fix<Scalar>(row);
    row = added.row(i).transpose();
    leads[static_cast<std::size_t>(i)] = detail::leading_index<Scalar>(row);
    order[static_cast<std::size_t>(i)] = i;
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return leads[static_cast<std::size_t>(a)] < leads[static_cast<std::size_t>(b)]; });
  DenseMatrix<Scalar> sorted(added.rows(), d);
  for (Index i = 0; i < added.rows(); ++i) sorted.row(i) = added.row(order[static_cast<std::size_t>(i)]);
  return sorted;
}

}  // namespace naimark
