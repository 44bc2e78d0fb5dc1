#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "naimark/errors.hpp"
#include "naimark/linalg.hpp"

namespace naimark {

/// Synthesis matrix: columns are the sequence vectors, rows index the ambient
/// space. Any finite matrix with at least one row and column is a valid
/// Bessel sequence; no lower frame bound is assumed.
template <class Scalar>
struct Frame {
  DenseMatrix<Scalar> synthesis;

  explicit Frame(DenseMatrix<Scalar> s) : synthesis(std::move(s)) {
    if (synthesis.rows() < 1 || synthesis.cols() < 1)
      fail(ErrorKind::InvalidInput, "synthesis matrix must have at least one row and column");
    if (!synthesis.allFinite())
      fail(ErrorKind::InvalidInput, "synthesis matrix has non-finite entries");
  }

  Index space_dim() const { return synthesis.rows(); }
  Index vector_count() const { return synthesis.cols(); }
};

/// Spectral summary of the frame operator. Eigenvalues descend;
/// upper_bound and lower_bound are the optimal Bessel/frame bounds,
/// top_multiplicity counts eigenvalues within mult_tol (relative) of the top.
template <class Scalar>
struct SpectralData {
  std::vector<double> eigenvalues;
  DenseMatrix<Scalar> eigenvectors;
  double upper_bound = 0.0;
  double lower_bound = 0.0;
  Index top_multiplicity = 0;
  double mult_tol = 0.0;
};

struct Classification {
  bool is_frame = false;
  bool is_tight = false;
  bool is_parseval = false;
  bool is_equal_norm = false;
  bool is_equiangular = false;
  std::optional<double> common_norm;
  std::optional<double> common_angle;
};

template <class Scalar>
DenseMatrix<Scalar> frame_operator(const Frame<Scalar>& f) {
  return f.synthesis * f.synthesis.adjoint();
}

/// Gram matrix F*F. Entry (n, n') is the inner product of vector n' against
/// vector n, conjugate-linear in the second argument.
template <class Scalar>
DenseMatrix<Scalar> gram(const Frame<Scalar>& f) {
  return f.synthesis.adjoint() * f.synthesis;
}

template <class Scalar>
SpectralData<Scalar> spectral(const Frame<Scalar>& f, double mult_tol = 1e-9) {
  if (!(mult_tol > 0.0 && mult_tol < 1.0))
    fail(ErrorKind::InvalidInput, "mult_tol must lie in (0, 1)");
  const DenseMatrix<Scalar> op = frame_operator(f);
  EigResult<Scalar> eig = hermitian_eigendecomposition(op);

  SpectralData<Scalar> sd;
  sd.eigenvalues = std::move(eig.eigenvalues);
  sd.eigenvectors = std::move(eig.eigenvectors);
  // The frame operator is PSD; tiny negative eigenvalues are rounding noise.
  for (double& v : sd.eigenvalues) v = std::max(v, 0.0);
  sd.upper_bound = sd.eigenvalues.front();
  sd.lower_bound = sd.eigenvalues.back();
  sd.mult_tol = mult_tol;
  const double threshold = sd.upper_bound * (1.0 - mult_tol);
  Index k = 1;
  while (k < f.space_dim() && sd.eigenvalues[static_cast<std::size_t>(k)] >= threshold) ++k;
  sd.top_multiplicity = k;
  return sd;
}

template <class Scalar>
Classification classify(const Frame<Scalar>& f, double tol = 1e-9) {
  if (!(tol > 0.0 && tol < 1.0)) fail(ErrorKind::InvalidInput, "tol must lie in (0, 1)");
  const SpectralData<Scalar> sd = spectral(f, tol);
  const Index m = f.space_dim();
  const Index n = f.vector_count();

  Classification c;
  c.is_frame = sd.upper_bound > 0.0 && sd.lower_bound > tol * sd.upper_bound;
  c.is_tight = c.is_frame && sd.top_multiplicity == m;
  c.is_parseval = c.is_tight && std::abs(sd.upper_bound - 1.0) <= tol;

  std::vector<double> norms(static_cast<std::size_t>(n));
  double mean = 0.0;
  for (Index j = 0; j < n; ++j) {
    norms[static_cast<std::size_t>(j)] = f.synthesis.col(j).norm();
    mean += norms[static_cast<std::size_t>(j)];
  }
  mean /= static_cast<double>(n);
  double norm_dev = 0.0;
  for (double v : norms) norm_dev = std::max(norm_dev, std::abs(v - mean));
  c.is_equal_norm = norm_dev <= tol * std::max(1.0, mean);
  if (c.is_equal_norm) c.common_norm = mean;

  if (c.is_equal_norm && n >= 2) {
    const DenseMatrix<Scalar> g = gram(f);
    double mean_angle = 0.0;
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        if (i != j) mean_angle += std::abs(g(i, j));
    mean_angle /= static_cast<double>(n) * static_cast<double>(n - 1);
    double angle_dev = 0.0;
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        if (i != j) angle_dev = std::max(angle_dev, std::abs(std::abs(g(i, j)) - mean_angle));
    if (angle_dev <= tol * std::max(1.0, sd.upper_bound)) {
      c.is_equiangular = true;
      c.common_angle = mean_angle;
    }
  }
  return c;
}

}  // namespace naimark
