#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "naimark/errors.hpp"
#include "naimark/frame.hpp"
#include "naimark/linalg.hpp"

namespace naimark {

/// Minimal keeps the input's Bessel bound as the target; Pad raises the
/// target to pad_bound, which must strictly exceed the input's bound.
struct CompletionMode {
  enum class Kind { Minimal, Pad };
  Kind kind = Kind::Minimal;
  double pad_bound = 0.0;

  static CompletionMode minimal() { return {}; }
  static CompletionMode pad(double c) {
    CompletionMode m;
    m.kind = Kind::Pad;
    m.pad_bound = c;
    return m;
  }
  bool is_pad() const { return kind == Kind::Pad; }
};

/// Columns appended to the synthesis matrix; stacking [F added] is a
/// target_bound-tight frame.
template <class Scalar>
struct CompletionResult {
  DenseMatrix<Scalar> added;
  double target_bound = 0.0;
};

/// True iff the matrix of coefficients of each vector against the basis has
/// pairwise-orthogonal rows and row m has squared norm lambdas[m]. This is
/// equivalent to the basis columns being frame-operator eigenvectors with
/// those eigenvalues.
template <class Scalar>
bool check_rows_vs_eigs(const Frame<Scalar>& f, const DenseMatrix<Scalar>& basis,
                        const std::vector<double>& lambdas, double tol = 1e-9) {
  const Index m = f.space_dim();
  if (basis.rows() != m || basis.cols() != m)
    fail(ErrorKind::InvalidInput, "basis must be square of the ambient dimension");
  if (static_cast<Index>(lambdas.size()) != m)
    fail(ErrorKind::InvalidInput, "need one eigenvalue per basis column");
  const DenseMatrix<Scalar> coeffs = basis.adjoint() * f.synthesis;
  const DenseMatrix<Scalar> row_gram = coeffs * coeffs.adjoint();
  for (Index i = 0; i < m; ++i) {
    const double lambda = lambdas[static_cast<std::size_t>(i)];
    if (std::abs(row_gram(i, i) - Scalar(lambda)) > tol * (lambda + 1.0)) return false;
    for (Index j = 0; j < m; ++j)
      if (j != i && std::abs(row_gram(i, j)) > tol) return false;
  }
  return true;
}

/// Adds sqrt(target - lambda_m) times eigenvector m, for m past the top
/// multiplicity (Minimal) or for every m (Pad). Gap arguments are clamped at
/// zero to absorb rounding above the target.
template <class Scalar>
CompletionResult<Scalar> complete_to_tight(const Frame<Scalar>& f, const SpectralData<Scalar>& sd,
                                           const CompletionMode& mode) {
  const Index m = f.space_dim();
  double target = sd.upper_bound;
  Index first = sd.top_multiplicity;
  if (mode.is_pad()) {
    if (!(mode.pad_bound > sd.upper_bound))
      fail(ErrorKind::PadBoundTooSmall, "pad bound must strictly exceed the Bessel bound");
    target = mode.pad_bound;
    first = 0;
  }
  CompletionResult<Scalar> result;
  result.target_bound = target;
  result.added.resize(m, m - first);
  for (Index j = first; j < m; ++j) {
    const double gap = std::max(target - sd.eigenvalues[static_cast<std::size_t>(j)], 0.0);
    result.added.col(j - first) = sd.eigenvectors.col(j) * Scalar(std::sqrt(gap));
  }
  return result;
}

template <class Scalar>
CompletionResult<Scalar> complete_to_tight(const Frame<Scalar>& f,
                                           const CompletionMode& mode = CompletionMode::minimal(),
                                           double mult_tol = 1e-9) {
  return complete_to_tight(f, spectral(f, mult_tol), mode);
}

}  // namespace naimark
