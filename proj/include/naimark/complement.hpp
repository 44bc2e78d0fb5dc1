#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "naimark/completion.hpp"
#include "naimark/errors.hpp"
#include "naimark/frame.hpp"
#include "naimark/linalg.hpp"
#include "naimark/report.hpp"

namespace naimark {

/// Complement synthesis matrix plus the completion data that produced it.
/// Stacking [[F, added], [complement, added_complement]] and dividing by
/// sqrt(target_bound) gives a unitary of size embedding_dim.
template <class Scalar>
struct NaimarkResult {
  DenseMatrix<Scalar> complement;
  DenseMatrix<Scalar> added;
  DenseMatrix<Scalar> added_complement;
  double bessel_bound = 0.0;
  double target_bound = 0.0;
  Index top_multiplicity = 0;
  Index embedding_dim = 0;
  CompletionMode mode;
};

struct ComplementBounds {
  double lower = 0.0;
  double upper = 0.0;
  bool complement_is_empty = false;
};

/// Complement against a caller-supplied spectral decomposition. Different
/// eigenbasis choices for a degenerate spectrum give unitarily equivalent
/// complements.
template <class Scalar>
NaimarkResult<Scalar> naimark_complement(const Frame<Scalar>& f, const SpectralData<Scalar>& sd,
                                         const CompletionMode& mode = CompletionMode::minimal()) {
  if (!(sd.upper_bound > 0.0))
    fail(ErrorKind::DegenerateInput, "all-zero sequence has no complement");
  const CompletionResult<Scalar> comp = complete_to_tight(f, sd, mode);
  const double target = comp.target_bound;
  const Index m = f.space_dim();
  const Index n = f.vector_count();
  const Index l = comp.added.cols();

  DenseMatrix<Scalar> top(m, n + l);
  top.leftCols(n) = f.synthesis;
  top.rightCols(l) = comp.added;
  const double root = std::sqrt(target);
  const DenseMatrix<Scalar> isometry_rows = top * Scalar(1.0 / root);
  const DenseMatrix<Scalar> new_rows = complete_orthonormal_rows(isometry_rows);

  NaimarkResult<Scalar> result;
  result.complement = new_rows.leftCols(n) * Scalar(root);
  result.added = comp.added;
  result.added_complement = new_rows.rightCols(l) * Scalar(root);
  result.bessel_bound = sd.upper_bound;
  result.target_bound = target;
  result.top_multiplicity = sd.top_multiplicity;
  result.embedding_dim = n + l;
  result.mode = mode;
  return result;
}

template <class Scalar>
NaimarkResult<Scalar> naimark_complement(const Frame<Scalar>& f,
                                         const CompletionMode& mode = CompletionMode::minimal(),
                                         double mult_tol = 1e-9) {
  return naimark_complement(f, spectral(f, mult_tol), mode);
}

/// Residual checks for a complement produced by naimark_complement.
/// Every threshold scales with the target bound.
template <class Scalar>
CheckReport verify_complement(const Frame<Scalar>& f, const NaimarkResult<Scalar>& r, double tol = 1e-9) {
  const Index n = f.vector_count();
  if (r.complement.cols() != n)
    fail(ErrorKind::InvalidInput, "complement column count does not match the input");
  const double target = r.target_bound;
  const DenseMatrix<Scalar> sum =
      gram(f) + r.complement.adjoint() * r.complement;

  CheckReport report;
  report.add("gram_identity",
             max_abs((sum - target * DenseMatrix<Scalar>::Identity(n, n)).eval()), tol * target);
  double off_diag = 0.0;
  double diag = 0.0;
  for (Index i = 0; i < n; ++i) {
    diag = std::max(diag, std::abs(sum(i, i) - Scalar(target)));
    for (Index j = 0; j < n; ++j)
      if (j != i) off_diag = std::max(off_diag, std::abs(sum(i, j)));
  }
  report.add("direct_sum_orthogonality", off_diag, tol * target);
  report.add("direct_sum_norms", diag, tol * target);

  const Index dim = r.embedding_dim;
  const Index m = f.space_dim();
  DenseMatrix<Scalar> embedding(dim, dim);
  embedding.topLeftCorner(m, n) = f.synthesis;
  embedding.topRightCorner(m, dim - n) = r.added;
  embedding.bottomLeftCorner(dim - m, n) = r.complement;
  embedding.bottomRightCorner(dim - m, dim - n) = r.added_complement;
  embedding *= Scalar(1.0 / std::sqrt(target));
  report.add("embedding_unitary",
             max_abs((embedding.adjoint() * embedding - DenseMatrix<Scalar>::Identity(dim, dim)).eval()),
             tol * target);
  return report;
}

/// Gram-level verification for a bare complement matrix, for when only the
/// two synthesis matrices are at hand. The target bound defaults to the
/// input's Bessel bound.
template <class Scalar>
CheckReport verify_complement(const Frame<Scalar>& f, const DenseMatrix<Scalar>& g, double tol = 1e-9,
                              std::optional<double> target_bound = std::nullopt) {
  const Index n = f.vector_count();
  if (g.cols() != n)
    fail(ErrorKind::InvalidInput, "complement column count does not match the input");
  const double target = target_bound ? *target_bound : spectral(f).upper_bound;
  const DenseMatrix<Scalar> sum = gram(f) + g.adjoint() * g;

  CheckReport report;
  report.add("gram_identity",
             max_abs((sum - target * DenseMatrix<Scalar>::Identity(n, n)).eval()), tol * target);
  double off_diag = 0.0;
  double diag = 0.0;
  for (Index i = 0; i < n; ++i) {
    diag = std::max(diag, std::abs(sum(i, i) - Scalar(target)));
    for (Index j = 0; j < n; ++j)
      if (j != i) off_diag = std::max(off_diag, std::abs(sum(i, j)));
  }
  report.add("direct_sum_orthogonality", off_diag, tol * target);
  report.add("direct_sum_norms", diag, tol * target);
  return report;
}

/// Optimal frame bounds of the complement for its span, in closed form from
/// the input spectrum. Eigenvalue indices past the ambient dimension count
/// as zero, which covers sequences with more vectors than dimensions.
template <class Scalar>
ComplementBounds complement_bounds(const SpectralData<Scalar>& sd, Index n, const CompletionMode& mode) {
  if (n < 1) fail(ErrorKind::InvalidInput, "need at least one vector");
  const Index m = static_cast<Index>(sd.eigenvalues.size());
  double target = sd.upper_bound;
  Index k_eff = sd.top_multiplicity;
  if (mode.is_pad()) {
    if (!(mode.pad_bound > sd.upper_bound))
      fail(ErrorKind::PadBoundTooSmall, "pad bound must strictly exceed the Bessel bound");
    target = mode.pad_bound;
    k_eff = 0;
  }

  ComplementBounds out;
  if (n <= k_eff) {
    out.complement_is_empty = true;
    return out;
  }
  const auto padded_eig = [&](Index j) {
    return j <= m ? sd.eigenvalues[static_cast<std::size_t>(j - 1)] : 0.0;
  };
  out.lower = std::max(target - padded_eig(k_eff + 1), 0.0);
  out.upper = std::max(target - padded_eig(n), 0.0);
  return out;
}

template <class Scalar>
struct EquivalenceResult {
  bool equivalent = false;
  std::optional<DenseMatrix<Scalar>> aligning_unitary;
  double gram_residual = 0.0;
  double alignment_residual = 0.0;
};

/// Sequences with equal Gram matrices are unitarily equivalent. When both
/// inputs have full row rank, an aligning unitary is recovered by matching
/// the two factorizations of the common Gram and polishing to the nearest
/// unitary.
template <class Scalar>
EquivalenceResult<Scalar> unitary_equivalence(const DenseMatrix<Scalar>& g1,
                                              const DenseMatrix<Scalar>& g2, double tol = 1e-9) {
  if (g1.cols() != g2.cols())
    fail(ErrorKind::InvalidInput, "inputs must have the same number of columns");
  EquivalenceResult<Scalar> out;
  const DenseMatrix<Scalar> gram1 = g1.adjoint() * g1;
  const DenseMatrix<Scalar> gram2 = g2.adjoint() * g2;
  out.gram_residual = max_abs((gram1 - gram2).eval());
  out.equivalent = out.gram_residual <= tol * std::max(1.0, max_abs(gram1));
  if (!out.equivalent) return out;

  const DenseMatrix<Scalar> common = (gram1 + gram2) * Scalar(0.5);
  const EigResult<Scalar> eig = hermitian_eigendecomposition(common);
  const double top = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.front();
  Index rank = 0;
  while (rank < static_cast<Index>(eig.eigenvalues.size()) &&
         eig.eigenvalues[static_cast<std::size_t>(rank)] > 1e-12 * std::max(1.0, top))
    ++rank;
  if (g1.rows() != rank || g2.rows() != rank) return out;

  DenseMatrix<Scalar> scaled = eig.eigenvectors.leftCols(rank);
  for (Index j = 0; j < rank; ++j)
    scaled.col(j) /= Scalar(eig.eigenvalues[static_cast<std::size_t>(j)]);
  const DenseMatrix<Scalar> pseudo_inverse = scaled * eig.eigenvectors.leftCols(rank).adjoint();
  const DenseMatrix<Scalar> raw = g2 * pseudo_inverse * g1.adjoint();
  const SvdResult<Scalar> svd = singular_value_decomposition(raw);
  DenseMatrix<Scalar> u = svd.u * svd.v.adjoint();
  out.alignment_residual = max_abs((u * g1 - g2).eval());
  out.aligning_unitary = std::move(u);
  return out;
}

}  // namespace naimark
