#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "naimark/complement.hpp"
#include "naimark/errors.hpp"
#include "naimark/frame.hpp"
#include "naimark/linalg.hpp"
#include "naimark/report.hpp"

namespace naimark {

/// True iff each distinct-pair inner product of the complement is the
/// negation of the corresponding input inner product.
template <class Scalar>
bool cross_gram_negation(const Frame<Scalar>& f, const DenseMatrix<Scalar>& g, double tol = 1e-9) {
  const Index n = f.vector_count();
  if (g.cols() != n)
    fail(ErrorKind::InvalidInput, "complement column count does not match the input");
  const DenseMatrix<Scalar> gram_f = gram(f);
  const DenseMatrix<Scalar> gram_g = g.adjoint() * g;
  const double scale = spectral(f).upper_bound;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (j != i && std::abs(gram_f(i, j) + gram_g(i, j)) > tol * scale) return false;
  return true;
}

/// Checks that orthogonality and equal norms on an index subset of the input
/// carry over to the complement. A hypothesis that does not hold on the
/// input makes the corresponding item an always-pass vacuous entry.
template <class Scalar>
CheckReport subset_carryover(const Frame<Scalar>& f, const DenseMatrix<Scalar>& g,
                             const std::vector<Index>& subset, double tol = 1e-9,
                             std::optional<double> target_bound = std::nullopt) {
  const Index n = f.vector_count();
  if (g.cols() != n)
    fail(ErrorKind::InvalidInput, "complement column count does not match the input");
  for (Index idx : subset)
    if (idx < 0 || idx >= n) fail(ErrorKind::InvalidInput, "subset index out of range");
  const double target = target_bound ? *target_bound : spectral(f).upper_bound;
  const DenseMatrix<Scalar> gram_f = gram(f);
  const DenseMatrix<Scalar> gram_g = g.adjoint() * g;

  CheckReport report;
  double hyp_orth = 0.0;
  double concl_orth = 0.0;
  for (Index a : subset)
    for (Index b : subset)
      if (a != b) {
        hyp_orth = std::max(hyp_orth, std::abs(gram_f(a, b)));
        concl_orth = std::max(concl_orth, std::abs(gram_g(a, b)));
      }
  if (hyp_orth <= tol * target)
    report.add("orthogonal_subset", concl_orth, tol * target);
  else
    report.add_flag("orthogonal_subset_vacuous", true);

  if (!subset.empty()) {
    double mean_norm = 0.0;
    for (Index a : subset) mean_norm += std::sqrt(std::abs(gram_f(a, a)));
    mean_norm /= static_cast<double>(subset.size());
    double dev = 0.0;
    for (Index a : subset) dev = std::max(dev, std::abs(std::sqrt(std::abs(gram_f(a, a))) - mean_norm));
    if (dev <= tol * std::max(1.0, mean_norm)) {
      const double expected = target - mean_norm * mean_norm;
      double resid = 0.0;
      for (Index a : subset) resid = std::max(resid, std::abs(gram_g(a, a) - Scalar(expected)));
      report.add("equal_norm_subset", resid, tol * target);
    } else {
      report.add_flag("equal_norm_subset_vacuous", true);
    }
  } else {
    report.add_flag("equal_norm_subset_vacuous", true);
  }
  return report;
}

/// Optimal restricted-isometry constant over all subsets of at most L
/// columns, with the lexicographically first subset attaining it.
struct RipReport {
  Index L = 0;
  double delta = 0.0;
  std::vector<Index> witness_subset;
  std::uint64_t subset_count = 0;
};

namespace detail {

/// Enumerates index subsets of sizes 1..max_size in lexicographic order
/// within each size, sizes ascending.
template <class Fn>
void for_each_subset(Index n, Index max_size, Fn&& fn) {
  std::vector<Index> idx;
  for (Index l = 1; l <= max_size; ++l) {
    idx.resize(static_cast<std::size_t>(l));
    std::iota(idx.begin(), idx.end(), Index{0});
    while (true) {
      fn(idx);
      Index i = l - 1;
      while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - l + i) --i;
      if (i < 0) break;
      ++idx[static_cast<std::size_t>(i)];
      for (Index j = i + 1; j < l; ++j)
        idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
}

/// delta per subset is exact: the extreme eigenvalues of the subset Gram
/// optimize the restricted-isometry ratio over coefficient vectors.
template <class Scalar>
RipReport rip_from_gram(const DenseMatrix<Scalar>& g, Index l_max) {
  const Index n = g.cols();
  if (l_max < 1 || l_max > n)
    fail(ErrorKind::InvalidInput, "subset size cap must lie in [1, column count]");
  double binom = 1.0;
  double total = 0.0;
  for (Index l = 1; l <= l_max; ++l) {
    binom = binom * static_cast<double>(n - l + 1) / static_cast<double>(l);
    total += binom;
    if (total > 1e6)
      fail(ErrorKind::TooLarge, "subset enumeration exceeds the 10^6 guard");
  }

  RipReport report;
  report.L = l_max;
  report.delta = -1.0;
  for_each_subset(n, l_max, [&](const std::vector<Index>& subset) {
    const Index l = static_cast<Index>(subset.size());
    DenseMatrix<Scalar> sub(l, l);
    for (Index a = 0; a < l; ++a)
      for (Index b = 0; b < l; ++b)
        sub(a, b) = g(subset[static_cast<std::size_t>(a)], subset[static_cast<std::size_t>(b)]);
    Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>> solver(sub, Eigen::EigenvaluesOnly);
    const double lo = solver.eigenvalues().minCoeff();
    const double hi = solver.eigenvalues().maxCoeff();
    const double d = std::max(hi - 1.0, 1.0 - lo);
    ++report.subset_count;
    if (d > report.delta) {
      report.delta = d;
      report.witness_subset = subset;
    }
  });
  report.delta = std::max(report.delta, 0.0);
  return report;
}

}  // namespace detail

template <class Scalar>
RipReport rip_constant(const Frame<Scalar>& f, Index l_max) {
  for (Index j = 0; j < f.vector_count(); ++j)
    if (std::abs(f.synthesis.col(j).norm() - 1.0) > 1e-9)
      fail(ErrorKind::NotUnitNorm, "restricted isometry requires unit-norm columns");
  return detail::rip_from_gram(gram(f), l_max);
}

/// Transfer of the restricted-isometry constant to the complement, with the
/// complement columns rescaled to unit norm. transfer_bound carries the
/// operative quadratic scaling; root_scaled_bound is the alternative
/// square-root scaling, reported for comparison only.
struct RipTransferReport {
  RipReport input;
  RipReport complement;
  double bessel_bound = 0.0;
  double transfer_bound = 0.0;
  double root_scaled_bound = 0.0;
  bool passes = false;
};

template <class Scalar>
RipTransferReport rip_complement_check(const Frame<Scalar>& f, Index l_max, double tol = 1e-9) {
  RipTransferReport out;
  out.input = rip_constant(f, l_max);
  const SpectralData<Scalar> sd = spectral(f);
  const double b = sd.upper_bound;
  out.bessel_bound = b;
  if (!(b > 1.0 + tol))
    fail(ErrorKind::ScalingDegenerate,
         "Bessel bound too close to 1; the rescaled complement degenerates");
  const NaimarkResult<Scalar> nr = naimark_complement(f, sd);
  const DenseMatrix<Scalar> scaled = nr.complement * Scalar(1.0 / std::sqrt(b - 1.0));
  // The rescaled columns are unit norm by construction; delta comes from the
  // actual Gram without re-gating the norms.
  out.complement = detail::rip_from_gram((scaled.adjoint() * scaled).eval(), l_max);
  out.transfer_bound = out.input.delta / (b - 1.0);
  out.root_scaled_bound = out.input.delta / std::sqrt(b - 1.0);
  out.passes = out.complement.delta <= out.transfer_bound + tol;
  return out;
}

}  // namespace naimark
