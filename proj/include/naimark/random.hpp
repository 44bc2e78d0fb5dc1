#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "naimark/errors.hpp"
#include "naimark/frame.hpp"
#include "naimark/fusion.hpp"
#include "naimark/linalg.hpp"

namespace naimark {

/// SplitMix64 stream. Protocol, fixed for reproducibility: next() is the
/// standard finalizer over a 0x9E3779B97F4A7C15 increment; uniform() maps
/// the top 53 bits onto [0, 1); normal() draws Box-Muller pairs from two
/// uniforms and hands them out one at a time; below(n) reduces next()
/// modulo n. Matrices fill column by column.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double radius = std::sqrt(-2.0 * std::log(1.0 - uniform()));
    const double angle = 2.0 * 3.141592653589793238462643383279502884 * uniform();
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

namespace detail {

inline double standard_entry(SplitMix64& rng, double* /*tag*/) { return rng.normal(); }

inline std::complex<double> standard_entry(SplitMix64& rng, std::complex<double>* /*tag*/) {
  const double re = rng.normal();
  const double im = rng.normal();
  return {re * 0.7071067811865475244, im * 0.7071067811865475244};
}

}  // namespace detail

template <class Scalar>
DenseMatrix<Scalar> random_gaussian(SplitMix64& rng, Index rows, Index cols) {
  DenseMatrix<Scalar> m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i)
      m(i, j) = detail::standard_entry(rng, static_cast<Scalar*>(nullptr));
  return m;
}

/// QR of a Gaussian matrix with the R diagonal's phases folded into Q, which
/// makes the distribution Haar and the output deterministic per stream.
template <class Scalar>
DenseMatrix<Scalar> random_orthonormal_columns(SplitMix64& rng, Index rows, Index cols) {
  if (cols > rows) fail(ErrorKind::InvalidInput, "cannot have more orthonormal columns than rows");
  const DenseMatrix<Scalar> g = random_gaussian<Scalar>(rng, rows, cols);
  Eigen::HouseholderQR<DenseMatrix<Scalar>> qr(g);
  DenseMatrix<Scalar> q = qr.householderQ() * DenseMatrix<Scalar>::Identity(rows, cols);
  const DenseMatrix<Scalar> r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (Index j = 0; j < cols; ++j) q.col(j) *= detail::phase_factor(r(j, j));
  return q;
}

template <class Scalar>
Frame<Scalar> random_bessel(SplitMix64& rng, Index m, Index n) {
  return Frame<Scalar>(random_gaussian<Scalar>(rng, m, n));
}

template <class Scalar>
Frame<Scalar> random_unit_norm(SplitMix64& rng, Index m, Index n) {
  DenseMatrix<Scalar> s = random_gaussian<Scalar>(rng, m, n);
  for (Index j = 0; j < n; ++j) {
    double norm = s.col(j).norm();
    while (norm < 1e-8) {
      for (Index i = 0; i < m; ++i) s(i, j) = detail::standard_entry(rng, static_cast<Scalar*>(nullptr));
      norm = s.col(j).norm();
    }
    s.col(j) /= Scalar(norm);
  }
  return Frame<Scalar>(std::move(s));
}

/// Rows of a random orthonormal set: the frame operator is the identity.
template <class Scalar>
Frame<Scalar> random_parseval(SplitMix64& rng, Index m, Index n) {
  if (n < m) fail(ErrorKind::InvalidInput, "a Parseval frame needs at least as many vectors as dimensions");
  const DenseMatrix<Scalar> q = random_orthonormal_columns<Scalar>(rng, n, m);
  return Frame<Scalar>(q.adjoint());
}

/// Synthesis with a prescribed frame-operator spectrum: U sqrt(diag) W* for
/// Haar factors. Eigenvalue list length sets the ambient dimension; entries
/// descend, and the positive ones must fit within the vector count.
template <class Scalar>
Frame<Scalar> random_with_spectrum(SplitMix64& rng, const std::vector<double>& eigenvalues,
                                   Index n) {
  const Index m = static_cast<Index>(eigenvalues.size());
  if (m < 1 || n < 1) fail(ErrorKind::InvalidInput, "need at least one dimension and one vector");
  Index positive = 0;
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    if (eigenvalues[i] < 0.0) fail(ErrorKind::InvalidInput, "eigenvalues must be non-negative");
    if (i > 0 && eigenvalues[i] > eigenvalues[i - 1])
      fail(ErrorKind::InvalidInput, "eigenvalues must descend");
    if (eigenvalues[i] > 0.0) ++positive;
  }
  if (positive > n)
    fail(ErrorKind::InvalidInput, "more positive eigenvalues than vectors");
  const Index r = std::min(m, n);
  const DenseMatrix<Scalar> u = random_orthonormal_columns<Scalar>(rng, m, m);
  const DenseMatrix<Scalar> w = random_orthonormal_columns<Scalar>(rng, n, r);
  DenseMatrix<Scalar> core = DenseMatrix<Scalar>::Zero(m, r);
  for (Index i = 0; i < r; ++i)
    core(i, i) = Scalar(std::sqrt(eigenvalues[static_cast<std::size_t>(i)]));
  return Frame<Scalar>(u * core * w.adjoint());
}

template <class Scalar>
FusionFrame<Scalar> random_fusion(SplitMix64& rng, Index m, const std::vector<Index>& dims,
                                  double weight_lo = 0.5, double weight_hi = 1.5) {
  std::vector<FusionBlock<Scalar>> blocks;
  blocks.reserve(dims.size());
  for (Index d : dims)
    blocks.push_back(
        {random_orthonormal_columns<Scalar>(rng, m, d), rng.uniform(weight_lo, weight_hi)});
  return FusionFrame<Scalar>(m, std::move(blocks));
}

}  // namespace naimark
