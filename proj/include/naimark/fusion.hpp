#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "naimark/complement.hpp"
#include "naimark/errors.hpp"
#include "naimark/frame.hpp"
#include "naimark/linalg.hpp"
#include "naimark/report.hpp"

namespace naimark {

template <class Scalar>
struct FusionBlock {
  DenseMatrix<Scalar> basis;
  double weight = 1.0;
};

/// Weighted list of subspaces, each given by an orthonormal column basis of
/// the ambient space. An empty block list is a valid degenerate value (the
/// complement of a Parseval fusion frame), but no operation that needs a
/// positive bound accepts it.
template <class Scalar>
struct FusionFrame {
  Index ambient_dim = 0;
  std::vector<FusionBlock<Scalar>> blocks;

  FusionFrame(Index dim, std::vector<FusionBlock<Scalar>> blks)
      : ambient_dim(dim), blocks(std::move(blks)) {
    if (ambient_dim < 0) fail(ErrorKind::InvalidInput, "negative ambient dimension");
    for (const FusionBlock<Scalar>& blk : blocks) {
      if (blk.basis.rows() != ambient_dim)
        fail(ErrorKind::InvalidInput, "block basis row count must equal the ambient dimension");
      if (blk.basis.cols() < 1)
        fail(ErrorKind::InvalidInput, "block must span at least one dimension");
      if (!blk.basis.allFinite())
        fail(ErrorKind::InvalidInput, "block basis has non-finite entries");
      if (!(blk.weight > 0.0))
        fail(ErrorKind::InvalidInput, "block weight must be positive");
      const Index d = blk.basis.cols();
      const DenseMatrix<Scalar> residual =
          blk.basis.adjoint() * blk.basis - DenseMatrix<Scalar>::Identity(d, d);
      if (max_abs(residual) > 1e-10)
        fail(ErrorKind::InvalidInput, "block basis columns are not orthonormal within 1e-10");
    }
  }

  Index block_count() const { return static_cast<Index>(blocks.size()); }
  Index total_vectors() const {
    Index n = 0;
    for (const FusionBlock<Scalar>& blk : blocks) n += blk.basis.cols();
    return n;
  }
};

/// Angles ascending in [0, pi/2]; cosines carry the primary representation
/// and descend, with cos(angles[j]) = cosines[j].
struct PrincipalAngles {
  std::vector<double> angles;
  std::vector<double> cosines;
};

inline PrincipalAngles angles_from_cosines(std::vector<double> cosines) {
  PrincipalAngles out;
  for (double& c : cosines) c = std::clamp(c, 0.0, 1.0);
  std::sort(cosines.begin(), cosines.end(), std::greater<>());
  out.angles.reserve(cosines.size());
  for (double c : cosines) out.angles.push_back(std::acos(c));
  out.cosines = std::move(cosines);
  return out;
}

template <class Scalar>
DenseMatrix<Scalar> fusion_operator(const FusionFrame<Scalar>& ff) {
  DenseMatrix<Scalar> s = DenseMatrix<Scalar>::Zero(ff.ambient_dim, ff.ambient_dim);
  for (const FusionBlock<Scalar>& blk : ff.blocks)
    s += (blk.weight * blk.weight) * (blk.basis * blk.basis.adjoint());
  return s;
}

/// Concatenates the weighted block bases into one synthesis matrix; its
/// frame operator equals the fusion frame operator.
template <class Scalar>
Frame<Scalar> fusion_to_frame(const FusionFrame<Scalar>& ff) {
  const Index n = ff.total_vectors();
  if (n == 0) fail(ErrorKind::DegenerateInput, "fusion frame has no blocks");
  DenseMatrix<Scalar> synthesis(ff.ambient_dim, n);
  Index col = 0;
  for (const FusionBlock<Scalar>& blk : ff.blocks) {
    synthesis.middleCols(col, blk.basis.cols()) = blk.basis * Scalar(blk.weight);
    col += blk.basis.cols();
  }
  return Frame<Scalar>(std::move(synthesis));
}

template <class Scalar>
struct FusionNaimarkResult {
  FusionFrame<Scalar> complement;
  NaimarkResult<Scalar> embedding;
  std::vector<Index> retained_blocks;
  std::vector<Index> dropped_blocks;
};

/// Complement fusion frame: complement columns of the flattened frame are
/// grouped by block; within a block they are orthogonal with common norm
/// sqrt(B - weight^2), so column scaling orthonormalizes them. Blocks whose
/// squared weight reaches the bound contribute nothing and are dropped.
template <class Scalar>
FusionNaimarkResult<Scalar> fusion_naimark(const FusionFrame<Scalar>& ff, double mult_tol = 1e-9) {
  const Frame<Scalar> flat = fusion_to_frame(ff);
  const SpectralData<Scalar> sd = spectral(flat, mult_tol);
  if (!(sd.upper_bound > 0.0))
    fail(ErrorKind::DegenerateInput, "fusion frame operator is zero");
  NaimarkResult<Scalar> nr = naimark_complement(flat, sd);
  const double b = sd.upper_bound;

  std::vector<FusionBlock<Scalar>> out_blocks;
  std::vector<Index> retained;
  std::vector<Index> dropped;
  Index col = 0;
  for (Index k = 0; k < ff.block_count(); ++k) {
    const FusionBlock<Scalar>& blk = ff.blocks[static_cast<std::size_t>(k)];
    const Index d = blk.basis.cols();
    const double gap = b - blk.weight * blk.weight;
    if (gap <= mult_tol * b) {
      dropped.push_back(k);
      col += d;
      continue;
    }
    DenseMatrix<Scalar> basis = nr.complement.middleCols(col, d);
    for (Index j = 0; j < d; ++j) {
      const double norm = basis.col(j).norm();
      if (norm <= 0.0) fail(ErrorKind::DegenerateInput, "zero complement column in a retained block");
      basis.col(j) /= Scalar(norm);
    }
    out_blocks.push_back({std::move(basis), std::sqrt(gap)});
    retained.push_back(k);
    col += d;
  }

  FusionNaimarkResult<Scalar> result{
      FusionFrame<Scalar>(nr.complement.rows(), std::move(out_blocks)), std::move(nr),
      std::move(retained), std::move(dropped)};
  return result;
}

/// Cosines are the singular values of the cross-Gram of the two bases,
/// clamped into [0, 1].
template <class Scalar>
PrincipalAngles principal_angles(const DenseMatrix<Scalar>& q1, const DenseMatrix<Scalar>& q2) {
  if (q1.rows() != q2.rows())
    fail(ErrorKind::InvalidInput, "bases must live in the same ambient space");
  const SvdResult<Scalar> svd = singular_value_decomposition((q1.adjoint() * q2).eval());
  return angles_from_cosines(svd.singular_values);
}

/// Closed-form angles between two complement blocks from the input angles,
/// the two weights, and the bound.
inline PrincipalAngles predicted_complement_angles(const PrincipalAngles& theta, double nu1,
                                                   double nu2, double b) {
  if (!(nu1 * nu1 < b) || !(nu2 * nu2 < b))
    fail(ErrorKind::InvalidInput, "squared weights must stay below the bound");
  const double factor =
      (nu1 / std::sqrt(b - nu1 * nu1)) * (nu2 / std::sqrt(b - nu2 * nu2));
  std::vector<double> cosines = theta.cosines;
  for (double& c : cosines) c *= factor;
  return angles_from_cosines(std::move(cosines));
}

/// Chordal distance between equal-dimensional subspaces, evaluated from the
/// principal-angle cosines.
template <class Scalar>
double chordal_distance(const DenseMatrix<Scalar>& q1, const DenseMatrix<Scalar>& q2) {
  if (q1.cols() != q2.cols())
    fail(ErrorKind::InvalidInput, "chordal distance needs equal subspace dimensions");
  const PrincipalAngles pa = principal_angles(q1, q2);
  double sum = 0.0;
  for (double c : pa.cosines) sum += c * c;
  return std::sqrt(std::max(static_cast<double>(q1.cols()) - sum, 0.0));
}

/// Chordal identity between a block pair and its complement pair. ratio uses
/// the bound-minus-weight scaling that the angle transfer implies;
/// parseval_form_ratio is the one-minus-weight variant, reported only for
/// comparison and meaningful only when both weights stay below one.
struct ChordalCheckReport {
  double input_chordal = 0.0;
  double complement_chordal = 0.0;
  double ratio = 0.0;
  std::optional<double> parseval_form_ratio;
  double predicted_square = 0.0;
  double residual = 0.0;
  bool passes = false;
};

template <class Scalar>
ChordalCheckReport chordal_complement_check(const FusionFrame<Scalar>& ff, Index k1, Index k2,
                                            double tol = 1e-8) {
  if (k1 < 0 || k1 >= ff.block_count() || k2 < 0 || k2 >= ff.block_count())
    fail(ErrorKind::InvalidInput, "block index out of range");
  const FusionBlock<Scalar>& b1 = ff.blocks[static_cast<std::size_t>(k1)];
  const FusionBlock<Scalar>& b2 = ff.blocks[static_cast<std::size_t>(k2)];
  if (b1.basis.cols() != b2.basis.cols())
    fail(ErrorKind::InvalidInput, "chordal identity needs equal block dimensions");

  const FusionNaimarkResult<Scalar> fn = fusion_naimark(ff);
  const double b = fn.embedding.bessel_bound;
  const auto position = [&](Index k) {
    for (std::size_t i = 0; i < fn.retained_blocks.size(); ++i)
      if (fn.retained_blocks[i] == k) return static_cast<Index>(i);
    fail(ErrorKind::InvalidInput, "block was dropped: its squared weight reaches the bound");
  };
  const Index p1 = position(k1);
  const Index p2 = position(k2);

  ChordalCheckReport out;
  const double d = static_cast<double>(b1.basis.cols());
  out.input_chordal = chordal_distance(b1.basis, b2.basis);
  out.complement_chordal =
      chordal_distance(fn.complement.blocks[static_cast<std::size_t>(p1)].basis,
                       fn.complement.blocks[static_cast<std::size_t>(p2)].basis);
  const double w1 = b1.weight * b1.weight;
  const double w2 = b2.weight * b2.weight;
  out.ratio = (w1 / (b - w1)) * (w2 / (b - w2));
  if (w1 < 1.0 && w2 < 1.0)
    out.parseval_form_ratio = (w1 / (1.0 - w1)) * (w2 / (1.0 - w2));
  out.predicted_square =
      (1.0 - out.ratio) * d + out.ratio * out.input_chordal * out.input_chordal;
  out.residual = std::abs(out.predicted_square - out.complement_chordal * out.complement_chordal);
  out.passes = out.residual <= tol;
  return out;
}

/// Angle and chordal transfer over every distinct block pair of a fusion
/// frame, measured on the actual complement blocks.
template <class Scalar>
CheckReport fusion_transfer_report(const FusionFrame<Scalar>& ff, double tol = 1e-8) {
  const FusionNaimarkResult<Scalar> fn = fusion_naimark(ff);
  const double b = fn.embedding.bessel_bound;
  CheckReport report;
  const Index r = static_cast<Index>(fn.retained_blocks.size());
  for (Index i = 0; i < r; ++i) {
    for (Index j = i + 1; j < r; ++j) {
      const Index k1 = fn.retained_blocks[static_cast<std::size_t>(i)];
      const Index k2 = fn.retained_blocks[static_cast<std::size_t>(j)];
      const FusionBlock<Scalar>& in1 = ff.blocks[static_cast<std::size_t>(k1)];
      const FusionBlock<Scalar>& in2 = ff.blocks[static_cast<std::size_t>(k2)];
      const PrincipalAngles input_angles = principal_angles(in1.basis, in2.basis);
      const PrincipalAngles predicted =
          predicted_complement_angles(input_angles, in1.weight, in2.weight, b);
      const PrincipalAngles measured =
          principal_angles(fn.complement.blocks[static_cast<std::size_t>(i)].basis,
                           fn.complement.blocks[static_cast<std::size_t>(j)].basis);
      double angle_resid = 0.0;
      for (std::size_t a = 0; a < predicted.cosines.size(); ++a)
        angle_resid = std::max(angle_resid,
                               std::abs(predicted.cosines[a] - measured.cosines[a]));
      report.add("angles_pair_" + std::to_string(k1) + "_" + std::to_string(k2), angle_resid, tol);
      if (in1.basis.cols() == in2.basis.cols()) {
        const ChordalCheckReport cc = chordal_complement_check(ff, k1, k2, tol);
        report.add("chordal_pair_" + std::to_string(k1) + "_" + std::to_string(k2), cc.residual,
                   tol);
      }
    }
  }
  return report;
}

template <class Scalar>
struct FusionEquivalenceResult {
  bool equivalent = false;
  double residual = 0.0;
  DenseMatrix<Scalar> aligning_unitary;
  Index iterations = 0;
};

/// Decides whether one global unitary carries every block subspace of the
/// second fusion frame onto the matching block of the first. Alternating
/// orthogonal-Procrustes refinement over (global unitary, per-block basis
/// unitaries); a hint supplies the per-block unitaries V_k with
/// U * basis2_k * V_k = basis1_k, making the first step exact.
template <class Scalar>
FusionEquivalenceResult<Scalar> fusion_unitary_equivalence(
    const FusionFrame<Scalar>& ff1, const FusionFrame<Scalar>& ff2,
    const std::optional<std::vector<DenseMatrix<Scalar>>>& block_unitaries_hint = std::nullopt,
    double tol = 1e-8) {
  if (ff1.ambient_dim != ff2.ambient_dim)
    fail(ErrorKind::InvalidInput, "ambient dimensions differ");
  if (ff1.block_count() != ff2.block_count())
    fail(ErrorKind::InvalidInput, "block counts differ");
  const Index count = ff1.block_count();
  for (Index k = 0; k < count; ++k) {
    const FusionBlock<Scalar>& a = ff1.blocks[static_cast<std::size_t>(k)];
    const FusionBlock<Scalar>& b = ff2.blocks[static_cast<std::size_t>(k)];
    if (a.basis.cols() != b.basis.cols())
      fail(ErrorKind::InvalidInput, "block dimensions differ");
    if (std::abs(a.weight - b.weight) > 1e-9 * std::max(1.0, a.weight))
      fail(ErrorKind::InvalidInput, "block weights differ");
  }
  const Index m = ff1.ambient_dim;

  std::vector<DenseMatrix<Scalar>> v(static_cast<std::size_t>(count));
  if (block_unitaries_hint) {
    if (static_cast<Index>(block_unitaries_hint->size()) != count)
      fail(ErrorKind::InvalidInput, "hint must supply one unitary per block");
    for (Index k = 0; k < count; ++k) {
      const Index d = ff1.blocks[static_cast<std::size_t>(k)].basis.cols();
      const DenseMatrix<Scalar>& h = (*block_unitaries_hint)[static_cast<std::size_t>(k)];
      if (h.rows() != d || h.cols() != d)
        fail(ErrorKind::InvalidInput, "hint unitary has the wrong size");
      v[static_cast<std::size_t>(k)] = h;
    }
  } else {
    for (Index k = 0; k < count; ++k) {
      const Index d = ff1.blocks[static_cast<std::size_t>(k)].basis.cols();
      v[static_cast<std::size_t>(k)] = DenseMatrix<Scalar>::Identity(d, d);
    }
  }

  FusionEquivalenceResult<Scalar> out;
  out.aligning_unitary = DenseMatrix<Scalar>::Identity(m, m);
  const auto projection_residual = [&](const DenseMatrix<Scalar>& u) {
    double worst = 0.0;
    for (Index k = 0; k < count; ++k) {
      const DenseMatrix<Scalar>& q1 = ff1.blocks[static_cast<std::size_t>(k)].basis;
      const DenseMatrix<Scalar>& q2 = ff2.blocks[static_cast<std::size_t>(k)].basis;
      const DenseMatrix<Scalar> moved = u * q2;
      worst = std::max(worst, max_abs((moved * moved.adjoint() - q1 * q1.adjoint()).eval()));
    }
    return worst;
  };

  if (count == 0) {
    out.equivalent = true;
    return out;
  }

  constexpr Index kMaxIterations = 100;
  for (Index iter = 0; iter < kMaxIterations; ++iter) {
    DenseMatrix<Scalar> accum = DenseMatrix<Scalar>::Zero(m, m);
    for (Index k = 0; k < count; ++k)
      accum += ff1.blocks[static_cast<std::size_t>(k)].basis *
               v[static_cast<std::size_t>(k)].adjoint() *
               ff2.blocks[static_cast<std::size_t>(k)].basis.adjoint();
    out.aligning_unitary = nearest_unitary(accum);
    out.iterations = iter + 1;
    out.residual = projection_residual(out.aligning_unitary);
    if (out.residual <= tol) break;
    for (Index k = 0; k < count; ++k) {
      const DenseMatrix<Scalar>& q1 = ff1.blocks[static_cast<std::size_t>(k)].basis;
      const DenseMatrix<Scalar>& q2 = ff2.blocks[static_cast<std::size_t>(k)].basis;
      v[static_cast<std::size_t>(k)] =
          nearest_unitary((q2.adjoint() * out.aligning_unitary.adjoint() * q1).eval());
    }
  }
  out.equivalent = out.residual <= tol;
  return out;
}

}  // namespace naimark
