#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "naimark/fusion.hpp"
#include "naimark/random.hpp"

using naimark::Error;
using naimark::ErrorKind;
using naimark::FusionBlock;
using naimark::FusionFrame;
using naimark::Index;
using naimark::RealMatrix;
using Complex = std::complex<double>;

namespace {

constexpr double kPi = 3.14159265358979323846;

FusionFrame<double> two_lines(double angle, double w1 = 1.0, double w2 = 1.0) {
  RealMatrix q1(2, 1), q2(2, 1);
  q1 << 1.0, 0.0;
  q2 << std::cos(angle), std::sin(angle);
  return FusionFrame<double>(2, {{q1, w1}, {q2, w2}});
}

}  // namespace

TEST_CASE("fusion frame constructor validates blocks") {
  RealMatrix q(2, 1);
  q << 1.0, 0.0;
  CHECK_NOTHROW(FusionFrame<double>(2, {{q, 1.0}}));
  CHECK_NOTHROW(FusionFrame<double>(2, {}));

  RealMatrix skew(2, 1);
  skew << 1.0, 1.0;
  CHECK_THROWS_AS(FusionFrame<double>(2, {{skew, 1.0}}), Error);
  CHECK_THROWS_AS(FusionFrame<double>(2, {{q, 0.0}}), Error);
  CHECK_THROWS_AS(FusionFrame<double>(2, {{q, -1.0}}), Error);
  CHECK_THROWS_AS(FusionFrame<double>(3, {{q, 1.0}}), Error);
}

TEST_CASE("fusion operator spectrum for two weighted lines") {
  const double t = kPi / 3.0;
  const auto ff = two_lines(t);
  const auto s = naimark::fusion_operator(ff);
  const auto eig = naimark::hermitian_eigendecomposition(s);
  CHECK(eig.eigenvalues[0] == Catch::Approx(1.5).margin(1e-12));
  CHECK(eig.eigenvalues[1] == Catch::Approx(0.5).margin(1e-12));

  const auto flat = naimark::fusion_to_frame(ff);
  CHECK(flat.vector_count() == 2);
  CHECK(naimark::max_abs((naimark::frame_operator(flat) - s).eval()) < 1e-14);
}

TEST_CASE("fusion complement of two lines at sixty degrees") {
  const auto ff = two_lines(kPi / 3.0);
  const auto fn = naimark::fusion_naimark(ff);
  CHECK(fn.embedding.bessel_bound == Catch::Approx(1.5).margin(1e-12));
  CHECK(fn.dropped_blocks.empty());
  REQUIRE(fn.complement.block_count() == 2);
  CHECK(fn.complement.ambient_dim == 1);
  for (const auto& blk : fn.complement.blocks)
    CHECK(blk.weight == Catch::Approx(std::sqrt(0.5)).margin(1e-12));

  // Both complement blocks span the same line, so the angle collapses to zero.
  const auto measured = naimark::principal_angles(fn.complement.blocks[0].basis,
                                                  fn.complement.blocks[1].basis);
  CHECK(measured.angles[0] == Catch::Approx(0.0).margin(1e-8));

  const auto input_angles = naimark::principal_angles(ff.blocks[0].basis, ff.blocks[1].basis);
  const auto predicted = naimark::predicted_complement_angles(input_angles, 1.0, 1.0, 1.5);
  CHECK(predicted.cosines[0] == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("principal angles for nested plane pairs") {
  const double t = 0.4;
  RealMatrix q1(3, 2), q2(3, 2);
  q1 << 1.0, 0.0, 0.0, 1.0, 0.0, 0.0;
  q2 << 1.0, 0.0, 0.0, std::cos(t), 0.0, std::sin(t);
  const auto pa = naimark::principal_angles(q1, q2);
  REQUIRE(pa.angles.size() == 2);
  CHECK(pa.angles[0] == Catch::Approx(0.0).margin(1e-12));
  CHECK(pa.angles[1] == Catch::Approx(t).margin(1e-12));
  CHECK(pa.cosines[0] == Catch::Approx(1.0).margin(1e-12));
  CHECK(pa.cosines[1] == Catch::Approx(std::cos(t)).margin(1e-12));

  CHECK_THROWS_AS(naimark::principal_angles(q1, RealMatrix::Identity(2, 2).eval()), Error);
}

TEST_CASE("chordal distance anchors") {
  RealMatrix q1(4, 2), q2(4, 2);
  q1.setZero();
  q2.setZero();
  q1(0, 0) = 1.0;
  q1(1, 1) = 1.0;
  q2(2, 0) = 1.0;
  q2(3, 1) = 1.0;
  CHECK(naimark::chordal_distance(q1, q1) == Catch::Approx(0.0).margin(1e-12));
  CHECK(naimark::chordal_distance(q1, q2) == Catch::Approx(std::sqrt(2.0)).margin(1e-12));
  CHECK_THROWS_AS(naimark::chordal_distance(q1, RealMatrix::Identity(4, 1).eval()), Error);
}

TEST_CASE("chordal identity for two lines at sixty degrees") {
  const auto ff = two_lines(kPi / 3.0);
  const auto out = naimark::chordal_complement_check(ff, 0, 1);
  CHECK(out.ratio == Catch::Approx(4.0).margin(1e-12));
  CHECK(out.input_chordal ==
        Catch::Approx(std::sqrt(3.0) / 2.0).margin(1e-12));
  CHECK(out.complement_chordal == Catch::Approx(0.0).margin(1e-8));
  CHECK(out.predicted_square == Catch::Approx(0.0).margin(1e-12));
  CHECK(out.passes);
  REQUIRE_FALSE(out.parseval_form_ratio.has_value());
}

TEST_CASE("parseval form ratio appears only for subunit weights") {
  const auto ff = two_lines(kPi / 4.0, 0.6, 0.7);
  const auto out = naimark::chordal_complement_check(ff, 0, 1);
  REQUIRE(out.parseval_form_ratio.has_value());
  const double w1 = 0.36, w2 = 0.49;
  CHECK(*out.parseval_form_ratio ==
        Catch::Approx((w1 / (1.0 - w1)) * (w2 / (1.0 - w2))).margin(1e-12));
  CHECK(out.passes);
}

TEST_CASE("identical pair is a consistency probe") {
  const auto ff = two_lines(kPi / 3.0);
  const auto out = naimark::chordal_complement_check(ff, 0, 0);
  CHECK(out.input_chordal == Catch::Approx(0.0).margin(1e-12));
  CHECK(out.complement_chordal == Catch::Approx(0.0).margin(1e-12));
  // The identity applies to distinct pairs; with ratio 4 the probe residual
  // is |1-r|*d = 3 and the check reports the honest failure.
  CHECK(out.residual == Catch::Approx(3.0).margin(1e-8));
  CHECK_FALSE(out.passes);
}

TEST_CASE("fusion transfer report covers every retained pair") {
  naimark::SplitMix64 rng(606);
  const std::vector<Index> dims{2, 1, 2};
  const auto ff = naimark::random_fusion<double>(rng, 5, dims);
  const auto report = naimark::fusion_transfer_report(ff);
  // Three angle items plus one chordal item for the single equal-dim pair.
  CHECK(report.items.size() == 4);
  CHECK(report.passed());

  const auto ffc = naimark::random_fusion<Complex>(rng, 5, dims);
  const auto reportc = naimark::fusion_transfer_report(ffc);
  CHECK(reportc.items.size() == 4);
  CHECK(reportc.passed());
}

TEST_CASE("blocks whose squared weight reaches the bound are dropped") {
  RealMatrix q(2, 1);
  q << 1.0, 0.0;
  const FusionFrame<double> lonely(2, {{q, 2.0}});
  const auto fn = naimark::fusion_naimark(lonely);
  CHECK(fn.retained_blocks.empty());
  REQUIRE(fn.dropped_blocks.size() == 1);
  CHECK(fn.dropped_blocks[0] == 0);
  CHECK(fn.complement.block_count() == 0);
  CHECK(naimark::fusion_transfer_report(lonely).items.empty());
  CHECK_THROWS_AS(naimark::chordal_complement_check(lonely, 0, 0), Error);
}

TEST_CASE("fusion equivalence accepts globally rotated frames") {
  const auto ff = two_lines(kPi / 3.0, 1.0, 0.8);
  RealMatrix rot(2, 2);
  const double t = 0.9;
  rot << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  std::vector<FusionBlock<double>> blocks;
  for (const auto& blk : ff.blocks) blocks.push_back({(rot * blk.basis).eval(), blk.weight});
  const FusionFrame<double> rotated(2, std::move(blocks));

  const auto eq = naimark::fusion_unitary_equivalence(ff, rotated);
  CHECK(eq.equivalent);
  CHECK(eq.residual <= 1e-8);
  CHECK(naimark::max_abs((eq.aligning_unitary * eq.aligning_unitary.transpose() -
                          RealMatrix::Identity(2, 2))
                             .eval()) < 1e-10);
}

TEST_CASE("fusion equivalence rejects mismatched geometry") {
  const auto ff1 = two_lines(kPi / 3.0);
  const auto ff2 = two_lines(kPi / 6.0);
  const auto eq = naimark::fusion_unitary_equivalence(ff1, ff2);
  CHECK_FALSE(eq.equivalent);

  const auto heavier = two_lines(kPi / 3.0, 1.0, 1.3);
  CHECK_THROWS_AS(naimark::fusion_unitary_equivalence(ff1, heavier), Error);
}

TEST_CASE("fusion equivalence uses block rotation hints") {
  naimark::SplitMix64 rng(88);
  const std::vector<Index> dims{2, 2};
  const auto ff = naimark::random_fusion<double>(rng, 4, dims);
  RealMatrix rot = naimark::random_orthonormal_columns<double>(rng, 4, 4);

  std::vector<FusionBlock<double>> blocks;
  std::vector<naimark::DenseMatrix<double>> hints;
  for (const auto& blk : ff.blocks) {
    const RealMatrix inner = naimark::random_orthonormal_columns<double>(rng, 2, 2);
    blocks.push_back({(rot * blk.basis * inner).eval(), blk.weight});
    hints.push_back(inner);
  }
  const FusionFrame<double> moved(4, std::move(blocks));

  const std::optional<std::vector<naimark::DenseMatrix<double>>> hint(std::move(hints));
  const auto eq = naimark::fusion_unitary_equivalence(moved, ff, hint);
  CHECK(eq.equivalent);
  CHECK(eq.residual <= 1e-8);
}
