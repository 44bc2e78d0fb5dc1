#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "naimark/complement.hpp"
#include "naimark/random.hpp"

using naimark::ComplementBounds;
using naimark::CompletionMode;
using naimark::ComplexMatrix;
using naimark::Error;
using naimark::ErrorKind;
using naimark::Frame;
using naimark::Index;
using naimark::RealMatrix;
using Complex = std::complex<double>;

namespace {

Frame<double> diag_example() {
  RealMatrix f(2, 2);
  f << 1.0, 0.0, 0.0, 0.5;
  return Frame<double>(f);
}

Frame<double> mercedes_parseval() {
  const double c = std::sqrt(2.0 / 3.0);
  const double s3 = std::sqrt(3.0) / 2.0;
  RealMatrix f(2, 3);
  f << 0.0, -c * s3, c * s3, c, -c * 0.5, -c * 0.5;
  return Frame<double>(f);
}

template <class Scalar>
double gram_identity_residual(const Frame<Scalar>& f, const naimark::NaimarkResult<Scalar>& nr) {
  const Index n = f.vector_count();
  const auto sum = (naimark::gram(f) + nr.complement.adjoint() * nr.complement).eval();
  return naimark::max_abs(
      (sum - nr.target_bound * naimark::DenseMatrix<Scalar>::Identity(n, n)).eval());
}

}  // namespace

TEST_CASE("complement of the diagonal example") {
  const auto f = diag_example();
  const auto nr = naimark::naimark_complement(f);
  CHECK(nr.bessel_bound == Catch::Approx(1.0).margin(1e-15));
  CHECK(nr.target_bound == Catch::Approx(1.0).margin(1e-15));
  CHECK(nr.top_multiplicity == 1);
  CHECK(nr.embedding_dim == 3);
  REQUIRE(nr.complement.rows() == 1);
  REQUIRE(nr.complement.cols() == 2);
  CHECK(std::abs(nr.complement(0, 0)) < 1e-12);
  CHECK(nr.complement(0, 1) == Catch::Approx(std::sqrt(3.0) / 2.0).margin(1e-12));
  CHECK(gram_identity_residual(f, nr) < 1e-12);
  CHECK(naimark::verify_complement(f, nr).passed());
}

TEST_CASE("complement of the equiangular parseval example") {
  const auto f = mercedes_parseval();
  const auto nr = naimark::naimark_complement(f);
  REQUIRE(nr.complement.rows() == 1);
  const double r = 1.0 / std::sqrt(3.0);
  for (Index j = 0; j < 3; ++j)
    CHECK(nr.complement(0, j) == Catch::Approx(r).margin(1e-12));
  CHECK(nr.added.cols() == 0);
  CHECK(nr.embedding_dim == 3);
  CHECK(naimark::verify_complement(f, nr).passed());
}

TEST_CASE("single row bessel sequence has an exact complement") {
  RealMatrix f(1, 2);
  f << 1.0, 1.0;
  const Frame<double> frame(f);
  const auto nr = naimark::naimark_complement(frame);
  CHECK(nr.target_bound == Catch::Approx(2.0).margin(1e-12));
  REQUIRE(nr.complement.rows() == 1);
  RealMatrix expected_gram(2, 2);
  expected_gram << 1.0, -1.0, -1.0, 1.0;
  const auto g = (nr.complement.adjoint() * nr.complement).eval();
  CHECK(naimark::max_abs((g - expected_gram).eval()) < 1e-12);
  CHECK(nr.complement(0, 0) > 0.0);
}

TEST_CASE("complement is empty exactly when vectors fit inside the top cluster") {
  const Frame<double> id(RealMatrix::Identity(2, 2).eval());
  const auto nr = naimark::naimark_complement(id);
  CHECK(nr.complement.rows() == 0);
  CHECK(nr.complement.cols() == 2);
  const auto cb =
      naimark::complement_bounds(naimark::spectral(id), 2, CompletionMode::minimal());
  CHECK(cb.complement_is_empty);
  CHECK(naimark::verify_complement(id, nr).passed());
}

TEST_CASE("closed-form bounds for the worked examples") {
  const auto sd_diag = naimark::spectral(diag_example());
  const auto minimal = naimark::complement_bounds(sd_diag, 2, CompletionMode::minimal());
  CHECK_FALSE(minimal.complement_is_empty);
  CHECK(minimal.lower == Catch::Approx(0.75).margin(1e-15));
  CHECK(minimal.upper == Catch::Approx(0.75).margin(1e-15));

  const auto padded = naimark::complement_bounds(sd_diag, 2, CompletionMode::pad(2.0));
  CHECK(padded.lower == Catch::Approx(1.0).margin(1e-15));
  CHECK(padded.upper == Catch::Approx(1.75).margin(1e-15));

  RealMatrix row(1, 2);
  row << 1.0, 1.0;
  const auto sd_row = naimark::spectral(Frame<double>(row));
  const auto wide = naimark::complement_bounds(sd_row, 2, CompletionMode::minimal());
  CHECK(wide.lower == Catch::Approx(2.0).margin(1e-12));
  CHECK(wide.upper == Catch::Approx(2.0).margin(1e-12));

  try {
    naimark::complement_bounds(sd_diag, 2, CompletionMode::pad(0.5));
    FAIL("expected a pad gate failure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PadBoundTooSmall);
  }
}

TEST_CASE("closed-form bounds match the complement spectrum on random input") {
  naimark::SplitMix64 rng(99);
  for (int rep = 0; rep < 30; ++rep) {
    const Index m = 1 + static_cast<Index>(rng.below(5));
    const Index n = 1 + static_cast<Index>(rng.below(8));
    const bool pad = rep % 3 == 0;
    const auto run = [&](const auto& f) {
      const auto sd = naimark::spectral(f);
      const CompletionMode mode =
          pad ? CompletionMode::pad(sd.upper_bound + 0.75) : CompletionMode::minimal();
      const auto nr = naimark::naimark_complement(f, sd, mode);
      const auto cb = naimark::complement_bounds(sd, f.vector_count(), mode);
      if (cb.complement_is_empty) {
        CHECK(nr.complement.rows() == 0);
        return;
      }
      const auto cop = (nr.complement * nr.complement.adjoint()).eval();
      const auto eig = naimark::hermitian_eigendecomposition(cop);
      std::vector<double> nonzero;
      for (double v : eig.eigenvalues)
        if (v > 1e-8 * std::max(1.0, nr.target_bound)) nonzero.push_back(v);
      REQUIRE_FALSE(nonzero.empty());
      CHECK(std::abs(nonzero.front() - cb.upper) <= 1e-8 * std::max(1.0, nr.target_bound));
      CHECK(std::abs(nonzero.back() - cb.lower) <= 1e-8 * std::max(1.0, nr.target_bound));
    };
    if (rep % 2 == 0)
      run(naimark::random_bessel<double>(rng, m, n));
    else
      run(naimark::random_bessel<Complex>(rng, m, n));
  }
}

TEST_CASE("verification reports catch corrupted complements") {
  const auto f = diag_example();
  auto nr = naimark::naimark_complement(f);
  RealMatrix g = nr.complement;
  g(0, 1) += 1e-3;
  const auto report = naimark::verify_complement(f, g);
  CHECK_FALSE(report.passed());
  CHECK(naimark::verify_complement(f, nr.complement).passed());
}

TEST_CASE("verify honors an explicit target bound") {
  const auto f = diag_example();
  const auto nr = naimark::naimark_complement(f, CompletionMode::pad(2.0));
  CHECK(naimark::verify_complement(f, nr.complement, 1e-9, 2.0).passed());
  CHECK_FALSE(naimark::verify_complement(f, nr.complement).passed());
}

TEST_CASE("degenerate input cannot be complemented") {
  const Frame<double> zero(RealMatrix::Zero(2, 2).eval());
  CHECK_THROWS_AS(naimark::naimark_complement(zero), Error);
}

TEST_CASE("unitary equivalence accepts rotated sequences") {
  const auto f = mercedes_parseval();
  RealMatrix rot(2, 2);
  const double t = 1.1;
  rot << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  const RealMatrix g2 = rot * f.synthesis;
  const auto eq = naimark::unitary_equivalence(f.synthesis, g2);
  CHECK(eq.equivalent);
  REQUIRE(eq.aligning_unitary.has_value());
  CHECK(eq.alignment_residual <= 1e-9);
  CHECK(naimark::max_abs((*eq.aligning_unitary - rot).eval()) < 1e-9);
}

TEST_CASE("unitary equivalence rejects different gram matrices") {
  const auto eq = naimark::unitary_equivalence(diag_example().synthesis,
                                               RealMatrix::Identity(2, 2).eval());
  CHECK_FALSE(eq.equivalent);

  // Different column counts cannot even be compared.
  CHECK_THROWS_AS(
      naimark::unitary_equivalence(diag_example().synthesis, mercedes_parseval().synthesis),
      Error);
}

TEST_CASE("unitary equivalence with mismatched embedding dimensions") {
  RealMatrix g1(1, 2);
  g1 << 1.0, 1.0;
  RealMatrix g2(2, 2);
  g2 << -1.0, -1.0, 0.0, 0.0;
  const auto eq = naimark::unitary_equivalence(g1, g2);
  CHECK(eq.equivalent);
  // Rows exceed the rank on one side, so no square unitary is returned.
  CHECK_FALSE(eq.aligning_unitary.has_value());

  RealMatrix g3(1, 2);
  g3 << -1.0, -1.0;
  const auto eq2 = naimark::unitary_equivalence(g1, g3);
  CHECK(eq2.equivalent);
  REQUIRE(eq2.aligning_unitary.has_value());
  CHECK((*eq2.aligning_unitary)(0, 0) == Catch::Approx(-1.0).margin(1e-12));
}

TEST_CASE("complement of the complement is equivalent to the original") {
  const auto f = mercedes_parseval();
  const auto nr = naimark::naimark_complement(f);
  const Frame<double> comp_frame(nr.complement);
  const auto nr2 = naimark::naimark_complement(comp_frame);
  const auto eq = naimark::unitary_equivalence(f.synthesis, nr2.complement);
  CHECK(eq.equivalent);
}

TEST_CASE("complex complement verifies end to end") {
  naimark::SplitMix64 rng(5);
  const auto f = naimark::random_bessel<Complex>(rng, 3, 5);
  const auto nr = naimark::naimark_complement(f);
  CHECK(gram_identity_residual(f, nr) <= 1e-9 * nr.target_bound);
  CHECK(naimark::verify_complement(f, nr).passed());
  CHECK(naimark::verify_complement(f, nr.complement).passed());
}
