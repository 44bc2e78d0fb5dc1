#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "naimark/linalg.hpp"

using naimark::ComplexMatrix;
using naimark::Error;
using naimark::ErrorKind;
using naimark::Index;
using naimark::RealMatrix;
using Complex = std::complex<double>;

namespace {

template <class M>
double residual(const M& a, const M& b) {
  return naimark::max_abs((a - b).eval());
}

}  // namespace

TEST_CASE("max_abs handles empty and signed entries") {
  RealMatrix m(2, 2);
  m << 1.0, -3.0, 2.0, 0.5;
  CHECK(naimark::max_abs(m) == 3.0);
  CHECK(naimark::max_abs(RealMatrix(0, 0)) == 0.0);
}

TEST_CASE("hermitian eigendecomposition is descending with fixed phase") {
  RealMatrix s(2, 2);
  s << 2.0, 1.0, 1.0, 2.0;
  const auto eig = naimark::hermitian_eigendecomposition(s);
  REQUIRE(eig.eigenvalues.size() == 2);
  CHECK(eig.eigenvalues[0] == Catch::Approx(3.0).margin(1e-12));
  CHECK(eig.eigenvalues[1] == Catch::Approx(1.0).margin(1e-12));
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(eig.eigenvectors(0, 0) - r) < 1e-12);
  CHECK(std::abs(eig.eigenvectors(1, 0) - r) < 1e-12);
  // Both entries of the second eigenvector tie in magnitude; the leading one
  // is made positive.
  CHECK(eig.eigenvectors(0, 1) > 0.0);
  RealMatrix recon = RealMatrix::Zero(2, 2);
  for (Index j = 0; j < 2; ++j)
    recon += eig.eigenvalues[static_cast<std::size_t>(j)] * eig.eigenvectors.col(j) *
             eig.eigenvectors.col(j).transpose();
  CHECK(residual(recon, s) < 1e-12);
}

TEST_CASE("hermitian eigendecomposition complex case") {
  ComplexMatrix s(2, 2);
  s << Complex(2.0, 0.0), Complex(0.0, 1.0), Complex(0.0, -1.0), Complex(2.0, 0.0);
  const auto eig = naimark::hermitian_eigendecomposition(s);
  CHECK(eig.eigenvalues[0] == Catch::Approx(3.0).margin(1e-12));
  CHECK(eig.eigenvalues[1] == Catch::Approx(1.0).margin(1e-12));
  for (Index j = 0; j < 2; ++j) {
    const naimark::DenseVector<Complex> col = eig.eigenvectors.col(j);
    const Complex lead = col[naimark::detail::leading_index<Complex>(col)];
    CHECK(std::abs(lead.imag()) < 1e-12);
    CHECK(lead.real() > 0.0);
  }
  ComplexMatrix recon = ComplexMatrix::Zero(2, 2);
  for (Index j = 0; j < 2; ++j)
    recon += Complex(eig.eigenvalues[static_cast<std::size_t>(j)]) * eig.eigenvectors.col(j) *
             eig.eigenvectors.col(j).adjoint();
  CHECK(residual(recon, s) < 1e-12);
}

TEST_CASE("hermitian eigendecomposition rejects bad input") {
  RealMatrix ns(2, 3);
  ns.setZero();
  CHECK_THROWS_AS(naimark::hermitian_eigendecomposition(ns), Error);
  RealMatrix nh(2, 2);
  nh << 0.0, 1.0, 0.0, 0.0;
  try {
    naimark::hermitian_eigendecomposition(nh);
    FAIL("expected a Hermitian gate failure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidInput);
  }
}

TEST_CASE("singular value decomposition reconstructs with phase convention") {
  RealMatrix a(2, 3);
  a << 1.0, 0.0, 2.0, 0.0, -1.0, 1.0;
  const auto svd = naimark::singular_value_decomposition(a);
  REQUIRE(svd.singular_values.size() == 2);
  CHECK(svd.singular_values[0] >= svd.singular_values[1]);
  RealMatrix recon = RealMatrix::Zero(2, 3);
  for (Index j = 0; j < 2; ++j)
    recon += svd.singular_values[static_cast<std::size_t>(j)] * svd.u.col(j) *
             svd.v.col(j).transpose();
  CHECK(residual(recon, a) < 1e-12);
  for (Index j = 0; j < svd.u.cols(); ++j) {
    const naimark::DenseVector<double> col = svd.u.col(j);
    CHECK(col[naimark::detail::leading_index<double>(col)] > 0.0);
  }
}

TEST_CASE("nearest unitary recovers the unitary factor") {
  RealMatrix rot(2, 2);
  const double t = 0.7;
  rot << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  RealMatrix pd(2, 2);
  pd << 2.0, 0.3, 0.3, 1.0;
  const RealMatrix u = naimark::nearest_unitary((rot * pd).eval());
  CHECK(residual(u, rot) < 1e-12);
  CHECK_THROWS_AS(naimark::nearest_unitary(RealMatrix::Zero(2, 3).eval()), Error);
}

TEST_CASE("complete_orthonormal_rows produces a unitary stack") {
  RealMatrix rows(1, 3);
  rows << 1.0, 0.0, 0.0;
  const RealMatrix added = naimark::complete_orthonormal_rows(rows);
  REQUIRE(added.rows() == 2);
  REQUIRE(added.cols() == 3);
  RealMatrix stacked(3, 3);
  stacked.row(0) = rows.row(0);
  stacked.bottomRows(2) = added;
  CHECK(residual((stacked * stacked.transpose()).eval(), RealMatrix::Identity(3, 3).eval()) <
        1e-12);
  // Stable result: a second call is bitwise identical.
  const RealMatrix again = naimark::complete_orthonormal_rows(rows);
  CHECK((added.array() == again.array()).all());
}

TEST_CASE("complete_orthonormal_rows edge shapes") {
  const RealMatrix full = naimark::complete_orthonormal_rows(RealMatrix::Identity(2, 2).eval());
  CHECK(full.rows() == 0);
  CHECK(full.cols() == 2);

  const RealMatrix empty = naimark::complete_orthonormal_rows(RealMatrix(0, 3));
  CHECK(residual(empty, RealMatrix::Identity(3, 3).eval()) == 0.0);

  RealMatrix bad(1, 2);
  bad << 1.0, 1.0;
  try {
    naimark::complete_orthonormal_rows(bad);
    FAIL("expected an isometry gate failure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotIsometric);
  }

  CHECK_THROWS_AS(naimark::complete_orthonormal_rows(RealMatrix::Identity(3, 2).eval()), Error);
}

TEST_CASE("complete_orthonormal_rows complex isometry") {
  ComplexMatrix rows(1, 2);
  const double r = 1.0 / std::sqrt(2.0);
  rows << Complex(r, 0.0), Complex(0.0, r);
  const ComplexMatrix added = naimark::complete_orthonormal_rows(rows);
  REQUIRE(added.rows() == 1);
  ComplexMatrix stacked(2, 2);
  stacked.row(0) = rows.row(0);
  stacked.row(1) = added.row(0);
  CHECK(residual((stacked * stacked.adjoint()).eval(), ComplexMatrix::Identity(2, 2).eval()) <
        1e-12);
  const naimark::DenseVector<Complex> lead_row = added.row(0).transpose();
  const Complex lead = lead_row[naimark::detail::leading_index<Complex>(lead_row)];
  CHECK(std::abs(lead.imag()) < 1e-12);
  CHECK(lead.real() > 0.0);
}
