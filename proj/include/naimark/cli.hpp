#pragma once

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "naimark/complement.hpp"
#include "naimark/completion.hpp"
#include "naimark/errors.hpp"
#include "naimark/frame.hpp"
#include "naimark/fusion.hpp"
#include "naimark/io.hpp"
#include "naimark/linalg.hpp"
#include "naimark/properties.hpp"
#include "naimark/random.hpp"
#include "naimark/report.hpp"

namespace naimark {
namespace cli {

struct LoadedMatrix {
  AnyMatrix matrix;
  std::string digest;
};

inline LoadedMatrix load_matrix_with_digest(const std::string& path, ToolReport& report) {
  const std::string text = read_file(path);
  LoadedMatrix loaded{has_suffix(path, ".csv") ? AnyMatrix(matrix_from_csv(text))
                                               : matrix_from_json(parse_json_text(text)),
                      hex64(fnv1a64(text))};
  report.input_digests.emplace_back(path, loaded.digest);
  return loaded;
}

inline AnyFusion load_fusion_with_digest(const std::string& path, ToolReport& report) {
  const std::string text = read_file(path);
  report.input_digests.emplace_back(path, hex64(fnv1a64(text)));
  return fusion_from_json(parse_json_text(text));
}

inline std::pair<AnyMatrix, AnyMatrix> unify_field(AnyMatrix a, AnyMatrix b) {
  if (a.index() == b.index()) return {std::move(a), std::move(b)};
  const auto promote = [](AnyMatrix m) -> AnyMatrix {
    if (std::holds_alternative<RealMatrix>(m)) return AnyMatrix(to_complex(std::get<RealMatrix>(m)));
    return m;
  };
  return {promote(std::move(a)), promote(std::move(b))};
}

inline void print_human(const ToolReport& r, std::ostream& out) {
  const auto saved = out.precision(15);
  out << r.operation << "\n";
  for (const auto& [name, value] : r.values) out << "  " << name << " = " << value << "\n";
  for (const auto& [name, value] : r.flags) out << "  " << name << ": " << (value ? "yes" : "no") << "\n";
  for (const auto& [name, text] : r.notes) out << "  " << name << ": " << text << "\n";
  for (const CheckItem& item : r.checks.items)
    out << "  [" << (item.pass ? "PASS" : "FAIL") << "] " << item.name
        << "  residual=" << item.residual << "  tolerance=" << item.tolerance << "\n";
  out << (r.passed() ? "PASS" : "FAIL") << "\n";
  out.precision(saved);
}

inline int finish(const ToolReport& r, bool json, std::ostream& out) {
  if (json)
    out << canonical_text(report_to_json(r));
  else
    print_human(r, out);
  return r.passed() ? 0 : 1;
}

inline std::string join_indices(const std::vector<Index>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s;
}

template <class Scalar>
void analyze_into(const DenseMatrix<Scalar>& m, double tol, ToolReport& r) {
  const Frame<Scalar> f(m);
  const SpectralData<Scalar> sd = spectral(f, tol);
  const Classification cls = classify(f, tol);
  r.values.emplace_back("space_dim", static_cast<double>(f.space_dim()));
  r.values.emplace_back("vector_count", static_cast<double>(f.vector_count()));
  r.values.emplace_back("upper_bound", sd.upper_bound);
  r.values.emplace_back("lower_bound", sd.lower_bound);
  r.values.emplace_back("top_multiplicity", static_cast<double>(sd.top_multiplicity));
  if (cls.common_norm) r.values.emplace_back("common_norm", *cls.common_norm);
  if (cls.common_angle) r.values.emplace_back("common_angle", *cls.common_angle);
  r.flags.emplace_back("is_frame", cls.is_frame);
  r.flags.emplace_back("is_tight", cls.is_tight);
  r.flags.emplace_back("is_parseval", cls.is_parseval);
  r.flags.emplace_back("is_equal_norm", cls.is_equal_norm);
  r.flags.emplace_back("is_equiangular", cls.is_equiangular);
  r.artifacts.emplace_back("eigenvalues", Json(sd.eigenvalues));
}

template <class Scalar>
void complete_into(const DenseMatrix<Scalar>& m, const CompletionMode& mode, double tol,
                   const std::string& out_path, ToolReport& r) {
  const Frame<Scalar> f(m);
  const SpectralData<Scalar> sd = spectral(f, tol);
  const CompletionResult<Scalar> comp = complete_to_tight(f, sd, mode);
  DenseMatrix<Scalar> stacked(f.space_dim(), f.vector_count() + comp.added.cols());
  stacked.leftCols(f.vector_count()) = f.synthesis;
  stacked.rightCols(comp.added.cols()) = comp.added;
  const DenseMatrix<Scalar> op = stacked * stacked.adjoint();
  const double resid = max_abs(
      (op - comp.target_bound * DenseMatrix<Scalar>::Identity(op.rows(), op.cols())).eval());
  r.values.emplace_back("bessel_bound", sd.upper_bound);
  r.values.emplace_back("target_bound", comp.target_bound);
  r.values.emplace_back("added_count", static_cast<double>(comp.added.cols()));
  r.checks.add("tight_after_completion", resid, tol * comp.target_bound);
  r.artifacts.emplace_back("added", matrix_to_json(AnyMatrix(comp.added)));
  if (!out_path.empty()) {
    save_matrix(out_path, AnyMatrix(comp.added));
    r.notes.emplace_back("wrote", out_path);
  }
}

template <class Scalar>
void complement_into(const DenseMatrix<Scalar>& m, const CompletionMode& mode, double tol,
                     bool verify, const std::string& out_path, ToolReport& r) {
  const Frame<Scalar> f(m);
  const SpectralData<Scalar> sd = spectral(f, tol);
  const NaimarkResult<Scalar> nr = naimark_complement(f, sd, mode);
  r.values.emplace_back("bessel_bound", nr.bessel_bound);
  r.values.emplace_back("target_bound", nr.target_bound);
  r.values.emplace_back("top_multiplicity", static_cast<double>(nr.top_multiplicity));
  r.values.emplace_back("embedding_dim", static_cast<double>(nr.embedding_dim));
  r.values.emplace_back("complement_rows", static_cast<double>(nr.complement.rows()));
  r.artifacts.emplace_back("complement", matrix_to_json(AnyMatrix(nr.complement)));
  r.artifacts.emplace_back("added", matrix_to_json(AnyMatrix(nr.added)));
  r.artifacts.emplace_back("added_complement", matrix_to_json(AnyMatrix(nr.added_complement)));
  if (verify) {
    const CheckReport checks = verify_complement(f, nr, tol);
    for (const CheckItem& item : checks.items) r.checks.items.push_back(item);
  }
  if (!out_path.empty()) {
    save_matrix(out_path, AnyMatrix(nr.complement));
    r.notes.emplace_back("wrote", out_path);
  }
}

template <class Scalar>
void verify_into(const DenseMatrix<Scalar>& fm, const DenseMatrix<Scalar>& gm,
                 std::optional<double> target, double tol, ToolReport& r) {
  const Frame<Scalar> f(fm);
  const CheckReport checks = verify_complement(f, gm, tol, target);
  r.values.emplace_back("target_bound", target ? *target : spectral(f).upper_bound);
  for (const CheckItem& item : checks.items) r.checks.items.push_back(item);
}

template <class Scalar>
void bounds_into(const DenseMatrix<Scalar>& m, const CompletionMode& mode, double tol,
                 ToolReport& r) {
  const Frame<Scalar> f(m);
  const SpectralData<Scalar> sd = spectral(f, tol);
  const ComplementBounds cb = complement_bounds(sd, f.vector_count(), mode);
  r.values.emplace_back("bessel_bound", sd.upper_bound);
  r.values.emplace_back("top_multiplicity", static_cast<double>(sd.top_multiplicity));
  r.flags.emplace_back("complement_is_empty", cb.complement_is_empty);
  if (!cb.complement_is_empty) {
    r.values.emplace_back("lower", cb.lower);
    r.values.emplace_back("upper", cb.upper);
  }
}

template <class Scalar>
void rip_into(const DenseMatrix<Scalar>& m, Index l_cap, double tol, ToolReport& r) {
  const Frame<Scalar> f(m);
  const RipReport rip = rip_constant(f, l_cap);
  r.values.emplace_back("L", static_cast<double>(rip.L));
  r.values.emplace_back("delta", rip.delta);
  r.values.emplace_back("subsets_examined", static_cast<double>(rip.subset_count));
  r.notes.emplace_back("witness_subset", join_indices(rip.witness_subset));
  const double b = spectral(f).upper_bound;
  r.values.emplace_back("bessel_bound", b);
  if (b > 1.0 + tol) {
    const RipTransferReport transfer = rip_complement_check(f, l_cap, tol);
    r.values.emplace_back("complement_delta", transfer.complement.delta);
    r.values.emplace_back("transfer_bound", transfer.transfer_bound);
    r.values.emplace_back("root_scaled_bound", transfer.root_scaled_bound);
    r.checks.add("rip_transfer", std::max(transfer.complement.delta - transfer.transfer_bound, 0.0),
                 tol);
  } else {
    r.notes.emplace_back("rip_transfer", "skipped: Bessel bound within tol of 1");
  }
}

template <class Scalar>
void fusion_complement_into(const FusionFrame<Scalar>& ff, const std::string& out_path,
                            ToolReport& r) {
  const FusionNaimarkResult<Scalar> fn = fusion_naimark(ff);
  r.values.emplace_back("bound", fn.embedding.bessel_bound);
  r.values.emplace_back("complement_dim", static_cast<double>(fn.complement.ambient_dim));
  r.values.emplace_back("retained_blocks", static_cast<double>(fn.retained_blocks.size()));
  if (!fn.dropped_blocks.empty())
    r.notes.emplace_back("dropped_blocks",
                         join_indices(fn.dropped_blocks) + " (squared weight reaches the bound)");
  Json weights = Json::array();
  for (const auto& blk : fn.complement.blocks) weights.push_back(blk.weight);
  r.artifacts.emplace_back("complement_weights", std::move(weights));
  r.artifacts.emplace_back("complement_fusion", fusion_to_json(fn.complement));
  if (!out_path.empty()) {
    write_file(out_path, canonical_text(fusion_to_json(fn.complement)));
    r.notes.emplace_back("wrote", out_path);
  }
}

template <class Scalar>
void require_orthonormal_columns(const DenseMatrix<Scalar>& q, const std::string& which) {
  const DenseMatrix<Scalar> residual =
      q.adjoint() * q - DenseMatrix<Scalar>::Identity(q.cols(), q.cols());
  if (max_abs(residual) > 1e-8)
    fail(ErrorKind::InvalidInput, which + " does not have orthonormal columns");
}

template <class Scalar>
void angles_into(const DenseMatrix<Scalar>& q1, const DenseMatrix<Scalar>& q2, ToolReport& r) {
  require_orthonormal_columns(q1, "first basis");
  require_orthonormal_columns(q2, "second basis");
  const PrincipalAngles pa = principal_angles(q1, q2);
  for (std::size_t i = 0; i < pa.angles.size(); ++i) {
    r.values.emplace_back("angle_" + std::to_string(i), pa.angles[i]);
    r.values.emplace_back("cosine_" + std::to_string(i), pa.cosines[i]);
  }
}

template <class Scalar>
void chordal_into(const DenseMatrix<Scalar>& q1, const DenseMatrix<Scalar>& q2, ToolReport& r) {
  require_orthonormal_columns(q1, "first basis");
  require_orthonormal_columns(q2, "second basis");
  const double d = chordal_distance(q1, q2);
  r.values.emplace_back("chordal_distance", d);
  r.values.emplace_back("chordal_distance_squared", d * d);
}

template <class Scalar>
void fusion_check_into(const FusionFrame<Scalar>& ff, double tol, ToolReport& r) {
  const FusionNaimarkResult<Scalar> fn = fusion_naimark(ff);
  r.values.emplace_back("bound", fn.embedding.bessel_bound);
  if (!fn.dropped_blocks.empty())
    r.notes.emplace_back("dropped_blocks", join_indices(fn.dropped_blocks));
  const CheckReport checks = fusion_transfer_report(ff, tol);
  for (const CheckItem& item : checks.items) r.checks.items.push_back(item);
  if (checks.items.empty())
    r.notes.emplace_back("pairs", "fewer than two retained blocks; nothing to compare");
}

template <class Scalar>
void equivalence_into(const DenseMatrix<Scalar>& g1, const DenseMatrix<Scalar>& g2, double tol,
                      ToolReport& r) {
  const EquivalenceResult<Scalar> eq = unitary_equivalence(g1, g2, tol);
  r.flags.emplace_back("equivalent", eq.equivalent);
  r.values.emplace_back("gram_residual", eq.gram_residual);
  r.checks.add_flag("grams_match", eq.equivalent);
  if (eq.aligning_unitary) {
    r.values.emplace_back("alignment_residual", eq.alignment_residual);
    r.artifacts.emplace_back("aligning_unitary", matrix_to_json(AnyMatrix(*eq.aligning_unitary)));
  }
}

template <class Scalar>
void selftest_case(SplitMix64& rng, Index m, Index n, int idx, ToolReport& r) {
  const std::string tag = "case_" + std::to_string(idx) + "_";
  const Frame<Scalar> f = random_bessel<Scalar>(rng, m, n);
  const SpectralData<Scalar> sd = spectral(f);
  const NaimarkResult<Scalar> nr = naimark_complement(f, sd);
  const double b = nr.target_bound;
  const Index vector_count = f.vector_count();

  const DenseMatrix<Scalar> sum = gram(f) + nr.complement.adjoint() * nr.complement;
  r.checks.add(tag + "gram_identity",
               max_abs((sum - b * DenseMatrix<Scalar>::Identity(vector_count, vector_count)).eval()),
               1e-9 * b);

  const ComplementBounds cb = complement_bounds(sd, vector_count, CompletionMode::minimal());
  if (cb.complement_is_empty) {
    r.checks.add_flag(tag + "empty_complement_consistent", nr.complement.rows() == 0);
  } else {
    const DenseMatrix<Scalar> cop = nr.complement * nr.complement.adjoint();
    const EigResult<Scalar> eig = hermitian_eigendecomposition(cop);
    std::vector<double> nonzero;
    for (double v : eig.eigenvalues)
      if (v > 1e-8 * std::max(1.0, b)) nonzero.push_back(v);
    if (nonzero.empty()) {
      r.checks.add_flag(tag + "bounds_nonzero_spectrum", false);
    } else {
      const double resid = std::max(std::abs(nonzero.front() - cb.upper),
                                    std::abs(nonzero.back() - cb.lower));
      r.checks.add(tag + "bounds_closed_form", resid, 1e-8 * std::max(1.0, b));
    }
  }

  r.checks.add_flag(tag + "cross_gram_negation", cross_gram_negation(f, nr.complement));

  const std::string text = serialize_matrix(AnyMatrix(nr.complement));
  const AnyMatrix parsed = matrix_from_json(parse_json_text(text));
  bool round_trip = std::holds_alternative<DenseMatrix<Scalar>>(parsed);
  if (round_trip) {
    const DenseMatrix<Scalar>& p = std::get<DenseMatrix<Scalar>>(parsed);
    round_trip = p.rows() == nr.complement.rows() && p.cols() == nr.complement.cols() &&
                 serialize_matrix(parsed) == text;
    if (round_trip)
      for (Index i = 0; i < p.rows() && round_trip; ++i)
        for (Index j = 0; j < p.cols() && round_trip; ++j)
          if (!(p(i, j) == nr.complement(i, j))) round_trip = false;
  }
  r.checks.add_flag(tag + "round_trip", round_trip);
}

template <class Scalar>
void selftest_fusion_case(SplitMix64& rng, int idx, ToolReport& r) {
  const std::string tag = "fusion_case_" + std::to_string(idx) + "_";
  const Index m = 2 + static_cast<Index>(rng.below(5));
  const Index blocks = 2 + static_cast<Index>(rng.below(2));
  std::vector<Index> dims;
  for (Index k = 0; k < blocks; ++k)
    dims.push_back(1 + static_cast<Index>(rng.below(static_cast<std::uint64_t>(std::min<Index>(2, m)))));
  const FusionFrame<Scalar> ff = random_fusion<Scalar>(rng, m, dims);
  const CheckReport checks = fusion_transfer_report(ff, 1e-8);
  if (checks.items.empty()) {
    r.checks.add_flag(tag + "no_pairs", true);
    return;
  }
  double worst = 0.0;
  for (const CheckItem& item : checks.items) worst = std::max(worst, item.residual);
  r.checks.add(tag + "transfer", worst, 1e-8);
}

inline void selftest_into(std::uint64_t seed, int cases, ToolReport& r) {
  SplitMix64 rng(seed);
  r.seed = seed;
  r.values.emplace_back("cases", static_cast<double>(cases));
  for (int c = 0; c < cases; ++c) {
    const Index m = 1 + static_cast<Index>(rng.below(6));
    const Index n = 1 + static_cast<Index>(rng.below(9));
    if (c % 2 == 0)
      selftest_case<double>(rng, m, n, c, r);
    else
      selftest_case<std::complex<double>>(rng, m, n, c, r);
    if (c % 4 == 3) {
      if (c % 8 == 3)
        selftest_fusion_case<double>(rng, c, r);
      else
        selftest_fusion_case<std::complex<double>>(rng, c, r);
    }
  }
}

inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Naimark complements of frames and Bessel sequences"};
  app.name("naimark");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  std::string file_a;
  std::string file_b;
  std::string out_path;
  double tol = 1e-9;
  std::optional<double> pad;
  Index l_cap = 1;
  bool json = false;
  bool verify_flag = false;
  std::uint64_t seed = 12345;
  int cases = 20;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", json, "emit a machine-readable JSON report");
    sub->add_option("--tol", tol, "relative tolerance (default 1e-9)");
  };

  CLI::App* c_analyze = app.add_subcommand("analyze", "spectral data and classification flags");
  c_analyze->add_option("matrix", file_a, "synthesis matrix file")->required();
  add_common(c_analyze);

  CLI::App* c_complete = app.add_subcommand("complete", "complete to a tight frame");
  c_complete->add_option("matrix", file_a, "synthesis matrix file")->required();
  c_complete->add_option("--pad", pad, "pad target bound (strictly above the Bessel bound)");
  c_complete->add_option("--out", out_path, "write the added columns to this file");
  add_common(c_complete);

  CLI::App* c_complement = app.add_subcommand("complement", "construct the Naimark complement");
  c_complement->add_option("matrix", file_a, "synthesis matrix file")->required();
  c_complement->add_option("--pad", pad, "pad target bound (strictly above the Bessel bound)");
  c_complement->add_option("--out", out_path, "write the complement to this file");
  c_complement->add_flag("--verify", verify_flag, "run the verification report");
  add_common(c_complement);

  CLI::App* c_verify = app.add_subcommand("verify", "verify a complement pair of files");
  c_verify->add_option("matrix", file_a, "synthesis matrix file")->required();
  c_verify->add_option("complement", file_b, "complement matrix file")->required();
  c_verify->add_option("--pad", pad, "target bound the complement was built against");
  add_common(c_verify);

  CLI::App* c_bounds = app.add_subcommand("bounds", "closed-form complement frame bounds");
  c_bounds->add_option("matrix", file_a, "synthesis matrix file")->required();
  c_bounds->add_option("--pad", pad, "pad target bound");
  add_common(c_bounds);

  CLI::App* c_rip = app.add_subcommand("rip", "restricted isometry constant and its transfer");
  c_rip->add_option("matrix", file_a, "unit-norm synthesis matrix file")->required();
  c_rip->add_option("--L", l_cap, "largest subset size")->required();
  add_common(c_rip);

  CLI::App* c_fcomp = app.add_subcommand("fusion-complement", "Naimark complement fusion frame");
  c_fcomp->add_option("fusion", file_a, "fusion frame file")->required();
  c_fcomp->add_option("--out", out_path, "write the complement fusion frame to this file");
  add_common(c_fcomp);

  CLI::App* c_angles = app.add_subcommand("angles", "principal angles between two subspaces");
  c_angles->add_option("basis1", file_a, "first orthonormal basis file")->required();
  c_angles->add_option("basis2", file_b, "second orthonormal basis file")->required();
  add_common(c_angles);

  CLI::App* c_chordal = app.add_subcommand("chordal", "chordal distance between two subspaces");
  c_chordal->add_option("basis1", file_a, "first orthonormal basis file")->required();
  c_chordal->add_option("basis2", file_b, "second orthonormal basis file")->required();
  add_common(c_chordal);

  CLI::App* c_fcheck =
      app.add_subcommand("fusion-check", "angle and chordal transfer on every block pair");
  c_fcheck->add_option("fusion", file_a, "fusion frame file")->required();
  add_common(c_fcheck);

  CLI::App* c_equiv = app.add_subcommand("equivalence", "unitary equivalence of two sequences");
  c_equiv->add_option("matrix1", file_a, "first synthesis matrix file")->required();
  c_equiv->add_option("matrix2", file_b, "second synthesis matrix file")->required();
  add_common(c_equiv);

  CLI::App* c_selftest = app.add_subcommand("selftest", "seeded randomized property battery");
  c_selftest->add_option("--seed", seed, "PRNG seed (SplitMix64 protocol)");
  c_selftest->add_option("--cases", cases, "number of randomized cases")->check(CLI::PositiveNumber);
  add_common(c_selftest);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!(tol > 0.0 && tol < 1.0)) fail(ErrorKind::InvalidInput, "tol must lie in (0, 1)");
    const CompletionMode mode = pad ? CompletionMode::pad(*pad) : CompletionMode::minimal();

    if (c_analyze->parsed()) {
      ToolReport r;
      r.operation = "analyze";
      const LoadedMatrix in = load_matrix_with_digest(file_a, r);
      std::visit([&](const auto& m) { analyze_into(m, tol, r); }, in.matrix);
      return finish(r, json, out);
    }
    if (c_complete->parsed()) {
      ToolReport r;
      r.operation = "complete";
      const LoadedMatrix in = load_matrix_with_digest(file_a, r);
      std::visit([&](const auto& m) { complete_into(m, mode, tol, out_path, r); }, in.matrix);
      return finish(r, json, out);
    }
    if (c_complement->parsed()) {
      ToolReport r;
      r.operation = "complement";
      const LoadedMatrix in = load_matrix_with_digest(file_a, r);
      std::visit([&](const auto& m) { complement_into(m, mode, tol, verify_flag, out_path, r); },
                 in.matrix);
      return finish(r, json, out);
    }
    if (c_verify->parsed()) {
      ToolReport r;
      r.operation = "verify";
      LoadedMatrix in_a = load_matrix_with_digest(file_a, r);
      LoadedMatrix in_b = load_matrix_with_digest(file_b, r);
      auto [ma, mb] = unify_field(std::move(in_a.matrix), std::move(in_b.matrix));
      if (std::holds_alternative<RealMatrix>(ma))
        verify_into(std::get<RealMatrix>(ma), std::get<RealMatrix>(mb), pad, tol, r);
      else
        verify_into(std::get<ComplexMatrix>(ma), std::get<ComplexMatrix>(mb), pad, tol, r);
      return finish(r, json, out);
    }
    if (c_bounds->parsed()) {
      ToolReport r;
      r.operation = "bounds";
      const LoadedMatrix in = load_matrix_with_digest(file_a, r);
      std::visit([&](const auto& m) { bounds_into(m, mode, tol, r); }, in.matrix);
      return finish(r, json, out);
    }
    if (c_rip->parsed()) {
      ToolReport r;
      r.operation = "rip";
      const LoadedMatrix in = load_matrix_with_digest(file_a, r);
      std::visit([&](const auto& m) { rip_into(m, l_cap, tol, r); }, in.matrix);
      return finish(r, json, out);
    }
    if (c_fcomp->parsed()) {
      ToolReport r;
      r.operation = "fusion-complement";
      const AnyFusion ff = load_fusion_with_digest(file_a, r);
      std::visit([&](const auto& v) { fusion_complement_into(v, out_path, r); }, ff);
      return finish(r, json, out);
    }
    if (c_angles->parsed()) {
      ToolReport r;
      r.operation = "angles";
      LoadedMatrix in_a = load_matrix_with_digest(file_a, r);
      LoadedMatrix in_b = load_matrix_with_digest(file_b, r);
      auto [ma, mb] = unify_field(std::move(in_a.matrix), std::move(in_b.matrix));
      if (std::holds_alternative<RealMatrix>(ma))
        angles_into(std::get<RealMatrix>(ma), std::get<RealMatrix>(mb), r);
      else
        angles_into(std::get<ComplexMatrix>(ma), std::get<ComplexMatrix>(mb), r);
      return finish(r, json, out);
    }
    if (c_chordal->parsed()) {
      ToolReport r;
      r.operation = "chordal";
      LoadedMatrix in_a = load_matrix_with_digest(file_a, r);
      LoadedMatrix in_b = load_matrix_with_digest(file_b, r);
      auto [ma, mb] = unify_field(std::move(in_a.matrix), std::move(in_b.matrix));
      if (std::holds_alternative<RealMatrix>(ma))
        chordal_into(std::get<RealMatrix>(ma), std::get<RealMatrix>(mb), r);
      else
        chordal_into(std::get<ComplexMatrix>(ma), std::get<ComplexMatrix>(mb), r);
      return finish(r, json, out);
    }
    if (c_fcheck->parsed()) {
      ToolReport r;
      r.operation = "fusion-check";
      const AnyFusion ff = load_fusion_with_digest(file_a, r);
      std::visit([&](const auto& v) { fusion_check_into(v, tol, r); }, ff);
      return finish(r, json, out);
    }
    if (c_equiv->parsed()) {
      ToolReport r;
      r.operation = "equivalence";
      LoadedMatrix in_a = load_matrix_with_digest(file_a, r);
      LoadedMatrix in_b = load_matrix_with_digest(file_b, r);
      auto [ma, mb] = unify_field(std::move(in_a.matrix), std::move(in_b.matrix));
      if (std::holds_alternative<RealMatrix>(ma))
        equivalence_into(std::get<RealMatrix>(ma), std::get<RealMatrix>(mb), tol, r);
      else
        equivalence_into(std::get<ComplexMatrix>(ma), std::get<ComplexMatrix>(mb), tol, r);
      return finish(r, json, out);
    }
    if (c_selftest->parsed()) {
      ToolReport r;
      r.operation = "selftest";
      selftest_into(seed, cases, r);
      return finish(r, json, out);
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 2;
  }
  err << "no command executed\n";
  return 2;
}

}  // namespace cli
}  // namespace naimark
