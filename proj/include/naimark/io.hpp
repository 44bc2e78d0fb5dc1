#pragma once

#include <cctype>
#include <complex>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "naimark/errors.hpp"
#include "naimark/fusion.hpp"
#include "naimark/linalg.hpp"
#include "naimark/report.hpp"

namespace naimark {

inline constexpr const char* kToolVersion = "1.0.0";

using Json = nlohmann::json;
using AnyMatrix = std::variant<RealMatrix, ComplexMatrix>;
using AnyFusion = std::variant<FusionFrame<double>, FusionFrame<std::complex<double>>>;

inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= static_cast<std::uint64_t>(c);
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[v & 0xF];
    v >>= 4;
  }
  return out;
}

inline ComplexMatrix to_complex(const RealMatrix& m) {
  return m.cast<std::complex<double>>();
}

inline Json matrix_to_json(const RealMatrix& m) {
  Json data = Json::array();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) data.push_back(m(i, j));
  Json out;
  out["field"] = "real";
  out["rows"] = m.rows();
  out["cols"] = m.cols();
  out["data"] = std::move(data);
  return out;
}

inline Json matrix_to_json(const ComplexMatrix& m) {
  Json data = Json::array();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      data.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
  Json out;
  out["field"] = "complex";
  out["rows"] = m.rows();
  out["cols"] = m.cols();
  out["data"] = std::move(data);
  return out;
}

inline Json matrix_to_json(const AnyMatrix& m) {
  return std::visit([](const auto& v) { return matrix_to_json(v); }, m);
}

namespace detail {

inline Index parse_dimension(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    fail(ErrorKind::ParseError, std::string("matrix object needs an integer \"") + key + "\"");
  const auto v = j[key].get<std::int64_t>();
  if (v < 0) fail(ErrorKind::ParseError, std::string("\"") + key + "\" must be non-negative");
  return static_cast<Index>(v);
}

}  // namespace detail

inline AnyMatrix matrix_from_json(const Json& j) {
  if (!j.is_object()) fail(ErrorKind::ParseError, "matrix file must hold a JSON object");
  if (!j.contains("field") || !j["field"].is_string())
    fail(ErrorKind::ParseError, "matrix object needs a string \"field\"");
  const std::string field = j["field"].get<std::string>();
  if (field != "real" && field != "complex")
    fail(ErrorKind::ParseError, "\"field\" must be \"real\" or \"complex\"");
  const Index rows = detail::parse_dimension(j, "rows");
  const Index cols = detail::parse_dimension(j, "cols");
  if (!j.contains("data") || !j["data"].is_array())
    fail(ErrorKind::ParseError, "matrix object needs an array \"data\"");
  const Json& data = j["data"];
  if (static_cast<Index>(data.size()) != rows * cols)
    fail(ErrorKind::ParseError, "\"data\" length " + std::to_string(data.size()) +
                                    " does not equal rows*cols = " + std::to_string(rows * cols));

  if (field == "real") {
    RealMatrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
      for (Index c = 0; c < cols; ++c) {
        const Json& cell = data[static_cast<std::size_t>(i * cols + c)];
        if (!cell.is_number())
          fail(ErrorKind::ParseError,
               "real entry at index " + std::to_string(i * cols + c) + " is not a number");
        m(i, c) = cell.get<double>();
      }
    if (!m.allFinite()) fail(ErrorKind::ParseError, "matrix entries must be finite");
    return m;
  }
  ComplexMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index c = 0; c < cols; ++c) {
      const Json& cell = data[static_cast<std::size_t>(i * cols + c)];
      if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() || !cell[1].is_number())
        fail(ErrorKind::ParseError, "complex entry at index " + std::to_string(i * cols + c) +
                                        " must be a [re, im] pair");
      m(i, c) = {cell[0].get<double>(), cell[1].get<double>()};
    }
  if (!m.allFinite()) fail(ErrorKind::ParseError, "matrix entries must be finite");
  return m;
}

inline RealMatrix matrix_from_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream lines(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      try {
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
        if (used != cell.size()) throw std::invalid_argument(cell);
        row.push_back(v);
      } catch (const std::exception&) {
        fail(ErrorKind::ParseError,
             "line " + std::to_string(line_no) + ": cannot parse \"" + cell + "\" as a number");
      }
    }
    if (line.back() == ',')
      fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": empty trailing cell");
    if (row.empty())
      fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": empty row");
    if (!rows.empty() && row.size() != rows.front().size())
      fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected " +
                                      std::to_string(rows.front().size()) + " entries, found " +
                                      std::to_string(row.size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) fail(ErrorKind::ParseError, "empty CSV input");
  RealMatrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  if (!m.allFinite()) fail(ErrorKind::ParseError, "matrix entries must be finite");
  return m;
}

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    fail(ErrorKind::ParseError, e.what());
  }
}

/// Canonical serialization: two-space indent, keys sorted, trailing newline,
/// shortest round-trip decimals. Byte-stable across parse/serialize cycles.
inline std::string canonical_text(const Json& j) { return j.dump(2) + "\n"; }

inline std::string serialize_matrix(const AnyMatrix& m) { return canonical_text(matrix_to_json(m)); }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::ParseError, "cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::ParseError, "cannot open file for writing: " + path);
  out << content;
  if (!out) fail(ErrorKind::ParseError, "failed writing file: " + path);
}

inline bool has_suffix(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

inline AnyMatrix load_matrix(const std::string& path) {
  const std::string text = read_file(path);
  if (has_suffix(path, ".csv")) return matrix_from_csv(text);
  return matrix_from_json(parse_json_text(text));
}

inline void save_matrix(const std::string& path, const AnyMatrix& m) {
  write_file(path, serialize_matrix(m));
}

template <class Scalar>
Json fusion_to_json(const FusionFrame<Scalar>& ff) {
  Json blocks = Json::array();
  for (const FusionBlock<Scalar>& blk : ff.blocks) {
    Json b;
    b["weight"] = blk.weight;
    b["basis"] = matrix_to_json(blk.basis);
    blocks.push_back(std::move(b));
  }
  Json out;
  out["ambient_dim"] = ff.ambient_dim;
  out["blocks"] = std::move(blocks);
  return out;
}

inline Json fusion_to_json(const AnyFusion& ff) {
  return std::visit([](const auto& v) { return fusion_to_json(v); }, ff);
}

inline AnyFusion fusion_from_json(const Json& j) {
  if (!j.is_object()) fail(ErrorKind::ParseError, "fusion frame file must hold a JSON object");
  const Index dim = detail::parse_dimension(j, "ambient_dim");
  if (!j.contains("blocks") || !j["blocks"].is_array())
    fail(ErrorKind::ParseError, "fusion frame object needs an array \"blocks\"");

  std::vector<std::pair<double, AnyMatrix>> raw;
  bool complex_field = false;
  for (const Json& b : j["blocks"]) {
    if (!b.is_object() || !b.contains("weight") || !b["weight"].is_number() ||
        !b.contains("basis"))
      fail(ErrorKind::ParseError, "each block needs a numeric \"weight\" and a \"basis\" matrix");
    AnyMatrix basis = matrix_from_json(b["basis"]);
    if (std::holds_alternative<ComplexMatrix>(basis)) complex_field = true;
    raw.emplace_back(b["weight"].get<double>(), std::move(basis));
  }

  try {
    if (complex_field) {
      std::vector<FusionBlock<std::complex<double>>> blocks;
      for (auto& [w, basis] : raw) {
        ComplexMatrix q = std::holds_alternative<ComplexMatrix>(basis)
                              ? std::get<ComplexMatrix>(std::move(basis))
                              : to_complex(std::get<RealMatrix>(basis));
        blocks.push_back({std::move(q), w});
      }
      return FusionFrame<std::complex<double>>(dim, std::move(blocks));
    }
    std::vector<FusionBlock<double>> blocks;
    for (auto& [w, basis] : raw)
      blocks.push_back({std::get<RealMatrix>(std::move(basis)), w});
    return FusionFrame<double>(dim, std::move(blocks));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidInput) fail(ErrorKind::ParseError, e.what());
    throw;
  }
}

inline AnyFusion load_fusion(const std::string& path) {
  return fusion_from_json(parse_json_text(read_file(path)));
}

///// Machine-readable run record: named residual checks, named scalar values,
/// notes, inline artifacts, input digests, tool version, optional seed.
struct ToolReport {
  std::string operation;
  std::vector<std::pair<std::string, std::string>> input_digests;
  CheckReport checks;
  std::vector<std::pair<std::string, double>> values;
  std::vector<std::pair<std::string, bool>> flags;
  std::vector<std::pair<std::string, std::string>> notes;
  std::vector<std::pair<std::string, Json>> artifacts;
  std::optional<std::uint64_t> seed;

  bool passed() const { return checks.passed(); }
};

inline Json report_to_json(const ToolReport& r) {
  Json checks = Json::array();
  for (const CheckItem& item : r.checks.items) {
    Json c;
    c["name"] = item.name;
    c["residual"] = item.residual;
    c["tolerance"] = item.tolerance;
    c["pass"] = item.pass;
    checks.push_back(std::move(c));
  }
  Json digests = Json::object();
  for (const auto& [path, digest] : r.input_digests) digests[path] = digest;
  Json values = Json::object();
  for (const auto& [name, value] : r.values) values[name] = value;
  Json flags = Json::object();
  for (const auto& [name, value] : r.flags) flags[name] = value;
  Json notes = Json::array();
  for (const auto& [name, text] : r.notes) {
    Json n;
    n["name"] = name;
    n["text"] = text;
    notes.push_back(std::move(n));
  }
  Json artifacts = Json::object();
  for (const auto& [name, artifact] : r.artifacts) artifacts[name] = artifact;

  Json out;
  out["operation"] = r.operation;
  out["pass"] = r.passed();
  out["checks"] = std::move(checks);
  out["flags"] = std::move(flags);
  out["values"] = std::move(values);
  out["notes"] = std::move(notes);
  out["artifacts"] = std::move(artifacts);
  out["inputs"] = std::move(digests);
  out["version"] = kToolVersion;
  if (r.seed) out["seed"] = *r.seed;
  return out;
}

}  // namespace naimark
