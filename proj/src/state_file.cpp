#include "cohpure/state_file.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cohpure/errors.hpp"
#include <nlohmann/json.hpp>

namespace cohpure {

namespace {

using json = nlohmann::json;

[[noreturn]] void bad(const std::string& what) {
  throw ValidationError(ValidationError::Kind::kArgument, 0.0, "state file: " + what);
}

}  // namespace

StateFile parse_state_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("malformed JSON (") + e.what() + ")");
  }
  if (!doc.is_object()) bad("top level must be an object");
  if (!doc.contains("schema_version") || !doc["schema_version"].is_string()) bad("missing schema_version");
  if (doc["schema_version"].get<std::string>() != kStateSchemaVersion) {
    bad("unsupported schema_version '" + doc["schema_version"].get<std::string>() + "'");
  }
  if (!doc.contains("dim") || !doc["dim"].is_number_unsigned()) bad("missing or invalid dim");
  const auto dim = doc["dim"].get<std::size_t>();
  if (!doc.contains("matrix") || !doc["matrix"].is_array()) bad("missing matrix");
  const json& rows = doc["matrix"];
  if (rows.size() != dim) bad("matrix has " + std::to_string(rows.size()) + " rows, dim is " + std::to_string(dim));
  const auto n = static_cast<Eigen::Index>(dim);
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < dim; ++i) {
    const json& row = rows[i];
    if (!row.is_array() || row.size() != dim) bad("row " + std::to_string(i) + " does not have dim entries");
    for (std::size_t j = 0; j < dim; ++j) {
      const json& z = row[j];
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
        bad("entry (" + std::to_string(i) + ", " + std::to_string(j) + ") is not a [re, im] pair");
      }
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = Complex(z[0].get<double>(), z[1].get<double>());
    }
  }
  StateFile out{validate(m), std::nullopt, std::nullopt};
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) bad("label must be a string");
    out.label = doc["label"].get<std::string>();
  }
  if (doc.contains("dims")) {
    const json& d = doc["dims"];
    if (!d.is_array() || d.size() != 2 || !d[0].is_number_unsigned() || !d[1].is_number_unsigned()) {
      bad("dims must be a pair of positive integers");
    }
    const Bipartition b{d[0].get<std::size_t>(), d[1].get<std::size_t>()};
    if (b.total() != dim) bad("dims do not multiply to dim");
    out.dims = b;
  }
  return out;
}

StateFile read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_state_json(buf.str());
}

std::string state_json(const ComplexMatrix& m, const std::optional<std::string>& label,
                       const std::optional<Bipartition>& dims) {
  json doc;
  doc["schema_version"] = kStateSchemaVersion;
  doc["dim"] = m.rows();
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  doc["matrix"] = std::move(rows);
  if (label) doc["label"] = *label;
  if (dims) doc["dims"] = {dims->dim_a, dims->dim_b};
  return doc.dump(2) + "\n";
}

void write_text_atomic(const std::string& path, const std::string& text) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw ValidationError(ValidationError::Kind::kArgument, 0.0, "cannot write '" + tmp.string() + "'");
    }
    out << text;
    if (!out.flush()) {
      throw ValidationError(ValidationError::Kind::kArgument, 0.0, "write failed for '" + tmp.string() + "'");
    }
  }
  std::filesystem::rename(tmp, target);
}

void write_state_file(const std::string& path, const ComplexMatrix& m,
                      const std::optional<std::string>& label, const std::optional<Bipartition>& dims) {
  write_text_atomic(path, state_json(m, label, dims));
}

}  // namespace cohpure
