#pragma once

#include <optional>
#include <string>

#include "cohpure/states.hpp"

namespace cohpure {

inline constexpr const char* kStateSchemaVersion = "1.0";

/// On-disk state: JSON {schema_version, dim, matrix: [[[re, im], ...], ...],
/// label?, dims?}. Matrix rows are row-major.
struct StateFile {
  DensityMatrix state;
  std::optional<std::string> label;
  std::optional<Bipartition> dims;
};

// Parses and validates; failures raise ValidationError naming the problem.
StateFile parse_state_json(const std::string& text);
StateFile read_state_file(const std::string& path);

std::string state_json(const ComplexMatrix& m, const std::optional<std::string>& label = {},
                       const std::optional<Bipartition>& dims = {});

// Writes to a sibling temporary and renames it into place.
void write_state_file(const std::string& path, const ComplexMatrix& m,
                      const std::optional<std::string>& label = {},
                      const std::optional<Bipartition>& dims = {});

// Same temporary-then-rename write for any text output.
void write_text_atomic(const std::string& path, const std::string& text);

}  // namespace cohpure
