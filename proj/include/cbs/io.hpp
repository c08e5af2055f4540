#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cbs/family.hpp"
#include "cbs/linalg.hpp"

namespace cbs {

using Json = nlohmann::ordered_json;

enum class ProblemMode { operators, vectors };

std::string to_string(ProblemMode mode);
/// Throws ValueError for anything but "operators" / "vectors".
ProblemMode parse_mode(std::string_view name);

inline constexpr std::string_view kSchemaVersion = "1";

/// Problem file contents. Exactly one of `operators` / `vectors` is set.
struct ProblemFile {
  std::string schema_version{kSchemaVersion};
  std::size_t dim = 0;
  std::optional<std::vector<Complex>> weights;
  std::optional<std::vector<ComplexMatrix>> operators;
  std::optional<std::vector<CVector>> vectors;

  ProblemMode mode() const noexcept {
    return operators ? ProblemMode::operators : ProblemMode::vectors;
  }
  std::size_t count() const noexcept { return operators ? operators->size() : vectors->size(); }

  friend bool operator==(const ProblemFile&, const ProblemFile&) = default;
};

/// Throws ParseError (syntax), SchemaError (shape, fields, dimensions) or
/// ValueError (non-finite numbers, zero vector in vectors mode).
ProblemFile parse_problem(std::string_view text);
ProblemFile load_problem(const std::filesystem::path& path);

Json problem_to_json(const ProblemFile& problem);

/// Deterministic JSON text: two-space indent, LF endings, floats at 17
/// significant digits; non-finite floats become the strings "inf"/"-inf"/"nan".
std::string dump_json(const Json& doc);

/// Writes `text` to `path`, throwing ValueError when the file cannot be written.
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace cbs
