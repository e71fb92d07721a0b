#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "wyskew/states.hpp"

namespace wyskew::io {

inline constexpr const char *kSchemaTag = "wy-skew/1";
inline constexpr const char *kToolVersion = "1.0.0";

/// Decimal text with up to 17 significant digits; round-trips any finite
/// binary64 exactly.
std::string format_double(double value);

/// Serializer used for every file this tool writes: insertion-ordered keys,
/// floats through format_double, two-space indentation. Deterministic byte
/// output for identical documents.
std::string dump_json(const nlohmann::ordered_json &doc);

/// Throws std::runtime_error when a "schema" field is present but not ours.
void require_schema(const nlohmann::json &doc, const std::string &context);

/// StateFile: {"schema", "local_dims", "amplitudes_re", "amplitudes_im"?,
/// "normalize"?}. Lists of amplitudes must have length prod(local_dims);
/// normalize defaults to true. When normalization rescales by more than 1e-9
/// and `warning` is non-null, a human-readable note is stored there.
PureState parse_state_file(const std::string &text, std::string *warning = nullptr);
PureState load_state_file(const std::filesystem::path &path, std::string *warning = nullptr);
nlohmann::ordered_json state_file_json(const PureState &psi);
std::string write_state_file(const PureState &psi);

/// ObservableFile: {"schema", "dim", "entries_re", "entries_im"?}. The
/// assembled matrix must be Hermitian within 1e-12 entrywise.
HermitianMatrix parse_observable_file(const std::string &text);
HermitianMatrix load_observable_file(const std::filesystem::path &path);
nlohmann::ordered_json observable_file_json(const HermitianMatrix &k);
std::string write_observable_file(const HermitianMatrix &k);

void save_text(const std::filesystem::path &path, const std::string &text);
std::string load_text(const std::filesystem::path &path);

}  // namespace wyskew::io
