#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace softqed::harness {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolName = "softqed";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kGeneratorName = "mt19937_64";

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL);
std::string hex64(std::uint64_t v);

/// Independent stream seed for one named check.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view name);

/// 17 significant digits, '.' separator.
std::string csv_number(double v);
/// RFC 4180 quoting when needed.
std::string csv_field(std::string_view s);
std::string csv_row(const std::vector<std::string>& cells);

/// Pretty-printed JSON with a trailing newline.
std::string dump(const nlohmann::ordered_json& j);

/// Skeleton shared by every JSON document: schema_version, tool, command.
nlohmann::ordered_json report_header(std::string_view command);

}  // namespace softqed::harness
