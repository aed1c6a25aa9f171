#pragma once

#include <string>
#include <string_view>

#include "cli/run_config.hpp"
#include "jhit/field.hpp"

namespace jhit::cli {

/// 17 significant digits, enough for an exact double round trip.
std::string format_double(double v);

/// Writes to a temporary sibling file and renames it over `path`.
void write_file_atomic(const std::string& path, std::string_view content);

std::string join_path(const std::string& dir, const std::string& file);

/// `# jhit <command>` followed by one `# key=value` line per setting.
std::string config_comment_block(std::string_view command, const KeyValues& config);

inline constexpr std::string_view kFieldHeader = "i,j,x,z,V";

/// Field CSV: optional leading `#` lines, then `i,j,x,z,V` and one row per vertex.
std::string field_csv_text(const FieldGrid& field, std::string_view comments = {});
FieldGrid parse_field_csv(std::string_view text);
FieldGrid read_field_csv(const std::string& path);

}  // namespace jhit::cli
