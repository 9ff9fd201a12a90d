#ifndef TSID_IO_HPP
#define TSID_IO_HPP

// File formats.
//
// Series: plain text, one number per line. Lines starting with '#' are
// comments; a comment of the form "# step=<float>" (or "# origin=<int>")
// sets the series header.
//
// Systems, models and reports: JSON objects with "format_version": 1, keys
// in sorted order and every floating-point value printed with 17
// significant digits, so equal inputs give byte-identical files.

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"
#include "tsid/dynsys.hpp"
#include "tsid/experiments.hpp"
#include "tsid/ident.hpp"

namespace tsid {

inline constexpr int kFormatVersion = 1;

using Json = nlohmann::json;

/// Deterministic JSON text (2-space indent, %.17g floats, trailing newline).
std::string format_json(const Json& value);
std::string format_double(double v);

TimeSeries parse_series(std::string_view text);
TimeSeries read_series(const std::filesystem::path& path);
std::string format_series(const TimeSeries& series);

Json system_to_json(const SystemSpec& sys);
SystemSpec system_from_json(const Json& j);
SystemSpec read_system(const std::filesystem::path& path);

Json model_to_json(const IdentReport& report);
IdentReport model_from_json(const Json& j);
IdentReport read_model(const std::filesystem::path& path);

Json report_to_json(const ExperimentReport& report);
ExperimentReport report_from_json(const Json& j);
void write_report(const ExperimentReport& report, const std::filesystem::path& path);
ExperimentReport read_report(const std::filesystem::path& path);

std::string read_text(const std::filesystem::path& path);
/// Throws IoError when the file cannot be written.
void write_text(const std::filesystem::path& path, std::string_view content);
Json read_json(const std::filesystem::path& path);

}  // namespace tsid

#endif  // TSID_IO_HPP
