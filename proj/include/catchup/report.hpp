#ifndef CATCHUP_REPORT_HPP
#define CATCHUP_REPORT_HPP

#include "catchup/evaluation.hpp"
#include "catchup/records.hpp"
#include "catchup/rescue.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace catchup {

inline constexpr const char *version = "0.3.0";

/// Everything needed to reproduce a run. Two runs with equal manifests
/// (ignoring the timestamp) produce identical reports.
struct RunManifest
{
    std::string command;
    std::vector<std::pair<std::string, std::string>> flags; // sorted by name
    std::uint64_t seed = 0;
    std::string input_digest; // empty when there is no input file
    std::string tool_version = version;
    std::string timestamp;
};

enum class Format { Text, Machine };

/// "fnv1a64:<16 hex digits>" over the raw file bytes.
std::string file_digest(const std::filesystem::path &path);

/// Current UTC time, ISO 8601.
std::string utc_timestamp();

// Text reports start with '#' manifest lines; machine reports are a single
// JSON object with a "manifest" member. The timestamp is always on its own
// line ("# timestamp: ..." or "  \"timestamp\": ...").
void write_cases(std::ostream &out, Format format, const RunManifest &manifest, std::span<const RescuableCase> cases);
void write_error_reports(std::ostream &out, Format format, const RunManifest &manifest,
                         std::span<const ErrorReport> reports);
void write_decisions(std::ostream &out, Format format, const RunManifest &manifest,
                     std::span<const RescueDecision> decisions);
void write_manifest_only(std::ostream &out, Format format, const RunManifest &manifest, const std::string &note);

} // namespace catchup

#endif
