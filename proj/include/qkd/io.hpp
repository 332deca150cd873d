#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qkd/core.hpp"

namespace qkd {

inline constexpr const char* kToolVersion = "0.1.0";

// Parse failure with the offending line (1-based) in the message.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using MeasuredRow = std::pair<ChannelPoint, MeasuredStats>;

// Reads a measured-statistics table. Expected header:
//   loss_db,q_mu,e_mu,q_nu,e_nu,y0
// Scientific notation is accepted. Throws ParseError on malformed input
// and std::invalid_argument (naming the field) on invariant violations.
std::vector<MeasuredRow> parse_measured_table(const std::string& path);

// Writes rows in the same schema, 17 significant digits.
void write_measured_table(const std::string& path,
                          const std::vector<MeasuredRow>& rows);

// Full-precision scientific formatting used by all CSV output.
std::string format_double(double v);

// FNV-1a 64-bit digest of a file's bytes, as 16 hex characters.
std::string file_digest(const std::string& path);

// Builds the reproducibility manifest attached to every command output:
// command name, parameter map, input digests, tool version, and an
// ISO-8601 UTC timestamp.
nlohmann::json make_manifest(const std::string& command,
                             const nlohmann::json& parameters,
                             const std::vector<std::string>& input_files);

} // namespace qkd
