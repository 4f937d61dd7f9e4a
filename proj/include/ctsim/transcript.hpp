// transcript.hpp
// JSON serialization of protocol transcripts and reports. Key order is
// fixed (insertion order), floating-point numbers are written with 17
// significant digits, and no wall-clock fields exist, so identical runs
// produce byte-identical files.

#pragma once

#include <string>

#include <json.hpp>

#include "ctsim/sdc.hpp"
#include "ctsim/teleport.hpp"

namespace ctsim {

inline constexpr int kTranscriptSchemaVersion = 1;

nlohmann::ordered_json to_json(const MeasurementRecord& record);
nlohmann::ordered_json to_json(const VerificationReport& report);
nlohmann::ordered_json to_json(const SessionTranscript& transcript);

// Serializes with 2-space indentation; doubles at 17 significant digits.
std::string dump_json(const nlohmann::ordered_json& value);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

std::string bits_to_string(const MessageBits& bits);
MessageBits parse_bits(const std::string& text); // throws SimError on non-[01]

} // namespace ctsim
