// transcript.cpp

#include "ctsim/transcript.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace ctsim {

namespace {

using nlohmann::ordered_json;

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

// nlohmann's dump() prints shortest-roundtrip doubles; the transcript
// format pins 17 significant digits instead, so walk the tree ourselves.
void emit(const ordered_json& value, std::string& out, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent) * (depth + 1), ' ');
    const std::string close_pad(static_cast<std::size_t>(indent) * depth, ' ');
    switch (value.type()) {
        case ordered_json::value_t::object: {
            if (value.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (const auto& [key, child] : value.items()) {
                if (!first) out += ",\n";
                first = false;
                out += pad;
                out += ordered_json(key).dump(); // escaped key
                out += ": ";
                emit(child, out, indent, depth + 1);
            }
            out += "\n" + close_pad + "}";
            return;
        }
        case ordered_json::value_t::array: {
            if (value.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            bool first = true;
            for (const auto& child : value) {
                if (!first) out += ",\n";
                first = false;
                out += pad;
                emit(child, out, indent, depth + 1);
            }
            out += "\n" + close_pad + "]";
            return;
        }
        case ordered_json::value_t::number_float:
            out += format_double(value.get<double>());
            return;
        default:
            out += value.dump();
            return;
    }
}

} // namespace

nlohmann::ordered_json to_json(const MeasurementRecord& record) {
    return ordered_json{{"party", record.party},
                        {"basis", record.basis},
                        {"outcome", record.outcome},
                        {"probability", record.probability}};
}

nlohmann::ordered_json to_json(const VerificationReport& report) {
    return ordered_json{{"tested", report.tested},
                        {"z_failures", report.z_failures},
                        {"x_failures", report.x_failures},
                        {"failure_rate", report.failure_rate},
                        {"passed", report.passed}};
}

nlohmann::ordered_json to_json(const SessionTranscript& transcript) {
    ordered_json entries = ordered_json::array();
    for (const auto& entry : transcript.entries)
        entries.push_back(ordered_json{{"bit", entry.encoded_bit},
                                       {"charlie", static_cast<int>(entry.charlie)},
                                       {"bell", to_label(entry.bell)},
                                       {"correction", to_label(entry.correction)},
                                       {"decoded", entry.decoded_bit}});
    return ordered_json{
        {"seed", transcript.seed},
        {"permission", transcript.permission},
        {"verification",
         transcript.verification ? to_json(*transcript.verification) : ordered_json()},
        {"entries", std::move(entries)},
        {"decoded",
         transcript.decoded ? ordered_json(bits_to_string(*transcript.decoded))
                            : ordered_json()},
        {"aborted_reason",
         transcript.aborted_reason ? ordered_json(*transcript.aborted_reason)
                                   : ordered_json()}};
}

std::string dump_json(const nlohmann::ordered_json& value) {
    std::string out;
    emit(value, out, 2, 0);
    out += "\n";
    return out;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SimError("cannot open " + path + " for writing");
    out << text;
    if (!out) throw SimError("failed writing " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SimError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string bits_to_string(const MessageBits& bits) {
    std::string s;
    s.reserve(bits.size());
    for (int b : bits) s.push_back(b ? '1' : '0');
    return s;
}

MessageBits parse_bits(const std::string& text) {
    if (text.empty()) throw SimError("empty bitstring");
    MessageBits bits;
    bits.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1')
            throw SimError("bitstring must match [01]+");
        bits.push_back(c == '1' ? 1 : 0);
    }
    return bits;
}

} // namespace ctsim
