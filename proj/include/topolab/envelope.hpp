#pragma once

#include "topolab/rational.hpp"

#include <json.hpp>
#include <string>

namespace topolab {
namespace cert {

using json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "topolab/1";

/// Thrown when a file does not parse as a certificate envelope of the
/// supported schema version.
struct schema_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CertificateEnvelope {
    std::string schema_version = kSchemaVersion;
    std::string command;
    json inputs;
    json payload;
    bool verified = false;

    json to_json() const;
    static CertificateEnvelope from_json(const json& j);
};

/// Computes the payload for a command from its inputs. This is the single
/// code path behind both emission and verification replay.
json compute_payload(const std::string& command, const json& inputs);

/// Whether a freshly computed payload represents a fully passing result.
bool payload_verified(const std::string& command, const json& payload);

/// Builds the envelope for a command: payload plus the verified flag.
CertificateEnvelope emit(const std::string& command, const json& inputs);

struct VerifyReport {
    bool ok = false;
    std::string diagnostic;
};

/// Recomputes the payload (or replays certificate assertions for
/// constructions) from the stored inputs and compares against the stored
/// envelope, ignoring the stored booleans until they are cross-checked.
VerifyReport verify_envelope(const json& envelope_json);

/// First differing JSON path between two documents, "" when equal.
std::string first_difference(const json& a, const json& b, const std::string& path = "$");

} // namespace cert
} // namespace topolab
