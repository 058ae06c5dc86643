/*
 * Copyright (C) 2026 chip2app authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef CHIP2APP_TLS_POLICY_HPP_
#define CHIP2APP_TLS_POLICY_HPP_

#include <optional>
#include <string>
#include <vector>

#include "chip2app/cert_record.hpp"
#include "chip2app/pki.hpp"
#include "chip2app/suites.hpp"

namespace c2a::tls {

// The only approvable TLS 1.3 suites; anything else in a config is audit
// input, never a selectable outcome.
inline constexpr std::string_view kAes128GcmSha256 = "TLS_AES_128_GCM_SHA256";
inline constexpr std::string_view kAes256GcmSha384 = "TLS_AES_256_GCM_SHA384";
inline constexpr std::string_view kChacha20Poly1305Sha256 = "TLS_CHACHA20_POLY1305_SHA256";

enum class DeviceClass { standard, constrained };

DeviceClass device_class_from_name(const std::string& name);
std::string device_class_name(DeviceClass device_class);

struct CipherSuitePolicy {
    DeviceClass device_class = DeviceClass::standard;
    suites::Mode mode = suites::Mode::current;
    std::vector<std::string> preference; // server order, strongest first
    std::string min_version = "1.3";
    bool allow_tls12_fallback = false;
    bool require_ephemeral = true;
    bool forbid_zero_rtt = true;
    bool require_client_cert_revocation_check = true;
};

// Device-class profile. Standard devices get all three suites in strength
// order; constrained devices get exactly the minimal AES-128 suite.
// require_ephemeral is true for every class/mode combination.
CipherSuitePolicy build_profile(DeviceClass device_class, suites::Mode mode);

struct Negotiation {
    bool terminated = false;
    std::string selected; // set iff !terminated
};

// Server-preference negotiation: the first policy suite present anywhere in
// the client offer wins; an empty intersection terminates the connection.
Negotiation negotiate(const std::vector<std::string>& client_offer,
                      const CipherSuitePolicy& policy);

struct ServerConfigInput {
    std::vector<std::string> tls_versions;
    std::vector<std::string> offered_suites;
    std::string key_exchange = "ephemeral"; // ephemeral | static
    bool zero_rtt_enabled = false;
    bool client_auth = false;
    bool revocation_checking = false;
    std::string certificate_file;
};

// Line-oriented `key = value` format; '#' starts a comment. Lists are
// comma-separated. Unknown keys are rejected.
ServerConfigInput parse_config(const std::string& text);

enum class Severity { pass, warn, fail };

std::string severity_name(Severity severity);

struct Finding {
    std::string rule_id;
    Severity severity = Severity::pass;
    std::string message;
};

struct AuditReport {
    std::vector<Finding> findings;
    bool compliant = false; // no fail findings
};

/**
 * Fixed rule catalog:
 *  R1 protocol versions (TLS 1.3 only; constrained 1.2 downgrades warn when
 *     the policy allows fallback), R2 ephemeral key exchange, R3 0-RTT off,
 *  R4 offered suites within the policy list, R5 certificate validity
 *     (<= 398 days, valid now), R6 one signature algorithm across the chain,
 *  R7 revocation checking whenever client certificates are used.
 */
AuditReport audit_config(const ServerConfigInput& config, const CipherSuitePolicy& policy,
                         const std::vector<CertificateRecord>& certificate_chain,
                         EpochSeconds now, const pki::RevocationList* crl = nullptr);

// Convenience wrapper: reads and parses config.certificate_file (envelope
// with one or more certificates, leaf first), then audits.
AuditReport audit_config_file(const std::string& config_path, const CipherSuitePolicy& policy,
                              EpochSeconds now, const pki::RevocationList* crl = nullptr);

} // namespace c2a::tls

#endif // CHIP2APP_TLS_POLICY_HPP_
