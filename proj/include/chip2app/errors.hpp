/*
 * Copyright (C) 2026 chip2app authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef CHIP2APP_ERRORS_HPP_
#define CHIP2APP_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace c2a {

/**
 * Error carries a stable machine-readable code alongside the human-readable
 * message. Codes are kebab-case identifiers such as "length-error",
 * "write-once-violation", "not-available", "auth-failed", "malformed",
 * "non-canonical", "state-error", "health-gate", "mode-mismatch".
 *
 * Protocol rejections (chain verification, audits, boot decisions) are NOT
 * errors; they are returned as verdict values by the respective modules.
 */
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

namespace errc {
inline constexpr const char* kLength = "length-error";
inline constexpr const char* kRange = "range-error";
inline constexpr const char* kWriteOnce = "write-once-violation";
inline constexpr const char* kNotAvailable = "not-available";
inline constexpr const char* kAuthFailed = "auth-failed";
inline constexpr const char* kMalformed = "malformed";
inline constexpr const char* kNonCanonical = "non-canonical";
inline constexpr const char* kState = "state-error";
inline constexpr const char* kHealthGate = "health-gate";
inline constexpr const char* kModeMismatch = "mode-mismatch";
inline constexpr const char* kUnknownAlgorithm = "unknown-algorithm";
inline constexpr const char* kUnknownHandle = "unknown-handle";
inline constexpr const char* kValidityExceedsMax = "validity-exceeds-max";
inline constexpr const char* kInvalidToken = "invalid-token";
inline constexpr const char* kIssuerMismatch = "issuer-mismatch";
inline constexpr const char* kIo = "io-error";
inline constexpr const char* kCrypto = "crypto-error";
} // namespace errc

} // namespace c2a

#endif // CHIP2APP_ERRORS_HPP_
