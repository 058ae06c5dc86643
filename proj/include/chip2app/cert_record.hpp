/*
 * Copyright (C) 2026 chip2app authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef CHIP2APP_CERT_RECORD_HPP_
#define CHIP2APP_CERT_RECORD_HPP_

#include <map>
#include <string>

#include "chip2app/bytes.hpp"

namespace c2a {

/**
 * Algorithm-agnostic certificate. Signature covers the canonical compact
 * encoding truncated before signature_alg (see compact_cert).
 *
 * Invariants: not_before < not_after; end-entity validity spans at most
 * 398 days; serial is 16 bytes, unique per issuer.
 */
struct CertificateRecord {
    std::uint32_t version = 1;
    Bytes serial;
    std::string issuer_id;
    std::string subject_id;
    std::string public_key_alg;
    Bytes public_key;
    EpochSeconds not_before = 0;
    EpochSeconds not_after = 0;
    std::map<std::string, Bytes> extensions;
    std::string signature_alg;
    Bytes signature;

    bool operator==(const CertificateRecord&) const = default;
};

inline constexpr EpochSeconds kSecondsPerDay = 86400;
inline constexpr EpochSeconds kMaxEndEntityValidity = 398 * kSecondsPerDay;

} // namespace c2a

#endif // CHIP2APP_CERT_RECORD_HPP_
