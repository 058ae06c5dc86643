/*
 * Copyright (C) 2026 chip2app authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef CHIP2APP_ENVELOPE_HPP_
#define CHIP2APP_ENVELOPE_HPP_

#include <string>
#include <vector>

#include "chip2app/bytes.hpp"

namespace c2a::envelope {

// Text envelopes wrap binary payloads as
//   -----BEGIN C2A <KIND>-----
//   <base64, 64 columns>
//   -----END C2A <KIND>-----
// Files may carry several envelopes back to back (certificate chains).

std::string wrap(std::string_view kind, ByteSpan payload);

// Returns the payload of the first envelope of the given kind.
// Throws Error("malformed") when none is present or framing is broken.
Bytes unwrap(std::string_view kind, std::string_view text);

// Returns payloads of every envelope of the given kind, in file order.
std::vector<Bytes> unwrap_all(std::string_view kind, std::string_view text);

inline constexpr std::string_view kCertificate = "CERTIFICATE";
inline constexpr std::string_view kCsr = "CSR";
inline constexpr std::string_view kCrl = "CRL";
inline constexpr std::string_view kFirmwareManifest = "FIRMWARE MANIFEST";
inline constexpr std::string_view kPrivateKey = "PRIVATE KEY";
inline constexpr std::string_view kPublicKey = "PUBLIC KEY";
inline constexpr std::string_view kHybridCiphertext = "HYBRID CIPHERTEXT";
inline constexpr std::string_view kSignedDataBundle = "SIGNED DATA BUNDLE";

} // namespace c2a::envelope

#endif // CHIP2APP_ENVELOPE_HPP_
