/*
 * Copyright (C) 2026 chip2app authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef CHIP2APP_INTEGRITY_HPP_
#define CHIP2APP_INTEGRITY_HPP_

#include <string>
#include <vector>

#include "chip2app/cert_record.hpp"
#include "chip2app/keystore.hpp"
#include "chip2app/pki.hpp"
#include "chip2app/suites.hpp"

namespace c2a::integrity {

/**
 * Message authentication. CMAC is implemented from the block-cipher
 * construction (zero-block subkey derivation, CBC chaining, final-block
 * masking); HMAC from the nested-hash construction. Unit tests cross-check
 * both against published vectors and an independent provider implementation.
 */
struct MacAlgorithm {
    enum class Kind { cmac, hmac };
    Kind kind;
    std::string cipher_or_hash; // block cipher key via key_len, or hash name
    std::size_t key_len;        // required key bytes for cmac; 0 = any (hmac)
    std::size_t tag_len;
};

// Builds a MacAlgorithm from a registry MAC name such as CMAC-AES-128,
// HMAC-SHA-256 or HMAC-SHA3-384.
MacAlgorithm mac_algorithm(const std::string& registry_name);

Bytes mac_tag(const MacAlgorithm& alg, ByteSpan key, ByteSpan message);

// Constant-time with respect to tag contents.
bool mac_verify(const MacAlgorithm& alg, ByteSpan key, ByteSpan message, ByteSpan tag);

/**
 * Signed firmware metadata. The signature covers the canonical manifest
 * body (same deterministic encoding rules as certificates), so manifests
 * survive re-encoding byte-identically.
 */
struct FirmwareManifest {
    Bytes image_digest;
    std::string digest_alg;
    std::uint64_t image_len = 0;
    std::string fw_version; // semantic version "major.minor.patch"
    std::string device_model;
    suites::Mode mode = suites::Mode::current;
    CertificateRecord signer_cert;
    Bytes signature;
};

Bytes encode_manifest(const FirmwareManifest& manifest);
FirmwareManifest decode_manifest(ByteSpan data);
Bytes manifest_to_be_signed(const FirmwareManifest& manifest);

struct SignerContext {
    crypto::KeyPair key;
    CertificateRecord certificate;
};

// Signs an image; refuses a signer certificate that is outside its validity
// window at `now`.
FirmwareManifest sign_firmware(ByteSpan image, const std::string& fw_version,
                               const std::string& device_model, const SignerContext& signer,
                               suites::Mode mode, EpochSeconds now);

struct BootVerdict {
    bool boot = false;
    std::string reason; // first failing check, in fixed order
};

/**
 * Secure-boot decision, checks in fixed order:
 *   1. signer certificate chains to the trust root  -> untrusted-signer
 *   2. manifest signature verifies                  -> bad-signature
 *   3. image length matches                         -> length-mismatch
 *   4. recomputed image digest matches              -> digest-mismatch
 */
BootVerdict secure_boot_verify(ByteSpan image, const FirmwareManifest& manifest,
                               const CertificateRecord& trust_root, EpochSeconds now);

/**
 * Element-assisted variant: reads the trust root from OTP slot 1 and
 * enforces the anti-rollback rule (manifest version must not precede the
 * last booted version; reason "rollback"). Records the booted version on
 * success.
 */
BootVerdict secure_boot_verify(ByteSpan image, const FirmwareManifest& manifest,
                               keystore::SecureElement& element, EpochSeconds now);

// Semantic-version comparison: negative, zero or positive like strcmp.
int compare_versions(const std::string& a, const std::string& b);

} // namespace c2a::integrity

#endif // CHIP2APP_INTEGRITY_HPP_
