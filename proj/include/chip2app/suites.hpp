/*
 * Copyright (C) 2026 chip2app authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef CHIP2APP_SUITES_HPP_
#define CHIP2APP_SUITES_HPP_

#include <string>
#include <vector>

#include "chip2app/bytes.hpp"
#include "chip2app/crypto.hpp"
#include "chip2app/entropy.hpp"

namespace c2a::suites {

/**
 * Single source of truth for the dual-mode algorithm matrix. Every other
 * module resolves algorithm names through this registry instead of spelling
 * them out; a coverage test enforces that rule over the source tree.
 */

enum class Mode { current, future };

std::string mode_name(Mode mode);
Mode mode_from_name(const std::string& name); // throws on unknown names
std::uint32_t mode_id(Mode mode);
Mode mode_from_id(std::uint32_t id);

enum class Role {
    symmetric_encryption,
    signature,
    key_agreement,
    key_encapsulation,
    hash,
    mac,
    kdf,
};

std::string role_name(Role role);

struct AlgorithmSpec {
    Role role;
    std::string name;
    unsigned security_bits;
    std::size_t key_len;    // public-key bytes (asymmetric) or key bytes (symmetric)
    std::size_t output_len; // signature/tag/digest bytes where applicable
    bool available;         // false when no vetted provider exists in this build
};

// Returns the matrix entries for (mode, role) in preference order.
// Combinations absent from the matrix throw Error("not-available").
const std::vector<AlgorithmSpec>& resolve(Mode mode, Role role);

// First (preferred) entry of resolve().
const AlgorithmSpec& primary(Mode mode, Role role);

// Looks an algorithm up by name across both modes; throws when unknown.
const AlgorithmSpec& spec_by_name(const std::string& name);

// Every algorithm name known to the registry (for coverage checks).
std::vector<std::string> all_names();

/**
 * Hybrid ciphertext: a fresh symmetric key encrypts the payload, and only
 * that key is protected under the recipient's public key. In current mode
 * the protection is ephemeral-static Montgomery key agreement plus a KDF
 * and AEAD key wrap; in future mode it is KEM encapsulation.
 */
struct HybridCiphertext {
    Mode mode;
    std::string transport_alg; // key-agreement or KEM name
    std::string aead_alg;
    Bytes encapsulated_key;    // eph public || wrap nonce || wrapped key
    Bytes nonce;               // body AEAD nonce
    Bytes body;                // AEAD ciphertext || tag
};

HybridCiphertext hybrid_encrypt(const crypto::PublicKey& recipient, ByteSpan plaintext,
                                Mode mode, entropy::RandomSource& source);
Bytes hybrid_decrypt(const crypto::KeyPair& recipient, const HybridCiphertext& ct);

Bytes encode_hybrid(const HybridCiphertext& ct);
HybridCiphertext decode_hybrid(ByteSpan data);

} // namespace c2a::suites

#endif // CHIP2APP_SUITES_HPP_
