/*
 * Copyright (C) 2026 chip2app authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef CHIP2APP_CRYPTO_HPP_
#define CHIP2APP_CRYPTO_HPP_

#include <string>

#include "chip2app/bytes.hpp"

namespace c2a::crypto {

/**
 * Thin wrappers over the system crypto provider. Primitive internals
 * (AES, the SHA families, Edwards/Montgomery curve arithmetic) are
 * deliberately not reimplemented here; this layer only fixes byte-level
 * conventions (raw keys, seed lengths, nonce sizes) for the rest of the
 * project.
 */

// -- Hashing ----------------------------------------------------------------

Bytes digest(const std::string& hash_name, ByteSpan data); // SHA-256, SHA3-384, SHA3-512
std::size_t digest_len(const std::string& hash_name);
std::size_t hash_block_len(const std::string& hash_name); // input block size, for HMAC

// -- Signatures and key agreement -------------------------------------------

struct KeyPair {
    std::string algorithm; // registry name: Ed25519, Ed448, X25519, X448
    Bytes private_key;     // raw seed/scalar; never leaves trusted modules
    Bytes public_key;
};

struct PublicKey {
    std::string algorithm;
    Bytes key;
};

// Seed length for deterministic key generation from an entropy source.
std::size_t keypair_seed_len(const std::string& algorithm);
std::size_t public_key_len(const std::string& algorithm);
std::size_t signature_len(const std::string& algorithm);

// Builds a key pair from raw seed bytes. Deterministic: equal seeds give
// equal key pairs. Throws Error("not-available") for algorithms the
// provider cannot instantiate (post-quantum families, until the provider
// ships them).
KeyPair keypair_from_seed(const std::string& algorithm, ByteSpan seed);

bool signature_available(const std::string& algorithm);

Bytes sign(const std::string& algorithm, ByteSpan private_key, ByteSpan message);
bool verify(const std::string& algorithm, ByteSpan public_key, ByteSpan message,
            ByteSpan signature);

// Diffie-Hellman over the Montgomery curves. Throws on malformed peer keys.
Bytes key_agree(const std::string& algorithm, ByteSpan private_key, ByteSpan peer_public);

// -- AEAD --------------------------------------------------------------------

inline constexpr std::size_t kAeadNonceLen = 12;
inline constexpr std::size_t kAeadTagLen = 16;

// AES-GCM; name selects the key size (AES-128-GCM or AES-256-GCM).
// Returns ciphertext || tag.
Bytes aead_seal(const std::string& aead_name, ByteSpan key, ByteSpan nonce,
                ByteSpan plaintext, ByteSpan aad);
// Throws Error("auth-failed") when the tag does not verify.
Bytes aead_open(const std::string& aead_name, ByteSpan key, ByteSpan nonce,
                ByteSpan ciphertext_and_tag, ByteSpan aad);
std::size_t aead_key_len(const std::string& aead_name);

// -- Block cipher (building block for CMAC) ----------------------------------

// Single-block AES encryption, key length 16 or 32 bytes.
Bytes aes_encrypt_block(ByteSpan key, ByteSpan block16);

// -- Key derivation -----------------------------------------------------------

// One-step counter KDF: out = H(be32(1) || secret || label || context) || ...
// truncated to out_len.
Bytes kdf_one_step(const std::string& hash_name, ByteSpan secret, ByteSpan label,
                   ByteSpan context, std::size_t out_len);

// -- Misc ---------------------------------------------------------------------

bool ct_equal(ByteSpan a, ByteSpan b); // constant-time once lengths match
Bytes system_random(std::size_t n);

} // namespace c2a::crypto

#endif // CHIP2APP_CRYPTO_HPP_
