/*
 * Copyright (C) 2026 chip2app authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "chip2app/suites.hpp"

#include <map>

#include "chip2app/cbor.hpp"
#include "chip2app/errors.hpp"

namespace c2a::suites {

namespace {

// Post-quantum families resolve with their recommended mid-level parameter
// sets (ML-KEM-768, ML-DSA-65, SLH-DSA-SHA2-128s) but stay flagged
// unavailable until the crypto provider ships vetted implementations.
const bool kPqAvailable = false;

using Matrix = std::map<std::pair<Mode, Role>, std::vector<AlgorithmSpec>>;

Matrix build_matrix() {
    Matrix m;
    // Current mode.
    m[{Mode::current, Role::symmetric_encryption}] = {
        {Role::symmetric_encryption, "AES-128-GCM", 128, 16, 16, true},
        {Role::symmetric_encryption, "AES-256-GCM", 256, 32, 16, true},
    };
    m[{Mode::current, Role::signature}] = {
        {Role::signature, "Ed25519", 128, 32, 64, true},
        {Role::signature, "Ed448", 224, 57, 114, true},
    };
    // Montgomery counterparts of the signature curves; the matrix lists no
    // encryption-capable public-key algorithm, and the hybrid construction
    // and chip authentication need key agreement on the same curve family.
    m[{Mode::current, Role::key_agreement}] = {
        {Role::key_agreement, "X25519", 128, 32, 32, true},
        {Role::key_agreement, "X448", 224, 56, 56, true},
    };
    m[{Mode::current, Role::hash}] = {
        {Role::hash, "SHA-256", 128, 0, 32, true},
    };
    m[{Mode::current, Role::mac}] = {
        {Role::mac, "CMAC-AES-128", 128, 16, 16, true},
        {Role::mac, "HMAC-SHA-256", 128, 0, 32, true},
    };
    m[{Mode::current, Role::kdf}] = {
        {Role::kdf, "OneStep-KDF-SHA-256", 128, 0, 32, true},
    };

    // Future mode.
    m[{Mode::future, Role::symmetric_encryption}] = {
        {Role::symmetric_encryption, "AES-256-GCM", 256, 32, 16, true},
    };
    m[{Mode::future, Role::key_encapsulation}] = {
        {Role::key_encapsulation, "ML-KEM", 192, 1184, 1088, kPqAvailable},
    };
    m[{Mode::future, Role::signature}] = {
        {Role::signature, "ML-DSA", 192, 1952, 3309, kPqAvailable},
        {Role::signature, "SLH-DSA", 128, 32, 7856, kPqAvailable},
    };
    m[{Mode::future, Role::hash}] = {
        {Role::hash, "SHA3-384", 192, 0, 48, true},
        {Role::hash, "SHA3-512", 256, 0, 64, true},
    };
    m[{Mode::future, Role::mac}] = {
        {Role::mac, "CMAC-AES-128", 128, 16, 16, true},
        {Role::mac, "HMAC-SHA3-384", 192, 0, 48, true},
    };
    m[{Mode::future, Role::kdf}] = {
        {Role::kdf, "OneStep-KDF-SHA3-384", 192, 0, 48, true},
    };
    return m;
}

const Matrix& matrix() {
    static const Matrix m = build_matrix();
    return m;
}

const std::string kWrapLabel = "c2a-hybrid-wrap-v1";

// Mode's preferred AEAD / hash for the hybrid construction.
const AlgorithmSpec& mode_aead(Mode mode) {
    return primary(mode, Role::symmetric_encryption);
}
const AlgorithmSpec& mode_hash(Mode mode) { return primary(mode, Role::hash); }

} // namespace

std::string mode_name(Mode mode) {
    return mode == Mode::current ? "current" : "future";
}

Mode mode_from_name(const std::string& name) {
    if (name == "current") return Mode::current;
    if (name == "future") return Mode::future;
    throw Error(errc::kMalformed, "unknown mode: " + name);
}

std::uint32_t mode_id(Mode mode) { return mode == Mode::current ? 0 : 1; }

Mode mode_from_id(std::uint32_t id) {
    if (id == 0) return Mode::current;
    if (id == 1) return Mode::future;
    throw Error(errc::kMalformed, "unknown mode id: " + std::to_string(id));
}

std::string role_name(Role role) {
    switch (role) {
    case Role::symmetric_encryption: return "symmetric-encryption";
    case Role::signature: return "signature";
    case Role::key_agreement: return "key-agreement";
    case Role::key_encapsulation: return "key-encapsulation";
    case Role::hash: return "hash";
    case Role::mac: return "mac";
    case Role::kdf: return "kdf";
    }
    return "?";
}

const std::vector<AlgorithmSpec>& resolve(Mode mode, Role role) {
    const auto it = matrix().find({mode, role});
    if (it == matrix().end()) {
        throw Error(errc::kNotAvailable, "no " + role_name(role) + " entry in " +
                                             mode_name(mode) + " mode");
    }
    return it->second;
}

const AlgorithmSpec& primary(Mode mode, Role role) { return resolve(mode, role).front(); }

const AlgorithmSpec& spec_by_name(const std::string& name) {
    for (const auto& [key, specs] : matrix()) {
        for (const AlgorithmSpec& spec : specs) {
            if (spec.name == name) return spec;
        }
    }
    throw Error(errc::kUnknownAlgorithm, "not a registry algorithm: " + name);
}

std::vector<std::string> all_names() {
    std::vector<std::string> names;
    for (const auto& [key, specs] : matrix()) {
        for (const AlgorithmSpec& spec : specs) {
            bool seen = false;
            for (const std::string& n : names) seen = seen || n == spec.name;
            if (!seen) names.push_back(spec.name);
        }
    }
    return names;
}

HybridCiphertext hybrid_encrypt(const crypto::PublicKey& recipient, ByteSpan plaintext,
                                Mode mode, entropy::RandomSource& source) {
    if (mode == Mode::future) {
        const AlgorithmSpec& kem = primary(mode, Role::key_encapsulation);
        if (!kem.available) {
            throw Error(errc::kNotAvailable,
                        kem.name + " is flagged not-available in this build");
        }
        throw Error(errc::kNotAvailable, "future-mode transport unreachable");
    }

    // The recipient key must be one of the mode's key-agreement algorithms.
    const auto& transports = resolve(mode, Role::key_agreement);
    const AlgorithmSpec* transport = nullptr;
    for (const AlgorithmSpec& t : transports) {
        if (t.name == recipient.algorithm) transport = &t;
    }
    if (transport == nullptr) {
        throw Error(errc::kModeMismatch, "recipient key algorithm " + recipient.algorithm +
                                             " does not match " + mode_name(mode) + " mode");
    }
    if (recipient.key.size() != transport->key_len) {
        throw Error(errc::kMalformed, "recipient public key has wrong length");
    }

    const AlgorithmSpec& aead = mode_aead(mode);
    const AlgorithmSpec& hash = mode_hash(mode);

    // Fresh symmetric key, gated by the entropy health tests.
    const Bytes cek = entropy::gated_draw(source, aead.key_len);
    const Bytes eph_seed = source.draw(crypto::keypair_seed_len(transport->name));
    const crypto::KeyPair eph = crypto::keypair_from_seed(transport->name, eph_seed);

    const Bytes shared = crypto::key_agree(transport->name, eph.private_key, recipient.key);
    Bytes kdf_context = eph.public_key;
    append(kdf_context, recipient.key);
    const Bytes kek = crypto::kdf_one_step(hash.name, shared, str_span(kWrapLabel),
                                           kdf_context, aead.key_len);

    const Bytes wrap_nonce = source.draw(crypto::kAeadNonceLen);
    const Bytes wrapped = crypto::aead_seal(aead.name, kek, wrap_nonce, cek, {});

    HybridCiphertext ct;
    ct.mode = mode;
    ct.transport_alg = transport->name;
    ct.aead_alg = aead.name;
    ct.encapsulated_key = eph.public_key;
    append(ct.encapsulated_key, wrap_nonce);
    append(ct.encapsulated_key, wrapped);
    ct.nonce = source.draw(crypto::kAeadNonceLen);
    ct.body = crypto::aead_seal(aead.name, cek, ct.nonce, plaintext, {});
    return ct;
}

Bytes hybrid_decrypt(const crypto::KeyPair& recipient, const HybridCiphertext& ct) {
    if (ct.mode == Mode::future) {
        throw Error(errc::kNotAvailable,
                    "future-mode transport is flagged not-available in this build");
    }
    if (recipient.algorithm != ct.transport_alg) {
        throw Error(errc::kModeMismatch, "private key algorithm does not match ciphertext");
    }
    const AlgorithmSpec& transport = spec_by_name(ct.transport_alg);
    const AlgorithmSpec& aead = spec_by_name(ct.aead_alg);
    const AlgorithmSpec& hash = mode_hash(ct.mode);

    const std::size_t wrapped_len = aead.key_len + crypto::kAeadTagLen;
    const std::size_t expect = transport.key_len + crypto::kAeadNonceLen + wrapped_len;
    if (ct.encapsulated_key.size() != expect) {
        throw Error(errc::kMalformed, "encapsulated key has wrong length");
    }
    ByteSpan ek(ct.encapsulated_key);
    const ByteSpan eph_public = ek.first(transport.key_len);
    const ByteSpan wrap_nonce = ek.subspan(transport.key_len, crypto::kAeadNonceLen);
    const ByteSpan wrapped = ek.subspan(transport.key_len + crypto::kAeadNonceLen);

    const Bytes shared =
        crypto::key_agree(transport.name, recipient.private_key, eph_public);
    Bytes kdf_context(eph_public.begin(), eph_public.end());
    append(kdf_context, recipient.public_key);
    const Bytes kek = crypto::kdf_one_step(hash.name, shared, str_span(kWrapLabel),
                                           kdf_context, aead.key_len);
    const Bytes cek = crypto::aead_open(aead.name, kek, wrap_nonce, wrapped, {});
    return crypto::aead_open(aead.name, cek, ct.nonce, ct.body, {});
}

Bytes encode_hybrid(const HybridCiphertext& ct) {
    cbor::Writer w;
    w.array_header(6);
    w.uint(mode_id(ct.mode));
    w.text(ct.transport_alg);
    w.text(ct.aead_alg);
    w.bytes(ct.encapsulated_key);
    w.bytes(ct.nonce);
    w.bytes(ct.body);
    return w.take();
}

HybridCiphertext decode_hybrid(ByteSpan data) {
    cbor::Reader r(data);
    if (r.array_header() != 6) {
        throw Error(errc::kMalformed, "hybrid ciphertext must have 6 fields");
    }
    HybridCiphertext ct;
    ct.mode = mode_from_id(static_cast<std::uint32_t>(r.uint()));
    ct.transport_alg = r.text();
    ct.aead_alg = r.text();
    ct.encapsulated_key = r.bytes();
    ct.nonce = r.bytes();
    ct.body = r.bytes();
    r.expect_done();
    return ct;
}

} // namespace c2a::suites
