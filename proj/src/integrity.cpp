/*
 * Copyright (C) 2026 chip2app authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "chip2app/integrity.hpp"

#include <sstream>

#include "chip2app/cbor.hpp"
#include "chip2app/compact_cert.hpp"
#include "chip2app/errors.hpp"

namespace c2a::integrity {

namespace {

constexpr std::size_t kBlock = 16;

// Doubling in GF(2^128) with the CMAC reduction constant.
void gf_double(std::uint8_t (&block)[kBlock]) {
    const bool carry = (block[0] & 0x80) != 0;
    for (std::size_t i = 0; i + 1 < kBlock; ++i) {
        block[i] = static_cast<std::uint8_t>((block[i] << 1) | (block[i + 1] >> 7));
    }
    block[kBlock - 1] = static_cast<std::uint8_t>(block[kBlock - 1] << 1);
    if (carry) block[kBlock - 1] ^= 0x87;
}

Bytes cmac(ByteSpan key, ByteSpan message) {
    // Subkeys from the zero-block encryption.
    const Bytes zero(kBlock, 0);
    const Bytes l = crypto::aes_encrypt_block(key, zero);
    std::uint8_t k1[kBlock];
    std::copy(l.begin(), l.end(), k1);
    gf_double(k1);
    std::uint8_t k2[kBlock];
    std::copy(k1, k1 + kBlock, k2);
    gf_double(k2);

    const std::size_t n = message.size();
    const std::size_t full_blocks = n == 0 ? 0 : (n - 1) / kBlock;

    Bytes state(kBlock, 0);
    for (std::size_t b = 0; b < full_blocks; ++b) {
        for (std::size_t i = 0; i < kBlock; ++i) state[i] ^= message[b * kBlock + i];
        state = crypto::aes_encrypt_block(key, state);
    }

    // Final block: complete blocks get the K1 mask, partial or empty input
    // gets 10* padding and the K2 mask.
    std::uint8_t last[kBlock] = {0};
    const std::size_t rem = n - full_blocks * kBlock;
    if (n > 0 && rem == kBlock) {
        for (std::size_t i = 0; i < kBlock; ++i) {
            last[i] = static_cast<std::uint8_t>(message[full_blocks * kBlock + i] ^ k1[i]);
        }
    } else {
        for (std::size_t i = 0; i < rem; ++i) last[i] = message[full_blocks * kBlock + i];
        last[rem] = 0x80;
        for (std::size_t i = 0; i < kBlock; ++i) last[i] ^= k2[i];
    }
    for (std::size_t i = 0; i < kBlock; ++i) state[i] ^= last[i];
    return crypto::aes_encrypt_block(key, state);
}

Bytes hmac(const std::string& hash_name, ByteSpan key, ByteSpan message) {
    const std::size_t block = crypto::hash_block_len(hash_name);
    Bytes k0(key.begin(), key.end());
    if (k0.size() > block) k0 = crypto::digest(hash_name, k0);
    k0.resize(block, 0);

    Bytes inner(block);
    Bytes outer(block);
    for (std::size_t i = 0; i < block; ++i) {
        inner[i] = static_cast<std::uint8_t>(k0[i] ^ 0x36);
        outer[i] = static_cast<std::uint8_t>(k0[i] ^ 0x5c);
    }
    append(inner, message);
    const Bytes inner_digest = crypto::digest(hash_name, inner);
    append(outer, inner_digest);
    return crypto::digest(hash_name, outer);
}

} // namespace

MacAlgorithm mac_algorithm(const std::string& registry_name) {
    const std::string cmac_prefix = "CMAC-";
    const std::string hmac_prefix = "HMAC-";
    if (registry_name.rfind(cmac_prefix, 0) == 0) {
        // The cipher key size rides in the name (AES-128 / AES-256).
        const std::string cipher = registry_name.substr(cmac_prefix.size());
        std::size_t key_len = 0;
        if (cipher == "AES-128") key_len = 16;
        else if (cipher == "AES-256") key_len = 32;
        else throw Error(errc::kUnknownAlgorithm, "unsupported CMAC cipher: " + cipher);
        return MacAlgorithm{MacAlgorithm::Kind::cmac, cipher, key_len, kBlock};
    }
    if (registry_name.rfind(hmac_prefix, 0) == 0) {
        const std::string hash = registry_name.substr(hmac_prefix.size());
        return MacAlgorithm{MacAlgorithm::Kind::hmac, hash, 0, crypto::digest_len(hash)};
    }
    throw Error(errc::kUnknownAlgorithm, "unknown MAC algorithm: " + registry_name);
}

Bytes mac_tag(const MacAlgorithm& alg, ByteSpan key, ByteSpan message) {
    if (alg.kind == MacAlgorithm::Kind::cmac) {
        if (key.size() != alg.key_len) {
            throw Error(errc::kLength, "CMAC key must be " + std::to_string(alg.key_len) +
                                           " bytes");
        }
        return cmac(key, message);
    }
    return hmac(alg.cipher_or_hash, key, message);
}

bool mac_verify(const MacAlgorithm& alg, ByteSpan key, ByteSpan message, ByteSpan tag) {
    return crypto::ct_equal(mac_tag(alg, key, message), tag);
}

// -- Firmware manifests ---------------------------------------------------------

namespace {
void encode_manifest_body(cbor::Writer& w, const FirmwareManifest& m) {
    w.array_header(8);
    w.bytes(m.image_digest);
    w.uint(compact::algorithm_id(m.digest_alg));
    w.uint(m.image_len);
    w.text(m.fw_version);
    w.text(m.device_model);
    w.uint(suites::mode_id(m.mode));
    w.bytes(compact::encode_compact(m.signer_cert));
}
} // namespace

Bytes manifest_to_be_signed(const FirmwareManifest& manifest) {
    cbor::Writer w;
    encode_manifest_body(w, manifest);
    return w.take();
}

Bytes encode_manifest(const FirmwareManifest& manifest) {
    cbor::Writer w;
    encode_manifest_body(w, manifest);
    w.bytes(manifest.signature);
    return w.take();
}

FirmwareManifest decode_manifest(ByteSpan data) {
    cbor::Reader r(data);
    if (r.array_header() != 8) {
        throw Error(errc::kMalformed, "manifest must be an 8-field array");
    }
    FirmwareManifest m;
    m.image_digest = r.bytes();
    m.digest_alg = compact::algorithm_name(static_cast<std::uint32_t>(r.uint()));
    m.image_len = r.uint();
    m.fw_version = r.text();
    m.device_model = r.text();
    m.mode = suites::mode_from_id(static_cast<std::uint32_t>(r.uint()));
    m.signer_cert = compact::decode_compact(r.bytes());
    m.signature = r.bytes();
    r.expect_done();
    if (m.image_digest.size() != crypto::digest_len(m.digest_alg)) {
        throw Error(errc::kMalformed, "image digest length does not match algorithm");
    }
    return m;
}

FirmwareManifest sign_firmware(ByteSpan image, const std::string& fw_version,
                               const std::string& device_model, const SignerContext& signer,
                               suites::Mode mode, EpochSeconds now) {
    if (now < signer.certificate.not_before || now > signer.certificate.not_after) {
        throw Error(errc::kState, "signer certificate is outside its validity window");
    }
    FirmwareManifest m;
    m.digest_alg = suites::primary(mode, suites::Role::hash).name;
    m.image_digest = crypto::digest(m.digest_alg, image);
    m.image_len = image.size();
    m.fw_version = fw_version;
    m.device_model = device_model;
    m.mode = mode;
    m.signer_cert = signer.certificate;
    m.signature = crypto::sign(signer.key.algorithm, signer.key.private_key,
                               manifest_to_be_signed(m));
    return m;
}

BootVerdict secure_boot_verify(ByteSpan image, const FirmwareManifest& manifest,
                               const CertificateRecord& trust_root, EpochSeconds now) {
    const pki::Verdict chain = pki::verify_chain(manifest.signer_cert, {}, trust_root, now);
    if (!chain.accepted) {
        return BootVerdict{false, "untrusted-signer"};
    }
    if (!crypto::verify(manifest.signer_cert.public_key_alg, manifest.signer_cert.public_key,
                        manifest_to_be_signed(manifest), manifest.signature)) {
        return BootVerdict{false, "bad-signature"};
    }
    if (manifest.image_len != image.size()) {
        return BootVerdict{false, "length-mismatch"};
    }
    if (!crypto::ct_equal(crypto::digest(manifest.digest_alg, image), manifest.image_digest)) {
        return BootVerdict{false, "digest-mismatch"};
    }
    return BootVerdict{true, ""};
}

BootVerdict secure_boot_verify(ByteSpan image, const FirmwareManifest& manifest,
                               keystore::SecureElement& element, EpochSeconds now) {
    const auto& slot = element.otp_slot(keystore::kSlotTrustRoot);
    if (!slot.programmed) {
        return BootVerdict{false, "untrusted-signer"};
    }
    const CertificateRecord trust_root = compact::decode_compact(slot.data);
    BootVerdict verdict = secure_boot_verify(image, manifest, trust_root, now);
    if (!verdict.boot) return verdict;
    if (!element.last_booted_version().empty() &&
        compare_versions(manifest.fw_version, element.last_booted_version()) < 0) {
        return BootVerdict{false, "rollback"};
    }
    element.record_booted_version(manifest.fw_version);
    return verdict;
}

int compare_versions(const std::string& a, const std::string& b) {
    auto parse = [](const std::string& v) {
        std::vector<long> parts;
        std::istringstream in(v);
        std::string field;
        while (std::getline(in, field, '.')) {
            try {
                parts.push_back(std::stol(field));
            } catch (...) {
                throw Error(errc::kMalformed, "bad version component: " + field);
            }
        }
        parts.resize(3, 0);
        return parts;
    };
    const auto pa = parse(a), pb = parse(b);
    for (std::size_t i = 0; i < 3; ++i) {
        if (pa[i] != pb[i]) return pa[i] < pb[i] ? -1 : 1;
    }
    return 0;
}

} // namespace c2a::integrity
