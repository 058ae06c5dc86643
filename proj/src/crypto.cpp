/*
 * Copyright (C) 2026 chip2app authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "chip2app/crypto.hpp"

#include <memory>

#include <openssl/crypto.h>
#include <openssl/err.h>
#include <openssl/evp.h>
#include <openssl/rand.h>

#include "chip2app/errors.hpp"

namespace c2a::crypto {

namespace {

[[noreturn]] void throw_openssl(const std::string& what) {
    const unsigned long e = ERR_get_error();
    char buf[256] = {0};
    if (e != 0) ERR_error_string_n(e, buf, sizeof buf);
    throw Error(errc::kCrypto, what + (e ? std::string(": ") + buf : ""));
}

using EvpPkeyPtr = std::unique_ptr<EVP_PKEY, decltype(&EVP_PKEY_free)>;
using EvpCtxPtr = std::unique_ptr<EVP_PKEY_CTX, decltype(&EVP_PKEY_CTX_free)>;
using EvpMdCtxPtr = std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)>;
using EvpCipherCtxPtr = std::unique_ptr<EVP_CIPHER_CTX, decltype(&EVP_CIPHER_CTX_free)>;

const EVP_MD* md_by_name(const std::string& hash_name) {
    if (hash_name == "SHA-256") return EVP_sha256();
    if (hash_name == "SHA3-384") return EVP_sha3_384();
    if (hash_name == "SHA3-512") return EVP_sha3_512();
    throw Error(errc::kUnknownAlgorithm, "unknown hash: " + hash_name);
}

struct CurveInfo {
    int pkey_id;
    std::size_t seed_len;
    std::size_t public_len;
    std::size_t signature_len; // 0 for key-agreement-only curves
};

const CurveInfo* curve_by_name(const std::string& algorithm) {
    static const CurveInfo ed25519{EVP_PKEY_ED25519, 32, 32, 64};
    static const CurveInfo ed448{EVP_PKEY_ED448, 57, 57, 114};
    static const CurveInfo x25519{EVP_PKEY_X25519, 32, 32, 0};
    static const CurveInfo x448{EVP_PKEY_X448, 56, 56, 0};
    if (algorithm == "Ed25519") return &ed25519;
    if (algorithm == "Ed448") return &ed448;
    if (algorithm == "X25519") return &x25519;
    if (algorithm == "X448") return &x448;
    return nullptr;
}

const CurveInfo& require_curve(const std::string& algorithm) {
    const CurveInfo* info = curve_by_name(algorithm);
    if (info == nullptr) {
        if (algorithm == "ML-DSA" || algorithm == "SLH-DSA" || algorithm == "ML-KEM") {
            throw Error(errc::kNotAvailable,
                        algorithm + " has no vetted provider in this build");
        }
        throw Error(errc::kUnknownAlgorithm, "unknown key algorithm: " + algorithm);
    }
    return *info;
}

EvpPkeyPtr raw_private(const CurveInfo& info, ByteSpan seed) {
    EVP_PKEY* p = EVP_PKEY_new_raw_private_key(info.pkey_id, nullptr, seed.data(),
                                               seed.size());
    if (p == nullptr) throw_openssl("raw private key");
    return EvpPkeyPtr(p, EVP_PKEY_free);
}

EvpPkeyPtr raw_public(const CurveInfo& info, ByteSpan pub) {
    EVP_PKEY* p = EVP_PKEY_new_raw_public_key(info.pkey_id, nullptr, pub.data(),
                                              pub.size());
    if (p == nullptr) throw_openssl("raw public key");
    return EvpPkeyPtr(p, EVP_PKEY_free);
}

const EVP_CIPHER* gcm_by_name(const std::string& aead_name) {
    if (aead_name == "AES-128-GCM") return EVP_aes_128_gcm();
    if (aead_name == "AES-256-GCM") return EVP_aes_256_gcm();
    throw Error(errc::kUnknownAlgorithm, "unknown AEAD: " + aead_name);
}

} // namespace

Bytes digest(const std::string& hash_name, ByteSpan data) {
    const EVP_MD* md = md_by_name(hash_name);
    Bytes out(EVP_MD_size(md));
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), out.data(), &len, md, nullptr) != 1) {
        throw_openssl("digest");
    }
    out.resize(len);
    return out;
}

std::size_t digest_len(const std::string& hash_name) {
    return static_cast<std::size_t>(EVP_MD_size(md_by_name(hash_name)));
}

std::size_t hash_block_len(const std::string& hash_name) {
    return static_cast<std::size_t>(EVP_MD_block_size(md_by_name(hash_name)));
}

std::size_t keypair_seed_len(const std::string& algorithm) {
    return require_curve(algorithm).seed_len;
}

std::size_t public_key_len(const std::string& algorithm) {
    return require_curve(algorithm).public_len;
}

std::size_t signature_len(const std::string& algorithm) {
    const CurveInfo& info = require_curve(algorithm);
    if (info.signature_len == 0) {
        throw Error(errc::kUnknownAlgorithm, algorithm + " is not a signature algorithm");
    }
    return info.signature_len;
}

bool signature_available(const std::string& algorithm) {
    const CurveInfo* info = curve_by_name(algorithm);
    return info != nullptr && info->signature_len != 0;
}

KeyPair keypair_from_seed(const std::string& algorithm, ByteSpan seed) {
    const CurveInfo& info = require_curve(algorithm);
    if (seed.size() != info.seed_len) {
        throw Error(errc::kLength, algorithm + " seed must be " +
                                       std::to_string(info.seed_len) + " bytes");
    }
    EvpPkeyPtr key = raw_private(info, seed);
    Bytes pub(info.public_len);
    std::size_t publen = pub.size();
    if (EVP_PKEY_get_raw_public_key(key.get(), pub.data(), &publen) != 1) {
        throw_openssl("derive public key");
    }
    pub.resize(publen);
    return KeyPair{algorithm, Bytes(seed.begin(), seed.end()), std::move(pub)};
}

Bytes sign(const std::string& algorithm, ByteSpan private_key, ByteSpan message) {
    const CurveInfo& info = require_curve(algorithm);
    if (info.signature_len == 0) {
        throw Error(errc::kUnknownAlgorithm, algorithm + " cannot sign");
    }
    EvpPkeyPtr key = raw_private(info, private_key);
    EvpMdCtxPtr ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    if (!ctx || EVP_DigestSignInit(ctx.get(), nullptr, nullptr, nullptr, key.get()) != 1) {
        throw_openssl("sign init");
    }
    std::size_t siglen = 0;
    if (EVP_DigestSign(ctx.get(), nullptr, &siglen, message.data(), message.size()) != 1) {
        throw_openssl("sign size");
    }
    Bytes sig(siglen);
    if (EVP_DigestSign(ctx.get(), sig.data(), &siglen, message.data(), message.size()) != 1) {
        throw_openssl("sign");
    }
    sig.resize(siglen);
    return sig;
}

bool verify(const std::string& algorithm, ByteSpan public_key, ByteSpan message,
            ByteSpan signature) {
    const CurveInfo& info = require_curve(algorithm);
    if (info.signature_len == 0 || public_key.size() != info.public_len ||
        signature.size() != info.signature_len) {
        return false;
    }
    EVP_PKEY* raw = EVP_PKEY_new_raw_public_key(info.pkey_id, nullptr,
                                                public_key.data(), public_key.size());
    if (raw == nullptr) {
        ERR_clear_error();
        return false;
    }
    EvpPkeyPtr key(raw, EVP_PKEY_free);
    EvpMdCtxPtr ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    if (!ctx || EVP_DigestVerifyInit(ctx.get(), nullptr, nullptr, nullptr, key.get()) != 1) {
        ERR_clear_error();
        return false;
    }
    const int rc = EVP_DigestVerify(ctx.get(), signature.data(), signature.size(),
                                    message.data(), message.size());
    ERR_clear_error();
    return rc == 1;
}

Bytes key_agree(const std::string& algorithm, ByteSpan private_key, ByteSpan peer_public) {
    const CurveInfo& info = require_curve(algorithm);
    if (info.signature_len != 0) {
        throw Error(errc::kUnknownAlgorithm, algorithm + " is not a key-agreement algorithm");
    }
    if (peer_public.size() != info.public_len) {
        throw Error(errc::kMalformed, "peer public key must be " +
                                          std::to_string(info.public_len) + " bytes");
    }
    EvpPkeyPtr mine = raw_private(info, private_key);
    EvpPkeyPtr peer = raw_public(info, peer_public);
    EvpCtxPtr ctx(EVP_PKEY_CTX_new(mine.get(), nullptr), EVP_PKEY_CTX_free);
    if (!ctx || EVP_PKEY_derive_init(ctx.get()) != 1 ||
        EVP_PKEY_derive_set_peer(ctx.get(), peer.get()) != 1) {
        throw_openssl("derive init");
    }
    std::size_t outlen = 0;
    if (EVP_PKEY_derive(ctx.get(), nullptr, &outlen) != 1) throw_openssl("derive size");
    Bytes out(outlen);
    if (EVP_PKEY_derive(ctx.get(), out.data(), &outlen) != 1) {
        throw Error(errc::kMalformed, "key agreement failed (low-order peer key?)");
    }
    out.resize(outlen);
    return out;
}

Bytes aead_seal(const std::string& aead_name, ByteSpan key, ByteSpan nonce,
                ByteSpan plaintext, ByteSpan aad) {
    const EVP_CIPHER* cipher = gcm_by_name(aead_name);
    if (key.size() != aead_key_len(aead_name)) {
        throw Error(errc::kLength, "bad AEAD key length");
    }
    if (nonce.size() != kAeadNonceLen) {
        throw Error(errc::kLength, "AEAD nonce must be 12 bytes");
    }
    EvpCipherCtxPtr ctx(EVP_CIPHER_CTX_new(), EVP_CIPHER_CTX_free);
    if (!ctx || EVP_EncryptInit_ex(ctx.get(), cipher, nullptr, key.data(), nonce.data()) != 1) {
        throw_openssl("seal init");
    }
    int len = 0;
    if (!aad.empty() &&
        EVP_EncryptUpdate(ctx.get(), nullptr, &len, aad.data(), aad.size()) != 1) {
        throw_openssl("seal aad");
    }
    Bytes out(plaintext.size() + kAeadTagLen);
    int ctlen = 0;
    if (!plaintext.empty() &&
        EVP_EncryptUpdate(ctx.get(), out.data(), &ctlen, plaintext.data(),
                          plaintext.size()) != 1) {
        throw_openssl("seal update");
    }
    int fin = 0;
    if (EVP_EncryptFinal_ex(ctx.get(), out.data() + ctlen, &fin) != 1) {
        throw_openssl("seal final");
    }
    ctlen += fin;
    if (EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, kAeadTagLen,
                            out.data() + ctlen) != 1) {
        throw_openssl("seal tag");
    }
    out.resize(static_cast<std::size_t>(ctlen) + kAeadTagLen);
    return out;
}

Bytes aead_open(const std::string& aead_name, ByteSpan key, ByteSpan nonce,
                ByteSpan ciphertext_and_tag, ByteSpan aad) {
    const EVP_CIPHER* cipher = gcm_by_name(aead_name);
    if (key.size() != aead_key_len(aead_name)) {
        throw Error(errc::kLength, "bad AEAD key length");
    }
    if (nonce.size() != kAeadNonceLen || ciphertext_and_tag.size() < kAeadTagLen) {
        throw Error(errc::kMalformed, "ciphertext too short");
    }
    const std::size_t ctlen = ciphertext_and_tag.size() - kAeadTagLen;
    EvpCipherCtxPtr ctx(EVP_CIPHER_CTX_new(), EVP_CIPHER_CTX_free);
    if (!ctx || EVP_DecryptInit_ex(ctx.get(), cipher, nullptr, key.data(), nonce.data()) != 1) {
        throw_openssl("open init");
    }
    int len = 0;
    if (!aad.empty() &&
        EVP_DecryptUpdate(ctx.get(), nullptr, &len, aad.data(), aad.size()) != 1) {
        throw_openssl("open aad");
    }
    Bytes out(ctlen);
    int outlen = 0;
    if (ctlen > 0 && EVP_DecryptUpdate(ctx.get(), out.data(), &outlen,
                                       ciphertext_and_tag.data(), ctlen) != 1) {
        throw_openssl("open update");
    }
    Bytes tag(ciphertext_and_tag.begin() + ctlen, ciphertext_and_tag.end());
    if (EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, kAeadTagLen, tag.data()) != 1) {
        throw_openssl("open tag");
    }
    int fin = 0;
    if (EVP_DecryptFinal_ex(ctx.get(), out.data() + outlen, &fin) != 1) {
        ERR_clear_error();
        throw Error(errc::kAuthFailed, "AEAD tag verification failed");
    }
    out.resize(static_cast<std::size_t>(outlen) + fin);
    return out;
}

std::size_t aead_key_len(const std::string& aead_name) {
    return static_cast<std::size_t>(EVP_CIPHER_key_length(gcm_by_name(aead_name)));
}

Bytes aes_encrypt_block(ByteSpan key, ByteSpan block16) {
    if (block16.size() != 16) throw Error(errc::kLength, "AES block must be 16 bytes");
    const EVP_CIPHER* cipher = nullptr;
    if (key.size() == 16) {
        cipher = EVP_aes_128_ecb();
    } else if (key.size() == 32) {
        cipher = EVP_aes_256_ecb();
    } else {
        throw Error(errc::kLength, "AES key must be 16 or 32 bytes");
    }
    EvpCipherCtxPtr ctx(EVP_CIPHER_CTX_new(), EVP_CIPHER_CTX_free);
    if (!ctx || EVP_EncryptInit_ex(ctx.get(), cipher, nullptr, key.data(), nullptr) != 1) {
        throw_openssl("ecb init");
    }
    EVP_CIPHER_CTX_set_padding(ctx.get(), 0);
    Bytes out(32);
    int len = 0;
    if (EVP_EncryptUpdate(ctx.get(), out.data(), &len, block16.data(), 16) != 1) {
        throw_openssl("ecb update");
    }
    int fin = 0;
    if (EVP_EncryptFinal_ex(ctx.get(), out.data() + len, &fin) != 1) {
        throw_openssl("ecb final");
    }
    out.resize(static_cast<std::size_t>(len) + fin);
    return out;
}

Bytes kdf_one_step(const std::string& hash_name, ByteSpan secret, ByteSpan label,
                   ByteSpan context, std::size_t out_len) {
    if (secret.empty()) throw Error(errc::kLength, "KDF secret must be non-empty");
    Bytes out;
    std::uint32_t counter = 1;
    while (out.size() < out_len) {
        Bytes block_input;
        append_be32(block_input, counter++);
        append(block_input, secret);
        append(block_input, label);
        append(block_input, context);
        Bytes block = digest(hash_name, block_input);
        append(out, block);
    }
    out.resize(out_len);
    return out;
}

bool ct_equal(ByteSpan a, ByteSpan b) {
    if (a.size() != b.size()) return false;
    if (a.empty()) return true;
    return CRYPTO_memcmp(a.data(), b.data(), a.size()) == 0;
}

Bytes system_random(std::size_t n) {
    Bytes out(n);
    if (n > 0 && RAND_bytes(out.data(), static_cast<int>(n)) != 1) {
        throw_openssl("system randomness unavailable");
    }
    return out;
}

} // namespace c2a::crypto
