/*
 * Copyright (C) 2026 chip2app authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef CHIP2APP_CHIP_AUTH_HPP_
#define CHIP2APP_CHIP_AUTH_HPP_

#include <string>
#include <vector>

#include "chip2app/keystore.hpp"
#include "chip2app/pki.hpp"
#include "chip2app/suites.hpp"

namespace c2a::chipauth {

inline constexpr std::size_t kNonceLen = 16;

// Data group carrying the chip's key-agreement public key in its bundle.
inline constexpr std::uint32_t kKeyDataGroup = 1;

/**
 * A chip: its static key-agreement key lives inside a secure element, and
 * its public key is published as a signed data group so readers can run
 * passive authentication against the issuing country's root.
 */
struct ChipProfile {
    keystore::SecureElement element;
    keystore::SecureElement::Handle key_handle = 0;
    suites::Mode mode = suites::Mode::current;
    pki::SignedDataBundle bundle;
};

ChipProfile make_chip(suites::Mode mode, const crypto::KeyPair& ds_key,
                      const CertificateRecord& ds_certificate,
                      const CertificateRecord& csca_certificate,
                      entropy::RandomSource& source);

enum class SessionRole { chip, reader };
enum class SessionState { init, hello_sent, secret_derived, authenticated, failed };

std::string state_name(SessionState state);

/**
 * One side of a chip-authentication exchange. States move strictly
 * init -> hello_sent -> secret_derived -> authenticated | failed (readers
 * skip hello_sent; chips stop at secret_derived). Operations invoked in any
 * other state throw Error("state-error") and leave the session unchanged.
 *
 * The reader's ephemeral private key is dropped as soon as the shared
 * secret is derived; serialized sessions never contain private key material.
 */
struct SessionContext {
    SessionRole role = SessionRole::chip;
    SessionState state = SessionState::init;
    suites::Mode mode = suites::Mode::current;
    std::vector<Bytes> transcript; // raw messages in send order
    Bytes nonce;
    Bytes chip_public; // handshake key, checked against the bundle
    Bytes shared_secret;
    Bytes enc_key;
    Bytes mac_key;
    std::string failure_reason;

    Bytes serialize() const;
};

SessionContext new_session(SessionRole role, suites::Mode mode = suites::Mode::current);

// Length-prefixed concatenation of the transcript, the KDF context.
Bytes transcript_bytes(const SessionContext& session);

// Chip -> reader: static public key plus a fresh gated nonce.
Bytes chip_hello(const ChipProfile& chip, entropy::RandomSource& source,
                 SessionContext& session);

// Reader -> chip: fresh ephemeral key; derives the shared secret and
// session keys on the reader side.
Bytes reader_respond(ByteSpan hello, entropy::RandomSource& source,
                     SessionContext& session);

// Chip side: completes the agreement inside the element boundary.
void chip_complete(SessionContext& session, ByteSpan reader_message,
                   const ChipProfile& chip);

// One-step KDF with distinct labels; enc_key != mac_key by construction.
std::pair<Bytes, Bytes> derive_session_keys(ByteSpan shared_secret, ByteSpan context,
                                            suites::Mode mode);

// MAC over the transcript under the session MAC key: the chip's proof that
// it derived the same secret, hence holds the private key.
Bytes confirmation_tag(const SessionContext& session);

/**
 * Reader-side verdict: passive authentication of the chip bundle, handshake
 * key against the signed data group, then key confirmation. On failure the
 * session lands in `failed` with reason untrusted-chain | digest-mismatch |
 * bad-signature | expired | not-yet-valid | key-mismatch | key-confirmation.
 */
void authenticate_chip(SessionContext& reader_session, const pki::SignedDataBundle& bundle,
                       const CertificateRecord& trusted_csca, ByteSpan confirmation,
                       EpochSeconds now);

} // namespace c2a::chipauth

#endif // CHIP2APP_CHIP_AUTH_HPP_
