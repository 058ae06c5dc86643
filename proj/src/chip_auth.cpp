/*
 * Copyright (C) 2026 chip2app authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "chip2app/chip_auth.hpp"

#include "chip2app/cbor.hpp"
#include "chip2app/errors.hpp"
#include "chip2app/integrity.hpp"

namespace c2a::chipauth {

namespace {

const std::string kEncLabel = "c2a-enc-v1";
const std::string kMacLabel = "c2a-mac-v1";

const suites::AlgorithmSpec& transport_spec(suites::Mode mode) {
    if (mode == suites::Mode::future) {
        const auto& kem = suites::primary(mode, suites::Role::key_encapsulation);
        if (!kem.available) {
            throw Error(errc::kNotAvailable,
                        kem.name + " is flagged not-available in this build");
        }
        return kem;
    }
    return suites::primary(mode, suites::Role::key_agreement);
}

void require_state(const SessionContext& session, SessionRole role, SessionState state,
                   const char* op) {
    if (session.role != role || session.state != state) {
        throw Error(errc::kState, std::string(op) + " requires a " +
                                      (role == SessionRole::chip ? "chip" : "reader") +
                                      " session in state " + state_name(state) +
                                      ", not " + state_name(session.state));
    }
}

const integrity::MacAlgorithm& session_mac(suites::Mode mode) {
    static const integrity::MacAlgorithm current = integrity::mac_algorithm(
        suites::resolve(suites::Mode::current, suites::Role::mac).back().name);
    static const integrity::MacAlgorithm future = integrity::mac_algorithm(
        suites::resolve(suites::Mode::future, suites::Role::mac).back().name);
    return mode == suites::Mode::current ? current : future;
}

} // namespace

std::string state_name(SessionState state) {
    switch (state) {
    case SessionState::init: return "init";
    case SessionState::hello_sent: return "hello-sent";
    case SessionState::secret_derived: return "secret-derived";
    case SessionState::authenticated: return "authenticated";
    case SessionState::failed: return "failed";
    }
    return "?";
}

SessionContext new_session(SessionRole role, suites::Mode mode) {
    SessionContext session;
    session.role = role;
    session.mode = mode;
    return session;
}

Bytes transcript_bytes(const SessionContext& session) {
    Bytes out;
    for (const Bytes& message : session.transcript) {
        append_be32(out, static_cast<std::uint32_t>(message.size()));
        append(out, message);
    }
    return out;
}

ChipProfile make_chip(suites::Mode mode, const crypto::KeyPair& ds_key,
                      const CertificateRecord& ds_certificate,
                      const CertificateRecord& csca_certificate,
                      entropy::RandomSource& source) {
    const auto& transport = transport_spec(mode);
    ChipProfile chip;
    chip.mode = mode;
    const Bytes seed = entropy::gated_draw(source, crypto::keypair_seed_len(transport.name));
    crypto::KeyPair key = crypto::keypair_from_seed(transport.name, seed);
    const Bytes public_key = key.public_key;
    chip.key_handle = chip.element.import_key(std::move(key));

    std::map<std::uint32_t, Bytes> groups;
    groups[kKeyDataGroup] = public_key;
    groups[2] = to_bytes("model=c2a-ref-chip");
    chip.bundle = pki::build_bundle(groups, ds_key, ds_certificate, csca_certificate,
                                    suites::primary(mode, suites::Role::hash).name);
    return chip;
}

Bytes chip_hello(const ChipProfile& chip, entropy::RandomSource& source,
                 SessionContext& session) {
    require_state(session, SessionRole::chip, SessionState::init, "chip_hello");
    const Bytes nonce = entropy::gated_draw(source, kNonceLen);
    const Bytes chip_public = chip.element.public_key(chip.key_handle);

    cbor::Writer w;
    w.array_header(2);
    w.bytes(chip_public);
    w.bytes(nonce);
    Bytes message = w.take();

    session.mode = chip.mode;
    session.nonce = nonce;
    session.chip_public = chip_public;
    session.transcript.push_back(message);
    session.state = SessionState::hello_sent;
    return message;
}

Bytes reader_respond(ByteSpan hello, entropy::RandomSource& source,
                     SessionContext& session) {
    require_state(session, SessionRole::reader, SessionState::init, "reader_respond");
    const auto& transport = transport_spec(session.mode);

    Bytes chip_public;
    Bytes nonce;
    try {
        cbor::Reader r(hello);
        if (r.array_header() != 2) throw Error(errc::kMalformed, "hello must have 2 fields");
        chip_public = r.bytes();
        nonce = r.bytes();
        r.expect_done();
        if (chip_public.size() != transport.key_len) {
            throw Error(errc::kMalformed, "chip public key must be " +
                                              std::to_string(transport.key_len) + " bytes");
        }
        if (nonce.size() != kNonceLen) {
            throw Error(errc::kMalformed, "nonce must be 16 bytes");
        }
    } catch (const Error&) {
        session.state = SessionState::failed;
        session.failure_reason = "malformed-hello";
        throw;
    }

    try {
        const Bytes seed = source.draw(crypto::keypair_seed_len(transport.name));
        const crypto::KeyPair ephemeral = crypto::keypair_from_seed(transport.name, seed);

        cbor::Writer w;
        w.array_header(1);
        w.bytes(ephemeral.public_key);
        Bytes message = w.take();

        const Bytes shared =
            crypto::key_agree(transport.name, ephemeral.private_key, chip_public);

        session.nonce = nonce;
        session.chip_public = chip_public;
        session.transcript.push_back(Bytes(hello.begin(), hello.end()));
        session.transcript.push_back(message);
        auto [enc_key, mac_key] =
            derive_session_keys(shared, transcript_bytes(session), session.mode);
        session.shared_secret = shared;
        session.enc_key = std::move(enc_key);
        session.mac_key = std::move(mac_key);
        session.state = SessionState::secret_derived;
        // The ephemeral private key goes out of scope here; only the public
        // half survives in the transcript.
        return message;
    } catch (const Error&) {
        session.state = SessionState::failed;
        session.failure_reason = "key-agreement-failed";
        throw;
    }
}

void chip_complete(SessionContext& session, ByteSpan reader_message,
                   const ChipProfile& chip) {
    require_state(session, SessionRole::chip, SessionState::hello_sent, "chip_complete");
    const auto& transport = transport_spec(session.mode);

    Bytes reader_public;
    try {
        cbor::Reader r(reader_message);
        if (r.array_header() != 1) {
            throw Error(errc::kMalformed, "reader message must have 1 field");
        }
        reader_public = r.bytes();
        r.expect_done();
        if (reader_public.size() != transport.key_len) {
            throw Error(errc::kMalformed, "reader public key must be " +
                                              std::to_string(transport.key_len) + " bytes");
        }
    } catch (const Error&) {
        session.state = SessionState::failed;
        session.failure_reason = "malformed-response";
        throw;
    }

    try {
        // The static private key stays inside the element; only the derived
        // secret crosses the boundary.
        const Bytes shared = chip.element.key_agree(chip.key_handle, reader_public);
        session.transcript.push_back(Bytes(reader_message.begin(), reader_message.end()));
        auto [enc_key, mac_key] =
            derive_session_keys(shared, transcript_bytes(session), session.mode);
        session.shared_secret = shared;
        session.enc_key = std::move(enc_key);
        session.mac_key = std::move(mac_key);
        session.state = SessionState::secret_derived;
    } catch (const Error&) {
        session.state = SessionState::failed;
        session.failure_reason = "key-agreement-failed";
        throw;
    }
}

std::pair<Bytes, Bytes> derive_session_keys(ByteSpan shared_secret, ByteSpan context,
                                            suites::Mode mode) {
    if (shared_secret.empty()) {
        throw Error(errc::kLength, "shared secret must be non-empty");
    }
    const auto& hash = suites::primary(mode, suites::Role::hash);
    const auto& aead = suites::primary(mode, suites::Role::symmetric_encryption);
    Bytes enc = crypto::kdf_one_step(hash.name, shared_secret, str_span(kEncLabel), context,
                                     aead.key_len);
    Bytes mac = crypto::kdf_one_step(hash.name, shared_secret, str_span(kMacLabel), context,
                                     aead.key_len);
    return {std::move(enc), std::move(mac)};
}

Bytes confirmation_tag(const SessionContext& session) {
    if (session.state != SessionState::secret_derived &&
        session.state != SessionState::authenticated) {
        throw Error(errc::kState, "confirmation tag needs derived session keys");
    }
    return integrity::mac_tag(session_mac(session.mode), session.mac_key,
                              transcript_bytes(session));
}

void authenticate_chip(SessionContext& reader_session, const pki::SignedDataBundle& bundle,
                       const CertificateRecord& trusted_csca, ByteSpan confirmation,
                       EpochSeconds now) {
    require_state(reader_session, SessionRole::reader, SessionState::secret_derived,
                  "authenticate_chip");

    const pki::PaVerdict pa = pki::passive_authenticate(bundle, trusted_csca, now);
    if (!pa.accepted) {
        reader_session.state = SessionState::failed;
        reader_session.failure_reason = pa.reason;
        return;
    }
    const auto key_group = bundle.data_groups.find(kKeyDataGroup);
    if (key_group == bundle.data_groups.end() ||
        key_group->second != reader_session.chip_public) {
        reader_session.state = SessionState::failed;
        reader_session.failure_reason = "key-mismatch";
        return;
    }
    if (!integrity::mac_verify(session_mac(reader_session.mode), reader_session.mac_key,
                               transcript_bytes(reader_session), confirmation)) {
        reader_session.state = SessionState::failed;
        reader_session.failure_reason = "key-confirmation";
        return;
    }
    reader_session.state = SessionState::authenticated;
}

Bytes SessionContext::serialize() const {
    cbor::Writer w;
    w.array_header(9);
    w.uint(role == SessionRole::chip ? 0 : 1);
    w.text(state_name(state));
    w.uint(suites::mode_id(mode));
    w.array_header(transcript.size());
    for (const Bytes& message : transcript) w.bytes(message);
    w.bytes(nonce);
    w.bytes(chip_public);
    // Session keys are persisted so a resumed session can continue to MAC,
    // but no long-term or ephemeral private key ever enters this structure.
    w.bytes(enc_key);
    w.bytes(mac_key);
    w.text(failure_reason);
    return w.take();
}

} // namespace c2a::chipauth
