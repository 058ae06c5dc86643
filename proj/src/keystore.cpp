/*
 * Copyright (C) 2026 chip2app authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "chip2app/keystore.hpp"

#include <fstream>

#include "chip2app/cbor.hpp"
#include "chip2app/compact_cert.hpp"
#include "chip2app/errors.hpp"

namespace c2a::keystore {

namespace {

constexpr char kStoreMagic[] = "C2A-SE01";
constexpr std::size_t kStoreMagicLen = 8;
constexpr std::size_t kStoreSaltLen = 16;
const std::string kStoreLabel = "se-store-v1";

// Store format v1 pins its wrap algorithms independently of the element's
// operating mode, so any store file can be opened before the mode is known.
const suites::AlgorithmSpec& store_aead() {
    return suites::resolve(suites::Mode::current, suites::Role::symmetric_encryption).back();
}

Bytes store_key(const std::string& passphrase, ByteSpan salt) {
    const auto& hash = suites::primary(suites::Mode::current, suites::Role::hash);
    return crypto::kdf_one_step(hash.name, str_span(passphrase), str_span(kStoreLabel),
                                salt, store_aead().key_len);
}

} // namespace

void SecureElement::otp_write(std::size_t index, ByteSpan data) {
    if (index >= kOtpSlotCount) {
        throw Error(errc::kRange, "OTP slot index out of range: " + std::to_string(index));
    }
    if (data.size() > kOtpSlotSize) {
        throw Error(errc::kLength, "OTP slot payload exceeds " +
                                       std::to_string(kOtpSlotSize) + " bytes");
    }
    OtpSlot& slot = slots_[index];
    if (slot.programmed) {
        throw Error(errc::kWriteOnce,
                    "OTP slot " + std::to_string(index) + " is already programmed");
    }
    slot.data = Bytes(data.begin(), data.end());
    slot.programmed = true;
}

const OtpSlot& SecureElement::otp_slot(std::size_t index) const {
    if (index >= kOtpSlotCount) {
        throw Error(errc::kRange, "OTP slot index out of range: " + std::to_string(index));
    }
    return slots_[index];
}

SecureElement::Handle SecureElement::import_key(crypto::KeyPair key) {
    const Handle handle = next_handle_++;
    keys_.emplace(handle, std::move(key));
    return handle;
}

static const crypto::KeyPair& key_by_handle(
    const std::map<SecureElement::Handle, crypto::KeyPair>& keys,
    SecureElement::Handle handle) {
    const auto it = keys.find(handle);
    if (it == keys.end()) {
        throw Error(errc::kUnknownHandle, "no key under handle " + std::to_string(handle));
    }
    return it->second;
}

Bytes SecureElement::public_key(Handle handle) const {
    return key_by_handle(keys_, handle).public_key;
}

Bytes SecureElement::sign(Handle handle, ByteSpan message) const {
    const crypto::KeyPair& key = key_by_handle(keys_, handle);
    return crypto::sign(key.algorithm, key.private_key, message);
}

Bytes SecureElement::key_agree(Handle handle, ByteSpan peer_public) const {
    const crypto::KeyPair& key = key_by_handle(keys_, handle);
    return crypto::key_agree(key.algorithm, key.private_key, peer_public);
}

void SecureElement::record_booted_version(const std::string& version) {
    last_booted_version_ = version;
}

Bytes SecureElement::serialize(const std::string& passphrase,
                               entropy::RandomSource& source) const {
    cbor::Writer payload;
    payload.array_header(6);
    payload.bytes(uuid_);
    payload.uint(suites::mode_id(mode_));
    payload.uint(root_handle_);
    payload.text(last_booted_version_);
    payload.array_header(kOtpSlotCount);
    for (const OtpSlot& slot : slots_) {
        payload.array_header(2);
        payload.uint(slot.programmed ? 1 : 0);
        payload.bytes(slot.data);
    }
    payload.array_header(keys_.size());
    for (const auto& [handle, key] : keys_) {
        payload.array_header(4);
        payload.uint(handle);
        payload.text(key.algorithm);
        payload.bytes(key.private_key);
        payload.bytes(key.public_key);
    }

    const Bytes salt = source.draw(kStoreSaltLen);
    const Bytes nonce = source.draw(crypto::kAeadNonceLen);
    const Bytes key = store_key(passphrase, salt);
    const Bytes sealed = crypto::aead_seal(store_aead().name, key, nonce, payload.data(),
                                           str_span(kStoreLabel));

    Bytes out(kStoreMagic, kStoreMagic + kStoreMagicLen);
    append(out, salt);
    append(out, nonce);
    append(out, sealed);
    return out;
}

SecureElement SecureElement::deserialize(ByteSpan data, const std::string& passphrase) {
    const std::size_t header = kStoreMagicLen + kStoreSaltLen + crypto::kAeadNonceLen;
    if (data.size() < header + crypto::kAeadTagLen ||
        !std::equal(data.begin(), data.begin() + kStoreMagicLen, kStoreMagic)) {
        throw Error(errc::kMalformed, "not a secure-element store file");
    }
    const ByteSpan salt = data.subspan(kStoreMagicLen, kStoreSaltLen);
    const ByteSpan nonce = data.subspan(kStoreMagicLen + kStoreSaltLen, crypto::kAeadNonceLen);
    const Bytes key = store_key(passphrase, salt);
    const Bytes payload = crypto::aead_open(store_aead().name, key, nonce,
                                            data.subspan(header), str_span(kStoreLabel));

    cbor::Reader r(payload);
    if (r.array_header() != 6) throw Error(errc::kMalformed, "bad store payload");
    SecureElement se;
    se.uuid_ = r.bytes();
    se.mode_ = suites::mode_from_id(static_cast<std::uint32_t>(r.uint()));
    se.root_handle_ = r.uint();
    se.last_booted_version_ = r.text();
    if (r.array_header() != kOtpSlotCount) {
        throw Error(errc::kMalformed, "bad slot table");
    }
    for (OtpSlot& slot : se.slots_) {
        if (r.array_header() != 2) throw Error(errc::kMalformed, "bad slot entry");
        slot.programmed = r.uint() != 0;
        slot.data = r.bytes();
    }
    const std::uint64_t key_count = r.array_header();
    for (std::uint64_t i = 0; i < key_count; ++i) {
        if (r.array_header() != 4) throw Error(errc::kMalformed, "bad key entry");
        const Handle handle = r.uint();
        crypto::KeyPair kp;
        kp.algorithm = r.text();
        kp.private_key = r.bytes();
        kp.public_key = r.bytes();
        se.keys_.emplace(handle, std::move(kp));
        se.next_handle_ = std::max(se.next_handle_, handle + 1);
    }
    r.expect_done();
    return se;
}

void SecureElement::save(const std::string& path, const std::string& passphrase) const {
    entropy::RandomSource source = entropy::RandomSource::system();
    const Bytes blob = serialize(passphrase, source);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(errc::kIo, "cannot write store file: " + path);
    out.write(reinterpret_cast<const char*>(blob.data()),
              static_cast<std::streamsize>(blob.size()));
    if (!out) throw Error(errc::kIo, "short write to store file: " + path);
}

SecureElement SecureElement::load(const std::string& path, const std::string& passphrase) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(errc::kIo, "cannot read store file: " + path);
    Bytes blob((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return deserialize(blob, passphrase);
}

struct ProvisionAccess {
    static void set_identity(SecureElement& se, Bytes uuid, suites::Mode mode,
                             SecureElement::Handle root_handle) {
        se.uuid_ = std::move(uuid);
        se.mode_ = mode;
        se.root_handle_ = root_handle;
    }
    static SecureElement::Handle root_handle(const SecureElement& se) {
        return se.root_handle_;
    }
};

std::string uuid_to_string(ByteSpan uuid) {
    const std::string hex = to_hex(uuid);
    return hex.substr(0, 8) + "-" + hex.substr(8, 4) + "-" + hex.substr(12, 4) + "-" +
           hex.substr(16, 4) + "-" + hex.substr(20);
}

DeviceIdentity provision_device(suites::Mode mode, pki::CaContext& ca,
                                entropy::RandomSource& source, SecureElement& element,
                                EpochSeconds now) {
    if (element.provisioned() ||
        element.otp_slot(kSlotDeviceCertificate).programmed ||
        element.otp_slot(kSlotTrustRoot).programmed) {
        throw Error(errc::kWriteOnce, "element is already provisioned");
    }
    if (ca.mode != mode) {
        throw Error(errc::kModeMismatch, "CA operates in " + suites::mode_name(ca.mode) +
                                             " mode");
    }
    const auto& sig = suites::primary(mode, suites::Role::signature);
    if (!sig.available) {
        throw Error(errc::kNotAvailable,
                    sig.name + " is flagged not-available in this build");
    }

    // Health gate first; a source that cannot pass it must not feed keys.
    const Bytes key_seed =
        entropy::gated_draw(source, crypto::keypair_seed_len(sig.name));
    crypto::KeyPair root = crypto::keypair_from_seed(sig.name, key_seed);

    Bytes uuid = source.draw(16);
    uuid[6] = static_cast<std::uint8_t>((uuid[6] & 0x0f) | 0x40);
    uuid[8] = static_cast<std::uint8_t>((uuid[8] & 0x3f) | 0x80);

    // Certificate for the derived public key, through the full request
    // pipeline against the manufacturing CA.
    const std::string subject = "device-" + to_hex(uuid);
    const pki::Csr csr = pki::generate_csr(subject, root, {});
    const pki::RaDecision decision =
        pki::ra_review(csr, pki::IssuancePolicy{"device-*", mode}, ca, now);
    if (!decision.approved) {
        throw Error(errc::kInvalidToken, "manufacturing CA refused: " + decision.reason);
    }
    CertificateRecord cert = pki::ca_issue(decision.token, ca, 398, now);

    element.otp_write(kSlotDeviceCertificate, compact::encode_compact(cert));
    element.otp_write(kSlotTrustRoot, compact::encode_compact(
                                          ca.chain.empty() ? ca.certificate : ca.chain.back()));

    const SecureElement::Handle handle = element.import_key(std::move(root));
    ProvisionAccess::set_identity(element, uuid, mode, handle);

    DeviceIdentity identity;
    identity.device_uuid = std::move(uuid);
    identity.mode = mode;
    identity.root_public_key = element.public_key(handle);
    identity.root_key_handle = handle;
    identity.device_certificate = std::move(cert);
    return identity;
}

DeviceIdentity identity_of(const SecureElement& element) {
    if (!element.provisioned()) {
        throw Error(errc::kState, "element is not provisioned");
    }
    DeviceIdentity identity;
    identity.device_uuid = element.device_uuid();
    identity.mode = element.mode();
    identity.root_key_handle = ProvisionAccess::root_handle(element);
    identity.root_public_key = element.public_key(identity.root_key_handle);
    identity.device_certificate =
        compact::decode_compact(element.otp_slot(kSlotDeviceCertificate).data);
    return identity;
}

Bytes sign_with_root(const SecureElement& element, const DeviceIdentity& identity,
                     ByteSpan message) {
    return element.sign(identity.root_key_handle, message);
}

std::pair<Bytes, CertificateRecord> export_public(const DeviceIdentity& identity) {
    return {identity.root_public_key, identity.device_certificate};
}

} // namespace c2a::keystore
