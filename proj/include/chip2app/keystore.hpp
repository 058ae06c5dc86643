/*
 * Copyright (C) 2026 chip2app authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef CHIP2APP_KEYSTORE_HPP_
#define CHIP2APP_KEYSTORE_HPP_

#include <array>
#include <map>
#include <string>

#include "chip2app/cert_record.hpp"
#include "chip2app/entropy.hpp"
#include "chip2app/pki.hpp"
#include "chip2app/suites.hpp"

namespace c2a::keystore {

inline constexpr std::size_t kOtpSlotCount = 8;
inline constexpr std::size_t kOtpSlotSize = 4096;

// OTP slot assignments fixed by the provisioning pipeline.
inline constexpr std::size_t kSlotDeviceCertificate = 0;
inline constexpr std::size_t kSlotTrustRoot = 1;

struct OtpSlot {
    bool programmed = false;
    Bytes data;
};

/**
 * Software simulation of a secure element. Private keys live in an internal
 * table and never cross the API boundary; callers get opaque handles, public
 * keys and signatures. OTP slots are write-once. State persists to an
 * encrypted store file (see save/load).
 */
class SecureElement {
public:
    using Handle = std::uint64_t;

    SecureElement() = default;

    const Bytes& device_uuid() const { return uuid_; }
    suites::Mode mode() const { return mode_; }
    bool provisioned() const { return !uuid_.empty(); }

    // Write-once slot programming. Throws Error("write-once-violation") on a
    // programmed slot (contents stay intact) and Error("range-error") past
    // the slot array.
    void otp_write(std::size_t index, ByteSpan data);
    const OtpSlot& otp_slot(std::size_t index) const;

    // Key custody. import_key is used by provisioning and chip setup; the
    // private half never leaves the element afterwards.
    Handle import_key(crypto::KeyPair key);
    Bytes public_key(Handle handle) const;
    Bytes sign(Handle handle, ByteSpan message) const;
    Bytes key_agree(Handle handle, ByteSpan peer_public) const;

    const std::string& last_booted_version() const { return last_booted_version_; }
    void record_booted_version(const std::string& version);

    /**
     * Store file: magic "C2A-SE01", then salt, nonce and an AEAD-encrypted
     * state payload under a key derived from the passphrase. Private key
     * material exists on disk only inside this encrypted payload.
     */
    Bytes serialize(const std::string& passphrase,
                    entropy::RandomSource& source) const;
    static SecureElement deserialize(ByteSpan data, const std::string& passphrase);

    void save(const std::string& path, const std::string& passphrase) const;
    static SecureElement load(const std::string& path, const std::string& passphrase);

private:
    friend struct ProvisionAccess;

    Bytes uuid_;
    suites::Mode mode_ = suites::Mode::current;
    std::array<OtpSlot, kOtpSlotCount> slots_;
    std::map<Handle, crypto::KeyPair> keys_;
    Handle next_handle_ = 1;
    Handle root_handle_ = 0;
    std::string last_booted_version_;
};

/**
 * A provisioned device: certificate chain anchored at the manufacturing CA,
 * root key held inside the element, unique 128-bit device identifier.
 */
struct DeviceIdentity {
    Bytes device_uuid;
    suites::Mode mode = suites::Mode::current;
    Bytes root_public_key;
    SecureElement::Handle root_key_handle = 0;
    CertificateRecord device_certificate;
};

/**
 * Runs the manufacturing pipeline on a blank element: entropy health gate,
 * root key-pair generation, CA certificate issuance for the derived public
 * key, certificate and trust anchor written to OTP, private key retained
 * internally. Refuses unhealthy sources and non-blank elements.
 */
DeviceIdentity provision_device(suites::Mode mode, pki::CaContext& ca,
                                entropy::RandomSource& source, SecureElement& element,
                                EpochSeconds now);

// Rebuilds the identity view of a provisioned element (store round-trips).
DeviceIdentity identity_of(const SecureElement& element);

Bytes sign_with_root(const SecureElement& element, const DeviceIdentity& identity,
                     ByteSpan message);

// Public material only: (root public key, device certificate).
std::pair<Bytes, CertificateRecord> export_public(const DeviceIdentity& identity);

std::string uuid_to_string(ByteSpan uuid);

} // namespace c2a::keystore

#endif // CHIP2APP_KEYSTORE_HPP_
