/*
 * Copyright (C) 2026 chip2app authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef CHIP2APP_PKI_HPP_
#define CHIP2APP_PKI_HPP_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "chip2app/cert_record.hpp"
#include "chip2app/crypto.hpp"
#include "chip2app/entropy.hpp"
#include "chip2app/suites.hpp"

namespace c2a::pki {

// Certificate chains may nest at most this deep (trust root included).
inline constexpr std::size_t kMaxChainDepth = 4;

// Approval tokens expire one hour after review.
inline constexpr EpochSeconds kApprovalTokenLifetime = 3600;

/**
 * Certificate signing request. proof_of_possession is the subject's
 * signature over the request body, verifiable with the embedded key.
 */
struct Csr {
    std::string subject_id;
    std::string public_key_alg;
    Bytes public_key;
    std::map<std::string, Bytes> requested_extensions;
    Bytes proof_of_possession;

    bool operator==(const Csr&) const = default;
};

Bytes encode_csr(const Csr& csr);
Csr decode_csr(ByteSpan data);
Bytes csr_to_be_signed(const Csr& csr);
bool csr_proof_valid(const Csr& csr);

struct RevocationList {
    std::string issuer_id;
    EpochSeconds issued_at = 0;
    std::set<Bytes> revoked_serials;
    Bytes signature;
};

Bytes encode_crl(const RevocationList& crl);
RevocationList decode_crl(ByteSpan data);

/**
 * Signed data groups with a digest table, the signing (Document Signer)
 * certificate and the trust-root certificate it chains to. The signature
 * covers the digest table, so altering any data group is caught by digest
 * recomputation and altering the table itself breaks the signature.
 */
struct SignedDataBundle {
    std::map<std::uint32_t, Bytes> data_groups;
    std::string digest_alg;
    std::map<std::uint32_t, Bytes> digests;
    Bytes signature;
    CertificateRecord ds_certificate;
    CertificateRecord csca_certificate;
};

Bytes encode_bundle(const SignedDataBundle& bundle);
SignedDataBundle decode_bundle(ByteSpan data);

/**
 * Certificate authority context: signing key, own certificate, the chain
 * above it, the registration-authority key that co-signs approvals, and a
 * monotonically increasing serial counter. Issuance is serialized by the
 * single-writer rule on this object.
 */
struct CaContext {
    std::string id;
    suites::Mode mode;
    crypto::KeyPair key;
    CertificateRecord certificate;
    std::vector<CertificateRecord> chain; // above this CA, root last
    crypto::KeyPair ra_key;
    std::uint64_t next_serial = 1;
};

// Creates a self-signed root CA (chain empty). CA certificates are not
// end-entity certificates, so validity_days may exceed the 398-day cap.
CaContext make_root_ca(const std::string& id, suites::Mode mode,
                       entropy::RandomSource& source, EpochSeconds now,
                       std::uint32_t validity_days = 3650);

// Creates a subordinate CA whose certificate is signed by `parent`.
CaContext make_intermediate_ca(const std::string& id, CaContext& parent,
                               entropy::RandomSource& source, EpochSeconds now,
                               std::uint32_t validity_days = 1825);

struct IssuancePolicy {
    std::string allowed_subject_pattern = "*"; // glob, '*' matches any run
    suites::Mode mode = suites::Mode::current;
};

bool glob_match(std::string_view pattern, std::string_view name);

struct RaDecision {
    bool approved = false;
    std::string reason; // pop-invalid | alg-not-permitted | subject-not-allowed
    Bytes token;        // signed approval, present iff approved
};

Csr generate_csr(const std::string& subject_id, const crypto::KeyPair& key,
                 const std::map<std::string, Bytes>& extensions);

RaDecision ra_review(const Csr& csr, const IssuancePolicy& policy, const CaContext& ca,
                     EpochSeconds now);

// Issues an end-entity certificate for an approved request. Refuses
// validity_days > 398 with Error("validity-exceeds-max") and stale or
// forged tokens with Error("invalid-token").
CertificateRecord ca_issue(ByteSpan approval_token, CaContext& ca,
                           std::uint32_t validity_days, EpochSeconds now);

struct Verdict {
    bool accepted = false;
    std::string reason; // empty when accepted
};

/**
 * Verifies leaf -> chain -> trust_root at time `now`:
 * depth cap, validity windows, one signature-algorithm family across the
 * chain, CRL lookups, then the signature links up to the trust root.
 * Reasons: depth-exceeded, not-yet-valid, expired, alg-mismatch, revoked,
 * untrusted-chain.
 */
Verdict verify_chain(const CertificateRecord& leaf,
                     const std::vector<CertificateRecord>& chain,
                     const CertificateRecord& trust_root, EpochSeconds now,
                     const RevocationList* crl = nullptr);

// Returns an updated list containing `serial`; idempotent on repeats.
RevocationList revoke(ByteSpan serial, const RevocationList& crl, CaContext& issuer,
                      EpochSeconds now);

bool crl_signature_valid(const RevocationList& crl, const CertificateRecord& issuer_cert);

RevocationList make_empty_crl(CaContext& issuer, EpochSeconds now);

struct PaVerdict {
    bool accepted = false;
    std::string reason;               // untrusted-chain | bad-signature | digest-mismatch...
    std::optional<std::uint32_t> failing_group;
};

/**
 * Passive authentication: the Document Signer certificate must chain to the
 * trusted root, the bundle signature must verify under it, and every data
 * group must match its recorded digest.
 */
PaVerdict passive_authenticate(const SignedDataBundle& bundle,
                               const CertificateRecord& trusted_csca, EpochSeconds now);

// Builds a bundle signed by the given Document Signer key/certificate.
SignedDataBundle build_bundle(const std::map<std::uint32_t, Bytes>& data_groups,
                              const crypto::KeyPair& ds_key,
                              const CertificateRecord& ds_certificate,
                              const CertificateRecord& csca_certificate,
                              const std::string& digest_alg);

Bytes bundle_to_be_signed(const std::string& digest_alg,
                          const std::map<std::uint32_t, Bytes>& digests);

} // namespace c2a::pki

#endif // CHIP2APP_PKI_HPP_
