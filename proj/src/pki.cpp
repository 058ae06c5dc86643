/*
 * Copyright (C) 2026 chip2app authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "chip2app/pki.hpp"

#include <algorithm>

#include "chip2app/cbor.hpp"
#include "chip2app/compact_cert.hpp"
#include "chip2app/errors.hpp"

namespace c2a::pki {

namespace {

Bytes serial_from_counter(std::uint64_t counter) {
    Bytes serial(8, 0);
    append_be64(serial, counter);
    return serial; // 16 bytes
}

CertificateRecord sign_certificate(CertificateRecord cert, const crypto::KeyPair& issuer_key) {
    cert.signature_alg = issuer_key.algorithm;
    cert.signature = crypto::sign(issuer_key.algorithm, issuer_key.private_key,
                                  compact::to_be_signed(cert));
    return cert;
}

bool within_validity(const CertificateRecord& cert, EpochSeconds now) {
    return now >= cert.not_before && now <= cert.not_after;
}

void encode_uint_bytes_map(cbor::Writer& w, const std::map<std::uint32_t, Bytes>& m) {
    std::vector<std::pair<Bytes, Bytes>> entries;
    entries.reserve(m.size());
    for (const auto& [k, v] : m) {
        cbor::Writer kw;
        kw.uint(k);
        cbor::Writer vw;
        vw.bytes(v);
        entries.emplace_back(kw.take(), vw.take());
    }
    w.map(std::move(entries));
}

std::map<std::uint32_t, Bytes> decode_uint_bytes_map(cbor::Reader& r) {
    std::map<std::uint32_t, Bytes> out;
    const std::uint64_t count = r.map_header();
    Bytes prev_key;
    for (std::uint64_t i = 0; i < count; ++i) {
        const Bytes raw_key = r.raw_item();
        if (i > 0 && !(prev_key < raw_key)) {
            throw Error(errc::kNonCanonical, "map keys out of order");
        }
        prev_key = raw_key;
        cbor::Reader kr(raw_key);
        out[static_cast<std::uint32_t>(kr.uint())] = r.bytes();
    }
    return out;
}

void encode_text_bytes_map(cbor::Writer& w, const std::map<std::string, Bytes>& m) {
    std::vector<std::pair<Bytes, Bytes>> entries;
    entries.reserve(m.size());
    for (const auto& [k, v] : m) {
        cbor::Writer kw;
        kw.text(k);
        cbor::Writer vw;
        vw.bytes(v);
        entries.emplace_back(kw.take(), vw.take());
    }
    w.map(std::move(entries));
}

std::map<std::string, Bytes> decode_text_bytes_map(cbor::Reader& r) {
    std::map<std::string, Bytes> out;
    const std::uint64_t count = r.map_header();
    Bytes prev_key;
    for (std::uint64_t i = 0; i < count; ++i) {
        const Bytes raw_key = r.raw_item();
        if (i > 0 && !(prev_key < raw_key)) {
            throw Error(errc::kNonCanonical, "map keys out of order");
        }
        prev_key = raw_key;
        cbor::Reader kr(raw_key);
        out[kr.text()] = r.bytes();
    }
    return out;
}

} // namespace

// -- CSR ----------------------------------------------------------------------

Bytes csr_to_be_signed(const Csr& csr) {
    cbor::Writer w;
    w.array_header(5);
    w.text(csr.subject_id);
    w.uint(compact::algorithm_id(csr.public_key_alg));
    w.bytes(csr.public_key);
    encode_text_bytes_map(w, csr.requested_extensions);
    return w.take();
}

Bytes encode_csr(const Csr& csr) {
    cbor::Writer w;
    w.raw(csr_to_be_signed(csr));
    w.bytes(csr.proof_of_possession);
    return w.take();
}

Csr decode_csr(ByteSpan data) {
    cbor::Reader r(data);
    if (r.array_header() != 5) {
        throw Error(errc::kMalformed, "CSR must be a 5-field array");
    }
    Csr csr;
    csr.subject_id = r.text();
    csr.public_key_alg = compact::algorithm_name(static_cast<std::uint32_t>(r.uint()));
    csr.public_key = r.bytes();
    csr.requested_extensions = decode_text_bytes_map(r);
    csr.proof_of_possession = r.bytes();
    r.expect_done();
    return csr;
}

bool csr_proof_valid(const Csr& csr) {
    if (!crypto::signature_available(csr.public_key_alg)) return false;
    return crypto::verify(csr.public_key_alg, csr.public_key, csr_to_be_signed(csr),
                          csr.proof_of_possession);
}

Csr generate_csr(const std::string& subject_id, const crypto::KeyPair& key,
                 const std::map<std::string, Bytes>& extensions) {
    // Only registry signature algorithms may anchor a certificate request.
    bool registered = false;
    for (suites::Mode mode : {suites::Mode::current, suites::Mode::future}) {
        for (const auto& spec : suites::resolve(mode, suites::Role::signature)) {
            registered = registered || spec.name == key.algorithm;
        }
    }
    if (!registered) {
        throw Error(errc::kUnknownAlgorithm,
                    key.algorithm + " is not a registered signature algorithm");
    }
    Csr csr;
    csr.subject_id = subject_id;
    csr.public_key_alg = key.algorithm;
    csr.public_key = key.public_key;
    csr.requested_extensions = extensions;
    csr.proof_of_possession =
        crypto::sign(key.algorithm, key.private_key, csr_to_be_signed(csr));
    return csr;
}

// -- CA / RA ------------------------------------------------------------------

CaContext make_root_ca(const std::string& id, suites::Mode mode,
                       entropy::RandomSource& source, EpochSeconds now,
                       std::uint32_t validity_days) {
    const auto& sig = suites::primary(mode, suites::Role::signature);
    if (!sig.available) {
        throw Error(errc::kNotAvailable,
                    sig.name + " is flagged not-available in this build");
    }
    CaContext ca;
    ca.id = id;
    ca.mode = mode;
    const Bytes key_seed = entropy::gated_draw(source, crypto::keypair_seed_len(sig.name));
    ca.key = crypto::keypair_from_seed(sig.name, key_seed);
    const Bytes ra_seed = source.draw(crypto::keypair_seed_len(sig.name));
    ca.ra_key = crypto::keypair_from_seed(sig.name, ra_seed);

    CertificateRecord cert;
    cert.serial = serial_from_counter(ca.next_serial++);
    cert.issuer_id = id;
    cert.subject_id = id;
    cert.public_key_alg = sig.name;
    cert.public_key = ca.key.public_key;
    cert.not_before = now;
    cert.not_after = now + EpochSeconds(validity_days) * kSecondsPerDay;
    ca.certificate = sign_certificate(std::move(cert), ca.key);
    return ca;
}

CaContext make_intermediate_ca(const std::string& id, CaContext& parent,
                               entropy::RandomSource& source, EpochSeconds now,
                               std::uint32_t validity_days) {
    const auto& sig = suites::spec_by_name(parent.key.algorithm);
    CaContext ca;
    ca.id = id;
    ca.mode = parent.mode;
    const Bytes key_seed = entropy::gated_draw(source, crypto::keypair_seed_len(sig.name));
    ca.key = crypto::keypair_from_seed(sig.name, key_seed);
    const Bytes ra_seed = source.draw(crypto::keypair_seed_len(sig.name));
    ca.ra_key = crypto::keypair_from_seed(sig.name, ra_seed);

    CertificateRecord cert;
    cert.serial = serial_from_counter(parent.next_serial++);
    cert.issuer_id = parent.id;
    cert.subject_id = id;
    cert.public_key_alg = sig.name;
    cert.public_key = ca.key.public_key;
    cert.not_before = now;
    cert.not_after = now + EpochSeconds(validity_days) * kSecondsPerDay;
    ca.certificate = sign_certificate(std::move(cert), parent.key);
    ca.chain = parent.chain;
    ca.chain.insert(ca.chain.begin(), parent.certificate);
    return ca;
}

bool glob_match(std::string_view pattern, std::string_view name) {
    if (pattern.empty()) return name.empty();
    if (pattern.front() == '*') {
        for (std::size_t skip = 0; skip <= name.size(); ++skip) {
            if (glob_match(pattern.substr(1), name.substr(skip))) return true;
        }
        return false;
    }
    if (name.empty() || pattern.front() != name.front()) return false;
    return glob_match(pattern.substr(1), name.substr(1));
}

RaDecision ra_review(const Csr& csr, const IssuancePolicy& policy, const CaContext& ca,
                     EpochSeconds now) {
    if (!csr_proof_valid(csr)) {
        return RaDecision{false, "pop-invalid", {}};
    }
    bool permitted = false;
    for (const auto& spec : suites::resolve(policy.mode, suites::Role::signature)) {
        permitted = permitted || (spec.name == csr.public_key_alg && spec.available);
    }
    if (!permitted) {
        return RaDecision{false, "alg-not-permitted", {}};
    }
    if (!glob_match(policy.allowed_subject_pattern, csr.subject_id)) {
        return RaDecision{false, "subject-not-allowed", {}};
    }

    // Approval token: [csr bytes, approved_at] signed by the RA key.
    cbor::Writer w;
    w.array_header(3);
    w.bytes(encode_csr(csr));
    w.uint(static_cast<std::uint64_t>(now));
    Bytes body = w.data();
    const Bytes sig = crypto::sign(ca.ra_key.algorithm, ca.ra_key.private_key, body);
    cbor::Writer token;
    token.raw(body);
    token.bytes(sig);
    return RaDecision{true, "", token.take()};
}

CertificateRecord ca_issue(ByteSpan approval_token, CaContext& ca,
                           std::uint32_t validity_days, EpochSeconds now) {
    Csr csr;
    EpochSeconds approved_at = 0;
    try {
        cbor::Reader r(approval_token);
        if (r.array_header() != 3) throw Error(errc::kMalformed, "bad token shape");
        const Bytes csr_bytes = r.bytes();
        approved_at = static_cast<EpochSeconds>(r.uint());
        const Bytes sig = r.bytes();
        r.expect_done();

        cbor::Writer body;
        body.array_header(3);
        body.bytes(csr_bytes);
        body.uint(static_cast<std::uint64_t>(approved_at));
        if (!crypto::verify(ca.ra_key.algorithm, ca.ra_key.public_key, body.data(), sig)) {
            throw Error(errc::kInvalidToken, "approval token signature invalid");
        }
        csr = decode_csr(csr_bytes);
    } catch (const Error& e) {
        if (e.code() == errc::kInvalidToken) throw;
        throw Error(errc::kInvalidToken,
                    std::string("approval token unreadable: ") + e.what());
    }
    if (now < approved_at || now - approved_at > kApprovalTokenLifetime) {
        throw Error(errc::kInvalidToken, "approval token expired");
    }
    if (validity_days > 398) {
        throw Error(errc::kValidityExceedsMax,
                    "end-entity validity must not exceed 398 days");
    }
    if (!csr_proof_valid(csr)) {
        throw Error(errc::kInvalidToken, "proof of possession no longer verifies");
    }

    CertificateRecord cert;
    cert.serial = serial_from_counter(ca.next_serial++);
    cert.issuer_id = ca.id;
    cert.subject_id = csr.subject_id;
    cert.public_key_alg = csr.public_key_alg;
    cert.public_key = csr.public_key;
    cert.not_before = now;
    cert.not_after = now + EpochSeconds(validity_days) * kSecondsPerDay;
    cert.extensions = csr.requested_extensions;
    return sign_certificate(std::move(cert), ca.key);
}

// -- Chain verification ---------------------------------------------------------

Verdict verify_chain(const CertificateRecord& leaf,
                     const std::vector<CertificateRecord>& chain,
                     const CertificateRecord& trust_root, EpochSeconds now,
                     const RevocationList* crl) {
    std::vector<const CertificateRecord*> path;
    path.push_back(&leaf);
    for (const CertificateRecord& c : chain) path.push_back(&c);
    path.push_back(&trust_root);

    if (path.size() > kMaxChainDepth) {
        return Verdict{false, "depth-exceeded"};
    }
    for (const CertificateRecord* cert : path) {
        if (cert->not_before >= cert->not_after) return Verdict{false, "malformed-validity"};
        if (now < cert->not_before) return Verdict{false, "not-yet-valid"};
        if (now > cert->not_after) return Verdict{false, "expired"};
    }
    for (const CertificateRecord* cert : path) {
        if (cert->signature_alg != trust_root.signature_alg) {
            return Verdict{false, "alg-mismatch"};
        }
    }
    if (crl != nullptr) {
        for (const CertificateRecord* cert : path) {
            if (crl->revoked_serials.count(cert->serial) > 0) {
                return Verdict{false, "revoked"};
            }
        }
    }
    // Signature links: each certificate is signed by the next one's key.
    // The trust root itself is the anchor; when the leaf is the root, byte
    // equality is required.
    if (path.size() == 2 && leaf == trust_root) {
        return Verdict{true, ""};
    }
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        const CertificateRecord& cert = *path[i];
        const CertificateRecord& signer = *path[i + 1];
        if (cert.issuer_id != signer.subject_id ||
            !crypto::verify(cert.signature_alg, signer.public_key,
                            compact::to_be_signed(cert), cert.signature)) {
            return Verdict{false, "untrusted-chain"};
        }
    }
    return Verdict{true, ""};
}

// -- Revocation -----------------------------------------------------------------

namespace {
Bytes crl_to_be_signed(const RevocationList& crl) {
    cbor::Writer w;
    w.array_header(4);
    w.text(crl.issuer_id);
    w.uint(static_cast<std::uint64_t>(crl.issued_at));
    w.array_header(crl.revoked_serials.size());
    for (const Bytes& s : crl.revoked_serials) w.bytes(s); // std::set: sorted
    return w.take();
}
} // namespace

Bytes encode_crl(const RevocationList& crl) {
    cbor::Writer w;
    w.raw(crl_to_be_signed(crl));
    w.bytes(crl.signature);
    return w.take();
}

RevocationList decode_crl(ByteSpan data) {
    cbor::Reader r(data);
    if (r.array_header() != 4) throw Error(errc::kMalformed, "CRL must be a 4-field array");
    RevocationList crl;
    crl.issuer_id = r.text();
    crl.issued_at = static_cast<EpochSeconds>(r.uint());
    const std::uint64_t count = r.array_header();
    Bytes prev;
    for (std::uint64_t i = 0; i < count; ++i) {
        Bytes s = r.bytes();
        if (i > 0 && !(prev < s)) {
            throw Error(errc::kNonCanonical, "CRL serials out of order");
        }
        prev = s;
        crl.revoked_serials.insert(std::move(s));
    }
    crl.signature = r.bytes();
    r.expect_done();
    return crl;
}

RevocationList make_empty_crl(CaContext& issuer, EpochSeconds now) {
    RevocationList crl;
    crl.issuer_id = issuer.id;
    crl.issued_at = now;
    crl.signature = crypto::sign(issuer.key.algorithm, issuer.key.private_key,
                                 crl_to_be_signed(crl));
    return crl;
}

RevocationList revoke(ByteSpan serial, const RevocationList& crl, CaContext& issuer,
                      EpochSeconds now) {
    if (crl.issuer_id != issuer.id) {
        throw Error(errc::kIssuerMismatch, "revocation list belongs to " + crl.issuer_id);
    }
    RevocationList next = crl;
    next.issued_at = std::max(now, crl.issued_at + 1);
    next.revoked_serials.insert(Bytes(serial.begin(), serial.end()));
    next.signature = crypto::sign(issuer.key.algorithm, issuer.key.private_key,
                                  crl_to_be_signed(next));
    return next;
}

bool crl_signature_valid(const RevocationList& crl, const CertificateRecord& issuer_cert) {
    return crypto::verify(issuer_cert.public_key_alg, issuer_cert.public_key,
                          crl_to_be_signed(crl), crl.signature);
}

// -- Passive authentication -------------------------------------------------------

Bytes bundle_to_be_signed(const std::string& digest_alg,
                          const std::map<std::uint32_t, Bytes>& digests) {
    cbor::Writer w;
    w.array_header(2);
    w.uint(compact::algorithm_id(digest_alg));
    encode_uint_bytes_map(w, digests);
    return w.take();
}

Bytes encode_bundle(const SignedDataBundle& bundle) {
    cbor::Writer w;
    w.array_header(6);
    encode_uint_bytes_map(w, bundle.data_groups);
    w.uint(compact::algorithm_id(bundle.digest_alg));
    encode_uint_bytes_map(w, bundle.digests);
    w.bytes(bundle.signature);
    w.bytes(compact::encode_compact(bundle.ds_certificate));
    w.bytes(compact::encode_compact(bundle.csca_certificate));
    return w.take();
}

SignedDataBundle decode_bundle(ByteSpan data) {
    cbor::Reader r(data);
    if (r.array_header() != 6) {
        throw Error(errc::kMalformed, "bundle must be a 6-field array");
    }
    SignedDataBundle bundle;
    bundle.data_groups = decode_uint_bytes_map(r);
    bundle.digest_alg = compact::algorithm_name(static_cast<std::uint32_t>(r.uint()));
    bundle.digests = decode_uint_bytes_map(r);
    bundle.signature = r.bytes();
    bundle.ds_certificate = compact::decode_compact(r.bytes());
    bundle.csca_certificate = compact::decode_compact(r.bytes());
    r.expect_done();
    return bundle;
}

SignedDataBundle build_bundle(const std::map<std::uint32_t, Bytes>& data_groups,
                              const crypto::KeyPair& ds_key,
                              const CertificateRecord& ds_certificate,
                              const CertificateRecord& csca_certificate,
                              const std::string& digest_alg) {
    SignedDataBundle bundle;
    bundle.data_groups = data_groups;
    bundle.digest_alg = digest_alg;
    for (const auto& [index, content] : data_groups) {
        bundle.digests[index] = crypto::digest(digest_alg, content);
    }
    bundle.signature = crypto::sign(ds_key.algorithm, ds_key.private_key,
                                    bundle_to_be_signed(digest_alg, bundle.digests));
    bundle.ds_certificate = ds_certificate;
    bundle.csca_certificate = csca_certificate;
    return bundle;
}

PaVerdict passive_authenticate(const SignedDataBundle& bundle,
                               const CertificateRecord& trusted_csca, EpochSeconds now) {
    // The embedded trust root must be the expected one, and the Document
    // Signer certificate must chain to it. A re-built bundle anchored to a
    // different (for instance self-signed) root fails here.
    if (!(bundle.csca_certificate == trusted_csca)) {
        return PaVerdict{false, "untrusted-chain", std::nullopt};
    }
    const Verdict chain = verify_chain(bundle.ds_certificate, {}, trusted_csca, now);
    if (!chain.accepted) {
        const std::string reason =
            chain.reason == "expired" || chain.reason == "not-yet-valid" ? chain.reason
                                                                         : "untrusted-chain";
        return PaVerdict{false, reason, std::nullopt};
    }
    if (!crypto::verify(bundle.ds_certificate.public_key_alg,
                        bundle.ds_certificate.public_key,
                        bundle_to_be_signed(bundle.digest_alg, bundle.digests),
                        bundle.signature)) {
        return PaVerdict{false, "bad-signature", std::nullopt};
    }
    for (const auto& [index, content] : bundle.data_groups) {
        const auto it = bundle.digests.find(index);
        if (it == bundle.digests.end() ||
            !crypto::ct_equal(crypto::digest(bundle.digest_alg, content), it->second)) {
            return PaVerdict{false, "digest-mismatch", index};
        }
    }
    return PaVerdict{true, "", std::nullopt};
}

} // namespace c2a::pki
