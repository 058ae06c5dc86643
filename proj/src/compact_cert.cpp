/*
 * Copyright (C) 2026 chip2app authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "chip2app/compact_cert.hpp"

#include <sstream>

#include "chip2app/cbor.hpp"
#include "chip2app/errors.hpp"

namespace c2a::compact {

namespace {

std::vector<std::pair<std::string, std::uint32_t>> build_table() {
    return {
        {"Ed25519", 0},  {"Ed448", 1},       {"ML-DSA", 2},
        {"SLH-DSA", 3},  {"ML-KEM", 4},      {"AES-128-GCM", 5},
        {"AES-256-GCM", 6}, {"SHA3-384", 7}, {"SHA3-512", 8},
        // Appended entries; ids are stable once assigned.
        {"X25519", 9},   {"X448", 10},       {"SHA-256", 11},
        {"HMAC-SHA-256", 12}, {"CMAC-AES-128", 13}, {"HMAC-SHA3-384", 14},
        {"OneStep-KDF-SHA-256", 15}, {"OneStep-KDF-SHA3-384", 16},
    };
}

// Shared encoder for the first nine fields.
void encode_tbs_fields(cbor::Writer& w, const CertificateRecord& cert) {
    w.array_header(11);
    w.uint(cert.version);
    w.bytes(cert.serial);
    w.text(cert.issuer_id);
    w.text(cert.subject_id);
    w.uint(algorithm_id(cert.public_key_alg));
    w.bytes(cert.public_key);
    if (cert.not_before < 0 || cert.not_after < 0) {
        throw Error(errc::kRange, "validity timestamps must be non-negative");
    }
    w.uint(static_cast<std::uint64_t>(cert.not_before));
    w.uint(static_cast<std::uint64_t>(cert.not_after));
    std::vector<std::pair<Bytes, Bytes>> entries;
    entries.reserve(cert.extensions.size());
    for (const auto& [key, value] : cert.extensions) {
        cbor::Writer kw;
        kw.text(key);
        cbor::Writer vw;
        vw.bytes(value);
        entries.emplace_back(kw.take(), vw.take());
    }
    w.map(std::move(entries));
}

} // namespace

const std::vector<std::pair<std::string, std::uint32_t>>& algorithm_id_table() {
    static const auto table = build_table();
    return table;
}

std::uint32_t algorithm_id(const std::string& name) {
    for (const auto& [n, id] : algorithm_id_table()) {
        if (n == name) return id;
    }
    throw Error(errc::kUnknownAlgorithm, "no compact id for algorithm: " + name);
}

const std::string& algorithm_name(std::uint32_t id) {
    for (const auto& [n, i] : algorithm_id_table()) {
        if (i == id) return n;
    }
    throw Error(errc::kUnknownAlgorithm, "unknown algorithm id: " + std::to_string(id));
}

Bytes encode_compact(const CertificateRecord& cert) {
    cbor::Writer w;
    encode_tbs_fields(w, cert);
    w.uint(algorithm_id(cert.signature_alg));
    w.bytes(cert.signature);
    return w.take();
}

Bytes to_be_signed(const CertificateRecord& cert) {
    cbor::Writer w;
    encode_tbs_fields(w, cert);
    return w.take();
}

CertificateRecord decode_compact(ByteSpan data) {
    cbor::Reader r(data);
    if (r.array_header() != 11) {
        throw Error(errc::kMalformed,
                    "certificate must be an 11-field array, at byte offset 0");
    }
    CertificateRecord cert;
    const std::uint64_t version = r.uint();
    if (version > 0xffffffffULL) throw Error(errc::kMalformed, "version out of range");
    cert.version = static_cast<std::uint32_t>(version);
    cert.serial = r.bytes();
    cert.issuer_id = r.text();
    cert.subject_id = r.text();
    cert.public_key_alg = algorithm_name(static_cast<std::uint32_t>(r.uint()));
    cert.public_key = r.bytes();
    cert.not_before = static_cast<EpochSeconds>(r.uint());
    cert.not_after = static_cast<EpochSeconds>(r.uint());

    const std::uint64_t n_ext = r.map_header();
    Bytes prev_key;
    for (std::uint64_t i = 0; i < n_ext; ++i) {
        const std::size_t key_off = r.offset();
        const Bytes raw_key = r.raw_item();
        if (i > 0 && !(prev_key < raw_key)) {
            throw Error(errc::kNonCanonical,
                        "map keys out of order at byte offset " + std::to_string(key_off));
        }
        prev_key = raw_key;
        cbor::Reader kr(raw_key);
        const std::string key = kr.text();
        cert.extensions[key] = r.bytes();
    }

    cert.signature_alg = algorithm_name(static_cast<std::uint32_t>(r.uint()));
    cert.signature = r.bytes();
    r.expect_done();
    return cert;
}

namespace {

void put_line(std::string& out, std::string_view name, std::string_view value) {
    out.append(name);
    out.append(" = ");
    out.append(value);
    out.push_back('\n');
}

} // namespace

std::string encode_baseline(const CertificateRecord& cert) {
    std::string out = "c2a-certificate baseline-v1\n";
    put_line(out, "version", std::to_string(cert.version));
    put_line(out, "serial", to_base64(cert.serial));
    put_line(out, "issuer_id", to_base64(str_span(cert.issuer_id)));
    put_line(out, "subject_id", to_base64(str_span(cert.subject_id)));
    put_line(out, "public_key_alg", to_base64(str_span(cert.public_key_alg)));
    put_line(out, "public_key", to_base64(cert.public_key));
    put_line(out, "not_before", std::to_string(cert.not_before));
    put_line(out, "not_after", std::to_string(cert.not_after));
    for (const auto& [key, value] : cert.extensions) {
        put_line(out, "extension",
                 to_base64(str_span(key)) + " " + to_base64(value));
    }
    put_line(out, "signature_alg", to_base64(str_span(cert.signature_alg)));
    put_line(out, "signature", to_base64(cert.signature));
    return out;
}

CertificateRecord decode_baseline(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "c2a-certificate baseline-v1") {
        throw Error(errc::kMalformed, "missing baseline header");
    }
    CertificateRecord cert;
    auto text_of = [](const std::string& b64) {
        const Bytes raw = from_base64(b64);
        return std::string(raw.begin(), raw.end());
    };
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto eq = line.find(" = ");
        if (eq == std::string::npos) {
            throw Error(errc::kMalformed, "baseline line missing separator: " + line);
        }
        const std::string name = line.substr(0, eq);
        const std::string value = line.substr(eq + 3);
        if (name == "version") {
            cert.version = static_cast<std::uint32_t>(std::stoul(value));
        } else if (name == "serial") {
            cert.serial = from_base64(value);
        } else if (name == "issuer_id") {
            cert.issuer_id = text_of(value);
        } else if (name == "subject_id") {
            cert.subject_id = text_of(value);
        } else if (name == "public_key_alg") {
            cert.public_key_alg = text_of(value);
        } else if (name == "public_key") {
            cert.public_key = from_base64(value);
        } else if (name == "not_before") {
            cert.not_before = std::stoll(value);
        } else if (name == "not_after") {
            cert.not_after = std::stoll(value);
        } else if (name == "extension") {
            const auto sp = value.find(' ');
            if (sp == std::string::npos) {
                throw Error(errc::kMalformed, "baseline extension missing value");
            }
            cert.extensions[text_of(value.substr(0, sp))] = from_base64(value.substr(sp + 1));
        } else if (name == "signature_alg") {
            cert.signature_alg = text_of(value);
        } else if (name == "signature") {
            cert.signature = from_base64(value);
        } else {
            throw Error(errc::kMalformed, "unknown baseline field: " + name);
        }
    }
    return cert;
}

SizeReport size_report(const CertificateRecord& cert) {
    const std::size_t compact_len = encode_compact(cert).size();
    const std::size_t baseline_len = encode_baseline(cert).size();
    return SizeReport{compact_len, baseline_len,
                      static_cast<double>(compact_len) / static_cast<double>(baseline_len)};
}

} // namespace c2a::compact
