/*
 * Copyright (C) 2026 chip2app authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef CHIP2APP_COMPACT_CERT_HPP_
#define CHIP2APP_COMPACT_CERT_HPP_

#include <string>
#include <utility>
#include <vector>

#include "chip2app/cert_record.hpp"

namespace c2a::compact {

/**
 * Compact binary certificate profile: one definite-length array of
 *
 *   [version, serial, issuer_id, subject_id, public_key_alg, public_key,
 *    not_before, not_after, extensions, signature_alg, signature]
 *
 * in the project's canonical CBOR subset. Algorithms travel as small
 * integers via the table below. The to-be-signed bytes are the same array
 * truncated immediately before signature_alg, so re-encoding never
 * invalidates signatures. The field order is frozen.
 */

// Name <-> id table. Append-only; existing ids never change.
const std::vector<std::pair<std::string, std::uint32_t>>& algorithm_id_table();
std::uint32_t algorithm_id(const std::string& name);
const std::string& algorithm_name(std::uint32_t id);

Bytes encode_compact(const CertificateRecord& cert);
Bytes to_be_signed(const CertificateRecord& cert);

// Strict inverse of encode_compact: rejects non-canonical forms
// (indefinite lengths, unsorted map keys, non-minimal integers) with
// Error("non-canonical") and anything else broken with Error("malformed").
CertificateRecord decode_compact(ByteSpan data);

// Verbose self-describing baseline used for size comparisons: one field per
// line, full field names, base64 values. Lossless round-trip.
std::string encode_baseline(const CertificateRecord& cert);
CertificateRecord decode_baseline(const std::string& text);

struct SizeReport {
    std::size_t compact_len;
    std::size_t baseline_len;
    double ratio; // compact / baseline
};

SizeReport size_report(const CertificateRecord& cert);

} // namespace c2a::compact

#endif // CHIP2APP_COMPACT_CERT_HPP_
