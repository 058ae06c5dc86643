/*
 * Copyright (C) 2026 chip2app authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef CHIP2APP_BYTES_HPP_
#define CHIP2APP_BYTES_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace c2a {

using Bytes = std::vector<std::uint8_t>;
using ByteSpan = std::span<const std::uint8_t>;
using EpochSeconds = std::int64_t;

inline Bytes to_bytes(std::string_view s) {
    return Bytes(s.begin(), s.end());
}

inline ByteSpan as_span(const Bytes& b) { return ByteSpan(b.data(), b.size()); }

inline ByteSpan str_span(std::string_view s) {
    return ByteSpan(reinterpret_cast<const std::uint8_t*>(s.data()), s.size());
}

inline void append(Bytes& out, ByteSpan more) {
    out.insert(out.end(), more.begin(), more.end());
}

std::string to_hex(ByteSpan data);
Bytes from_hex(std::string_view hex); // throws Error("malformed") on bad input

std::string to_base64(ByteSpan data);
Bytes from_base64(std::string_view b64); // whitespace tolerated between groups

// Big-endian integer helpers used by transcripts and KDF inputs.
void append_be32(Bytes& out, std::uint32_t v);
void append_be64(Bytes& out, std::uint64_t v);

} // namespace c2a

#endif // CHIP2APP_BYTES_HPP_
