/*
 * Copyright (C) 2026 chip2app authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef CHIP2APP_CBOR_HPP_
#define CHIP2APP_CBOR_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "chip2app/bytes.hpp"

namespace c2a::cbor {

/**
 * Deterministic CBOR subset used by every binary structure in this project.
 *
 * Supported items: unsigned integers (major 0), byte strings (major 2),
 * text strings (major 3), definite arrays (major 4) and definite maps
 * (major 5). Everything else is rejected.
 *
 * Canonical form: definite lengths only, shortest-form lengths/integers, and
 * map entries sorted by the byte-wise order of their encoded keys. The reader
 * rejects any deviation, so a given structure has exactly one valid encoding.
 */

class Writer {
public:
    void uint(std::uint64_t v) { header(0, v); }
    void bytes(ByteSpan v) {
        header(2, v.size());
        append(out_, v);
    }
    void text(std::string_view v) {
        header(3, v.size());
        append(out_, str_span(v));
    }
    void array_header(std::uint64_t count) { header(4, count); }
    void map_header(std::uint64_t count) { header(5, count); }

    // Appends a pre-encoded item verbatim.
    void raw(ByteSpan encoded) { append(out_, encoded); }

    const Bytes& data() const { return out_; }
    Bytes take() { return std::move(out_); }

    /**
     * Encodes a map from pre-encoded (key, value) items, sorting entries by
     * encoded key bytes as the canonical form requires.
     */
    void map(std::vector<std::pair<Bytes, Bytes>> entries);

private:
    void header(int major, std::uint64_t value);
    Bytes out_;
};

class Reader {
public:
    explicit Reader(ByteSpan data) : data_(data) {}

    std::uint64_t uint();
    Bytes bytes();
    std::string text();
    std::uint64_t array_header();
    std::uint64_t map_header();

    // Consumes one complete item (any supported type) and returns its
    // encoded bytes. Used for canonical map-key ordering checks.
    Bytes raw_item();

    std::size_t offset() const { return pos_; }
    bool done() const { return pos_ == data_.size(); }

    // Throws Error("malformed") when trailing bytes remain.
    void expect_done() const;

private:
    std::pair<int, std::uint64_t> header();
    std::uint8_t byte();
    ByteSpan take(std::size_t n);
    [[noreturn]] void fail(const char* code, const std::string& msg) const;

    ByteSpan data_;
    std::size_t pos_ = 0;
};

} // namespace c2a::cbor

#endif // CHIP2APP_CBOR_HPP_
