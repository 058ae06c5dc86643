/*
 * Copyright (C) 2026 chip2app authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "chip2app/cbor.hpp"

#include <algorithm>

#include "chip2app/errors.hpp"

namespace c2a::cbor {

void Writer::header(int major, std::uint64_t value) {
    const std::uint8_t mt = static_cast<std::uint8_t>(major << 5);
    if (value < 24) {
        out_.push_back(mt | static_cast<std::uint8_t>(value));
    } else if (value <= 0xff) {
        out_.push_back(mt | 24);
        out_.push_back(static_cast<std::uint8_t>(value));
    } else if (value <= 0xffff) {
        out_.push_back(mt | 25);
        out_.push_back(static_cast<std::uint8_t>(value >> 8));
        out_.push_back(static_cast<std::uint8_t>(value));
    } else if (value <= 0xffffffffULL) {
        out_.push_back(mt | 26);
        append_be32(out_, static_cast<std::uint32_t>(value));
    } else {
        out_.push_back(mt | 27);
        append_be64(out_, value);
    }
}

void Writer::map(std::vector<std::pair<Bytes, Bytes>> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < entries.size(); ++i) {
        if (entries[i - 1].first == entries[i].first) {
            throw Error(errc::kNonCanonical, "duplicate map key");
        }
    }
    map_header(entries.size());
    for (const auto& [k, v] : entries) {
        raw(k);
        raw(v);
    }
}

void Reader::fail(const char* code, const std::string& msg) const {
    throw Error(code, msg + " at byte offset " + std::to_string(pos_));
}

std::uint8_t Reader::byte() {
    if (pos_ >= data_.size()) fail(errc::kMalformed, "unexpected end of input");
    return data_[pos_++];
}

ByteSpan Reader::take(std::size_t n) {
    if (n > data_.size() - pos_) fail(errc::kMalformed, "truncated item body");
    ByteSpan s = data_.subspan(pos_, n);
    pos_ += n;
    return s;
}

std::pair<int, std::uint64_t> Reader::header() {
    const std::size_t start = pos_;
    const std::uint8_t ib = byte();
    const int major = ib >> 5;
    const std::uint8_t info = ib & 0x1f;
    std::uint64_t value = 0;
    if (info < 24) {
        value = info;
    } else if (info == 24) {
        value = byte();
        if (value < 24) {
            pos_ = start;
            fail(errc::kNonCanonical, "non-minimal integer encoding");
        }
    } else if (info == 25) {
        value = std::uint64_t(byte()) << 8;
        value |= byte();
        if (value <= 0xff) {
            pos_ = start;
            fail(errc::kNonCanonical, "non-minimal integer encoding");
        }
    } else if (info == 26) {
        for (int i = 0; i < 4; ++i) value = (value << 8) | byte();
        if (value <= 0xffff) {
            pos_ = start;
            fail(errc::kNonCanonical, "non-minimal integer encoding");
        }
    } else if (info == 27) {
        for (int i = 0; i < 8; ++i) value = (value << 8) | byte();
        if (value <= 0xffffffffULL) {
            pos_ = start;
            fail(errc::kNonCanonical, "non-minimal integer encoding");
        }
    } else if (info == 31) {
        pos_ = start;
        fail(errc::kNonCanonical, "indefinite-length item");
    } else {
        pos_ = start;
        fail(errc::kMalformed, "reserved length encoding");
    }
    return {major, value};
}

std::uint64_t Reader::uint() {
    auto [major, value] = header();
    if (major != 0) fail(errc::kMalformed, "expected unsigned integer");
    return value;
}

Bytes Reader::bytes() {
    auto [major, len] = header();
    if (major != 2) fail(errc::kMalformed, "expected byte string");
    ByteSpan body = take(len);
    return Bytes(body.begin(), body.end());
}

std::string Reader::text() {
    auto [major, len] = header();
    if (major != 3) fail(errc::kMalformed, "expected text string");
    ByteSpan body = take(len);
    return std::string(body.begin(), body.end());
}

std::uint64_t Reader::array_header() {
    auto [major, count] = header();
    if (major != 4) fail(errc::kMalformed, "expected array");
    return count;
}

std::uint64_t Reader::map_header() {
    auto [major, count] = header();
    if (major != 5) fail(errc::kMalformed, "expected map");
    return count;
}

Bytes Reader::raw_item() {
    const std::size_t start = pos_;
    // A work list of pending item counts bounds the scan; nesting depth is
    // capped to keep adversarial inputs from exhausting the stack.
    std::uint64_t pending = 1;
    int depth_budget = 64;
    while (pending > 0) {
        auto [major, value] = header();
        --pending;
        switch (major) {
        case 0:
            break;
        case 2:
        case 3:
            take(value);
            break;
        case 4:
        case 5: {
            if (--depth_budget < 0) fail(errc::kMalformed, "nesting too deep");
            // Each contained item consumes at least one byte; a count beyond
            // the remaining input cannot be completed and would otherwise
            // overflow the pending counter.
            const std::uint64_t remaining = data_.size() - pos_;
            if (value > remaining) {
                fail(errc::kMalformed, "container length exceeds input");
            }
            pending += (major == 5) ? value * 2 : value;
            break;
        }
        default:
            fail(errc::kMalformed, "unsupported item type");
        }
    }
    ByteSpan body = data_.subspan(start, pos_ - start);
    return Bytes(body.begin(), body.end());
}

void Reader::expect_done() const {
    if (!done()) {
        throw Error(errc::kMalformed, "trailing bytes after item at offset " +
                                          std::to_string(pos_));
    }
}

} // namespace c2a::cbor
