/*
 * Copyright (C) 2026 chip2app authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "chip2app/envelope.hpp"

#include <sstream>

#include "chip2app/errors.hpp"

namespace c2a::envelope {

namespace {
std::string begin_line(std::string_view kind) {
    return "-----BEGIN C2A " + std::string(kind) + "-----";
}
std::string end_line(std::string_view kind) {
    return "-----END C2A " + std::string(kind) + "-----";
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) {
        s.remove_suffix(1);
    }
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    return s;
}
} // namespace

std::string wrap(std::string_view kind, ByteSpan payload) {
    const std::string b64 = to_base64(payload);
    std::string out = begin_line(kind);
    out.push_back('\n');
    for (std::size_t i = 0; i < b64.size(); i += 64) {
        out.append(b64.substr(i, 64));
        out.push_back('\n');
    }
    out.append(end_line(kind));
    out.push_back('\n');
    return out;
}

std::vector<Bytes> unwrap_all(std::string_view kind, std::string_view text) {
    const std::string begin = begin_line(kind);
    const std::string end = end_line(kind);
    std::vector<Bytes> out;
    std::istringstream in{std::string(text)};
    std::string line;
    bool inside = false;
    std::string body;
    while (std::getline(in, line)) {
        const std::string_view t = trim(line);
        if (!inside) {
            if (t == begin) {
                inside = true;
                body.clear();
            }
        } else if (t == end) {
            out.push_back(from_base64(body));
            inside = false;
        } else {
            body.append(t);
        }
    }
    if (inside) {
        throw Error(errc::kMalformed, "envelope missing END line for " + std::string(kind));
    }
    return out;
}

Bytes unwrap(std::string_view kind, std::string_view text) {
    auto all = unwrap_all(kind, text);
    if (all.empty()) {
        throw Error(errc::kMalformed, "no C2A " + std::string(kind) + " envelope found");
    }
    return std::move(all.front());
}

} // namespace c2a::envelope
