/*
 * Copyright (C) 2026 chip2app authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "chip2app/entropy.hpp"

#include <cmath>

#include "chip2app/crypto.hpp"
#include "chip2app/errors.hpp"

namespace c2a::entropy {

RandomSource RandomSource::system() { return RandomSource(Kind::system, {}); }

RandomSource RandomSource::seeded(ByteSpan seed) {
    return RandomSource(Kind::seeded_deterministic, Bytes(seed.begin(), seed.end()));
}

Bytes RandomSource::draw(std::size_t n) {
    if (kind_ == Kind::system) {
        return crypto::system_random(n);
    }
    // Seeded stream: block i = SHA-256(seed || be64(i)), consumed in order.
    Bytes out;
    out.reserve(n);
    while (out.size() < n) {
        if (buffer_pos_ == buffer_.size()) {
            Bytes input = seed_;
            append_be64(input, block_counter_++);
            buffer_ = crypto::digest("SHA-256", input);
            buffer_pos_ = 0;
        }
        const std::size_t take =
            std::min(n - out.size(), buffer_.size() - buffer_pos_);
        out.insert(out.end(), buffer_.begin() + buffer_pos_,
                   buffer_.begin() + buffer_pos_ + take);
        buffer_pos_ += take;
    }
    return out;
}

std::size_t count_ones(ByteSpan bits, std::size_t nbits) {
    std::size_t ones = 0;
    for (std::size_t i = 0; i < nbits; ++i) {
        ones += (bits[i / 8] >> (7 - i % 8)) & 1;
    }
    return ones;
}

namespace {
void check_sample(ByteSpan bits, std::size_t nbits) {
    if (nbits < 100) {
        throw Error(errc::kLength, "statistical tests need at least 100 bits, got " +
                                       std::to_string(nbits));
    }
    if (nbits > bits.size() * 8) {
        throw Error(errc::kLength, "bit count exceeds buffer size");
    }
}

inline int bit_at(ByteSpan bits, std::size_t i) {
    return (bits[i / 8] >> (7 - i % 8)) & 1;
}
} // namespace

double monobit_test(ByteSpan bits, std::size_t nbits) {
    check_sample(bits, nbits);
    const double n = static_cast<double>(nbits);
    const double ones = static_cast<double>(count_ones(bits, nbits));
    const double s_obs = std::fabs(2.0 * ones - n) / std::sqrt(2.0 * n);
    return std::erfc(s_obs);
}

RunsResult runs_test(ByteSpan bits, std::size_t nbits) {
    check_sample(bits, nbits);
    const double n = static_cast<double>(nbits);
    const double pi = static_cast<double>(count_ones(bits, nbits)) / n;
    if (std::fabs(pi - 0.5) >= 2.0 / std::sqrt(n)) {
        return RunsResult{0.0, true};
    }
    std::size_t runs = 1;
    for (std::size_t i = 1; i < nbits; ++i) {
        if (bit_at(bits, i) != bit_at(bits, i - 1)) ++runs;
    }
    const double v = static_cast<double>(runs);
    const double expected = 2.0 * n * pi * (1.0 - pi);
    const double denom = 2.0 * std::sqrt(2.0 * n) * pi * (1.0 - pi);
    return RunsResult{std::erfc(std::fabs(v - expected) / denom), false};
}

HealthReport health_gate(ByteSpan sample, std::size_t nbits, double alpha) {
    if (!(alpha > 0.0 && alpha <= 0.5)) {
        throw Error(errc::kRange, "alpha must lie in (0, 0.5]");
    }
    check_sample(sample, nbits);

    HealthReport report;
    report.alpha = alpha;

    const double mono_p = monobit_test(sample, nbits);
    report.test_results.push_back({"monobit", mono_p, mono_p >= alpha, false});

    const RunsResult runs = runs_test(sample, nbits);
    report.test_results.push_back(
        {"runs", runs.p_value, runs.p_value >= alpha, runs.prerequisite_failed});

    report.overall_pass = true;
    for (const TestResult& r : report.test_results) {
        report.overall_pass = report.overall_pass && r.pass;
    }
    return report;
}

Bytes gated_draw(RandomSource& source, std::size_t n, double alpha, int attempts) {
    for (int i = 0; i < attempts; ++i) {
        const Bytes sample = source.draw(kGateSampleBytes);
        if (health_gate(sample, alpha).overall_pass) {
            return source.draw(n);
        }
    }
    throw Error(errc::kHealthGate,
                "entropy source failed the health gate on " +
                    std::to_string(attempts) + " consecutive samples");
}

} // namespace c2a::entropy
