/*
 * Copyright (C) 2026 chip2app authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef CHIP2APP_ENTROPY_HPP_
#define CHIP2APP_ENTROPY_HPP_

#include <string>
#include <vector>

#include "chip2app/bytes.hpp"

namespace c2a::entropy {

/**
 * Byte source feeding all key generation. Two kinds exist:
 *  - system: the platform entropy source (stands in for a hardware TRNG);
 *  - seeded-deterministic: a reproducible stream for tests. Equal seeds
 *    yield identical byte streams.
 *
 * A source is single-owner while drawing; system sources may be recreated
 * freely in each thread instead of being shared.
 */
class RandomSource {
public:
    enum class Kind { system, seeded_deterministic };

    static RandomSource system();
    static RandomSource seeded(ByteSpan seed); // test only

    Kind kind() const { return kind_; }

    // Returns exactly n bytes; n = 0 yields an empty buffer.
    Bytes draw(std::size_t n);

private:
    RandomSource(Kind kind, Bytes seed) : kind_(kind), seed_(std::move(seed)) {}

    Kind kind_;
    Bytes seed_;
    Bytes buffer_;
    std::uint64_t block_counter_ = 0;
    std::size_t buffer_pos_ = 0;
};

inline Bytes random_bytes(RandomSource& source, std::size_t n) { return source.draw(n); }

// Bit strings are byte buffers read MSB-first; nbits may end mid-byte.
std::size_t count_ones(ByteSpan bits, std::size_t nbits);

// Frequency (monobit) test: p = erfc(|ones - zeros| / sqrt(2 n)).
// Requires nbits >= 100; shorter inputs throw Error("length-error").
double monobit_test(ByteSpan bits, std::size_t nbits);

struct RunsResult {
    double p_value;
    bool prerequisite_failed; // proportion check |pi - 1/2| >= 2/sqrt(n)
};

// Runs test: p = erfc(|V - 2 n pi (1-pi)| / (2 sqrt(2n) pi (1-pi))) with V the
// number of runs. A failed proportion prerequisite reports p = 0 with the
// flag set instead of throwing, so degenerate streams fail the gate cleanly.
RunsResult runs_test(ByteSpan bits, std::size_t nbits);

struct TestResult {
    std::string test_name;
    double p_value;
    bool pass;
    bool prerequisite_failed = false;
};

struct HealthReport {
    std::vector<TestResult> test_results;
    double alpha;
    bool overall_pass;
};

// Runs the configured test list (monobit, runs) over the sample.
// alpha must lie in (0, 0.5]; the sample must be >= 100 bits.
HealthReport health_gate(ByteSpan sample, std::size_t nbits, double alpha);

inline HealthReport health_gate(ByteSpan sample, double alpha) {
    return health_gate(sample, sample.size() * 8, alpha);
}

inline constexpr double kDefaultAlpha = 0.01;
inline constexpr std::size_t kGateSampleBytes = 128;

/**
 * Draws n bytes after the source passes the health gate on a fresh sample.
 * A statistically clean source occasionally fails a single gate run (per-test
 * false-reject rate is alpha by construction), so up to `attempts` fresh
 * samples are gated before the source is declared unhealthy; a persistent
 * failure throws Error("health-gate"). Degenerate sources fail every attempt.
 */
Bytes gated_draw(RandomSource& source, std::size_t n, double alpha = kDefaultAlpha,
                 int attempts = 3);

} // namespace c2a::entropy

#endif // CHIP2APP_ENTROPY_HPP_
