// Copyright (c) 2026 symgen contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>

#include "symgen/geometry.hpp"

namespace symgen {

/// Stream tags separating the independent random streams of one record.
/// Adding draws to one stream never shifts the values of another.
enum class RngStream : uint32_t {
    ClassPick = 1,
    Params = 2,
    Solid = 3,
    Perturb = 4,
    PerturbKind = 5,
    Rotate = 6,
    Translate = 7,
    SplitShuffle = 8,
    Validate = 9,
    General = 100,
};

/// Counter-based generator (Philox 4x32-10). A stream is fully identified
/// by (master_seed, record_id, stream_tag); outputs are a pure function of
/// the stream key and the draw counter, so records can be generated in any
/// order, on any thread, with identical results.
class Rng {
  public:
    Rng(uint64_t master_seed, uint64_t record_id, uint32_t stream_tag) {
        uint64_t k = mix64(master_seed);
        k = mix64(k ^ record_id);
        k = mix64(k ^ stream_tag);
        key_[0] = static_cast<uint32_t>(k);
        key_[1] = static_cast<uint32_t>(k >> 32);
    }

    Rng(uint64_t master_seed, uint64_t record_id, RngStream stream)
        : Rng(master_seed, record_id, static_cast<uint32_t>(stream)) {}

    /// Derive an independent child stream.
    Rng split(uint32_t tag) const {
        uint64_t k = (static_cast<uint64_t>(key_[1]) << 32) | key_[0];
        return Rng(mix64(k ^ tag), 0, 0);
    }

    uint64_t next_u64() {
        if (avail_ == 0) refill();
        uint64_t v = buf_[--avail_];
        return v;
    }

    /// Uniform double in [0, 1), 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [lo, hi], inclusive, unbiased.
    int64_t uniform_int(int64_t lo, int64_t hi) {
        uint64_t range = static_cast<uint64_t>(hi - lo) + 1;
        if (range == 0) return static_cast<int64_t>(next_u64());  // full 64-bit span
        // Lemire's multiply-shift with rejection
        uint64_t x = next_u64();
        __uint128_t m = static_cast<__uint128_t>(x) * range;
        uint64_t l = static_cast<uint64_t>(m);
        if (l < range) {
            uint64_t t = (0 - range) % range;
            while (l < t) {
                x = next_u64();
                m = static_cast<__uint128_t>(x) * range;
                l = static_cast<uint64_t>(m);
            }
        }
        return lo + static_cast<int64_t>(static_cast<uint64_t>(m >> 64));
    }

    bool bernoulli(double p) { return uniform01() < p; }

    /// Box-Muller transform; pairs are cached.
    double normal(double mean, double stddev) {
        if (have_spare_) {
            have_spare_ = false;
            return mean + stddev * spare_;
        }
        double u1 = 1.0 - uniform01();  // (0, 1], keeps log() finite
        double u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(kTwoPi * u2);
        have_spare_ = true;
        return mean + stddev * r * std::cos(kTwoPi * u2);
    }

  private:
    static constexpr uint64_t mix64(uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

    static void mul_hi_lo(uint32_t a, uint32_t b, uint32_t& hi, uint32_t& lo) {
        uint64_t p = static_cast<uint64_t>(a) * b;
        hi = static_cast<uint32_t>(p >> 32);
        lo = static_cast<uint32_t>(p);
    }

    void refill() {
        uint32_t c[4] = {static_cast<uint32_t>(block_), static_cast<uint32_t>(block_ >> 32), 0, 0};
        uint32_t k[2] = {key_[0], key_[1]};
        for (int round = 0; round < 10; ++round) {
            uint32_t hi0, lo0, hi1, lo1;
            mul_hi_lo(0xD2511F53u, c[0], hi0, lo0);
            mul_hi_lo(0xCD9E8D57u, c[2], hi1, lo1);
            uint32_t n0 = hi1 ^ c[1] ^ k[0];
            uint32_t n1 = lo1;
            uint32_t n2 = hi0 ^ c[3] ^ k[1];
            uint32_t n3 = lo0;
            c[0] = n0;
            c[1] = n1;
            c[2] = n2;
            c[3] = n3;
            k[0] += 0x9E3779B9u;
            k[1] += 0xBB67AE85u;
        }
        buf_[0] = (static_cast<uint64_t>(c[1]) << 32) | c[0];
        buf_[1] = (static_cast<uint64_t>(c[3]) << 32) | c[2];
        avail_ = 2;
        ++block_;
    }

    uint32_t key_[2]{};
    uint64_t block_ = 0;
    uint64_t buf_[2]{};
    int avail_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace symgen
