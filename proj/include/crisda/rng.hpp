// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 crisda contributors

#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

// Deterministic randomness. Everything the pipeline draws goes through this
// generator so results are identical across platforms, standard libraries,
// and thread counts. std::shuffle / std::uniform_int_distribution are
// implementation-defined and must not be used anywhere in the library.

namespace crisda {

/// SplitMix64 finalizer. Maps any 64-bit value to a well-mixed one.
constexpr std::uint64_t mix_bits(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Derives an independent seed from (seed, stream). Used for per-tree,
/// per-experiment, and per-dataset streams.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    return mix_bits(seed + 0x9E3779B97F4A7C15ull * (stream + 0x632BE59BD9B4E019ull));
}

/// FNV-1a over bytes; stable name -> stream mapping.
constexpr std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

/// SplitMix64 sequence generator.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix_bits(state_);
    }

    /// Uniform draw in [0, n). Lemire multiply-shift; n must be > 0.
    std::uint64_t bounded(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * n) >> 64);
    }

    /// Uniform double in [0, 1) with 53 bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

/// In-place Fisher-Yates shuffle.
template <typename T>
void shuffle(std::vector<T>& v, SplitMix64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.bounded(i));
        std::swap(v[i - 1], v[j]);
    }
}

/// Draws k distinct indices from [0, n) by partial Fisher-Yates over `pool`,
/// which is resized/reset to the identity permutation on every call.
inline void sample_distinct(std::size_t n, std::size_t k, SplitMix64& rng,
                            std::vector<std::uint32_t>& pool,
                            std::vector<std::uint32_t>& out) {
    pool.resize(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = static_cast<std::uint32_t>(i);
    out.clear();
    for (std::size_t i = 0; i < k && i < n; ++i) {
        std::size_t j = i + static_cast<std::size_t>(rng.bounded(n - i));
        std::swap(pool[i], pool[j]);
        out.push_back(pool[i]);
    }
}

} // namespace crisda
